//! Turning command-line arguments into specs.
//!
//! An argument is read as inline JSON when it starts with `{`, `[` or `"`,
//! as a file when it names an existing path, and otherwise as shorthand.
//!
//! Measure shorthand: `dirac`, `two_point(a)`, `bernoulli(θ)`, `uniform(a)`,
//! `uniform(a, intervals)`. Representation shorthand: `trivial(k)`,
//! `rotation(ω)`, `blocks(ω₁, …)` and any measure (its multiplication
//! representation). Word shorthand: comma-separated letters `e<k>` or `ones`.

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use faw_core::io::{BasisVector, MeasureSpec, RepresentationSpec, VectorSpec, WordSpec};
use serde::de::DeserializeOwned;

/// Grid intervals on `[0, a]` for the `uniform(a)` shorthand.
pub const DEFAULT_UNIFORM_INTERVALS: usize = 4000;

enum Source {
    Json(String),
    Shorthand(String),
}

fn source(arg: &str) -> anyhow::Result<Source> {
    let trimmed = arg.trim();
    if trimmed.starts_with(['{', '[', '"']) {
        return Ok(Source::Json(trimmed.to_string()));
    }
    let path = Path::new(trimmed);
    if !trimmed.is_empty() && path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Source::Json(text));
    }
    Ok(Source::Shorthand(trimmed.to_string()))
}

fn json<T: DeserializeOwned>(text: &str, what: &str) -> anyhow::Result<T> {
    serde_json::from_str(text).with_context(|| format!("invalid {what} JSON"))
}

/// `name(a, b, …)` → (`name`, [`a`, `b`, …]); a bare name has no arguments.
fn call(text: &str) -> anyhow::Result<(String, Vec<String>)> {
    let text = text.trim();
    match text.find('(') {
        None => Ok((text.to_string(), Vec::new())),
        Some(open) => {
            let inner = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| anyhow!("unbalanced parentheses in {text:?}"))?;
            let args = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(|a| a.trim().to_string()).collect()
            };
            Ok((text[..open].trim().to_string(), args))
        }
    }
}

fn number(text: &str, what: &str) -> anyhow::Result<f64> {
    text.parse::<f64>().with_context(|| format!("{what}: {text:?} is not a number"))
}

fn count(text: &str, what: &str) -> anyhow::Result<usize> {
    text.parse::<usize>()
        .with_context(|| format!("{what}: {text:?} is not a non-negative integer"))
}

fn arity(name: &str, args: &[String], allowed: &[usize]) -> anyhow::Result<()> {
    if !allowed.contains(&args.len()) {
        bail!("{name}(…) takes {allowed:?} arguments, got {}", args.len());
    }
    Ok(())
}

fn measure_shorthand(text: &str) -> anyhow::Result<Option<MeasureSpec>> {
    let (name, args) = call(text)?;
    let spec = match name.as_str() {
        "dirac" => {
            arity(&name, &args, &[0])?;
            MeasureSpec::Atomic {
                pairs: Vec::new(),
                w0: 1.0,
            }
        }
        "two_point" => {
            arity(&name, &args, &[1])?;
            MeasureSpec::Atomic {
                pairs: vec![[number(&args[0], "two_point position")?, 0.5]],
                w0: 0.0,
            }
        }
        "bernoulli" => {
            arity(&name, &args, &[1])?;
            MeasureSpec::Bernoulli {
                theta: number(&args[0], "bernoulli θ")?,
            }
        }
        "uniform" => {
            arity(&name, &args, &[1, 2])?;
            let a = number(&args[0], "uniform half-width")?;
            if !(a > 0.0 && a.is_finite()) {
                bail!("uniform half-width {a} must be > 0");
            }
            let intervals = match args.get(1) {
                Some(n) => count(n, "uniform intervals")?,
                None => DEFAULT_UNIFORM_INTERVALS,
            };
            if intervals == 0 {
                bail!("uniform needs at least one interval");
            }
            MeasureSpec::Grid {
                step: a / intervals as f64,
                values: vec![1.0; intervals + 1],
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(spec))
}

pub fn parse_measure(arg: &str) -> anyhow::Result<MeasureSpec> {
    match source(arg)? {
        Source::Json(text) => json(&text, "measure"),
        Source::Shorthand(text) => {
            measure_shorthand(&text)?.ok_or_else(|| anyhow!("unrecognized measure {text:?}"))
        }
    }
}

pub fn parse_representation(arg: &str) -> anyhow::Result<RepresentationSpec> {
    match source(arg)? {
        Source::Json(text) => {
            if let Ok(rep) = serde_json::from_str::<RepresentationSpec>(&text) {
                return Ok(rep);
            }
            let measure: MeasureSpec = json(&text, "representation or measure")?;
            Ok(RepresentationSpec::Measure { measure })
        }
        Source::Shorthand(text) => {
            if let Some(measure) = measure_shorthand(&text)? {
                return Ok(RepresentationSpec::Measure { measure });
            }
            let (name, args) = call(&text)?;
            match name.as_str() {
                "trivial" => {
                    arity(&name, &args, &[1])?;
                    Ok(RepresentationSpec::Finite {
                        blocks: Vec::new(),
                        trivial_dim: count(&args[0], "trivial dimension")?,
                    })
                }
                "rotation" => {
                    arity(&name, &args, &[1])?;
                    Ok(RepresentationSpec::Finite {
                        blocks: vec![number(&args[0], "rotation frequency")?],
                        trivial_dim: 0,
                    })
                }
                "blocks" => Ok(RepresentationSpec::Finite {
                    blocks: args
                        .iter()
                        .map(|a| number(a, "block frequency"))
                        .collect::<anyhow::Result<_>>()?,
                    trivial_dim: 0,
                }),
                _ => bail!("unrecognized representation {text:?}"),
            }
        }
    }
}

pub fn parse_word(arg: &str) -> anyhow::Result<WordSpec> {
    match source(arg)? {
        Source::Json(text) => json(&text, "word"),
        Source::Shorthand(text) => {
            if text.is_empty() {
                return Ok(Vec::new());
            }
            text.split(',')
                .map(|letter| {
                    let letter = letter.trim();
                    if letter == "ones" {
                        return Ok(VectorSpec::Named("ones".into()));
                    }
                    let k = letter
                        .strip_prefix('e')
                        .and_then(|k| k.parse().ok())
                        .ok_or_else(|| anyhow!("unrecognized word letter {letter:?} (use e<k> or ones)"))?;
                    Ok(VectorSpec::Basis(BasisVector { basis: k }))
                })
                .collect()
        }
    }
}

/// `0.1,0.5,0.9` or `a:b:n` (n evenly spaced points from a to b).
pub fn parse_s_grid(arg: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = arg.split(':').collect();
    if parts.len() == 3 {
        let (a, b) = (number(parts[0], "s-grid start")?, number(parts[1], "s-grid end")?);
        let n = count(parts[2], "s-grid count")?;
        return Ok(match n {
            0 => Vec::new(),
            1 => vec![a],
            _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
        });
    }
    arg.split(',').map(|s| number(s.trim(), "s-grid")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_forms() {
        assert_eq!(parse_measure("bernoulli(2.5)").unwrap(), MeasureSpec::Bernoulli { theta: 2.5 });
        assert_eq!(
            parse_measure(r#"{"type":"bernoulli","theta":2}"#).unwrap(),
            MeasureSpec::Bernoulli { theta: 2.0 }
        );
        assert!(matches!(parse_measure("uniform(1, 10)").unwrap(), MeasureSpec::Grid { values, .. } if values.len() == 11));
        assert!(parse_measure("cauchy(1)").is_err());
        assert!(parse_measure("bernoulli(2, 3)").is_err());
        assert!(parse_measure("bernoulli(x)").is_err());
    }

    #[test]
    fn representation_forms() {
        assert_eq!(
            parse_representation("rotation(0.5)").unwrap(),
            RepresentationSpec::Finite {
                blocks: vec![0.5],
                trivial_dim: 0
            }
        );
        assert!(matches!(parse_representation("two_point(1)").unwrap(), RepresentationSpec::Measure { .. }));
        assert!(matches!(
            parse_representation(r#"{"type":"atomic","pairs":[[1,0.5]]}"#).unwrap(),
            RepresentationSpec::Measure { .. }
        ));
    }

    #[test]
    fn word_and_grid_forms() {
        assert_eq!(parse_word("e0, e1,ones").unwrap().len(), 3);
        assert!(parse_word("f1").is_err());
        assert_eq!(parse_word("[[1,0],[0,1]]").unwrap().len(), 2);
        assert_eq!(parse_s_grid("0.1:0.9:9").unwrap().len(), 9);
        assert_eq!(parse_s_grid("0.25,0.5").unwrap(), vec![0.25, 0.5]);
    }

    #[test]
    fn file_inputs() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, r#"{"type":"bernoulli","theta":3}"#).unwrap();
        assert_eq!(
            parse_measure(path.to_str().unwrap()).unwrap(),
            MeasureSpec::Bernoulli { theta: 3.0 }
        );
    }
}
