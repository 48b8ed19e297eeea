//! Command-line front end for `faw-core`.
//!
//! [`main_with`] parses arguments, resolves them (flags over `--config`)
//! into a [`RunConfig`], runs it and returns the process exit status:
//! 0 on success, 1 on validation errors, 2 when a numeric check fails.

pub mod commands;
pub mod config;
pub mod inputs;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

pub use config::{Command, FileConfig, Format, RunConfig};
pub use output::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;

const AFTER_HELP: &str = "\
Inputs: inline JSON, a path to a JSON file, or shorthand such as
bernoulli(2.5), two_point(1), uniform(1), rotation(0.8), trivial(2), e0,e1.

Randomized commands draw from ChaCha8 (rand_chacha) seeded with
seed_from_u64, so identical arguments and seed give byte-identical output.

Exit status: 0 success, 1 validation error, 2 numeric check failed.";

#[derive(Debug, Parser)]
#[command(name = "faw", version, about = "Free Araki-Woods moments, Fock oracle and measure diagnostics", after_help = AFTER_HELP)]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized commands (alternative to the positional seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Tolerance for the numeric checks (default 1e-10).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// key=value file with defaults for out, format, seed, tolerance.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Print the resolved run as JSON and exit without running it.
    #[arg(long, global = true)]
    pub dump_spec: bool,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Catalan number C_p = number of non-crossing pairings of 2p points.
    NcCount { p: usize },
    /// List the non-crossing pairings of 2p points (1-based).
    NcList { p: usize },
    /// φ(s(ξ₁)⋯s(ξₙ)) by the pairing formula.
    Moment { rep: String, word: String },
    /// p, C_p and φ(s(ξ)^{2p}) for a unit vector ξ.
    SemicircleTable { p_max: usize },
    /// |φ(σ_t(x) x)| for the centered word x over a t grid.
    MixingScan {
        rep: String,
        word: String,
        #[arg(allow_negative_numbers = true)]
        t0: f64,
        #[arg(allow_negative_numbers = true)]
        t1: f64,
        steps: usize,
    },
    /// Fourier transform of a measure over a t grid.
    FourierScan {
        measure: String,
        #[arg(allow_negative_numbers = true)]
        t0: f64,
        #[arg(allow_negative_numbers = true)]
        t1: f64,
        steps: usize,
    },
    /// n-fold convolution power of a finitely supported measure.
    ConvPower { measure: String, n: usize },
    /// (1/2T)∫|μ̃|² over [−T, T].
    Wiener {
        measure: String,
        #[arg(value_name = "T")]
        horizon: f64,
    },
    /// ‖ζ − α_{2s}ζ‖ ≤ 2‖α_sζ − P₁α_sζ‖ on random first-copy Fock vectors.
    TransversalityTest {
        rep: String,
        #[arg(value_name = "N")]
        level: usize,
        /// Comma list (0.1,0.5) or start:end:count.
        s_grid: String,
        trials: usize,
        #[arg(value_name = "SEED")]
        seed_arg: Option<u64>,
    },
    /// Vanishing of alternating centered products over H ⊕ H.
    FreenessTest {
        rep: String,
        max_length: usize,
        trials: usize,
        #[arg(value_name = "SEED")]
        seed_arg: Option<u64>,
    },
    /// Pairing formula against the truncated Fock model on random words.
    FockVsFormula {
        rep: String,
        #[arg(value_name = "N")]
        level: usize,
        trials: usize,
        #[arg(value_name = "SEED")]
        seed_arg: Option<u64>,
    },
    /// Execute a run printed by --dump-spec (inline JSON or file).
    Run { spec: String },
}

fn resolve_seed(positional: Option<u64>, flag: Option<u64>, file: Option<u64>) -> anyhow::Result<u64> {
    match (positional, flag) {
        (Some(a), Some(b)) if a != b => bail!("positional seed {a} conflicts with --seed {b}"),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => file.context("this command needs a seed (positional, --seed or config)"),
    }
}

/// Merges flags, the config file and defaults into a validated run.
pub fn resolve(cli: Cli) -> anyhow::Result<RunConfig> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let seed = |positional| resolve_seed(positional, cli.seed, file.seed);
    let command = match cli.command {
        Sub::Run { spec } => {
            let text = if spec.trim_start().starts_with('{') {
                spec
            } else {
                std::fs::read_to_string(&spec).with_context(|| format!("reading run spec {spec}"))?
            };
            let mut cfg: RunConfig = serde_json::from_str(&text).context("invalid run spec JSON")?;
            cfg.out = cli.out.or(cfg.out);
            cfg.format = cli.format.unwrap_or(cfg.format);
            cfg.tolerance = cli.tolerance.unwrap_or(cfg.tolerance);
            cfg.validate()?;
            return Ok(cfg);
        }
        Sub::NcCount { p } => Command::NcCount { p },
        Sub::NcList { p } => Command::NcList { p },
        Sub::Moment { rep, word } => Command::Moment {
            rep: inputs::parse_representation(&rep)?,
            word: inputs::parse_word(&word)?,
        },
        Sub::SemicircleTable { p_max } => Command::SemicircleTable { p_max },
        Sub::MixingScan { rep, word, t0, t1, steps } => Command::MixingScan {
            rep: inputs::parse_representation(&rep)?,
            word: inputs::parse_word(&word)?,
            t0,
            t1,
            steps,
        },
        Sub::FourierScan { measure, t0, t1, steps } => Command::FourierScan {
            measure: inputs::parse_measure(&measure)?,
            t0,
            t1,
            steps,
        },
        Sub::ConvPower { measure, n } => Command::ConvPower {
            measure: inputs::parse_measure(&measure)?,
            n,
        },
        Sub::Wiener { measure, horizon } => Command::Wiener {
            measure: inputs::parse_measure(&measure)?,
            horizon,
        },
        Sub::TransversalityTest {
            rep,
            level,
            s_grid,
            trials,
            seed_arg: s,
        } => Command::TransversalityTest {
            rep: inputs::parse_representation(&rep)?,
            level,
            s_grid: inputs::parse_s_grid(&s_grid)?,
            trials,
            seed: seed(s)?,
        },
        Sub::FreenessTest {
            rep,
            max_length,
            trials,
            seed_arg: s,
        } => Command::FreenessTest {
            rep: inputs::parse_representation(&rep)?,
            max_length,
            trials,
            seed: seed(s)?,
        },
        Sub::FockVsFormula {
            rep,
            level,
            trials,
            seed_arg: s,
        } => Command::FockVsFormula {
            rep: inputs::parse_representation(&rep)?,
            level,
            trials,
            seed: seed(s)?,
        },
    };
    let cfg = RunConfig {
        format: cli.format.or(file.format).unwrap_or_else(|| command.default_format()),
        out: cli.out.or(file.out),
        tolerance: cli.tolerance.or(file.tolerance).unwrap_or(config::DEFAULT_TOLERANCE),
        command,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Whether a failure is a numeric one (exit 2) rather than bad input.
fn is_numeric(err: &anyhow::Error) -> bool {
    matches!(
        err.downcast_ref::<faw_core::Error>(),
        Some(faw_core::Error::NonFiniteQuadrature(_) | faw_core::Error::QuadratureFailure(_))
    )
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => stdout.write_all(text.as_bytes()).context("writing standard output"),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
pub fn main_with<I, A>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let text = e.render().to_string();
            if informational {
                let _ = stdout.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(text.as_bytes());
            return EXIT_VALIDATION;
        }
    };
    let dump = cli.dump_spec;
    let cfg = match resolve(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_VALIDATION;
        }
    };
    if dump {
        let json = serde_json::to_string_pretty(&cfg).expect("run spec serializes") + "\n";
        return match stdout.write_all(json.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_VALIDATION
            }
        };
    }
    let report = match commands::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return if is_numeric(&e) { EXIT_NUMERIC } else { EXIT_VALIDATION };
        }
    };
    let rendered = match report.render(cfg.format) {
        Ok(text) => text,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_VALIDATION;
        }
    };
    if let Err(e) = emit(&rendered, cfg.out.as_ref(), stdout) {
        let _ = writeln!(stderr, "error: {e:#}");
        return EXIT_VALIDATION;
    }
    let failed: Vec<_> = report.failed_checks().collect();
    if failed.is_empty() {
        return EXIT_OK;
    }
    for c in failed {
        let _ = writeln!(
            stderr,
            "check failed: {} = {} exceeds tolerance {}",
            c.name,
            output::fmt_f64(c.value),
            output::fmt_f64(c.tolerance)
        );
    }
    EXIT_NUMERIC
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = main_with(std::iter::once("faw").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn seed_resolution() {
        assert_eq!(resolve_seed(Some(3), None, Some(9)).unwrap(), 3);
        assert_eq!(resolve_seed(None, Some(4), Some(9)).unwrap(), 4);
        assert_eq!(resolve_seed(None, None, Some(9)).unwrap(), 9);
        assert_eq!(resolve_seed(Some(5), Some(5), None).unwrap(), 5);
        assert!(resolve_seed(Some(5), Some(6), None).is_err());
        assert!(resolve_seed(None, None, None).is_err());
    }

    #[test]
    fn nc_count_prints_catalan() {
        assert_eq!(run(&["nc-count", "4"]), (0, "14\n".into(), String::new()));
    }

    #[test]
    fn usage_errors_are_validation_errors() {
        assert_eq!(run(&["nc-count"]).0, EXIT_VALIDATION);
        assert_eq!(run(&["frobnicate"]).0, EXIT_VALIDATION);
        assert_eq!(run(&["--help"]).0, EXIT_OK);
        assert_eq!(run(&["fock-vs-formula", "rotation(1)", "2", "3"]).0, EXIT_VALIDATION);
    }

    #[test]
    fn tiny_tolerance_is_a_numeric_failure() {
        let (code, _, err) = run(&["fock-vs-formula", "rotation(0.7)", "4", "20", "1", "--tolerance", "1e-300"]);
        assert_eq!(code, EXIT_NUMERIC, "{err}");
        assert!(err.contains("check failed"));
    }
}
