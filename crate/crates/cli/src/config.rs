//! The validated run description and the `key=value` config file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::ValueEnum;
use faw_core::io::{MeasureSpec, RepresentationSpec, WordSpec};
use serde::{Deserialize, Serialize};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Table,
}

impl std::str::FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        <Self as ValueEnum>::from_str(s, false).map_err(|_| anyhow::anyhow!("unknown format {s:?} (csv, json, table)"))
    }
}

/// One fully resolved invocation. `--dump-spec` prints this as JSON and
/// `faw run` executes it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    NcCount {
        p: usize,
    },
    NcList {
        p: usize,
    },
    Moment {
        rep: RepresentationSpec,
        word: WordSpec,
    },
    SemicircleTable {
        p_max: usize,
    },
    MixingScan {
        rep: RepresentationSpec,
        word: WordSpec,
        t0: f64,
        t1: f64,
        steps: usize,
    },
    FourierScan {
        measure: MeasureSpec,
        t0: f64,
        t1: f64,
        steps: usize,
    },
    ConvPower {
        measure: MeasureSpec,
        n: usize,
    },
    Wiener {
        measure: MeasureSpec,
        horizon: f64,
    },
    TransversalityTest {
        rep: RepresentationSpec,
        level: usize,
        s_grid: Vec<f64>,
        trials: usize,
        seed: u64,
    },
    FreenessTest {
        rep: RepresentationSpec,
        max_length: usize,
        trials: usize,
        seed: u64,
    },
    FockVsFormula {
        rep: RepresentationSpec,
        level: usize,
        trials: usize,
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::NcCount { .. } => "nc-count",
            Self::NcList { .. } => "nc-list",
            Self::Moment { .. } => "moment",
            Self::SemicircleTable { .. } => "semicircle-table",
            Self::MixingScan { .. } => "mixing-scan",
            Self::FourierScan { .. } => "fourier-scan",
            Self::ConvPower { .. } => "conv-power",
            Self::Wiener { .. } => "wiener",
            Self::TransversalityTest { .. } => "transversality-test",
            Self::FreenessTest { .. } => "freeness-test",
            Self::FockVsFormula { .. } => "fock-vs-formula",
        }
    }

    /// Scans emit data meant for other tools; everything else defaults to
    /// a readable table.
    pub fn default_format(&self) -> Format {
        match self {
            Self::MixingScan { .. } | Self::FourierScan { .. } => Format::Csv,
            _ => Format::Table,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        let range = |t0: f64, t1: f64, steps: usize| -> anyhow::Result<()> {
            if !(t0.is_finite() && t1.is_finite()) || t1 <= t0 {
                bail!("t range [{t0}, {t1}] must be finite and non-degenerate");
            }
            if steps == 0 {
                bail!("steps must be ≥ 1");
            }
            Ok(())
        };
        match self {
            Self::MixingScan { t0, t1, steps, .. } | Self::FourierScan { t0, t1, steps, .. } => range(*t0, *t1, *steps),
            Self::ConvPower { n, .. } if *n == 0 => bail!("n must be ≥ 1"),
            Self::Wiener { horizon, .. } if !(*horizon > 0.0 && horizon.is_finite()) => {
                bail!("T = {horizon} must be a positive number")
            }
            Self::TransversalityTest { level, s_grid, trials, .. } => {
                if *level == 0 {
                    bail!("N must be ≥ 1");
                }
                if s_grid.is_empty() {
                    bail!("s-grid is empty");
                }
                if let Some(s) = s_grid.iter().find(|s| !(**s > 0.0 && **s <= 1.0)) {
                    bail!("s = {s} must lie in (0, 1]");
                }
                if *trials == 0 {
                    bail!("trials must be ≥ 1");
                }
                Ok(())
            }
            Self::FreenessTest { max_length, trials, .. } => {
                if *max_length == 0 || *trials == 0 {
                    bail!("max-length and trials must be ≥ 1");
                }
                Ok(())
            }
            Self::FockVsFormula { level, trials, .. } => {
                if *level == 0 || *trials == 0 {
                    bail!("N and trials must be ≥ 1");
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            bail!("tolerance {} must be strictly positive", self.tolerance);
        }
        self.command.validate()
    }
}

/// Settings read from `--config`. Only the global flags may appear.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct FileConfig {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
}

impl FileConfig {
    /// Strict `key=value` lines; `#` starts a comment line. Unknown or
    /// repeated keys are errors.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut seen = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("config line {}: expected key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            if seen.insert(key.to_string(), value.to_string()).is_some() {
                bail!("config line {}: duplicate key {key:?}", lineno + 1);
            }
        }
        let mut cfg = Self::default();
        for (key, value) in seen {
            match key.as_str() {
                "out" => cfg.out = Some(PathBuf::from(value)),
                "format" => cfg.format = Some(value.parse()?),
                "seed" => cfg.seed = Some(value.parse().with_context(|| format!("config seed {value:?}"))?),
                "tolerance" => {
                    cfg.tolerance = Some(value.parse().with_context(|| format!("config tolerance {value:?}"))?)
                }
                other => bail!("unknown config key {other:?} (allowed: out, format, seed, tolerance)"),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }
}
