//! Execution of a [`RunConfig`] against the library.

use faw_core::combinatorics::{catalan, enumerate_nc_pairings};
use faw_core::fock::{build_fock, deformation_pair, fock_moment, transversality_gap_with};
use faw_core::io::{build_word, MeasureSpec, RepresentationSpec};
use faw_core::measures::{conv_power, wiener_average, SymmetricMeasure};
use faw_core::moments::{
    embed, freeness_defect, mixing_correlation, quasi_free_moment, CopyTag, Word, WordPolynomial,
};
use faw_core::sampling::{random_first_copy_vector, random_real_vector, random_word};
use faw_core::{Representation64, SymmetricMeasure64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Command, RunConfig};
use crate::output::{Cell, Report};

/// Name of the generator behind every seeded command.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha), seeded with seed_from_u64";

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rep(spec: &RepresentationSpec) -> faw_core::Result<Representation64> {
    spec.build()
}

fn measure(spec: &MeasureSpec) -> faw_core::Result<SymmetricMeasure64> {
    spec.build()
}

/// `steps + 1` evenly spaced points of `[t0, t1]`, endpoints exact.
fn grid(t0: f64, t1: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..=steps).map(move |i| if i == steps { t1 } else { t0 + (t1 - t0) * i as f64 / steps as f64 })
}

pub fn run(cfg: &RunConfig) -> anyhow::Result<Report> {
    cfg.validate()?;
    let tol = cfg.tolerance;
    let name = cfg.command.name();
    let report = match &cfg.command {
        Command::NcCount { p } => {
            let mut r = Report::new(name, vec!["count"]);
            let c = catalan(*p);
            r.push(vec![u64::try_from(&c).map_or_else(|_| Cell::Big(c.to_string()), Cell::Int)]);
            r
        }
        Command::NcList { p } => {
            let mut r = Report::new(name, vec!["index", "pairing"]);
            for (i, pi) in enumerate_nc_pairings(*p)?.iter().enumerate() {
                let text: String = pi.pairs().iter().map(|(a, b)| format!("({a},{b})")).collect();
                r.push(vec![i.into(), text.into()]);
            }
            r
        }
        Command::Moment { rep: rs, word } => {
            let h = rep(rs)?;
            let w = build_word(word, &h)?;
            let m = quasi_free_moment(&h, &w)?;
            let mut r = Report::new(name, vec!["re", "im", "abs"]);
            r.push(vec![m.re.into(), m.im.into(), m.norm().into()]);
            r
        }
        Command::SemicircleTable { p_max } => semicircle_table(*p_max, tol)?,
        Command::MixingScan {
            rep: rs,
            word,
            t0,
            t1,
            steps,
        } => {
            let h = rep(rs)?;
            let x = WordPolynomial::from_word(build_word(word, &h)?).centered(&h)?;
            let mut r = Report::new(name, vec!["t", "re", "abs"]);
            for t in grid(*t0, *t1, *steps) {
                let z = mixing_correlation(&h, &x, &x, t)?;
                r.push(vec![t.into(), z.re.into(), z.norm().into()]);
            }
            r
        }
        Command::FourierScan { measure: ms, t0, t1, steps } => {
            let mu = measure(ms)?;
            let mut r = Report::new(name, vec!["t", "re", "abs"]);
            for t in grid(*t0, *t1, *steps) {
                let v = mu.fourier(t);
                r.push(vec![t.into(), v.into(), v.abs().into()]);
            }
            r
        }
        Command::ConvPower { measure: ms, n } => {
            let mu = measure(ms)?;
            let p = conv_power(&mu, *n)?;
            let mut r = Report::new(name, vec!["x", "weight"]);
            for (x, w) in p.discrete_support()? {
                r.push(vec![x.into(), w.into()]);
            }
            let defect = (1..=50)
                .map(|k| {
                    let t = 0.1 * k as f64;
                    (p.fourier(t) - mu.fourier(t).powi(*n as i32)).abs()
                })
                .fold(0.0, f64::max);
            r.check("fourier(conv_power) vs fourier^n", defect, tol);
            r
        }
        Command::Wiener { measure: ms, horizon } => {
            let mu = measure(ms)?;
            let avg = wiener_average(&mu, *horizon)?;
            let atoms = match &mu {
                SymmetricMeasure::Atomic(a) => Cell::Float(a.squared_atom_mass()),
                _ => Cell::Empty,
            };
            let mut r = Report::new(name, vec!["horizon", "average", "atom_mass"]);
            r.push(vec![(*horizon).into(), avg.into(), atoms]);
            r
        }
        Command::TransversalityTest {
            rep: rs,
            level,
            s_grid,
            trials,
            seed,
        } => transversality(rs, *level, s_grid, *trials, *seed, tol)?,
        Command::FreenessTest {
            rep: rs,
            max_length,
            trials,
            seed,
        } => freeness(rs, *max_length, *trials, *seed, tol)?,
        Command::FockVsFormula {
            rep: rs,
            level,
            trials,
            seed,
        } => fock_vs_formula(rs, *level, *trials, *seed, tol)?,
    };
    Ok(report)
}

fn semicircle_table(p_max: usize, tol: f64) -> anyhow::Result<Report> {
    let h = Representation64::trivial(1)?;
    let xi = faw_core::RepVector64::from_real(&[1.0]);
    let mut r = Report::new("semicircle-table", vec!["p", "catalan", "moment"]);
    let mut worst = 0.0f64;
    for p in 1..=p_max {
        let c = catalan(p);
        let word = Word::new(&h, vec![xi.clone(); 2 * p])?;
        let m = quasi_free_moment(&h, &word)?;
        let closed = c.to_string().parse::<f64>()? / 4f64.powi(p as i32);
        worst = worst.max((m - closed).norm() / closed);
        r.push(vec![p.into(), Cell::Big(c.to_string()), m.re.into()]);
    }
    r.check("relative error vs C_p/4^p", worst, tol);
    Ok(r)
}

fn transversality(
    rs: &RepresentationSpec,
    level: usize,
    s_grid: &[f64],
    trials: usize,
    seed: u64,
    tol: f64,
) -> anyhow::Result<Report> {
    let h = rep(rs)?;
    let doubled = h.direct_sum(&h);
    let fock = build_fock(&doubled, level)?;
    let mut rng = rng(seed);
    let mut r = Report::new(
        "transversality-test",
        vec!["level", "s", "trials", "max_lhs_minus_rhs", "max_abs_diff"],
    );
    let (mut excess, mut level_one) = (0.0f64, 0.0f64);
    for &s in s_grid {
        let (alpha_s, _) = deformation_pair(&fock, s)?;
        let (alpha_2s, _) = deformation_pair(&fock, 2.0 * s)?;
        for k in 1..=level {
            let (mut worst, mut spread) = (f64::NEG_INFINITY, 0.0f64);
            for _ in 0..trials {
                let zeta = random_first_copy_vector(&fock, k, &mut rng)?;
                let (lhs, rhs) = transversality_gap_with(&fock, &zeta, &alpha_s, &alpha_2s)?;
                worst = worst.max(lhs - rhs);
                spread = spread.max((lhs - rhs).abs());
            }
            excess = excess.max(worst);
            if k == 1 {
                level_one = level_one.max(spread);
            }
            r.push(vec![k.into(), s.into(), trials.into(), worst.into(), spread.into()]);
        }
    }
    r.check("lhs - rhs", excess, tol);
    r.check("level-1 |lhs - rhs|", level_one, tol);
    Ok(r)
}

fn freeness(rs: &RepresentationSpec, max_length: usize, trials: usize, seed: u64, tol: f64) -> anyhow::Result<Report> {
    let h = rep(rs)?;
    let doubled = h.direct_sum(&h);
    let mut rng = rng(seed);
    let mut r = Report::new("freeness-test", vec!["trial", "length", "factors", "defect"]);
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let length = rng.random_range(1..=max_length);
        let mut parts = vec![1usize];
        for _ in 1..length {
            if rng.random_bool(0.5) {
                parts.push(1);
            } else {
                *parts.last_mut().expect("non-empty") += 1;
            }
        }
        let mut tag = if rng.random_bool(0.5) { CopyTag::First } else { CopyTag::Second };
        let mut factors = Vec::with_capacity(parts.len());
        for &len in &parts {
            let letters = (0..len)
                .map(|_| random_real_vector(&h, &mut rng).map(|v| embed(tag, &v)))
                .collect::<faw_core::Result<Vec<_>>>()?;
            let p = WordPolynomial::from_word(Word::new(&doubled, letters)?).centered(&doubled)?;
            factors.push((tag, p));
            tag = tag.other();
        }
        let d = freeness_defect(&doubled, &factors)?;
        worst = worst.max(d);
        r.push(vec![trial.into(), length.into(), parts.len().into(), d.into()]);
    }
    r.check("max freeness defect", worst, tol);
    Ok(r)
}

fn fock_vs_formula(rs: &RepresentationSpec, level: usize, trials: usize, seed: u64, tol: f64) -> anyhow::Result<Report> {
    let h = rep(rs)?;
    let fock = build_fock(&h, level)?;
    let mut rng = rng(seed);
    let mut r = Report::new(
        "fock-vs-formula",
        vec!["trial", "length", "formula_re", "formula_im", "fock_re", "fock_im", "rel_diff"],
    );
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let n = rng.random_range(1..=level);
        let w = random_word(&h, n, &mut rng)?;
        let a = quasi_free_moment(&h, &w)?;
        let b = fock_moment(&fock, &w)?;
        let rel = (a - b).norm() / (1.0 + a.norm());
        worst = worst.max(rel);
        r.push(vec![trial.into(), n.into(), a.re.into(), a.im.into(), b.re.into(), b.im.into(), rel.into()]);
    }
    r.check("max |formula - fock| / (1 + |formula|)", worst, tol);
    Ok(r)
}
