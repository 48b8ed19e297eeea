//! Symmetric probability measures on ℝ and their Fourier transforms
//! `μ̃(t) = ∫ e^{itx} dμ(x)`.
//!
//! Only the non-negative half of a measure is stored; symmetry is
//! structural, so every transform is real and even in `t`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Absolute tolerance under which two atom positions are merged.
pub const ATOM_MERGE_TOL: f64 = 1e-12;

/// Target for the certified tail of the Bernoulli cosine product.
pub const BERNOULLI_TAIL_EPS: f64 = 1e-14;

/// Largest `K` accepted by [`truncate_bernoulli`] (`2^K` signed sums).
pub const MAX_BERNOULLI_LEVELS: usize = 20;

/// Finitely supported symmetric measure `w₀δ₀ + Σ wᵢ(δ_{−xᵢ} + δ_{xᵢ})`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure<T> {
    atoms: Vec<(T, T)>,
    w0: T,
}

impl<T: Real> AtomicMeasure<T> {
    /// `pairs` are `(x, w)` with `x > 0`, `w > 0`; the total mass
    /// `w0 + 2Σw` must equal one to within `1e-12`.
    pub fn new(pairs: Vec<(T, T)>, w0: T) -> Result<Self> {
        if !(w0 >= T::zero()) || !w0.is_finite() {
            return Err(Error::InvalidMeasure(format!("weight at zero {w0} must be ≥ 0")));
        }
        for &(x, w) in &pairs {
            if !(x > T::zero()) || !x.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom position {x} must be > 0")));
            }
            if !(w > T::zero()) || !w.is_finite() {
                return Err(Error::InvalidMeasure(format!("atom weight {w} must be > 0")));
            }
        }
        let mass = w0 + T::lit(2.0) * pairs.iter().map(|p| p.1).sum::<T>();
        if (mass - T::one()).abs() > T::lit(1e-12).max(T::epsilon() * T::lit(16.0)) {
            return Err(Error::InvalidMeasure(format!("total mass {mass} ≠ 1")));
        }
        let mut full: Vec<(T, T)> = Vec::with_capacity(pairs.len() + 1);
        if w0 > T::zero() {
            full.push((T::zero(), w0));
        }
        for &(x, w) in &pairs {
            full.push((x, T::lit(2.0) * w));
        }
        Ok(Self::from_folded(full))
    }

    /// Symmetric measure from an arbitrary point list whose distribution is
    /// already symmetric: positions are folded onto `|x|` and merged.
    fn from_full_support(points: Vec<(T, T)>) -> Self {
        Self::from_folded(points.into_iter().map(|(x, w)| (x.abs(), w)).collect())
    }

    /// `folded` holds `(|x|, mass at ±x combined)`.
    fn from_folded(mut folded: Vec<(T, T)>) -> Self {
        let tol = T::lit(ATOM_MERGE_TOL);
        folded.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite positions"));
        let mut clusters: Vec<(T, T, T)> = Vec::new(); // (Σ w·x, Σ w, last x)
        for (x, w) in folded {
            match clusters.last_mut() {
                Some(c) if x - c.2 <= tol => {
                    c.0 += w * x;
                    c.1 += w;
                    c.2 = x;
                }
                _ => clusters.push((w * x, w, x)),
            }
        }
        let mut w0 = T::zero();
        let mut atoms = Vec::with_capacity(clusters.len());
        for (wx, w, _) in clusters {
            let x = wx / w;
            if x <= tol {
                w0 += w;
            } else {
                atoms.push((x, w / T::lit(2.0)));
            }
        }
        Self { atoms, w0 }
    }

    /// Positive atoms `(x, w)`, strictly increasing in `x`.
    pub fn atoms(&self) -> &[(T, T)] {
        &self.atoms
    }

    pub fn weight_at_zero(&self) -> T {
        self.w0
    }

    /// Number of support points of the full symmetric measure.
    pub fn support_size(&self) -> usize {
        2 * self.atoms.len() + usize::from(self.w0 > T::zero())
    }

    /// Full support in increasing order with point masses.
    pub fn support(&self) -> Vec<(T, T)> {
        let mut out = Vec::with_capacity(self.support_size());
        for &(x, w) in self.atoms.iter().rev() {
            out.push((-x, w));
        }
        if self.w0 > T::zero() {
            out.push((T::zero(), self.w0));
        }
        out.extend(self.atoms.iter().copied());
        out
    }

    fn fourier(&self, t: T) -> T {
        let two = T::lit(2.0);
        self.w0 + self.atoms.iter().map(|&(x, w)| two * w * (x * t).cos()).sum::<T>()
    }

    /// `w₀² + 2Σwᵢ²`, the limit of the Wiener average.
    pub fn squared_atom_mass(&self) -> T {
        self.w0 * self.w0 + T::lit(2.0) * self.atoms.iter().map(|a| a.1 * a.1).sum::<T>()
    }
}

/// Even density sampled on the uniform grid `0, h, …, M·h`, integrated by
/// the trapezoidal rule on `[−Mh, Mh]` and normalized to unit mass.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity<T> {
    step: T,
    values: Vec<T>,
}

impl<T: Real> GridDensity<T> {
    pub fn new(step: T, values: Vec<T>) -> Result<Self> {
        if !(step > T::zero()) || !step.is_finite() {
            return Err(Error::InvalidMeasure(format!("grid step {step} must be > 0")));
        }
        if values.len() < 2 {
            return Err(Error::InvalidMeasure("grid needs at least two half-grid values".into()));
        }
        if values.iter().any(|v| !(*v >= T::zero()) || !v.is_finite()) {
            return Err(Error::InvalidMeasure("grid density values must be finite and ≥ 0".into()));
        }
        let raw = Self { step, values };
        let mass = raw.half_weights().iter().enumerate().map(|(j, &q)| if j == 0 { q } else { q + q }).sum::<T>();
        if !(mass > T::zero()) {
            return Err(Error::InvalidMeasure("grid density has zero mass".into()));
        }
        let values = raw.values.iter().map(|&v| v / mass).collect();
        Ok(Self { step, values })
    }

    pub fn step(&self) -> T {
        self.step
    }

    /// Normalized half-grid density values, index 0 at `x = 0`.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn x_max(&self) -> T {
        self.step * T::from_count(self.values.len() - 1)
    }

    /// Trapezoidal quadrature weight of each half-grid node (each of the
    /// two mirror nodes for `j > 0`).
    fn half_weights(&self) -> Vec<T> {
        let m = self.values.len() - 1;
        self.values
            .iter()
            .enumerate()
            .map(|(j, &v)| if j == m { self.step * v / T::lit(2.0) } else { self.step * v })
            .collect()
    }

    /// Quadrature nodes on the full grid, increasing, with their weights.
    pub fn support(&self) -> Vec<(T, T)> {
        let q = self.half_weights();
        let m = q.len() - 1;
        let mut out = Vec::with_capacity(2 * m + 1);
        for j in (1..=m).rev() {
            out.push((-(self.step * T::from_count(j)), q[j]));
        }
        for (j, &w) in q.iter().enumerate() {
            out.push((self.step * T::from_count(j), w));
        }
        out
    }

    fn fourier(&self, t: T) -> T {
        let q = self.half_weights();
        let two = T::lit(2.0);
        q[0] + q
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &w)| two * w * (self.step * T::from_count(j) * t).cos())
            .sum::<T>()
    }
}

/// A symmetric probability measure on ℝ.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricMeasure<T> {
    Atomic(AtomicMeasure<T>),
    Grid(GridDensity<T>),
    /// Infinite Bernoulli convolution `μ_θ`, the law of `Σ_{n≥1} ±θ^{−n}`.
    Bernoulli { theta: T },
    /// `n`-fold convolution power, kept symbolic.
    Power { base: Box<SymmetricMeasure<T>>, n: usize },
}

impl<T: Real> SymmetricMeasure<T> {
    pub fn atomic(pairs: Vec<(T, T)>, w0: T) -> Result<Self> {
        AtomicMeasure::new(pairs, w0).map(Self::Atomic)
    }

    pub fn grid(step: T, values: Vec<T>) -> Result<Self> {
        GridDensity::new(step, values).map(Self::Grid)
    }

    pub fn bernoulli(theta: T) -> Result<Self> {
        if !(theta > T::one()) || !theta.is_finite() {
            return Err(Error::InvalidMeasure(format!("Bernoulli parameter θ = {theta} must be > 1")));
        }
        Ok(Self::Bernoulli { theta })
    }

    pub fn power(base: Self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMeasure("convolution power must be ≥ 1".into()));
        }
        Ok(Self::Power { base: Box::new(base), n })
    }

    /// Dirac mass at the origin.
    pub fn dirac() -> Self {
        Self::Atomic(AtomicMeasure {
            atoms: Vec::new(),
            w0: T::one(),
        })
    }

    /// `½(δ_{−a} + δ_a)`.
    pub fn two_point(a: T) -> Result<Self> {
        Self::atomic(vec![(a, T::lit(0.5))], T::zero())
    }

    /// Uniform density on `[−a, a]` sampled with `intervals` grid steps on `[0, a]`.
    pub fn uniform(a: T, intervals: usize) -> Result<Self> {
        if intervals == 0 {
            return Err(Error::InvalidMeasure("uniform grid needs at least one interval".into()));
        }
        Self::grid(a / T::from_count(intervals), vec![T::one(); intervals + 1])
    }

    /// Fourier transform `μ̃(t)`; real, even, `μ̃(0) = 1`.
    pub fn fourier(&self, t: T) -> T {
        if t == T::zero() {
            return T::one();
        }
        let t = t.abs();
        match self {
            Self::Atomic(a) => a.fourier(t),
            Self::Grid(g) => g.fourier(t),
            Self::Bernoulli { theta } => {
                bernoulli_product(*theta, t, bernoulli_levels(*theta, t, T::lit(BERNOULLI_TAIL_EPS)))
            }
            Self::Power { base, n } => base.fourier(t).powi(*n as i32),
        }
    }

    /// Discrete support with weights for the atomic and grid forms; powers
    /// of those are materialized. The Bernoulli convolution has no finite
    /// model and is rejected.
    pub fn discrete_support(&self) -> Result<Vec<(T, T)>> {
        match self {
            Self::Atomic(a) => Ok(a.support()),
            Self::Grid(g) => Ok(g.support()),
            Self::Power { base, n } => conv_power(base, *n)?.discrete_support(),
            Self::Bernoulli { .. } => Err(Error::UnsupportedMeasure(
                "Bernoulli convolution has no finite support; use truncate_bernoulli".into(),
            )),
        }
    }
}

/// Smallest `K ≥ 1` whose cosine tail `Σ_{n>K} t²/(2θ^{2n}) = t²θ^{−2K}/(2(θ²−1))`
/// is below `eps`.
pub fn bernoulli_levels<T: Real>(theta: T, t: T, eps: T) -> usize {
    let denom = T::lit(2.0) * (theta * theta - T::one());
    let q = T::one() / (theta * theta);
    let mut tail = t * t * q / denom;
    let mut k = 1;
    while tail >= eps && k < 100_000 {
        tail *= q;
        k += 1;
    }
    k
}

/// `Π_{n=1}^{K} cos(t/θⁿ)`.
pub fn bernoulli_product<T: Real>(theta: T, t: T, levels: usize) -> T {
    let mut scale = T::one();
    let mut prod = T::one();
    for _ in 0..levels {
        scale /= theta;
        prod *= (t * scale).cos();
    }
    prod
}

/// Upper bound `t²θ^{−2K}/(2(1−θ^{−2}))` on the gap between the `K`-term
/// cosine product and the infinite product.
pub fn bernoulli_tail_bound<T: Real>(theta: T, t: T, levels: usize) -> T {
    let q = T::one() / (theta * theta);
    t * t * q.powi(levels as i32) / (T::lit(2.0) * (T::one() - q))
}

/// Atomic law of `Σ_{n=1}^{K} ±θ^{−n}` with uniform signs; coinciding sums
/// are merged.
pub fn truncate_bernoulli<T: Real>(theta: T, levels: usize) -> Result<SymmetricMeasure<T>> {
    if !(theta > T::one()) || !theta.is_finite() {
        return Err(Error::InvalidMeasure(format!("Bernoulli parameter θ = {theta} must be > 1")));
    }
    if levels == 0 {
        return Err(Error::InvalidArgument("truncation level K must be ≥ 1".into()));
    }
    if levels > MAX_BERNOULLI_LEVELS {
        return Err(Error::SizeCap {
            what: "Bernoulli truncation level",
            requested: levels,
            cap: MAX_BERNOULLI_LEVELS,
        });
    }
    let mut sums = vec![T::zero()];
    let mut scale = T::one();
    for _ in 0..levels {
        scale /= theta;
        sums = sums.iter().flat_map(|&s| [s - scale, s + scale]).collect();
    }
    let w = T::one() / T::from_count(sums.len());
    Ok(SymmetricMeasure::Atomic(AtomicMeasure::from_full_support(
        sums.into_iter().map(|s| (s, w)).collect(),
    )))
}

/// Convolution of two atomic measures, or of two grid densities with the
/// same step.
pub fn convolve<T: Real>(mu: &SymmetricMeasure<T>, nu: &SymmetricMeasure<T>) -> Result<SymmetricMeasure<T>> {
    match (mu, nu) {
        (SymmetricMeasure::Atomic(a), SymmetricMeasure::Atomic(b)) => {
            let sa = a.support();
            let sb = b.support();
            let mut points = Vec::with_capacity(sa.len() * sb.len());
            for &(x, w) in &sa {
                for &(y, v) in &sb {
                    points.push((x + y, w * v));
                }
            }
            Ok(SymmetricMeasure::Atomic(AtomicMeasure::from_full_support(points)))
        }
        (SymmetricMeasure::Grid(g), SymmetricMeasure::Grid(k)) => {
            let h = g.step;
            if (h - k.step).abs() > T::lit(1e-12) * h {
                return Err(Error::IncompatibleMeasures(format!(
                    "grid steps differ: {} vs {}",
                    g.step, k.step
                )));
            }
            let qa: Vec<T> = g.support().into_iter().map(|p| p.1).collect();
            let qb: Vec<T> = k.support().into_iter().map(|p| p.1).collect();
            let mut r = vec![T::zero(); qa.len() + qb.len() - 1];
            for (i, &a) in qa.iter().enumerate() {
                for (j, &b) in qb.iter().enumerate() {
                    r[i + j] += a * b;
                }
            }
            // r is a full symmetric weight vector; turn its upper half back
            // into trapezoid densities (end node carries half weight).
            let m = (r.len() - 1) / 2;
            let mut values: Vec<T> = r[m..].iter().map(|&w| w / h).collect();
            let last = values.len() - 1;
            values[last] *= T::lit(2.0);
            SymmetricMeasure::grid(h, values)
        }
        _ => Err(Error::IncompatibleMeasures(
            "convolution needs two atomic measures or two grid densities".into(),
        )),
    }
}

/// `μ^{*n}` by iterated [`convolve`].
pub fn conv_power<T: Real>(mu: &SymmetricMeasure<T>, n: usize) -> Result<SymmetricMeasure<T>> {
    if n == 0 {
        return Err(Error::InvalidMeasure("convolution power must be ≥ 1".into()));
    }
    let mut acc = match mu {
        SymmetricMeasure::Power { base, n: m } => conv_power(base, *m)?,
        other => other.clone(),
    };
    let base = acc.clone();
    for _ in 1..n {
        acc = convolve(&acc, &base)?;
    }
    Ok(acc)
}

/// Supremum of `|μ̃|` sampled over one window.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSup<T> {
    pub start: T,
    pub end: T,
    pub sup: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixingReport<T> {
    pub windows: Vec<WindowSup<T>>,
    /// Whether the sampled suprema happen to be non-increasing. Sampling can
    /// witness non-decay but never certify decay.
    pub nonincreasing: bool,
}

pub const DEFAULT_SAMPLES_PER_WINDOW: usize = 64;

/// Splits `[0, t_max]` into `windows` equal windows and records the sampled
/// supremum of `|μ̃|` on each.
pub fn mixing_report<T: Real>(
    mu: &SymmetricMeasure<T>,
    t_max: T,
    windows: usize,
    samples_per_window: usize,
) -> Result<MixingReport<T>> {
    if !(t_max > T::zero()) || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!("t_max = {t_max} must be > 0")));
    }
    if windows == 0 {
        return Err(Error::InvalidArgument("need at least one window".into()));
    }
    if samples_per_window < DEFAULT_SAMPLES_PER_WINDOW {
        return Err(Error::InvalidArgument(format!(
            "sampling density {samples_per_window} below {DEFAULT_SAMPLES_PER_WINDOW} points per window"
        )));
    }
    let width = t_max / T::from_count(windows);
    let out: Vec<WindowSup<T>> = (0..windows)
        .map(|k| {
            let start = width * T::from_count(k);
            let end = if k + 1 == windows { t_max } else { width * T::from_count(k + 1) };
            let sup = (0..=samples_per_window)
                .map(|i| {
                    let t = start + (end - start) * T::from_count(i) / T::from_count(samples_per_window);
                    mu.fourier(t).abs()
                })
                .fold(T::zero(), T::max);
            WindowSup { start, end, sup }
        })
        .collect();
    let nonincreasing = out.windows(2).all(|w| w[1].sup <= w[0].sup);
    Ok(MixingReport {
        windows: out,
        nonincreasing,
    })
}

/// Wiener average `(1/2T)∫_{−T}^{T} |μ̃(t)|² dt` by adaptive Simpson
/// quadrature on unit panels.
pub fn wiener_average<T: Real>(mu: &SymmetricMeasure<T>, horizon: T) -> Result<T> {
    if !(horizon > T::zero()) || !horizon.is_finite() {
        return Err(Error::InvalidArgument(format!("T = {horizon} must be > 0")));
    }
    let f = |t: T| {
        let v = mu.fourier(t);
        v * v
    };
    let panels = horizon.ceil().to_usize().unwrap_or(1).max(1);
    let width = horizon / T::from_count(panels);
    let tol = T::lit(1e-11).max(T::epsilon() * T::lit(64.0)) * width;
    let mut total = T::zero();
    for k in 0..panels {
        let a = width * T::from_count(k);
        let b = if k + 1 == panels { horizon } else { width * T::from_count(k + 1) };
        total += adaptive_simpson(&f, a, b, tol, 40)?;
    }
    // Even integrand: (1/2T)∫_{−T}^{T} = (1/T)∫_0^T.
    Ok(total / horizon)
}

fn adaptive_simpson<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, tol: T, max_depth: usize) -> Result<T> {
    let two = T::lit(2.0);
    let (fa, fb) = (f(a), f(b));
    let m = (a + b) / two;
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let r = simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth)?;
    if !r.is_finite() {
        return Err(Error::NonFiniteQuadrature(format!("integral over [{a}, {b}]")));
    }
    Ok(r)
}

#[inline]
fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<T: Real>(
    f: &impl Fn(T) -> T,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: usize,
) -> Result<T> {
    let two = T::lit(2.0);
    let m = (a + b) / two;
    let (lm, rm) = ((a + m) / two, (m + b) / two);
    let (flm, frm) = (f(lm), f(rm));
    if !flm.is_finite() || !frm.is_finite() {
        return Err(Error::NonFiniteQuadrature(format!("integrand near t = {m}")));
    }
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= T::lit(15.0) * tol {
        return Ok(left + right + delta / T::lit(15.0));
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure(format!(
            "no convergence on [{a}, {b}] (error estimate {})",
            delta.abs()
        )));
    }
    Ok(simpson_rec(f, a, m, fa, flm, fm, left, tol / two, depth - 1)?
        + simpson_rec(f, m, b, fm, frm, fb, right, tol / two, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin() -> SymmetricMeasure<f64> {
        SymmetricMeasure::two_point(1.0).unwrap()
    }

    #[test]
    fn fourier_at_zero_is_one() {
        let ms = [
            coin(),
            SymmetricMeasure::uniform(1.0, 100).unwrap(),
            SymmetricMeasure::bernoulli(2.5).unwrap(),
            SymmetricMeasure::power(coin(), 3).unwrap(),
            SymmetricMeasure::atomic(vec![(0.3, 0.1), (0.7, 0.2)], 0.4).unwrap(),
        ];
        for m in &ms {
            assert_eq!(m.fourier(0.0), 1.0);
            assert_eq!(m.fourier(-0.0), 1.0);
        }
    }

    #[test]
    fn two_point_is_cosine() {
        let m = SymmetricMeasure::two_point(0.7).unwrap();
        for &t in &[0.3, -2.0, 17.5] {
            assert!((m.fourier(t) - (0.7f64 * t).cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn viete_identity() {
        let m = SymmetricMeasure::bernoulli(2.0).unwrap();
        for i in 1..=200 {
            let t = i as f64 * 0.25;
            assert!((m.fourier(t) - t.sin() / t).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn bernoulli_levels_certify_tail() {
        let (theta, t): (f64, f64) = (2.5, 20.0);
        let k = bernoulli_levels(theta, t, 1e-14);
        let tail = t * t * theta.powi(-2 * k as i32) / (2.0 * (theta * theta - 1.0));
        assert!(tail < 1e-14);
        let prev = t * t * theta.powi(-2 * (k as i32 - 1)) / (2.0 * (theta * theta - 1.0));
        assert!(prev >= 1e-14);
    }

    #[test]
    fn truncate_bernoulli_small_cases() {
        let theta: f64 = 2.5;
        let SymmetricMeasure::<f64>::Atomic(one) = truncate_bernoulli(theta, 1).unwrap() else { panic!() };
        assert_eq!(one.atoms().len(), 1);
        assert!((one.atoms()[0].0 - 0.4).abs() < 1e-15);
        assert!((one.atoms()[0].1 - 0.5).abs() < 1e-15);
        assert_eq!(one.weight_at_zero(), 0.0);

        let SymmetricMeasure::<f64>::Atomic(two) = truncate_bernoulli(theta, 2).unwrap() else { panic!() };
        let xs: Vec<f64> = two.atoms().iter().map(|a| a.0).collect();
        assert_eq!(xs.len(), 2);
        assert!((xs[0] - (0.4 - 0.16)).abs() < 1e-15);
        assert!((xs[1] - (0.4 + 0.16)).abs() < 1e-15);
        assert!(two.atoms().iter().all(|a| (a.1 - 0.25).abs() < 1e-15));
    }

    #[test]
    fn golden_ratio_sums_coincide() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let SymmetricMeasure::Atomic(m) = truncate_bernoulli(phi, 3).unwrap() else { panic!() };
        // 1/φ = 1/φ² + 1/φ³, so ±(1/φ − 1/φ² − 1/φ³) both land on 0.
        assert_eq!(m.support_size(), 7);
        assert!((m.weight_at_zero() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn truncation_caps() {
        assert!(matches!(truncate_bernoulli(2.0, 21), Err(Error::SizeCap { .. })));
        assert!(truncate_bernoulli(1.0, 3).is_err());
        assert!(truncate_bernoulli(2.0, 0).is_err());
    }

    #[test]
    fn convolution_examples() {
        let c2 = convolve(&coin(), &coin()).unwrap();
        let SymmetricMeasure::Atomic(a) = &c2 else { panic!() };
        assert_eq!(a.atoms(), &[(2.0, 0.25)]);
        assert_eq!(a.weight_at_zero(), 0.5);
        let id = convolve(&coin(), &SymmetricMeasure::dirac()).unwrap();
        assert_eq!(id, coin());
    }

    #[test]
    fn grid_convolution_is_multiplicative() {
        let u = SymmetricMeasure::uniform(1.0, 50).unwrap();
        let v = SymmetricMeasure::grid(0.02, (0..=30).map(|j| (-(j as f64 * 0.02).powi(2)).exp()).collect()).unwrap();
        let w = convolve(&u, &v).unwrap();
        for i in 0..100 {
            let t = -30.0 + 0.6 * i as f64;
            assert!((w.fourier(t) - u.fourier(t) * v.fourier(t)).abs() < 1e-10);
        }
    }

    #[test]
    fn mixed_convolution_rejected() {
        let u = SymmetricMeasure::uniform(1.0, 10).unwrap();
        assert!(matches!(convolve(&u, &coin()), Err(Error::IncompatibleMeasures(_))));
        let v = SymmetricMeasure::uniform(1.0, 20).unwrap();
        assert!(matches!(convolve(&u, &v), Err(Error::IncompatibleMeasures(_))));
    }

    #[test]
    fn invalid_measures_rejected() {
        assert!(SymmetricMeasure::atomic(vec![(1.0, 0.3)], 0.0).is_err());
        assert!(SymmetricMeasure::atomic(vec![(-1.0, 0.5)], 0.0).is_err());
        assert!(SymmetricMeasure::<f64>::grid(0.0, vec![1.0, 1.0]).is_err());
        assert!(SymmetricMeasure::<f64>::grid(0.1, vec![0.0, 0.0]).is_err());
        assert!(SymmetricMeasure::<f64>::bernoulli(0.9).is_err());
        assert!(SymmetricMeasure::power(coin(), 0).is_err());
    }

    #[test]
    fn coinciding_atoms_merge() {
        let m = SymmetricMeasure::atomic(vec![(1.0, 0.25), (1.0 + 1e-14, 0.25)], 0.0).unwrap();
        let SymmetricMeasure::<f64>::Atomic(a) = m else { panic!() };
        assert_eq!(a.atoms().len(), 1);
        assert!((a.atoms()[0].1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mixing_report_detects_non_decay() {
        let r = mixing_report(&coin(), 50.0, 5, 64).unwrap();
        assert!(r.windows.iter().all(|w| w.sup > 0.99));
        let u = SymmetricMeasure::uniform(1.0, 1000).unwrap();
        let r = mixing_report(&u, 50.0, 5, 64).unwrap();
        assert!(r.windows[4].sup <= 0.025 + 1e-3);
        assert!(mixing_report(&u, 50.0, 5, 10).is_err());
        assert!(mixing_report(&u, 0.0, 5, 64).is_err());
    }

    #[test]
    fn wiener_averages() {
        assert!((wiener_average(&SymmetricMeasure::<f64>::dirac(), 3.0).unwrap() - 1.0).abs() < 1e-12);
        let t = 1000.0f64;
        let exact = 0.5 + (2.0 * t).sin() / (4.0 * t);
        assert!((wiener_average(&coin(), t).unwrap() - exact).abs() < 1e-9);
    }

    #[test]
    fn f32_instantiation() {
        let m = SymmetricMeasure::<f32>::bernoulli(2.0).unwrap();
        assert!((m.fourier(3.0f32) - 3.0f32.sin() / 3.0).abs() < 1e-5);
    }
}
