//! Orthogonal representations `(U_t)` of ℝ and the deformed inner product
//! `⟨ξ, η⟩_U = ⟨2/(1 + A^{−1}) ξ, η⟩`, where `U_t = A^{it}`.
//!
//! All inner products are linear in the first argument.
//!
//! Two concrete models are supported, plus direct sums of them:
//!
//! * finite: 2-dimensional rotation blocks with frequencies `ωⱼ`
//!   (`e₁ ↦ cos(tω)e₁ + sin(tω)e₂`) and fixed directions. On a block,
//!   `e₁ − ie₂` is the `A`-eigenvector with eigenvalue `e^{ω}` and
//!   `e₁ + ie₂` the one with eigenvalue `e^{−ω}`.
//! * measure: `L²(μ)` for a symmetric measure with finite support (atomic,
//!   or a grid density via its quadrature nodes), `U_t` multiplying by
//!   `e^{itx}` and `A` by `e^{x}`. The real subspace is
//!   `{f : f(x) = conj f(−x)}`.
//!
//! Downstream code only uses the methods on [`Representation`]; it never
//! matches on the variants.

use crate::error::{Error, Result};
use crate::linalg;
use crate::measures::SymmetricMeasure;
use crate::scalar::{cis, cre, czero, Real, C};

/// A vector of the complexified representation space, in the standard
/// coordinates of its [`Representation`].
#[derive(Debug, Clone, PartialEq)]
pub struct RepVector<T> {
    coords: Vec<C<T>>,
}

impl<T: Real> RepVector<T> {
    pub fn new(coords: Vec<C<T>>) -> Self {
        Self { coords }
    }

    pub fn from_real(coords: &[T]) -> Self {
        Self::new(coords.iter().map(|&x| cre(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![czero(); dim])
    }

    /// Standard basis vector.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[k] = cre(T::one());
        v
    }

    pub fn coords(&self) -> &[C<T>] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<C<T>> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `(self, other)` in a direct sum.
    pub fn concat(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Self::new(coords)
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::new(self.coords.iter().map(|&z| z * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(&a, &b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(linalg::vec_sub(&self.coords, &other.coords))
    }

    /// Euclidean norm of the coordinates (not a representation norm).
    pub fn coord_norm(&self) -> T {
        linalg::vec_norm(&self.coords)
    }
}

impl<T> From<Vec<C<T>>> for RepVector<T> {
    fn from(coords: Vec<C<T>>) -> Self {
        Self { coords }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Kind<T> {
    Finite {
        blocks: Vec<T>,
        trivial_dim: usize,
    },
    Measure {
        measure: SymmetricMeasure<T>,
        /// Support nodes `(x, mass)`, increasing and symmetric.
        support: Vec<(T, T)>,
    },
    Sum(Box<Representation<T>>, Box<Representation<T>>),
}

/// An orthogonal representation of ℝ on a real Hilbert space, together with
/// its complexification.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<T> {
    kind: Kind<T>,
}

/// `2/(1 + e^{−x})`, the deformed-inner-product weight for `A = e^{x}`.
#[inline]
fn weight<T: Real>(x: T) -> T {
    T::lit(2.0) / (T::one() + (-x).exp())
}

impl<T: Real> Representation<T> {
    /// Rotation blocks with frequencies `blocks` plus `trivial_dim` fixed
    /// directions. Zero frequencies are folded into the fixed part.
    pub fn finite(blocks: Vec<T>, trivial_dim: usize) -> Result<Self> {
        if blocks.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidRepresentation("block frequencies must be finite".into()));
        }
        let zero_blocks = blocks.iter().filter(|w| **w == T::zero()).count();
        let blocks: Vec<T> = blocks.into_iter().filter(|w| *w != T::zero()).collect();
        let trivial_dim = trivial_dim + 2 * zero_blocks;
        if 2 * blocks.len() + trivial_dim == 0 {
            return Err(Error::InvalidRepresentation("dimension must be ≥ 1".into()));
        }
        Ok(Self {
            kind: Kind::Finite { blocks, trivial_dim },
        })
    }

    /// `U_t = Id` on a real space of dimension `dim`.
    pub fn trivial(dim: usize) -> Result<Self> {
        Self::finite(Vec::new(), dim)
    }

    /// Single rotation block of frequency `omega`.
    pub fn rotation(omega: T) -> Result<Self> {
        Self::finite(vec![omega], 0)
    }

    /// Multiplication representation `(U_t f)(x) = e^{itx} f(x)` on `L²(μ)`.
    pub fn from_measure(measure: SymmetricMeasure<T>) -> Result<Self> {
        let support = measure.discrete_support()?;
        Ok(Self {
            kind: Kind::Measure { measure, support },
        })
    }

    /// `self ⊕ other`; vectors are concatenated coordinates.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            kind: Kind::Sum(Box::new(self.clone()), Box::new(other.clone())),
        }
    }

    /// For `H ⊕ H` (equal summands) returns the summand `H`.
    pub fn as_doubled(&self) -> Option<&Self> {
        match &self.kind {
            Kind::Sum(a, b) if a == b => Some(a),
            _ => None,
        }
    }

    /// The underlying measure of a multiplication representation.
    pub fn measure(&self) -> Option<&SymmetricMeasure<T>> {
        match &self.kind {
            Kind::Measure { measure, .. } => Some(measure),
            _ => None,
        }
    }

    /// Complex dimension of `H_ℂ` (= real dimension of `H_ℝ`).
    pub fn dimension(&self) -> usize {
        match &self.kind {
            Kind::Finite { blocks, trivial_dim } => 2 * blocks.len() + trivial_dim,
            Kind::Measure { support, .. } => support.len(),
            Kind::Sum(a, b) => a.dimension() + b.dimension(),
        }
    }

    fn check(&self, v: &RepVector<T>) -> Result<()> {
        if v.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `U_t ξ`.
    pub fn apply_ut(&self, v: &RepVector<T>, t: T) -> Result<RepVector<T>> {
        self.check(v)?;
        let mut out = v.coords.clone();
        self.apply_ut_in_place(&mut out, t);
        Ok(RepVector::new(out))
    }

    fn apply_ut_in_place(&self, v: &mut [C<T>], t: T) {
        match &self.kind {
            Kind::Finite { blocks, .. } => {
                for (k, &omega) in blocks.iter().enumerate() {
                    let (s, c) = (t * omega).sin_cos();
                    let (a, b) = (v[2 * k], v[2 * k + 1]);
                    v[2 * k] = a * c - b * s;
                    v[2 * k + 1] = a * s + b * c;
                }
            }
            Kind::Measure { support, .. } => {
                for (z, &(x, _)) in v.iter_mut().zip(support) {
                    *z *= cis(t * x);
                }
            }
            Kind::Sum(a, b) => {
                let (va, vb) = v.split_at_mut(a.dimension());
                a.apply_ut_in_place(va, t);
                b.apply_ut_in_place(vb, t);
            }
        }
    }

    /// Undeformed inner product `⟨ξ, η⟩`.
    pub fn inner(&self, u: &RepVector<T>, v: &RepVector<T>) -> Result<C<T>> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.inner_unchecked(&u.coords, &v.coords))
    }

    fn inner_unchecked(&self, u: &[C<T>], v: &[C<T>]) -> C<T> {
        match &self.kind {
            Kind::Finite { .. } => linalg::inner(u, v),
            Kind::Measure { support, .. } => support
                .iter()
                .zip(u.iter().zip(v))
                .fold(czero(), |acc, (&(_, q), (&a, &b))| acc + a * b.conj() * q),
            Kind::Sum(a, b) => {
                let n = a.dimension();
                a.inner_unchecked(&u[..n], &v[..n]) + b.inner_unchecked(&u[n..], &v[n..])
            }
        }
    }

    /// Deformed inner product `⟨ξ, η⟩_U`.
    pub fn inner_u(&self, u: &RepVector<T>, v: &RepVector<T>) -> Result<C<T>> {
        self.check(u)?;
        self.check(v)?;
        let r = self.inner_u_unchecked(&u.coords, &v.coords);
        if !r.re.is_finite() || !r.im.is_finite() {
            return Err(Error::NonFiniteQuadrature(format!("⟨ξ, η⟩_U = {r}")));
        }
        Ok(r)
    }

    fn inner_u_unchecked(&self, u: &[C<T>], v: &[C<T>]) -> C<T> {
        match &self.kind {
            Kind::Finite { blocks, .. } => {
                let nb = blocks.len();
                let half = T::lit(0.5);
                let mut acc: C<T> = czero();
                for (k, &omega) in blocks.iter().enumerate() {
                    // Coefficients along u± = (e₁ ∓ ie₂)/√2, A u± = e^{±ω} u±.
                    let i = C::new(T::zero(), T::one());
                    let (a1, a2, b1, b2) = (u[2 * k], u[2 * k + 1], v[2 * k], v[2 * k + 1]);
                    let ap = a1 + i * a2;
                    let am = a1 - i * a2;
                    let bp = b1 + i * b2;
                    let bm = b1 - i * b2;
                    let wp = weight(omega);
                    let wm = weight(-omega);
                    acc += (ap * bp.conj() * wp + am * bm.conj() * wm) * half;
                }
                acc + linalg::inner(&u[2 * nb..], &v[2 * nb..])
            }
            Kind::Measure { support, .. } => support
                .iter()
                .zip(u.iter().zip(v))
                .fold(czero(), |acc, (&(x, q), (&a, &b))| acc + a * b.conj() * (q * weight(x))),
            Kind::Sum(a, b) => {
                let n = a.dimension();
                a.inner_u_unchecked(&u[..n], &v[..n]) + b.inner_u_unchecked(&u[n..], &v[n..])
            }
        }
    }

    /// `‖ξ‖_U`.
    pub fn norm_u(&self, v: &RepVector<T>) -> Result<T> {
        Ok(self.inner_u(v, v)?.re.max(T::zero()).sqrt())
    }

    /// `‖ξ‖`.
    pub fn norm(&self, v: &RepVector<T>) -> Result<T> {
        Ok(self.inner(v, v)?.re.max(T::zero()).sqrt())
    }

    /// The conjugation `J` fixing `H_ℝ`: coordinatewise conjugation for
    /// finite blocks, `f ↦ conj f(−·)` for measures.
    pub fn conjugate(&self, v: &RepVector<T>) -> Result<RepVector<T>> {
        self.check(v)?;
        let mut out = v.coords.clone();
        self.conjugate_in_place(&mut out);
        Ok(RepVector::new(out))
    }

    fn conjugate_in_place(&self, v: &mut [C<T>]) {
        match &self.kind {
            Kind::Finite { .. } => v.iter_mut().for_each(|z| *z = z.conj()),
            Kind::Measure { .. } => {
                v.reverse();
                v.iter_mut().for_each(|z| *z = z.conj());
            }
            Kind::Sum(a, b) => {
                let (va, vb) = v.split_at_mut(a.dimension());
                a.conjugate_in_place(va);
                b.conjugate_in_place(vb);
            }
        }
    }

    /// Real part `(ξ + Jξ)/2`, the projection onto `H_ℝ`.
    pub fn real_part(&self, v: &RepVector<T>) -> Result<RepVector<T>> {
        let j = self.conjugate(v)?;
        Ok(v.add(&j).scale(cre(T::lit(0.5))))
    }

    /// `‖ξ − Jξ‖` in coordinates; zero exactly on `H_ℝ`.
    pub fn real_defect(&self, v: &RepVector<T>) -> Result<T> {
        Ok(v.sub(&self.conjugate(v)?).coord_norm())
    }

    /// Accepts `v` as a real vector when its defect is at most `tol·(1 + ‖v‖)`.
    pub fn check_real(&self, v: &RepVector<T>, tol: T) -> Result<()> {
        let defect = self.real_defect(v)?;
        if defect > tol * (T::one() + v.coord_norm()) {
            return Err(Error::NonReal { defect: defect.as_f64() });
        }
        Ok(())
    }

    /// `Π_{i} ⟨U_t fᵢ, gᵢ⟩` with the undeformed inner product: the
    /// positive-definite function of the `n`-fold tensor power. For
    /// all-ones vectors on a measure representation this is `μ̃(t)ⁿ`.
    pub fn tensor_power_correlation(&self, fs: &[RepVector<T>], gs: &[RepVector<T>], t: T) -> Result<C<T>> {
        if fs.is_empty() || fs.len() != gs.len() {
            return Err(Error::DimensionMismatch {
                expected: fs.len().max(1),
                found: gs.len(),
            });
        }
        let mut prod = cre(T::one());
        for (f, g) in fs.iter().zip(gs) {
            prod *= self.inner(&self.apply_ut(f, t)?, g)?;
        }
        Ok(prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    fn coin(a: f64) -> Representation<f64> {
        Representation::from_measure(SymmetricMeasure::two_point(a).unwrap()).unwrap()
    }

    #[test]
    fn zero_frequency_blocks_fold_into_trivial_part() {
        let r = Representation::<f64>::finite(vec![0.0, 1.0], 1).unwrap();
        assert_eq!(r.dimension(), 5);
        assert!(Representation::<f64>::finite(vec![], 0).is_err());
        assert!(Representation::<f64>::finite(vec![f64::NAN], 0).is_err());
    }

    #[test]
    fn apply_ut_examples() {
        let omega = 0.8;
        let r = Representation::rotation(omega).unwrap();
        let e1 = RepVector::<f64>::basis(2, 0);
        assert_eq!(r.apply_ut(&e1, 0.0).unwrap(), e1);
        let v = r.apply_ut(&e1, std::f64::consts::PI / omega).unwrap();
        assert!((v.coords()[0] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(v.coords()[1].norm() < 1e-15);

        let m = coin(1.0);
        let ones = RepVector::from_real(&[1.0, 1.0]);
        let t = 0.37;
        let v = m.apply_ut(&ones, t).unwrap();
        // support is (−1, +1)
        assert!((v.coords()[0] - c(t.cos(), -t.sin())).norm() < 1e-15);
        assert!((v.coords()[1] - c(t.cos(), t.sin())).norm() < 1e-15);
        assert!(m.apply_ut(&RepVector::zeros(3), t).is_err());
    }

    #[test]
    fn eigenvector_convention_matches_generator() {
        // U_t(e₁ − ie₂) = e^{itω}(e₁ − ie₂), i.e. A = e^{ω} on that vector.
        let omega = 1.3;
        let r = Representation::rotation(omega).unwrap();
        let u = RepVector::new(vec![c(1.0, 0.0), c(0.0, -1.0)]);
        for &t in &[0.1, 1.0, -2.5] {
            let lhs = r.apply_ut(&u, t).unwrap();
            let rhs = u.scale(cis(t * omega));
            assert!(lhs.sub(&rhs).coord_norm() < 1e-14);
        }
    }

    #[test]
    fn trivial_rep_has_undeformed_inner_product() {
        let r = Representation::<f64>::trivial(3).unwrap();
        let u = RepVector::new(vec![c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0)]);
        let v = RepVector::new(vec![c(0.0, 1.0), c(3.0, -1.0), c(2.0, 0.0)]);
        assert_eq!(r.inner_u(&u, &v).unwrap(), r.inner(&u, &v).unwrap());
    }

    #[test]
    fn one_block_matches_hand_diagonalized_weight() {
        // 2/(1 + A^{−1}) on a block is [[1, iτ], [−iτ, 1]] with τ = tanh(ω/2).
        let omega: f64 = 0.9;
        let tau = (omega / 2.0).tanh();
        let r = Representation::rotation(omega).unwrap();
        let e1 = RepVector::<f64>::basis(2, 0);
        let e2 = RepVector::<f64>::basis(2, 1);
        let v = r.inner_u(&e1, &e2).unwrap();
        // ⟨W e₁, e₂⟩ = W₂₁ = −iτ
        assert!(v.re.abs() < 1e-15);
        assert!((v.im + tau).abs() < 1e-15);
        assert!((r.norm_u(&e1).unwrap() - 1.0).abs() < 1e-15);

        let u = RepVector::new(vec![c(0.3, -0.2), c(1.1, 0.4)]);
        let w = RepVector::new(vec![c(-0.7, 0.5), c(0.2, 0.9)]);
        let i = c(0.0, 1.0);
        let wu = [u.coords()[0] + i * tau * u.coords()[1], -i * tau * u.coords()[0] + u.coords()[1]];
        let expect = linalg::inner(&wu, w.coords());
        assert!((r.inner_u(&u, &w).unwrap() - expect).norm() < 1e-15);
    }

    #[test]
    fn two_atom_norm_of_constant() {
        let a = 1.7;
        let r = coin(a);
        let ones = RepVector::from_real(&[1.0, 1.0]);
        let expect = 0.5 * 2.0 / (1.0 + a.exp()) + 0.5 * 2.0 / (1.0 + (-a).exp());
        let got = r.inner_u(&ones, &ones).unwrap();
        assert!((got.re - expect).abs() < 1e-15);
        assert!((got.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn conjugation_fixes_real_vectors() {
        let r = coin(1.0);
        let f = RepVector::new(vec![c(1.0, 2.0), c(1.0, -2.0)]);
        assert_eq!(r.real_defect(&f).unwrap(), 0.0);
        let g = RepVector::new(vec![c(1.0, 2.0), c(1.0, 2.0)]);
        assert!(r.check_real(&g, 1e-12).is_err());
        let m = Representation::from_measure(SymmetricMeasure::atomic(vec![(1.0, 0.25)], 0.5).unwrap()).unwrap();
        // atom at 0 forces a real value there
        let h = RepVector::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)]);
        assert!(m.check_real(&h, 1e-12).is_err());
        assert!(m.check_real(&m.real_part(&h).unwrap(), 1e-12).is_ok());
    }

    #[test]
    fn doubled_detection() {
        let r = Representation::<f64>::rotation(1.0).unwrap();
        let d = r.direct_sum(&r);
        assert_eq!(d.as_doubled(), Some(&r));
        assert_eq!(d.dimension(), 4);
        let other = r.direct_sum(&Representation::trivial(2).unwrap());
        assert!(other.as_doubled().is_none());
    }

    #[test]
    fn bernoulli_measure_cannot_back_a_representation() {
        let b = SymmetricMeasure::<f64>::bernoulli(2.0).unwrap();
        assert!(matches!(Representation::from_measure(b), Err(Error::UnsupportedMeasure(_))));
    }

    #[test]
    fn tensor_power_of_coin_is_cos_squared() {
        let r = coin(1.0);
        let ones = RepVector::from_real(&[1.0, 1.0]);
        let fs = vec![ones.clone(), ones.clone()];
        for &t in &[0.0, 0.4, 3.0] {
            let v = r.tensor_power_correlation(&fs, &fs, t).unwrap();
            assert!((v.re - t.cos().powi(2)).abs() < 1e-15);
            assert!(v.im.abs() < 1e-15);
        }
        assert!(r.tensor_power_correlation(&fs, &fs[..1], 1.0).is_err());
    }
}
