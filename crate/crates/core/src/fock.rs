//! Truncated full Fock space `ℂΩ ⊕ H ⊕ H^{⊗2} ⊕ ⋯ ⊕ H^{⊗N}` with dense
//! matrices: an oracle for the pairing formula that shares no code path with
//! it, plus the malleable deformation `(α_s, β)` of `Γ(H ⊕ H)`.
//!
//! `H` is coordinatized by a `⟨·,·⟩_U`-orthonormal basis `(e_a)` obtained by
//! modified Gram–Schmidt from the standard basis, so adjoints are conjugate
//! transposes. A vector `ξ` enters the Fock model with coordinates
//! `c_a(ξ) = ⟨e_a, ξ⟩_U`; with this identification the vacuum state
//! `⟨x Ω, Ω⟩` reproduces `⟨ξ_β, ξ_γ⟩_U` (first argument at the smaller
//! index) in every paired factor, and a complex-linear map `T` on `H` acts
//! on coordinates through the matrix with columns `c(T e_b)`.
//!
//! Basis tensors of level `k` are indexed by their letters with the first
//! (leftmost) letter most significant.

use crate::error::{Error, Result};
use crate::hilbert::{RepVector, Representation};
use crate::linalg::{self, CMatrix};
use crate::moments::{alternating_product, CopyTag, Word, WordPolynomial, REALITY_TOL};
use crate::scalar::{cone, cre, czero, Real, C};

/// Default cap on the total Fock dimension `D`.
pub const DEFAULT_FOCK_BUDGET: usize = 20_000;

/// A vector of the truncated Fock space in the tensor-word basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T> {
    coords: Vec<C<T>>,
}

impl<T: Real> FockVector<T> {
    pub fn new(coords: Vec<C<T>>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[C<T>] {
        &self.coords
    }

    pub fn norm(&self) -> T {
        linalg::vec_norm(&self.coords)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(linalg::vec_sub(&self.coords, &other.coords))
    }

    pub fn inner(&self, other: &Self) -> C<T> {
        linalg::inner(&self.coords, &other.coords)
    }
}

/// A dense operator on the truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator<T> {
    matrix: CMatrix<T>,
}

impl<T: Real> FockOperator<T> {
    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.matmul(&other.matrix),
        }
    }

    pub fn apply(&self, v: &FockVector<T>) -> FockVector<T> {
        FockVector::new(self.matrix.matvec(&v.coords))
    }
}

/// Truncated full Fock space over a representation.
#[derive(Debug, Clone)]
pub struct TruncatedFock<T> {
    rep: Representation<T>,
    basis: Vec<RepVector<T>>,
    level: usize,
    /// `offsets[k]` is the index of the first level-`k` tensor, `k ≤ N + 1`.
    offsets: Vec<usize>,
    /// For `H ⊕ H`: which copy each orthonormal basis vector lies in.
    letter_copy: Option<Vec<CopyTag>>,
}

/// `1 + d + ⋯ + d^N`, or `None` on overflow.
fn fock_dimension(d: usize, level: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut pow: usize = 1;
    for k in 0..=level {
        total = total.checked_add(pow)?;
        if k < level {
            pow = pow.checked_mul(d)?;
        }
    }
    Some(total)
}

pub fn build_fock<T: Real>(rep: &Representation<T>, level: usize) -> Result<TruncatedFock<T>> {
    build_fock_with_budget(rep, level, DEFAULT_FOCK_BUDGET)
}

pub fn build_fock_with_budget<T: Real>(
    rep: &Representation<T>,
    level: usize,
    budget: usize,
) -> Result<TruncatedFock<T>> {
    if level == 0 {
        return Err(Error::InvalidArgument("Fock truncation level must be ≥ 1".into()));
    }
    let d = rep.dimension();
    let total = fock_dimension(d, level).unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::SizeCap {
            what: "Fock dimension",
            requested: total,
            cap: budget,
        });
    }

    // Modified Gram–Schmidt w.r.t. ⟨·,·⟩_U.
    let mut basis: Vec<RepVector<T>> = Vec::with_capacity(d);
    for k in 0..d {
        let mut v = RepVector::basis(d, k);
        for e in &basis {
            let proj = rep.inner_u(&v, e)?;
            v = v.sub(&e.scale(proj));
        }
        let norm = rep.norm_u(&v)?;
        if !(norm > T::epsilon().sqrt() * T::lit(1e-4)) {
            return Err(Error::InvalidRepresentation(format!(
                "deformed inner product is numerically degenerate (direction {k})"
            )));
        }
        basis.push(v.scale(cre(T::one() / norm)));
    }

    let letter_copy = rep.as_doubled().map(|base| {
        let n = base.dimension();
        basis
            .iter()
            .map(|e| {
                if linalg::vec_norm(&e.coords()[n..]) == T::zero() {
                    CopyTag::First
                } else {
                    CopyTag::Second
                }
            })
            .collect()
    });

    let mut offsets = Vec::with_capacity(level + 2);
    let mut acc = 0usize;
    let mut pow = 1usize;
    for _ in 0..=level + 1 {
        offsets.push(acc);
        acc = acc.saturating_add(pow);
        pow = pow.saturating_mul(d);
    }

    Ok(TruncatedFock {
        rep: rep.clone(),
        basis,
        level,
        offsets,
        letter_copy,
    })
}

impl<T: Real> TruncatedFock<T> {
    pub fn representation(&self) -> &Representation<T> {
        &self.rep
    }

    /// The `⟨·,·⟩_U`-orthonormal basis of `H`.
    pub fn one_particle_basis(&self) -> &[RepVector<T>] {
        &self.basis
    }

    /// Complex dimension `d` of `H`.
    pub fn one_particle_dim(&self) -> usize {
        self.basis.len()
    }

    /// Truncation level `N`.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Total dimension `D = 1 + d + ⋯ + d^N`.
    pub fn dimension(&self) -> usize {
        self.offsets[self.level + 1]
    }

    /// Index range of the level-`k` tensors.
    pub fn level_range(&self, k: usize) -> core::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    /// Letters of basis tensor `index`, first letter first.
    pub fn letters_of(&self, index: usize) -> Vec<usize> {
        let k = (0..=self.level).rev().find(|&k| self.offsets[k] <= index).unwrap_or(0);
        let d = self.one_particle_dim();
        let mut r = index - self.offsets[k];
        let mut letters = vec![0; k];
        for slot in letters.iter_mut().rev() {
            *slot = r % d;
            r /= d;
        }
        letters
    }

    /// The vacuum `Ω`.
    pub fn vacuum(&self) -> FockVector<T> {
        let mut v = vec![czero(); self.dimension()];
        v[0] = cone();
        FockVector::new(v)
    }

    /// Fock coordinates `c_a(ξ) = ⟨e_a, ξ⟩_U` of a one-particle vector.
    pub fn one_particle(&self, xi: &RepVector<T>) -> Result<Vec<C<T>>> {
        self.basis.iter().map(|e| self.rep.inner_u(e, xi)).collect()
    }

    /// `ξ` placed at level one.
    pub fn level_one_vector(&self, xi: &RepVector<T>) -> Result<FockVector<T>> {
        let c = self.one_particle(xi)?;
        let mut v = vec![czero(); self.dimension()];
        v[self.offsets[1]..self.offsets[2]].copy_from_slice(&c);
        Ok(FockVector::new(v))
    }

    /// Coordinate matrix of a complex-linear map on `H`: column `b` is
    /// `c(T e_b)`.
    pub fn one_particle_matrix(
        &self,
        map: impl Fn(&RepVector<T>) -> Result<RepVector<T>>,
    ) -> Result<CMatrix<T>> {
        let cols = self
            .basis
            .iter()
            .map(|e| self.one_particle(&map(e)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(CMatrix::from_columns(&cols))
    }

    /// Mask of basis tensors whose letters all lie in the first copy of
    /// `H ⊕ H`.
    fn first_copy_mask(&self) -> Result<Vec<bool>> {
        let copies = self.letter_copy.as_ref().ok_or(Error::NotDoubled)?;
        Ok((0..self.dimension())
            .map(|i| self.letters_of(i).iter().all(|&a| copies[a] == CopyTag::First))
            .collect())
    }

    /// Indices of level-`k` tensors built from first-copy letters only.
    pub fn first_copy_indices(&self, k: usize) -> Result<Vec<usize>> {
        let mask = self.first_copy_mask()?;
        Ok(self.level_range(k).filter(|&i| mask[i]).collect())
    }
}

/// Left creation operator `ℓ(ξ)`; tensors at level `N` are sent to zero.
pub fn creation_op<T: Real>(fock: &TruncatedFock<T>, xi: &RepVector<T>) -> Result<FockOperator<T>> {
    let c = fock.one_particle(xi)?;
    let d = fock.one_particle_dim();
    let mut m = CMatrix::zeros(fock.dimension(), fock.dimension());
    let mut width = 1usize; // d^k
    for k in 0..fock.level {
        let (src, dst) = (fock.offsets[k], fock.offsets[k + 1]);
        for r in 0..width {
            for (a, &ca) in c.iter().enumerate().take(d) {
                m[(dst + a * width + r, src + r)] = ca;
            }
        }
        width *= d;
    }
    Ok(FockOperator { matrix: m })
}

/// `s(ξ) = (ℓ(ξ) + ℓ(ξ)*)/2` for real `ξ`.
pub fn s_op<T: Real>(fock: &TruncatedFock<T>, xi: &RepVector<T>) -> Result<FockOperator<T>> {
    fock.rep.check_real(xi, T::lit(REALITY_TOL))?;
    let l = creation_op(fock, xi)?;
    let sum = &l.matrix + &l.matrix.adjoint();
    Ok(FockOperator {
        matrix: sum.scale(cre(T::lit(0.5))),
    })
}

/// `⟨s(ξ₁)⋯s(ξₙ)Ω, Ω⟩` by matrix–vector products. Needs `N ≥ n`.
pub fn fock_moment<T: Real>(fock: &TruncatedFock<T>, w: &Word<T>) -> Result<C<T>> {
    if fock.level < w.len() {
        return Err(Error::InsufficientTruncation {
            level: fock.level,
            word_len: w.len(),
        });
    }
    let mut v = fock.vacuum();
    for xi in w.letters().iter().rev() {
        v = s_op(fock, xi)?.apply(&v);
    }
    Ok(v.coords[0])
}

/// Linear extension of [`fock_moment`].
pub fn fock_polynomial_moment<T: Real>(fock: &TruncatedFock<T>, p: &WordPolynomial<T>) -> Result<C<T>> {
    let mut acc = czero();
    for (w, c) in p.terms() {
        acc += *c * fock_moment(fock, w)?;
    }
    Ok(acc)
}

/// Free-independence defect evaluated through the Fock model; inputs are
/// validated exactly as in [`crate::moments::freeness_defect`].
pub fn fock_freeness_defect<T: Real>(
    fock: &TruncatedFock<T>,
    factors: &[(CopyTag, WordPolynomial<T>)],
) -> Result<T> {
    let product = alternating_product(&fock.rep, factors)?;
    Ok(fock_polynomial_moment(fock, &product)?.norm())
}

/// `𝓕(V) = ⊕_k V^{⊗k}` for a `d × d` coordinate matrix `V`.
pub fn second_quantize<T: Real>(fock: &TruncatedFock<T>, v: &CMatrix<T>) -> Result<FockOperator<T>> {
    let d = fock.one_particle_dim();
    if v.rows() != d || v.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: if v.rows() != d { v.rows() } else { v.cols() },
        });
    }
    let total = fock.dimension();
    let mut m = CMatrix::zeros(total, total);
    m[(0, 0)] = cone();
    // block_k = V ⊗ block_{k−1}
    let mut prev = CMatrix::identity(1);
    for k in 1..=fock.level {
        let w = prev.rows();
        let block = CMatrix::from_fn(d * w, d * w, |i, j| v[(i / w, j / w)] * prev[(i % w, j % w)]);
        let off = fock.offsets[k];
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                m[(off + i, off + j)] = block[(i, j)];
            }
        }
        prev = block;
    }
    Ok(FockOperator { matrix: m })
}

/// `𝓕(U_t)`.
pub fn second_quantize_ut<T: Real>(fock: &TruncatedFock<T>, t: T) -> Result<FockOperator<T>> {
    let v = fock.one_particle_matrix(|x| fock.rep.apply_ut(x, t))?;
    second_quantize(fock, &v)
}

/// `α_s = Ad 𝓕(V_s)` and `β` on `Γ(H ⊕ H)`, returned as their implementing
/// unitaries `𝓕(V_s)` and `𝓕(Id ⊕ −Id)`. `V_s` rotates the two copies by
/// `πs/2`.
pub fn deformation_pair<T: Real>(fock: &TruncatedFock<T>, s: T) -> Result<(FockOperator<T>, FockOperator<T>)> {
    let n = fock.rep.as_doubled().ok_or(Error::NotDoubled)?.dimension();
    let angle = T::FRAC_PI_2() * s;
    let (sn, cs) = angle.sin_cos();
    let rotate = |x: &RepVector<T>| -> Result<RepVector<T>> {
        let (a, b) = x.coords().split_at(n);
        let first: Vec<C<T>> = a.iter().zip(b).map(|(&p, &q)| p * cs - q * sn).collect();
        let second: Vec<C<T>> = a.iter().zip(b).map(|(&p, &q)| p * sn + q * cs).collect();
        Ok(RepVector::new(first).concat(&RepVector::new(second)))
    };
    let reflect = |x: &RepVector<T>| -> Result<RepVector<T>> {
        let (a, b) = x.coords().split_at(n);
        Ok(RepVector::new(a.to_vec()).concat(&RepVector::new(b.iter().map(|&q| -q).collect())))
    };
    let alpha = second_quantize(fock, &fock.one_particle_matrix(rotate)?)?;
    let beta = second_quantize(fock, &fock.one_particle_matrix(reflect)?)?;
    Ok((alpha, beta))
}

/// Orthogonal projection of `𝓕(H ⊕ H)` onto `𝓕(H ⊕ 0)`: every tensor with a
/// second-copy letter is zeroed.
pub fn project_copy1<T: Real>(fock: &TruncatedFock<T>, v: &FockVector<T>) -> Result<FockVector<T>> {
    let mask = fock.first_copy_mask()?;
    check_len(fock, v)?;
    Ok(FockVector::new(
        v.coords
            .iter()
            .zip(&mask)
            .map(|(&z, &keep)| if keep { z } else { czero() })
            .collect(),
    ))
}

fn check_len<T: Real>(fock: &TruncatedFock<T>, v: &FockVector<T>) -> Result<()> {
    if v.coords.len() != fock.dimension() {
        return Err(Error::DimensionMismatch {
            expected: fock.dimension(),
            found: v.coords.len(),
        });
    }
    Ok(())
}

/// Both sides of `‖ζ − α_{2s}ζ‖ ≤ 2‖α_sζ − P₁α_sζ‖` for `ζ ∈ 𝓕(H ⊕ 0)`.
pub fn transversality_gap<T: Real>(fock: &TruncatedFock<T>, zeta: &FockVector<T>, s: T) -> Result<(T, T)> {
    if !(s > T::zero() && s <= T::one()) {
        return Err(Error::InvalidArgument(format!("s = {s} must lie in (0, 1]")));
    }
    let (alpha_s, _) = deformation_pair(fock, s)?;
    let (alpha_2s, _) = deformation_pair(fock, s + s)?;
    transversality_gap_with(fock, zeta, &alpha_s, &alpha_2s)
}

/// [`transversality_gap`] with precomputed `𝓕(V_s)` and `𝓕(V_{2s})`.
pub fn transversality_gap_with<T: Real>(
    fock: &TruncatedFock<T>,
    zeta: &FockVector<T>,
    alpha_s: &FockOperator<T>,
    alpha_2s: &FockOperator<T>,
) -> Result<(T, T)> {
    check_len(fock, zeta)?;
    let p = project_copy1(fock, zeta)?;
    let outside = zeta.sub(&p).norm();
    if outside > T::lit(1e-12) * (T::one() + zeta.norm()) {
        return Err(Error::Support {
            outside: outside.as_f64(),
        });
    }
    let lhs = zeta.sub(&alpha_2s.apply(zeta)).norm();
    let az = alpha_s.apply(zeta);
    let rhs = T::lit(2.0) * az.sub(&project_copy1(fock, &az)?).norm();
    Ok((lhs, rhs))
}
