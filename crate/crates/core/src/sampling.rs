//! Random test inputs drawn from a caller-supplied generator.
//!
//! Coordinates are uniform on `[−1, 1]`; results depend only on the
//! generator's output stream, so a seeded generator gives reproducible
//! inputs.

use rand::Rng;

use crate::error::Result;
use crate::fock::{FockVector, TruncatedFock};
use crate::hilbert::{RepVector, Representation};
use crate::moments::Word;
use crate::scalar::{czero, Real, C};

fn unit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.random_range(-1.0..=1.0))
}

fn complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re = unit(rng);
    C::new(re, unit(rng))
}

/// Random vector of `H_ℂ`.
pub fn random_vector<T: Real, R: Rng + ?Sized>(rep: &Representation<T>, rng: &mut R) -> RepVector<T> {
    RepVector::new((0..rep.dimension()).map(|_| complex(rng)).collect())
}

/// Random vector of the real subspace `H_ℝ`.
pub fn random_real_vector<T: Real, R: Rng + ?Sized>(rep: &Representation<T>, rng: &mut R) -> Result<RepVector<T>> {
    rep.real_part(&random_vector(rep, rng))
}

/// Random word of `len` real letters.
pub fn random_word<T: Real, R: Rng + ?Sized>(rep: &Representation<T>, len: usize, rng: &mut R) -> Result<Word<T>> {
    let letters = (0..len)
        .map(|_| random_real_vector(rep, rng))
        .collect::<Result<Vec<_>>>()?;
    Word::new(rep, letters)
}

/// Random vector supported on the level-`k` tensors of `𝓕(H ⊕ 0)`.
pub fn random_first_copy_vector<T: Real, R: Rng + ?Sized>(
    fock: &TruncatedFock<T>,
    level: usize,
    rng: &mut R,
) -> Result<FockVector<T>> {
    let mut v = vec![czero(); fock.dimension()];
    for i in fock.first_copy_indices(level)? {
        v[i] = complex(rng);
    }
    Ok(FockVector::new(v))
}
