//! Moment-level computations for free Araki–Woods factors.
//!
//! * [`combinatorics`]: Catalan numbers and non-crossing pairings.
//! * [`hilbert`]: orthogonal representations of ℝ and the deformed inner
//!   product `⟨·,·⟩_U`.
//! * [`moments`]: the free quasi-free state on words via the pairing
//!   formula, modular flow, mixing correlations, free independence.
//! * [`fock`]: truncated full Fock space as an independent matrix oracle,
//!   second quantization and the malleable deformation `(α_s, β)`.
//! * [`measures`]: symmetric probability measures, Fourier transforms,
//!   convolution powers, Bernoulli convolutions.
//! * [`io`]: JSON descriptions of the above.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the `…64`
//! aliases below fix `f64`.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod combinatorics;
pub mod error;
pub mod fock;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod moments;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type Representation64 = hilbert::Representation<f64>;
pub type RepVector64 = hilbert::RepVector<f64>;
pub type Word64 = moments::Word<f64>;
pub type WordPolynomial64 = moments::WordPolynomial<f64>;
pub type SymmetricMeasure64 = measures::SymmetricMeasure<f64>;
pub type TruncatedFock64 = fock::TruncatedFock<f64>;
pub type FockOperator64 = fock::FockOperator<f64>;
pub type FockVector64 = fock::FockVector<f64>;
pub type CMatrix64 = linalg::CMatrix<f64>;

pub type Representation32 = hilbert::Representation<f32>;
pub type RepVector32 = hilbert::RepVector<f32>;
pub type Word32 = moments::Word<f32>;
pub type SymmetricMeasure32 = measures::SymmetricMeasure<f32>;
pub type TruncatedFock32 = fock::TruncatedFock<f32>;
