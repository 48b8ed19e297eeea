//! The free quasi-free state on words of semicircular generators.
//!
//! For real letters `ξ₁, …, ξₙ`,
//!
//! ```text
//! φ(s(ξ₁)⋯s(ξₙ)) = 2^{−n} Σ_{π ∈ NC(n)} Π_{(β,γ) ∈ π, β<γ} ⟨ξ_β, ξ_γ⟩_U
//! ```
//!
//! for even `n`, and zero for odd `n`.

use crate::combinatorics::{enumerate_nc_pairings_capped, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::hilbert::{RepVector, Representation};
use crate::linalg::CMatrix;
use crate::scalar::{cone, czero, Real, C};

/// Longest word accepted by default (`C_12` pairings at length 24).
pub const DEFAULT_MAX_WORD_LEN: usize = 24;

/// Tolerance for letters to count as real vectors.
pub const REALITY_TOL: f64 = 1e-12;

/// Tolerance on `|φ(p)|` for a factor to count as centered.
pub const CENTERING_TOL: f64 = 1e-12;

/// A product `s(ξ₁)⋯s(ξₙ)` of semicircular generators with real letters.
/// The empty word is the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Word<T> {
    letters: Vec<RepVector<T>>,
}

impl<T: Real> Word<T> {
    /// Validates that every letter has the representation's dimension and
    /// lies in the real subspace.
    pub fn new(rep: &Representation<T>, letters: Vec<RepVector<T>>) -> Result<Self> {
        for v in &letters {
            if v.len() != rep.dimension() {
                return Err(Error::DimensionMismatch {
                    expected: rep.dimension(),
                    found: v.len(),
                });
            }
            rep.check_real(v, T::lit(REALITY_TOL))?;
        }
        Ok(Self { letters })
    }

    pub fn unit() -> Self {
        Self { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[RepVector<T>] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    /// `w*` for a word of self-adjoint letters: the reversed word.
    pub fn adjoint(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().cloned().collect(),
        }
    }

    /// Letterwise image under a map that preserves the real subspace.
    fn map_letters(&self, f: impl FnMut(&RepVector<T>) -> Result<RepVector<T>>) -> Result<Self> {
        Ok(Self {
            letters: self.letters.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

/// A finite linear combination of words with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct WordPolynomial<T> {
    terms: Vec<(Word<T>, C<T>)>,
}

impl<T: Real> Default for WordPolynomial<T> {
    fn default() -> Self {
        Self { terms: Vec::new() }
    }
}

impl<T: Real> WordPolynomial<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::from_word(Word::unit())
    }

    pub fn from_word(w: Word<T>) -> Self {
        Self::from_terms([(w, cone())])
    }

    /// Sums coefficients of equal words and drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word<T>, C<T>)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.push(w, c);
        }
        p
    }

    fn push(&mut self, w: Word<T>, c: C<T>) {
        if let Some(slot) = self.terms.iter_mut().find(|(v, _)| *v == w) {
            slot.1 += c;
        } else {
            self.terms.push((w, c));
        }
        self.terms.retain(|(_, c)| c.re != T::zero() || c.im != T::zero());
    }

    pub fn terms(&self) -> &[(Word<T>, C<T>)] {
        &self.terms
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), *c * s)))
    }

    /// Product, expanded eagerly by concatenating words.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .flat_map(|(a, ca)| other.terms.iter().map(move |(b, cb)| (a.concat(b), *ca * *cb))),
        )
    }

    /// `p − φ(p)·1`.
    pub fn centered(&self, rep: &Representation<T>) -> Result<Self> {
        let m = moment_of_polynomial(rep, self)?;
        Ok(self.add(&Self::unit().scale(-m)))
    }

    fn map_words(&self, mut f: impl FnMut(&Word<T>) -> Result<Word<T>>) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            out.push((f(w)?, *c));
        }
        Ok(Self::from_terms(out))
    }
}

/// `φ_U(s(ξ₁)⋯s(ξₙ))` via the non-crossing pairing sum.
pub fn quasi_free_moment<T: Real>(rep: &Representation<T>, w: &Word<T>) -> Result<C<T>> {
    quasi_free_moment_capped(rep, w, DEFAULT_MAX_WORD_LEN)
}

pub fn quasi_free_moment_capped<T: Real>(rep: &Representation<T>, w: &Word<T>, max_len: usize) -> Result<C<T>> {
    let n = w.len();
    if n > max_len {
        return Err(Error::SizeCap {
            what: "word length",
            requested: n,
            cap: max_len,
        });
    }
    if n % 2 == 1 {
        return Ok(czero());
    }
    let letters = w.letters();
    // gram[i][j] = ⟨ξ_i, ξ_j⟩_U for i < j (0-based)
    let mut gram = vec![vec![czero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            gram[i][j] = rep.inner_u(&letters[i], &letters[j])?;
        }
    }
    let pairings = enumerate_nc_pairings_capped(n / 2, DEFAULT_ENUMERATION_CAP.max(max_len / 2))?;
    // Sequential reduction in lexicographic pairing order.
    let mut sum = czero();
    for pi in &pairings {
        let term = pi
            .pairs()
            .iter()
            .fold(cone(), |acc, &(b, g)| acc * gram[b - 1][g - 1]);
        sum += term;
    }
    Ok(sum * T::lit(0.5).powi(n as i32))
}

/// Linear extension of [`quasi_free_moment`]; the empty word contributes its
/// coefficient.
pub fn moment_of_polynomial<T: Real>(rep: &Representation<T>, p: &WordPolynomial<T>) -> Result<C<T>> {
    let mut acc = czero();
    for (w, c) in p.terms() {
        acc += *c * quasi_free_moment(rep, w)?;
    }
    Ok(acc)
}

/// `σ_t(s(ξ₁)⋯s(ξₙ)) = s(U_{−t}ξ₁)⋯s(U_{−t}ξₙ)`.
pub fn modular_flow_word<T: Real>(rep: &Representation<T>, w: &Word<T>, t: T) -> Result<Word<T>> {
    w.map_letters(|v| rep.apply_ut(v, -t))
}

pub fn modular_flow_polynomial<T: Real>(
    rep: &Representation<T>,
    p: &WordPolynomial<T>,
    t: T,
) -> Result<WordPolynomial<T>> {
    p.map_words(|w| modular_flow_word(rep, w, t))
}

/// `φ(σ_t(x) y)`.
pub fn mixing_correlation<T: Real>(
    rep: &Representation<T>,
    x: &WordPolynomial<T>,
    y: &WordPolynomial<T>,
    t: T,
) -> Result<C<T>> {
    let xt = modular_flow_polynomial(rep, x, t)?;
    moment_of_polynomial(rep, &xt.mul(y))
}

/// Location and value of the largest `|φ(σ_t(x) y)|` on `[t0, t1]`: a
/// uniform scan of `samples + 1` points refined by golden-section search
/// around the best sample.
pub fn correlation_sup<T: Real>(
    rep: &Representation<T>,
    x: &WordPolynomial<T>,
    y: &WordPolynomial<T>,
    t0: T,
    t1: T,
    samples: usize,
) -> Result<(T, T)> {
    if !(t1 > t0) || samples == 0 {
        return Err(Error::InvalidArgument(format!("degenerate window [{t0}, {t1}]")));
    }
    let f = |t: T| mixing_correlation(rep, x, y, t).map(|z| z.norm());
    let h = (t1 - t0) / T::from_count(samples);
    let (mut best_t, mut best) = (t0, f(t0)?);
    for i in 1..=samples {
        let t = t0 + h * T::from_count(i);
        let v = f(t)?;
        if v > best {
            best = v;
            best_t = t;
        }
    }
    // Golden-section maximization on the bracketing cell.
    let (mut a, mut b) = ((best_t - h).max(t0), (best_t + h).min(t1));
    let g = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..100 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
        if b - a <= T::epsilon() * (T::one() + a.abs()) {
            break;
        }
    }
    for (t, v) in [(c, fc), (d, fd)] {
        if v > best {
            best = v;
            best_t = t;
        }
    }
    Ok((best_t, best))
}

/// Which copy of `H ⊕ H` a free-product factor lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CopyTag {
    First,
    Second,
}

impl CopyTag {
    pub fn other(self) -> Self {
        match self {
            Self::First => Self::Second,
            Self::Second => Self::First,
        }
    }
}

/// `(ξ, 0)` or `(0, ξ)` in `H ⊕ H`.
pub fn embed<T: Real>(copy: CopyTag, v: &RepVector<T>) -> RepVector<T> {
    let zero = RepVector::zeros(v.len());
    match copy {
        CopyTag::First => v.concat(&zero),
        CopyTag::Second => zero.concat(v),
    }
}

/// Validates the alternating, centered, copy-supported factors of a
/// free-product moment and returns their product.
pub fn alternating_product<T: Real>(
    rep_double: &Representation<T>,
    factors: &[(CopyTag, WordPolynomial<T>)],
) -> Result<WordPolynomial<T>> {
    let base = rep_double.as_doubled().ok_or(Error::NotDoubled)?;
    let n = base.dimension();
    let mut product = WordPolynomial::unit();
    for (index, (tag, p)) in factors.iter().enumerate() {
        if index > 0 && factors[index - 1].0 == *tag {
            return Err(Error::NonAlternating { index });
        }
        for (w, _) in p.terms() {
            for v in w.letters() {
                let outside = match tag {
                    CopyTag::First => &v.coords()[n..],
                    CopyTag::Second => &v.coords()[..n],
                };
                let leak = crate::linalg::vec_norm(outside);
                if leak > T::lit(REALITY_TOL) * (T::one() + v.coord_norm()) {
                    return Err(Error::WrongCopy { index });
                }
            }
        }
        let m = moment_of_polynomial(rep_double, p)?;
        if m.norm() > T::lit(CENTERING_TOL) {
            return Err(Error::NotCentered {
                index,
                value: m.norm().as_f64(),
            });
        }
        product = product.mul(p);
    }
    Ok(product)
}

/// `|φ(p₁ p₂ ⋯ p_k)|` for centered factors alternating between the two
/// copies of `H ⊕ H`; vanishes by free independence.
pub fn freeness_defect<T: Real>(rep_double: &Representation<T>, factors: &[(CopyTag, WordPolynomial<T>)]) -> Result<T> {
    let product = alternating_product(rep_double, factors)?;
    Ok(moment_of_polynomial(rep_double, &product)?.norm())
}

/// `G_{ij} = φ(w_i^* w_j)`.
pub fn moment_gram<T: Real>(rep: &Representation<T>, words: &[Word<T>]) -> Result<CMatrix<T>> {
    let k = words.len();
    let mut g = CMatrix::zeros(k, k);
    for i in 0..k {
        let wi = words[i].adjoint();
        for j in 0..k {
            g[(i, j)] = quasi_free_moment(rep, &wi.concat(&words[j]))?;
        }
    }
    Ok(g)
}

/// `C_p (r/2)^{2p}`, the `2p`-th moment of the semicircle law on `[−r, r]`.
pub fn semicircle_moment<T: Real>(p: usize, radius: T) -> T {
    let cp = crate::combinatorics::catalan(p);
    let cp = T::from_f64(cp.to_string().parse::<f64>().unwrap_or(f64::INFINITY)).unwrap_or(T::infinity());
    cp * (radius / T::lit(2.0)).powi(2 * p as i32)
}
