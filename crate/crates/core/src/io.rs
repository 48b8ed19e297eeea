//! Serializable descriptions of measures, representations, vectors, words
//! and word polynomials (the JSON input formats of the command line).
//!
//! ```text
//! measure:        {"type":"atomic","pairs":[[x,w],…],"w0":w0}
//!               | {"type":"grid","step":h,"values":[…]}
//!               | {"type":"bernoulli","theta":θ}
//!               | {"type":"power","base":<measure>,"n":n}
//! representation: {"type":"finite","blocks":[ω,…],"trivial_dim":k}
//!               | {"type":"measure","measure":<measure>}
//! vector:         [c,…] | {"atom_values":[c,…]} | {"basis":k} | "ones"
//!                 where c is a number or a [re, im] pair
//! word:           [<vector>,…]
//! polynomial:     [{"coefficient":c,"word":<word>},…]
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{RepVector, Representation};
use crate::measures::SymmetricMeasure;
use crate::moments::{Word, WordPolynomial};
use crate::scalar::{Real, C};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MeasureSpec {
    Atomic {
        pairs: Vec<[f64; 2]>,
        #[serde(default)]
        w0: f64,
    },
    Grid {
        step: f64,
        values: Vec<f64>,
    },
    Bernoulli {
        theta: f64,
    },
    Power {
        base: Box<MeasureSpec>,
        n: usize,
    },
}

impl MeasureSpec {
    pub fn build<T: Real>(&self) -> Result<SymmetricMeasure<T>> {
        match self {
            Self::Atomic { pairs, w0 } => SymmetricMeasure::atomic(
                pairs.iter().map(|&[x, w]| (T::lit(x), T::lit(w))).collect(),
                T::lit(*w0),
            ),
            Self::Grid { step, values } => {
                SymmetricMeasure::grid(T::lit(*step), values.iter().map(|&v| T::lit(v)).collect())
            }
            Self::Bernoulli { theta } => SymmetricMeasure::bernoulli(T::lit(*theta)),
            Self::Power { base, n } => SymmetricMeasure::power(base.build()?, *n),
        }
    }

    /// Description of a measure (normalized values for grids).
    pub fn describe<T: Real>(mu: &SymmetricMeasure<T>) -> Self {
        match mu {
            SymmetricMeasure::Atomic(a) => Self::Atomic {
                pairs: a.atoms().iter().map(|&(x, w)| [x.as_f64(), w.as_f64()]).collect(),
                w0: a.weight_at_zero().as_f64(),
            },
            SymmetricMeasure::Grid(g) => Self::Grid {
                step: g.step().as_f64(),
                values: g.values().iter().map(|v| v.as_f64()).collect(),
            },
            SymmetricMeasure::Bernoulli { theta } => Self::Bernoulli { theta: theta.as_f64() },
            SymmetricMeasure::Power { base, n } => Self::Power {
                base: Box::new(Self::describe(base)),
                n: *n,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RepresentationSpec {
    Finite {
        #[serde(default)]
        blocks: Vec<f64>,
        #[serde(default)]
        trivial_dim: usize,
    },
    Measure {
        measure: MeasureSpec,
    },
}

impl RepresentationSpec {
    pub fn build<T: Real>(&self) -> Result<Representation<T>> {
        match self {
            Self::Finite { blocks, trivial_dim } => {
                Representation::finite(blocks.iter().map(|&w| T::lit(w)).collect(), *trivial_dim)
            }
            Self::Measure { measure } => Representation::from_measure(measure.build()?),
        }
    }
}

/// A scalar: a real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexSpec {
    pub fn value<T: Real>(&self) -> C<T> {
        match *self {
            Self::Real(x) => C::new(T::lit(x), T::zero()),
            Self::Pair([re, im]) => C::new(T::lit(re), T::lit(im)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomValues {
    pub atom_values: Vec<ComplexSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisVector {
    pub basis: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Coords(Vec<ComplexSpec>),
    Atoms(AtomValues),
    Basis(BasisVector),
    Named(String),
}

impl VectorSpec {
    pub fn build<T: Real>(&self, rep: &Representation<T>) -> Result<RepVector<T>> {
        let dim = rep.dimension();
        let v = match self {
            Self::Coords(cs) | Self::Atoms(AtomValues { atom_values: cs }) => {
                RepVector::new(cs.iter().map(ComplexSpec::value).collect())
            }
            Self::Basis(BasisVector { basis }) => {
                if *basis >= dim {
                    return Err(Error::InvalidArgument(format!(
                        "basis index {basis} out of range for dimension {dim}"
                    )));
                }
                RepVector::basis(dim, *basis)
            }
            Self::Named(name) if name == "ones" => RepVector::from_real(&vec![T::one(); dim]),
            Self::Named(name) => return Err(Error::InvalidArgument(format!("unknown vector name {name:?}"))),
        };
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        Ok(v)
    }
}

pub type WordSpec = Vec<VectorSpec>;

pub fn build_word<T: Real>(spec: &[VectorSpec], rep: &Representation<T>) -> Result<Word<T>> {
    let letters = spec.iter().map(|v| v.build(rep)).collect::<Result<Vec<_>>>()?;
    Word::new(rep, letters)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coefficient: ComplexSpec,
    pub word: WordSpec,
}

pub type PolynomialSpec = Vec<TermSpec>;

pub fn build_polynomial<T: Real>(spec: &[TermSpec], rep: &Representation<T>) -> Result<WordPolynomial<T>> {
    let terms = spec
        .iter()
        .map(|t| Ok((build_word(&t.word, rep)?, t.coefficient.value())))
        .collect::<Result<Vec<_>>>()?;
    Ok(WordPolynomial::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_measures() {
        let m: MeasureSpec = serde_json::from_str(r#"{"type":"atomic","pairs":[[1.0,0.5]]}"#).unwrap();
        assert_eq!(m, MeasureSpec::Atomic { pairs: vec![[1.0, 0.5]], w0: 0.0 });
        let mu: SymmetricMeasure<f64> = m.build().unwrap();
        assert!((mu.fourier(0.5) - 0.5f64.cos()).abs() < 1e-15);

        let p: MeasureSpec =
            serde_json::from_str(r#"{"type":"power","base":{"type":"bernoulli","theta":2.0},"n":2}"#).unwrap();
        assert!(p.build::<f64>().is_ok());
        assert!(serde_json::from_str::<MeasureSpec>(r#"{"type":"bernoulli","theta":2,"x":1}"#).is_err());
        assert!(serde_json::from_str::<MeasureSpec>(r#"{"type":"lebesgue"}"#).is_err());
    }

    #[test]
    fn parse_representation_and_word() {
        let r: RepresentationSpec = serde_json::from_str(r#"{"type":"finite","blocks":[0.5],"trivial_dim":1}"#).unwrap();
        let rep: Representation<f64> = r.build().unwrap();
        assert_eq!(rep.dimension(), 3);
        let w: WordSpec = serde_json::from_str(r#"[[1, 0, 0.5], {"basis": 1}, "ones"]"#).unwrap();
        let word = build_word(&w, &rep).unwrap();
        assert_eq!(word.len(), 3);
        let bad: WordSpec = serde_json::from_str(r#"[[1, 0]]"#).unwrap();
        assert!(build_word(&bad, &rep).is_err());
        let complex: WordSpec = serde_json::from_str(r#"[[[1, 1], 0, 0]]"#).unwrap();
        assert!(matches!(build_word(&complex, &rep), Err(Error::NonReal { .. })));
    }

    #[test]
    fn parse_measure_rep_atom_values() {
        let r: RepresentationSpec = serde_json::from_str(
            r#"{"type":"measure","measure":{"type":"atomic","pairs":[[1,0.5]]}}"#,
        )
        .unwrap();
        let rep: Representation<f64> = r.build().unwrap();
        let v: VectorSpec = serde_json::from_str(r#"{"atom_values":[[1,2],[1,-2]]}"#).unwrap();
        let x = v.build(&rep).unwrap();
        assert_eq!(rep.real_defect(&x).unwrap(), 0.0);
    }

    #[test]
    fn parse_polynomial() {
        let rep = Representation::<f64>::trivial(1).unwrap();
        let p: PolynomialSpec = serde_json::from_str(
            r#"[{"coefficient":1,"word":[[1],[1]]},{"coefficient":[-0.25,0],"word":[]}]"#,
        )
        .unwrap();
        let poly = build_polynomial(&p, &rep).unwrap();
        let m = crate::moments::moment_of_polynomial(&rep, &poly).unwrap();
        assert!(m.norm() < 1e-16);
    }

    #[test]
    fn describe_round_trips() {
        let mu = SymmetricMeasure::atomic(vec![(0.5, 0.25), (2.0, 0.125)], 0.25).unwrap();
        let spec = MeasureSpec::describe(&mu);
        let json = serde_json::to_string(&spec).unwrap();
        let back: MeasureSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.build::<f64>().unwrap(), mu);
    }
}
