//! Catalan numbers and non-crossing pairings of `{1, …, 2p}`.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Default upper bound on `p` for [`enumerate_nc_pairings`]; `C_12 = 208012`.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Exact Catalan number `C_p = binom(2p, p) / (p + 1)`.
pub fn catalan(p: usize) -> BigUint {
    // C_{k+1} = C_k * 2(2k+1) / (k+2); the division is always exact.
    let mut c = BigUint::one();
    for k in 0..p {
        c *= BigUint::from(2 * (2 * k + 1));
        c /= BigUint::from(k + 2);
    }
    c
}

/// A non-crossing pairing of `{1, …, 2p}`, stored as 1-based pairs `(β, γ)`
/// with `β < γ`, sorted by `β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonCrossingPairing {
    pairs: Vec<(usize, usize)>,
}

impl NonCrossingPairing {
    /// Validates `pairs` as a non-crossing pairing of `{1, …, n}`.
    pub fn new(pairs: Vec<(usize, usize)>, n: usize) -> Result<Self> {
        if !is_noncrossing(&pairs, n)? {
            return Err(Error::MalformedPartition("pairing has a crossing".into()));
        }
        let mut pairs: Vec<_> = pairs
            .into_iter()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        pairs.sort_unstable();
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of points `2p`.
    pub fn order(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Image under the reflection `i ↦ 2p + 1 − i`.
    pub fn reflect(&self) -> Self {
        let m = self.order() + 1;
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(a, b)| (m - b, m - a)).collect();
        pairs.sort_unstable();
        Self { pairs }
    }
}

/// Checks that `pairs` partitions `{1, …, n}` into 2-element classes and
/// reports whether the pairing is non-crossing.
pub fn is_noncrossing(pairs: &[(usize, usize)], n: usize) -> Result<bool> {
    if !n.is_multiple_of(2) {
        return Err(Error::MalformedPartition(format!("n = {n} is odd")));
    }
    if pairs.len() * 2 != n {
        return Err(Error::MalformedPartition(format!(
            "{} pairs cannot partition {n} points",
            pairs.len()
        )));
    }
    // partner[i] for 1-based i
    let mut partner = vec![0usize; n + 1];
    for &(a, b) in pairs {
        for i in [a, b] {
            if i == 0 || i > n {
                return Err(Error::MalformedPartition(format!("index {i} out of range 1..={n}")));
            }
            if partner[i] != 0 {
                return Err(Error::MalformedPartition(format!("index {i} repeated")));
            }
        }
        if a == b {
            return Err(Error::MalformedPartition(format!("index {a} paired with itself")));
        }
        partner[a] = b;
        partner[b] = a;
    }
    // Non-crossing iff the pairs nest like balanced brackets.
    let mut stack = Vec::with_capacity(n / 2);
    for (i, &j) in partner.iter().enumerate().skip(1) {
        if j > i {
            stack.push(i);
        } else if stack.pop() != Some(j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All non-crossing pairings of `{1, …, 2p}` in lexicographic order of their
/// sorted pair lists, with the default cap.
pub fn enumerate_nc_pairings(p: usize) -> Result<Vec<NonCrossingPairing>> {
    enumerate_nc_pairings_capped(p, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_nc_pairings_capped(p: usize, cap: usize) -> Result<Vec<NonCrossingPairing>> {
    if p > cap {
        return Err(Error::SizeCap {
            what: "pairing half-size p",
            requested: p,
            cap,
        });
    }
    Ok(pairings_of_interval(1, 2 * p)
        .into_iter()
        .map(|pairs| NonCrossingPairing { pairs })
        .collect())
}

/// Non-crossing pairings of the consecutive block `lo..=hi` (possibly empty).
///
/// `lo` is matched with some `j` such that `lo+1..j` has even length; the
/// inside and outside blocks are paired independently. Iterating `j`
/// upward, then inside, then outside, yields lexicographic order.
fn pairings_of_interval(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut j = lo + 1;
    while j <= hi {
        let inner = pairings_of_interval(lo + 1, j - 1);
        let outer = pairings_of_interval(j + 1, hi);
        for a in &inner {
            for b in &outer {
                let mut pairs = Vec::with_capacity(1 + a.len() + b.len());
                pairs.push((lo, j));
                pairs.extend_from_slice(a);
                pairs.extend_from_slice(b);
                out.push(pairs);
            }
        }
        j += 2;
    }
    out
}
