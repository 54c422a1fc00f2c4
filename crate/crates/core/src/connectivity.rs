//! The connectivity function `λ(X) = r(X) + r(E − X) − r(M)` and the
//! separation and connectivity notions built on it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;
use crate::matroid::{bits, BinaryMatroid, ElementSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationClass {
    NotASeparation,
    ExactMinimal,
    ExactNonMinimal,
    /// A k-separation with `λ < k − 1`.
    SubExact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub class: SeparationClass,
    pub lambda: usize,
    pub k: usize,
}

impl Separation {
    pub fn is_exact(&self) -> bool {
        matches!(
            self.class,
            SeparationClass::ExactMinimal | SeparationClass::ExactNonMinimal
        )
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k;
        match self.class {
            SeparationClass::NotASeparation => write!(f, "not a {k}-separation"),
            SeparationClass::ExactMinimal => write!(f, "exact minimal {k}-separation"),
            SeparationClass::ExactNonMinimal => write!(f, "exact non-minimal {k}-separation"),
            SeparationClass::SubExact => write!(f, "{k}-separation (not exact)"),
        }
    }
}

pub(crate) fn lambda_mask(m: &BinaryMatroid, a: u64) -> usize {
    let b = m.full_mask() & !a;
    m.rank_mask(a) + m.rank_mask(b) - m.rank()
}

/// `λ_M(S)`.
pub fn lambda(m: &BinaryMatroid, set: &ElementSet) -> Result<usize> {
    Ok(lambda_mask(m, m.mask_of(set)?))
}

fn classify_mask(m: &BinaryMatroid, a: u64, k: usize) -> Separation {
    let lambda = lambda_mask(m, a);
    let size_a = a.count_ones() as usize;
    let size_b = m.len() - size_a;
    let class = if size_a < k || size_b < k || lambda + 1 > k {
        SeparationClass::NotASeparation
    } else if lambda + 1 == k {
        if size_a == k || size_b == k {
            SeparationClass::ExactMinimal
        } else {
            SeparationClass::ExactNonMinimal
        }
    } else {
        SeparationClass::SubExact
    };
    Separation { class, lambda, k }
}

/// Classifies `(A, E − A)` as a k-separation.
pub fn classify_separation(m: &BinaryMatroid, side: &ElementSet, k: usize) -> Result<Separation> {
    let a = m.mask_of(side)?;
    if a == 0 || a == m.full_mask() {
        return Err(Error::PreconditionUnmet(
            "a separation side must be a nonempty proper subset".into(),
        ));
    }
    Ok(classify_mask(m, a, k))
}

// Nonempty proper subsets up to complementation: the last element is always
// on the B side.
fn half_partitions(m: &BinaryMatroid) -> impl Iterator<Item = u64> {
    let n = m.len();
    let limit = if n == 0 { 0 } else { 1u64 << (n - 1) };
    1..limit
}

/// No k-separation for any `k ≤ n − 1`.
pub fn is_n_connected(m: &BinaryMatroid, n: usize) -> Result<bool> {
    limits::check(m.len())?;
    if n < 2 {
        return Err(Error::PreconditionUnmet(
            "connectivity order must be at least 2".into(),
        ));
    }
    let size = m.len();
    Ok(half_partitions(m).all(|a| {
        let sa = a.count_ones() as usize;
        let bound = sa.min(size - sa).min(n - 1);
        lambda_mask(m, a) >= bound
    }))
}

/// A 3-connected matroid with `λ(A) ≥ 3` whenever both sides have at least
/// four elements.
pub fn is_internally_4_connected(m: &BinaryMatroid) -> Result<bool> {
    if !is_n_connected(m, 3)? {
        return Err(Error::PreconditionUnmet(format!(
            "{} is not 3-connected",
            m.name()
        )));
    }
    let size = m.len();
    Ok(half_partitions(m).all(|a| {
        let sa = a.count_ones() as usize;
        sa < 4 || size - sa < 4 || lambda_mask(m, a) >= 3
    }))
}

/// Some non-minimal exact 3-separation side, if any (the first found in
/// subset order, normalised so the last element lies in `B`).
pub fn find_nonminimal_exact_3_separation(m: &BinaryMatroid) -> Result<Option<ElementSet>> {
    limits::check(m.len())?;
    Ok(half_partitions(m)
        .find(|&a| classify_mask(m, a, 3).class == SeparationClass::ExactNonMinimal)
        .map(|a| m.set_of_mask(a)))
}

pub(crate) fn union_of_circuits_mask(m: &BinaryMatroid, s: u64) -> bool {
    bits(s).all(|x| m.circuit_through_mask(x, s).is_some_and(|c| c & !s == 0))
}

pub(crate) fn union_of_cocircuits_mask(m: &BinaryMatroid, s: u64) -> bool {
    bits(s).all(|x| m.cocircuit_through_mask(x, s).is_some_and(|c| c & !s == 0))
}

/// Every element of `S` lies in a circuit contained in `S`.
pub fn side_is_union_of_circuits(m: &BinaryMatroid, side: &ElementSet) -> Result<bool> {
    Ok(union_of_circuits_mask(m, m.mask_of(side)?))
}

/// Every element of `S` lies in a cocircuit contained in `S`.
pub fn side_is_union_of_cocircuits(m: &BinaryMatroid, side: &ElementSet) -> Result<bool> {
    Ok(union_of_cocircuits_mask(m, m.mask_of(side)?))
}
