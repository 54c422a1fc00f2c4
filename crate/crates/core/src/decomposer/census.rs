//! Candidate enumeration shared by the certification strategies.

use std::collections::HashMap;

use rayon::prelude::*;

use super::DecompositionProblem;
use crate::connectivity::lambda_mask;
use crate::error::Result;
use crate::gf2::Gf2Vector;
use crate::growth::{self, GrowthCandidate};
use crate::minor::in_class;

/// A single-element growth `N + v` or `N + w` seen as a parent of two-element
/// growths.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Parent {
    pub in_class: bool,
    /// `λ(A)`.
    pub lambda_a: usize,
    /// `λ(A ∪ x)` for the new element `x`.
    pub lambda_ax: usize,
    /// `λ(A) = k − 1`.
    pub on_a: bool,
    /// `λ(A ∪ x) = k − 1`.
    pub on_ax: bool,
}

impl Parent {
    fn of(p: &DecompositionProblem, m: &crate::BinaryMatroid, x_pos: usize) -> Result<Self> {
        let a = m.mask_of(&p.side_a)?;
        let lambda_a = lambda_mask(m, a);
        let lambda_ax = lambda_mask(m, a | (1 << x_pos));
        Ok(Self {
            in_class: in_class(m, &p.class)?,
            lambda_a,
            lambda_ax,
            on_a: lambda_a + 1 == p.k,
            on_ax: lambda_ax + 1 == p.k,
        })
    }
}

pub(crate) struct TwoElement {
    pub candidate: GrowthCandidate,
    /// `M / f = N + v`.
    pub column: Parent,
    /// `M \ e`, the coextension of `N` by `w`.
    pub row: Parent,
}

pub(crate) struct Census {
    /// Simple extensions inside the class.
    pub extensions: Vec<GrowthCandidate>,
    /// Cosimple coextensions inside the class.
    pub coextensions: Vec<GrowthCandidate>,
    /// Simple and cosimple two-element growths inside the class.
    pub two: Vec<TwoElement>,
    /// Simple and cosimple two-element growths whose parents are in the
    /// class but which are not.
    pub two_outside: Vec<TwoElement>,
    pub generated: usize,
    pub pruned: usize,
    pub constructed: usize,
    pub outside_class: usize,
}

fn all_words(len: usize) -> Vec<u64> {
    (0..1u64 << len).collect()
}

impl Census {
    pub fn build(p: &DecompositionProblem, prune: bool) -> Result<Self> {
        let n = &p.n;
        let (r, corank) = (n.rank(), n.corank());
        let columns: HashMap<u64, Parent> = all_words(r)
            .into_par_iter()
            .map(|v| {
                let (m, e) = growth::extend_with_id(n, &Gf2Vector::from_word(r, v))?;
                Ok((v, Parent::of(p, &m, m.position(e)?)?))
            })
            .collect::<Result<_>>()?;
        let rows: HashMap<u64, Parent> = all_words(corank)
            .into_par_iter()
            .map(|w| {
                let (m, f) = growth::coextend_with_id(n, &Gf2Vector::from_word(corank, w))?;
                Ok((w, Parent::of(p, &m, m.position(f)?)?))
            })
            .collect::<Result<_>>()?;

        let mut outside_class = 0;
        let mut extensions = Vec::new();
        for c in growth::simple_extension_candidates(n)? {
            if columns[&c.v.as_ref().expect("column").to_word()].in_class {
                extensions.push(c);
            } else {
                outside_class += 1;
            }
        }
        let mut coextensions = Vec::new();
        for c in growth::cosimple_coextension_candidates(n)? {
            if rows[&c.w.as_ref().expect("row").to_word()].in_class {
                coextensions.push(c);
            } else {
                outside_class += 1;
            }
        }

        let enumeration = growth::two_element_growths_filtered(n, |v, w| {
            prune && columns[&v.to_word()].on_a && rows[&w.to_word()].on_a
        })?;
        let judged: Vec<(TwoElement, Option<bool>)> = enumeration
            .candidates
            .into_par_iter()
            .map(|candidate| {
                let column = columns[&candidate.v.as_ref().expect("column").to_word()];
                let row = rows[&candidate.w.as_ref().expect("row").to_word()];
                // a minor outside the class already rules the growth out
                let member = if column.in_class && row.in_class {
                    Some(in_class(&candidate.result, &p.class)?)
                } else {
                    None
                };
                Ok((
                    TwoElement {
                        candidate,
                        column,
                        row,
                    },
                    member,
                ))
            })
            .collect::<Result<_>>()?;
        let mut two = Vec::new();
        let mut two_outside = Vec::new();
        for (t, member) in judged {
            match member {
                Some(true) => two.push(t),
                Some(false) => {
                    outside_class += 1;
                    two_outside.push(t);
                }
                None => outside_class += 1,
            }
        }
        Ok(Self {
            extensions,
            coextensions,
            two,
            two_outside,
            generated: (1 << r) + (1 << corank) + enumeration.generated,
            pruned: enumeration.skipped,
            constructed: enumeration.constructed,
            outside_class,
        })
    }
}
