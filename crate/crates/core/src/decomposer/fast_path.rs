//! Fast path for a 4-element side that is both a circuit and a cocircuit:
//! it suffices that the side stays a circuit and a cocircuit in every
//! 3-connected single-element extension and coextension in the class.

use rayon::prelude::*;

use super::lambda::check_hypotheses;
use super::{
    CheckReport, Condition, ConditionVerdict, DecompositionProblem, Evidence, Subject, Summary,
    Verdict,
};
use crate::catalog::wheel;
use crate::connectivity::{self, SeparationClass};
use crate::error::{Error, Result};
use crate::growth::{self, GrowthCandidate};
use crate::iso::are_isomorphic;
use crate::matroid::{bits, BinaryMatroid};
use crate::minor::in_class;

fn minimal_dependent(rank: impl Fn(u64) -> usize, mask: u64) -> bool {
    let size = mask.count_ones() as usize;
    rank(mask) + 1 == size && bits(mask).all(|j| rank(mask & !(1 << j)) + 1 == size)
}

fn is_circuit(m: &BinaryMatroid, mask: u64) -> bool {
    minimal_dependent(|s| m.rank_mask(s), mask)
}

fn is_cocircuit(m: &BinaryMatroid, mask: u64) -> bool {
    minimal_dependent(|s| m.corank_mask(s), mask)
}

/// Whether `n` is isomorphic to the wheel of its size.
pub fn is_wheel(n: &BinaryMatroid) -> Result<bool> {
    if n.len() % 2 == 1 || n.len() < 6 || n.rank() * 2 != n.len() {
        return Ok(false);
    }
    Ok(are_isomorphic(n, &wheel(n.len() / 2)?)?.is_some())
}

fn unmet(what: &str) -> Error {
    Error::PreconditionUnmet(what.to_string())
}

fn preconditions(p: &DecompositionProblem) -> Result<()> {
    let n = &p.n;
    if p.k != 3 {
        return Err(unmet("the fast path needs k = 3"));
    }
    if p.side_a.len() != 4 {
        return Err(unmet("the fast path needs |A| = 4"));
    }
    let a = n.mask_of(&p.side_a)?;
    if !is_circuit(n, a) || !is_cocircuit(n, a) {
        return Err(unmet("A is not both a circuit and a cocircuit of N"));
    }
    if !connectivity::is_n_connected(n, 3)? {
        return Err(unmet("N is not 3-connected"));
    }
    if is_wheel(n)? {
        return Err(unmet("N is a wheel"));
    }
    if connectivity::classify_separation(n, &p.side_a, 3)?.class != SeparationClass::ExactNonMinimal
    {
        return Err(unmet("(A, B) is not a non-minimal exact 3-separation"));
    }
    if !in_class(n, &p.class)? {
        return Err(unmet("N is not in the class"));
    }
    Ok(())
}

fn judge(
    p: &DecompositionProblem,
    c: &GrowthCandidate,
    condition: Condition,
) -> Result<ConditionVerdict> {
    let m = &c.result;
    let a = m.mask_of(&p.side_a)?;
    let (circuit, cocircuit) = (is_circuit(m, a), is_cocircuit(m, a));
    let note = match (circuit, cocircuit) {
        (true, true) => "A is a circuit and a cocircuit",
        (false, true) => "A is not a circuit",
        (true, false) => "A is not a cocircuit",
        (false, false) => "A is neither a circuit nor a cocircuit",
    };
    Ok(ConditionVerdict {
        condition,
        subject: Subject::of(c),
        passed: circuit && cocircuit,
        evidence: Evidence {
            circuit: circuit.then(|| p.side_a.clone()),
            cocircuit: cocircuit.then(|| p.side_a.clone()),
            ..Evidence::note(note)
        },
    })
}

fn run(
    p: &DecompositionProblem,
) -> Result<(Vec<ConditionVerdict>, Vec<ConditionVerdict>, usize, usize)> {
    preconditions(p)?;
    let mut outside = 0;
    let mut keep = |cs: Vec<GrowthCandidate>| -> Result<Vec<GrowthCandidate>> {
        let mut kept = Vec::new();
        for c in cs {
            if in_class(&c.result, &p.class)? {
                kept.push(c);
            } else {
                outside += 1;
            }
        }
        Ok(kept)
    };
    let extensions = keep(growth::simple_extension_candidates(&p.n)?)?;
    let coextensions = keep(growth::cosimple_coextension_candidates(&p.n)?)?;
    let i = extensions
        .par_iter()
        .map(|c| judge(p, c, Condition::I))
        .collect::<Result<_>>()?;
    let ii = coextensions
        .par_iter()
        .map(|c| judge(p, c, Condition::II))
        .collect::<Result<_>>()?;
    let generated = (1 << p.n.rank()) + (1 << p.n.corank());
    Ok((i, ii, outside, generated))
}

/// Certified iff `A` stays a circuit and a cocircuit in every simple
/// extension and cosimple coextension inside the class. Errors with
/// PreconditionUnmet naming the first unmet requirement.
pub fn fast_path_check(p: &DecompositionProblem) -> Result<Verdict> {
    let (i, ii, _, _) = run(p)?;
    Ok(Verdict::from_parts(&[], &[&i, &ii]))
}

pub(crate) fn certify_fast_path(p: &DecompositionProblem) -> Result<(Verdict, CheckReport)> {
    let mut report = CheckReport::empty("fast-path", p);
    report.hypothesis = check_hypotheses(p)?;
    let (i, ii, outside, generated) = run(p)?;
    report.condition_i = i;
    report.condition_ii = ii;
    let verdict = Verdict::from_parts(&[], &[&report.condition_i, &report.condition_ii]);
    report.summary = Summary {
        generated,
        pruned: 0,
        constructed: 0,
        outside_class: outside,
        checked: report.condition_i.len() + report.condition_ii.len(),
        verdict: verdict.label().into(),
    };
    Ok((verdict, report))
}
