//! The connectivity-function formulation.

use rayon::prelude::*;

use super::census::{Census, TwoElement};
use super::{
    oracle, report, CaseOutcome, CheckReport, Condition, ConditionVerdict, CrossValidation,
    DecompositionProblem, Evidence, LambdaValue, Subject, Summary, Verdict,
};
use crate::connectivity::{self, lambda_mask};
use crate::error::Result;
use crate::growth::GrowthCandidate;
use crate::matroid::{BinaryMatroid, ElementId, ElementSet, Triple};
use crate::minor::in_class;

fn hypothesis(passed: bool, yes: String, no: String) -> ConditionVerdict {
    ConditionVerdict {
        condition: Condition::Hyp,
        subject: Subject::Base {
            name: String::new(),
        },
        passed,
        evidence: Evidence::note(if passed { yes } else { no }),
    }
}

/// The standing assumptions on `N` and `(A, B)`.
pub fn check_hypotheses(p: &DecompositionProblem) -> Result<Vec<ConditionVerdict>> {
    let n = &p.n;
    let mut out = vec![
        hypothesis(
            n.is_simple(),
            "N is simple".into(),
            "N is not simple".into(),
        ),
        hypothesis(
            n.is_cosimple(),
            "N is cosimple".into(),
            "N is not cosimple".into(),
        ),
        hypothesis(
            in_class(n, &p.class)?,
            format!("N is in the class {}", p.class.name),
            format!("N is not in the class {}", p.class.name),
        ),
    ];
    let separation = match connectivity::classify_separation(n, &p.side_a, p.k) {
        Ok(s) => hypothesis(
            s.is_exact(),
            format!("(A, B) is an {s} (λ = {})", s.lambda),
            format!(
                "(A, B) is not an exact {}-separation (λ = {})",
                p.k, s.lambda
            ),
        ),
        Err(e) => hypothesis(
            false,
            String::new(),
            format!("(A, B) is not a separation: {e}"),
        ),
    };
    if let Some(lambda) = separation_lambda(n, &p.side_a) {
        let mut v = separation;
        v.evidence.lambdas.push(LambdaValue {
            matroid: "N".into(),
            side: "A".into(),
            set: p.side_a.clone(),
            value: lambda,
        });
        out.push(v);
    } else {
        out.push(separation);
    }
    out.push(hypothesis(
        connectivity::side_is_union_of_circuits(n, &p.side_a)?,
        "A is a union of circuits".into(),
        "A is not a union of circuits".into(),
    ));
    out.push(hypothesis(
        connectivity::side_is_union_of_cocircuits(n, &p.side_a)?,
        "A is a union of cocircuits".into(),
        "A is not a union of cocircuits".into(),
    ));
    for v in &mut out {
        v.subject = Subject::Base {
            name: n.name().to_string(),
        };
    }
    Ok(out)
}

fn separation_lambda(n: &BinaryMatroid, side: &ElementSet) -> Option<usize> {
    n.mask_of(side).ok().map(|a| lambda_mask(n, a))
}

fn with(set: &ElementSet, extra: &[ElementId]) -> ElementSet {
    let mut s = set.clone();
    s.extend(extra.iter().copied());
    s
}

fn lambda_value(
    m: &BinaryMatroid,
    matroid: &str,
    side: &str,
    set: ElementSet,
) -> Result<LambdaValue> {
    let value = lambda_mask(m, m.mask_of(&set)?);
    Ok(LambdaValue {
        matroid: matroid.into(),
        side: side.into(),
        set,
        value,
    })
}

/// Verdict for one single-element growth; `x` is the new element.
fn judge_single(
    p: &DecompositionProblem,
    c: &GrowthCandidate,
    condition: Condition,
) -> Result<ConditionVerdict> {
    let m = &c.result;
    let x =
        c.e.or(c.f)
            .expect("single-element growths carry their element");
    let side = if condition == Condition::I {
        "A ∪ e"
    } else {
        "A ∪ f"
    };
    let on_a = lambda_value(m, "M", "A", p.side_a.clone())?;
    let on_ax = lambda_value(m, "M", side, with(&p.side_a, &[x]))?;
    let passed = on_a.value + 1 == p.k || on_ax.value + 1 == p.k;
    Ok(ConditionVerdict {
        condition,
        subject: Subject::of(c),
        passed,
        evidence: Evidence {
            lambdas: vec![on_a, on_ax],
            ..Evidence::default()
        },
    })
}

fn judge_singles(
    p: &DecompositionProblem,
    cs: &[GrowthCandidate],
    condition: Condition,
) -> Result<Vec<ConditionVerdict>> {
    cs.par_iter()
        .map(|c| judge_single(p, c, condition))
        .collect()
}

/// Triangles and triads `{e, f, g}` of `m` with `g ∈ A`.
pub(crate) fn escapes(
    m: &BinaryMatroid,
    side_a: &ElementSet,
    e: ElementId,
    f: ElementId,
) -> Result<Vec<Triple>> {
    Ok(m.triangles_triads_through_pair(e, f)?
        .into_iter()
        .filter(|t| !t.elements.is_disjoint(side_a))
        .collect())
}

pub(crate) fn judge_two(p: &DecompositionProblem, t: &TwoElement) -> Result<ConditionVerdict> {
    let c = &t.candidate;
    let m = &c.result;
    let (e, f) = (c.e.expect("e"), c.f.expect("f"));
    let a = &p.side_a;
    let parent = |matroid: &str, side: &str, set: ElementSet, value: usize| LambdaValue {
        matroid: matroid.into(),
        side: side.into(),
        set,
        value,
    };
    let mut evidence = Evidence {
        lambdas: vec![
            parent("M/f", "A", a.clone(), t.column.lambda_a),
            parent("M/f", "A ∪ e", with(a, &[e]), t.column.lambda_ax),
            parent("M\\e", "A", a.clone(), t.row.lambda_a),
            parent("M\\e", "A ∪ f", with(a, &[f]), t.row.lambda_ax),
        ],
        ..Evidence::default()
    };
    let (p1, p2, q1, q2) = (t.column.on_a, t.column.on_ax, t.row.on_a, t.row.on_ax);
    if p1 && q1 {
        return Ok(ConditionVerdict {
            condition: Condition::IIIa,
            subject: Subject::of(c),
            passed: true,
            evidence,
        });
    }
    let triples = escapes(m, a, e, f)?;
    let escape = triples
        .first()
        .map(|t| format!("{} {}", t.kind, super::describe_set(&t.elements)));
    let k1 = p.k - 1;
    let mut case = |case: Condition, lambda: Option<LambdaValue>| {
        let by_lambda = lambda.as_ref().is_some_and(|l| l.value == k1);
        let via = if by_lambda {
            lambda
                .as_ref()
                .map(|l| format!("λ_M({}) = {}", l.side, l.value))
        } else {
            escape.clone()
        };
        if let Some(l) = lambda {
            if !evidence.lambdas.contains(&l) {
                evidence.lambdas.push(l);
            }
        }
        evidence.cases.push(CaseOutcome {
            case,
            satisfied: via.is_some(),
            via,
        });
    };
    if p1 && q2 {
        case(
            Condition::IIIb,
            Some(lambda_value(m, "M", "A ∪ f", with(a, &[f]))?),
        );
    }
    if p2 && q1 {
        case(
            Condition::IIIc,
            Some(lambda_value(m, "M", "A ∪ e", with(a, &[e]))?),
        );
    }
    if p2 && q2 {
        case(Condition::IIId, None);
        evidence
            .lambdas
            .push(lambda_value(m, "M", "A ∪ e ∪ f", with(a, &[e, f]))?);
    }
    evidence.triples = triples;
    let passed = if p.options.strict_cases {
        !evidence.cases.is_empty() && evidence.cases.iter().all(|c| c.satisfied)
    } else {
        evidence.cases.iter().any(|c| c.satisfied)
    };
    let condition = if passed {
        evidence
            .cases
            .iter()
            .find(|c| c.satisfied)
            .map_or(Condition::IIIa, |c| c.case)
    } else {
        evidence
            .cases
            .iter()
            .rev()
            .find(|c| !c.satisfied)
            .map_or(Condition::IIIa, |c| c.case)
    };
    if evidence.cases.is_empty() {
        evidence.note = Some("no case applies: neither parent keeps a side exact".into());
    }
    Ok(ConditionVerdict {
        condition,
        subject: Subject::of(c),
        passed,
        evidence,
    })
}

fn require_hypotheses(p: &DecompositionProblem) -> Result<()> {
    if let Some(v) = check_hypotheses(p)?.into_iter().find(|v| !v.passed) {
        return Err(crate::Error::PreconditionUnmet(
            v.evidence
                .note
                .unwrap_or_else(|| "hypothesis failed".into()),
        ));
    }
    Ok(())
}

/// Condition (i) over the simple extensions of `N` inside the class.
pub fn check_condition_i(p: &DecompositionProblem) -> Result<Vec<ConditionVerdict>> {
    require_hypotheses(p)?;
    let extensions: Vec<GrowthCandidate> = crate::growth::simple_extension_candidates(&p.n)?
        .into_iter()
        .filter_map(|c| match in_class(&c.result, &p.class) {
            Ok(true) => Some(Ok(c)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    judge_singles(p, &extensions, Condition::I)
}

/// Condition (ii) over the cosimple coextensions of `N` inside the class.
pub fn check_condition_ii(p: &DecompositionProblem) -> Result<Vec<ConditionVerdict>> {
    require_hypotheses(p)?;
    let coextensions: Vec<GrowthCandidate> = crate::growth::cosimple_coextension_candidates(&p.n)?
        .into_iter()
        .filter_map(|c| match in_class(&c.result, &p.class) {
            Ok(true) => Some(Ok(c)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    judge_singles(p, &coextensions, Condition::II)
}

/// Condition (iii) over the two-element growths inside the class, honouring
/// `use_pruning`.
pub fn check_condition_iii(p: &DecompositionProblem) -> Result<Vec<ConditionVerdict>> {
    require_hypotheses(p)?;
    let census = Census::build(p, p.options.use_pruning)?;
    census.two.par_iter().map(|t| judge_two(p, t)).collect()
}

pub(crate) fn certify_lambda(p: &DecompositionProblem) -> Result<(Verdict, CheckReport)> {
    let mut report = CheckReport::empty("connectivity", p);
    report.hypothesis = check_hypotheses(p)?;
    if report.hypothesis.iter().any(|v| !v.passed) {
        let verdict = Verdict::from_parts(&report.hypothesis, &[]);
        report.summary.verdict = verdict.label().into();
        return Ok((verdict, report));
    }
    let census = Census::build(p, p.options.use_pruning)?;
    report.condition_i = judge_singles(p, &census.extensions, Condition::I)?;
    report.condition_ii = judge_singles(p, &census.coextensions, Condition::II)?;
    report.condition_iii = census
        .two
        .par_iter()
        .map(|t| judge_two(p, t))
        .collect::<Result<_>>()?;
    if p.options.cross_validate {
        report.cross_validation = Some(cross_validate(p, &report)?);
    }
    if p.options.emit_tables {
        report.tables = Some(report::build_tables(p, &census, &report.condition_iii)?);
    }
    let verdict = Verdict::from_parts(
        &report.hypothesis,
        &[
            &report.condition_i,
            &report.condition_ii,
            &report.condition_iii,
        ],
    );
    report.summary = Summary {
        generated: census.generated,
        pruned: census.pruned,
        constructed: census.constructed,
        outside_class: census.outside_class,
        checked: report.condition_i.len() + report.condition_ii.len() + report.condition_iii.len(),
        verdict: verdict.label().into(),
    };
    Ok((verdict, report))
}

// Subjects judged by both formulations must agree; subjects only the oracle
// saw were pruned, and pruning asserts that they pass. The two readings of
// (iii) only coincide once both parents pass (i) and (ii).
fn cross_validate(p: &DecompositionProblem, report: &CheckReport) -> Result<CrossValidation> {
    let oracle = oracle::circuit_oracle_check(p)?;
    let ours = report.outcomes();
    let failed = |key: String| ours.get(&key) == Some(&false);
    let mut out = CrossValidation::default();
    for v in oracle.all() {
        if let Subject::TwoElement { column, row, .. } = &v.subject {
            if failed(format!("extension [{column}]")) || failed(format!("coextension [{row}]")) {
                out.skipped += 1;
                continue;
            }
        }
        out.compared += 1;
        let key = v.subject.key();
        let agrees = match ours.get(&key) {
            Some(&passed) => passed == v.passed,
            None => v.passed,
        };
        if !agrees {
            out.mismatches.push(key);
        }
    }
    if let Some(missing) = ours.keys().find(|k| !oracle.keys().contains(*k)) {
        out.mismatches
            .push(format!("{missing} (not judged by the oracle)"));
    }
    out.mismatches.sort();
    Ok(out)
}
