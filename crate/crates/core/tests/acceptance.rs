mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use matdec::catalog::{self, ALPHA, BETA, DELTA, GAMMA};
use matdec::connectivity::{
    classify_separation, is_internally_4_connected, lambda, SeparationClass,
};
use matdec::decomposer::{
    certify, CheckOptions, CheckReport, Condition, DecompositionProblem, Subject, Verdict,
};
use matdec::growth::simple_extension_candidates;
use matdec::iso::{are_isomorphic, iso_classes};
use matdec::minor::{is_regular, MinorClass};
use matdec::reproduce::{reproduce, Scenario};
use matdec::{ids, Gf2Vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(
        t.elapsed() < limit,
        format!("took {:.1?}, limit {limit:?}", t.elapsed()),
    )
}

fn err(e: matdec::Error) -> String {
    e.to_string()
}

fn lambda_anchor() -> Outcome {
    let t = Instant::now();
    let r12 = catalog::r12();
    let b = ids([1, 2, 5, 6, 9, 10]);
    let value = lambda(&r12, &b).map_err(err)?;
    let o = Oracle::new(&r12);
    ensure(value == 2, format!("λ(B) = {value}"))?;
    ensure(o.lambda(o.mask(&b)) == 2, "oracle disagrees on λ(B)")?;
    let sep = classify_separation(&r12, &catalog::r12_side(), 3).map_err(err)?;
    ensure(
        sep.class == SeparationClass::ExactNonMinimal,
        format!("classified as {:?}", sep.class),
    )?;
    within(t, Duration::from_secs(1))?;
    Ok(format!(
        "λ(B) = 2, A is exact non-minimal, {:.0?}",
        t.elapsed()
    ))
}

fn extension_census() -> Outcome {
    let t = Instant::now();
    let r12 = catalog::r12();
    let candidates = simple_extension_candidates(&r12).map_err(err)?;
    let existing: BTreeSet<u64> = r12
        .elements()
        .iter()
        .map(|&e| r12.column(e).map(|v| v.to_word()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let expected = (1..1u64 << r12.rank())
        .filter(|&w| !existing.contains(&Gf2Vector::from_word(r12.rank(), w).to_word()))
        .count();
    ensure(
        candidates.len() == 51 && expected == 51,
        format!("{} candidates, {expected} by count", candidates.len()),
    )?;
    let mut regular = Vec::new();
    for c in &candidates {
        if is_regular(&c.result).map_err(err)? {
            regular.push(c);
        }
    }
    let columns: BTreeSet<String> = regular.iter().map(|c| c.key().0).collect();
    let named: BTreeSet<String> = [ALPHA, BETA, GAMMA, DELTA]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure(columns == named, format!("regular columns {columns:?}"))?;
    let results: Vec<_> = regular.iter().map(|c| c.result.clone()).collect();
    let classes = iso_classes(&results).map_err(err)?;
    ensure(
        classes.len() == 2,
        format!("{} isomorphism classes", classes.len()),
    )?;
    let by_column = |s: &str| {
        regular
            .iter()
            .position(|c| c.key().0 == s)
            .expect("named column is regular")
    };
    let first = by_column(ALPHA);
    for other in [BETA, GAMMA] {
        ensure(
            are_isomorphic(&results[first], &results[by_column(other)])
                .map_err(err)?
                .is_some(),
            format!("α and [{other}] are not isomorphic"),
        )?;
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!(
        "51 candidates, 4 regular, 2 classes {{α, β, γ}} {{δ}}, {:.1?}",
        t.elapsed()
    ))
}

fn table(prefix: fn(&str) -> bool, rows: usize, section: &str) -> Outcome {
    let t = Instant::now();
    let r = reproduce(Scenario::R12).map_err(err)?;
    let golden = include_str!("golden/r12_growth_tables.md");
    let body = |doc: &str| -> String {
        let start = doc.find(section).unwrap_or(doc.len());
        let rest = &doc[start..];
        let end = rest[section.len()..]
            .find("\n## ")
            .map_or(rest.len(), |i| i + section.len());
        rest[..end].trim_end().to_string()
    };
    ensure(!body(golden).is_empty(), "golden section missing")?;
    ensure(
        body(&r.document) == body(golden),
        "document differs from the golden file",
    )?;
    let checks: Vec<_> = r.checks.iter().filter(|c| prefix(&c.claim)).collect();
    ensure(
        checks.len() == rows,
        format!("{} rows, expected {rows}", checks.len()),
    )?;
    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(format!(
            "{}: published {}, computed {}",
            c.claim, c.published, c.computed
        ));
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{rows} of {rows} rows match, {:.1?}", t.elapsed()))
}

fn r12_problem(prune: bool, cross_validate: bool) -> Result<DecompositionProblem, String> {
    Ok(DecompositionProblem::new(
        catalog::r12(),
        catalog::r12_side(),
        3,
        MinorClass::regular(),
    )
    .map_err(err)?
    .with_options(CheckOptions {
        use_pruning: prune,
        cross_validate,
        ..CheckOptions::default()
    }))
}

fn main_run() -> Result<(String, Verdict, CheckReport), String> {
    let t = Instant::now();
    let (verdict, report) = certify(&r12_problem(true, true)?).map_err(err)?;
    ensure(
        verdict.is_certified(),
        format!("verdict {}", verdict.label()),
    )?;
    let cv = report
        .cross_validation
        .as_ref()
        .ok_or("no cross-validation section")?;
    ensure(
        cv.mismatches.is_empty(),
        format!("{} mismatches: {:?}", cv.mismatches.len(), cv.mismatches),
    )?;
    ensure(cv.compared > 0, "nothing compared")?;
    within(t, Duration::from_secs(600))?;
    let line = format!(
        "Certified, {} verdicts, {} cross-checked, 0 mismatches, {:.1?}",
        report.summary.checked,
        cv.compared,
        t.elapsed()
    );
    Ok((line, verdict, report))
}

fn counterexample() -> Outcome {
    let t = Instant::now();
    let x = catalog::x10();
    let a = catalog::x10_side();
    let p = DecompositionProblem::new(x.clone(), a.clone(), 3, MinorClass::all_binary())
        .map_err(err)?;
    let (verdict, _) = certify(&p).map_err(err)?;
    let Verdict::NotCertified { witnesses } = verdict else {
        return Err(format!("verdict {}", verdict.label()));
    };
    let z = catalog::z12();
    let mut found = None;
    let exact = format!(
        "growth column [{}] row [{}]",
        catalog::Y_COLUMN,
        catalog::Z_ROW
    );
    let mut candidates: Vec<_> = witnesses
        .iter()
        .filter(|w| w.condition == Condition::IIId)
        .collect();
    candidates.sort_by_key(|w| w.subject.key() != exact);
    for w in candidates {
        let m = w.subject.build(&x).map_err(err)?;
        if are_isomorphic(&m, &z).map_err(err)?.is_some() {
            found = Some((w, m));
            break;
        }
    }
    let (w, m) = found.ok_or("no (iii)(d) witness isomorphic to Z")?;
    let Subject::TwoElement { e, f, .. } = w.subject else {
        return Err("witness is not a two-element growth".into());
    };
    let ev = &w.evidence;
    ensure(
        ev.lambda("M/f", "A ∪ e") == Some(2) && ev.lambda("M\\e", "A ∪ f") == Some(2),
        "recorded evidence lacks p2 and q2",
    )?;
    ensure(
        ev.lambda("M", "A ∪ e ∪ f") == Some(2),
        "recorded λ(A ∪ e ∪ f) ≠ 2",
    )?;
    ensure(
        ev.triples.is_empty(),
        "recorded a triangle or triad through e, f",
    )?;

    let o = Oracle::new(&m);
    let (ebit, fbit) = (1u64 << o.position(e), 1u64 << o.position(f));
    let am = o.mask(&a);
    ensure(
        o.lambda_contract(o.position(f), am | ebit) == 2
            && o.lambda_delete(o.position(e), am | fbit) == 2,
        "oracle: p2 and q2 do not both hold",
    )?;
    ensure(o.lambda(am | ebit | fbit) == 2, "oracle: λ(A ∪ e ∪ f) ≠ 2")?;
    let pair = ebit | fbit;
    let escape = o
        .circuits()
        .into_iter()
        .chain(o.cocircuits())
        .any(|c| c.count_ones() == 3 && c & pair == pair && c & am != 0);
    ensure(
        !escape,
        "oracle: found a triangle or triad {e, f, g} with g ∈ A",
    )?;

    let zp = catalog::z12_prime();
    ensure(lambda(&zp, &a).map_err(err)? == 2, "λ_Z'(A) ≠ 2")?;
    let q13 = catalog::builtin("Q13_sec5").map_err(err)?;
    ensure(
        is_internally_4_connected(&q13).map_err(err)?,
        "Q13 is not internally 4-connected",
    )?;
    within(t, Duration::from_secs(120))?;
    Ok(format!(
        "NotCertified with a Z witness ({}), λ_Z'(A) = 2, Q13 internally 4-connected, {:.1?}",
        w.subject.key(),
        t.elapsed()
    ))
}

fn property_suites() -> Outcome {
    let t = Instant::now();
    let instances = 100u64;
    let (mut extensions, mut coextensions, mut growths) = (0, 0, 0);
    for seed in 0..instances {
        let inst = random_instance(seed, 10, false);
        extensions +=
            extension_circuit_criterion(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        coextensions +=
            coextension_cocircuit_criterion(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let inst = random_instance(seed, 9, false);
        growths += two_element_composition(&inst)
            .map_err(|e| format!("seed {seed}: {e}"))?
            .0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sets = 0;
    for i in 0..instances {
        let small = random_matroid(&mut rng, 4, 8);
        circuits_match_brute_force(&small).map_err(|e| format!("matroid {i}: {e}"))?;
        let m = random_matroid(&mut rng, 4, 10);
        sets += lambda_symmetry_and_duality(&m).map_err(|e| format!("matroid {i}: {e}"))?;
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!(
        "{instances} instances: {extensions} extensions, {coextensions} coextensions, \
         {growths} two-element growths, {sets} λ subsets, 0 violations, {:.1?}",
        t.elapsed()
    ))
}

fn pruning(pruned: &CheckReport) -> Outcome {
    let t = Instant::now();
    let (verdict, full) = certify(&r12_problem(false, false)?).map_err(err)?;
    ensure(
        verdict.label() == pruned.summary.verdict,
        format!("verdict {} vs {}", verdict.label(), pruned.summary.verdict),
    )?;
    let (small, large) = (pruned.outcomes(), full.outcomes());
    let failing = |o: &std::collections::BTreeMap<String, bool>| -> BTreeSet<String> {
        o.iter()
            .filter(|(_, p)| !**p)
            .map(|(k, _)| k.clone())
            .collect()
    };
    ensure(failing(&small) == failing(&large), "failing sets differ")?;
    for (key, passed) in &small {
        ensure(large.get(key) == Some(passed), format!("{key} differs"))?;
    }
    let extra: Vec<_> = full
        .condition_iii
        .iter()
        .filter(|v| !small.contains_key(&v.subject.key()))
        .collect();
    ensure(
        extra
            .iter()
            .all(|v| v.passed && v.condition == Condition::IIIa),
        "an unpruned growth does not pass by (iii)(a)",
    )?;
    ensure(
        full.summary.constructed > pruned.summary.constructed,
        format!(
            "constructed {} unpruned vs {} pruned",
            full.summary.constructed, pruned.summary.constructed
        ),
    )?;
    Ok(format!(
        "same verdict and outcomes; {} extra growths all pass by (iii)(a); constructed {} vs {}, {:.1?}",
        extra.len(),
        full.summary.constructed,
        pruned.summary.constructed,
        t.elapsed()
    ))
}

fn report(n: usize, name: &str, outcome: &Outcome) -> bool {
    match outcome {
        Ok(detail) => println!("criterion {n} PASS {name}: {detail}"),
        Err(reason) => println!("criterion {n} FAIL {name}: {reason}"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let is_coextension = |c: &str| c.starts_with("Q13 + row");
    let is_extension = |c: &str| c.contains(" with row ");
    let mut ok = true;
    ok &= report(1, "λ anchor", &lambda_anchor());
    ok &= report(2, "extension census", &extension_census());
    ok &= report(
        3,
        "coextension table",
        &table(is_coextension, 14, "## Cosimple coextensions"),
    );
    ok &= report(
        4,
        "extension table",
        &table(is_extension, 8, "## Simple extensions"),
    );
    let main = main_run();
    ok &= report(
        5,
        "R12 certification",
        &main.as_ref().map(|m| m.0.clone()).map_err(Clone::clone),
    );
    ok &= report(6, "counterexample", &counterexample());
    ok &= report(7, "property suites", &property_suites());
    let prune = match &main {
        Ok((_, _, rep)) => pruning(rep),
        Err(e) => Err(format!("criterion 5 did not run: {e}")),
    };
    ok &= report(8, "pruning soundness", &prune);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
