//! Report rendering and the per-parent tables of two-element growths.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::census::{Census, TwoElement};
use super::{CheckReport, Condition, ConditionVerdict, DecompositionProblem, Evidence, Subject};
use crate::catalog::{format_labelled, positional_labels, GrowthStep};
use crate::error::Result;
use crate::matroid::{format_set, ElementId, ElementSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Markdown,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" => Ok(Self::Markdown),
            "json" => Ok(Self::Json),
            other => Err(crate::Error::PreconditionUnmet(format!(
                "unknown report format {other:?}"
            ))),
        }
    }
}

/// One two-element growth as a row under its parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// The added row (under an extension) or column (under a coextension),
    /// corner bit last.
    pub added: String,
    pub excluded_minor: bool,
    /// `None` for growths outside the class.
    pub passed: Option<bool>,
    /// Passing evidence under positional labels.
    pub evidence: String,
    /// The same evidence under element ids.
    pub evidence_ids: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableGroup {
    pub parent: String,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    /// Cosimple coextensions of each simple extension in the class.
    pub coextensions_of_extensions: Vec<TableGroup>,
    /// Simple extensions of each cosimple coextension in the class.
    pub extensions_of_coextensions: Vec<TableGroup>,
}

type Labels = BTreeMap<ElementId, u32>;

fn show(set: &ElementSet, labels: Option<&Labels>) -> String {
    match labels {
        Some(l) => format_labelled(set, l),
        None => format_set(set),
    }
}

// The consequent that carried a passing two-element verdict.
fn passing_evidence(v: &ConditionVerdict, k: usize, labels: Option<&Labels>) -> String {
    let ev = &v.evidence;
    if v.condition == Condition::IIIa && ev.cases.is_empty() {
        return format!("λ_M/f(A) = λ_M\\e(A) = {}", k - 1);
    }
    if !v.passed {
        return format!("fails {}", v.condition);
    }
    let mut parts = Vec::new();
    for case in &ev.cases {
        let side = match case.case {
            Condition::IIIb => Some("A ∪ f"),
            Condition::IIIc => Some("A ∪ e"),
            _ => None,
        };
        let by_lambda = side.and_then(|s| {
            ev.lambdas
                .iter()
                .find(|l| l.matroid == "M" && l.side == s && l.value + 1 == k)
        });
        let text = match by_lambda {
            Some(l) => format!("λ{} = {}", show(&l.set, labels), l.value),
            None => match ev.triples.first() {
                Some(t) => format!("{} {}", t.kind, show(&t.elements, labels)),
                None => case.via.clone().unwrap_or_default(),
            },
        };
        if !parts.contains(&text) {
            parts.push(text);
        }
    }
    parts.join("; ")
}

fn row_of(
    p: &DecompositionProblem,
    t: &TwoElement,
    verdict: Option<&ConditionVerdict>,
    added: String,
) -> Result<TableRow> {
    let subject = Subject::of(&t.candidate);
    let labels = positional_labels(&t.candidate.result, &subject.lineage(&p.n))?;
    Ok(TableRow {
        added,
        excluded_minor: verdict.is_none(),
        passed: verdict.map(|v| v.passed),
        evidence: verdict
            .map(|v| passing_evidence(v, p.k, Some(&labels)))
            .unwrap_or_default(),
        evidence_ids: verdict
            .map(|v| passing_evidence(v, p.k, None))
            .unwrap_or_default(),
    })
}

pub(crate) fn build_tables(
    p: &DecompositionProblem,
    census: &Census,
    verdicts: &[ConditionVerdict],
) -> Result<Tables> {
    let by_key: HashMap<String, &ConditionVerdict> =
        verdicts.iter().map(|v| (v.subject.key(), v)).collect();
    let mut by_column: BTreeMap<String, Vec<TableRow>> = BTreeMap::new();
    let mut by_row: BTreeMap<String, Vec<TableRow>> = BTreeMap::new();
    for t in census.two.iter().chain(&census.two_outside) {
        let c = &t.candidate;
        let verdict = by_key.get(&Subject::of(c).key()).copied();
        let (v, w, b) = c.key();
        if c.contraction_parent_simple && t.column.in_class {
            by_column
                .entry(v.clone())
                .or_default()
                .push(row_of(p, t, verdict, format!("{w}{b}"))?);
        }
        if c.deletion_parent_cosimple && t.row.in_class {
            by_row
                .entry(w.clone())
                .or_default()
                .push(row_of(p, t, verdict, format!("{v}{b}"))?);
        }
    }
    let name = p.n.name();
    let groups = |map: BTreeMap<String, Vec<TableRow>>, what: &str| -> Vec<TableGroup> {
        map.into_iter()
            .map(|(key, mut rows)| {
                rows.sort_by(|a, b| a.added.cmp(&b.added));
                TableGroup {
                    parent: format!("{name} + {what} [{key}]"),
                    rows,
                }
            })
            .collect()
    };
    Ok(Tables {
        coextensions_of_extensions: groups(by_column, "column"),
        extensions_of_coextensions: groups(by_row, "row"),
    })
}

fn evidence_text(ev: &Evidence, labels: Option<&Labels>) -> String {
    let mut parts: Vec<String> = ev
        .lambdas
        .iter()
        .map(|l| format!("λ_{}({}) = {}", l.matroid, l.side, l.value))
        .collect();
    if let Some(c) = &ev.circuit {
        parts.push(format!("circuit {}", show(c, labels)));
    }
    if let Some(d) = &ev.cocircuit {
        parts.push(format!("cocircuit {}", show(d, labels)));
    }
    for t in &ev.triples {
        parts.push(format!("{} {}", t.kind, show(&t.elements, labels)));
    }
    for c in &ev.cases {
        let status = if c.satisfied { "holds" } else { "fails" };
        parts.push(format!("{} {status}", c.case));
    }
    if let Some(n) = &ev.note {
        parts.push(n.clone());
    }
    parts.join("; ")
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn subject_cells(s: &Subject) -> (String, String) {
    match s {
        Subject::Base { name } => (name.clone(), String::new()),
        Subject::Extension { column, e } => (format!("[{column}]"), e.to_string()),
        Subject::Coextension { row, f } => (format!("[{row}]"), f.to_string()),
        Subject::TwoElement {
            column,
            row,
            corner,
            ..
        } => (
            format!("[{column}] / [{row}] / {}", u8::from(*corner)),
            String::new(),
        ),
    }
}

fn singles(out: &mut String, title: &str, element: &str, verdicts: &[ConditionVerdict]) {
    let _ = writeln!(out, "## {title}\n");
    if verdicts.is_empty() {
        let _ = writeln!(out, "None.\n");
        return;
    }
    let _ = writeln!(out, "| added | {element} | evidence | result |");
    let _ = writeln!(out, "|---|---|---|---|");
    for v in verdicts {
        let (added, x) = subject_cells(&v.subject);
        let _ = writeln!(
            out,
            "| {added} | {x} | {} | {} |",
            evidence_text(&v.evidence, None),
            pass(v.passed)
        );
    }
    let _ = writeln!(out);
}

fn table_groups(out: &mut String, title: &str, header: &str, groups: &[TableGroup]) {
    let _ = writeln!(out, "## {title}\n");
    if groups.is_empty() {
        let _ = writeln!(out, "None.\n");
    }
    for g in groups {
        let _ = writeln!(out, "### {}\n", g.parent);
        let _ = writeln!(
            out,
            "| {header} | excluded minor | evidence (positional labels) | evidence (element ids) |"
        );
        let _ = writeln!(out, "|---|---|---|---|");
        for r in &g.rows {
            let minor = if r.excluded_minor { "YES" } else { "No" };
            let _ = writeln!(
                out,
                "| [{}] | {minor} | {} | {} |",
                r.added, r.evidence, r.evidence_ids
            );
        }
        let _ = writeln!(out);
    }
}

fn markdown(report: &CheckReport) -> String {
    let p = &report.problem;
    let mut out = String::new();
    let _ = writeln!(out, "# Decomposition check: {}\n", p.matroid);
    let _ = writeln!(out, "- method: {}", report.method);
    let _ = writeln!(out, "- N: {} elements, rank {}", p.elements, p.rank);
    let _ = writeln!(out, "- A = {}", format_set(&p.side_a));
    let _ = writeln!(out, "- B = {}", format_set(&p.side_b));
    let _ = writeln!(out, "- k = {}", p.k);
    let excluded = if p.excluded_minors.is_empty() {
        "none".to_string()
    } else {
        p.excluded_minors.join(", ")
    };
    let _ = writeln!(out, "- class: {} (excluded minors: {excluded})", p.class);
    let on = |b: bool| if b { "on" } else { "off" };
    let _ = writeln!(
        out,
        "- pruning: {}; cross-validation: {}\n",
        on(p.options.use_pruning),
        on(p.options.cross_validate)
    );

    let _ = writeln!(out, "## Hypotheses\n");
    if report.hypothesis.is_empty() {
        let _ = writeln!(out, "None.\n");
    } else {
        let _ = writeln!(out, "| check | result |");
        let _ = writeln!(out, "|---|---|");
        for v in &report.hypothesis {
            let _ = writeln!(
                out,
                "| {} | {} |",
                evidence_text(&v.evidence, None),
                pass(v.passed)
            );
        }
        let _ = writeln!(out);
    }
    singles(
        &mut out,
        "Condition (i): simple extensions in the class",
        "e",
        &report.condition_i,
    );
    singles(
        &mut out,
        "Condition (ii): cosimple coextensions in the class",
        "f",
        &report.condition_ii,
    );

    let _ = writeln!(
        out,
        "## Condition (iii): two-element growths in the class\n"
    );
    let failed: Vec<&ConditionVerdict> =
        report.condition_iii.iter().filter(|v| !v.passed).collect();
    let _ = writeln!(
        out,
        "- judged: {}; passed: {}; failed: {}",
        report.condition_iii.len(),
        report.condition_iii.len() - failed.len(),
        failed.len()
    );
    let mut by_case: BTreeMap<Condition, (usize, usize)> = BTreeMap::new();
    for v in &report.condition_iii {
        let slot = by_case.entry(v.condition).or_default();
        if v.passed {
            slot.0 += 1;
        } else {
            slot.1 += 1;
        }
    }
    for (c, (ok, bad)) in &by_case {
        let _ = writeln!(out, "- {c}: {ok} passed, {bad} failed");
    }
    let _ = writeln!(out);
    if !failed.is_empty() {
        let _ = writeln!(out, "### Failures\n");
        let _ = writeln!(out, "| column / row / corner | condition | evidence (element ids) | evidence (positional labels) |");
        let _ = writeln!(out, "|---|---|---|---|");
        for v in failed {
            let (added, _) = subject_cells(&v.subject);
            let labels = report.base_lineage.as_ref().map(|base| {
                let mut l = base.clone();
                if let Subject::TwoElement { e, f, .. } = &v.subject {
                    l = l
                        .then(GrowthStep::Extend(*e))
                        .then(GrowthStep::Coextend(*f));
                }
                l.labels()
            });
            let _ = writeln!(
                out,
                "| {added} | {} | {} | {} |",
                v.condition,
                evidence_text(&v.evidence, None),
                evidence_text(&v.evidence, labels.as_ref())
            );
        }
        let _ = writeln!(out);
    }
    if let Some(cv) = &report.cross_validation {
        let _ = writeln!(out, "## Cross-validation\n");
        let _ = writeln!(
            out,
            "- compared: {}; skipped: {}; mismatches: {}",
            cv.compared,
            cv.skipped,
            cv.mismatches.len()
        );
        for m in &cv.mismatches {
            let _ = writeln!(out, "  - {m}");
        }
        let _ = writeln!(out);
    }
    if let Some(t) = &report.tables {
        table_groups(
            &mut out,
            "Coextensions of extensions",
            "Coext. row",
            &t.coextensions_of_extensions,
        );
        table_groups(
            &mut out,
            "Extensions of coextensions",
            "Ext. column",
            &t.extensions_of_coextensions,
        );
    }
    let s = &report.summary;
    let _ = writeln!(out, "## Summary\n");
    let _ = writeln!(
        out,
        "| generated | pruned | constructed | outside class | checked | verdict |"
    );
    let _ = writeln!(out, "|---|---|---|---|---|---|");
    let verdict = if s.verdict.is_empty() {
        "none"
    } else {
        &s.verdict
    };
    let _ = writeln!(
        out,
        "| {} | {} | {} | {} | {} | {verdict} |",
        s.generated, s.pruned, s.constructed, s.outside_class, s.checked
    );
    out
}

pub fn render_report(report: &CheckReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Markdown => markdown(report),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}
