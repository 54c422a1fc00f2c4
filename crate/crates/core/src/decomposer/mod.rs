//! Certifying that a matroid `N` with an exact k-separation `(A, B)` is a
//! k-decomposer for a minor-closed class.
//!
//! The certificate is a finite check over the simple extensions, cosimple
//! coextensions and two-element growths `M \ e / f = N` that stay inside the
//! class. Three interchangeable strategies are registered by name:
//!
//! * `connectivity` evaluates the connectivity-function conditions, pruning
//!   growths whose two parents both keep `λ(A) = k − 1`;
//! * `circuit-oracle` evaluates the equivalent circuit/cocircuit conditions;
//! * `fast-path` handles a 4-element circuit-cocircuit side without any
//!   two-element enumeration.
//!
//! `Certified` is a proof. `NotCertified` only says the sufficient
//! conditions fail.

mod census;
mod fast_path;
mod lambda;
mod oracle;
mod report;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{GrowthStep, Lineage};
use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::growth::{self, GrowthCandidate, GrowthKind};
use crate::matroid::{format_set, BinaryMatroid, ElementId, ElementSet, Triple};
use crate::minor::MinorClass;

pub use fast_path::fast_path_check;
pub use lambda::{check_condition_i, check_condition_ii, check_condition_iii, check_hypotheses};
pub use oracle::{circuit_oracle_check, OracleVerdicts};
pub use report::{render_report, ReportFormat, TableGroup, TableRow, Tables};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Skip two-element growths whose parents both keep `λ(A) = k − 1`.
    pub use_pruning: bool,
    /// Also run the circuit oracle and compare verdicts per candidate.
    pub cross_validate: bool,
    pub emit_tables: bool,
    /// Require every applicable case of (iii)(b)-(d) to hold instead of one.
    #[serde(default)]
    pub strict_cases: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            use_pruning: true,
            cross_validate: false,
            emit_tables: false,
            strict_cases: false,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionProblem {
    pub n: BinaryMatroid,
    pub side_a: ElementSet,
    pub k: usize,
    pub class: MinorClass,
    pub options: CheckOptions,
}

impl DecompositionProblem {
    pub fn new(n: BinaryMatroid, side_a: ElementSet, k: usize, class: MinorClass) -> Result<Self> {
        if let Some(&e) = side_a.iter().find(|e| !n.contains(**e)) {
            return Err(Error::UnknownElement(e));
        }
        if k < 2 {
            return Err(Error::PreconditionUnmet(format!(
                "k must be at least 2, got {k}"
            )));
        }
        Ok(Self {
            n,
            side_a,
            k,
            class,
            options: CheckOptions::default(),
        })
    }

    pub fn with_options(mut self, options: CheckOptions) -> Self {
        self.options = options;
        self
    }

    pub fn side_b(&self) -> ElementSet {
        self.n
            .ground_set()
            .difference(&self.side_a)
            .copied()
            .collect()
    }

    pub(crate) fn run<T: Send>(&self, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
        match self.options.jobs {
            None => job(),
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::PreconditionUnmet(format!("cannot start {j} workers: {e}")))?
                .install(job),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    Hyp,
    I,
    II,
    /// Two-element growth judged by the circuit oracle, whose case split
    /// differs from the connectivity cases.
    III,
    IIIa,
    IIIb,
    IIIc,
    IIId,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Hyp => "hypothesis",
            Condition::I => "(i)",
            Condition::II => "(ii)",
            Condition::III => "(iii)",
            Condition::IIIa => "(iii)(a)",
            Condition::IIIb => "(iii)(b)",
            Condition::IIIc => "(iii)(c)",
            Condition::IIId => "(iii)(d)",
        };
        f.write_str(s)
    }
}

/// What a verdict is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subject {
    Base {
        name: String,
    },
    Extension {
        column: Gf2Vector,
        e: ElementId,
    },
    Coextension {
        row: Gf2Vector,
        f: ElementId,
    },
    /// `D`-block `[[D, column], [row, corner]]`.
    TwoElement {
        column: Gf2Vector,
        row: Gf2Vector,
        corner: bool,
        e: ElementId,
        f: ElementId,
    },
}

impl Subject {
    pub(crate) fn of(c: &GrowthCandidate) -> Self {
        match c.kind {
            GrowthKind::ExtensionColumn => Subject::Extension {
                column: c.v.clone().expect("extensions carry a column"),
                e: c.e.expect("extensions carry e"),
            },
            GrowthKind::CoextensionRow => Subject::Coextension {
                row: c.w.clone().expect("coextensions carry a row"),
                f: c.f.expect("coextensions carry f"),
            },
            GrowthKind::TwoElement => Subject::TwoElement {
                column: c.v.clone().expect("two-element growths carry a column"),
                row: c.w.clone().expect("two-element growths carry a row"),
                corner: c.corner.expect("two-element growths carry a corner"),
                e: c.e.expect("two-element growths carry e"),
                f: c.f.expect("two-element growths carry f"),
            },
        }
    }

    /// Rebuilds the subject matroid from `n`.
    pub fn build(&self, n: &BinaryMatroid) -> Result<BinaryMatroid> {
        match self {
            Subject::Base { .. } => Ok(n.clone()),
            Subject::Extension { column, .. } => growth::extend(n, column),
            Subject::Coextension { row, .. } => growth::coextend(n, row),
            Subject::TwoElement {
                column,
                row,
                corner,
                ..
            } => Ok(growth::two_element_growth(n, column, row, *corner)?.0),
        }
    }

    pub fn lineage(&self, n: &BinaryMatroid) -> Lineage {
        let base = Lineage::of(n);
        match self {
            Subject::Base { .. } => base,
            Subject::Extension { e, .. } => base.then(GrowthStep::Extend(*e)),
            Subject::Coextension { f, .. } => base.then(GrowthStep::Coextend(*f)),
            Subject::TwoElement { e, f, .. } => base
                .then(GrowthStep::Extend(*e))
                .then(GrowthStep::Coextend(*f)),
        }
    }

    /// Stable key used to match verdicts across strategies.
    pub fn key(&self) -> String {
        match self {
            Subject::Base { name } => format!("base {name}"),
            Subject::Extension { column, .. } => format!("extension [{column}]"),
            Subject::Coextension { row, .. } => format!("coextension [{row}]"),
            Subject::TwoElement {
                column,
                row,
                corner,
                ..
            } => format!("growth column [{column}] row [{row}{}]", u8::from(*corner)),
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// A connectivity value computed in some matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaValue {
    /// `M`, `M/f` or `M\e`.
    pub matroid: String,
    /// The side as a formula, e.g. `A ∪ e`.
    pub side: String,
    pub set: ElementSet,
    pub value: usize,
}

/// One conditional case of a two-element check and whether its consequent holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub case: Condition,
    pub satisfied: bool,
    /// How the consequent was met, when it was.
    pub via: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambdas: Vec<LambdaValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<ElementSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocircuit: Option<ElementSet>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triples: Vec<Triple>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Evidence {
    pub fn lambda(&self, matroid: &str, side: &str) -> Option<usize> {
        self.lambdas
            .iter()
            .find(|l| l.matroid == matroid && l.side == side)
            .map(|l| l.value)
    }

    pub(crate) fn note(text: impl Into<String>) -> Self {
        Self {
            note: Some(text.into()),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: Condition,
    pub subject: Subject,
    pub passed: bool,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    NotCertified { witnesses: Vec<ConditionVerdict> },
    HypothesisFailure { reasons: Vec<String> },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Certified => "Certified",
            Verdict::NotCertified { .. } => "NotCertified",
            Verdict::HypothesisFailure { .. } => "HypothesisFailure",
        }
    }

    pub(crate) fn from_parts(
        hypothesis: &[ConditionVerdict],
        checks: &[&[ConditionVerdict]],
    ) -> Self {
        let reasons: Vec<String> = hypothesis
            .iter()
            .filter(|v| !v.passed)
            .map(|v| {
                v.evidence
                    .note
                    .clone()
                    .unwrap_or_else(|| "hypothesis failed".into())
            })
            .collect();
        if !reasons.is_empty() {
            return Verdict::HypothesisFailure { reasons };
        }
        let mut witnesses: Vec<ConditionVerdict> = checks
            .iter()
            .flat_map(|list| list.iter())
            .filter(|v| !v.passed)
            .cloned()
            .collect();
        witnesses.sort_by_key(|v| (v.condition, v.subject.key()));
        if witnesses.is_empty() {
            Verdict::Certified
        } else {
            Verdict::NotCertified { witnesses }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub matroid: String,
    pub elements: usize,
    pub rank: usize,
    pub side_a: ElementSet,
    pub side_b: ElementSet,
    pub k: usize,
    pub class: String,
    pub excluded_minors: Vec<String>,
    pub options: CheckOptions,
}

impl ProblemSummary {
    fn of(p: &DecompositionProblem) -> Self {
        Self {
            matroid: p.n.name().to_string(),
            elements: p.n.len(),
            rank: p.n.rank(),
            side_a: p.side_a.clone(),
            side_b: p.side_b(),
            k: p.k,
            class: p.class.name.clone(),
            excluded_minors: p
                .class
                .excluded
                .iter()
                .map(|m| m.name().to_string())
                .collect(),
            options: p.options.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    /// Extension columns, coextension rows and two-element triples considered.
    pub generated: usize,
    /// Two-element triples skipped by pruning.
    pub pruned: usize,
    /// Two-element matroids actually built.
    pub constructed: usize,
    /// Simple and cosimple candidates found outside the class.
    pub outside_class: usize,
    /// Verdicts issued for conditions (i), (ii) and (iii).
    pub checked: usize,
    pub verdict: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub compared: usize,
    /// Two-element growths left out because a parent fails (i) or (ii).
    #[serde(default)]
    pub skipped: usize,
    /// Subject keys on which the two formulations disagree.
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub method: String,
    pub problem: ProblemSummary,
    pub hypothesis: Vec<ConditionVerdict>,
    pub condition_i: Vec<ConditionVerdict>,
    pub condition_ii: Vec<ConditionVerdict>,
    pub condition_iii: Vec<ConditionVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_validation: Option<CrossValidation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<Tables>,
    pub summary: Summary,
    /// Positional labels of `N`, for rendering.
    #[serde(default)]
    pub base_lineage: Option<Lineage>,
}

impl CheckReport {
    pub(crate) fn empty(method: &str, p: &DecompositionProblem) -> Self {
        Self {
            method: method.to_string(),
            problem: ProblemSummary::of(p),
            hypothesis: Vec::new(),
            condition_i: Vec::new(),
            condition_ii: Vec::new(),
            condition_iii: Vec::new(),
            cross_validation: None,
            tables: None,
            summary: Summary::default(),
            base_lineage: Some(Lineage::of(&p.n)),
        }
    }

    /// Pass/fail per subject key over conditions (i), (ii) and (iii).
    pub fn outcomes(&self) -> BTreeMap<String, bool> {
        self.condition_i
            .iter()
            .chain(&self.condition_ii)
            .chain(&self.condition_iii)
            .map(|v| (v.subject.key(), v.passed))
            .collect()
    }
}

/// A certification strategy.
pub trait Certifier: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn certify(&self, problem: &DecompositionProblem) -> Result<(Verdict, CheckReport)>;
}

struct ConnectivityCertifier;

impl Certifier for ConnectivityCertifier {
    fn name(&self) -> &'static str {
        "connectivity"
    }

    fn description(&self) -> &'static str {
        "connectivity-function conditions with parent-based pruning"
    }

    fn certify(&self, problem: &DecompositionProblem) -> Result<(Verdict, CheckReport)> {
        problem.run(|| lambda::certify_lambda(problem))
    }
}

struct CircuitOracleCertifier;

impl Certifier for CircuitOracleCertifier {
    fn name(&self) -> &'static str {
        "circuit-oracle"
    }

    fn description(&self) -> &'static str {
        "circuit and cocircuit conditions, no pruning"
    }

    fn certify(&self, problem: &DecompositionProblem) -> Result<(Verdict, CheckReport)> {
        problem.run(|| oracle::certify_oracle(problem))
    }
}

struct FastPathCertifier;

impl Certifier for FastPathCertifier {
    fn name(&self) -> &'static str {
        "fast-path"
    }

    fn description(&self) -> &'static str {
        "4-element circuit-cocircuit side kept by every single-element growth"
    }

    fn certify(&self, problem: &DecompositionProblem) -> Result<(Verdict, CheckReport)> {
        problem.run(|| fast_path::certify_fast_path(problem))
    }
}

/// Certifiers selectable by name.
pub struct Registry {
    certifiers: BTreeMap<&'static str, Box<dyn Certifier>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            certifiers: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(ConnectivityCertifier));
        r.register(Box::new(CircuitOracleCertifier));
        r.register(Box::new(FastPathCertifier));
        r
    }

    /// Adds `c`, replacing any certifier with the same name.
    pub fn register(&mut self, c: Box<dyn Certifier>) {
        self.certifiers.insert(c.name(), c);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Certifier> {
        self.certifiers
            .get(name)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.certifiers.keys().copied().collect()
    }
}

pub const DEFAULT_METHOD: &str = "connectivity";

/// Runs the default strategy.
pub fn certify(problem: &DecompositionProblem) -> Result<(Verdict, CheckReport)> {
    Registry::with_builtins()
        .get(DEFAULT_METHOD)?
        .certify(problem)
}

pub(crate) fn describe_set(set: &ElementSet) -> String {
    format_set(set)
}
