//! Built-in matroids and the positional labelling used when printing grown
//! matroids.
//!
//! Positional labels number the columns of `[I_r | D]` from 1. Extending
//! appends a label, and coextending inserts a label at position `r + 1` and
//! shifts every later label up by one, so a set printed after a growth step
//! may differ from its element ids.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::connectivity::{self, lambda, SeparationClass};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::growth::{coextend, extend};
use crate::matroid::{ids, BinaryMatroid, ElementId, ElementSet};
use crate::minor::is_regular;

fn standard(name: &str, rows: &[&str]) -> BinaryMatroid {
    let d = Gf2Matrix::parse_rows(rows).expect("built-in matrix parses");
    BinaryMatroid::from_standard(&d, None)
        .expect("built-in matrix is standard")
        .with_name(name)
}

fn vector(bits: &str) -> Gf2Vector {
    bits.parse().expect("built-in vector parses")
}

/// The Fano matroid.
pub fn fano() -> BinaryMatroid {
    standard("F7", &["1101", "1011", "0111"])
}

/// `R12` in its symmetric standard representation.
pub fn r12() -> BinaryMatroid {
    standard(
        "R12",
        &["111000", "110100", "100010", "010001", "001011", "000111"],
    )
}

/// The exact 3-separating side of `R12` used throughout.
pub fn r12_side() -> ElementSet {
    ids([3, 4, 7, 8, 11, 12])
}

pub const ALPHA: &str = "000011";
pub const BETA: &str = "110000";
pub const GAMMA: &str = "110011";
pub const DELTA: &str = "001100";

pub fn x10() -> BinaryMatroid {
    standard("X", &["01111", "10111", "11010", "11110", "01001"])
}

pub fn x10_side() -> ElementSet {
    ids([1, 2, 5, 6, 7, 10])
}

pub const Y_COLUMN: &str = "11000";
pub const Z_ROW: &str = "110011";
pub const ZPRIME_ROW: &str = "111001";

pub fn y11() -> BinaryMatroid {
    extend(&x10(), &vector(Y_COLUMN))
        .expect("lengths agree")
        .with_name("Y")
}

pub fn z12() -> BinaryMatroid {
    coextend(&y11(), &vector(Z_ROW))
        .expect("lengths agree")
        .with_name("Z")
}

pub fn z12_prime() -> BinaryMatroid {
    coextend(&y11(), &vector(ZPRIME_ROW))
        .expect("lengths agree")
        .with_name("Z'")
}

/// The rank-7, 13-element matroid obtained from `Y` by two coextensions.
pub fn q13_internal() -> BinaryMatroid {
    standard(
        "Q13",
        &[
            "011111", "101111", "110100", "111100", "010010", "110011", "111001",
        ],
    )
}

/// The graphic wheel `M(W_m)` with the spokes `1..=m` as basis and rim
/// element `m + i` joining rim vertices `i` and `i + 1`.
pub fn wheel(m: usize) -> Result<BinaryMatroid> {
    if m < 3 {
        return Err(Error::PreconditionUnmet(format!(
            "a wheel needs at least 3 spokes, got {m}"
        )));
    }
    let mut d = Gf2Matrix::zeros(m, m);
    for i in 0..m {
        d.set(i, i, true);
        d.set((i + 1) % m, i, true);
    }
    Ok(BinaryMatroid::from_standard(&d, None)?.with_name(format!("W{m}")))
}

/// A named check run against a catalog entry.
pub struct Validation {
    pub name: &'static str,
    pub check: fn(&BinaryMatroid) -> Result<bool>,
}

pub struct CatalogEntry {
    pub key: &'static str,
    pub matroid: BinaryMatroid,
    pub provenance: &'static str,
    /// A distinguished exact separating side, when the entry has one.
    pub side: Option<ElementSet>,
    pub validations: Vec<Validation>,
}

impl CatalogEntry {
    /// Runs every validation and returns the names of those that fail.
    pub fn failing_validations(&self) -> Result<Vec<&'static str>> {
        let mut failed = Vec::new();
        for v in &self.validations {
            if !(v.check)(&self.matroid)? {
                failed.push(v.name);
            }
        }
        Ok(failed)
    }
}

pub const KEYS: &[&str] = &[
    "F7",
    "F7dual",
    "R12",
    "P13",
    "Q13_r12",
    "P13dual",
    "Q13dual_r12",
    "X",
    "Y",
    "Z",
    "Zprime",
    "Q13_sec5",
    "W3",
    "W4",
];

pub fn keys() -> &'static [&'static str] {
    KEYS
}

macro_rules! check {
    ($name:expr, $body:expr) => {
        Validation {
            name: $name,
            check: $body,
        }
    };
}

fn exact_nonminimal(m: &BinaryMatroid, side: &ElementSet) -> Result<bool> {
    Ok(connectivity::classify_separation(m, side, 3)?.class == SeparationClass::ExactNonMinimal)
}

fn shape(m: &BinaryMatroid, n: usize, r: usize) -> bool {
    m.len() == n && m.rank() == r
}

fn with_e(side: &ElementSet, e: u32) -> ElementSet {
    let mut s = side.clone();
    s.insert(ElementId(e));
    s
}

pub fn entry(key: &str) -> Result<CatalogEntry> {
    let (matroid, provenance, side, validations) = match key {
        "F7" => (
            fano(),
            "Fano matroid, [I3 | D] with D rows 1101 1011 0111",
            None,
            vec![
                check!("7 elements, rank 3", |m| Ok(shape(m, 7, 3))),
                check!("3-connected", |m| connectivity::is_n_connected(m, 3)),
                check!("not regular", |m| Ok(!is_regular(m)?)),
            ],
        ),
        "F7dual" => (
            fano().dual().with_name("F7*"),
            "dual of the Fano matroid",
            None,
            vec![
                check!("7 elements, rank 4", |m| Ok(shape(m, 7, 4))),
                check!("3-connected", |m| connectivity::is_n_connected(m, 3)),
                check!("not regular", |m| Ok(!is_regular(m)?)),
            ],
        ),
        "R12" => (
            r12(),
            "R12 in its symmetric standard representation",
            Some(r12_side()),
            vec![
                check!("12 elements, rank 6", |m| Ok(shape(m, 12, 6))),
                check!("3-connected", |m| connectivity::is_n_connected(m, 3)),
                check!("regular", is_regular),
                check!("self-dual", |m| Ok(crate::iso::are_isomorphic(
                    m,
                    &m.dual()
                )?
                .is_some())),
                check!("symmetric D block", |m| Ok(
                    m.d_block() == m.d_block().transpose()
                )),
                check!("lambda({1,2,5,6,9,10}) = 2", |m| Ok(lambda(
                    m,
                    &ids([1, 2, 5, 6, 9, 10])
                )? == 2)),
                check!("A is a non-minimal exact 3-separation", |m| {
                    exact_nonminimal(m, &r12_side())
                }),
                check!("both sides are unions of circuits and of cocircuits", |m| {
                    let b: ElementSet = m.ground_set().difference(&r12_side()).copied().collect();
                    Ok(connectivity::side_is_union_of_circuits(m, &r12_side())?
                        && connectivity::side_is_union_of_cocircuits(m, &r12_side())?
                        && connectivity::side_is_union_of_circuits(m, &b)?
                        && connectivity::side_is_union_of_cocircuits(m, &b)?)
                }),
            ],
        ),
        "P13" => (
            extend(&r12(), &vector(ALPHA))?.with_name("P13"),
            "R12 extended by the column 000011",
            Some(r12_side()),
            vec![
                check!("regular", is_regular),
                check!("lambda(A) = 2", |m| Ok(lambda(m, &r12_side())? == 2)),
            ],
        ),
        "Q13_r12" => (
            extend(&r12(), &vector(DELTA))?.with_name("Q13"),
            "R12 extended by the column 001100",
            Some(r12_side()),
            vec![
                check!("regular", is_regular),
                check!("lambda(A) != 2", |m| Ok(lambda(m, &r12_side())? != 2)),
                check!("lambda(A + e) = 2", |m| Ok(lambda(
                    m,
                    &with_e(&r12_side(), 13)
                )? == 2)),
            ],
        ),
        "P13dual" => (
            coextend(&r12(), &vector(ALPHA))?.with_name("P13*"),
            "R12 coextended by the row 000011",
            Some(r12_side()),
            vec![
                check!("regular", is_regular),
                check!("lambda(A) = 2", |m| Ok(lambda(m, &r12_side())? == 2)),
                check!("isomorphic to the dual of P13", |m| {
                    let p13 = extend(&r12(), &vector(ALPHA))?;
                    Ok(crate::iso::are_isomorphic(m, &p13.dual())?.is_some())
                }),
            ],
        ),
        "Q13dual_r12" => (
            coextend(&r12(), &vector(DELTA))?.with_name("Q13*"),
            "R12 coextended by the row 001100",
            Some(r12_side()),
            vec![
                check!("regular", is_regular),
                check!("lambda(A) = 2", |m| Ok(lambda(m, &r12_side())? == 2)),
            ],
        ),
        "X" => (
            x10(),
            "10-element rank-5 matroid with D rows 01111 10111 11010 11110 01001",
            Some(x10_side()),
            vec![
                check!("10 elements, rank 5", |m| Ok(shape(m, 10, 5))),
                check!("A is a non-minimal exact 3-separation", |m| {
                    exact_nonminimal(m, &x10_side())
                }),
            ],
        ),
        "Y" => (
            y11(),
            "X extended by the column 11000",
            Some(x10_side()),
            vec![check!(
                "lambda(A) = 2",
                |m| Ok(lambda(m, &x10_side())? == 2)
            )],
        ),
        "Z" => (
            z12(),
            "Y coextended by the row 110011",
            Some(x10_side()),
            vec![
                check!("lambda(A) != 2", |m| Ok(lambda(m, &x10_side())? != 2)),
                check!("lambda(A + f) != 2", |m| Ok(lambda(
                    m,
                    &with_e(&x10_side(), 12)
                )? != 2)),
                check!("lambda(A + e + f) = 2", |m| {
                    Ok(lambda(m, &with_e(&with_e(&x10_side(), 11), 12))? == 2)
                }),
                check!("no triad {e, f, g} with g in A", |m| {
                    Ok(!m
                        .triangles_triads_through_pair(ElementId(11), ElementId(12))?
                        .iter()
                        .any(|t| {
                            t.kind == crate::TripleKind::Triad
                                && !t.elements.is_disjoint(&x10_side())
                        }))
                }),
            ],
        ),
        "Zprime" => (
            z12_prime(),
            "Y coextended by the row 111001",
            Some(x10_side()),
            vec![check!(
                "lambda(A) = 2",
                |m| Ok(lambda(m, &x10_side())? == 2)
            )],
        ),
        "Q13_sec5" => (
            q13_internal(),
            "Y coextended by the rows 110011 and 111001",
            None,
            vec![
                check!("13 elements, rank 7", |m| Ok(shape(m, 13, 7))),
                check!(
                    "internally 4-connected",
                    connectivity::is_internally_4_connected
                ),
                check!("isomorphic to Y coextended by both rows", |m| {
                    let twice = coextend(&z12(), &vector(ZPRIME_ROW))?;
                    Ok(crate::iso::are_isomorphic(m, &twice)?.is_some())
                }),
            ],
        ),
        "W3" | "W4" => {
            let m = if key == "W3" { 3 } else { 4 };
            (
                wheel(m)?,
                if m == 3 {
                    "wheel with 3 spokes, M(K4)"
                } else {
                    "wheel with 4 spokes"
                },
                None,
                vec![
                    check!("3-connected", |m| connectivity::is_n_connected(m, 3)),
                    check!("regular", is_regular),
                ],
            )
        }
        other => return Err(Error::UnknownKey(other.to_string())),
    };
    let key = KEYS
        .iter()
        .copied()
        .find(|k| *k == key)
        .expect("key listed");
    Ok(CatalogEntry {
        key,
        matroid,
        provenance,
        side,
        validations,
    })
}

/// The catalog matroid stored under `key`.
pub fn builtin(key: &str) -> Result<BinaryMatroid> {
    Ok(entry(key)?.matroid)
}

/// One recorded growth step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthStep {
    Extend(ElementId),
    Coextend(ElementId),
}

/// A base matroid's column order and rank, followed by growth steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lineage {
    pub base: Vec<ElementId>,
    pub base_rank: usize,
    pub steps: Vec<GrowthStep>,
}

impl Lineage {
    pub fn of(base: &BinaryMatroid) -> Self {
        Self {
            base: base.elements().to_vec(),
            base_rank: base.rank(),
            steps: Vec::new(),
        }
    }

    pub fn then(mut self, step: GrowthStep) -> Self {
        self.steps.push(step);
        self
    }

    /// Element order after replaying the steps.
    pub fn order(&self) -> Vec<ElementId> {
        let mut order = self.base.clone();
        let mut rank = self.base_rank;
        for step in &self.steps {
            match *step {
                GrowthStep::Extend(e) => order.push(e),
                GrowthStep::Coextend(f) => {
                    order.insert(rank.min(order.len()), f);
                    rank += 1;
                }
            }
        }
        order
    }

    /// Positional label of every element named by the lineage.
    pub fn labels(&self) -> BTreeMap<ElementId, u32> {
        self.order()
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, i as u32 + 1))
            .collect()
    }
}

/// Positional labels of `m`'s elements after replaying `lineage`.
pub fn positional_labels(m: &BinaryMatroid, lineage: &Lineage) -> Result<BTreeMap<ElementId, u32>> {
    let order = lineage.order();
    if let Some(&missing) = m.elements().iter().find(|e| !order.contains(e)) {
        return Err(Error::LineageIncomplete(missing));
    }
    if let Some(&extra) = order.iter().find(|e| !m.contains(**e)) {
        return Err(Error::LineageIncomplete(extra));
    }
    Ok(lineage.labels())
}

/// `set` rendered under `labels`, e.g. `{3, 4, 8}`.
pub fn format_labelled(set: &ElementSet, labels: &BTreeMap<ElementId, u32>) -> String {
    let mut shown: Vec<u32> = set
        .iter()
        .map(|e| labels.get(e).copied().unwrap_or(e.0))
        .collect();
    shown.sort_unstable();
    let inner: Vec<String> = shown.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}
