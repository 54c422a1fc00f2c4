//! Single-element extensions and coextensions in standard representation,
//! and the two-element growths `M` with `M \ e / f = N`.
//!
//! For `N = [I_r | D]` an extension appends a column `v` to `D` and a
//! coextension appends a row `w` to `D` together with a new basis column at
//! position `r`. A two-element growth has `D`-block
//!
//! ```text
//! [ D  v ]
//! [ w  b ]
//! ```
//!
//! so `M / f = N + v` and `M \ e = N + w`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;
use crate::matroid::{BinaryMatroid, ElementId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthKind {
    ExtensionColumn,
    CoextensionRow,
    TwoElement,
}

#[derive(Clone, Debug)]
pub struct GrowthCandidate {
    pub kind: GrowthKind,
    /// Column added to `D` (length `r`).
    pub v: Option<Gf2Vector>,
    /// Row added to `D` (length `n - r`).
    pub w: Option<Gf2Vector>,
    /// The corner bit shared by the new row and column.
    pub corner: Option<bool>,
    pub result: BinaryMatroid,
    pub e: Option<ElementId>,
    pub f: Option<ElementId>,
    /// Two-element growths only: `M / f` is a simple extension of `N`.
    pub contraction_parent_simple: bool,
    /// Two-element growths only: `M \ e` is a cosimple coextension of `N`.
    pub deletion_parent_cosimple: bool,
}

impl GrowthCandidate {
    /// `(v, w, b)` rendered as bit strings, for sorting and reporting.
    pub fn key(&self) -> (String, String, String) {
        let show = |x: &Option<Gf2Vector>| x.as_ref().map(ToString::to_string).unwrap_or_default();
        let b = match self.corner {
            Some(true) => "1",
            Some(false) => "0",
            None => "",
        };
        (show(&self.v), show(&self.w), b.to_string())
    }
}

/// `N` with the column `v` appended.
pub fn extend(n: &BinaryMatroid, v: &Gf2Vector) -> Result<BinaryMatroid> {
    Ok(n.push_column(v)?.0)
}

/// `N` with the column `v` appended, and the new element's id.
pub fn extend_with_id(n: &BinaryMatroid, v: &Gf2Vector) -> Result<(BinaryMatroid, ElementId)> {
    n.push_column(v)
}

/// `N` with the row `w` appended (and a new basis column at position `r`).
pub fn coextend(n: &BinaryMatroid, w: &Gf2Vector) -> Result<BinaryMatroid> {
    Ok(n.push_row(w)?.0)
}

pub fn coextend_with_id(n: &BinaryMatroid, w: &Gf2Vector) -> Result<(BinaryMatroid, ElementId)> {
    n.push_row(w)
}

fn all_vectors(len: usize) -> Result<impl Iterator<Item = Gf2Vector>> {
    if len >= 32 {
        return Err(Error::DimensionCapExceeded {
            dim: len,
            cap: crate::gf2::SPAN_CAP,
        });
    }
    Ok((0u64..(1u64 << len)).map(move |w| Gf2Vector::from_word(len, w)))
}

/// Whether adding `v` as a new column keeps the matroid simple: `v` is
/// nonzero and equal to no existing column (this covers weight one).
pub fn column_keeps_simple(n: &BinaryMatroid, v: &Gf2Vector) -> bool {
    let word = v.to_word();
    word != 0 && !n.col_words().contains(&word)
}

/// Whether adding `w` as a new row keeps the matroid cosimple.
pub fn row_keeps_cosimple(n: &BinaryMatroid, w: &Gf2Vector) -> bool {
    let word = w.to_word();
    word != 0 && !n.cocol_words().contains(&word)
}

/// Every simple single-element extension of a simple `N`, one per column.
pub fn simple_extension_candidates(n: &BinaryMatroid) -> Result<Vec<GrowthCandidate>> {
    if !n.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut out = Vec::new();
    for v in all_vectors(n.rank())? {
        if v.weight() < 2 || !column_keeps_simple(n, &v) {
            continue;
        }
        let (m, e) = n.push_column(&v)?;
        if !m.is_simple() {
            continue;
        }
        out.push(GrowthCandidate {
            kind: GrowthKind::ExtensionColumn,
            v: Some(v),
            w: None,
            corner: None,
            result: m,
            e: Some(e),
            f: None,
            contraction_parent_simple: false,
            deletion_parent_cosimple: false,
        });
    }
    Ok(out)
}

/// Every cosimple single-element coextension of a cosimple `N`, one per row.
pub fn cosimple_coextension_candidates(n: &BinaryMatroid) -> Result<Vec<GrowthCandidate>> {
    if !n.is_cosimple() {
        return Err(Error::NotCosimple);
    }
    let mut out = Vec::new();
    for w in all_vectors(n.corank())? {
        if w.weight() < 2 || !row_keeps_cosimple(n, &w) {
            continue;
        }
        let (m, f) = n.push_row(&w)?;
        if !m.is_cosimple() {
            continue;
        }
        out.push(GrowthCandidate {
            kind: GrowthKind::CoextensionRow,
            v: None,
            w: Some(w),
            corner: None,
            result: m,
            e: None,
            f: Some(f),
            contraction_parent_simple: false,
            deletion_parent_cosimple: false,
        });
    }
    Ok(out)
}

/// The matroid with `D`-block `[[D, v], [w, b]]`, with the ids of `e` and `f`.
pub fn two_element_growth(
    n: &BinaryMatroid,
    v: &Gf2Vector,
    w: &Gf2Vector,
    b: bool,
) -> Result<(BinaryMatroid, ElementId, ElementId)> {
    let (coext, f) = n.push_row(w)?;
    let mut column = v.clone();
    column.push(b);
    let (m, e) = coext.push_column(&column)?;
    Ok((m, e, f))
}

/// Outcome of a two-element enumeration.
#[derive(Clone, Debug, Default)]
pub struct TwoElementEnumeration {
    /// In `(v, w, b)` order.
    pub candidates: Vec<GrowthCandidate>,
    /// Number of `(v, w, b)` triples considered.
    pub generated: usize,
    /// Triples skipped by the caller's filter before construction.
    pub skipped: usize,
    /// Triples for which a matroid was built (at least one parent legitimate).
    pub constructed: usize,
}

/// All simple and cosimple `M` with `M \ e / f = N` such that `M / f` is
/// simple or `M \ e` is cosimple.
pub fn two_element_growths(n: &BinaryMatroid) -> Result<Vec<GrowthCandidate>> {
    Ok(two_element_growths_filtered(n, |_, _| false)?.candidates)
}

/// Like [`two_element_growths`], but `(v, w)` pairs for which `skip` returns
/// true are dropped (both corner bits) without building the matroid.
pub fn two_element_growths_filtered<F>(n: &BinaryMatroid, skip: F) -> Result<TwoElementEnumeration>
where
    F: Fn(&Gf2Vector, &Gf2Vector) -> bool + Sync,
{
    if !n.is_simple() {
        return Err(Error::NotSimple);
    }
    if !n.is_cosimple() {
        return Err(Error::NotCosimple);
    }
    let vs: Vec<Gf2Vector> = all_vectors(n.rank())?.collect();
    let ws: Vec<Gf2Vector> = all_vectors(n.corank())?.collect();
    let per_v: Vec<Result<(Vec<GrowthCandidate>, usize, usize)>> = vs
        .par_iter()
        .map(|v| {
            let type_i = column_keeps_simple(n, v);
            let mut found = Vec::new();
            let (mut skipped, mut constructed) = (0, 0);
            for w in &ws {
                if skip(v, w) {
                    skipped += 2;
                    continue;
                }
                let type_ii = row_keeps_cosimple(n, w);
                for b in [false, true] {
                    if !(type_i || type_ii) {
                        continue;
                    }
                    constructed += 1;
                    let (m, e, f) = two_element_growth(n, v, w, b)?;
                    if !(m.is_simple() && m.is_cosimple()) {
                        continue;
                    }
                    found.push(GrowthCandidate {
                        kind: GrowthKind::TwoElement,
                        v: Some(v.clone()),
                        w: Some(w.clone()),
                        corner: Some(b),
                        result: m,
                        e: Some(e),
                        f: Some(f),
                        contraction_parent_simple: type_i,
                        deletion_parent_cosimple: type_ii,
                    });
                }
            }
            Ok((found, skipped, constructed))
        })
        .collect();
    let mut out = TwoElementEnumeration {
        generated: vs.len() * ws.len() * 2,
        ..Default::default()
    };
    for chunk in per_v {
        let (found, skipped, constructed) = chunk?;
        out.candidates.extend(found);
        out.skipped += skipped;
        out.constructed += constructed;
    }
    Ok(out)
}
