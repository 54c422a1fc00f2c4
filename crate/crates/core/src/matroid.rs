//! Binary matroids held in standard form `[I_r | D]`.
//!
//! Every element carries a stable [`ElementId`] that survives deletion,
//! contraction, extension and coextension. The column order of the
//! representation is presentation only: the first `r` columns always form
//! the identity and name the current basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix, Gf2Vector};

/// Hard limit imposed by the one-word subset masks used internally.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of a matroid's ground set.
pub type ElementSet = BTreeSet<ElementId>;

/// Builds an [`ElementSet`] from raw ids.
pub fn ids<I: IntoIterator<Item = u32>>(raw: I) -> ElementSet {
    raw.into_iter().map(ElementId).collect()
}

pub fn format_set(set: &ElementSet) -> String {
    let inner: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

/// Rank of the vectors `words[i]` for every bit `i` set in `mask`.
pub(crate) fn rank_of_words(words: &[u64], mut mask: u64) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    while mask != 0 {
        let j = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        let mut v = words[j];
        while v != 0 {
            let h = 63 - v.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = v;
                rank += 1;
                break;
            }
            v ^= basis[h];
        }
    }
    rank
}

#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let j = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(j)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleKind {
    Triangle,
    Triad,
}

impl fmt::Display for TripleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleKind::Triangle => "triangle",
            TripleKind::Triad => "triad",
        })
    }
}

/// A 3-element circuit or cocircuit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub kind: TripleKind,
    pub elements: ElementSet,
}

/// Local structure: loops, coloops and parallel/series classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub loops: Vec<ElementId>,
    pub coloops: Vec<ElementId>,
    /// Partition of the non-loop elements by parallelism (singletons included).
    pub parallel_classes: Vec<Vec<ElementId>>,
    /// Partition of the non-coloop elements by seriality (singletons included).
    pub series_classes: Vec<Vec<ElementId>>,
    pub is_simple: bool,
    pub is_cosimple: bool,
}

/// A binary matroid in standard representation `[I_r | D]`.
#[derive(Clone)]
pub struct BinaryMatroid {
    name: String,
    rep: Gf2Matrix,
    elements: Vec<ElementId>,
    // column `j` of `rep` packed over rows
    cols: Vec<u64>,
    // column `j` of the dual representation packed over the `n - r` dual rows
    cocols: Vec<u64>,
}

impl BinaryMatroid {
    /// Builds a matroid from a matrix whose leading columns span its column
    /// space. The matrix is row-reduced; columns are not reordered.
    pub fn from_matrix(m: &Gf2Matrix, labels: Option<Vec<ElementId>>) -> Result<Self> {
        let elements = Self::check_labels(m.cols(), labels)?;
        let (red, pivots) = m.rref();
        let r = pivots.len();
        if pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::NotStandardizable(format!(
                "the first {r} columns are not independent (pivot columns {pivots:?})"
            )));
        }
        let rep = red.select_rows(&(0..r).collect::<Vec<_>>());
        Ok(Self::assemble("M".into(), rep, elements))
    }

    /// Like [`from_matrix`](Self::from_matrix) but moves the pivot columns of
    /// the rref to the front, so any matrix is accepted.
    pub fn from_matrix_any_basis(m: &Gf2Matrix, labels: Option<Vec<ElementId>>) -> Result<Self> {
        let elements = Self::check_labels(m.cols(), labels)?;
        let (_, pivots) = m.rref();
        let mut order = pivots.clone();
        order.extend((0..m.cols()).filter(|j| !pivots.contains(j)));
        let permuted = m.select_columns(&order);
        let elements = order.iter().map(|&j| elements[j]).collect();
        Self::from_matrix(&permuted, Some(elements))
    }

    /// The matroid of `[I_r | d]`.
    pub fn from_standard(d: &Gf2Matrix, labels: Option<Vec<ElementId>>) -> Result<Self> {
        let rep = Gf2Matrix::identity(d.rows()).hstack(d)?;
        let elements = Self::check_labels(rep.cols(), labels)?;
        Ok(Self::assemble("M".into(), rep, elements))
    }

    fn check_labels(n: usize, labels: Option<Vec<ElementId>>) -> Result<Vec<ElementId>> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                cap: MAX_ELEMENTS,
            });
        }
        let elements = labels.unwrap_or_else(|| (1..=n as u32).map(ElementId).collect());
        if elements.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: elements.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for &e in &elements {
            if !seen.insert(e) {
                return Err(Error::DuplicateLabel(e));
            }
        }
        Ok(elements)
    }

    fn assemble(name: String, rep: Gf2Matrix, elements: Vec<ElementId>) -> Self {
        let r = rep.rows();
        let n = rep.cols();
        debug_assert!((0..r).all(|i| (0..r).all(|j| rep.get(i, j) == (i == j))));
        let cols = (0..n)
            .map(|j| {
                (0..r)
                    .filter(|&i| rep.get(i, j))
                    .fold(0u64, |w, i| w | (1 << i))
            })
            .collect();
        let cocols = (0..n)
            .map(|p| {
                if p < r {
                    (r..n)
                        .filter(|&j| rep.get(p, j))
                        .fold(0u64, |w, j| w | (1 << (j - r)))
                } else {
                    1u64 << (p - r)
                }
            })
            .collect();
        Self {
            name,
            rep,
            elements,
            cols,
            cocols,
        }
    }

    fn rebuild(self) -> Self {
        Self::assemble(self.name, self.rep, self.elements)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rep.rows()
    }

    pub fn len(&self) -> usize {
        self.rep.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn corank(&self) -> usize {
        self.len() - self.rank()
    }

    /// Elements in column order; the first `rank()` form the current basis.
    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn basis(&self) -> &[ElementId] {
        &self.elements[..self.rank()]
    }

    pub fn ground_set(&self) -> ElementSet {
        self.elements.iter().copied().collect()
    }

    /// The full standard representation `[I_r | D]`.
    pub fn rep(&self) -> &Gf2Matrix {
        &self.rep
    }

    /// The `r × (n - r)` block `D`.
    pub fn d_block(&self) -> Gf2Matrix {
        self.rep
            .select_columns(&(self.rank()..self.len()).collect::<Vec<_>>())
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.elements.contains(&e)
    }

    pub fn position(&self, e: ElementId) -> Result<usize> {
        self.elements
            .iter()
            .position(|&x| x == e)
            .ok_or(Error::UnknownElement(e))
    }

    pub fn column(&self, e: ElementId) -> Result<Gf2Vector> {
        Ok(self.rep.column(self.position(e)?))
    }

    pub fn max_id(&self) -> Option<ElementId> {
        self.elements.iter().copied().max()
    }

    pub(crate) fn fresh_id(&self) -> ElementId {
        self.max_id().map_or(ElementId(1), |m| ElementId(m.0 + 1))
    }

    pub(crate) fn col_words(&self) -> &[u64] {
        &self.cols
    }

    pub(crate) fn cocol_words(&self) -> &[u64] {
        &self.cocols
    }

    pub(crate) fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn mask_of(&self, set: &ElementSet) -> Result<u64> {
        set.iter()
            .try_fold(0u64, |m, &e| Ok(m | (1u64 << self.position(e)?)))
    }

    pub fn set_of_mask(&self, mask: u64) -> ElementSet {
        bits(mask).map(|j| self.elements[j]).collect()
    }

    pub(crate) fn rank_mask(&self, mask: u64) -> usize {
        rank_of_words(&self.cols, mask)
    }

    pub(crate) fn corank_mask(&self, mask: u64) -> usize {
        rank_of_words(&self.cocols, mask)
    }

    /// `r(S)`.
    pub fn rank_of(&self, set: &ElementSet) -> Result<usize> {
        Ok(self.rank_mask(self.mask_of(set)?))
    }

    /// `r*(S) = |S| - r(M) + r(E - S)`, the rank in the dual.
    pub fn corank_of(&self, set: &ElementSet) -> Result<usize> {
        Ok(self.corank_mask(self.mask_of(set)?))
    }

    /// The dual matroid `[I_{n-r} | Dᵀ]` on the same element ids.
    pub fn dual(&self) -> BinaryMatroid {
        let r = self.rank();
        let dt = self.d_block().transpose();
        let rep = Gf2Matrix::identity(self.corank())
            .hstack(&dt)
            .expect("dual shapes agree");
        let mut elements = self.elements[r..].to_vec();
        elements.extend_from_slice(&self.elements[..r]);
        let name = match self.name.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.name),
        };
        Self::assemble(name, rep, elements)
    }

    /// Same ground set and same matroid (not merely isomorphic).
    pub fn same_matroid(&self, other: &BinaryMatroid) -> bool {
        if self.rank() != other.rank() || self.ground_set() != other.ground_set() {
            return false;
        }
        match other.reordered(&self.elements) {
            Ok(o) => o.rep == self.rep,
            Err(_) => false,
        }
    }

    /// Re-expresses this matroid with columns in `order`; the first `r`
    /// entries of `order` must be a basis.
    pub fn reordered(&self, order: &[ElementId]) -> Result<BinaryMatroid> {
        let positions = order
            .iter()
            .map(|&e| self.position(e))
            .collect::<Result<Vec<_>>>()?;
        if positions.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: positions.len(),
            });
        }
        let m = self.rep.select_columns(&positions);
        Ok(Self::from_matrix(&m, Some(order.to_vec()))?.with_name(self.name.clone()))
    }

    // Row-reduce so the column at `col` becomes the unit vector `e_row`, then
    // swap it into basis slot `row`.
    fn pivot(&mut self, row: usize, col: usize) {
        debug_assert!(self.rep.get(row, col));
        for i in 0..self.rank() {
            if i != row && self.rep.get(i, col) {
                self.rep.add_row(row, i);
            }
        }
        self.rep.swap_cols(row, col);
        self.elements.swap(row, col);
    }

    fn drop_position(&mut self, row: Option<usize>, col: usize) {
        let keep_cols: Vec<usize> = (0..self.len()).filter(|&j| j != col).collect();
        let mut rep = self.rep.select_columns(&keep_cols);
        if let Some(row) = row {
            let keep_rows: Vec<usize> = (0..self.rank()).filter(|&i| i != row).collect();
            rep = rep.select_rows(&keep_rows);
        }
        self.rep = rep;
        self.elements.remove(col);
    }

    fn delete_one(&mut self, e: ElementId) -> Result<()> {
        let p = self.position(e)?;
        let r = self.rank();
        if p >= r {
            self.drop_position(None, p);
        } else if let Some(q) = (r..self.len()).find(|&j| self.rep.get(p, j)) {
            self.pivot(p, q);
            self.drop_position(None, q);
        } else {
            // coloop
            self.drop_position(Some(p), p);
        }
        Ok(())
    }

    fn contract_one(&mut self, e: ElementId) -> Result<()> {
        let p = self.position(e)?;
        if p < self.rank() {
            self.drop_position(Some(p), p);
        } else if let Some(i) = (0..self.rank()).find(|&i| self.rep.get(i, p)) {
            self.pivot(i, p);
            self.drop_position(Some(i), i);
        } else {
            // loop
            self.drop_position(None, p);
        }
        Ok(())
    }

    /// `M \ S`.
    pub fn delete(&self, set: &ElementSet) -> Result<BinaryMatroid> {
        self.minor(set, &ElementSet::new())
    }

    /// `M / S`.
    pub fn contract(&self, set: &ElementSet) -> Result<BinaryMatroid> {
        self.minor(&ElementSet::new(), set)
    }

    /// `M \ del / con`.
    pub fn minor(&self, del: &ElementSet, con: &ElementSet) -> Result<BinaryMatroid> {
        if del.intersection(con).next().is_some() {
            return Err(Error::OverlappingSets);
        }
        for &e in del.iter().chain(con) {
            self.position(e)?;
        }
        let mut m = self.clone();
        for &e in con {
            m.contract_one(e)?;
        }
        for &e in del {
            m.delete_one(e)?;
        }
        Ok(m.rebuild())
    }

    /// Appends the column `v` (length `r`) under a fresh id.
    pub(crate) fn push_column(&self, v: &Gf2Vector) -> Result<(BinaryMatroid, ElementId)> {
        if v.len() != self.rank() {
            return Err(Error::LengthMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        if self.len() + 1 > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n: self.len() + 1,
                cap: MAX_ELEMENTS,
            });
        }
        let e = self.fresh_id();
        let col = Gf2Matrix::from_columns(std::slice::from_ref(v), self.rank())?;
        let rep = self.rep.hstack(&col)?;
        let mut elements = self.elements.clone();
        elements.push(e);
        Ok((Self::assemble(self.name.clone(), rep, elements), e))
    }

    /// Appends the row `w` (length `n - r`) and a new basis column at
    /// position `r`, under a fresh id.
    pub(crate) fn push_row(&self, w: &Gf2Vector) -> Result<(BinaryMatroid, ElementId)> {
        let (r, n) = (self.rank(), self.len());
        if w.len() != n - r {
            return Err(Error::LengthMismatch {
                expected: n - r,
                got: w.len(),
            });
        }
        if n + 1 > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n: n + 1,
                cap: MAX_ELEMENTS,
            });
        }
        let f = self.fresh_id();
        let mut rep = Gf2Matrix::zeros(r + 1, n + 1);
        for i in 0..r {
            for j in 0..n {
                if self.rep.get(i, j) {
                    rep.set(i, if j < r { j } else { j + 1 }, true);
                }
            }
        }
        rep.set(r, r, true);
        for j in w.support() {
            rep.set(r, r + 1 + j, true);
        }
        let mut elements = self.elements.clone();
        elements.insert(r, f);
        Ok((Self::assemble(self.name.clone(), rep, elements), f))
    }

    fn minimal_supports(
        &self,
        basis: Vec<Gf2Vector>,
        len: usize,
        words: &[u64],
    ) -> Result<Vec<u64>> {
        let mut found: Vec<u64> = gf2::span_enumerate(&basis, len, gf2::SPAN_CAP)?
            .skip(1)
            .map(|v| v.support().iter().fold(0u64, |m, &j| m | (1 << j)))
            .filter(|&s| rank_of_words(words, s) + 1 == s.count_ones() as usize)
            .collect();
        found.sort_by_key(|&s| (s.count_ones(), s));
        Ok(found)
    }

    pub(crate) fn circuit_masks(&self) -> Result<Vec<u64>> {
        self.minimal_supports(self.rep.null_space_basis(), self.len(), &self.cols)
    }

    pub(crate) fn cocircuit_masks(&self) -> Result<Vec<u64>> {
        self.minimal_supports(self.rep.row_vectors(), self.len(), &self.cocols)
    }

    fn canonical(&self, masks: Vec<u64>) -> Vec<ElementSet> {
        let mut sets: Vec<ElementSet> = masks.into_iter().map(|m| self.set_of_mask(m)).collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets
    }

    /// All circuits: minimal nonzero supports of the null space of the
    /// representation, sorted by size then lexicographically.
    pub fn circuits(&self) -> Result<Vec<ElementSet>> {
        Ok(self.canonical(self.circuit_masks()?))
    }

    /// All cocircuits: minimal nonzero supports of the row space.
    pub fn cocircuits(&self) -> Result<Vec<ElementSet>> {
        Ok(self.canonical(self.cocircuit_masks()?))
    }

    // Shrinks `within` (containing `e`) to a circuit through `e` under the
    // given column words, removing elements greedily in id order.
    fn minimal_through(&self, words: &[u64], e: usize, within: u64) -> Option<u64> {
        let rank = |m: u64| rank_of_words(words, m);
        let bit = 1u64 << e;
        if words[e] == 0 {
            return Some(bit);
        }
        let spans = |t: u64| rank(t & !bit) == rank(t | bit);
        let mut t = within | bit;
        if !spans(t) {
            return None;
        }
        let mut order: Vec<usize> = bits(t & !bit).collect();
        order.sort_by_key(|&j| self.elements[j]);
        for j in order {
            let smaller = t & !(1u64 << j);
            if spans(smaller) {
                t = smaller;
            }
        }
        Some(t)
    }

    pub(crate) fn circuit_through_mask(&self, e: usize, within: u64) -> Option<u64> {
        self.minimal_through(&self.cols, e, within)
    }

    pub(crate) fn cocircuit_through_mask(&self, f: usize, within: u64) -> Option<u64> {
        self.minimal_through(&self.cocols, f, within)
    }

    /// Some circuit `C` with `e ∈ C ⊆ within ∪ {e}`, if one exists.
    pub fn circuit_through_within(
        &self,
        e: ElementId,
        within: &ElementSet,
    ) -> Result<Option<ElementSet>> {
        let p = self.position(e)?;
        let m = self.mask_of(within)?;
        Ok(self.circuit_through_mask(p, m).map(|c| self.set_of_mask(c)))
    }

    /// Some cocircuit `D` with `f ∈ D ⊆ within ∪ {f}`, if one exists.
    pub fn cocircuit_through_within(
        &self,
        f: ElementId,
        within: &ElementSet,
    ) -> Result<Option<ElementSet>> {
        let p = self.position(f)?;
        let m = self.mask_of(within)?;
        Ok(self
            .cocircuit_through_mask(p, m)
            .map(|c| self.set_of_mask(c)))
    }

    fn classes(&self, words: &[u64]) -> Vec<Vec<ElementId>> {
        let mut groups: BTreeMap<u64, Vec<ElementId>> = BTreeMap::new();
        for (j, &w) in words.iter().enumerate() {
            if w != 0 {
                groups.entry(w).or_default().push(self.elements[j]);
            }
        }
        let mut classes: Vec<Vec<ElementId>> = groups
            .into_values()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect();
        classes.sort();
        classes
    }

    pub fn structure_report(&self) -> StructureReport {
        let mut loops: Vec<ElementId> = (0..self.len())
            .filter(|&j| self.cols[j] == 0)
            .map(|j| self.elements[j])
            .collect();
        let mut coloops: Vec<ElementId> = (0..self.len())
            .filter(|&j| self.cocols[j] == 0)
            .map(|j| self.elements[j])
            .collect();
        loops.sort();
        coloops.sort();
        let parallel_classes = self.classes(&self.cols);
        let series_classes = self.classes(&self.cocols);
        let is_simple = loops.is_empty() && parallel_classes.iter().all(|c| c.len() == 1);
        let is_cosimple = coloops.is_empty() && series_classes.iter().all(|c| c.len() == 1);
        StructureReport {
            loops,
            coloops,
            parallel_classes,
            series_classes,
            is_simple,
            is_cosimple,
        }
    }

    pub fn is_simple(&self) -> bool {
        Self::distinct_nonzero(&self.cols)
    }

    pub fn is_cosimple(&self) -> bool {
        Self::distinct_nonzero(&self.cocols)
    }

    fn distinct_nonzero(words: &[u64]) -> bool {
        let mut seen: Vec<u64> = words.to_vec();
        seen.sort_unstable();
        seen.first() != Some(&0) && seen.windows(2).all(|w| w[0] != w[1])
    }

    fn triples_in(words: &[u64], p: usize, q: usize) -> impl Iterator<Item = usize> + '_ {
        let target = words[p] ^ words[q];
        let ok = words[p] != 0 && words[q] != 0 && target != 0;
        (0..words.len()).filter(move |&g| ok && g != p && g != q && words[g] == target)
    }

    pub(crate) fn triangles_triads_mask(&self, p: usize, q: usize) -> Vec<(TripleKind, u64)> {
        let base = (1u64 << p) | (1u64 << q);
        let mut out: Vec<(TripleKind, u64)> = Self::triples_in(&self.cols, p, q)
            .map(|g| (TripleKind::Triangle, base | (1 << g)))
            .collect();
        out.extend(
            Self::triples_in(&self.cocols, p, q).map(|g| (TripleKind::Triad, base | (1 << g))),
        );
        out
    }

    /// Every triangle and triad containing both `e` and `f`.
    pub fn triangles_triads_through_pair(&self, e: ElementId, f: ElementId) -> Result<Vec<Triple>> {
        let p = self.position(e)?;
        let q = self.position(f)?;
        if p == q {
            return Err(Error::PreconditionUnmet(
                "the pair must be two distinct elements".into(),
            ));
        }
        let mut out: Vec<Triple> = self
            .triangles_triads_mask(p, q)
            .into_iter()
            .map(|(kind, m)| Triple {
                kind,
                elements: self.set_of_mask(m),
            })
            .collect();
        out.sort_by(|a, b| (a.kind as u8, &a.elements).cmp(&(b.kind as u8, &b.elements)));
        Ok(out)
    }
}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (n = {}, r = {}, elements {:?})",
            self.name,
            self.len(),
            self.rank(),
            self.elements
        )?;
        write!(f, "{}", self.rep)
    }
}
