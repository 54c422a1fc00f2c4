//! Excluded-minor testing for binary matroids.
//!
//! Every minor can be written `M / C \ D` with `C` independent and
//! `|C| = r(M) − r(T)`, so the search walks such contraction sets and asks
//! whether the target is a restriction of `M / C`. Since binary
//! representations are unique up to a change of basis, the restriction test
//! picks images for the target's basis vectors and reads off where every
//! other target column must land.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::limits;
use crate::matroid::{bits, BinaryMatroid, ElementSet};

/// Witness that `M \ delete / contract` is isomorphic to the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub contract: ElementSet,
    pub delete: ElementSet,
}

/// A minor-closed class given by its excluded minors. An empty list is the
/// class of all binary matroids.
#[derive(Clone, Debug)]
pub struct MinorClass {
    pub name: String,
    pub excluded: Vec<BinaryMatroid>,
}

impl MinorClass {
    pub fn new(name: impl Into<String>, excluded: Vec<BinaryMatroid>) -> Self {
        Self {
            name: name.into(),
            excluded,
        }
    }

    pub fn all_binary() -> Self {
        Self::new("all-binary", Vec::new())
    }

    /// No F7 and no F7* minor.
    pub fn regular() -> Self {
        Self::new("regular", vec![catalog::fano(), catalog::fano().dual()])
    }

    /// The built-in classes, by name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "regular" => Ok(Self::regular()),
            "all-binary" | "binary" => Ok(Self::all_binary()),
            other => Err(Error::UnknownClass(other.to_string())),
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["regular", "all-binary"]
    }

    /// The first excluded minor found in `m`, with its witness.
    pub fn first_excluded_minor(&self, m: &BinaryMatroid) -> Result<Option<(usize, MinorWitness)>> {
        for (i, x) in self.excluded.iter().enumerate() {
            if let Some(w) = has_minor(m, x)? {
                return Ok(Some((i, w)));
            }
        }
        Ok(None)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A minor of `m` isomorphic to `target`, if one exists.
pub fn has_minor(m: &BinaryMatroid, target: &BinaryMatroid) -> Result<Option<MinorWitness>> {
    limits::check(m.len())?;
    if target.len() > limits::TARGET_CAP {
        return Err(Error::GroundSetTooLarge {
            n: target.len(),
            cap: limits::TARGET_CAP,
        });
    }
    if target.len() > m.len() || target.rank() > m.rank() || target.corank() > m.corank() {
        return Ok(None);
    }
    let direct = binomial(m.len(), m.rank() - target.rank());
    let via_dual = binomial(m.len(), m.corank() - target.corank());
    if via_dual < direct {
        let md = m.dual();
        return Ok(search(&md, &target.dual()).map(|(con, keep)| {
            // contracting in the dual is deleting in `m`
            let delete = md.set_of_mask(con);
            let contract = md.set_of_mask(md.full_mask() & !con & !keep);
            MinorWitness { contract, delete }
        }));
    }
    Ok(search(m, target).map(|(con, keep)| MinorWitness {
        contract: m.set_of_mask(con),
        delete: m.set_of_mask(m.full_mask() & !con & !keep),
    }))
}

/// Membership in a minor-closed class.
pub fn in_class(m: &BinaryMatroid, class: &MinorClass) -> Result<bool> {
    Ok(class.first_excluded_minor(m)?.is_none())
}

pub fn is_regular(m: &BinaryMatroid) -> Result<bool> {
    in_class(m, &MinorClass::regular())
}

// Returns (contraction mask, kept mask) in `m`'s positions.
fn search(m: &BinaryMatroid, t: &BinaryMatroid) -> Option<(u64, u64)> {
    let k = m.rank() - t.rank();
    let n = m.len();
    let target = Target::new(t);
    let mut seen_flats = HashSet::new();
    let mut found = None;
    for_each_combination(n, k, |con| {
        if m.rank_mask(con) != k {
            return false;
        }
        let basis = echelon(m.col_words(), con);
        let reduced: Vec<u64> = m.col_words().iter().map(|&c| reduce(&basis, c)).collect();
        if target.loops == 0 {
            let flat = (0..n)
                .filter(|&j| reduced[j] == 0)
                .fold(0u64, |a, j| a | (1 << j));
            if !seen_flats.insert(flat) {
                return false;
            }
        }
        let pool = Pool::new(&reduced, con);
        if pool.distinct_nonzero() < target.distinct_nonzero {
            return false;
        }
        if let Some(keep) = target.embed(pool) {
            found = Some((con, keep));
            return true;
        }
        false
    });
    found
}

// Calls `f` on every k-subset mask of 0..n, in lexicographic order, until it
// returns true.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(idx.iter().fold(0u64, |a, &i| a | (1 << i))) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// Echelon basis of the columns in `mask`, each vector tagged by its top bit.
fn echelon(cols: &[u64], mask: u64) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for j in bits(mask) {
        let mut v = cols[j];
        for &b in &basis {
            let top = 63 - b.leading_zeros();
            if v >> top & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

// Canonical coset representative modulo the span of `basis`.
fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let top = 63 - b.leading_zeros();
        if v >> top & 1 == 1 {
            v ^= b;
        }
    }
    v
}

struct Pool {
    vectors: Vec<u64>,
    members: Vec<Vec<usize>>,
    index: HashMap<u64, usize>,
    taken: Vec<usize>,
}

impl Pool {
    fn new(reduced: &[u64], con: u64) -> Self {
        let mut pool = Pool {
            vectors: Vec::new(),
            members: Vec::new(),
            index: HashMap::new(),
            taken: Vec::new(),
        };
        for (j, &v) in reduced.iter().enumerate() {
            if con >> j & 1 == 1 {
                continue;
            }
            let slot = *pool.index.entry(v).or_insert_with(|| {
                pool.vectors.push(v);
                pool.members.push(Vec::new());
                pool.taken.push(0);
                pool.vectors.len() - 1
            });
            pool.members[slot].push(j);
        }
        pool
    }

    fn distinct_nonzero(&self) -> usize {
        self.vectors.iter().filter(|&&v| v != 0).count()
    }

    fn claim(&mut self, v: u64) -> bool {
        match self.index.get(&v) {
            Some(&s) if self.taken[s] < self.members[s].len() => {
                self.taken[s] += 1;
                true
            }
            _ => false,
        }
    }

    fn release(&mut self, v: u64) {
        let s = self.index[&v];
        self.taken[s] -= 1;
    }

    fn claimed_mask(&self) -> u64 {
        (0..self.vectors.len())
            .flat_map(|s| self.members[s][..self.taken[s]].iter())
            .fold(0u64, |a, &j| a | (1 << j))
    }
}

struct Target {
    rank: usize,
    // target columns (over the target's basis) grouped by the level at which
    // they become determined; loops sit at level 0 with word 0
    by_level: Vec<Vec<u64>>,
    loops: usize,
    distinct_nonzero: usize,
}

impl Target {
    fn new(t: &BinaryMatroid) -> Self {
        let rank = t.rank();
        let mut by_level = vec![Vec::new(); rank.max(1)];
        let mut loops = 0;
        for &c in t.col_words() {
            if c == 0 {
                loops += 1;
                by_level[0].push(0);
            } else {
                by_level[63 - c.leading_zeros() as usize].push(c);
            }
        }
        let mut distinct: Vec<u64> = t.col_words().iter().copied().filter(|&c| c != 0).collect();
        distinct.sort_unstable();
        distinct.dedup();
        Self {
            rank,
            by_level,
            loops,
            distinct_nonzero: distinct.len(),
        }
    }

    fn embed(&self, mut pool: Pool) -> Option<u64> {
        let mut images = vec![0u64; self.rank];
        if self.rank == 0 {
            return self
                .place_level(&mut pool, 0, &images)
                .then(|| pool.claimed_mask());
        }
        if self.level(&mut pool, 0, &mut images, &mut Vec::new()) {
            Some(pool.claimed_mask())
        } else {
            None
        }
    }

    fn image_of(images: &[u64], word: u64) -> u64 {
        bits(word).fold(0u64, |a, i| a ^ images[i])
    }

    // Claims pool elements for every target column determined at `level`;
    // undoes its own claims on failure.
    fn place_level(&self, pool: &mut Pool, level: usize, images: &[u64]) -> bool {
        let mut claimed = Vec::new();
        for &c in &self.by_level[level] {
            let v = Self::image_of(images, c);
            if !pool.claim(v) {
                for u in claimed {
                    pool.release(u);
                }
                return false;
            }
            claimed.push(v);
        }
        true
    }

    fn unplace_level(&self, pool: &mut Pool, level: usize, images: &[u64]) {
        for &c in &self.by_level[level] {
            pool.release(Self::image_of(images, c));
        }
    }

    fn level(
        &self,
        pool: &mut Pool,
        level: usize,
        images: &mut Vec<u64>,
        span: &mut Vec<u64>,
    ) -> bool {
        if level == self.rank {
            return true;
        }
        let choices: Vec<u64> = pool
            .vectors
            .iter()
            .copied()
            .filter(|&v| v != 0 && reduce(span, v) != 0)
            .collect();
        for v in choices {
            images[level] = v;
            if !self.place_level(pool, level, images) {
                continue;
            }
            let saved = span.clone();
            let r = reduce(span, v);
            // keep `span` an echelon basis
            for b in span.iter_mut() {
                let top = 63 - r.leading_zeros();
                if *b >> top & 1 == 1 {
                    *b ^= r;
                }
            }
            span.push(r);
            span.sort_unstable_by(|a, b| b.cmp(a));
            if self.level(pool, level + 1, images, span) {
                return true;
            }
            *span = saved;
            self.unplace_level(pool, level, images);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Matrix;
    use crate::iso::are_isomorphic;

    fn check_witness(m: &BinaryMatroid, t: &BinaryMatroid, w: &MinorWitness) {
        let minor = m.minor(&w.delete, &w.contract).unwrap();
        assert!(
            are_isomorphic(&minor, t).unwrap().is_some(),
            "witness {w:?} is not {}",
            t.name()
        );
    }

    #[test]
    fn fano_contains_itself() {
        let f7 = catalog::fano();
        let w = has_minor(&f7, &f7).unwrap().unwrap();
        assert!(w.contract.is_empty() && w.delete.is_empty());
        assert!(!is_regular(&f7).unwrap());
        assert!(!is_regular(&f7.dual()).unwrap());
    }

    #[test]
    fn small_regular_matroids() {
        // M(K4)
        let k4 = BinaryMatroid::from_standard(
            &Gf2Matrix::parse_rows(&["110", "101", "011"]).unwrap(),
            None,
        )
        .unwrap();
        assert!(is_regular(&k4).unwrap());
        assert!(in_class(&k4, &MinorClass::all_binary()).unwrap());
    }

    #[test]
    fn witness_after_extension() {
        // F7 with an extra column is non-regular and the witness checks out
        let f7 = catalog::fano();
        let bigger = crate::growth::extend(&f7, &"110".parse().unwrap()).unwrap();
        let w = has_minor(&bigger, &f7).unwrap().unwrap();
        check_witness(&bigger, &f7, &w);
        let co = crate::growth::coextend(&f7.dual(), &"110".parse().unwrap()).unwrap();
        let w = has_minor(&co, &f7.dual()).unwrap().unwrap();
        check_witness(&co, &f7.dual(), &w);
    }

    #[test]
    fn target_with_loop() {
        let f7 = catalog::fano();
        let with_loop = crate::growth::extend(&f7, &"000".parse().unwrap()).unwrap();
        assert!(has_minor(&f7, &with_loop).unwrap().is_none());
        let w = has_minor(&with_loop, &with_loop).unwrap().unwrap();
        check_witness(&with_loop, &with_loop, &w);
        let u12 =
            BinaryMatroid::from_matrix(&Gf2Matrix::parse_rows(&["10"]).unwrap(), None).unwrap();
        let w = has_minor(&with_loop, &u12).unwrap().unwrap();
        check_witness(&with_loop, &u12, &w);
        assert!(w.contract.len() + w.delete.len() == 6);
    }

    #[test]
    fn combinations_are_complete() {
        let mut count = 0;
        for_each_combination(6, 3, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 20);
        let mut zero = 0;
        for_each_combination(4, 0, |m| {
            zero += 1;
            m == 0
        });
        assert_eq!(zero, 1);
    }

    #[test]
    fn unknown_class_name() {
        assert!(matches!(
            MinorClass::by_name("graphic"),
            Err(Error::UnknownClass(_))
        ));
    }
}
