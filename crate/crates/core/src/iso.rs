//! Isomorphism of binary matroids by backtracking over element maps that
//! preserve the circuit family.

use std::collections::{BTreeMap, HashSet};

use crate::error::Result;
use crate::limits;
use crate::matroid::{bits, BinaryMatroid, ElementId, ElementSet};

/// A ground-set bijection from the first matroid to the second.
pub type Bijection = BTreeMap<ElementId, ElementId>;

struct Profile {
    circuits: Vec<u64>,
    circuit_set: HashSet<u64>,
    // per element: loop, coloop, then counts of circuits and cocircuits by size
    invariants: Vec<Vec<usize>>,
}

impl Profile {
    fn new(m: &BinaryMatroid) -> Result<Self> {
        let circuits = m.circuit_masks()?;
        let cocircuits = m.cocircuit_masks()?;
        let n = m.len();
        let invariants = (0..n)
            .map(|j| {
                let mut inv = vec![0; 2 * (n + 1) + 2];
                inv[0] = usize::from(m.col_words()[j] == 0);
                inv[1] = usize::from(m.cocol_words()[j] == 0);
                for &c in circuits.iter().filter(|&&c| c >> j & 1 == 1) {
                    inv[2 + c.count_ones() as usize] += 1;
                }
                for &d in cocircuits.iter().filter(|&&d| d >> j & 1 == 1) {
                    inv[3 + n + d.count_ones() as usize] += 1;
                }
                inv
            })
            .collect();
        Ok(Self {
            circuit_set: circuits.iter().copied().collect(),
            circuits,
            invariants,
        })
    }

    fn size_census(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.circuits.iter().map(|c| c.count_ones()).collect();
        s.sort_unstable();
        s
    }
}

struct Search<'a> {
    p1: &'a Profile,
    p2: &'a Profile,
    order: Vec<usize>,
    // circuits of the first matroid completed at each step of `order`
    completed_at: Vec<Vec<u64>>,
    image: Vec<usize>,
    used: u64,
}

impl Search<'_> {
    fn map_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(0u64, |acc, j| acc | (1u64 << self.image[j]))
    }

    fn run(&mut self, depth: usize, placed: u64) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let n = self.image.len();
        for y in 0..n {
            if self.used >> y & 1 == 1 || self.p1.invariants[x] != self.p2.invariants[y] {
                continue;
            }
            self.image[x] = y;
            self.used |= 1 << y;
            let placed_now = placed | (1 << x);
            let ok = self.completed_at[depth]
                .iter()
                .all(|&c| self.p2.circuit_set.contains(&self.map_mask(c)))
                && {
                    let inside1 = self
                        .p1
                        .circuits
                        .iter()
                        .filter(|&&c| c & !placed_now == 0)
                        .count();
                    let inside2 = self
                        .p2
                        .circuits
                        .iter()
                        .filter(|&&c| c & !self.used == 0)
                        .count();
                    inside1 == inside2
                };
            if ok && self.run(depth + 1, placed_now) {
                return true;
            }
            self.used &= !(1 << y);
        }
        false
    }
}

/// A bijection `E(m1) → E(m2)` mapping circuits onto circuits, if any.
pub fn are_isomorphic(m1: &BinaryMatroid, m2: &BinaryMatroid) -> Result<Option<Bijection>> {
    limits::check(m1.len())?;
    limits::check(m2.len())?;
    if m1.len() != m2.len() || m1.rank() != m2.rank() {
        return Ok(None);
    }
    let p1 = Profile::new(m1)?;
    let p2 = Profile::new(m2)?;
    if p1.size_census() != p2.size_census() {
        return Ok(None);
    }
    let mut inv1 = p1.invariants.clone();
    let mut inv2 = p2.invariants.clone();
    inv1.sort();
    inv2.sort();
    if inv1 != inv2 {
        return Ok(None);
    }
    let n = m1.len();
    // Place elements with rare invariants first, then prefer elements sharing
    // circuits with those already placed.
    let rarity = |j: usize| {
        p1.invariants
            .iter()
            .filter(|inv| **inv == p1.invariants[j])
            .count()
    };
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let next = (0..n)
            .filter(|&j| placed >> j & 1 == 0)
            .min_by_key(|&j| {
                let touching = p1
                    .circuits
                    .iter()
                    .filter(|&&c| c >> j & 1 == 1 && c & placed != 0)
                    .count();
                (rarity(j), std::cmp::Reverse(touching), j)
            })
            .expect("an unplaced element remains");
        order.push(next);
        placed |= 1 << next;
    }
    let mut completed_at = vec![Vec::new(); n];
    let step_of: Vec<usize> = {
        let mut s = vec![0; n];
        for (i, &j) in order.iter().enumerate() {
            s[j] = i;
        }
        s
    };
    for &c in &p1.circuits {
        let last = bits(c).map(|j| step_of[j]).max().unwrap_or(0);
        completed_at[last].push(c);
    }
    let mut search = Search {
        p1: &p1,
        p2: &p2,
        order,
        completed_at,
        image: vec![0; n],
        used: 0,
    };
    if !search.run(0, 0) {
        return Ok(None);
    }
    Ok(Some(
        (0..n)
            .map(|j| (m1.elements()[j], m2.elements()[search.image[j]]))
            .collect(),
    ))
}

/// Checks that `map` carries the circuits of `m1` exactly onto those of `m2`.
pub fn verify_bijection(m1: &BinaryMatroid, m2: &BinaryMatroid, map: &Bijection) -> Result<bool> {
    if map.len() != m1.len() || m1.len() != m2.len() {
        return Ok(false);
    }
    let mut image: Vec<ElementSet> = m1
        .circuits()?
        .iter()
        .map(|c| c.iter().map(|e| map[e]).collect())
        .collect();
    let mut target = m2.circuits()?;
    image.sort();
    target.sort();
    Ok(image == target)
}

/// One isomorphism class of a list of matroids, by index into that list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    /// The member whose canonical circuit list is lexicographically least.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partitions `ms` into isomorphism classes, ordered by first member.
pub fn iso_classes(ms: &[BinaryMatroid]) -> Result<Vec<IsoClass>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'outer: for (i, m) in ms.iter().enumerate() {
        for class in classes.iter_mut() {
            if are_isomorphic(&ms[class[0]], m)?.is_some() {
                class.push(i);
                continue 'outer;
            }
        }
        classes.push(vec![i]);
    }
    classes
        .into_iter()
        .map(|members| {
            let mut best: Option<(Vec<ElementSet>, usize)> = None;
            for &i in &members {
                let key = ms[i].circuits()?;
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, i));
                }
            }
            Ok(IsoClass {
                representative: best.map(|(_, i)| i).unwrap_or(members[0]),
                members,
            })
        })
        .collect()
}
