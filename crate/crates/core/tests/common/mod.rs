//! Independent brute-force oracles and random instances shared by the
//! property suites and the acceptance run.

#![allow(dead_code)]

use matdec::connectivity::lambda;
use matdec::growth::{coextend_with_id, extend_with_id, two_element_growth};
use matdec::{BinaryMatroid, ElementId, ElementSet, Gf2Matrix, Gf2Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank function of a binary matroid computed from its column vectors by
/// plain elimination, without touching the library's rank code.
pub struct Oracle {
    pub elements: Vec<ElementId>,
    columns: Vec<u64>,
    pub rank: usize,
}

impl Oracle {
    pub fn new(m: &BinaryMatroid) -> Self {
        let rep = m.rep();
        let columns: Vec<u64> = (0..rep.cols())
            .map(|j| {
                (0..rep.rows())
                    .filter(|&i| rep.get(i, j))
                    .fold(0, |w, i| w | 1 << i)
            })
            .collect();
        let full = (1u64 << columns.len()) - 1;
        let mut o = Self {
            elements: m.elements().to_vec(),
            columns,
            rank: 0,
        };
        o.rank = o.rank_of(full);
        o
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.len()) - 1
    }

    pub fn rank_of(&self, mask: u64) -> usize {
        let mut basis: Vec<u64> = Vec::new();
        for j in 0..self.len() {
            if mask >> j & 1 == 0 {
                continue;
            }
            let mut v = self.columns[j];
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis.len()
    }

    pub fn lambda(&self, mask: u64) -> usize {
        self.rank_of(mask) + self.rank_of(self.full() & !mask) - self.rank
    }

    /// `λ` in `M / x`, from the rank function of `M`.
    pub fn lambda_contract(&self, x: usize, mask: u64) -> usize {
        let bit = 1u64 << x;
        let rest = self.full() & !bit;
        let r = |s: u64| self.rank_of(s | bit) - self.rank_of(bit);
        r(mask & rest) + r(rest & !mask) - r(rest)
    }

    /// `λ` in `M \ x`.
    pub fn lambda_delete(&self, x: usize, mask: u64) -> usize {
        let rest = self.full() & !(1u64 << x);
        self.rank_of(mask & rest) + self.rank_of(rest & !mask) - self.rank_of(rest)
    }

    pub fn mask(&self, set: &ElementSet) -> u64 {
        set.iter()
            .map(|e| {
                1u64 << self
                    .elements
                    .iter()
                    .position(|x| x == e)
                    .expect("element present")
            })
            .fold(0, |a, b| a | b)
    }

    pub fn set(&self, mask: u64) -> ElementSet {
        (0..self.len())
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| self.elements[j])
            .collect()
    }

    pub fn position(&self, e: ElementId) -> usize {
        self.elements
            .iter()
            .position(|x| *x == e)
            .expect("element present")
    }

    /// Minimal dependent sets, by exhaustion.
    pub fn circuits(&self) -> Vec<u64> {
        let dependent: Vec<u64> = (1..=self.full())
            .filter(|&s| self.rank_of(s) < s.count_ones() as usize)
            .collect();
        minimal(&dependent)
    }

    /// Minimal sets meeting every basis, by exhaustion.
    pub fn cocircuits(&self) -> Vec<u64> {
        let full = self.full();
        let hitting: Vec<u64> = (1..=full)
            .filter(|&s| self.rank_of(full & !s) < self.rank)
            .collect();
        minimal(&hitting)
    }
}

fn minimal(sets: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = sets
        .iter()
        .copied()
        .filter(|&s| !sets.iter().any(|&t| t != s && t & s == t))
        .collect();
    out.sort_unstable();
    out
}

/// A random simple, cosimple binary matroid with a chosen exact
/// 3-separation `(A, B)`.
pub struct Instance {
    pub n: BinaryMatroid,
    pub a: ElementSet,
    pub seed: u64,
}

pub fn random_matroid(rng: &mut ChaCha8Rng, min: usize, max: usize) -> BinaryMatroid {
    let size = rng.gen_range(min..=max);
    let r = rng.gen_range(2..=size - 2);
    let rows: Vec<Gf2Vector> = (0..r)
        .map(|_| {
            let bits: Vec<bool> = (0..size - r).map(|_| rng.gen_bool(0.5)).collect();
            Gf2Vector::from_bits(&bits)
        })
        .collect();
    let d = Gf2Matrix::from_rows(&rows, size - r).expect("rows agree");
    BinaryMatroid::from_standard(&d, None).expect("standard form")
}

/// Draws until a simple, cosimple matroid on 6 to `max` elements has an
/// exact 3-separation; with `unions`, `A` must also be a union of circuits
/// and a union of cocircuits.
pub fn random_instance(seed: u64, max: usize, unions: bool) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = random_matroid(&mut rng, 6, max);
        if !n.is_simple() || !n.is_cosimple() {
            continue;
        }
        let o = Oracle::new(&n);
        let size = o.len();
        let circuits = if unions { o.circuits() } else { Vec::new() };
        let cocircuits = if unions { o.cocircuits() } else { Vec::new() };
        let covered = |mask: u64, family: &[u64]| {
            family
                .iter()
                .filter(|&&c| c & mask == c)
                .fold(0, |a, &c| a | c)
                == mask
        };
        let sides: Vec<u64> = (1..o.full())
            .filter(|&s| {
                let k = s.count_ones() as usize;
                k >= 3
                    && size - k >= 3
                    && o.lambda(s) == 2
                    && (!unions || (covered(s, &circuits) && covered(s, &cocircuits)))
            })
            .collect();
        if sides.is_empty() {
            continue;
        }
        let a = sides[rng.gen_range(0..sides.len())];
        return Instance {
            a: o.set(a),
            n: n.with_name(format!("random-{seed}")),
            seed,
        };
    }
}

/// Single-element extension: `λ_M(A) = 2` iff a circuit through `e` lies in
/// `B ∪ e`, and `λ_M(A ∪ e) = 2` iff one lies in `A ∪ e`. Returns the number
/// of extensions examined.
pub fn extension_circuit_criterion(inst: &Instance) -> Result<usize, String> {
    let n = &inst.n;
    let mut checked = 0;
    for word in 1..1u64 << n.rank() {
        let (m, e) =
            extend_with_id(n, &Gf2Vector::from_word(n.rank(), word)).map_err(|x| x.to_string())?;
        let o = Oracle::new(&m);
        let (a, ebit) = (o.mask(&inst.a), 1u64 << o.position(e));
        let b = o.full() & !a & !ebit;
        let circuits = o.circuits();
        let through = |side: u64| {
            circuits
                .iter()
                .any(|&c| c & ebit != 0 && c & !(side | ebit) == 0)
        };
        let lib_a = lambda(&m, &inst.a).map_err(|x| x.to_string())?;
        let mut a_e = inst.a.clone();
        a_e.insert(e);
        let lib_ae = lambda(&m, &a_e).map_err(|x| x.to_string())?;
        if lib_a != o.lambda(a) || lib_ae != o.lambda(a | ebit) {
            return Err(format!(
                "seed {}: library λ disagrees with the oracle on column {word:b}",
                inst.seed
            ));
        }
        if (lib_a == 2) != through(b) || (lib_ae == 2) != through(a) {
            return Err(format!(
                "seed {}: circuit criterion fails on column {word:b}",
                inst.seed
            ));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Dual criterion for single-element coextensions and cocircuits through `f`.
pub fn coextension_cocircuit_criterion(inst: &Instance) -> Result<usize, String> {
    let n = &inst.n;
    let mut checked = 0;
    for word in 1..1u64 << n.corank() {
        let (m, f) = coextend_with_id(n, &Gf2Vector::from_word(n.corank(), word))
            .map_err(|x| x.to_string())?;
        let o = Oracle::new(&m);
        let (a, fbit) = (o.mask(&inst.a), 1u64 << o.position(f));
        let b = o.full() & !a & !fbit;
        let cocircuits = o.cocircuits();
        let through = |side: u64| {
            cocircuits
                .iter()
                .any(|&d| d & fbit != 0 && d & !(side | fbit) == 0)
        };
        let mut a_f = inst.a.clone();
        a_f.insert(f);
        let lib_a = lambda(&m, &inst.a).map_err(|x| x.to_string())?;
        let lib_af = lambda(&m, &a_f).map_err(|x| x.to_string())?;
        if lib_a != o.lambda(a) || lib_af != o.lambda(a | fbit) {
            return Err(format!(
                "seed {}: library λ disagrees with the oracle on row {word:b}",
                inst.seed
            ));
        }
        if (lib_a == 2) != through(b) || (lib_af == 2) != through(a) {
            return Err(format!(
                "seed {}: cocircuit criterion fails on row {word:b}",
                inst.seed
            ));
        }
        checked += 1;
    }
    Ok(checked)
}

/// For simple, cosimple `M` with `M \ e / f = N`: both parents keeping
/// `λ(A) = 2` forces `λ_M(A) = 2`, and both keeping the grown side exact
/// forces `λ_M(A ∪ {e, f}) = 2`. Returns how many growths triggered each
/// implication.
pub fn two_element_composition(inst: &Instance) -> Result<(usize, usize), String> {
    let n = &inst.n;
    let (r, c) = (n.rank(), n.corank());
    let (mut first, mut second) = (0, 0);
    for v in 0..1u64 << r {
        for w in 0..1u64 << c {
            for corner in [false, true] {
                let (m, e, f) = two_element_growth(
                    n,
                    &Gf2Vector::from_word(r, v),
                    &Gf2Vector::from_word(c, w),
                    corner,
                )
                .map_err(|x| x.to_string())?;
                if !m.is_simple() || !m.is_cosimple() {
                    continue;
                }
                let o = Oracle::new(&m);
                let (ei, fi) = (o.position(e), o.position(f));
                let a = o.mask(&inst.a);
                let (eb, fb) = (1u64 << ei, 1u64 << fi);
                let p1 = o.lambda_contract(fi, a) == 2;
                let p2 = o.lambda_contract(fi, a | eb) == 2;
                let q1 = o.lambda_delete(ei, a) == 2;
                let q2 = o.lambda_delete(ei, a | fb) == 2;
                if p1 && q1 {
                    first += 1;
                    if o.lambda(a) != 2 {
                        return Err(format!(
                            "seed {}: ({v:b}, {w:b}, {corner}) breaks the A-side composition",
                            inst.seed
                        ));
                    }
                }
                if p2 && q2 {
                    second += 1;
                    if o.lambda(a | eb | fb) != 2 {
                        return Err(format!(
                            "seed {}: ({v:b}, {w:b}, {corner}) breaks the grown-side composition",
                            inst.seed
                        ));
                    }
                }
            }
        }
    }
    Ok((first, second))
}

/// Every subset: `λ(X) = λ(E − X)`, `λ_M(X) = λ_{M*}(X)`, and the library
/// agrees with the oracle.
pub fn lambda_symmetry_and_duality(m: &BinaryMatroid) -> Result<usize, String> {
    let o = Oracle::new(m);
    let dual = m.dual();
    let od = Oracle::new(&dual);
    for mask in 0..=o.full() {
        let set = o.set(mask);
        let comp = o.set(o.full() & !mask);
        let l = lambda(m, &set).map_err(|x| x.to_string())?;
        let lc = lambda(m, &comp).map_err(|x| x.to_string())?;
        let ld = lambda(&dual, &set).map_err(|x| x.to_string())?;
        let oracle = o.lambda(mask);
        if l != lc || l != ld || l != oracle || od.lambda(od.mask(&set)) != oracle {
            return Err(format!("{}: λ mismatch on {set:?}", m.name()));
        }
    }
    Ok(1 << o.len())
}

/// Library circuits and cocircuits equal the brute-force minimal sets.
pub fn circuits_match_brute_force(m: &BinaryMatroid) -> Result<(), String> {
    let o = Oracle::new(m);
    let sorted = |sets: Vec<ElementSet>| {
        let mut masks: Vec<u64> = sets.iter().map(|s| o.mask(s)).collect();
        masks.sort_unstable();
        masks
    };
    let lib = sorted(m.circuits().map_err(|x| x.to_string())?);
    if lib != o.circuits() {
        return Err(format!("{}: circuits differ", m.name()));
    }
    let lib = sorted(m.cocircuits().map_err(|x| x.to_string())?);
    if lib != o.cocircuits() {
        return Err(format!("{}: cocircuits differ", m.name()));
    }
    Ok(())
}
