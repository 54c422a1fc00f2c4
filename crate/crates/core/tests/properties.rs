mod common;

use common::*;
use matdec::connectivity::{is_n_connected, lambda};
use matdec::decomposer::{check_condition_i, check_condition_ii, DecompositionProblem};
use matdec::growth::{coextend, extend};
use matdec::iso::{are_isomorphic, verify_bijection};
use matdec::minor::{has_minor, MinorClass};
use matdec::{catalog, BinaryMatroid, ElementId, Gf2Matrix, Gf2Vector};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matroid(seed: u64, min: usize, max: usize) -> BinaryMatroid {
    random_matroid(&mut ChaCha8Rng::seed_from_u64(seed), min, max)
}

fn bit_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Gf2Matrix> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows).prop_map(
        move |rows_bits| {
            let rows_v: Vec<Gf2Vector> =
                rows_bits.iter().map(|r| Gf2Vector::from_bits(r)).collect();
            Gf2Matrix::from_rows(&rows_v, cols).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent_and_rank_is_transpose_invariant(m in (1usize..7, 1usize..9).prop_flat_map(|(r, c)| bit_matrix(r, c))) {
        let (red, pivots) = m.rref();
        let (again, pivots2) = red.rref();
        prop_assert_eq!(&again, &red);
        prop_assert_eq!(&pivots, &pivots2);
        prop_assert_eq!(m.transpose().rref().1.len(), pivots.len());
        prop_assert!(pivots.len() <= m.rows().min(m.cols()));
    }

    #[test]
    fn circuits_equal_minimal_dependent_sets(seed in any::<u64>()) {
        let m = matroid(seed, 4, 8);
        prop_assert_eq!(circuits_match_brute_force(&m), Ok(()));
    }

    #[test]
    fn lambda_is_symmetric_and_self_dual(seed in any::<u64>()) {
        let m = matroid(seed, 4, 10);
        prop_assert!(lambda_symmetry_and_duality(&m).is_ok());
    }

    #[test]
    fn three_connectivity_matches_tutte_definition(seed in any::<u64>()) {
        let m = matroid(seed, 4, 9);
        let o = Oracle::new(&m);
        let n = o.len();
        let separated = (1..o.full()).any(|s| {
            let k = s.count_ones() as usize;
            (1..3).any(|j| k >= j && n - k >= j && o.lambda(s) < j)
        });
        prop_assert_eq!(is_n_connected(&m, 3).unwrap(), !separated);
    }

    #[test]
    fn simple_matroid_three_connectivity_criterion(seed in any::<u64>()) {
        let m = matroid(seed, 4, 10);
        prop_assume!(m.is_simple());
        let o = Oracle::new(&m);
        let n = o.len();
        let criterion = (1..o.full()).all(|s| {
            let k = s.count_ones() as usize;
            k < 3 || n - k < 3 || o.lambda(s) >= 2
        });
        let connected = (1..o.full()).all(|s| o.lambda(s) >= 1);
        let three = is_n_connected(&m, 3).unwrap();
        if three {
            prop_assert!(criterion);
        }
        if criterion && connected && m.is_cosimple() {
            prop_assert!(three);
        }
    }

    #[test]
    fn coextension_is_dual_extension(seed in any::<u64>(), word in any::<u64>()) {
        let n = matroid(seed, 4, 10);
        let w = Gf2Vector::from_word(n.corank(), word & ((1 << n.corank()) - 1));
        let co = coextend(&n, &w).unwrap();
        let ext = extend(&n.dual(), &w).unwrap();
        prop_assert!(co.dual().same_matroid(&ext));
    }

    #[test]
    fn relabelled_matroids_are_isomorphic(seed in any::<u64>()) {
        let m = matroid(seed, 4, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut order: Vec<usize> = (0..m.len()).collect();
        order.shuffle(&mut rng);
        let rep = m.rep().select_columns(&order);
        let labels: Vec<ElementId> = (0..m.len()).map(|i| ElementId(100 + i as u32)).collect();
        let shuffled = BinaryMatroid::from_matrix_any_basis(&rep, Some(labels)).unwrap();
        let map = are_isomorphic(&m, &shuffled).unwrap();
        prop_assert!(map.is_some());
        prop_assert!(verify_bijection(&m, &shuffled, &map.unwrap()).unwrap());
        let other = matroid(seed.wrapping_add(1), 4, 9);
        let census = |x: &BinaryMatroid| {
            let mut sizes: Vec<usize> = x.circuits().unwrap().iter().map(|c| c.len()).collect();
            sizes.sort_unstable();
            (x.len(), x.rank(), sizes)
        };
        if let Some(map) = are_isomorphic(&m, &other).unwrap() {
            prop_assert!(verify_bijection(&m, &other, &map).unwrap());
        }
        if census(&m) != census(&other) {
            prop_assert!(are_isomorphic(&m, &other).unwrap().is_none());
        }
    }

    #[test]
    fn minor_search_respects_duality(seed in any::<u64>()) {
        let m = matroid(seed, 7, 10);
        for target in [catalog::fano(), catalog::fano().dual()] {
            let direct = has_minor(&m, &target).unwrap();
            let dual = has_minor(&m.dual(), &target.dual()).unwrap();
            prop_assert_eq!(direct.is_some(), dual.is_some());
            if let Some(w) = direct {
                let minor = m.minor(&w.delete, &w.contract).unwrap();
                prop_assert!(are_isomorphic(&minor, &target).unwrap().is_some());
            }
        }
    }

    #[test]
    fn minors_of_minors_are_found(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matroid(&mut rng, 7, 10);
        let target = catalog::fano();
        let mut elements: Vec<ElementId> = m.elements().to_vec();
        elements.shuffle(&mut rng);
        let (del, con) = (rng.gen_range(0..2usize), rng.gen_range(0..2usize));
        let delete = elements[..del].iter().copied().collect();
        let contract = elements[del..del + con].iter().copied().collect();
        let smaller = m.minor(&delete, &contract).unwrap();
        if has_minor(&smaller, &target).unwrap().is_some() {
            prop_assert!(has_minor(&m, &target).unwrap().is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn extension_lambda_matches_circuit_criterion(seed in any::<u64>()) {
        let inst = random_instance(seed, 10, false);
        prop_assert_eq!(extension_circuit_criterion(&inst).map(|c| c > 0), Ok(true));
    }

    #[test]
    fn coextension_lambda_matches_cocircuit_criterion(seed in any::<u64>()) {
        let inst = random_instance(seed, 10, false);
        prop_assert_eq!(coextension_cocircuit_criterion(&inst).map(|c| c > 0), Ok(true));
    }

    #[test]
    fn parent_lambdas_compose_in_two_element_growths(seed in any::<u64>()) {
        let inst = random_instance(seed, 9, false);
        prop_assert!(two_element_composition(&inst).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coextension_condition_is_extension_condition_of_the_dual(seed in any::<u64>()) {
        let inst = random_instance(seed, 9, true);
        let class = MinorClass::all_binary;
        let p = DecompositionProblem::new(inst.n.clone(), inst.a.clone(), 3, class()).unwrap();
        let pd = DecompositionProblem::new(inst.n.dual(), inst.a.clone(), 3, class()).unwrap();
        let outcomes = |vs: Vec<matdec::decomposer::ConditionVerdict>| {
            let mut v: Vec<(String, bool)> = vs
                .into_iter()
                .map(|v| (v.subject.key().split_once(' ').unwrap().1.to_string(), v.passed))
                .collect();
            v.sort();
            v
        };
        let ii = outcomes(check_condition_ii(&p).unwrap());
        let i_dual = outcomes(check_condition_i(&pd).unwrap());
        prop_assert_eq!(ii, i_dual);
        prop_assert_eq!(lambda(&inst.n, &inst.a).unwrap(), 2);
    }
}
