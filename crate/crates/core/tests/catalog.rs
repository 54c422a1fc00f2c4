use matdec::catalog::{self, keys};
use matdec::iso::are_isomorphic;

#[test]
fn every_catalog_validation_passes() {
    for key in keys() {
        let entry = catalog::entry(key).unwrap();
        let failed = entry.failing_validations().unwrap();
        assert!(failed.is_empty(), "{key}: failing validations {failed:?}");
        assert!(!entry.validations.is_empty(), "{key} has no validations");
    }
}

#[test]
fn both_q13_keys_are_distinct_matroids() {
    let a = catalog::builtin("Q13_r12").unwrap();
    let b = catalog::builtin("Q13_sec5").unwrap();
    assert_ne!(a.rank(), b.rank());
    assert!(are_isomorphic(&a, &b).unwrap().is_none());
}
