mod common;

use common::random_hybrid;
use hybrid_core::*;
use proptest::prelude::*;

/// A `[[12,6,3]]` stabilizer code found by random search.
const TWELVE: [&str; 6] = [
    "ZXYZYYZZIYYZ",
    "IZZIZXZYYYIX",
    "ZYYYZIXXZYIY",
    "XYZXIIIYZXIZ",
    "YZXXXXXIIYZZ",
    "ZIIXIYXXIIZZ",
];

#[test]
fn twelve_qubit_code_with_one_bit_is_lp_feasible() {
    let s = StabilizerGroup::from_strings(&TWELVE).unwrap();
    assert_eq!(s.rank(), 6);
    let h = HybridCode::from_quantum(&s, 1).unwrap();
    assert_eq!(h.params(), (12, 5, 1));
    assert_eq!(h.distance(3).unwrap().exact(), Some(3));
    let inst = LpInstance::stabilizer(12, 5, 1, 3).unwrap();
    let w = enumerators::distributions(&h.as_union().unwrap()).unwrap();
    assert!(check_point(&inst, &w.class_averages()).unwrap().is_empty());
    let res = feasible(&inst).unwrap();
    assert!(res.is_feasible() && res.verify());
}

#[test]
fn ten_qubit_ruling_has_certificate() {
    let res = feasible(&LpInstance::stabilizer(10, 4, 1, 3).unwrap()).unwrap();
    assert_eq!(res.status, LpStatus::Infeasible);
    assert!(res.verify());
}

#[test]
fn sweep_frontiers() {
    let rows = sweep([5, 6, 7], 3, 2, false).unwrap();
    for row in &rows {
        assert!(row.is_monotone(), "n={}", row.n);
    }
    assert_eq!(rows[2].is_feasible(1, 1), Some(true));
    let trivial = sweep([6], 1, 2, false).unwrap();
    for &(k, m, ok) in &trivial[0].grid {
        assert!(ok, "k={k} m={m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_outcomes_verify(n in 1usize..6, k in 0u32..4, m in 0u32..3, d in 1usize..4, nested in any::<bool>()) {
        let d = d.min(n + 1);
        let inst = LpInstance::stabilizer(n, k, m, d).unwrap().with_nested(nested);
        let res = feasible(&inst).unwrap();
        prop_assert!(res.verify());
    }

    #[test]
    fn constructed_codes_are_feasible_points(seed in any::<u64>(), n in 2usize..7, r in 0usize..4, c in 0usize..3) {
        let r = r.min(n);
        let c = c.min(n - r);
        let h = random_hybrid(seed, n, r, c);
        let d = h.distance(n).unwrap().exact().unwrap_or(n + 1).clamp(1, n + 1);
        let inst = LpInstance::stabilizer(n, h.k() as u32, h.m() as u32, d).unwrap();
        let w = enumerators::distributions(&h.as_union().unwrap()).unwrap();
        let bad = check_point(&inst, &w.class_averages()).unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }
}
