mod common;

use common::*;
use hybrid_core::*;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn small_paulis(n: usize, w_max: usize) -> Vec<PauliOperator> {
    (0..=w_max.min(n))
        .flat_map(|w| enumerate_paulis(n, w).unwrap())
        .collect()
}

fn enumerator_inequalities(w: &WeightDistributionSet) {
    let zero = BigRational::zero();
    let (a, b) = w.aggregate();
    for j in 0..=w.n() {
        assert!(zero <= a[j] && a[j] <= b[j], "aggregate at {j}");
        for c in 0..w.m_count() {
            let (ac, bc) = (&w.pair_a(c, c)[j], &w.pair_b(c, c)[j]);
            assert!(&zero <= ac && ac <= bc, "pair ({c},{c}) at {j}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn detectability_matches_dense_kl(seed in any::<u64>(), n in 2usize..6, r in 0usize..4, c in 0usize..3) {
        let r = r.min(n - 1);
        let c = c.min(n - r);
        let h = random_hybrid(seed, n, r, c);
        let u = h.as_union().unwrap();
        let ps = projectors(&u);
        for e in small_paulis(n, 3) {
            let kl = kl_check(&ps, &e);
            prop_assert_eq!(h.is_detectable(&e).unwrap(), kl.is_detectable(), "{}", e);
        }
        let ranks: usize = ps.iter().map(|p| p.rank()).sum();
        prop_assert_eq!(ranks, 1usize << (h.k() + h.m()));
        let outer = projector(h.quantum_stabilizer(), 8).unwrap();
        prop_assert_eq!(outer.rank(), ranks);
    }

    #[test]
    fn enumerators_match_dense(seed in any::<u64>(), n in 1usize..6, r in 0usize..4, c in 0usize..3) {
        let r = r.min(n);
        let c = c.min(n - r);
        let h = random_hybrid(seed, n, r, c);
        let u = h.as_union().unwrap();
        let sym = EnumeratorEngine::new().distributions(&u).unwrap();
        let dense = weight_distributions_dense(&projectors(&u), 8).unwrap();
        for a in 0..u.num_codes() {
            for b in 0..u.num_codes() {
                prop_assert_eq!(sym.pair_a(a, b), dense.pair_a(a, b));
                prop_assert_eq!(sym.pair_b(a, b), dense.pair_b(a, b));
            }
        }
        enumerator_inequalities(&dense);
        let d = distance_from_enumerators(&sym);
        let searched = h.distance(n).unwrap().exact().unwrap_or(n + 1);
        prop_assert_eq!(d, searched);
    }
}

#[test]
fn seven_qubit_seed_enumerators_match_dense() {
    let u = seed_code(7).unwrap().as_union().unwrap();
    let sym = enumerators::distributions(&u).unwrap();
    let dense = weight_distributions_dense(&projectors(&u), 8).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(sym.pair_a(a, b), dense.pair_a(a, b));
            assert_eq!(sym.pair_b(a, b), dense.pair_b(a, b));
        }
    }
}

#[test]
fn six_qubit_union_enumerators_match_dense() {
    let u = six_qubit_union();
    let sym = enumerators::distributions(&u).unwrap();
    let dense = weight_distributions_dense(&projectors(&u), 8).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(sym.pair_a(a, b), dense.pair_a(a, b));
            assert_eq!(sym.pair_b(a, b), dense.pair_b(a, b));
        }
    }
    enumerator_inequalities(&sym);
    // The aggregate exceeds a diagonal term, so the nested condition fails.
    let (a, _) = sym.aggregate();
    assert_eq!(a[2], BigRational::new(1.into(), 4.into()));
    assert!(sym.pair_a(0, 0)[2].is_zero());
    assert_eq!(distance_from_enumerators(&sym), 1);
    assert_eq!(u.union_distance_dense(2).unwrap().exact(), Some(1));
}

#[test]
fn random_paulis_on_seed_codes() {
    let mut rng = StdRng::seed_from_u64(12);
    for h in seeds().iter().skip(1) {
        let n = h.num_qubits();
        let u = h.as_union().unwrap();
        let bases: Vec<_> = u
            .inner_codes()
            .iter()
            .map(|s| CodeBasis::new(s, 12).unwrap())
            .collect();
        for _ in 0..1000 {
            let e = random_pauli(&mut rng, n).with_phase(rng.gen_range(0..4));
            assert_eq!(
                h.is_detectable(&e).unwrap(),
                kl_check_bases(&bases, &e).is_detectable(),
                "{e}"
            );
        }
    }
}

#[test]
fn seed_distances_match_dense_union_search() {
    for h in seeds() {
        let d = h.distance(3).unwrap();
        let dense = h.as_union().unwrap().union_distance_dense(3).unwrap();
        assert_eq!(d.exact(), Some(3));
        assert_eq!(dense.exact(), Some(3), "n={}", h.num_qubits());
    }
}

#[test]
fn genuine_codes_are_impure() {
    let mut codes: Vec<HybridCode> = seeds();
    codes.extend([5, 7, 9].map(|n| dist2_family(n).unwrap()));
    codes.extend([7, 9, 11].map(|a| paste(1, a).unwrap()));
    for h in codes {
        let d = h.distance(3).unwrap();
        let d = d.exact().unwrap_or(4);
        assert!(
            matches!(h.inner_degenerate(d).unwrap(), Degeneracy::Degenerate(_)),
            "{:?}",
            h.params()
        );
    }
}

#[test]
fn diagonal_terms_agree_below_distance() {
    let mut codes: Vec<HybridCode> = seeds();
    codes.extend([5, 7, 9, 11].map(|n| dist2_family(n).unwrap()));
    let engine = EnumeratorEngine::new();
    for h in codes {
        let d = h.distance(3).unwrap().exact().unwrap();
        let w = engine.distributions(&h.as_union().unwrap()).unwrap();
        enumerator_inequalities(&w);
        let (_, b) = w.aggregate();
        for j in 0..d {
            for c in 0..w.m_count() {
                assert_eq!(w.pair_a(c, c)[j], w.pair_b(c, c)[j]);
                assert_eq!(w.pair_b(c, c)[j], b[j]);
            }
        }
    }
}
