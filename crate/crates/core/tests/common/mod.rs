#![allow(dead_code)]

use hybrid_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn random_pauli(rng: &mut StdRng, n: usize) -> PauliOperator {
    let x = Bits::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
    let z = Bits::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
    PauliOperator::hermitian(x, z)
}

/// `count` independent commuting Hermitian Paulis with random signs.
pub fn random_commuting(rng: &mut StdRng, n: usize, count: usize) -> Vec<PauliOperator> {
    assert!(count <= n);
    loop {
        let mut gens: Vec<PauliOperator> = Vec::new();
        for _ in 0..64 * (count + 1) {
            if gens.len() == count {
                break;
            }
            let mut p = random_pauli(rng, n);
            if p.is_identity_up_to_phase() {
                continue;
            }
            if rng.gen_bool(0.5) {
                p = p.negated();
            }
            if !gens.iter().all(|g| g.commutes(&p).unwrap()) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(p);
            if StabilizerGroup::build(trial.clone()).is_ok() {
                gens = trial;
            }
        }
        if gens.len() == count {
            return gens;
        }
    }
}

pub fn random_group(seed: u64, n: usize, r: usize) -> StabilizerGroup {
    if r == 0 {
        return StabilizerGroup::trivial(n);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    StabilizerGroup::build(random_commuting(&mut rng, n, r)).unwrap()
}

/// A random hybrid code with `r` quantum and `c` classical generators.
pub fn random_hybrid(seed: u64, n: usize, r: usize, c: usize) -> HybridCode {
    if r + c == 0 {
        return HybridCode::from_stabilizer(&StabilizerGroup::trivial(n));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut gens = random_commuting(&mut rng, n, r + c);
    let classical = gens.split_off(r);
    HybridCode::new(gens, classical).unwrap()
}

pub fn seeds() -> Vec<HybridCode> {
    families::SEED_LENGTHS
        .iter()
        .map(|&a| seed_code(a).unwrap())
        .collect()
}

pub fn six_qubit_union() -> StabilizerUnionCode {
    let ca = StabilizerGroup::from_strings(&["XXZIZI", "ZXXZII", "IZXXZI", "ZIZXXI", "IIIIIX"]);
    let cb = StabilizerGroup::from_strings(&["YIZXXY", "ZXIIXZ", "IZXXXX", "IIIZIZ", "ZZZIZI"]);
    StabilizerUnionCode::new(vec![ca.unwrap(), cb.unwrap()]).unwrap()
}

pub fn projectors(u: &StabilizerUnionCode) -> Vec<GaussianMatrix> {
    u.inner_codes()
        .iter()
        .map(|s| projector(s, 8).unwrap())
        .collect()
}
