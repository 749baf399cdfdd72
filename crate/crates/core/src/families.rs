//! Explicit code families: the odd-length distance-2 hybrid codes,
//! Gottesman's distance-3 codes, four small distance-3 hybrid seed codes,
//! and stabilizer pasting of Gottesman blocks onto a seed.

use crate::error::{Error, Result};
use crate::hybrid::HybridCode;
use crate::pauli::PauliOperator;
use crate::stabilizer::{min_weight_outside, MinWeight, StabilizerGroup};
use crate::bits::Bits;

/// `[[n, n-3 : 1, 2]]` for odd `n >= 3`: `S_Q = {X^n, Z^(n-1) I}`,
/// `S_C = {I^(n-1) X}`.
pub fn dist2_family(n: usize) -> Result<HybridCode> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenLengthRejected(n));
    }
    if n < 3 {
        return Err(Error::InvalidFamilyParameter(format!(
            "distance-2 family needs odd n >= 3, got {n}"
        )));
    }
    let all_x = PauliOperator::hermitian(Bits::ones(n), Bits::zeros(n));
    let mut z = Bits::ones(n);
    z.set(n - 1, false);
    let z_head = PauliOperator::hermitian(Bits::zeros(n), z);
    let last_x = PauliOperator::hermitian(Bits::from_positions(n, &[n - 1]), Bits::zeros(n));
    HybridCode::new(vec![all_x, z_head], vec![last_x])
}

/// How column `t` of the parity matrix maps to bits of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitOrder {
    /// Row `i` holds bit `j - i` of `t` (row 1 is the most significant bit).
    Msb,
    /// Row `i` holds bit `i - 1` of `t`.
    Lsb,
}

#[derive(Debug, Clone)]
pub struct GottesmanCode {
    pub j: usize,
    pub group: StabilizerGroup,
    pub convention: BitOrder,
}

/// Generators `X^n`, `Z^n` and `S_i = X^{h_i} Z^{h_{i-1} + h_1 + h_j}` for
/// `i = 1..=j`, with `n = 2^j`, `h_0 = 0` and `h_i` row `i` of the matrix
/// whose column `t` is `t` in binary. Errors if the rows do not form a
/// stabilizer group.
pub fn gottesman_with(j: usize, order: BitOrder) -> Result<StabilizerGroup> {
    if !(3..=16).contains(&j) {
        return Err(Error::InvalidFamilyParameter(format!(
            "Gottesman construction needs 3 <= j <= 16, got {j}"
        )));
    }
    let n = 1usize << j;
    let h = |i: usize| -> Bits {
        let mut row = Bits::zeros(n);
        if i == 0 {
            return row;
        }
        let shift = match order {
            BitOrder::Msb => j - i,
            BitOrder::Lsb => i - 1,
        };
        for t in 0..n {
            if (t >> shift) & 1 == 1 {
                row.set(t, true);
            }
        }
        row
    };
    let mut gens = vec![
        PauliOperator::hermitian(Bits::ones(n), Bits::zeros(n)),
        PauliOperator::hermitian(Bits::zeros(n), Bits::ones(n)),
    ];
    for i in 1..=j {
        let z = h(i - 1).xor(&h(1)).xor(&h(j));
        gens.push(PauliOperator::hermitian(h(i), z));
    }
    StabilizerGroup::build(gens)
}

/// Whether every Pauli of weight 1 or 2 is detected by the stabilizer code.
fn has_distance_three(s: &StabilizerGroup) -> Result<bool> {
    Ok(matches!(
        min_weight_outside(s, s, 2)?,
        MinWeight::NoneUpTo(_)
    ))
}

/// `[[2^j, 2^j - j - 2, 3]]`, trying [`BitOrder::Msb`] first and falling
/// back to [`BitOrder::Lsb`]. The convention that passed the weight-2 scan
/// is returned alongside the group.
pub fn gottesman(j: usize) -> Result<GottesmanCode> {
    for order in [BitOrder::Msb, BitOrder::Lsb] {
        match gottesman_with(j, order) {
            Ok(group) if has_distance_three(&group)? => {
                return Ok(GottesmanCode {
                    j,
                    group,
                    convention: order,
                })
            }
            Ok(_) => {}
            Err(Error::InvalidFamilyParameter(msg)) => {
                return Err(Error::InvalidFamilyParameter(msg))
            }
            Err(_) => {}
        }
    }
    Err(Error::DistanceVerificationFailed { j })
}

/// One seed table: quantum rows, then classical rows.
#[derive(Debug, Clone, Copy)]
pub struct SeedTable {
    pub a: usize,
    pub quantum: &'static [&'static str],
    pub classical: &'static [&'static str],
    pub checksum: u64,
}

pub const SEED_LENGTHS: [usize; 4] = [7, 9, 10, 11];

const SEEDS: [SeedTable; 4] = [
    SeedTable {
        a: 7,
        quantum: &["XIIZYYZ", "ZXIXZIX", "ZIXXIZX", "ZIZZXII", "IZIZIXX"],
        classical: &["ZIIIIIX"],
        checksum: 0x2cee_d7cd_b2fb_59e4,
    },
    SeedTable {
        a: 9,
        quantum: &["XIIZYZXXY", "ZXIZYXYIZ", "IZXZZIXIX", "IZZIYXXYI", "ZZIXXIXZI"],
        classical: &["ZIIIIXIII", "IZIIIIXII"],
        checksum: 0x85c9_a373_7666_ed96,
    },
    SeedTable {
        a: 10,
        quantum: &["XXIZIZYZYZ", "XIYXIXZXXY", "XZXYZYYIIY", "IIZZXXYYII", "ZIIIZZXXIX"],
        classical: &["ZIIIIIIIIX", "IIZZIIIIII"],
        checksum: 0x89f9_82ce_5dc3_3f37,
    },
    SeedTable {
        a: 11,
        quantum: &[
            "IZXIXZIZXXX",
            "IZZXIIZXXYY",
            "ZIIZXXZXXXI",
            "XXIXYXIYYYX",
            "YYIXXYYZYIY",
        ],
        classical: &["ZIIIIIIIXII", "IZIIIIIIXII"],
        checksum: 0x7b84_10c7_82ca_3b42,
    },
];

/// FNV-1a over the rows, each terminated by a newline, with a `|` between
/// the quantum and classical sections.
pub fn table_checksum(quantum: &[&str], classical: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    for row in quantum {
        row.bytes().for_each(&mut eat);
        eat(b'\n');
    }
    eat(b'|');
    for row in classical {
        row.bytes().for_each(&mut eat);
        eat(b'\n');
    }
    h
}

pub fn seed_table(a: usize) -> Result<&'static SeedTable> {
    SEEDS
        .iter()
        .find(|s| s.a == a)
        .ok_or_else(|| Error::InvalidFamilyParameter(format!("no seed code of length {a}")))
}

/// The distance-3 hybrid seed code of length `a` in `{7, 9, 10, 11}`.
pub fn seed_code(a: usize) -> Result<HybridCode> {
    let t = seed_table(a)?;
    HybridCode::from_strings(t.quantum, t.classical)
}

/// Qubit blocks of a pasted code, in position order `U_m, ..., U_1, V_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PastingLayout {
    pub m: usize,
    pub a: usize,
    pub n: usize,
    /// `(k, start, len)` for each `U_k`, `k = m` down to `1`.
    pub u_blocks: Vec<(usize, usize, usize)>,
    /// `(start, len)` of `V_a`.
    pub v_block: (usize, usize),
}

impl PastingLayout {
    pub fn new(m: usize, a: usize) -> Result<Self> {
        if m == 0 || m > 12 {
            return Err(Error::InvalidFamilyParameter(format!(
                "pasting needs 1 <= m <= 12, got {m}"
            )));
        }
        seed_table(a)?;
        let mut start = 0;
        let mut u_blocks = Vec::with_capacity(m);
        for k in (1..=m).rev() {
            let len = 1usize << (2 * k + 3);
            u_blocks.push((k, start, len));
            start += len;
        }
        let n = start + a;
        debug_assert_eq!(n, ((1usize << (2 * m + 5)) - 32) / 3 + a);
        Ok(PastingLayout {
            m,
            a,
            n,
            u_blocks,
            v_block: (start, a),
        })
    }

    /// Number of quantum generator rows, `2m + 5`.
    pub fn quantum_rows(&self) -> usize {
        2 * self.m + 5
    }

    /// First row occupied by block `U_k`; its `2k + 5` rows run to the end.
    pub fn first_row_of(&self, k: usize) -> usize {
        2 * (self.m - k)
    }
}

/// Pastes Gottesman blocks `U_m, ..., U_1` onto the seed code of length
/// `a`. Each block's generators `X_U, Z_U, S_1, ..., S_j` are bottom-aligned
/// in the `2m + 5` quantum rows, and the seed's five quantum rows occupy the
/// last five. The seed's classical rows become the classical generators.
pub fn paste(m: usize, a: usize) -> Result<HybridCode> {
    let layout = PastingLayout::new(m, a)?;
    let n = layout.n;
    let rows = layout.quantum_rows();
    let mut x = vec![Bits::zeros(n); rows];
    let mut z = vec![Bits::zeros(n); rows];
    let mut place = |row: usize, g: &PauliOperator, start: usize| {
        for q in g.x().iter_ones() {
            x[row].set(start + q, true);
        }
        for q in g.z().iter_ones() {
            z[row].set(start + q, true);
        }
    };
    for &(k, start, _) in &layout.u_blocks {
        let block = gottesman(2 * k + 3)?;
        let first = layout.first_row_of(k);
        for (i, g) in block.group.generators().iter().enumerate() {
            place(first + i, g, start);
        }
    }
    let seed = seed_code(a)?;
    let (v_start, _) = layout.v_block;
    for (i, g) in seed.quantum_stabilizer().generators().iter().enumerate() {
        place(rows - 5 + i, g, v_start);
    }
    let quantum = x
        .into_iter()
        .zip(z)
        .map(|(x, z)| PauliOperator::hermitian(x, z))
        .collect();
    let positions: Vec<usize> = (v_start..v_start + a).collect();
    let classical = seed
        .classical_generators()
        .iter()
        .map(|g| g.embed(n, &positions))
        .collect();
    HybridCode::new(quantum, classical)
}

/// `ceil(log2(v))` for `v >= 1`.
fn ceil_log2(v: u128) -> u32 {
    if v <= 1 {
        0
    } else {
        128 - (v - 1).leading_zeros()
    }
}

/// Whether `n = 8(4^k - 1)/3 + b` for some `k >= 1`, `b ∈ {-1, 1, 2}`.
pub fn has_special_length(n: usize) -> bool {
    let n = n as i128;
    let mut k = 1u32;
    loop {
        let base = 8 * (4i128.pow(k) - 1) / 3;
        if base - 1 > n {
            return false;
        }
        if [-1, 1, 2].iter().any(|b| base + b == n) {
            return true;
        }
        k += 1;
    }
}

/// True iff a distance-3 qubit stabilizer code of length `n` with `s`
/// generators is ruled out by the Hamming-type count, strengthened by one
/// at the special lengths.
pub fn yu_excludes_stabilizer(n: usize, s: usize) -> bool {
    let need = ceil_log2(3 * n as u128 + 1) as usize;
    let need = if has_special_length(n) { need + 1 } else { need };
    s < need
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{enumerate_paulis, PauliKind};

    #[test]
    fn dist2_small_cases() {
        let h = dist2_family(5).unwrap();
        assert_eq!(h.params(), (5, 2, 1));
        let d = h.distance(3).unwrap();
        assert_eq!(d.exact(), Some(2));
        let w = d.witness().unwrap();
        assert!(w.x().count_ones() == 2 && w.z().is_zero(), "{w}");
        assert_eq!(dist2_family(4).unwrap_err(), Error::EvenLengthRejected(4));
        assert!(dist2_family(1).is_err());
    }

    #[test]
    fn gottesman_eight() {
        let g = gottesman(3).unwrap();
        assert_eq!(g.group.num_qubits(), 8);
        assert_eq!(g.group.rank(), 5);
        assert_eq!(g.convention, BitOrder::Msb);
    }

    #[test]
    fn seed_checksums_match() {
        for t in &SEEDS {
            assert_eq!(table_checksum(t.quantum, t.classical), t.checksum, "a={}", t.a);
        }
    }

    #[test]
    fn seed_parameters() {
        for (a, k, m) in [(7, 1, 1), (9, 2, 2), (10, 3, 2), (11, 4, 2)] {
            let h = seed_code(a).unwrap();
            assert_eq!(h.params(), (a, k, m));
        }
    }

    #[test]
    fn pasting_layout_sizes() {
        let l = PastingLayout::new(1, 7).unwrap();
        assert_eq!(l.n, 39);
        assert_eq!(l.u_blocks, vec![(1, 0, 32)]);
        let l = PastingLayout::new(2, 11).unwrap();
        assert_eq!(l.n, 171);
        assert_eq!(l.first_row_of(2), 0);
        assert_eq!(l.first_row_of(1), 2);
        assert!(PastingLayout::new(1, 8).is_err());
    }

    #[test]
    fn pasted_39() {
        let h = paste(1, 7).unwrap();
        assert_eq!(h.params(), (39, 31, 1));
        for e in enumerate_paulis(39, 1).unwrap() {
            assert!(h.is_detectable(&e).unwrap());
        }
    }

    #[test]
    fn yu_examples() {
        assert!(yu_excludes_stabilizer(39, 7));
        assert!(yu_excludes_stabilizer(43, 7));
        assert!(!yu_excludes_stabilizer(40, 8));
        assert!(has_special_length(7) && has_special_length(42) && !has_special_length(43));
    }
    #[test]
    fn gottesman_four_fails_both_orders() {
        assert_eq!(gottesman(4).unwrap_err(), Error::DistanceVerificationFailed { j: 4 });
        assert_eq!(gottesman(5).unwrap().group.rank(), 7);
    }

    #[test]
    fn pasted_m1_weight_two_scan() {
        for a in [7, 9, 11] {
            let h = paste(1, a).unwrap();
            assert!(matches!(h.distance(2).unwrap(), crate::Distance::AtLeast(3)), "a={a}");
        }
        // The length-10 seed has Z_2 X_9 in S0 through quantum rows, so it
        // survives pasting as an undetectable error.
        let h = paste(1, 10).unwrap();
        let d = h.distance(2).unwrap();
        assert_eq!(d.exact(), Some(2));
        assert_eq!(d.witness().unwrap().body_string()[32..], *"IZIIIIIIXI");
    }

    #[test]
    fn syndrome_prefix_on_u_blocks() {
        for (m, a) in [(1, 7), (1, 11), (2, 7)] {
            let h = paste(m, a).unwrap();
            let layout = PastingLayout::new(m, a).unwrap();
            let gens = h.quantum_stabilizer().generators();
            for &(k, start, len) in &layout.u_blocks {
                let first = layout.first_row_of(k);
                for q in start..start + len {
                    for kind in [PauliKind::X, PauliKind::Y, PauliKind::Z] {
                        let e = PauliOperator::single(layout.n, q, kind);
                        let syn: Vec<bool> =
                            gens.iter().map(|g| !g.commutes(&e).unwrap()).collect();
                        assert!(syn[..first].iter().all(|b| !b));
                        assert!(syn[first..].iter().any(|&b| b));
                    }
                }
            }
        }
    }

    #[test]
    fn family_lengths_beat_stabilizer_codes() {
        for m in 1..=3 {
            for a in SEED_LENGTHS {
                let n = PastingLayout::new(m, a).unwrap().n;
                assert!(yu_excludes_stabilizer(n, 2 * m + 5), "m={m} a={a}");
            }
        }
    }

    #[test]
    fn dist2_family_invariants() {
        for n in (5..=15).step_by(2) {
            let h = dist2_family(n).unwrap();
            assert_eq!(h.params(), (n, n - 3, 1));
            assert_eq!(h.distance(2).unwrap().exact(), Some(2));
            match h.inner_degenerate(2).unwrap() {
                crate::Degeneracy::Degenerate(p) => assert_eq!(p.weight(), 1),
                other => panic!("{other:?}"),
            }
        }
    }
}
