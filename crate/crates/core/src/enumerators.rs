//! Weight enumerators of unions of stabilizer codes, Krawtchouk
//! polynomials, the MacWilliams transform and shadow sums.
//!
//! For inner codes `S_a`, `S_b` of rank `r` on `n` qubits, write
//! `I = S̄_a ∩ S̄_b` for the intersection of their unsigned groups and
//! `ratio(v) = sign_b(v) / sign_a(v)` for `v` in `I`; `ratio` is a
//! character of `I`. Expanding `P_a = 2^{-r} Σ_{s ∈ S_a} s`:
//!
//! * `Tr(E P_a)` is nonzero only when `E` is proportional to an element of
//!   `S_a`, so `A^{(a,b)}_d = Σ_{v ∈ I, wt v = d} ratio(v)`;
//! * `E P_a E^† = 2^{-r} Σ χ_E(s) s` with `χ_E(s) = ±1` the commutation sign,
//!   and `Tr(s t) = 0` unless `s`, `t` share an unsigned vector, which gives
//!   `Tr(E P_a E^† P_b) = 2^{n-2r} Σ_{v ∈ I} χ_E(v) ratio(v)`.
//!
//! The last sum is a character sum over `I`: it is `2^{rank I}` when `χ_E`
//! equals `ratio` on a basis of `I` and zero otherwise. So
//! `B^{(a,b)}_d = 2^{rank I - r} · #{E : wt E = d, syndrome of E against
//! the basis = the ratio pattern}`, counted by a dynamic program over
//! qubits. This does not route through the MacWilliams identity, so the
//! identity remains an independent check.

use std::collections::HashMap;
use std::ops::AddAssign;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::hybrid::StabilizerUnionCode;
use crate::pauli::PauliKind;
use crate::stabilizer::{intersect, Intersection};

/// Largest intersection rank the enumerators will handle.
pub const MAX_INTERSECTION_RANK: usize = 26;

/// Per-pair weight distributions of a union code, `[a][b][d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistributionSet {
    n: usize,
    k_dim: BigRational,
    a: Vec<Vec<Vec<BigRational>>>,
    b: Vec<Vec<Vec<BigRational>>>,
}

/// Averages over the diagonal pair class `(a,a)` and the off-diagonal class
/// `(a,b), a != b`. The off-diagonal entries are `None` when `M = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAverages {
    pub a_diag: Vec<BigRational>,
    pub b_diag: Vec<BigRational>,
    pub a_off: Option<Vec<BigRational>>,
    pub b_off: Option<Vec<BigRational>>,
}

impl WeightDistributionSet {
    pub fn new(
        n: usize,
        k_dim: BigRational,
        a: Vec<Vec<Vec<BigRational>>>,
        b: Vec<Vec<Vec<BigRational>>>,
    ) -> Self {
        WeightDistributionSet { n, k_dim, a, b }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inner code dimension `K`.
    pub fn k_dim(&self) -> &BigRational {
        &self.k_dim
    }

    /// Number of inner codes `M`.
    pub fn m_count(&self) -> usize {
        self.a.len()
    }

    pub fn pair_a(&self, a: usize, b: usize) -> &[BigRational] {
        &self.a[a][b]
    }

    pub fn pair_b(&self, a: usize, b: usize) -> &[BigRational] {
        &self.b[a][b]
    }

    /// `A = M^{-2} Σ_{a,b} A^{(a,b)}`, `B = M^{-1} Σ_{a,b} B^{(a,b)}`.
    pub fn aggregate(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        let m = BigRational::from_integer(BigInt::from(self.m_count()));
        let sum = |table: &Vec<Vec<Vec<BigRational>>>| {
            let mut acc = vec![BigRational::zero(); self.n + 1];
            for row in table {
                for seq in row {
                    for (x, v) in acc.iter_mut().zip(seq) {
                        *x += v;
                    }
                }
            }
            acc
        };
        let a = sum(&self.a).into_iter().map(|x| x / (&m * &m)).collect();
        let b = sum(&self.b).into_iter().map(|x| x / &m).collect();
        (a, b)
    }

    pub fn class_averages(&self) -> ClassAverages {
        let m = self.m_count();
        let avg = |table: &Vec<Vec<Vec<BigRational>>>, diag: bool| {
            let mut acc = vec![BigRational::zero(); self.n + 1];
            let mut count = 0i64;
            for (i, row) in table.iter().enumerate() {
                for (j, seq) in row.iter().enumerate() {
                    if (i == j) == diag {
                        count += 1;
                        for (x, v) in acc.iter_mut().zip(seq) {
                            *x += v;
                        }
                    }
                }
            }
            let c = BigRational::from_integer(count.into());
            acc.into_iter().map(|x| x / &c).collect::<Vec<_>>()
        };
        ClassAverages {
            a_diag: avg(&self.a, true),
            b_diag: avg(&self.b, true),
            a_off: (m > 1).then(|| avg(&self.a, false)),
            b_off: (m > 1).then(|| avg(&self.b, false)),
        }
    }
}

/// `K_j(r) = Σ_k (-1)^k (q²-1)^{j-k} C(r,k) C(n-r,j-k)`.
pub fn krawtchouk(q: u32, n: usize, j: usize, r: usize) -> Result<BigInt> {
    if j > n || r > n {
        return Err(Error::KrawtchoukRange { n, j, r });
    }
    let base = BigInt::from(q as u64 * q as u64 - 1);
    let mut total = BigInt::zero();
    for k in 0..=j.min(r) {
        if j - k > n - r {
            continue;
        }
        let term = binomial(r, k) * binomial(n - r, j - k) * num_traits::pow(base.clone(), j - k);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All `K_j(r)` for one `(q, n)`.
#[derive(Clone, Debug)]
pub struct KrawtchoukTable {
    q: u32,
    n: usize,
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(q: u32, n: usize) -> Self {
        let values = (0..=n)
            .map(|j| {
                (0..=n)
                    .map(|r| krawtchouk(q, n, j, r).expect("indices in range"))
                    .collect()
            })
            .collect();
        KrawtchoukTable { q, n, values }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, r: usize) -> &BigInt {
        &self.values[j][r]
    }
}

/// `B_j = (K / q^n) Σ_r K_j(r) A_r`.
pub fn macwilliams(a: &[BigRational], k_dim: &BigRational, q: u32, n: usize) -> Vec<BigRational> {
    assert_eq!(a.len(), n + 1, "sequence length must be n + 1");
    let table = KrawtchoukTable::new(q, n);
    macwilliams_with(&table, a, k_dim)
}

pub fn macwilliams_with(
    table: &KrawtchoukTable,
    a: &[BigRational],
    k_dim: &BigRational,
) -> Vec<BigRational> {
    let n = table.n;
    let qn = BigRational::from_integer(num_traits::pow(BigInt::from(table.q), n));
    let factor = k_dim / qn;
    (0..=n)
        .map(|j| {
            let s: BigRational = (0..=n)
                .map(|r| BigRational::from_integer(table.get(j, r).clone()) * &a[r])
                .sum();
            s * &factor
        })
        .collect()
}

/// `S_j = Σ_r (-1)^r K_j(r) A_r`, qubits only.
pub fn shadow_values(a: &[BigRational], q: u32, n: usize) -> Result<Vec<BigRational>> {
    if q != 2 {
        return Err(Error::ShadowUndefined(q));
    }
    assert_eq!(a.len(), n + 1, "sequence length must be n + 1");
    let table = KrawtchoukTable::new(q, n);
    Ok(shadow_values_with(&table, a))
}

pub fn shadow_values_with(table: &KrawtchoukTable, a: &[BigRational]) -> Vec<BigRational> {
    let n = table.n;
    (0..=n)
        .map(|j| {
            (0..=n)
                .map(|r| {
                    let t = BigRational::from_integer(table.get(j, r).clone()) * &a[r];
                    if r % 2 == 1 {
                        -t
                    } else {
                        t
                    }
                })
                .sum()
        })
        .collect()
}

/// Largest `d` such that for every `j < d`, `A^{(a,a)}_j = B^{(a,a)}_j` for
/// all `a` and `B^{(a,b)}_j = 0` for all `a != b`. Capped at `n + 1`.
pub fn distance_from_enumerators(w: &WeightDistributionSet) -> usize {
    let m = w.m_count();
    for j in 0..=w.n {
        for a in 0..m {
            for b in 0..m {
                let ok = if a == b {
                    w.a[a][a][j] == w.b[a][a][j]
                } else {
                    w.b[a][b][j].is_zero()
                };
                if !ok {
                    return j;
                }
            }
        }
    }
    w.n + 1
}

/// Counts `[syndrome][weight]` of phase-free Paulis against a basis.
type SyndromeCounts = Arc<Vec<Vec<BigUint>>>;

/// Computes group-theoretic enumerators, sharing the syndrome counts
/// between pairs whose intersections coincide.
#[derive(Default)]
pub struct EnumeratorEngine {
    cache: Mutex<HashMap<Vec<(Bits, Bits)>, SyndromeCounts>>,
}

impl EnumeratorEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(A^{(a,b)}, B^{(a,b)})` for inner codes `a`, `b` of `u`.
    pub fn pair_distributions(
        &self,
        u: &StabilizerUnionCode,
        a: usize,
        b: usize,
    ) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
        let sa = &u.inner_codes()[a];
        let sb = &u.inner_codes()[b];
        let n = u.num_qubits();
        let r = sa.rank();
        let inter = intersect(sa, sb)?;
        let ri = inter.rank();
        if ri > MAX_INTERSECTION_RANK {
            return Err(Error::CapExceeded {
                rank: ri,
                cap: 1u64 << MAX_INTERSECTION_RANK,
            });
        }

        let a_counts = signed_weight_counts(&inter, n);
        let a_seq = a_counts
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect();

        let counts = self.syndrome_counts(&inter, n);
        let target = (0..ri).fold(0usize, |acc, i| acc | (inter.sign_differs(i) as usize) << i);
        let scale = if ri >= r {
            BigRational::from_integer(BigInt::one() << (ri - r))
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (r - ri))
        };
        let b_seq = counts[target]
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(c.clone())) * &scale)
            .collect();
        Ok((a_seq, b_seq))
    }

    /// Every pair of `u`.
    pub fn distributions(&self, u: &StabilizerUnionCode) -> Result<WeightDistributionSet> {
        let m = u.num_codes();
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect();
        let results = pairs
            .par_iter()
            .map(|&(a, b)| self.pair_distributions(u, a, b))
            .collect::<Result<Vec<_>>>()?;
        let mut a_tab = vec![vec![Vec::new(); m]; m];
        let mut b_tab = vec![vec![Vec::new(); m]; m];
        for ((a, b), (sa, sb)) in pairs.into_iter().zip(results) {
            a_tab[a][b] = sa;
            b_tab[a][b] = sb;
        }
        let k_dim = BigRational::from_integer(BigInt::one() << u.k());
        Ok(WeightDistributionSet::new(u.num_qubits(), k_dim, a_tab, b_tab))
    }

    fn syndrome_counts(&self, inter: &Intersection, n: usize) -> SyndromeCounts {
        let key: Vec<(Bits, Bits)> = inter
            .basis
            .iter()
            .map(|v| (v.x().clone(), v.z().clone()))
            .collect();
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let counts = Arc::new(compute_syndrome_counts(inter, n));
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, counts.clone());
        counts
    }
}

/// Convenience wrapper with a fresh engine.
pub fn pair_distributions(
    u: &StabilizerUnionCode,
    a: usize,
    b: usize,
) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    EnumeratorEngine::new().pair_distributions(u, a, b)
}

/// Convenience wrapper with a fresh engine.
pub fn distributions(u: &StabilizerUnionCode) -> Result<WeightDistributionSet> {
    EnumeratorEngine::new().distributions(u)
}

/// `Σ_{v ∈ I, wt v = d} ratio(v)` for every `d`, by Gray-code walk.
fn signed_weight_counts(inter: &Intersection, n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n + 1];
    let mut x = Bits::zeros(n);
    let mut z = Bits::zeros(n);
    let mut negative = false;
    out[0] += 1;
    let total = 1u64 << inter.rank();
    for i in 1..total {
        let flip = i.trailing_zeros() as usize;
        let v = &inter.basis[flip];
        x.xor_assign(v.x());
        z.xor_assign(v.z());
        negative ^= inter.sign_differs(flip);
        out[x.or_count(&z)] += if negative { -1 } else { 1 };
    }
    out
}

fn compute_syndrome_counts(inter: &Intersection, n: usize) -> Vec<Vec<BigUint>> {
    // 4^n fits in u128 up to n = 63
    if n <= 63 {
        dp::<u128>(inter, n)
            .into_iter()
            .map(|row| row.into_iter().map(BigUint::from).collect())
            .collect()
    } else {
        dp::<BigUint>(inter, n)
    }
}

fn dp<T>(inter: &Intersection, n: usize) -> Vec<Vec<T>>
where
    T: Clone + Zero + One + Send + Sync + for<'a> AddAssign<&'a T>,
{
    let states = 1usize << inter.rank();
    // syndrome of each single-qubit Pauli against the basis
    let patterns: Vec<[usize; 3]> = (0..n)
        .map(|q| {
            let mut pat = [0usize; 3];
            for (ki, kind) in PauliKind::ALL.iter().enumerate() {
                let (ex, ez) = kind.bits();
                for (i, v) in inter.basis.iter().enumerate() {
                    if (ex & v.z().get(q)) ^ (ez & v.x().get(q)) {
                        pat[ki] |= 1 << i;
                    }
                }
            }
            pat
        })
        .collect();
    let mut cur: Vec<Vec<T>> = vec![vec![T::zero(); n + 1]; states];
    cur[0][0] = T::one();
    for (q, pat) in patterns.iter().enumerate() {
        let next: Vec<Vec<T>> = (0..states)
            .into_par_iter()
            .map(|s| {
                let mut row = cur[s].clone();
                for &p in pat {
                    let src = &cur[s ^ p];
                    for w in 1..=q + 1 {
                        row[w] += &src[w - 1];
                    }
                }
                row
            })
            .collect();
        cur = next;
    }
    cur
}

/// True iff every entry is `>= 0`.
pub fn all_nonnegative(v: &[BigRational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
