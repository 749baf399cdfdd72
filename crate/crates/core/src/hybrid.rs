//! Hybrid stabilizer codes `[[n, k : m]]` and unions of orthogonal
//! stabilizer codes.
//!
//! A hybrid code is a quantum stabilizer `S_Q` plus `m` classical
//! generators. Message `c` selects the inner code whose stabilizer is
//! `S_Q` together with `(-1)^{c_i} g_i`. All inner codes share the unsigned
//! group `S0 = <S_Q, S_C>`.
//!
//! Detectability. Let `P_a` project onto inner code `a` and `P` onto the
//! `S_Q` code. For a Pauli `E`:
//!
//! * if `E` anticommutes with some `s` in `S_Q`, then `E P = P' E P` with
//!   `P'` orthogonal to `P`, so every `P_b E P_a` vanishes;
//! * if `E` commutes with `S_Q` but anticommutes with a classical
//!   generator, `E` maps inner code `a` onto a different inner code `b`,
//!   so `P_b E P_a != 0` for `a != b`;
//! * if `E` lies in the centralizer of `S0` but outside `S0`, it acts as a
//!   nontrivial logical operator inside each inner code;
//! * if `E` is (up to phase) an element of `S0`, it acts on inner code `a`
//!   as the scalar given by its sign there, which may depend on `a`.
//!
//! Hence `E` is undetectable iff it commutes with `S_Q` and is not in `S0`.
//! The dense oracle checks this equivalence independently in the tests.

use crate::bits::{self, Bits};
use crate::dense::{kl_check_bases, CodeBasis, KlOutcome};
use crate::error::{Error, Result};
use crate::pauli::{enumerate_paulis, PauliOperator};
use crate::stabilizer::{
    intersect, min_weight_outside, scan_weight, MinWeight, StabilizerGroup, SyndromeTable,
};

use rayon::prelude::*;

/// Default cap on `m` for [`HybridCode::as_union`].
pub const DEFAULT_UNION_LIMIT: usize = 12;
/// Default qubit limit for dense computations.
pub const DEFAULT_DENSE_LIMIT: usize = 12;

/// Outcome of a bounded distance computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distance {
    Exact { d: usize, witness: PauliOperator },
    AtLeast(usize),
}

impl Distance {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Distance::Exact { d, .. } => Some(*d),
            Distance::AtLeast(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&PauliOperator> {
        match self {
            Distance::Exact { witness, .. } => Some(witness),
            Distance::AtLeast(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    /// Lowest-weight nonidentity element of `S0` below the given distance.
    Degenerate(PauliOperator),
    Nondegenerate,
}

#[derive(Clone, Debug)]
pub struct HybridCode {
    n: usize,
    quantum: StabilizerGroup,
    classical: Vec<PauliOperator>,
    inner: StabilizerGroup,
}

impl HybridCode {
    /// Builds a code from quantum and classical generators. Either list may
    /// be empty, but not both. The joint list must form a valid stabilizer
    /// group; errors index into the concatenated list.
    pub fn new(quantum: Vec<PauliOperator>, classical: Vec<PauliOperator>) -> Result<Self> {
        let all: Vec<PauliOperator> = quantum.iter().chain(&classical).cloned().collect();
        let inner = StabilizerGroup::build(all)?;
        let n = inner.num_qubits();
        let quantum = if quantum.is_empty() {
            StabilizerGroup::trivial(n)
        } else {
            StabilizerGroup::build(quantum)?
        };
        Ok(HybridCode {
            n,
            quantum,
            classical,
            inner,
        })
    }

    pub fn from_strings<S: AsRef<str>>(quantum: &[S], classical: &[S]) -> Result<Self> {
        let parse = |rows: &[S]| {
            rows.iter()
                .map(|s| s.as_ref().parse())
                .collect::<Result<Vec<PauliOperator>>>()
        };
        Self::new(parse(quantum)?, parse(classical)?)
    }

    /// A plain stabilizer code viewed as a hybrid code with `m = 0`.
    pub fn from_stabilizer(q: &StabilizerGroup) -> Self {
        HybridCode {
            n: q.num_qubits(),
            quantum: q.clone(),
            classical: Vec::new(),
            inner: q.clone(),
        }
    }

    /// Demotes the first `m` logical operators of `q` (in the order of
    /// [`StabilizerGroup::logical_pairs`]) to classical generators.
    pub fn from_quantum(q: &StabilizerGroup, m: usize) -> Result<Self> {
        let k = q.num_qubits() - q.rank();
        if m > k {
            return Err(Error::InsufficientLogicals {
                available: k,
                requested: m,
            });
        }
        if m == 0 {
            return Ok(Self::from_stabilizer(q));
        }
        let classical = q
            .logical_pairs()
            .into_iter()
            .take(m)
            .map(|(a, _)| a)
            .collect();
        Self::new(q.generators().to_vec(), classical)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.inner.rank()
    }

    pub fn m(&self) -> usize {
        self.classical.len()
    }

    /// `(n, k, m)`.
    pub fn params(&self) -> (usize, usize, usize) {
        (self.n, self.k(), self.m())
    }

    pub fn quantum_stabilizer(&self) -> &StabilizerGroup {
        &self.quantum
    }

    pub fn classical_generators(&self) -> &[PauliOperator] {
        &self.classical
    }

    /// `S0`: the inner code for the all-zero message.
    pub fn inner_stabilizer(&self) -> &StabilizerGroup {
        &self.inner
    }

    pub fn inner_code(&self, c: &[bool]) -> Result<StabilizerGroup> {
        if c.len() != self.m() {
            return Err(Error::MessageLengthMismatch {
                expected: self.m(),
                found: c.len(),
            });
        }
        let mut gens = self.quantum.generators().to_vec();
        for (g, &flip) in self.classical.iter().zip(c) {
            gens.push(if flip { g.clone().negated() } else { g.clone() });
        }
        if gens.is_empty() {
            return Ok(StabilizerGroup::trivial(self.n));
        }
        StabilizerGroup::build(gens)
    }

    pub fn as_union(&self) -> Result<StabilizerUnionCode> {
        self.as_union_with_limit(DEFAULT_UNION_LIMIT)
    }

    /// The `2^m` inner codes, messages in lexicographic order.
    pub fn as_union_with_limit(&self, limit: usize) -> Result<StabilizerUnionCode> {
        let m = self.m();
        if m > limit {
            return Err(Error::TooManyInnerCodes { m, limit });
        }
        let inner = (0..1usize << m)
            .map(|t| {
                let c: Vec<bool> = (0..m).map(|i| (t >> (m - 1 - i)) & 1 == 1).collect();
                self.inner_code(&c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StabilizerUnionCode { n: self.n, inner })
    }

    pub fn is_detectable(&self, e: &PauliOperator) -> Result<bool> {
        if !self.quantum.commutes_with_all(e)? {
            return Ok(true);
        }
        Ok(self.inner.row_space().contains(e.x(), e.z()))
    }

    /// Least weight of an undetectable Pauli, searched up to `w_max`.
    pub fn distance(&self, w_max: usize) -> Result<Distance> {
        Ok(
            match min_weight_outside(&self.quantum, &self.inner, w_max)? {
                MinWeight::Found { weight, witness } => Distance::Exact { d: weight, witness },
                MinWeight::NoneUpTo(w) => Distance::AtLeast(w + 1),
            },
        )
    }

    /// Whether `S0` has a nonidentity element of weight below `d`.
    pub fn inner_degenerate(&self, d: usize) -> Result<Degeneracy> {
        // S0 is the centralizer of its own centralizer.
        let table = SyndromeTable::new(self.n, &self.inner.centralizer_basis());
        for w in 1..d.min(self.n + 1) {
            if let Some(v) = scan_weight(&table, w, &|_| true) {
                let signed = self
                    .inner
                    .signed_element(v.x(), v.z())
                    .expect("scan result lies in S0");
                return Ok(Degeneracy::Degenerate(signed));
            }
        }
        Ok(Degeneracy::Nondegenerate)
    }

    /// Appends `n2` qubits carrying the classical code generated by the rows
    /// of `g`: Z-type checks of the dual code join `S_Q`, and Z-type unit
    /// vectors completing the dual (lowest index first) become classical
    /// generators.
    pub fn tensor_classical(&self, g: &[Bits]) -> Result<HybridCode> {
        let Some(first) = g.first() else {
            return Err(Error::EmptyClassicalCode);
        };
        let n2 = first.len();
        if g.iter().any(|r| r.len() != n2) {
            return Err(Error::QubitCountMismatch {
                expected: n2,
                found: g.iter().map(Bits::len).find(|&l| l != n2).unwrap_or(n2),
            });
        }
        if n2 == 0 || bits::rank(g, n2) < g.len() {
            return Err(Error::RankDeficientClassicalCode);
        }
        let z_type = |v: &Bits| PauliOperator::hermitian(Bits::zeros(n2), v.clone());
        let pad = PauliOperator::identity(n2);
        let lift = PauliOperator::identity(self.n);

        let dual = bits::kernel(g, n2);
        let mut span: Vec<Bits> = dual.clone();
        let mut completion = Vec::new();
        for i in 0..n2 {
            let e = Bits::from_positions(n2, &[i]);
            let mut trial = span.clone();
            trial.push(e.clone());
            if bits::rank(&trial, n2) == trial.len() {
                span = trial;
                completion.push(e);
            }
        }

        let mut quantum: Vec<PauliOperator> = self
            .quantum
            .generators()
            .iter()
            .map(|s| s.tensor(&pad))
            .collect();
        quantum.extend(dual.iter().map(|v| lift.tensor(&z_type(v))));
        let mut classical: Vec<PauliOperator> =
            self.classical.iter().map(|s| s.tensor(&pad)).collect();
        classical.extend(completion.iter().map(|v| lift.tensor(&z_type(v))));
        if quantum.is_empty() && classical.is_empty() {
            return Err(Error::EmptyGeneratorList);
        }
        HybridCode::new(quantum, classical)
    }
}

/// `M` pairwise orthogonal stabilizer codes of equal length and rank.
#[derive(Clone, Debug)]
pub struct StabilizerUnionCode {
    n: usize,
    inner: Vec<StabilizerGroup>,
}

impl StabilizerUnionCode {
    pub fn new(inner: Vec<StabilizerGroup>) -> Result<Self> {
        let Some(first) = inner.first() else {
            return Err(Error::EmptyGeneratorList);
        };
        let (n, r) = (first.num_qubits(), first.rank());
        if inner.iter().any(|s| s.num_qubits() != n || s.rank() != r) {
            return Err(Error::InconsistentInnerCodes);
        }
        for a in 0..inner.len() {
            for b in a + 1..inner.len() {
                if !orthogonal_pair(&inner[a], &inner[b])? {
                    return Err(Error::NotOrthogonal(a, b));
                }
            }
        }
        Ok(StabilizerUnionCode { n, inner })
    }

    pub fn from_hybrid(h: &HybridCode) -> Result<Self> {
        h.as_union()
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn inner_codes(&self) -> &[StabilizerGroup] {
        &self.inner
    }

    /// Number of inner codes `M`.
    pub fn num_codes(&self) -> usize {
        self.inner.len()
    }

    /// Logical qubits per inner code.
    pub fn k(&self) -> usize {
        self.n - self.inner[0].rank()
    }

    /// Brute-force hybrid Knill-Laflamme scan over all Paulis of weight
    /// `1..=w_max`, using explicit code bases.
    pub fn union_distance_dense(&self, w_max: usize) -> Result<Distance> {
        self.union_distance_dense_with_limit(w_max, DEFAULT_DENSE_LIMIT)
    }

    pub fn union_distance_dense_with_limit(&self, w_max: usize, limit: usize) -> Result<Distance> {
        if self.n > limit {
            return Err(Error::DenseLimitExceeded { n: self.n, limit });
        }
        let bases: Vec<CodeBasis> = self
            .inner
            .iter()
            .map(|s| CodeBasis::new(s, limit))
            .collect::<Result<_>>()?;
        for w in 1..=w_max.min(self.n) {
            let errors: Vec<PauliOperator> = enumerate_paulis(self.n, w)?.collect();
            let hit = errors.par_iter().find_map_first(|e| {
                match kl_check_bases(&bases, e) {
                    KlOutcome::Detectable(_) => None,
                    KlOutcome::Undetectable(_) => Some(e.clone()),
                }
            });
            if let Some(witness) = hit {
                return Ok(Distance::Exact { d: w, witness });
            }
        }
        Ok(Distance::AtLeast(w_max + 1))
    }
}

/// Whether the code spaces of `sa` and `sb` are orthogonal:
/// `Tr(P_a P_b) = 2^{n - r_a - r_b} * sum over the unsigned intersection of
/// sign_a * sign_b`, and that sum vanishes iff some basis sign differs.
pub fn orthogonal_pair(sa: &StabilizerGroup, sb: &StabilizerGroup) -> Result<bool> {
    Ok(intersect(sa, sb)?.signed_trace_sum() == 0)
}

/// Dimension of the space of detectable operators, `q^{2n} - (MK)^2 + M`.
pub fn detectable_dimension(n: u32, k_dim: u64, m_count: u64, q: u64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let space = BigInt::from(q).pow(2 * n);
    let km = BigInt::from(k_dim) * BigInt::from(m_count);
    space - &km * &km + BigInt::from(m_count)
}
