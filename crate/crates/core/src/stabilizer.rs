//! Stabilizer groups over the symplectic GF(2) representation.
//!
//! A group is kept as its signed generators plus a reduced echelon basis of
//! the unsigned row space. Every echelon row remembers which generators it
//! was built from, so the signed element for any vector in the row space is
//! recovered by multiplying those generators again.

use rayon::prelude::*;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliOperator};

/// Default cap on the number of elements `enumerate_group` will produce.
pub const DEFAULT_GROUP_CAP: u64 = 1 << 26;

#[derive(Clone, Debug)]
struct EchelonRow {
    x: Bits,
    z: Bits,
    pivot: usize,
    combo: Bits,
}

/// Row-reduced span of symplectic vectors, pivots leftmost in `x` then `z`.
#[derive(Clone, Debug)]
pub struct RowSpace {
    n: usize,
    capacity: usize,
    inputs: usize,
    rows: Vec<EchelonRow>,
}

impl RowSpace {
    /// Empty space on `n` qubits accepting up to `capacity` input vectors.
    pub fn new(n: usize, capacity: usize) -> Self {
        RowSpace {
            n,
            capacity,
            inputs: 0,
            rows: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    fn has_col(&self, x: &Bits, z: &Bits, c: usize) -> bool {
        if c < self.n {
            x.get(c)
        } else {
            z.get(c - self.n)
        }
    }

    fn leading(&self, x: &Bits, z: &Bits) -> Option<usize> {
        x.first_one().or_else(|| z.first_one().map(|c| c + self.n))
    }

    fn reduce_in_place(&self, x: &mut Bits, z: &mut Bits, combo: &mut Bits) {
        for row in &self.rows {
            if self.has_col(x, z, row.pivot) {
                x.xor_assign(&row.x);
                z.xor_assign(&row.z);
                combo.xor_assign(&row.combo);
            }
        }
    }

    /// Adds a vector. On linear dependence returns the combination of
    /// earlier inputs that equals it and leaves the space unchanged.
    pub fn push(&mut self, x: &Bits, z: &Bits) -> std::result::Result<(), Bits> {
        assert!(self.inputs < self.capacity, "RowSpace capacity exceeded");
        let mut vx = x.clone();
        let mut vz = z.clone();
        let mut combo = Bits::zeros(self.capacity);
        combo.set(self.inputs, true);
        self.reduce_in_place(&mut vx, &mut vz, &mut combo);
        let Some(pivot) = self.leading(&vx, &vz) else {
            combo.flip(self.inputs);
            return Err(combo);
        };
        let new_row = EchelonRow {
            x: vx,
            z: vz,
            pivot,
            combo,
        };
        for i in 0..self.rows.len() {
            if self.has_col(&self.rows[i].x, &self.rows[i].z, pivot) {
                let row = &mut self.rows[i];
                row.x.xor_assign(&new_row.x);
                row.z.xor_assign(&new_row.z);
                row.combo.xor_assign(&new_row.combo);
            }
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, new_row);
        self.inputs += 1;
        Ok(())
    }

    /// Combination of inputs spanning `(x|z)`, if it lies in the space.
    pub fn reduce(&self, x: &Bits, z: &Bits) -> Option<Bits> {
        let mut vx = x.clone();
        let mut vz = z.clone();
        let mut combo = Bits::zeros(self.capacity);
        self.reduce_in_place(&mut vx, &mut vz, &mut combo);
        (vx.is_zero() && vz.is_zero()).then_some(combo)
    }

    pub fn contains(&self, x: &Bits, z: &Bits) -> bool {
        let mut vx = x.clone();
        let mut vz = z.clone();
        for row in &self.rows {
            if self.has_col(&vx, &vz, row.pivot) {
                vx.xor_assign(&row.x);
                vz.xor_assign(&row.z);
            }
        }
        vx.is_zero() && vz.is_zero()
    }

    /// Reduced basis as Hermitian Pauli representatives.
    pub fn basis(&self) -> Vec<PauliOperator> {
        self.rows
            .iter()
            .map(|r| PauliOperator::hermitian(r.x.clone(), r.z.clone()))
            .collect()
    }
}

/// Result of a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    NotInRowSpace,
    /// The unsigned vector is in the group; the signed element carrying it
    /// has this phase exponent.
    InGroupWithPhase(u8),
}

/// Independent, commuting, Hermitian Pauli generators with `-I` excluded.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    space: RowSpace,
}

impl StabilizerGroup {
    /// The trivial group `{I}`.
    pub fn trivial(n: usize) -> Self {
        StabilizerGroup {
            n,
            generators: Vec::new(),
            space: RowSpace::new(n, 0),
        }
    }

    pub fn build(gens: Vec<PauliOperator>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::EmptyGeneratorList);
        };
        let n = first.num_qubits();
        for g in &gens {
            if g.num_qubits() != n {
                return Err(Error::QubitCountMismatch {
                    expected: n,
                    found: g.num_qubits(),
                });
            }
        }
        for (i, g) in gens.iter().enumerate() {
            if !g.is_hermitian() {
                return Err(Error::NonHermitianGenerator(i));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if gens[i].anticommutes_unchecked(&gens[j]) {
                    return Err(Error::AnticommutingPair(i, j));
                }
            }
        }
        let mut space = RowSpace::new(n, gens.len());
        for (i, g) in gens.iter().enumerate() {
            if let Err(combo) = space.push(g.x(), g.z()) {
                let product = product_of(&gens, &combo, n);
                return Err(if product.phase() == g.phase() {
                    Error::DependentGenerator(i)
                } else {
                    Error::DependentGeneratorWithSignConflict(i)
                });
            }
        }
        Ok(StabilizerGroup {
            n,
            generators: gens,
            space,
        })
    }

    /// Parses one Pauli string per generator.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let gens = rows
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<PauliOperator>>>()?;
        Self::build(gens)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn row_space(&self) -> &RowSpace {
        &self.space
    }

    fn check_len(&self, p: &PauliOperator) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::QubitCountMismatch {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        Ok(())
    }

    /// Signed group element whose unsigned part is `(x|z)`.
    pub fn signed_element(&self, x: &Bits, z: &Bits) -> Option<PauliOperator> {
        let combo = self.space.reduce(x, z)?;
        Some(product_of(&self.generators, &combo, self.n))
    }

    pub fn contains(&self, p: &PauliOperator) -> Result<Membership> {
        self.check_len(p)?;
        Ok(match self.signed_element(p.x(), p.z()) {
            Some(e) => Membership::InGroupWithPhase(e.phase()),
            None => Membership::NotInRowSpace,
        })
    }

    /// True iff `p` (with its phase) is an element of the signed group.
    pub fn contains_signed(&self, p: &PauliOperator) -> Result<bool> {
        Ok(self.contains(p)? == Membership::InGroupWithPhase(p.phase()))
    }

    pub fn commutes_with_all(&self, p: &PauliOperator) -> Result<bool> {
        self.check_len(p)?;
        Ok(self
            .generators
            .iter()
            .all(|g| !g.anticommutes_unchecked(p)))
    }

    /// Basis of the symplectic complement of the row space: `2n - r`
    /// Hermitian operators commuting with every generator.
    pub fn centralizer_basis(&self) -> Vec<PauliOperator> {
        let n = self.n;
        // (z_g | x_g) . (x | z) is the symplectic product with g.
        let rows: Vec<Bits> = self
            .generators
            .iter()
            .map(|g| g.z().concat(g.x()))
            .collect();
        bits::kernel(&rows, 2 * n)
            .into_iter()
            .map(|v| PauliOperator::hermitian(v.slice(0, n), v.slice(n, n)))
            .collect()
    }

    /// Symplectic pairs `(a_i, b_i)` of logical operators: every element
    /// commutes with the group, `a_i` and `b_j` anticommute iff `i == j`,
    /// all other pairs commute. Chosen greedily from the centralizer basis
    /// in index order, so the result is deterministic.
    pub fn logical_pairs(&self) -> Vec<(PauliOperator, PauliOperator)> {
        let mut span = RowSpace::new(self.n, 2 * self.n);
        for g in &self.generators {
            span.push(g.x(), g.z()).expect("generators are independent");
        }
        let mut pool: Vec<PauliOperator> = self
            .centralizer_basis()
            .into_iter()
            .filter(|c| span.push(c.x(), c.z()).is_ok())
            .collect();
        let mut pairs = Vec::new();
        while !pool.is_empty() {
            let a = pool.remove(0);
            let Some(bi) = pool.iter().position(|v| v.anticommutes_unchecked(&a)) else {
                // Cannot happen: the form is nondegenerate modulo the group.
                unreachable!("logical operator without symplectic partner");
            };
            let b = pool.remove(bi);
            for v in pool.iter_mut() {
                let with_b = v.anticommutes_unchecked(&b);
                let with_a = v.anticommutes_unchecked(&a);
                if with_b {
                    v.mul_assign_unchecked(&a);
                }
                if with_a {
                    v.mul_assign_unchecked(&b);
                }
            }
            pairs.push((
                PauliOperator::hermitian(a.x().clone(), a.z().clone()),
                PauliOperator::hermitian(b.x().clone(), b.z().clone()),
            ));
        }
        pairs
    }

    /// All `2^r` signed elements, in Gray-code order starting at `I`.
    pub fn enumerate_group(&self, cap: u64) -> Result<GroupElements<'_>> {
        let r = self.rank();
        if r >= 64 || (1u64 << r) > cap {
            return Err(Error::CapExceeded { rank: r, cap });
        }
        Ok(GroupElements {
            generators: &self.generators,
            current: PauliOperator::identity(self.n),
            index: 0,
            total: 1u64 << r,
        })
    }

    /// Copy with generator `i` negated.
    pub fn with_flipped_sign(&self, i: usize) -> StabilizerGroup {
        let mut out = self.clone();
        out.generators[i] = out.generators[i].clone().negated();
        out
    }
}

fn product_of(gens: &[PauliOperator], combo: &Bits, n: usize) -> PauliOperator {
    let mut acc = PauliOperator::identity(n);
    for i in combo.iter_ones() {
        acc.mul_assign_unchecked(&gens[i]);
    }
    acc
}

/// Iterator over a group's signed elements; see [`StabilizerGroup::enumerate_group`].
pub struct GroupElements<'a> {
    generators: &'a [PauliOperator],
    current: PauliOperator,
    index: u64,
    total: u64,
}

impl Iterator for GroupElements<'_> {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            // Generators commute and square to I, so toggling works in place.
            self.current.mul_assign_unchecked(&self.generators[flip]);
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

/// Intersection of two unsigned row spaces, with the signed element each
/// group assigns to every basis vector.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub basis: Vec<PauliOperator>,
    pub in_a: Vec<PauliOperator>,
    pub in_b: Vec<PauliOperator>,
}

impl Intersection {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// For basis vector `i`, whether `Sb`'s element is minus `Sa`'s.
    pub fn sign_differs(&self, i: usize) -> bool {
        self.in_a[i].phase() != self.in_b[i].phase()
    }

    /// `Σ_v sign_a(v) sign_b(v)` over the whole intersection group. The
    /// summand is a character, so this is `2^rank` or `0`.
    pub fn signed_trace_sum(&self) -> u128 {
        if (0..self.rank()).any(|i| self.sign_differs(i)) {
            0
        } else {
            1u128 << self.rank()
        }
    }
}

/// Intersection of the row spaces of `a` and `b` (Zassenhaus).
pub fn intersect(a: &StabilizerGroup, b: &StabilizerGroup) -> Result<Intersection> {
    if a.n != b.n {
        return Err(Error::QubitCountMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let n = a.n;
    let zero = Bits::zeros(2 * n);
    let mut rows = Vec::with_capacity(a.rank() + b.rank());
    for g in a.generators() {
        let v = g.x().concat(g.z());
        rows.push(v.concat(&v));
    }
    for g in b.generators() {
        rows.push(g.x().concat(g.z()).concat(&zero));
    }
    let (reduced, _) = bits::rref(&rows, 4 * n);
    let mut space = RowSpace::new(n, reduced.len());
    for row in &reduced {
        if row.slice(0, 2 * n).is_zero() {
            let v = row.slice(2 * n, 2 * n);
            let _ = space.push(&v.slice(0, n), &v.slice(n, n));
        }
    }
    let basis = space.basis();
    let mut in_a = Vec::with_capacity(basis.len());
    let mut in_b = Vec::with_capacity(basis.len());
    for v in &basis {
        in_a.push(a.signed_element(v.x(), v.z()).expect("vector in Sa"));
        in_b.push(b.signed_element(v.x(), v.z()).expect("vector in Sb"));
    }
    Ok(Intersection { basis, in_a, in_b })
}

/// Outcome of a bounded minimum-weight search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinWeight {
    Found {
        weight: usize,
        witness: PauliOperator,
    },
    NoneUpTo(usize),
}

/// Per-qubit, per-kind anticommutation patterns against a generator list.
pub(crate) struct SyndromeTable {
    n: usize,
    words: usize,
    table: Vec<u64>,
}

impl SyndromeTable {
    pub(crate) fn new(n: usize, gens: &[PauliOperator]) -> Self {
        let words = gens.len().div_ceil(64).max(1);
        let mut table = vec![0u64; n * 3 * words];
        for (gi, g) in gens.iter().enumerate() {
            for q in 0..n {
                for (ki, kind) in PauliKind::ALL.iter().enumerate() {
                    let (ex, ez) = kind.bits();
                    // single-qubit symplectic product with g on qubit q
                    let anti = (ex & g.z().get(q)) ^ (ez & g.x().get(q));
                    if anti {
                        table[(q * 3 + ki) * words + gi / 64] |= 1u64 << (gi % 64);
                    }
                }
            }
        }
        SyndromeTable { n, words, table }
    }

    #[inline]
    pub(crate) fn get(&self, q: usize, kind: usize) -> &[u64] {
        let at = (q * 3 + kind) * self.words;
        &self.table[at..at + self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }
}

struct ScanState<'a> {
    table: &'a SyndromeTable,
    w: usize,
    positions: Vec<usize>,
    kinds: Vec<usize>,
    stack: Vec<u64>,
}

impl ScanState<'_> {
    fn to_pauli(&self) -> PauliOperator {
        let n = self.table.n;
        let mut x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        for (&p, &k) in self.positions.iter().zip(&self.kinds) {
            let (bx, bz) = PauliKind::ALL[k].bits();
            x.set(p, bx);
            z.set(p, bz);
        }
        PauliOperator::hermitian(x, z)
    }

    /// Depth-first search below `level`; `accept` sees each zero-syndrome
    /// candidate of weight `w`.
    fn dfs(&mut self, level: usize, accept: &dyn Fn(&PauliOperator) -> bool) -> Option<PauliOperator> {
        let words = self.table.words();
        if level == self.w {
            let syn = &self.stack[(level - 1) * words..level * words];
            if syn.iter().all(|&s| s == 0) {
                let cand = self.to_pauli();
                if accept(&cand) {
                    return Some(cand);
                }
            }
            return None;
        }
        let n = self.table.n;
        let start = self.positions[level - 1] + 1;
        for p in start..=n - (self.w - level) {
            for k in 0..3 {
                let (prev, cur) = self.stack.split_at_mut(level * words);
                let prev = &prev[(level - 1) * words..];
                let entry = self.table.get(p, k);
                for i in 0..words {
                    cur[i] = prev[i] ^ entry[i];
                }
                self.positions[level] = p;
                self.kinds[level] = k;
                if let Some(found) = self.dfs(level + 1, accept) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// First weight-`w` operator (in [`crate::pauli::enumerate_paulis`] order)
/// that commutes with every operator in `table`'s generator list and
/// passes `accept`.
pub(crate) fn scan_weight(
    table: &SyndromeTable,
    w: usize,
    accept: &(dyn Fn(&PauliOperator) -> bool + Sync),
) -> Option<PauliOperator> {
    let n = table.n;
    if w == 0 || w > n {
        return None;
    }
    (0..n * 3).into_par_iter().find_map_first(|idx| {
        let (p, k) = (idx / 3, idx % 3);
        if n - p < w {
            return None;
        }
        let words = table.words();
        let mut st = ScanState {
            table,
            w,
            positions: vec![0; w],
            kinds: vec![0; w],
            stack: vec![0; w * words],
        };
        st.positions[0] = p;
        st.kinds[0] = k;
        st.stack[..words].copy_from_slice(table.get(p, k));
        st.dfs(1, accept)
    })
}

/// Least-weight phase-zero Pauli of weight `1..=w_max` that commutes with
/// every element of `commute_with` (i.e. lies in its centralizer) and whose
/// unsigned vector is outside `exclude`'s row space.
///
/// Candidates are enumerated by weight and filtered by syndrome, rather than
/// enumerating the centralizer itself. The witness is the first hit in
/// enumeration order, independent of how the scan is split across threads.
pub fn min_weight_outside(
    commute_with: &StabilizerGroup,
    exclude: &StabilizerGroup,
    w_max: usize,
) -> Result<MinWeight> {
    if commute_with.n != exclude.n {
        return Err(Error::QubitCountMismatch {
            expected: commute_with.n,
            found: exclude.n,
        });
    }
    let table = SyndromeTable::new(commute_with.n, commute_with.generators());
    let space = exclude.row_space();
    let accept = |p: &PauliOperator| !space.contains(p.x(), p.z());
    for w in 1..=w_max.min(commute_with.n) {
        if let Some(witness) = scan_weight(&table, w, &accept) {
            return Ok(MinWeight::Found { weight: w, witness });
        }
    }
    Ok(MinWeight::NoneUpTo(w_max))
}
