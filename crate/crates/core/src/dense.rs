//! Exact small-scale reference computations on explicit matrices and state
//! vectors.
//!
//! Nothing here uses floating point. Stabilizer projectors and Pauli
//! matrices have entries in `Z[i] / 2^s`, so matrices are stored as Gaussian
//! integers over a common power-of-two denominator; general scalars are
//! [`GaussianRational`].
//!
//! Basis states are indexed with qubit 0 as the most significant bit, and a
//! Pauli `i^d X^x Z^z` acts as `|j> -> i^d (-1)^{z.j} |j xor x>`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bits::{self, Bits};
use crate::enumerators::WeightDistributionSet;
use crate::error::{Error, Result};
use crate::pauli::{enumerate_paulis, PauliOperator};
use crate::stabilizer::StabilizerGroup;

/// Default qubit limit for the detectable-space rank computation.
pub const DEFAULT_RANK_LIMIT: usize = 4;

/// Exact complex number with rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// Panics on division by zero.
    pub fn div(&self, o: &Self) -> Self {
        let norm = &o.re * &o.re + &o.im * &o.im;
        assert!(!norm.is_zero(), "division by zero");
        let num = self.mul(&o.conj());
        GaussianRational::new(num.re / &norm, num.im / norm)
    }

    fn scale_pow2(&self, e: i64) -> Self {
        let f = if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        };
        GaussianRational::new(&self.re * &f, &self.im * &f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
struct Zi {
    re: i64,
    im: i64,
}

impl Zi {
    const ZERO: Zi = Zi { re: 0, im: 0 };

    fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    fn add(self, o: Zi) -> Zi {
        Zi {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }

    fn mul(self, o: Zi) -> Zi {
        Zi {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    fn conj(self) -> Zi {
        Zi {
            re: self.re,
            im: -self.im,
        }
    }

    /// `self * i^k`.
    fn rot(self, k: u8) -> Zi {
        match k & 3 {
            0 => self,
            1 => Zi {
                re: -self.im,
                im: self.re,
            },
            2 => Zi {
                re: -self.re,
                im: -self.im,
            },
            _ => Zi {
                re: self.im,
                im: -self.re,
            },
        }
    }

    fn wide_mul(self, o: Zi) -> (i128, i128) {
        let (a, b, c, d) = (
            self.re as i128,
            self.im as i128,
            o.re as i128,
            o.im as i128,
        );
        (a * c - b * d, a * d + b * c)
    }

    fn to_rational(self) -> GaussianRational {
        GaussianRational::from_ints(self.re, self.im)
    }
}

/// A Pauli operator in basis-index form.
#[derive(Clone, Copy, Debug)]
struct IndexPauli {
    x: usize,
    z: usize,
    phase: u8,
}

impl IndexPauli {
    fn new(p: &PauliOperator) -> Self {
        let n = p.num_qubits();
        let mask = |b: &Bits| b.iter_ones().fold(0usize, |acc, q| acc | 1 << (n - 1 - q));
        IndexPauli {
            x: mask(p.x()),
            z: mask(p.z()),
            phase: p.phase(),
        }
    }

    /// `E|j> = i^{phase(j)} |target>`.
    #[inline]
    fn act(&self, j: usize) -> (usize, u8) {
        let sign = ((self.z & j).count_ones() & 1) as u8;
        (j ^ self.x, (self.phase + 2 * sign) & 3)
    }
}

/// Square matrix with exact entries `data / 2^shift`, stored dense.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianMatrix {
    dim: usize,
    shift: u32,
    data: Vec<Zi>,
}

impl GaussianMatrix {
    pub fn zeros(dim: usize) -> Self {
        GaussianMatrix {
            dim,
            shift: 0,
            data: vec![Zi::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Zi { re: 1, im: 0 };
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, c: usize) -> GaussianRational {
        self.data[r * self.dim + c]
            .to_rational()
            .scale_pow2(-(self.shift as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.is_zero())
    }

    fn normalize(mut self) -> Self {
        if self.is_zero() {
            self.shift = 0;
            return self;
        }
        while self.shift > 0 && self.data.iter().all(|z| z.re % 2 == 0 && z.im % 2 == 0) {
            for z in &mut self.data {
                z.re /= 2;
                z.im /= 2;
            }
            self.shift -= 1;
        }
        self
    }

    pub fn mul(&self, o: &GaussianMatrix) -> GaussianMatrix {
        assert_eq!(self.dim, o.dim);
        let d = self.dim;
        let mut data = vec![Zi::ZERO; d * d];
        data.par_chunks_mut(d).enumerate().for_each(|(r, out)| {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.is_zero() {
                    continue;
                }
                let row = &o.data[k * d..(k + 1) * d];
                for (c, b) in row.iter().enumerate() {
                    if !b.is_zero() {
                        out[c] = out[c].add(a.mul(*b));
                    }
                }
            }
        });
        GaussianMatrix {
            dim: d,
            shift: self.shift + o.shift,
            data,
        }
        .normalize()
    }

    pub fn add(&self, o: &GaussianMatrix) -> GaussianMatrix {
        assert_eq!(self.dim, o.dim);
        let s = self.shift.max(o.shift);
        let (fa, fb) = (1i64 << (s - self.shift), 1i64 << (s - o.shift));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| Zi {
                re: a.re * fa + b.re * fb,
                im: a.im * fa + b.im * fb,
            })
            .collect();
        GaussianMatrix {
            dim: self.dim,
            shift: s,
            data,
        }
        .normalize()
    }

    pub fn adjoint(&self) -> GaussianMatrix {
        let d = self.dim;
        let mut data = vec![Zi::ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        GaussianMatrix {
            dim: d,
            shift: self.shift,
            data,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = Zi::ZERO;
        for i in 0..self.dim {
            t = t.add(self.data[i * self.dim + i]);
        }
        t.to_rational().scale_pow2(-(self.shift as i64))
    }

    /// Exact rank over `Q(i)`.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<GaussianRational>> = (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| self.data[r * self.dim + c].to_rational())
                    .collect()
            })
            .collect();
        gaussian_rank(rows)
    }

    /// `E * self` by permuting rows.
    fn pauli_left(&self, e: &IndexPauli) -> GaussianMatrix {
        let d = self.dim;
        let mut data = vec![Zi::ZERO; d * d];
        for s in 0..d {
            let (t, ph) = e.act(s);
            for c in 0..d {
                data[t * d + c] = self.data[s * d + c].rot(ph);
            }
        }
        GaussianMatrix {
            dim: d,
            shift: self.shift,
            data,
        }
    }

    /// `λ` with `self = λ other`, if it exists. A zero `other` only admits
    /// a zero `self`, reported as `λ = 0`.
    fn scalar_multiple_of(&self, other: &GaussianMatrix) -> Option<GaussianRational> {
        let Some(pivot) = other.data.iter().position(|z| !z.is_zero()) else {
            return self.is_zero().then(GaussianRational::zero);
        };
        let (rp, op) = (self.data[pivot], other.data[pivot]);
        for (s, o) in self.data.iter().zip(&other.data) {
            if s.wide_mul(op) != o.wide_mul(rp) {
                return None;
            }
        }
        let lambda = rp.to_rational().div(&op.to_rational());
        Some(lambda.scale_pow2(other.shift as i64 - self.shift as i64))
    }

    fn nonzeros(&self) -> Vec<(usize, usize, Zi)> {
        let d = self.dim;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, z)| !z.is_zero())
            .map(|(i, &z)| (i / d, i % d, z))
            .collect()
    }
}

/// The `2^n x 2^n` matrix of a Pauli operator.
pub fn pauli_matrix(p: &PauliOperator, limit: usize) -> Result<GaussianMatrix> {
    let n = p.num_qubits();
    if n > limit {
        return Err(Error::DenseLimitExceeded { n, limit });
    }
    let d = 1usize << n;
    let e = IndexPauli::new(p);
    let mut m = GaussianMatrix::zeros(d);
    for j in 0..d {
        let (t, ph) = e.act(j);
        m.data[t * d + j] = Zi { re: 1, im: 0 }.rot(ph);
    }
    Ok(m)
}

/// `P = 2^{-r} Σ_{s ∈ S} s`.
pub fn projector(s: &StabilizerGroup, limit: usize) -> Result<GaussianMatrix> {
    let n = s.num_qubits();
    if n > limit {
        return Err(Error::DenseLimitExceeded { n, limit });
    }
    let d = 1usize << n;
    let mut m = GaussianMatrix::zeros(d);
    for g in s.enumerate_group(u64::MAX)? {
        let e = IndexPauli::new(&g);
        for j in 0..d {
            let (t, ph) = e.act(j);
            let cell = &mut m.data[t * d + j];
            *cell = cell.add(Zi { re: 1, im: 0 }.rot(ph));
        }
    }
    m.shift = s.rank() as u32;
    Ok(m.normalize())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KlFailure {
    /// `P_b E P_a != 0` for `a != b`.
    OffDiagonal(usize, usize),
    /// `P_a E P_a` is not a multiple of `P_a`.
    NonScalar(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KlOutcome {
    /// One scalar `λ_a` per inner code.
    Detectable(Vec<GaussianRational>),
    Undetectable(KlFailure),
}

impl KlOutcome {
    pub fn is_detectable(&self) -> bool {
        matches!(self, KlOutcome::Detectable(_))
    }
}

/// Tests `P_b E P_a = δ_ab λ_a P_a` for all pairs by explicit matrix products.
pub fn kl_check(projectors: &[GaussianMatrix], e: &PauliOperator) -> KlOutcome {
    let ie = IndexPauli::new(e);
    let mut lambdas = Vec::with_capacity(projectors.len());
    for (a, pa) in projectors.iter().enumerate() {
        let epa = pa.pauli_left(&ie);
        for (b, pb) in projectors.iter().enumerate() {
            let r = pb.mul(&epa);
            if a != b {
                if !r.is_zero() {
                    return KlOutcome::Undetectable(KlFailure::OffDiagonal(a, b));
                }
            } else {
                match r.scalar_multiple_of(pa) {
                    Some(l) => lambdas.push(l),
                    None => return KlOutcome::Undetectable(KlFailure::NonScalar(a)),
                }
            }
        }
    }
    KlOutcome::Detectable(lambdas)
}

/// Explicit basis of a stabilizer code: `2^k` mutually orthogonal vectors
/// of equal squared norm `norm`, entries Gaussian integers. The normalized
/// states are `v / sqrt(norm)`.
#[derive(Clone, Debug)]
pub struct CodeBasis {
    n: usize,
    vectors: Vec<Vec<Zi>>,
    supports: Vec<Vec<usize>>,
    norm: i64,
}

impl CodeBasis {
    /// Builds `|v_b> = Xbar^b Π (I + g) |x0>` where the product runs over
    /// the stabilizer extended by one logical operator per qubit and `x0`
    /// satisfies the sign constraints of that group's Z-type part.
    pub fn new(s: &StabilizerGroup, limit: usize) -> Result<CodeBasis> {
        let n = s.num_qubits();
        if n > limit {
            return Err(Error::DenseLimitExceeded { n, limit });
        }
        let pairs = s.logical_pairs();
        let mut full_gens = s.generators().to_vec();
        full_gens.extend(pairs.iter().map(|(a, _)| a.clone()));
        let full = StabilizerGroup::build(full_gens)?;

        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for v in full.row_space().basis() {
            if v.x().is_zero() {
                let signed = full.signed_element(v.x(), v.z()).expect("basis vector");
                rows.push(v.z().clone());
                rhs.push(signed.phase() == 2);
            }
        }
        let x0 = bits::solve(&rows, &Bits::from_bools(&rhs), n)
            .expect("sign constraints of a stabilizer group are consistent");
        let x0 = x0
            .iter_ones()
            .fold(0usize, |acc, q| acc | 1 << (n - 1 - q));

        let d = 1usize << n;
        let mut psi = vec![Zi::ZERO; d];
        for g in full.enumerate_group(u64::MAX)? {
            let (t, ph) = IndexPauli::new(&g).act(x0);
            psi[t] = psi[t].add(Zi { re: 1, im: 0 }.rot(ph));
        }

        let k = pairs.len();
        let mut vectors = Vec::with_capacity(1 << k);
        for b in 0..1usize << k {
            let mut op = PauliOperator::identity(n);
            for (i, (_, partner)) in pairs.iter().enumerate() {
                if (b >> (k - 1 - i)) & 1 == 1 {
                    op = op.multiply(partner)?;
                }
            }
            vectors.push(apply(&IndexPauli::new(&op), &psi));
        }
        let norm = psi.iter().map(|z| z.re * z.re + z.im * z.im).sum();
        let supports = vectors
            .iter()
            .map(|v| (0..d).filter(|&i| !v[i].is_zero()).collect())
            .collect();
        Ok(CodeBasis {
            n,
            vectors,
            supports,
            norm,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn norm(&self) -> i64 {
        self.norm
    }

    /// Entry `index` of basis vector `i`, unnormalized.
    pub fn amplitude(&self, i: usize, index: usize) -> GaussianRational {
        self.vectors[i][index].to_rational()
    }

    /// Unnormalized `<u_i | E | v_j>` where `u` is `self` and `v` is `other`.
    fn matrix_element(&self, i: usize, e: &IndexPauli, other: &CodeBasis, j: usize) -> Zi {
        let u = &self.vectors[i];
        let v = &other.vectors[j];
        let mut acc = Zi::ZERO;
        for &s in &other.supports[j] {
            let (t, ph) = e.act(s);
            let ut = u[t];
            if !ut.is_zero() {
                acc = acc.add(ut.conj().mul(v[s].rot(ph)));
            }
        }
        acc
    }

    /// Unnormalized `<v_i | v_j>` within this basis.
    pub fn inner_product(&self, i: usize, j: usize) -> GaussianRational {
        let id = IndexPauli { x: 0, z: 0, phase: 0 };
        self.matrix_element(i, &id, self, j).to_rational()
    }
}

fn apply(e: &IndexPauli, v: &[Zi]) -> Vec<Zi> {
    let mut out = vec![Zi::ZERO; v.len()];
    for (s, &val) in v.iter().enumerate() {
        if !val.is_zero() {
            let (t, ph) = e.act(s);
            out[t] = val.rot(ph);
        }
    }
    out
}

/// Tests `<c_i^b | E | c_j^a> = λ_a δ_ij δ_ab` on explicit bases.
pub fn kl_check_bases(bases: &[CodeBasis], e: &PauliOperator) -> KlOutcome {
    let ie = IndexPauli::new(e);
    let mut lambdas = Vec::with_capacity(bases.len());
    for (a, ba) in bases.iter().enumerate() {
        let mut diag: Option<Zi> = None;
        for j in 0..ba.len() {
            for (b, bb) in bases.iter().enumerate() {
                for i in 0..bb.len() {
                    let m = bb.matrix_element(i, &ie, ba, j);
                    if a != b {
                        if !m.is_zero() {
                            return KlOutcome::Undetectable(KlFailure::OffDiagonal(a, b));
                        }
                    } else if i != j {
                        if !m.is_zero() {
                            return KlOutcome::Undetectable(KlFailure::NonScalar(a));
                        }
                    } else {
                        match diag {
                            None => diag = Some(m),
                            Some(first) if first != m => {
                                return KlOutcome::Undetectable(KlFailure::NonScalar(a));
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        let l = diag.unwrap_or(Zi::ZERO).to_rational();
        lambdas.push(l.div(&GaussianRational::from_ints(ba.norm, 0)));
    }
    KlOutcome::Detectable(lambdas)
}

/// Per-pair enumerators from traces:
/// `A^{(a,b)}_d = K^{-2} Σ Tr(E P_a) Tr(E^† P_b)` and
/// `B^{(a,b)}_d = K^{-1} Σ Tr(E P_a E^† P_b)`, sums over all weight-`d` Paulis.
/// Traces use index arithmetic on the nonzero entries of each projector.
pub fn weight_distributions_dense(
    projectors: &[GaussianMatrix],
    limit: usize,
) -> Result<WeightDistributionSet> {
    let Some(first) = projectors.first() else {
        return Err(Error::EmptyGeneratorList);
    };
    let d = first.dim();
    let n = d.trailing_zeros() as usize;
    if n > limit {
        return Err(Error::DenseLimitExceeded { n, limit });
    }
    let k_dim = first.trace();
    if projectors.iter().any(|p| p.dim() != d || p.trace() != k_dim) || !k_dim.is_real() {
        return Err(Error::InconsistentInnerCodes);
    }
    let k_dim = k_dim.re;
    let m = projectors.len();
    let nz: Vec<Vec<(usize, usize, Zi)>> = projectors.iter().map(|p| p.nonzeros()).collect();

    // raw sums, before dividing by 2^shift and K
    let mut raw_a = vec![vec![vec![0i128; n + 1]; m]; m];
    let mut raw_b = vec![vec![vec![0i128; n + 1]; m]; m];
    for w in 0..=n {
        let errors: Vec<PauliOperator> = enumerate_paulis(n, w)?
            .map(|e| PauliOperator::hermitian(e.x().clone(), e.z().clone()))
            .collect();
        let zero = || (vec![vec![0i128; m]; m], vec![vec![0i128; m]; m]);
        let (sa, sb) = errors
            .par_iter()
            .fold(zero, |(mut sa, mut sb), e| {
                let ie = IndexPauli::new(e);
                // Tr(E P) = Σ_k φ(k) P[k][k xor x] where E|k> = φ(k)|k xor x>
                let traces: Vec<i128> = projectors
                    .iter()
                    .map(|p| {
                        let mut t = Zi::ZERO;
                        for k in 0..d {
                            let (row, ph) = ie.act(k);
                            let pk = p.data[k * d + row];
                            t = t.add(pk.rot(ph));
                        }
                        debug_assert_eq!(t.im, 0, "Hermitian trace");
                        t.re as i128
                    })
                    .collect();
                for a in 0..m {
                    for b in 0..m {
                        sa[a][b] += traces[a] * traces[b];
                        let pb = &projectors[b];
                        let mut acc: i128 = 0;
                        for &(r, c, val) in &nz[a] {
                            let sign = (ie.z & (r ^ c)).count_ones() & 1;
                            let other = pb.data[(c ^ ie.x) * d + (r ^ ie.x)];
                            if other.is_zero() {
                                continue;
                            }
                            let (re, _) = val.wide_mul(other);
                            acc += if sign == 1 { -re } else { re };
                        }
                        sb[a][b] += acc;
                    }
                }
                (sa, sb)
            })
            .reduce(zero, |(mut xa, mut xb), (ya, yb)| {
                for a in 0..m {
                    for b in 0..m {
                        xa[a][b] += ya[a][b];
                        xb[a][b] += yb[a][b];
                    }
                }
                (xa, xb)
            });
        for a in 0..m {
            for b in 0..m {
                raw_a[a][b][w] = sa[a][b];
                raw_b[a][b][w] = sb[a][b];
            }
        }
    }

    let scale = |raw: i128, shift: u32, divisor: &BigRational| {
        BigRational::new(BigInt::from(raw), BigInt::one() << shift as usize) / divisor
    };
    let k2 = &k_dim * &k_dim;
    let mut a_pairs = vec![vec![Vec::new(); m]; m];
    let mut b_pairs = vec![vec![Vec::new(); m]; m];
    for a in 0..m {
        for b in 0..m {
            let shift = projectors[a].shift + projectors[b].shift;
            a_pairs[a][b] = raw_a[a][b].iter().map(|&v| scale(v, shift, &k2)).collect();
            b_pairs[a][b] = raw_b[a][b]
                .iter()
                .map(|&v| scale(v, shift, &k_dim))
                .collect();
        }
    }
    Ok(WeightDistributionSet::new(n, k_dim, a_pairs, b_pairs))
}

/// Dimension of `{E : P_b E P_a = δ_ab λ_a P_a for some λ}` by exact rank
/// of the linear system in the unknowns `(E, λ_1..λ_M)`.
pub fn detectable_space_dim_dense(projectors: &[GaussianMatrix], limit: usize) -> Result<usize> {
    let Some(first) = projectors.first() else {
        return Err(Error::EmptyGeneratorList);
    };
    let d = first.dim();
    let n = d.trailing_zeros() as usize;
    if n > limit {
        return Err(Error::DenseLimitExceeded { n, limit });
    }
    let m = projectors.len();
    let unknowns = d * d + m;
    let mut rows = Vec::new();
    for (a, pa) in projectors.iter().enumerate() {
        for (b, pb) in projectors.iter().enumerate() {
            let same = a == b;
            for r in 0..d {
                for c in 0..d {
                    // (P_b E P_a)[r][c] = Σ_{s,t} P_b[r][s] E[s][t] P_a[t][c]
                    let mut row = vec![GaussianRational::zero(); unknowns];
                    let mut any = false;
                    for s in 0..d {
                        let x = pb.data[r * d + s];
                        if x.is_zero() {
                            continue;
                        }
                        for t in 0..d {
                            let y = pa.data[t * d + c];
                            if y.is_zero() {
                                continue;
                            }
                            row[s * d + t] = x.mul(y).to_rational();
                            any = true;
                        }
                    }
                    if same {
                        // compare at the common scale 2^{2 shift}
                        let p = pa.data[r * d + c];
                        if !p.is_zero() {
                            row[d * d + a] = Zi {
                                re: -p.re,
                                im: -p.im,
                            }
                            .to_rational()
                            .scale_pow2(pa.shift as i64);
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(unknowns - gaussian_rank(rows))
}

/// Rank over `Q(i)` by Gaussian elimination.
fn gaussian_rank(mut rows: Vec<Vec<GaussianRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = GaussianRational::one().div(&rows[rank][c]);
        let pivot: Vec<GaussianRational> = rows[rank].iter().map(|v| v.mul(&inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (cell, pv) in row.iter_mut().zip(&pivot).skip(c) {
                if !pv.is_zero() {
                    *cell = cell.sub(&f.mul(pv));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
