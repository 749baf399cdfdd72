//! Linear-programming bounds for hybrid codes `((n, K : M, d))_q`.
//!
//! The constraint set is invariant under relabelling the `M` inner codes,
//! so averaging a feasible per-pair point over all relabellings gives
//! another feasible point in which every diagonal pair `(a,a)` carries the
//! same distribution and every off-diagonal pair carries the same
//! distribution. It is therefore enough to search over four sequences:
//! `A^D, B^D` (diagonal) and `A^O, B^O` (off-diagonal), with aggregates
//! `A_j = (A^D_j + (M-1) A^O_j) / M` and `B_j = B^D_j + (M-1) B^O_j`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::enumerators::{ClassAverages, KrawtchoukTable};
use crate::error::{Error, Result};
use crate::simplex::{Feasibility, LinearSystem, Sense};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpInstance {
    pub n: usize,
    pub k_dim: BigUint,
    pub m_count: u64,
    pub d: usize,
    pub q: u32,
    pub shadow: bool,
    pub nested: bool,
}

impl LpInstance {
    /// `((n, K : M, d))_q` with the shadow condition on iff `q = 2` and the
    /// nested condition off.
    pub fn new(n: usize, k_dim: u64, m_count: u64, d: usize, q: u32) -> Result<Self> {
        Self::with_dimension(n, BigUint::from(k_dim), m_count, d, q)
    }

    /// As [`LpInstance::new`] with an arbitrarily large `K`.
    pub fn with_dimension(n: usize, k_dim: BigUint, m_count: u64, d: usize, q: u32) -> Result<Self> {
        let inst = LpInstance {
            n,
            k_dim,
            m_count,
            d,
            q,
            shadow: q == 2,
            nested: false,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Qubit stabilizer-type `[[n, k : m, d]]`: `K = 2^k`, `M = 2^m`, shadow
    /// and nested conditions on.
    pub fn stabilizer(n: usize, k: u32, m: u32, d: usize) -> Result<Self> {
        if m >= 64 {
            return Err(Error::InvalidLpInstance("m must be below 64".into()));
        }
        let mut inst = Self::with_dimension(n, BigUint::one() << k, 1u64 << m, d, 2)?;
        inst.nested = true;
        Ok(inst)
    }

    pub fn with_shadow(mut self, on: bool) -> Self {
        self.shadow = on;
        self
    }

    pub fn with_nested(mut self, on: bool) -> Self {
        self.nested = on;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidLpInstance(msg.to_string()));
        if self.n == 0 {
            return bad("n must be at least 1");
        }
        if self.k_dim.is_zero() || self.m_count == 0 {
            return bad("K and M must be positive");
        }
        if self.d == 0 || self.d > self.n + 1 {
            return bad("d must lie in 1..=n+1");
        }
        if self.q < 2 {
            return bad("q must be at least 2");
        }
        if self.shadow && self.q != 2 {
            return Err(Error::ShadowUndefined(self.q));
        }
        Ok(())
    }

    pub fn has_off_diagonal(&self) -> bool {
        self.m_count > 1
    }
}

/// Variable layout: `A^D, B^D, A^O, B^O`, each indexed `0..=n`; the last
/// two are absent when `M = 1`.
#[derive(Debug, Clone, Copy)]
pub struct Layout {
    n: usize,
    off: bool,
}

impl Layout {
    pub fn a_diag(&self, j: usize) -> usize {
        j
    }
    pub fn b_diag(&self, j: usize) -> usize {
        self.n + 1 + j
    }
    pub fn a_off(&self, j: usize) -> usize {
        debug_assert!(self.off);
        2 * (self.n + 1) + j
    }
    pub fn b_off(&self, j: usize) -> usize {
        debug_assert!(self.off);
        3 * (self.n + 1) + j
    }
    pub fn num_vars(&self) -> usize {
        (if self.off { 4 } else { 2 }) * (self.n + 1)
    }
}

fn big(v: u64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// The constraint system of an instance. Labels name the condition and
/// index, e.g. `"10:D:3"`.
pub fn build_constraints(inst: &LpInstance) -> Result<(LinearSystem, Layout)> {
    inst.validate()?;
    let n = inst.n;
    let off = inst.has_off_diagonal();
    let lay = Layout { n, off };
    let mut sys = LinearSystem::new();
    for j in 0..=n {
        sys.add_var(format!("AD{j}"), false);
    }
    for j in 0..=n {
        sys.add_var(format!("BD{j}"), false);
    }
    if off {
        for j in 0..=n {
            sys.add_var(format!("AO{j}"), true);
        }
        for j in 0..=n {
            sys.add_var(format!("BO{j}"), false);
        }
    }
    let one = BigRational::one();
    let zero = BigRational::zero();
    let m = big(inst.m_count);
    let m1 = &m - &one;

    sys.add("3:D", vec![(lay.a_diag(0), one.clone())], Sense::Eq, one.clone());
    sys.add("4:D", vec![(lay.b_diag(0), one.clone())], Sense::Eq, one.clone());
    if off {
        sys.add("3:O", vec![(lay.a_off(0), one.clone())], Sense::Eq, one.clone());
        sys.add("4:O", vec![(lay.b_off(0), one.clone())], Sense::Eq, zero.clone());
    }
    for j in 1..inst.d.min(n + 1) {
        sys.add(
            format!("5:{j}"),
            vec![(lay.a_diag(j), one.clone()), (lay.b_diag(j), -one.clone())],
            Sense::Eq,
            zero.clone(),
        );
        if off {
            sys.add(
                format!("6:{j}"),
                vec![(lay.b_off(j), one.clone())],
                Sense::Eq,
                zero.clone(),
            );
        }
    }
    for j in 0..=n {
        // 7: 0 <= A^D_j (variable bound) and A^D_j <= B^D_j
        sys.add(
            format!("7:{j}"),
            vec![(lay.a_diag(j), one.clone()), (lay.b_diag(j), -one.clone())],
            Sense::Le,
            zero.clone(),
        );
        // 8, scaled by M: 0 <= M A_j <= M B_j
        let mut ma = vec![(lay.a_diag(j), one.clone())];
        if off {
            ma.push((lay.a_off(j), m1.clone()));
        }
        sys.add(format!("8lo:{j}"), ma.clone(), Sense::Ge, zero.clone());
        let mut upper = ma.clone();
        upper.push((lay.b_diag(j), -m.clone()));
        if off {
            upper.push((lay.b_off(j), -(&m * &m1)));
        }
        sys.add(format!("8hi:{j}"), upper, Sense::Le, zero.clone());
        if inst.nested && off {
            // A_j <= A^D_j  <=>  (M-1)(A^O_j - A^D_j) <= 0
            sys.add(
                format!("nested:{j}"),
                vec![(lay.a_off(j), one.clone()), (lay.a_diag(j), -one.clone())],
                Sense::Le,
                zero.clone(),
            );
        }
    }

    let table = KrawtchoukTable::new(inst.q, n);
    let qn = BigRational::from_integer(num_traits::pow(BigInt::from(inst.q), n));
    let factor = BigRational::from_integer(BigInt::from(inst.k_dim.clone())) / qn;
    type Index = fn(&Layout, usize) -> usize;
    let mut classes: Vec<(&str, Index, Index)> = vec![("D", Layout::a_diag, Layout::b_diag)];
    if off {
        classes.push(("O", Layout::a_off, Layout::b_off));
    }
    for (tag, a_of, b_of) in classes {
        for j in 0..=n {
            let mut row = vec![(b_of(&lay, j), one.clone())];
            for r in 0..=n {
                let kv = BigRational::from_integer(table.get(j, r).clone());
                if !kv.is_zero() {
                    row.push((a_of(&lay, r), -(&factor * kv)));
                }
            }
            sys.add(format!("10:{tag}:{j}"), row, Sense::Eq, zero.clone());
            if inst.shadow {
                let row = (0..=n)
                    .filter_map(|r| {
                        let kv = BigRational::from_integer(table.get(j, r).clone());
                        let kv = if r % 2 == 1 { -kv } else { kv };
                        (!kv.is_zero()).then(|| (a_of(&lay, r), kv))
                    })
                    .collect();
                sys.add(format!("11:{tag}:{j}"), row, Sense::Ge, zero.clone());
            }
        }
    }
    Ok((sys, lay))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct LpResult {
    pub instance: LpInstance,
    pub status: LpStatus,
    pub system: LinearSystem,
    pub witness: Option<Vec<BigRational>>,
    pub certificate: Option<Vec<BigRational>>,
}

impl LpResult {
    pub fn is_feasible(&self) -> bool {
        self.status == LpStatus::Feasible
    }

    /// Re-checks the witness or certificate against the constraint system.
    pub fn verify(&self) -> bool {
        match self.status {
            LpStatus::Feasible => self
                .witness
                .as_ref()
                .is_some_and(|x| self.system.check_point(x)),
            LpStatus::Infeasible => self
                .certificate
                .as_ref()
                .is_some_and(|y| self.system.check_certificate(y)),
        }
    }
}

pub fn feasible(inst: &LpInstance) -> Result<LpResult> {
    let (system, _) = build_constraints(inst)?;
    let (status, witness, certificate) = match system.solve() {
        Feasibility::Feasible(x) => (LpStatus::Feasible, Some(x), None),
        Feasibility::Infeasible(y) => (LpStatus::Infeasible, None, Some(y)),
    };
    Ok(LpResult {
        instance: inst.clone(),
        status,
        system,
        witness,
        certificate,
    })
}

/// The LP point of a code's class-averaged distributions.
pub fn point_from_averages(inst: &LpInstance, avg: &ClassAverages) -> Result<Vec<BigRational>> {
    let n = inst.n;
    let off = inst.has_off_diagonal();
    let lay = Layout { n, off };
    let wrong = || Error::InvalidLpInstance("distributions do not match the instance".into());
    if avg.a_diag.len() != n + 1 || avg.a_off.is_some() != off {
        return Err(wrong());
    }
    let mut x = vec![BigRational::zero(); lay.num_vars()];
    for j in 0..=n {
        x[lay.a_diag(j)] = avg.a_diag[j].clone();
        x[lay.b_diag(j)] = avg.b_diag[j].clone();
        if let (Some(ao), Some(bo)) = (&avg.a_off, &avg.b_off) {
            x[lay.a_off(j)] = ao[j].clone();
            x[lay.b_off(j)] = bo[j].clone();
        }
    }
    Ok(x)
}

/// Constraints of `inst` violated by a code's class averages; empty means
/// the code's distributions are a feasible point.
pub fn check_point(inst: &LpInstance, avg: &ClassAverages) -> Result<Vec<String>> {
    let (sys, _) = build_constraints(inst)?;
    Ok(sys.violations(&point_from_averages(inst, avg)?))
}

/// One length of a sweep: feasibility of every `(K, M) = (2^k, 2^m)` with
/// `k + m <= n`, and the maximal feasible pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    /// `(k, m, feasible)`.
    pub grid: Vec<(u32, u32, bool)>,
    /// Feasible `(K, M)` such that neither `(2K, M)` nor `(K, 2M)` is.
    pub frontier: Vec<(u64, u64)>,
}

impl SweepRow {
    pub fn is_feasible(&self, k: u32, m: u32) -> Option<bool> {
        self.grid
            .iter()
            .find(|&&(a, b, _)| a == k && b == m)
            .map(|&(_, _, f)| f)
    }

    /// Infeasibility propagates to larger `K` and larger `M` on the grid.
    pub fn is_monotone(&self) -> bool {
        self.grid.iter().all(|&(k, m, f)| {
            f || [(k + 1, m), (k, m + 1)]
                .iter()
                .all(|&(a, b)| self.is_feasible(a, b) != Some(true))
        })
    }
}

pub fn sweep(
    ns: impl IntoIterator<Item = usize>,
    d: usize,
    q: u32,
    nested: bool,
) -> Result<Vec<SweepRow>> {
    ns.into_iter()
        .map(|n| {
            let cells: Vec<(u32, u32)> = (0..=n as u32)
                .flat_map(|k| (0..=n as u32 - k).map(move |m| (k, m)))
                .collect();
            let grid = cells
                .par_iter()
                .map(|&(k, m)| {
                    let inst = LpInstance::new(n, (q as u64).pow(k), (q as u64).pow(m), d, q)?
                        .with_nested(nested);
                    Ok((k, m, feasible(&inst)?.is_feasible()))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut row = SweepRow {
                n,
                grid,
                frontier: Vec::new(),
            };
            row.frontier = row
                .grid
                .iter()
                .filter(|&&(k, m, f)| {
                    f && row.is_feasible(k + 1, m) != Some(true)
                        && row.is_feasible(k, m + 1) != Some(true)
                })
                .map(|&(k, m, _)| ((q as u64).pow(k), (q as u64).pow(m)))
                .collect();
            Ok(row)
        })
        .collect()
}
