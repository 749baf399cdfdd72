//! Exact feasibility for small linear systems.
//!
//! Phase-one simplex on an integer tableau with fraction-free (Edmonds)
//! pivoting and Bland's rule. A feasible outcome carries a point, an
//! infeasible one carries a Farkas vector; both are checked by
//! [`LinearSystem::check_point`] and [`LinearSystem::check_certificate`],
//! which do not depend on the solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// `Σ coeff * x_var  (sense)  rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, BigRational)>,
    pub sense: Sense,
    pub rhs: BigRational,
    pub label: String,
}

/// Variables are nonnegative unless marked free.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub names: Vec<String>,
    pub free: Vec<bool>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    /// One multiplier per constraint: `<= 0` on `Le` rows, `>= 0` on `Ge`
    /// rows, free on `Eq` rows; `yᵀA` is `<= 0` on nonnegative variables and
    /// zero on free ones, and `yᵀb > 0`.
    Infeasible(Vec<BigRational>),
}

impl LinearSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>, free: bool) -> usize {
        self.names.push(name.into());
        self.free.push(free);
        self.names.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn add(
        &mut self,
        label: impl Into<String>,
        coeffs: Vec<(usize, BigRational)>,
        sense: Sense,
        rhs: BigRational,
    ) {
        self.constraints.push(Constraint {
            coeffs,
            sense,
            rhs,
            label: label.into(),
        });
    }

    /// Labels of constraints violated by `x`, plus `"bound:<name>"` for
    /// negative nonnegative variables.
    pub fn violations(&self, x: &[BigRational]) -> Vec<String> {
        let mut out = Vec::new();
        if x.len() != self.num_vars() {
            out.push("dimension".to_string());
            return out;
        }
        for (j, v) in x.iter().enumerate() {
            if !self.free[j] && v.is_negative() {
                out.push(format!("bound:{}", self.names[j]));
            }
        }
        for c in &self.constraints {
            let lhs: BigRational = c.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
            let ok = match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Ge => lhs >= c.rhs,
                Sense::Eq => lhs == c.rhs,
            };
            if !ok {
                out.push(c.label.clone());
            }
        }
        out
    }

    pub fn check_point(&self, x: &[BigRational]) -> bool {
        self.violations(x).is_empty()
    }

    pub fn check_certificate(&self, y: &[BigRational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let mut combo = vec![BigRational::zero(); self.num_vars()];
        let mut rhs = BigRational::zero();
        for (c, yi) in self.constraints.iter().zip(y) {
            let sign_ok = match c.sense {
                Sense::Le => !yi.is_positive(),
                Sense::Ge => !yi.is_negative(),
                Sense::Eq => true,
            };
            if !sign_ok {
                return false;
            }
            for (j, a) in &c.coeffs {
                combo[*j] += a * yi;
            }
            rhs += &c.rhs * yi;
        }
        let cols_ok = combo.iter().zip(&self.free).all(|(v, &free)| {
            if free {
                v.is_zero()
            } else {
                !v.is_positive()
            }
        });
        cols_ok && rhs.is_positive()
    }

    pub fn solve(&self) -> Feasibility {
        Tableau::build(self).run(self)
    }
}

fn lcm_of_denominators<'a>(vals: impl Iterator<Item = &'a BigRational>) -> BigInt {
    vals.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[derive(Clone, Copy, Debug)]
enum ColumnKind {
    /// Original variable `j`, with sign `+1` or `-1` (free split).
    Var(usize, bool),
    Slack,
    Surplus,
    Artificial,
}

struct Tableau {
    /// `rows` constraint rows then the objective row; last column is rhs.
    m: Vec<Vec<BigInt>>,
    det: BigInt,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    /// Per constraint: the unit column carrying its multiplier
    /// (artificial if any, else slack) and the scaling `s_i` applied.
    unit_col: Vec<usize>,
    row_scale: Vec<BigInt>,
}

impl Tableau {
    fn build(sys: &LinearSystem) -> Tableau {
        let rows = sys.constraints.len();
        let mut kinds = Vec::new();
        let mut var_cols = vec![Vec::new(); sys.num_vars()];
        for j in 0..sys.num_vars() {
            var_cols[j].push((kinds.len(), true));
            kinds.push(ColumnKind::Var(j, true));
            if sys.free[j] {
                var_cols[j].push((kinds.len(), false));
                kinds.push(ColumnKind::Var(j, false));
            }
        }
        // integer rows with nonnegative rhs
        let mut int_rows = Vec::with_capacity(rows);
        let mut senses = Vec::with_capacity(rows);
        let mut row_scale = Vec::with_capacity(rows);
        for c in &sys.constraints {
            let l = lcm_of_denominators(c.coeffs.iter().map(|(_, a)| a).chain([&c.rhs]));
            let flip = c.rhs.is_negative();
            let s = if flip { -l } else { l };
            let scale = BigRational::from_integer(s.clone());
            let coeffs: Vec<(usize, BigInt)> = c
                .coeffs
                .iter()
                .map(|(j, a)| (*j, (a * &scale).to_integer()))
                .collect();
            let rhs = (&c.rhs * &scale).to_integer();
            let sense = match (c.sense, flip) {
                (Sense::Le, true) => Sense::Ge,
                (Sense::Ge, true) => Sense::Le,
                (s, _) => s,
            };
            int_rows.push((coeffs, rhs));
            senses.push(sense);
            row_scale.push(s);
        }
        let mut unit_col = vec![0; rows];
        let mut basis = vec![0; rows];
        let mut extra: Vec<(usize, usize, i8)> = Vec::new(); // (row, col, value)
        for i in 0..rows {
            match senses[i] {
                Sense::Le => {
                    let c = kinds.len();
                    kinds.push(ColumnKind::Slack);
                    extra.push((i, c, 1));
                    unit_col[i] = c;
                    basis[i] = c;
                }
                Sense::Ge => {
                    let c = kinds.len();
                    kinds.push(ColumnKind::Surplus);
                    extra.push((i, c, -1));
                    let a = kinds.len();
                    kinds.push(ColumnKind::Artificial);
                    extra.push((i, a, 1));
                    unit_col[i] = a;
                    basis[i] = a;
                }
                Sense::Eq => {
                    let a = kinds.len();
                    kinds.push(ColumnKind::Artificial);
                    extra.push((i, a, 1));
                    unit_col[i] = a;
                    basis[i] = a;
                }
            }
        }
        let ncols = kinds.len();
        let mut m = vec![vec![BigInt::zero(); ncols + 1]; rows + 1];
        for (i, (coeffs, rhs)) in int_rows.into_iter().enumerate() {
            for (j, a) in coeffs {
                for &(col, plus) in &var_cols[j] {
                    if plus {
                        m[i][col] += &a;
                    } else {
                        m[i][col] -= &a;
                    }
                }
            }
            m[i][ncols] = rhs;
        }
        for (i, c, v) in extra {
            m[i][c] = BigInt::from(v);
        }
        // phase-one reduced costs: c_j minus the sum of artificial rows
        let obj = rows;
        for (c, kind) in kinds.iter().enumerate() {
            if matches!(kind, ColumnKind::Artificial) {
                m[obj][c] = BigInt::one();
            }
        }
        for i in 0..rows {
            if matches!(kinds[basis[i]], ColumnKind::Artificial) {
                for c in 0..=ncols {
                    let v = m[i][c].clone();
                    m[obj][c] -= v;
                }
            }
        }
        Tableau {
            m,
            det: BigInt::one(),
            basis,
            kinds,
            unit_col,
            row_scale,
        }
    }

    fn pivot(&mut self, r: usize, s: usize) {
        let pr = self.m[r].clone();
        let prs = pr[s].clone();
        let det = self.det.clone();
        self.m.par_iter_mut().enumerate().for_each(|(i, row)| {
            if i == r {
                return;
            }
            let f = row[s].clone();
            for (cell, p) in row.iter_mut().zip(&pr) {
                let v = &*cell * &prs - &f * p;
                *cell = v / &det;
            }
        });
        self.det = prs;
        self.basis[r] = s;
    }

    fn run(mut self, sys: &LinearSystem) -> Feasibility {
        let rows = self.basis.len();
        let ncols = self.kinds.len();
        let obj = rows;
        loop {
            // Bland: lowest-index column with negative reduced cost
            let Some(s) = (0..ncols).find(|&c| self.m[obj][c].is_negative()) else {
                break;
            };
            let mut best: Option<usize> = None;
            for i in 0..rows {
                if !self.m[i][s].is_positive() {
                    continue;
                }
                best = Some(match best {
                    None => i,
                    Some(b) => {
                        // compare rhs_i / col_i with rhs_b / col_b
                        let lhs = &self.m[i][ncols] * &self.m[b][s];
                        let rhs = &self.m[b][ncols] * &self.m[i][s];
                        if lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[b]) {
                            i
                        } else {
                            b
                        }
                    }
                });
            }
            let r = best.expect("phase one is bounded below");
            self.pivot(r, s);
        }
        let det = BigRational::from_integer(self.det.clone());
        let value = |v: &BigInt| BigRational::from_integer(v.clone()) / &det;
        let infeasibility = -value(&self.m[obj][ncols]);
        if infeasibility.is_positive() {
            let y = (0..rows)
                .map(|i| {
                    let rc = value(&self.m[obj][self.unit_col[i]]);
                    let y_std = match self.kinds[self.unit_col[i]] {
                        ColumnKind::Artificial => BigRational::one() - rc,
                        _ => -rc,
                    };
                    y_std * BigRational::from_integer(self.row_scale[i].clone())
                })
                .collect();
            return Feasibility::Infeasible(y);
        }
        let mut x = vec![BigRational::zero(); sys.num_vars()];
        for i in 0..rows {
            if let ColumnKind::Var(j, plus) = self.kinds[self.basis[i]] {
                let v = value(&self.m[i][ncols]);
                if plus {
                    x[j] += v;
                } else {
                    x[j] -= v;
                }
            }
        }
        Feasibility::Feasible(x)
    }
}
