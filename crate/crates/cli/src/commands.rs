//! Subcommand bodies. Each returns the report text and an exit status.

use std::fmt::Write as _;

use hybrid_core::enumerators::{macwilliams_with, shadow_values_with};
use hybrid_core::{
    feasible, orthogonal_pair, sweep, Degeneracy, Distance, EnumeratorEngine,
    KrawtchoukTable, LpInstance, LpStatus, StabilizerUnionCode,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::codefile::{Code, CodeFile, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Kv,
}

/// Report text plus exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            text: format!("error: {msg}\n"),
            status: EXIT_USAGE,
        }
    }
}

/// Collects `key`/`value` rows and renders them in either format.
struct Report {
    format: Format,
    rows: Vec<(String, String)>,
    plain: Vec<String>,
}

impl Report {
    fn new(format: Format) -> Self {
        Report {
            format,
            rows: Vec::new(),
            plain: Vec::new(),
        }
    }

    fn kv(&mut self, key: &str, value: impl ToString) {
        self.rows.push((key.to_string(), value.to_string()));
    }

    fn line(&mut self, text: impl Into<String>) {
        self.plain.push(text.into());
    }

    /// A row shown in both formats.
    fn both(&mut self, key: &str, label: &str, value: impl ToString) {
        let v = value.to_string();
        self.plain.push(format!("{label:<12} {v}"));
        self.rows.push((key.to_string(), v));
    }

    fn finish(self, status: i32) -> Outcome {
        let mut text = String::new();
        match self.format {
            Format::Plain => {
                for l in self.plain {
                    text.push_str(&l);
                    text.push('\n');
                }
            }
            Format::Kv => {
                for (k, v) in self.rows {
                    let _ = writeln!(text, "{k}={v}");
                }
            }
        }
        Outcome { text, status }
    }
}

fn seq(v: &[BigRational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn load(path: &str) -> Result<CodeFile, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{path}: {e}")))?;
    CodeFile::parse(&text).map_err(|e| Outcome::usage(format!("{path}: {e}")))
}

fn show_distance(d: &Distance) -> String {
    match d {
        Distance::Exact { d, .. } => d.to_string(),
        Distance::AtLeast(w) => format!(">={w}"),
    }
}

pub fn verify(path: &str, w_max: Option<usize>, dense: bool, format: Format) -> Outcome {
    let file = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let n = file.code.num_qubits();
    let w = w_max.or(file.declared.and_then(|p| p.d)).unwrap_or(n).min(n);
    let mut r = Report::new(format);
    let mut ok = true;

    let (union, distance, computed) = match &file.code {
        Code::Hybrid(h) => {
            let d = match h.distance(w) {
                Ok(d) => d,
                Err(e) => return Outcome::usage(e),
            };
            let union = h.as_union().ok();
            (union, d.clone(), Params::of_hybrid(h, d.exact()))
        }
        Code::Union(u) => {
            let d = match u.union_distance_dense(w) {
                Ok(d) => d,
                Err(e) => return Outcome::usage(e),
            };
            (Some(u.clone()), d.clone(), Params::of_union(u, d.exact()))
        }
    };
    let shown = computed.render(Some(&show_distance(&distance)));
    let verdict = match &file.declared {
        Some(decl) if !decl.matches(&computed) => {
            ok = false;
            format!("mismatch (declared {decl})")
        }
        _ => "verified".to_string(),
    };
    r.kv("params", &shown);
    r.kv("status", &verdict);
    r.kv("distance", show_distance(&distance));
    if let Some(wit) = distance.witness() {
        r.kv("witness", wit);
    }

    let mut headline = format!("{shown} {verdict}");
    if let (Code::Hybrid(h), Some(d)) = (&file.code, distance.exact()) {
        match h.inner_degenerate(d) {
            Ok(Degeneracy::Degenerate(p)) => {
                headline.push_str(&format!("; inner code degenerate (witness {p})"));
                r.kv("degenerate", &p);
            }
            Ok(Degeneracy::Nondegenerate) => {
                headline.push_str("; inner code nondegenerate");
                r.kv("degenerate", "none");
            }
            Err(e) => return Outcome::usage(e),
        }
    }
    r.line(headline);
    if let Some(wit) = distance.witness() {
        r.line(format!("undetectable error of least weight: {wit}"));
    }

    match &union {
        Some(u) if u.num_codes() > 1 => match orthogonal_to_first(u) {
            Ok(true) => {
                r.line(format!("{} inner codes pairwise orthogonal", u.num_codes()));
                r.kv("orthogonal", "true");
            }
            Ok(false) => {
                ok = false;
                r.line("inner codes not pairwise orthogonal");
                r.kv("orthogonal", "false");
            }
            Err(e) => return Outcome::usage(e),
        },
        _ => r.kv("orthogonal", "n/a"),
    }

    if dense {
        match (&file.code, &union) {
            (_, _) if n > 12 => {
                r.line(format!("dense check skipped: {n} qubits exceeds 12"));
                r.kv("dense_distance", "skipped");
            }
            (Code::Hybrid(_), Some(u)) => match u.union_distance_dense(w) {
                Ok(dd) => {
                    let agree = dd.exact() == distance.exact();
                    ok &= agree;
                    r.line(format!(
                        "dense distance {} ({})",
                        show_distance(&dd),
                        if agree { "agrees" } else { "DISAGREES" }
                    ));
                    r.kv("dense_distance", show_distance(&dd));
                }
                Err(e) => return Outcome::usage(e),
            },
            _ => {
                r.line("dense distance is the primary check for union files");
                r.kv("dense_distance", show_distance(&distance));
            }
        }
    }
    r.finish(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

/// Orthogonality of a hybrid-style union: every code against the first
/// covers every pair, since only sign differences matter.
fn orthogonal_to_first(u: &StabilizerUnionCode) -> hybrid_core::Result<bool> {
    let codes = u.inner_codes();
    if codes.len() <= 8 {
        for a in 0..codes.len() {
            for b in a + 1..codes.len() {
                if !orthogonal_pair(&codes[a], &codes[b])? {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    for b in &codes[1..] {
        if !orthogonal_pair(&codes[0], b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn enumerate(path: &str, format: Format) -> Outcome {
    let file = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let union = match &file.code {
        Code::Hybrid(h) => match h.as_union() {
            Ok(u) => u,
            Err(e) => return Outcome::usage(e),
        },
        Code::Union(u) => u.clone(),
    };
    let w = match EnumeratorEngine::new().distributions(&union) {
        Ok(w) => w,
        Err(e) => return Outcome::usage(e),
    };
    let n = w.n();
    let table = KrawtchoukTable::new(2, n);
    let mut r = Report::new(format);
    let m = w.m_count();
    let mut residual_zero = true;
    for a in 0..m {
        for b in 0..m {
            let tb = macwilliams_with(&table, w.pair_a(a, b), w.k_dim());
            residual_zero &= tb.as_slice() == w.pair_b(a, b);
            if m <= 8 {
                let key = format!("pair.{}.{}", a + 1, b + 1);
                r.both(&format!("{key}.A"), &format!("A({},{})", a + 1, b + 1), seq(w.pair_a(a, b)));
                r.both(&format!("{key}.B"), &format!("B({},{})", a + 1, b + 1), seq(w.pair_b(a, b)));
            }
        }
    }
    let (a, b) = w.aggregate();
    r.both("A", "A", seq(&a));
    r.both("B", "B", seq(&b));
    let tb = macwilliams_with(&table, &a, w.k_dim());
    let mm = BigRational::from_integer(m.into());
    let residual: Vec<BigRational> = tb.iter().zip(&b).map(|(x, y)| x * &mm - y).collect();
    residual_zero &= residual.iter().all(Zero::is_zero);
    r.both(
        "macwilliams_residual",
        "MacWilliams",
        if residual_zero { "0".to_string() } else { format!("nonzero: {}", seq(&residual)) },
    );
    r.both("shadow", "shadow", seq(&shadow_values_with(&table, &a)));
    let avg = w.class_averages();
    r.kv("class.A_diag", seq(&avg.a_diag));
    r.kv("class.B_diag", seq(&avg.b_diag));
    if let (Some(ao), Some(bo)) = (&avg.a_off, &avg.b_off) {
        r.kv("class.A_off", seq(ao));
        r.kv("class.B_off", seq(bo));
    }
    r.finish(if residual_zero { EXIT_OK } else { EXIT_MISMATCH })
}

/// LP query in either `[[n,k:m,d]]` (exponents) or `((n,K:M,d))` form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpQuery {
    pub n: usize,
    pub d: usize,
    pub q: u32,
    pub k: Option<u32>,
    pub m: Option<u32>,
    pub big_k: Option<u64>,
    pub big_m: Option<u64>,
    pub nested: Option<bool>,
    pub shadow: Option<bool>,
}

impl LpQuery {
    pub fn instance(&self) -> Result<LpInstance, String> {
        let stabilizer_form = self.k.is_some() || self.m.is_some();
        if stabilizer_form && (self.big_k.is_some() || self.big_m.is_some()) {
            return Err("give either --k/--m or --K/--M, not both".into());
        }
        let q = BigUint::from(self.q);
        let k_dim = match (self.k, self.big_k) {
            (Some(k), _) => q.pow(k),
            (None, Some(kd)) => BigUint::from(kd),
            (None, None) => BigUint::from(1u32),
        };
        let m_count = match (self.m, self.big_m) {
            (Some(m), _) => (self.q as u64)
                .checked_pow(m)
                .ok_or_else(|| "q^m does not fit in 64 bits".to_string())?,
            (None, Some(md)) => md,
            (None, None) => 1,
        };
        let inst = LpInstance::with_dimension(self.n, k_dim, m_count, self.d, self.q)
            .map_err(|e| e.to_string())?
            .with_nested(self.nested.unwrap_or(stabilizer_form));
        let inst = match self.shadow {
            Some(on) => inst.with_shadow(on),
            None => inst,
        };
        if inst.shadow && inst.q != 2 {
            return Err(hybrid_core::Error::ShadowUndefined(inst.q).to_string());
        }
        Ok(inst)
    }
}

pub fn lp(query: &LpQuery, format: Format) -> Outcome {
    let inst = match query.instance() {
        Ok(i) => i,
        Err(e) => return Outcome::usage(e),
    };
    let res = match feasible(&inst) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let mut r = Report::new(format);
    let head = format!(
        "(({},{}:{},{}))_{}",
        inst.n, inst.k_dim, inst.m_count, inst.d, inst.q
    );
    r.both("instance", "instance", &head);
    r.both(
        "flags",
        "flags",
        format!("shadow={} nested={}", inst.shadow, inst.nested),
    );
    let status = match res.status {
        LpStatus::Feasible => "Feasible",
        LpStatus::Infeasible => "Infeasible",
    };
    r.both("status", "status", status);
    r.both("verified", "verified", res.verify());
    if let Some(x) = &res.witness {
        r.line("witness (nonzero entries):");
        for (name, v) in res.system.names.iter().zip(x) {
            if !v.is_zero() {
                r.line(format!("  {name} = {v}"));
            }
            r.kv(&format!("witness.{name}"), v);
        }
    }
    if let Some(y) = &res.certificate {
        r.line("Farkas certificate (nonzero multipliers):");
        for (c, v) in res.system.constraints.iter().zip(y) {
            if !v.is_zero() {
                r.line(format!("  {} : {v}", c.label));
                r.kv(&format!("certificate.{}", c.label), v);
            }
        }
    }
    r.finish(if res.is_feasible() { EXIT_OK } else { EXIT_MISMATCH })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Dist2 { n: usize },
    Gottesman { j: usize },
    Seed { a: usize },
    Paste { m: usize, a: usize },
}

/// Builds a family member, re-verifies it from its emitted text and writes
/// the file.
pub fn family(kind: Family, out: Option<&str>, format: Format) -> Outcome {
    use hybrid_core::families::*;
    let (code, claimed_d, note) = match kind {
        Family::Dist2 { n } => (dist2_family(n), 2, None),
        Family::Gottesman { j } => match gottesman(j) {
            Ok(g) => (
                Ok(hybrid_core::HybridCode::from_stabilizer(&g.group)),
                3,
                Some(format!("bit order {:?}", g.convention)),
            ),
            Err(e) => (Err(e), 3, None),
        },
        Family::Seed { a } => (seed_code(a), 3, None),
        Family::Paste { m, a } => (paste(m, a), 3, None),
    };
    let code = match code {
        Ok(c) => c,
        Err(e @ hybrid_core::Error::DistanceVerificationFailed { .. }) => {
            return Outcome {
                text: format!("error: {e}\n"),
                status: EXIT_MISMATCH,
            }
        }
        Err(e) => return Outcome::usage(e),
    };
    let distance = match code.distance(claimed_d) {
        Ok(d) => d,
        Err(e) => return Outcome::usage(e),
    };
    let file = CodeFile {
        declared: Some(Params::of_hybrid(&code, distance.exact())),
        code: Code::Hybrid(code),
    };
    let text = file.emit();
    // Re-verify from the emitted text.
    let reparsed = match CodeFile::parse(&text) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(format!("emitted file does not parse: {e}")),
    };
    let round_trip = reparsed.emit() == text;
    let params = file.declared.expect("set above");
    let mut r = Report::new(format);
    let ok = distance.exact() == Some(claimed_d) && round_trip;
    r.both("params", "params", params);
    if let Some(note) = note {
        r.both("convention", "convention", note);
    }
    if let Some(w) = distance.witness() {
        r.both("witness", "witness", w);
    }
    if distance.exact() != Some(claimed_d) {
        r.line(format!(
            "distance {} differs from the family's {claimed_d}",
            show_distance(&distance)
        ));
    }
    r.kv("round_trip", round_trip);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return Outcome::usage(format!("{path}: {e}"));
            }
            r.both("written", "written", path);
        }
        None => {
            if format == Format::Plain {
                r.line("---");
                r.line(text.trim_end());
            }
        }
    }
    r.finish(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

pub fn sweep_cmd(n_min: usize, n_max: usize, d: usize, q: u32, nested: bool, format: Format) -> Outcome {
    if n_min == 0 || n_min > n_max {
        return Outcome::usage("need 1 <= n-min <= n-max");
    }
    let rows = match sweep(n_min..=n_max, d, q, nested) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let mut r = Report::new(format);
    let mut monotone = true;
    for row in &rows {
        monotone &= row.is_monotone();
        let frontier = row
            .frontier
            .iter()
            .map(|(k, m)| format!("({k},{m})"))
            .collect::<Vec<_>>()
            .join(" ");
        let feasible = row.grid.iter().filter(|c| c.2).count();
        r.line(format!(
            "n={:<3} feasible {feasible}/{} frontier (K,M): {frontier}",
            row.n,
            row.grid.len()
        ));
        r.kv(&format!("n{}.frontier", row.n), &frontier);
        r.kv(&format!("n{}.feasible", row.n), feasible);
    }
    r.both("monotone", "monotone", monotone);
    r.finish(if monotone { EXIT_OK } else { EXIT_MISMATCH })
}
