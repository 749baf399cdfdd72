//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! status 1 if any criterion fails.

use hybrid_core::enumerators::all_nonnegative;
use hybrid_core::*;
use num_rational::BigRational;
use std::str::FromStr;
use std::time::{Duration, Instant};

// Runtime budgets, per criterion unless noted.
const UNION_BUDGET: Duration = Duration::from_secs(5);
const SEED_BUDGET: Duration = Duration::from_secs(120);
const DIST2_BUDGET: Duration = Duration::from_secs(10);
const PASTE_M1_BUDGET: Duration = Duration::from_secs(30); // each code
const PASTE_M2_BUDGET: Duration = Duration::from_secs(600);
const LP_BUDGET: Duration = Duration::from_secs(30); // each instance

// Exact comparisons throughout: rationals are compared with zero tolerance.

struct Report {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn within(&mut self, start: Instant, budget: Duration, what: &str) {
        let t = start.elapsed();
        self.check(t < budget, format!("{what} took {t:.2?}, budget {budget:?}"));
    }
}

fn rat(s: &str) -> BigRational {
    BigRational::from_str(s).unwrap()
}

fn rats(v: &[&str]) -> Vec<BigRational> {
    v.iter().map(|s| rat(s)).collect()
}

fn show(v: &[BigRational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn six_qubit_union() -> Result<StabilizerUnionCode> {
    let ca = StabilizerGroup::from_strings(&["XXZIZI", "ZXXZII", "IZXXZI", "ZIZXXI", "IIIIIX"])?;
    let cb = StabilizerGroup::from_strings(&["YIZXXY", "ZXIIXZ", "IZXXXX", "IIIZIZ", "ZZZIZI"])?;
    StabilizerUnionCode::new(vec![ca, cb])
}

/// A named code with its union form and, when it is a hybrid stabilizer
/// code, the symplectic form.
struct Entry {
    name: String,
    union: StabilizerUnionCode,
    hybrid: Option<HybridCode>,
}

fn hybrid_entry(name: impl Into<String>, h: HybridCode) -> Result<Entry> {
    Ok(Entry {
        name: name.into(),
        union: h.as_union()?,
        hybrid: Some(h),
    })
}

/// Every code constructed in criteria 1 to 5.
fn catalog() -> Result<Vec<Entry>> {
    let mut out = vec![Entry {
        name: "six-qubit union".into(),
        union: six_qubit_union()?,
        hybrid: None,
    }];
    for a in families::SEED_LENGTHS {
        out.push(hybrid_entry(format!("seed a={a}"), seed_code(a)?)?);
    }
    for n in [5, 7, 9, 11, 13, 15] {
        out.push(hybrid_entry(format!("dist2 n={n}"), dist2_family(n)?)?);
    }
    for a in families::SEED_LENGTHS {
        out.push(hybrid_entry(format!("paste m=1 a={a}"), paste(1, a)?)?);
    }
    out.push(hybrid_entry("paste m=2 a=7", paste(2, 7)?)?);
    for j in 3..=5 {
        for order in [families::BitOrder::Msb, families::BitOrder::Lsb] {
            if let Ok(g) = families::gottesman_with(j, order) {
                out.push(hybrid_entry(
                    format!("gottesman j={j} {order:?}"),
                    HybridCode::from_stabilizer(&g),
                )?);
            }
        }
    }
    Ok(out)
}

fn criterion_1(r: &mut Report) -> Result<()> {
    let start = Instant::now();
    let u = six_qubit_union()?;
    let w = enumerators::distributions(&u)?;
    let aa = rats(&["1", "1", "0", "0", "15", "15", "0"]);
    let bb = rats(&["1", "0", "1", "0", "11", "16", "3"]);
    let agg = rats(&["1", "1/4", "1/4", "0", "6", "31/4", "3/4"]);
    r.check(w.pair_a(0, 0) == aa.as_slice(), format!("A(a,a) = {}", show(w.pair_a(0, 0))));
    r.check(w.pair_a(1, 1) == bb.as_slice(), format!("A(b,b) = {}", show(w.pair_a(1, 1))));
    let (a, _) = w.aggregate();
    r.check(a == agg, format!("A = {}", show(&a)));

    let d = u.union_distance_dense(2)?;
    r.check(d.exact() == Some(1), format!("union distance {d:?}"));
    let bases = u
        .inner_codes()
        .iter()
        .map(|s| CodeBasis::new(s, 12))
        .collect::<Result<Vec<_>>>()?;
    let e = pauli_from_string("IIIIXI")?;
    let kl = kl_check_bases(&bases, &e);
    r.check(
        matches!(kl, KlOutcome::Undetectable(KlFailure::OffDiagonal(..))),
        format!("IIIIXI: {kl:?}"),
    );
    for (i, s) in u.inner_codes().iter().enumerate() {
        let d = HybridCode::from_stabilizer(s).distance(3)?;
        r.check(d.exact() == Some(3), format!("inner code {i}: {d:?}"));
    }
    r.within(start, UNION_BUDGET, "six-qubit union");
    Ok(())
}

fn criterion_2(r: &mut Report) -> Result<()> {
    let start = Instant::now();
    let expected = [(7, 1, 1), (9, 2, 2), (10, 3, 2), (11, 4, 2)];
    for (a, k, m) in expected {
        let h = seed_code(a)?;
        r.check(h.params() == (a, k, m), format!("seed {a}: params {:?}", h.params()));
        let d = h.distance(3)?;
        r.check(d.exact() == Some(3), format!("seed {a}: distance {d:?}"));
        match h.inner_degenerate(3)? {
            Degeneracy::Degenerate(p) => {
                let inside = h.inner_stabilizer().contains_signed(&p)?;
                r.check(
                    p.weight() == 2 && inside,
                    format!("seed {a}: degeneracy witness {p}"),
                );
                r.note(format!("seed {a}: degenerate inner code, witness {p}"));
            }
            Degeneracy::Nondegenerate => r.check(false, format!("seed {a}: nondegenerate")),
        }
    }
    let h = seed_code(7)?;
    let u = h.as_union()?;
    let bases = u
        .inner_codes()
        .iter()
        .map(|s| CodeBasis::new(s, 12))
        .collect::<Result<Vec<_>>>()?;
    let mut disagreements = 0usize;
    let mut checked = 0usize;
    for w in 0..=3 {
        for e in enumerate_paulis(7, w)? {
            checked += 1;
            if h.is_detectable(&e)? != kl_check_bases(&bases, &e).is_detectable() {
                disagreements += 1;
            }
        }
    }
    r.check(disagreements == 0, format!("gen7 dense KL disagrees on {disagreements} Paulis"));
    r.note(format!("gen7 dense KL cross-check over {checked} Paulis of weight <= 3"));
    r.within(start, SEED_BUDGET, "seed codes");
    Ok(())
}

fn criterion_3(r: &mut Report) -> Result<()> {
    let start = Instant::now();
    for n in [5, 7, 9, 11, 13, 15] {
        let h = dist2_family(n)?;
        r.check(h.params() == (n, n - 3, 1), format!("n={n}: params {:?}", h.params()));
        let d = h.distance(2)?;
        r.check(
            d.exact() == Some(2) && d.witness().is_some_and(|w| w.weight() == 2),
            format!("n={n}: distance {d:?}"),
        );
    }
    for n in [4, 6] {
        let got = dist2_family(n);
        r.check(
            matches!(got, Err(Error::EvenLengthRejected(m)) if m == n),
            format!("n={n}: expected rejection"),
        );
    }
    r.within(start, DIST2_BUDGET, "distance-2 family");
    Ok(())
}

fn criterion_4(r: &mut Report) -> Result<()> {
    for (a, expect) in [(7, (39, 31, 1)), (9, (41, 32, 2)), (10, (42, 33, 2)), (11, (43, 34, 2))] {
        let start = Instant::now();
        let h = paste(1, a)?;
        r.check(h.params() == expect, format!("m=1 a={a}: params {:?}", h.params()));
        let d = h.distance(2)?;
        r.check(matches!(d, Distance::AtLeast(3)), format!("m=1 a={a}: {d:?}"));
        r.within(start, PASTE_M1_BUDGET, &format!("paste m=1 a={a}"));
    }
    let start = Instant::now();
    let (m, a) = (2, 7);
    let n = ((1usize << (2 * m + 5)) - 32) / 3 + a;
    let h = paste(m, a)?;
    let expect = (n, n - 2 * m - 6, 1);
    r.check(h.params() == expect, format!("m=2 a=7: params {:?}, closed form {expect:?}", h.params()));
    let d = h.distance(2)?;
    r.check(matches!(d, Distance::AtLeast(3)), format!("m=2 a=7: {d:?}"));
    r.note(format!("m=2 a=7 gives [[{},{}:{},3]]", h.params().0, h.params().1, h.params().2));
    r.within(start, PASTE_M2_BUDGET, "paste m=2 a=7");
    Ok(())
}

fn criterion_5(r: &mut Report) -> Result<()> {
    for j in 3..=5usize {
        let n = 1usize << j;
        match gottesman(j) {
            Ok(g) => {
                let rank = g.group.rank();
                r.check(
                    g.group.num_qubits() == n && n - rank == n - j - 2,
                    format!("j={j}: rank {rank}"),
                );
                r.note(format!("j={j}: [[{n},{},3]] with {:?} bit order", n - rank, g.convention));
            }
            Err(e) => {
                for order in [families::BitOrder::Msb, families::BitOrder::Lsb] {
                    let why = match families::gottesman_with(j, order) {
                        Ok(s) => match min_weight_outside(&s, &s, 2)? {
                            MinWeight::Found { weight, witness } => {
                                format!("undetectable weight-{weight} Pauli {witness}")
                            }
                            MinWeight::NoneUpTo(_) => "distance 3".into(),
                        },
                        Err(e) => e.to_string(),
                    };
                    r.note(format!("j={j} {order:?}: {why}"));
                }
                r.check(false, format!("j={j}: {e}"));
            }
        }
    }
    Ok(())
}

fn criterion_6(r: &mut Report) -> Result<()> {
    let infeasible = [(10, 4, 1, 3), (12, 5, 1, 3), (10, 2, 1, 4)];
    let feasible_stab = [(7, 1, 1, 3), (9, 2, 2, 3), (11, 4, 2, 3)];
    let run = |r: &mut Report, name: String, inst: LpInstance, want: LpStatus| -> Result<()> {
        let start = Instant::now();
        let res = feasible(&inst)?;
        r.check(res.verify(), format!("{name}: witness/certificate fails re-verification"));
        r.check(res.status == want, format!("{name}: {:?}, expected {want:?}", res.status));
        r.within(start, LP_BUDGET, &name);
        Ok(())
    };
    for (n, k, m, d) in infeasible {
        let inst = LpInstance::stabilizer(n, k, m, d)?.with_shadow(true).with_nested(true);
        run(r, format!("[[{n},{k}:{m},{d}]]"), inst.clone(), LpStatus::Infeasible)?;
        let off = feasible(&inst.with_nested(false))?;
        r.note(format!("[[{n},{k}:{m},{d}]] nested off: {:?}", off.status));
    }
    for (n, k, m, d) in feasible_stab {
        let inst = LpInstance::stabilizer(n, k, m, d)?.with_shadow(true).with_nested(true);
        run(r, format!("[[{n},{k}:{m},{d}]]"), inst, LpStatus::Feasible)?;
    }
    for (n, kd, md, d) in [(10, 8, 6, 3), (13, 8, 3, 3)] {
        let inst = LpInstance::new(n, kd, md, d, 2)?.with_nested(false);
        run(r, format!("(({n},{kd}:{md},{d}))"), inst, LpStatus::Feasible)?;
    }
    Ok(())
}

fn criterion_7(r: &mut Report, codes: &[Entry], engine: &EnumeratorEngine) -> Result<()> {
    for c in codes {
        let w = engine.distributions(&c.union)?;
        let n = w.n();
        let table = KrawtchoukTable::new(2, n);
        let m = w.m_count();
        for a in 0..m {
            for b in 0..m {
                let tb = enumerators::macwilliams_with(&table, w.pair_a(a, b), w.k_dim());
                r.check(
                    tb.as_slice() == w.pair_b(a, b),
                    format!("{}: MacWilliams mismatch at pair ({a},{b})", c.name),
                );
                let sh = enumerators::shadow_values_with(&table, w.pair_a(a, b));
                r.check(all_nonnegative(&sh), format!("{}: negative shadow at pair ({a},{b})", c.name));
            }
        }
        let (agg, _) = w.aggregate();
        let sh = enumerators::shadow_values_with(&table, &agg);
        r.check(all_nonnegative(&sh), format!("{}: negative aggregate shadow", c.name));
    }
    r.note(format!("{} codes checked", codes.len()));
    Ok(())
}

fn criterion_8(r: &mut Report, codes: &[Entry], engine: &EnumeratorEngine) -> Result<()> {
    let mut count = 0;
    for c in codes.iter().filter(|c| c.union.num_qubits() <= 11) {
        let n = c.union.num_qubits();
        let w = engine.distributions(&c.union)?;
        let from_enum = distance_from_enumerators(&w);
        let searched = match &c.hybrid {
            Some(h) => h.distance(n)?,
            None => c.union.union_distance_dense(n)?,
        };
        let searched = searched.exact().unwrap_or(n + 1);
        r.check(
            from_enum == searched,
            format!("{}: enumerators give {from_enum}, search gives {searched}", c.name),
        );
        count += 1;
    }
    r.note(format!("{count} codes with n <= 11 compared"));
    Ok(())
}

fn criterion_9(r: &mut Report) -> Result<()> {
    // (label, quantum rows, classical rows, n, K, M)
    let cases: [(&str, &[&str], &[&str], u32, u64, u64); 4] = [
        ("n=1 K=1 M=2", &[], &["Z"], 1, 1, 2),
        ("n=2 K=2 M=1", &["ZZ"], &[], 2, 2, 1),
        ("n=2 K=1 M=2", &["ZZ"], &["XX"], 2, 1, 2),
        ("n=3 K=2 M=2", &["ZZI"], &["IIZ"], 3, 2, 2),
    ];
    for (label, q, c, n, kd, md) in cases {
        let h = HybridCode::from_strings(q, c)?;
        let projectors = h
            .as_union()?
            .inner_codes()
            .iter()
            .map(|s| projector(s, 12))
            .collect::<Result<Vec<_>>>()?;
        let dense = detectable_space_dim_dense(&projectors, 3)?;
        let formula = detectable_dimension(n, kd, md, 2);
        r.check(
            formula == dense.into(),
            format!("{label}: dense rank {dense}, formula {formula}"),
        );
        r.note(format!("{label}: {dense}"));
    }
    for n in 1..=8u32 {
        for k in 0..=n {
            for m in 1..=n - k {
                let (kd, md) = (1u64 << k, 1u64 << m);
                let hybrid = detectable_dimension(n, kd, md, 2);
                let plain = detectable_dimension(n, kd * md, 1, 2);
                r.check(hybrid > plain, format!("n={n} K={kd} M={md}: {hybrid} <= {plain}"));
            }
        }
    }
    Ok(())
}

fn criterion_10(r: &mut Report, codes: &[Entry], engine: &EnumeratorEngine) -> Result<()> {
    for c in codes {
        let w = engine.distributions(&c.union)?;
        let n = w.n();
        let d = distance_from_enumerators(&w).clamp(1, n);
        let inst = match &c.hybrid {
            Some(h) => LpInstance::stabilizer(n, h.k() as u32, h.m() as u32, d)?,
            None => {
                let kd = 1u64 << c.union.k();
                LpInstance::new(n, kd, c.union.num_codes() as u64, d, 2)?
            }
        };
        let violations = check_point(&inst, &w.class_averages())?;
        r.check(
            violations.is_empty(),
            format!("{}: violates {}", c.name, violations.join(", ")),
        );
    }
    r.note(format!("{} codes checked", codes.len()));
    Ok(())
}

fn main() {
    let titles = [
        "six-qubit union enumerators",
        "seed codes",
        "distance-2 family",
        "pasted family",
        "Gottesman codes",
        "LP rulings",
        "MacWilliams identity",
        "enumerator-distance equivalence",
        "detectable dimension",
        "constructive LP soundness",
    ];
    let engine = EnumeratorEngine::new();
    let codes = catalog();
    let mut failed = 0;
    for (i, title) in titles.iter().enumerate() {
        let mut r = Report::new();
        let start = Instant::now();
        let run = match (i + 1, &codes) {
            (1, _) => criterion_1(&mut r),
            (2, _) => criterion_2(&mut r),
            (3, _) => criterion_3(&mut r),
            (4, _) => criterion_4(&mut r),
            (5, _) => criterion_5(&mut r),
            (6, _) => criterion_6(&mut r),
            (7, Ok(c)) => criterion_7(&mut r, c, &engine),
            (8, Ok(c)) => criterion_8(&mut r, c, &engine),
            (9, _) => criterion_9(&mut r),
            (10, Ok(c)) => criterion_10(&mut r, c, &engine),
            (_, Err(e)) => Err(e.clone()),
            _ => unreachable!(),
        };
        if let Err(e) = run {
            r.failures.push(format!("error: {e}"));
        }
        let verdict = if r.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {:>2}: {title} ({:.2?})", i + 1, start.elapsed());
        for f in &r.failures {
            println!("      failed: {f}");
        }
        for n in &r.notes {
            println!("      note: {n}");
        }
        if !r.failures.is_empty() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", titles.len() - failed, titles.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

