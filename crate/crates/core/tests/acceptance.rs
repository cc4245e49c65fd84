//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use vvol_core::algebra::rational::{int, rat};
use vvol_core::audit::{errata, predictions, run_suite, Suite};
use vvol_core::flows::commutation_failures;
use vvol_core::minimal::b_poly;
use vvol_core::npoint::calibrate;
use vvol_core::volumes::{a_value, asymptotics_report, volume};
use vvol_core::{
    b_numbers, solve_minimal, verify_flows, ATable, FlowContext, MinimalTable, NPointEngine, OnePoint, Partition,
    PiMultiple, Rational, StratumKey, TPoly, Volume,
};

const FIXTURE_BUDGET: Duration = Duration::from_secs(5);
const FLOW_BUDGET: Duration = Duration::from_secs(30);
const ASYMPTOTIC_BOUND: f64 = 2.0;

struct Gate {
    hard_failures: Vec<String>,
}

impl Gate {
    fn report(&mut self, id: &str, ok: bool, detail: impl AsRef<str>) {
        println!("{} {id}: {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
        if !ok {
            self.hard_failures.push(id.to_string());
        }
    }
}

fn tp(terms: &[(&[u32], Rational)]) -> TPoly {
    let mut p = TPoly::zero(6);
    for (parts, c) in terms {
        p.add_term(Partition::new(parts.to_vec()).unwrap(), c.clone());
    }
    p
}

fn vol(mu: &[u32], rho: &[u32], engine: &NPointEngine, table: &MinimalTable) -> Option<PiMultiple> {
    let key = StratumKey::new(mu, rho).unwrap();
    match volume(&key, &a_value(&key, engine, table).unwrap()).unwrap() {
        Volume::Value(v) => Some(v),
        Volume::Empty => None,
    }
}

fn criterion_1(gate: &mut Gate) {
    let seed = b_numbers(6);
    let want = [int(1), rat(-1, 24), rat(7, 5760), rat(-31, 967680)];
    let got: Vec<Rational> = (0..4).map(|g| seed.get(2 * g)).collect();
    let odd_zero = (0..3).all(|g| seed.get(2 * g + 1) == int(0));
    gate.report("1 seed series", got == want && odd_zero, format!("b_0..b_3 = {}", join(&got)));
}

fn join(v: &[Rational]) -> String {
    v.iter().map(vvol_core::format_rational).collect::<Vec<_>>().join(", ")
}

fn criterion_2(gate: &mut Gate) {
    let printed = [
        (0, tp(&[(&[], int(1))])),
        (1, tp(&[])),
        (2, tp(&[(&[], rat(-1, 24)), (&[2], int(1))])),
        (3, tp(&[(&[3], int(1))])),
        (4, tp(&[(&[], rat(7, 5760)), (&[2], rat(-1, 24)), (&[4], int(1)), (&[2, 2], rat(1, 2))])),
        (5, tp(&[(&[3], rat(-1, 24)), (&[5], int(1)), (&[3, 2], int(1))])),
    ];
    let bad: Vec<u32> = printed.iter().filter(|(m, p)| b_poly(*m, 6) != *p).map(|(m, _)| *m).collect();
    gate.report("2 b-polynomials", bad.is_empty(), format!("six printed polynomials at cap 6, mismatched 2g: {bad:?}"));
}

fn criterion_3(gate: &mut Gate, table: &MinimalTable) {
    let a = |k| table.get(k).unwrap().with_cap(6);
    let a1 = a(1);
    let a2 = a(2);
    let mut ok = a1 == tp(&[(&[], rat(-1, 24)), (&[2], int(1))]) && a2 == tp(&[(&[3], int(1))]);
    let relations: [(u32, i64, TPoly); 4] = [
        (2, 1, a1.clone()),
        (3, 1, a2.clone()),
        (4, 2, &a(3) + &(&a1 * &a1).scale(&rat(1, 2))),
        (5, 6, &a(4) + &(&a2 * &a1).scale(&int(2))),
    ];
    for (m, fact, rhs) in &relations {
        ok &= b_poly(*m, 6).scale(&int(*fact)) == *rhs;
    }
    let cube = |c: Rational| {
        &(&(&a(5) + &(&a(3) * &a1).scale(&int(3))) + &(&a2 * &a2).scale(&int(2))) + &(&(&a1 * &a1) * &a1).scale(&c)
    };
    let lhs = b_poly(6, 6).scale(&int(24));
    let with_two_thirds = lhs == cube(rat(2, 3));
    let with_one_sixth = lhs == cube(rat(1, 6));
    let recorded = errata().unwrap().iter().any(|e| e.id == "genus-3-cube" && e.stated.contains("1/6"));
    gate.report(
        "3 minimal rows",
        ok && with_two_thirds && !with_one_sixth && recorded,
        format!(
            "relations through 3!·b̲_5/2 hold: {ok}; g=3 cube 2/3 holds: {with_two_thirds}; printed 1/6 holds: {with_one_sixth}; errata entry: {recorded}"
        ),
    );
}

fn criterion_4(gate: &mut Gate) {
    let start = Instant::now();
    let table = solve_minimal(12, 10).unwrap();
    let engine = NPointEngine::default();
    let fixtures: [(&[u32], Rational, i32); 4] =
        [(&[3], rat(1, 120), 4), (&[2, 2], rat(1, 135), 4), (&[5], rat(61, 108864), 6), (&[4, 2], rat(16, 42525), 6)];
    let mut lines = Vec::new();
    let mut ok = true;
    for (mu, coeff, pow) in fixtures {
        let got = vol(mu, &[], &engine, &table);
        ok &= got == Some(PiMultiple::new(coeff, pow));
        lines.push(format!("{mu:?} -> {}", got.map_or("empty".into(), |v| v.to_string())));
    }
    let elapsed = start.elapsed();
    gate.report(
        "4 holomorphic fixtures",
        ok && elapsed < FIXTURE_BUDGET,
        format!("{} in {:.2?} (budget {:?})", lines.join(", "), elapsed, FIXTURE_BUDGET),
    );
}

fn criterion_5(gate: &mut Gate, table: &MinimalTable) {
    let start = Instant::now();
    let ctx = FlowContext::with_caps(table, 12, 10).unwrap();
    let report = verify_flows(&ctx);
    let commute = commutation_failures(&ctx);
    let elapsed = start.elapsed();
    gate.report(
        "5 flow oracle",
        report.passed() && commute.is_empty() && elapsed < FLOW_BUDGET,
        format!(
            "k ≤ 12, 2 ≤ m ≤ 10: {} coefficient mismatches, {} non-commuting pairs, {:.2?} (budget {:?})",
            report.mismatches.len(),
            commute.len(),
            elapsed,
            FLOW_BUDGET
        ),
    );
}

fn criterion_6(gate: &mut Gate, table: &MinimalTable) {
    let engine = NPointEngine::default();
    let a = |k| table.get(k).unwrap().clone();
    let a22 = &a(3).scale(&int(3)) + &(&a(1) * &a(1)).scale(&rat(1, 2));
    let a32 = &a(4).scale(&int(4)) + &(&a(2) * &a(1)).scale(&int(2));
    let rows_ok = engine.a_poly(&[2, 2], table).unwrap() == a22 && engine.a_poly(&[3, 2], table).unwrap() == a32;
    gate.report("6a two-point rows", rows_ok, "a̲(2,2) = 3a̲((3)) + ½a̲((1))², a̲(3,2) = 4a̲((4)) + 2a̲((2))a̲((1))");

    let cal = calibrate(table).unwrap();
    println!("     target a̲(2,2,2) = {}", cal.target.with_cap(5));
    for c in &cal.candidates {
        println!(
            "     {:<10} a̲(2,2,2) = {}; marked-point failures: {:?}",
            c.convention.name(),
            c.value.with_cap(5),
            c.marked_point_failures
        );
    }
    if cal.matched.is_some() {
        gate.report(
            "6b three-point calibration",
            cal.locked == OnePoint::default(),
            format!("match, locked {}", cal.locked.name()),
        );
    } else {
        // Documented-fail is an admissible outcome; it is a hard failure
        // only if the outputs or the lock are missing.
        let documented = cal.candidates.len() == OnePoint::ALL.len() && cal.locked == OnePoint::default();
        println!(
            "FAIL 6b three-point calibration: documented-fail, no convention reproduces the target; all {} candidates recorded, default locked to {}",
            cal.candidates.len(),
            cal.locked.name()
        );
        if !documented {
            gate.hard_failures.push("6b documentation".into());
        }
    }
}

fn criterion_7(gate: &mut Gate, table: &MinimalTable) {
    let suite = run_suite(Suite::Properties, table).unwrap();
    let json = ATable::from_minimal(table).to_json();
    let byte_identical = ATable::from_json(&json).unwrap().to_json() == json;
    let rebuilt = ATable::from_json(&json).unwrap().to_minimal().unwrap() == *table;
    gate.report(
        "7 property suites",
        suite.passed && byte_identical && rebuilt,
        format!(
            "{} exhaustive checks, {} failures; cache round trip byte-identical: {byte_identical}; randomized suites in tests/properties.rs",
            suite.checks,
            suite.failures.len()
        ),
    );
}

fn criterion_8(gate: &mut Gate) {
    let table = solve_minimal(13, 10).unwrap();
    let mut ok = true;
    for rho in [&[][..], &[2], &[3]] {
        let rho = Partition::new(rho.to_vec()).unwrap();
        let rows = asymptotics_report(&rho, 13, &table).unwrap();
        let column: Vec<String> = rows.iter().map(|r| format!("k={}:{:.3}", r.k, r.normalized)).collect();
        ok &= !rows.is_empty() && rows.iter().all(|r| r.normalized > 0.0 && r.normalized <= ASYMPTOTIC_BOUND);
        println!("     ρ={rho}: {}", column.join(" "));
    }
    gate.report("8 asymptotics report", ok, format!("normalized columns within (0, {ASYMPTOTIC_BOUND}] for k ≤ 13"));
}

fn criterion_9(gate: &mut Gate, table: &MinimalTable) {
    let preds = predictions(table).unwrap();
    let h22 = preds.iter().find(|p| p.mu.parts() == [3, 3] && p.rho.is_empty());
    let ok = h22.is_some_and(|p| {
        p.volume == PiMultiple::new(rat(17, 50400), 6) && p.flag == "prediction — printed row conflicts"
    });
    let shown = h22.map_or("missing".to_string(), |p| format!("{} [{}]", p.volume, p.flag));
    gate.report("9 prediction ledger", ok, format!("μ=(3,3): {shown}"));
}

fn main() -> ExitCode {
    let mut gate = Gate { hard_failures: Vec::new() };
    let table = solve_minimal(12, 10).unwrap();
    criterion_1(&mut gate);
    criterion_2(&mut gate);
    criterion_3(&mut gate, &table);
    criterion_4(&mut gate);
    criterion_5(&mut gate, &table);
    criterion_6(&mut gate, &table);
    criterion_7(&mut gate, &table);
    criterion_8(&mut gate);
    criterion_9(&mut gate, &table);
    if gate.hard_failures.is_empty() {
        println!("acceptance: all hard criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing {:?}", gate.hard_failures);
        ExitCode::FAILURE
    }
}
