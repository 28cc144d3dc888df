//! One PASS/FAIL line per acceptance criterion, each with its time budget.
//! Exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bracketdiag::quasi_iso::star_bar_factorization;
use bracketdiag::verify::{run, Limits, Suite, SuiteReport};
use bracketdiag::Parity;
use common::regression;

struct Outcome {
    ok: bool,
    note: String,
}

fn suite(suite: Suite, limits: Limits) -> Outcome {
    summarize(&run(suite, limits))
}

fn summarize(report: &SuiteReport) -> Outcome {
    let cases: usize = report.checks.iter().map(|c| c.cases).sum();
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{} ({}/{}) {}", c.name, c.failures, c.cases, c.detail))
        .collect();
    Outcome {
        ok: failed.is_empty(),
        note: if failed.is_empty() {
            format!("{} checks, {cases} cases", report.checks.len())
        } else {
            failed.join("; ")
        },
    }
}

fn asserts(f: impl FnOnce()) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(()) => Outcome { ok: true, note: "exact".into() },
        Err(e) => Outcome {
            ok: false,
            note: e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default(),
        },
    }
}

fn limits(suite: Suite, complexity: usize) -> Limits {
    Limits { complexity, ..suite.default_limits() }
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: Vec<(&str, u64, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("square-zero differential, all variants, i <= 4", 300, Box::new(|| suite(Suite::Complex, limits(Suite::Complex, 4)))),
        ("complexity-two regression, even", 1, Box::new(|| asserts(regression::even_complexity_two))),
        ("complexity-two regression, odd", 1, Box::new(|| asserts(regression::odd_complexity_two))),
        (
            "quotient complexity-three regression, both parities",
            10,
            Box::new(|| {
                asserts(|| {
                    regression::even_quotient_complexity_three();
                    regression::odd_quotient_complexity_three();
                })
            }),
        ),
        ("chord bialgebra primitives p1..p5, circular invariance i <= 4", 300, Box::new(|| suite(Suite::Chord, limits(Suite::Chord, 4)))),
        ("hopf axioms, i <= 4, both parities, B/B*/B0", 120, Box::new(|| suite(Suite::Hopf, limits(Suite::Hopf, 4)))),
        ("insertion homotopies, i1 + i2 <= 4", 300, Box::new(|| suite(Suite::Homotopy, limits(Suite::Homotopy, 4)))),
        ("quasi-isomorphisms and projection kernel, i <= 3", 300, Box::new(|| suite(Suite::QuasiIso, limits(Suite::QuasiIso, 3)))),
        ("operad identities and isomorphisms, arity <= 5", 600, Box::new(|| suite(Suite::Operad, Suite::Operad.default_limits()))),
        (
            "asterisk-preserving homology factorization, even, i <= 3",
            120,
            Box::new(|| {
                let rows = star_bar_factorization(Parity::Even, 3);
                let bad: Vec<String> = rows
                    .iter()
                    .filter(|r| r.observed != r.predicted)
                    .map(|r| format!("({},{}): {} vs {}", r.i, r.j, r.observed, r.predicted))
                    .collect();
                Outcome {
                    ok: bad.is_empty(),
                    note: if bad.is_empty() { format!("{} bidegrees", rows.len()) } else { bad.join(", ") },
                }
            }),
        ),
    ];

    let mut all = true;
    for (k, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let ok = outcome.ok && in_time;
        all &= ok;
        println!(
            "{} {:>2} {name} [{:.2}s / {budget}s] {}{}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            elapsed.as_secs_f64(),
            outcome.note,
            if in_time { "" } else { " (over time budget)" },
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
