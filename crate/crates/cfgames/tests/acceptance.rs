//! The full verification battery, one line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines; the test
//! fails iff any suite found a disagreement.

use std::time::Instant;

use cfgames::suites;

const SEED: u64 = 2026;

#[test]
fn acceptance() {
    println!("acceptance battery, seed {SEED}");
    let mut failed = Vec::new();
    for (number, name, run) in suites::criteria() {
        let start = Instant::now();
        let report = run(SEED);
        let elapsed = start.elapsed();
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "ACCEPTANCE {number:2} {status} — {name} ({} checks, {} failures, {:.2?})",
            report.cases, report.failure_count, elapsed
        );
        for note in &report.notes {
            println!("    note: {note}");
        }
        for failure in &report.failures {
            println!("    failure: {failure}");
        }
        if !report.passed() {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
