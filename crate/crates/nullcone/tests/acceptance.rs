//! Acceptance suite: prints one PASS/FAIL line per criterion and fails if any criterion fails.

use std::process::ExitCode;

use nullcone::verify::{run, CRITERIA, DEFAULT_SEED};

fn main() -> ExitCode {
    let ids: Vec<u8> = CRITERIA.iter().map(|c| c.id).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<u8>>(), "criteria must be numbered 1..=10");
    println!("\nrunning {} acceptance criteria (seed {DEFAULT_SEED})", ids.len());
    let mut failed = 0;
    for id in ids {
        let outcome = run(id, DEFAULT_SEED).expect("known criterion");
        if !outcome.passed() {
            failed += 1;
        }
        println!("{outcome}");
    }
    println!("acceptance: {} passed, {failed} failed\n", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
