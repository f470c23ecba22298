//! Run the acceptance suite with a chosen seed: `cargo run --example acceptance -- 7`.

use nullcone::verify::{run_all, DEFAULT_SEED};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let outcomes = run_all(seed);
    for o in &outcomes {
        println!("{o}");
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    println!("{passed}/{} passed", outcomes.len());
}
