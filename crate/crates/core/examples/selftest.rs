//! Seeded checks of the main results.

use spin_actions::selftest::{run_selftest, DEFAULT_SEED};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let r = run_selftest(seed);
    for c in &r.criteria {
        println!("{} {:>2}. {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.detail);
    }
    std::process::exit(if r.all_passed() { 0 } else { 2 });
}
