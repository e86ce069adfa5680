//! Runs every `verify paper` suite separately and prints each check with the
//! time its suite took.
//!
//! ```bash
//! cargo run --release -p posetlab --example verify_suites
//! ```

use std::time::Instant;

use posetlab::verify::{verify_paper, Suite, VerifyOptions};

fn main() {
    let mut all_passed = true;
    for suite in Suite::ALL {
        let opts = VerifyOptions {
            max_n: 7,
            suites: vec![suite],
        };
        let start = Instant::now();
        let report = verify_paper("verify paper", &opts);
        println!("== {suite} ({:.2?})", start.elapsed());
        for c in &report.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            println!("  {mark} {:<40} expected {:<18} actual {}", c.id, c.expected, c.actual);
        }
        for f in &report.flags {
            println!("  flag {}: {} {}", f.id, f.message, f.values);
        }
        all_passed &= report.passed();
    }
    println!("{}", if all_passed { "all checks passed" } else { "some checks failed" });
}
