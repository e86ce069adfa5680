//! Exact `La(n, {Y_{1,2}, Y'_{1,2}})` for small `n`: the middle layer for
//! even `n`, two copies of the middle layer of `[n-1]` for odd `n`.
//!
//! ```bash
//! cargo run --release -p posetlab --example katona_tarjan
//! ```

use std::time::Instant;

use posetlab::numbers::binomial_u64;
use posetlab::poset::{y, y_prime};
use posetlab::search::{la_exact, SearchConfig};
use posetlab::FreenessMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let forbidden = [y(1, 2)?, y_prime(1, 2)?];
    for n in 2..=5u32 {
        let start = Instant::now();
        let out = la_exact(n, &forbidden, &FreenessMode::Weak, &SearchConfig::default())?;
        let expected = if n % 2 == 0 {
            binomial_u64(n, n / 2)
        } else {
            2 * binomial_u64(n - 1, (n - 1) / 2)
        };
        println!(
            "n={n}: La = {} (expected {expected}), {} nodes, {:.2?}",
            out.value,
            out.nodes_explored,
            start.elapsed()
        );
        print!("{}", out.witness);
    }
    Ok(())
}
