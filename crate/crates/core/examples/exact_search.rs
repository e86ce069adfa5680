//! Exact extremal numbers by branch and bound: Sperner values, the effect of
//! the mode, seeds, worker counts and a time budget.
//!
//! ```bash
//! cargo run --release -p posetlab --example exact_search
//! ```

use std::time::Duration;

use posetlab::family::middle_layers;
use posetlab::poset::{chain, y, y_prime};
use posetlab::search::{la_exact, SearchConfig};
use posetlab::FreenessMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c2 = [chain(2)?];
    for n in 1..=5 {
        let out = la_exact(n, &c2, &FreenessMode::Weak, &SearchConfig::default())?;
        println!("La({n}, chain(2)) = {:<3} after {} nodes", out.value, out.nodes_explored);
    }

    let yy = [y(2, 2)?, y_prime(2, 2)?];
    for mode in [FreenessMode::Weak, FreenessMode::Induced, FreenessMode::RankPreserving] {
        let out = la_exact(4, &yy, &mode, &SearchConfig::default())?;
        println!("n=4, {{Y(2,2), Y'(2,2)}}, {mode:<15}: {}", out.value);
    }

    let seeded = SearchConfig {
        workers: 4,
        symmetry: true,
        seed: Some(middle_layers(5, 2)?),
        ..SearchConfig::default()
    };
    let out = la_exact(5, &yy, &FreenessMode::RankPreserving, &seeded)?;
    println!("n=5 rank-preserving, seeded, 4 workers: {} (exact: {})", out.value, out.exact);

    let hurried = SearchConfig {
        budget: Some(Duration::from_millis(50)),
        seed: Some(middle_layers(6, 2)?),
        ..SearchConfig::default()
    };
    let out = la_exact(6, &yy, &FreenessMode::RankPreserving, &hurried)?;
    println!("n=6, seeded, 50 ms budget: at least {} (exact: {})", out.value, out.exact);
    println!("{}", out.to_json(&["y(2,2)".into(), "y'(2,2)".into()]));
    Ok(())
}
