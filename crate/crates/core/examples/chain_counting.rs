//! Exact Lubell-type quantities: mass, pair count, chain-weight average,
//! 2-chains against the Kleitman bound, and the layer tail outside the
//! central window.
//!
//! ```bash
//! cargo run --release -p posetlab --example chain_counting
//! ```

use posetlab::chains::{
    chain_weight_average, count_2chains, kleitman_lower_bound, lubell_mass, pair_count, tail_diagnostic,
    ChainAverageMethod,
};
use posetlab::family::{lubell_tail_family, middle_layers};
use posetlab::SetFamily;

fn report(name: &str, f: &SetFamily) -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{name:<20} |F|={:<4} lubell={:<6} pairs={:<8} avg(formula)={:<4} avg(chains)={:<4} 2-chains={:<5} bound={}",
        f.len(),
        lubell_mass(f),
        pair_count(f),
        chain_weight_average(f, ChainAverageMethod::Formula)?,
        chain_weight_average(f, ChainAverageMethod::Enumeration)?,
        count_2chains(f),
        kleitman_lower_bound(f.len() as u64, f.n()),
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    report("middle_layers(6,1)", &middle_layers(6, 1)?)?;
    report("middle_layers(6,2)", &middle_layers(6, 2)?)?;
    report("tail(8,3)", &lubell_tail_family(8, 3)?)?;
    report("power set of [7]", &SetFamily::power_set(7)?)?;

    for n in [50, 100, 200, 400] {
        let d = tail_diagnostic(n);
        println!("n={n:<4} tail outside n/2 ± 2√(n ln n): {:<40} scaled ratio {:.3e}", d.tail.to_string(), d.ratio);
    }
    Ok(())
}
