//! Saturation of the middle layers and the layer-count probe.
//!
//! ```bash
//! cargo run --release -p posetlab --example saturation
//! ```

use posetlab::family::{format_mask, middle_layers, SetFamily};
use posetlab::poset::{chain, t_r3, y, y_prime};
use posetlab::search::{max_free_layers, saturation_check, Saturation};
use posetlab::FreenessMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let yy = [y(2, 2)?, y_prime(2, 2)?];
    for n in 4..=8 {
        let f = middle_layers(n, 2)?;
        let verdict = match saturation_check(&f, &yy, &FreenessMode::RankPreserving)? {
            Saturation::Saturated => "saturated".to_string(),
            Saturation::Counterexample(s) => format!("{} can be added", format_mask(s)),
        };
        println!("two middle layers of [{n}] vs rank-preserving Y(2,2), Y'(2,2): {verdict}");
    }

    let single = SetFamily::from_sets(2, &[&[1]])?;
    println!("{{1}} vs chain(2): {:?}", saturation_check(&single, &[chain(2)?], &FreenessMode::Weak)?);

    for (name, p, mode) in [
        ("chain(2)", chain(2)?, FreenessMode::Weak),
        ("y(2,2)", y(2, 2)?, FreenessMode::Weak),
        ("t3(2)", t_r3(2)?, FreenessMode::RankPreserving),
        ("t3(3)", t_r3(3)?, FreenessMode::RankPreserving),
    ] {
        println!("{name:<8} {mode:<15} n=8: {} middle layers stay free", max_free_layers(&p, 8, &mode)?);
    }
    Ok(())
}
