//! Looking for copies of a poset in a family under each freeness mode.
//!
//! ```bash
//! cargo run -p posetlab --example copy_detection
//! ```

use posetlab::embed::creates_copy_through;
use posetlab::family::{mask_of, middle_layers};
use posetlab::poset::{antichain, y, Coloring};
use posetlab::{find_copy, FreenessMode, SetFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let y22 = y(2, 2)?;
    let three = middle_layers(6, 3)?;
    let modes = [FreenessMode::Weak, FreenessMode::Induced, FreenessMode::RankPreserving];
    for mode in &modes {
        match find_copy(&three, &y22, mode)? {
            Some(e) => println!("{mode}: {}", e.to_json(&y22)),
            None => println!("{mode}: none"),
        }
    }

    // A chain of sets contains a weak antichain copy of nothing but itself.
    let chain = SetFamily::from_sets(3, &[&[1], &[1, 2], &[1, 2, 3]])?;
    let a2 = antichain(2)?;
    println!("antichain(2) in a chain, weak:    {}", find_copy(&chain, &a2, &FreenessMode::Weak)?.is_some());
    println!("antichain(2) in a chain, induced: {}", find_copy(&chain, &a2, &FreenessMode::Induced)?.is_some());

    // Colored copies: both leaves must land on sets of one size.
    let coloring = Coloring::from_labels(&y22, &[("x1", 0), ("x2", 1), ("y1", 2), ("y2", 2)])?;
    let skewed = SetFamily::from_sets(5, &[&[1], &[1, 2], &[1, 2, 3], &[1, 2, 4, 5]])?;
    println!(
        "weak Y(2,2) in skewed family: {}, colored: {}",
        find_copy(&skewed, &y22, &FreenessMode::Weak)?.is_some(),
        find_copy(&skewed, &y22, &FreenessMode::Colored(coloring))?.is_some()
    );

    // Incremental check: which set would complete a copy?
    let two = middle_layers(4, 2)?;
    let extra = mask_of(&[1]);
    let hit = creates_copy_through(&two, &y22, &FreenessMode::RankPreserving, extra)?;
    match hit {
        Some(e) => println!("adding {{1}} to the two middle layers of [4] completes {}", e.to_json(&y22)),
        None => println!("adding {{1}} to the two middle layers of [4] is safe"),
    }
    Ok(())
}
