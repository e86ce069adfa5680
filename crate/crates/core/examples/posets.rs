//! Building posets: named families, duals, ranks, tree classes and the JSON
//! file format.
//!
//! ```bash
//! cargo run -p posetlab --example posets
//! ```

use posetlab::poset::{height_two_trees, NamedPoset, T3Reading};
use posetlab::Poset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["chain(3)", "y(2,2)", "y'(2,2)", "t3(3)", "t3c(2)", "multilevel(1,2,1)"] {
        let named: NamedPoset = name.parse()?;
        let p = named.build()?;
        let ranks = p.rank_assignment();
        println!(
            "{name:<18} {:>2} elements, height {}, graded {:<5} {:?}",
            p.len(),
            p.height(),
            ranks.graded,
            p.classify_tree()
        );
    }

    let y22 = posetlab::poset::y(2, 2)?;
    println!("\ny(2,2) as JSON: {}", y22.to_json());
    println!("its dual:       {}", y22.dual().to_json());

    let t = NamedPoset::T3 { r: 3, reading: T3Reading::Children }.build()?;
    println!("t3 with 3 children per non-leaf has {} elements", t.len());

    // Covers implied by transitivity are dropped on construction.
    let p = Poset::from_covers(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])?;
    println!("reduced covers: {:?}", p.cover_labels().collect::<Vec<_>>());

    for t in 2..=6 {
        println!("height-2 trees on {t} elements: {}", height_two_trees(t).len());
    }
    Ok(())
}
