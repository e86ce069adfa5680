//! Peeling an inclusion graph to its (t-1)-core and greedily embedding every
//! height-two tree on t elements into it.
//!
//! ```bash
//! cargo run -p posetlab --example tree_embedding
//! ```

use posetlab::embed::{build_inclusion_bigraph, greedy_tree_embed, min_degree_subgraph};
use posetlab::family::middle_layers;
use posetlab::poset::height_two_trees;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = middle_layers(7, 2)?;
    let g = build_inclusion_bigraph(&f, 3, 4)?;
    println!(
        "layers 3-4 of [7]: {} vertices, {} edges, average degree {}",
        g.vertex_count(),
        g.edge_count(),
        g.average_degree().expect("nonempty")
    );
    for t in 3..=5 {
        let core = min_degree_subgraph(&g, t - 1);
        let trees = height_two_trees(t);
        let ok = trees.iter().filter(|tree| greedy_tree_embed(&core, tree).is_ok()).count();
        println!("t={t}: core has {} vertices; {ok}/{} trees embed", core.vertex_count(), trees.len());
        if let Some(tree) = trees.last() {
            let e = greedy_tree_embed(&core, tree)?;
            println!("  e.g. {}", e.to_json(tree));
        }
    }

    // A sparse graph peels away completely.
    let sparse = build_inclusion_bigraph(&middle_layers(3, 2)?, 1, 2)?;
    println!("order in which [3]'s layer graph peels at d=3: {:?}", sparse.peeling_order(3));
    Ok(())
}
