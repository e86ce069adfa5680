//! Set families: the text format, layer profiles and the built-in
//! constructions.
//!
//! ```bash
//! cargo run -p posetlab --example families
//! ```

use posetlab::family::{f23_construction, f23_printed_size, lubell_tail_family, middle_layers, sigma};
use posetlab::SetFamily;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = SetFamily::parse("n=4\n2,1\n3\n-\n1,2\n")?;
    print!("canonical form of a messy file:\n{}", f.to_text());

    let m = middle_layers(6, 2)?;
    println!("middle_layers(6,2): {} sets, sigma = {}, profile {:?}", m.len(), sigma(6, 2)?, m.layer_profile().counts());

    for n in [6, 8, 10] {
        let f23 = f23_construction(n)?;
        println!(
            "F23 over [{n}]: {} sets (closed form printed for it: {})",
            f23.len(),
            f23_printed_size(n)?
        );
    }

    let tail = lubell_tail_family(10, 3)?;
    println!("tail family (n=10, h=3): profile {:?}", tail.layer_profile().counts());
    Ok(())
}
