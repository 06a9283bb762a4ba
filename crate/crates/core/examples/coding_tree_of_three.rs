//! The eight-node coding tree of the ordinal 3: validation, quotient, collapse.
//!
//! Run with `cargo run --example coding_tree_of_three`.

use stf::codec::{self, CodingPair};
use stf::{Budget, HfSet};

const TREE3: &str = "\
root 3
edge 0 3
edge 1 3
edge 2 3
edge 0' 1
edge 0'' 2
edge 1' 2
edge 0''' 1'
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair: CodingPair = TREE3.parse()?;
    print!("validation: {}", pair.validate());
    let tree = pair.into_tree()?;
    println!("decoded: {}", tree.decode());
    for label in ["3", "2", "1'", "0'''"] {
        println!("level of {label}: {}", tree.level_of(label)?);
    }

    let q = tree.quotient();
    println!("quotient ({} representatives):\n{q}", q.reps.len());
    println!(
        "extensional {}, well-founded {}",
        q.is_extensional(),
        q.is_well_founded()
    );
    println!("collapse: {}", q.collapse()?);

    // Re-encoding 3 canonically gives an isomorphic tree with different labels.
    let canonical = codec::encode(&HfSet::ordinal(3, Budget::default())?, Budget::default())?;
    println!("canonical encoding:\n{canonical}");
    println!("isomorphic to the figure tree: {}", tree.is_isomorphic(&canonical));

    // A cycle violates well-foundedness.
    let cyclic = CodingPair::new("r", [("a", "r"), ("b", "a"), ("a", "b")]);
    print!("cyclic pair:\n{}", cyclic.validate());
    Ok(())
}
