//! Parsing, printing and basic operations on hereditarily finite sets.
//!
//! Run with `cargo run --example hf_basics`.

use stf::{Budget, HfSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();
    let x: HfSet = "{{},{{}},{}}".parse()?;
    println!("parsed (duplicates removed): {x}");
    println!("rank {}, {} members, ordinal? {}", x.rank(), x.len(), x.is_ordinal());

    let three = HfSet::ordinal(3, budget)?;
    println!("3 = {three}");
    println!("union of 3 = {}", three.union());
    println!("2 ∈ 3? {}", three.contains(&HfSet::ordinal(2, budget)?));

    let p = HfSet::kpair(&HfSet::empty(), &three);
    println!("Kuratowski pair (0, 3) = {p}");
    let (a, b) = p.as_kpair().expect("a pair");
    println!("projections: {a}, {b}");

    println!("transitive closure of {{3}}:");
    for y in HfSet::singleton(three).tc_single() {
        println!("  {y}");
    }

    println!("V_3 in canonical order, with serial keys:");
    for y in HfSet::cumulative(3, budget)? {
        println!("  {} {y}", y.serial_key()?);
    }
    Ok(())
}
