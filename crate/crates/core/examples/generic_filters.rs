//! Density, generic filters meeting finitely many dense sets, and the
//! pretameness witness search on a finite poset.
//!
//! Run with `cargo run --example generic_filters`.

use std::collections::BTreeSet;

use stf::forcing::{self, CondId, FinitePoset, Poset, Pretame, StringPoset};
use stf::Budget;

const DIAMOND: &str = "\
cond top
cond l
cond r
cond bottom
leq l top
leq r top
leq bottom l
leq bottom r
top top
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sp = StringPoset::new(3)?;
    let ids = |labels: &[&str]| -> BTreeSet<CondId> { labels.iter().map(|l| cond(&sp, l)).collect() };
    let length_two = ids(&["00", "01", "10", "11"]);
    let starts_with_one = ids(&["1", "10", "11", "100", "101", "110", "111"]);
    println!("strings of length 2 dense? {}", forcing::is_dense(&sp, &length_two));
    println!(
        "strings starting with 1 dense? {}",
        forcing::is_dense(&sp, &starts_with_one)
    );
    println!(
        "... dense below 1? {}",
        forcing::is_dense_below(&sp, &starts_with_one, cond(&sp, "1"))
    );

    // In the truncated poset only sets reaching the leaves can be dense.
    let long: BTreeSet<CondId> = (0..sp.len()).filter(|&c| sp.length(c) >= 2).collect();
    let leaves_or_short: BTreeSet<CondId> = (0..sp.len())
        .filter(|&c| sp.length(c) == 3)
        .chain(ids(&["01", "1"]))
        .collect();
    println!("strings of length at least 2 dense? {}", forcing::is_dense(&sp, &long));
    let denses = vec![long, leaves_or_short];
    for seed in 0..3 {
        let g = forcing::generic_filter(&sp, &denses, 0, seed)?;
        let members: Vec<String> = g.members().iter().map(|&c| sp.label(c)).collect();
        println!("seed {seed}: generic filter {{{}}}", members.join(", "));
    }
    let q = forcing::meet_dense(&sp, cond(&sp, "1"), &denses)?;
    println!("a condition below 1 meeting both sets: {}", sp.label(q));

    let diamond: FinitePoset = DIAMOND.parse()?;
    let family = vec![BTreeSet::from([cond(&diamond, "bottom")])];
    match forcing::pretame_check(&diamond, &family, cond(&diamond, "top"), Budget::default()) {
        Pretame::Witness { q, d } => {
            let d0: Vec<String> = d[0].iter().map(|&c| diamond.label(c)).collect();
            println!(
                "pretameness witness: q = {}, d0 = {{{}}}",
                diamond.label(q),
                d0.join(", ")
            );
        }
        Pretame::Counterexample { index, r } => {
            println!("set {index} is not predense below {}", diamond.label(r));
        }
    }
    Ok(())
}

fn cond<P: Poset>(poset: &P, label: &str) -> CondId {
    poset.lookup(label).unwrap_or_else(|| panic!("no condition {label}"))
}
