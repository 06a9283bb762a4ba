//! Building coding trees for pairs, unions, separation, functions and
//! well-orders directly from other coding trees.
//!
//! Run with `cargo run --example closure_constructions`.

use stf::codec::encode;
use stf::treealg::{self, Predicate};
use stf::{Budget, HfSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = Budget::default();
    let two = encode(&HfSet::ordinal(2, b)?, b)?;
    let x = encode(&"{{},{{{}}},{{},{{}}}}".parse()?, b)?;

    let pair = treealg::pair_tree(&two, &x, b)?;
    println!("pair tree decodes to {}", pair.decode());

    let union = treealg::union_tree(&x, b)?;
    println!("union of {} is {}", x.decode(), union.decode());

    for pred in ["nonempty", "is-ordinal", "rank-le:1"] {
        let p: Predicate = pred.parse()?;
        let sep = treealg::comprehension_tree(&x, |s| p.holds(s), b)?;
        println!("{{y ∈ x : {pred}}} = {}", sep.decode());
    }

    let f = treealg::function_tree(&x, b)?;
    println!("injection from x into the ordinals:");
    for p in f.decode().elements() {
        let (a, v) = p.as_kpair().expect("function members are pairs");
        println!("  {a} -> {v}");
    }

    let w = treealg::wellorder_tree(&x, b)?;
    println!("well-order of x has {} pairs:\n{}", w.decode().len(), w.decode());
    Ok(())
}
