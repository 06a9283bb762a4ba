//! Names over the binary-string poset: parsing, interpretation by filters,
//! evaluation at long enough conditions, and the forcing relation.
//!
//! Run with `cargo run --example forcing_names`.

use stf::forcing::{
    check_name, eval_at, forces_membership, interpret, semantic_forces, CondId, GenericFilter, Kind, Name, Poset,
    StringPoset,
};
use stf::HfSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sp = StringPoset::new(4)?;
    let sigma = Name::parse("[(check({}), 1)]", &sp)?;
    let tau = Name::parse("[([(check({}), 1)], top)]", &sp)?;
    println!("σ = {}  (rank {})", sigma.render(&sp), sigma.rank());
    println!("τ = {}", tau.render_expanded(&sp));

    for at in ["0", "1", "10", "011"] {
        let p = cond(&sp, at);
        let g = GenericFilter::principal(&sp, p);
        println!(
            "filter generated by {at}: σ^G = {}, τ^G = {}",
            interpret(&sigma, &g),
            interpret(&tau, &g)
        );
    }

    let p = cond(&sp, "01");
    println!("σ evaluated at 01: {}", eval_at(&sigma, p, &sp)?);
    match eval_at(&sigma, cond(&sp, "0"), &sp) {
        Ok(v) => println!("σ at 0: {v}"),
        Err(e) => println!("σ at 0: {e}"),
    }

    for at in ["top", "0", "1"] {
        let p = cond(&sp, at);
        println!(
            "{at} ⊩ σ ∈ τ: syntactic {}, semantic {}",
            forces_membership(&sp, p, &sigma, &tau)?,
            semantic_forces(&sp, p, Kind::Membership, &sigma, &tau)?
        );
    }

    let two: HfSet = "{{},{{}}}".parse()?;
    let check = check_name(&two, &sp);
    println!("check name of 2: {}", check.render_expanded(&sp));
    println!(
        "interprets as {} under any filter",
        interpret(&check, &GenericFilter::principal(&sp, cond(&sp, "110")))
    );
    Ok(())
}

fn cond<P: Poset>(poset: &P, label: &str) -> CondId {
    poset.lookup(label).unwrap_or_else(|| panic!("no condition {label}"))
}
