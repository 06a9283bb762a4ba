//! Codes a subset of {0,..,K-1} into a single set X of naturals and reads it
//! back: X meets A'_β only boundedly exactly when β is in the target.
//!
//! Run with `cargo run --example almost_disjoint_coding -- [target] [seed]`,
//! for example `-- 0,2 7`.

use stf::adcoding::{self, family, parse_indices, q_compatible, q_leq, simulate, QCondition};
use stf::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let target = parse_indices(&args.next().unwrap_or_else(|| "0,2".into()))?;
    let seed: u64 = args.next().map_or(Ok(7), |a| a.parse())?;
    let (k, h) = (4, 64);

    let fam = family(k, h, Budget::default())?;
    for beta in 0..k {
        let coded: Vec<String> = fam.coded(beta).iter().map(usize::to_string).collect();
        println!("A'_{beta} = {{{}}}", coded.join(","));
    }
    println!(
        "code of segment 0110: {}",
        adcoding::code_segment(&[false, true, true, false])
    );

    let sim = simulate(&target, k, h, seed, Budget::default())?;
    println!("{sim}");
    println!("decoded matches target: {}", sim.decoded == target);

    // Conditions with the same finite string are always compatible.
    let a: QCondition = "0110:0".parse()?;
    let b: QCondition = "0110:1,3".parse()?;
    let w = QCondition::new(a.g.clone(), a.s.union(&b.s).copied());
    println!("{a} and {b} compatible: {}", q_compatible(&a, &b, &fam));
    println!("{w} extends both: {}", q_leq(&w, &a, &fam) && q_leq(&w, &b, &fam));
    Ok(())
}
