//! Compares the syntactic forcing relation with its semantic definition over
//! every pair of names of rank at most 2 and every condition.
//!
//! Run with `cargo run --release --example definability_grid -- [max_len] [jobs]`.

use stf::forcing::names::rank_bounded_names;
use stf::forcing::{definability_grid, Poset, StringPoset};
use stf::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let max_len: usize = args.next().map_or(Ok(4), |a| a.parse())?;
    let jobs: usize = args.next().map_or(Ok(2), |a| a.parse())?;

    let sp = StringPoset::new(max_len)?;
    let names = rank_bounded_names(&sp, 2, Budget::default())?;
    println!("{} conditions, {} names of rank at most 2", sp.len(), names.len());
    let report = definability_grid(&sp, &names, jobs)?;
    println!("checked {} triples, {} forced", report.checked, report.forced);
    if report.disagreements.is_empty() {
        println!("syntactic and semantic forcing agree everywhere");
    } else {
        for &(p, s, t) in &report.disagreements {
            println!(
                "disagree at {}: {} ∈ {}",
                sp.label(p),
                names[s].render(&sp),
                names[t].render(&sp)
            );
        }
    }
    Ok(())
}
