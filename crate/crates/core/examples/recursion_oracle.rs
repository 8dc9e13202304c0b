//! Cross-checks the closed-form AF tradeoff against the memoised recursion
//! over every channel with up to `max_entry` antennas per layer and up to
//! `max_hops` hops.
//!
//! Usage: `cargo run --release --example recursion_oracle -- [max_entry] [max_hops]`

use mhdmt::dmt::all_dimensions;
use mhdmt::recursion::{cross_check_with, RecursionOracle};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("integer"));
    let max_entry = args.next().unwrap_or(5);
    let max_hops = args.next().unwrap_or(4);
    let mut oracle = RecursionOracle::new();
    let dims = all_dimensions(max_entry, max_hops);
    let bad: Vec<_> = dims.iter().filter(|d| !cross_check_with(&mut oracle, d)).collect();
    println!("{} channels checked, {} disagreements", dims.len(), bad.len());
    for d in bad {
        println!("  mismatch at {d}");
    }
}
