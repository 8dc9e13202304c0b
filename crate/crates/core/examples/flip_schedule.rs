//! Flip-and-forward mode schedule for a minimum full-diversity partition,
//! with the lower bound on its tradeoff.

use mhdmt::dmt::{dmt_ff_lower_bound, dmt_rp, Dimension};
use mhdmt::partition::{ff_schedule, min_full_div_partition_2hop};

fn main() {
    let dim: Dimension = std::env::args().nth(1).unwrap_or_else(|| "2,4,3".into()).parse().expect("dimension");
    assert_eq!(dim.hops(), 2, "this example builds the two-hop minimum partition");
    let n = dim.counts();
    let (k, p) = min_full_div_partition_2hop(n[0], n[1], n[2]);
    let sched = ff_schedule(&dim, &p).unwrap();
    println!("{dim}: {k} supernodes in the relay, {} modes", sched.modes());
    for m in 1..=sched.modes() {
        let flips: Vec<String> = sched.mode_flips(m)[0]
            .iter()
            .map(|&f| if f > 0.0 { "+".to_string() } else { "-".to_string() })
            .collect();
        println!("  mode {m}: relay signs {}", flips.join(""));
    }
    println!("AF        {}", dmt_rp(&dim));
    println!("FF bound  {}", dmt_ff_lower_bound(&dim, k).unwrap());
}
