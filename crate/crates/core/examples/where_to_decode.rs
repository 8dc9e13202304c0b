//! Fewest decoding layers reaching each diversity target, with the
//! resulting tradeoff.

use mhdmt::dmt::{dmt_serial_partition, where_to_decode, Dimension};

fn main() {
    let dim: Dimension =
        std::env::args().nth(1).unwrap_or_else(|| "3,4,3,5,3".into()).parse().expect("dimension");
    println!("{dim}, d_max = {}", dim.d_max());
    for target in 1..=dim.d_max() {
        let set = where_to_decode(&dim, target).unwrap();
        let curve = dmt_serial_partition(&dim, &set).unwrap();
        println!("  d >= {target:2}: decode at {:?}  tradeoff {curve}", set.indices());
    }
}
