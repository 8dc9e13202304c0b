//! Maximum, minimum full-diversity and selection partitions of a channel.
//!
//! Usage: `cargo run --example partitions -- [dim]`, default `2,4,3`.

use mhdmt::dmt::Dimension;
use mhdmt::partition::{
    is_full_diversity, is_independent, max_partition, min_full_div_partition_2hop,
    min_full_div_partition_exhaustive, nonind_partition_diversity, Partition,
};

fn show(label: &str, dim: &Dimension, p: &Partition) {
    let widths: Vec<String> = p.path_dimensions().iter().map(|d| d.to_string()).collect();
    let ind = is_independent(dim, p).unwrap();
    let full = ind && is_full_diversity(dim, p).unwrap();
    println!(
        "{label}: {} paths {}  independent {ind}  full diversity {full}  diversity sum {}",
        p.size(),
        widths.join(" "),
        p.diversity_sum()
    );
}

fn main() {
    let dim: Dimension = std::env::args().nth(1).unwrap_or_else(|| "2,4,3".into()).parse().expect("dimension");
    println!("{dim}, d_max = {}", dim.d_max());
    show("max", &dim, &max_partition(&dim));
    if dim.hops() == 2 {
        let n = dim.counts();
        let (k, p) = min_full_div_partition_2hop(n[0], n[1], n[2]);
        show(&format!("min full diversity (K = {k})"), &dim, &p);
    }
    match min_full_div_partition_exhaustive(&dim) {
        Ok((k, p)) => show(&format!("exhaustive min (K = {k})"), &dim, &p),
        Err(e) => println!("exhaustive min: {e}"),
    }
    for layer in 1..dim.hops() {
        println!(
            "selection at layer {layer}: diversity {}",
            nonind_partition_diversity(&dim, layer).unwrap()
        );
    }
}
