//! Tradeoff curves of a few relay channels next to their cut-set bounds.
//!
//! Usage: `cargo run --example dmt_curves -- [dims...]`, e.g. `2,4,3 3,3,3,3`.

use mhdmt::dmt::{cutset_bound, dmt_df, dmt_rp, Dimension, Q};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dims: Vec<Dimension> = if args.is_empty() {
        ["1,1,1", "2,2,2", "2,4,3", "3,1,3", "4,4,4,4", "2,8,3,5"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect()
    } else {
        args.iter().map(|s| s.parse().expect("dimension like 2,4,3")).collect()
    };
    for dim in &dims {
        let rp = dmt_rp(dim);
        let cut = cutset_bound(dim);
        println!("{dim}: d_max = {}, r_max = {}", cut.d_max, cut.r_max);
        println!("  AF  {rp}");
        println!("  DF  {}", dmt_df(dim));
        println!("  cut {}", cut.curve);
        let gap: Vec<String> = (0..=cut.r_max)
            .map(|k| (cut.curve.eval(Q::from_integer(k as i64)) - rp.eval(Q::from_integer(k as i64))).to_string())
            .collect();
        println!("  gap to cut-set at integer r: {}", gap.join(" "));
    }
}
