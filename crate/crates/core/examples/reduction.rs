//! Channel order, minimal forms and antenna reduction.

use mhdmt::dmt::{dmt_rp, Dimension};
use mhdmt::reduction::{analyze, equivalent, practical_vertical_reduction};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dims: Vec<Dimension> = if args.is_empty() {
        ["1,4,1", "3,5,4,6,9", "2,8,3,5", "4,2,4", "3,3,3"].iter().map(|s| s.parse().unwrap()).collect()
    } else {
        args.iter().map(|s| s.parse().expect("dimension like 2,4,3")).collect()
    };
    for dim in &dims {
        let r = analyze(dim);
        let practical = practical_vertical_reduction(dim);
        println!("{dim}");
        println!("  order {}  minimal {}  n_bar {}", r.order, r.minimal_form, r.n_bar);
        println!("  vertical {}  practical {}  p {:?}", r.minimal_vertical_form, practical, r.p);
        assert!(equivalent(dim, &r.minimal_form));
        assert!(equivalent(dim, &practical));
        println!("  tradeoff {}", dmt_rp(dim));
    }
}
