//! Outage curves and fitted diversity slopes for a few relaying schemes.
//!
//! `cargo run --release --example outage_slopes -- [trials]`

use std::time::Instant;

use mhdmt::dmt::{DecodeSet, Dimension};
use mhdmt::partition::{ff_schedule, min_full_div_partition_2hop};
use mhdmt::sim::{estimate_outage_grid, estimate_slope_in_band, RatePolicy, Scheme};

fn main() {
    let trials: u64 = std::env::args().nth(1).map_or(200_000, |s| s.parse::<f64>().unwrap() as u64);
    let d222: Dimension = "2,2,2".parse().unwrap();
    let d3142: Dimension = "3,1,4,2".parse().unwrap();
    let d141: Dimension = "1,4,1".parse().unwrap();
    let ff = Scheme::Ff(ff_schedule(&d222, &min_full_div_partition_2hop(2, 2, 2).1).unwrap());
    let runs = [
        ("(2,2,2) af", &d222, Scheme::Af),
        ("(2,2,2) ff", &d222, ff),
        ("(2,2,2) svd-align", &d222, Scheme::SvdAlign),
        ("(3,1,4,2) af", &d3142, Scheme::Af),
        ("(3,1,4,2) df{2,3}", &d3142, Scheme::Df(DecodeSet::new(vec![2, 3], 3).unwrap())),
        ("(1,4,1) af", &d141, Scheme::Af),
        ("(1,4,1) pf", &d141, Scheme::Pf),
    ];
    let grid: Vec<f64> = (0..=20).map(|i| 2.0 * i as f64).collect();
    for (name, dim, scheme) in runs {
        let start = Instant::now();
        let points = estimate_outage_grid(dim, &scheme, RatePolicy::Fixed(2.0), &grid, trials, 7).unwrap();
        let slope = estimate_slope_in_band(&points, 1e-4, 1e-1);
        println!("{name}: slope {slope:?} in {:.1?}", start.elapsed());
        for p in &points {
            println!("  {:5.1} dB  {:.3e}", p.snr_db, p.p_hat);
        }
    }
}
