//! Codeword error rate of Alamouti over AF and of the parallel Golden code
//! over flip-and-forward, with fitted slopes.
//!
//! `cargo run --release --example coded_ser -- [trials]`

use mhdmt::dmt::Dimension;
use mhdmt::partition::{ff_schedule, min_full_div_partition_2hop};
use mhdmt::sim::{estimate_slope_in_band, Scheme};
use mhdmt::stbc::{alamouti, golden, simulate_ser, QamAlphabet};

fn main() {
    let trials: u64 = std::env::args().nth(1).map_or(100_000, |s| s.parse::<f64>().unwrap() as u64);
    let q4 = QamAlphabet::new(4).unwrap();
    let d2122: Dimension = "2,1,2,2".parse().unwrap();
    let d222: Dimension = "2,2,2".parse().unwrap();
    let ff = Scheme::Ff(ff_schedule(&d222, &min_full_div_partition_2hop(2, 2, 2).1).unwrap());
    let runs = [
        ("alamouti over (2,1,2,2) af", &d2122, Scheme::Af, alamouti(&q4)),
        ("golden m=1 over (2,2,2) ff", &d222, ff, golden(&q4, 1).unwrap()),
    ];
    let grid: Vec<f64> = (0..=15).map(|i| 2.0 * i as f64).collect();
    for (name, dim, scheme, cb) in runs {
        let points = simulate_ser(dim, &scheme, &cb, &grid, trials, 7).unwrap();
        println!("{name}: slope {:?}", estimate_slope_in_band(&points, 1e-4, 1e-1));
        for p in &points {
            println!("  {:5.1} dB  {:.3e}", p.snr_db, p.p_hat);
        }
    }
}
