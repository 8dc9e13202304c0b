use mhdmt::dmt::{DecodeSet, Dimension};
use mhdmt::partition::{max_partition, min_full_div_partition_2hop, ff_schedule};
use mhdmt::sim::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dim(v: &[usize]) -> Dimension {
    Dimension::new(v.to_vec()).unwrap()
}

fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

#[test]
fn entries_have_unit_variance_and_streams_decorrelate() {
    let d = dim(&[1, 1]);
    let n = 1_000_000u64;
    let (mut power, mut cross) = (0.0, Complex64::new(0.0, 0.0));
    for t in 0..n {
        let a = sample_channel(&d, &mut trial_rng(5, t)).hops[0][(0, 0)];
        let b = sample_channel(&d, &mut trial_rng(6, t)).hops[0][(0, 0)];
        power += a.norm_sqr();
        cross += a * b.conj();
    }
    let power = power / n as f64;
    let corr = cross.norm() / n as f64;
    assert!((power - 1.0).abs() < 0.01, "{power}");
    assert!(corr < 0.01, "{corr}");
}

#[test]
fn same_stream_same_channel() {
    let d = dim(&[2, 3, 2]);
    let a = sample_channel(&d, &mut trial_rng(9, 42));
    let b = sample_channel(&d, &mut trial_rng(9, 42));
    assert_eq!(a.hops, b.hops);
    let c = sample_channel(&d, &mut trial_rng(9, 43));
    assert_ne!(a.hops, c.hops);
}

#[test]
fn scalar_two_hop_by_hand() {
    let one = |re: f64, im: f64| CMat::from_element(1, 1, Complex64::new(re, im));
    let real = ChannelRealization { hops: vec![one(1.0, 0.0), one(0.0, 1.0)] };
    let e = af_effective(&real, 1.0);
    assert!((e.noise_cov[(0, 0)].re - 1.5).abs() < 1e-15);
    assert!((e.mutual_info(1.0).unwrap() - (4.0f64 / 3.0).log2()).abs() < 1e-14);
    let awgn = ChannelRealization { hops: vec![one(1.0, 0.0)] };
    assert!((af_effective(&awgn, 3.0).mutual_info(3.0).unwrap() - 2.0).abs() < 1e-14);
    let zero = EffectiveChannel { gain: CMat::zeros(2, 2), noise_cov: CMat::identity(2, 2), inputs: 2 };
    assert_eq!(zero.mutual_info(100.0).unwrap(), 0.0);
}

#[test]
fn single_antenna_paths_match_the_scalar_formula() {
    let d = dim(&[2, 2, 2]);
    let p = max_partition(&d);
    let real = sample_channel(&d, &mut ChaCha8Rng::seed_from_u64(3));
    let snr = db(15.0);
    for (path, e) in p.paths().iter().zip(parallel_af_effective(&real, &p, snr)) {
        let [s, r, t] = [0, 1, 2].map(|l| path.supernode(l).antennas()[0]);
        let h1 = real.hops[0][(r, s)];
        let h2 = real.hops[1][(t, r)];
        let g2 = snr / (snr * h1.norm_sqr() + 1.0);
        let want = (1.0 + snr * g2 * (h1 * h2).norm_sqr() / (1.0 + g2 * h2.norm_sqr())).log2();
        assert!((e.mutual_info(snr).unwrap() - want).abs() < 1e-12);
    }
}

/// Projection forwards from one antenna, so it loses whenever that
/// antenna's second-hop gain is weak; it wins on most draws and on average.
#[test]
fn projection_mostly_wins_on_one_four_one() {
    let d = dim(&[1, 4, 1]);
    let n = 100_000;
    for snr_db in [0.0, 20.0, 40.0] {
        let snr = db(snr_db);
        let (mut wins, mut pf_sum, mut af_sum) = (0, 0.0, 0.0);
        for t in 0..n {
            let real = sample_channel(&d, &mut trial_rng(1, t));
            let pf = pf_effective(&real, snr).mutual_info(snr).unwrap();
            let af = af_effective(&real, snr).mutual_info(snr).unwrap();
            wins += (pf >= af) as u64;
            pf_sum += pf;
            af_sum += af;
        }
        assert!(wins as f64 >= 0.7 * n as f64, "{snr_db} dB: {wins}");
        assert!(pf_sum > af_sum, "{snr_db} dB");
    }
}

#[test]
fn decoding_only_at_the_destination_is_af() {
    let d = dim(&[3, 1, 4, 2]);
    let only = DecodeSet::destination_only(3);
    for t in 0..2000 {
        let real = sample_channel(&d, &mut trial_rng(2, t));
        for snr_db in [5.0, 15.0, 25.0] {
            let snr = db(snr_db);
            let af = af_effective(&real, snr).mutual_info(snr).unwrap() < 2.0;
            assert_eq!(df_outage(&real, &only, snr, 2.0).unwrap(), af);
        }
        assert!(!df_outage(&real, &DecodeSet::all_layers(3), db(25.0), 0.0).unwrap());
    }
}

#[test]
fn svd_alignment() {
    let d = dim(&[3, 3]);
    let real = sample_channel(&d, &mut trial_rng(4, 0));
    let e = svd_align_effective(&real, 10.0).unwrap();
    let a = e.gain.clone().singular_values();
    let b = real.hops[0].clone().singular_values();
    assert!((a - b).norm() < 1e-12);

    let d = dim(&[2, 2, 2, 2]);
    for t in 0..50 {
        let real = sample_channel(&d, &mut trial_rng(4, t));
        let snr = db(20.0);
        let e = svd_align_effective(&real, snr).unwrap();
        let mut want: Vec<f64> = vec![1.0; 2];
        let p = snr / 2.0;
        for (i, h) in real.hops.iter().enumerate() {
            let s = h.clone().singular_values();
            for j in 0..2 {
                want[j] *= s[j];
                if i + 1 < real.hops.len() {
                    want[j] *= (p / (p * s[j] * s[j] + 1.0)).sqrt();
                }
            }
        }
        want.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let got = e.gain.clone().singular_values();
        for j in 0..2 {
            assert!((got[j] - want[j]).abs() < 1e-9 * want[0], "{got} vs {want:?}");
        }
    }
    assert!(matches!(
        svd_align_effective(&sample_channel(&dim(&[2, 3, 2]), &mut trial_rng(0, 0)), 1.0),
        Err(SimError::Incompatible(_))
    ));
}

#[test]
fn outage_basics() {
    let d = dim(&[2, 2, 2]);
    let zero = estimate_outage(&d, &Scheme::Af, 0.0, 10.0, 1000, 1).unwrap();
    assert_eq!(zero.outage_count, 0);
    let grid: Vec<f64> = (0..=8).map(|i| 4.0 * i as f64).collect();
    let pts = estimate_outage_grid(&d, &Scheme::Af, RatePolicy::Fixed(2.0), &grid, 20_000, 1).unwrap();
    assert!(pts.windows(2).all(|w| w[1].outage_count <= w[0].outage_count));
    for p in &pts {
        assert!(p.ci95.0 <= p.p_hat && p.p_hat <= p.ci95.1);
        assert!(p.ci95.0 >= 0.0 && p.ci95.1 <= 1.0);
        assert_eq!(p.p_hat, p.outage_count as f64 / p.trials as f64);
    }
    let again = estimate_outage_grid(&d, &Scheme::Af, RatePolicy::Fixed(2.0), &grid, 20_000, 1).unwrap();
    assert_eq!(pts, again);
    let threads = with_workers(3, || {
        estimate_outage_grid(&d, &Scheme::Af, RatePolicy::Fixed(2.0), &grid, 20_000, 1).unwrap()
    });
    assert_eq!(pts, threads);
}

#[test]
fn multiplexing_policy_scales_the_rate() {
    let r = RatePolicy::Multiplexing(0.5);
    assert!((r.rate_at(30.0) - 0.5 * 1000f64.log2()).abs() < 1e-12);
    assert_eq!(RatePolicy::Fixed(2.0).rate_at(30.0), 2.0);
}

#[test]
fn slope_of_an_exact_power_law() {
    let trials = 1_000_000_000_000_000u64;
    let pts: Vec<OutageEstimate> = [(10.0, 12), (20.0, 9), (30.0, 6), (40.0, 3)]
        .iter()
        .map(|&(snr_db, e)| OutageEstimate::new(snr_db, 1.0, trials, 10u64.pow(e)))
        .collect();
    assert!((estimate_slope(&pts).unwrap() - 3.0).abs() < 1e-9);
    assert!(matches!(estimate_slope(&pts[..2]), Err(SimError::InsufficientPoints(2))));
}

#[test]
fn csv_layout() {
    let mut buf = Vec::new();
    write_csv(&mut buf, &[OutageEstimate::new(10.0, 2.0, 100, 5)]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    assert!(lines.next().unwrap().starts_with("10,2,100,5,5.000000e-2,"));
}

#[test]
fn scheme_checks() {
    let d = dim(&[2, 2, 2]);
    assert!(Scheme::Df(DecodeSet::new(vec![1, 2], 2).unwrap()).check(&d).is_ok());
    assert!(Scheme::SvdAlign.check(&dim(&[2, 3, 2])).is_err());
    let sched = ff_schedule(&d, &min_full_div_partition_2hop(2, 2, 2).1).unwrap();
    assert!(Scheme::Ff(sched).check(&dim(&[2, 2, 2, 2])).is_err());
    assert!(Scheme::ParallelAf(max_partition(&d)).check(&dim(&[2, 1, 2])).is_err());
}

/// The event `snr ||whitened G||^2 < n_0` and outage at a small rate decay
/// alike.
#[test]
fn energy_event_tracks_outage() {
    let d = dim(&[2, 1, 2]);
    let grid: Vec<f64> = (0..=10).map(|i| 10.0 + 2.0 * i as f64).collect();
    let trials = 200_000u64;
    let mut low = vec![0u64; grid.len()];
    for t in 0..trials {
        let real = sample_channel(&d, &mut trial_rng(8, t));
        for (c, &g) in low.iter_mut().zip(&grid) {
            let snr = db(g);
            let e = af_effective(&real, snr);
            let l = e.whitener().unwrap();
            let w = l.solve_lower_triangular(&e.gain).unwrap();
            if snr * w.norm_squared() / (e.inputs as f64) < 1.0 {
                *c += 1;
            }
        }
    }
    let energy: Vec<OutageEstimate> =
        grid.iter().zip(&low).map(|(&g, &k)| OutageEstimate::new(g, 0.0, trials, k)).collect();
    let outage = estimate_outage_grid(&d, &Scheme::Af, RatePolicy::Fixed(0.5), &grid, trials, 8).unwrap();
    let a = estimate_slope_in_band(&energy, 1e-4, 1e-1).unwrap();
    let b = estimate_slope_in_band(&outage, 1e-4, 1e-1).unwrap();
    assert!((a - b).abs() < 0.5, "energy slope {a}, outage slope {b}");
}

#[test]
fn two_path_split_beats_af_at_high_snr() {
    let d = dim(&[2, 4, 3]);
    let p = min_full_div_partition_2hop(2, 4, 3).1;
    let grid = [16.0, 20.0];
    let af = estimate_outage_grid(&d, &Scheme::Af, RatePolicy::Fixed(2.0), &grid, 100_000, 3).unwrap();
    let par = estimate_outage_grid(&d, &Scheme::ParallelAf(p), RatePolicy::Fixed(2.0), &grid, 100_000, 3).unwrap();
    for (a, b) in af.iter().zip(&par) {
        assert!(b.p_hat <= a.p_hat, "{} dB: {} vs {}", a.snr_db, b.p_hat, a.p_hat);
    }
}

#[test]
fn aligned_relaying_decays_faster_than_af() {
    let d = dim(&[2, 2, 2]);
    let grid: Vec<f64> = (4..=12).map(|i| 2.0 * i as f64).collect();
    let run = |s: &Scheme| estimate_outage_grid(&d, s, RatePolicy::Fixed(2.0), &grid, 100_000, 2).unwrap();
    let af = estimate_slope_in_band(&run(&Scheme::Af), 1e-4, 1e-1).unwrap();
    let svd = estimate_slope_in_band(&run(&Scheme::SvdAlign), 1e-4, 1e-1).unwrap();
    assert!(svd > af, "svd {svd}, af {af}");
}
