//! Worked values of the analytic curves, against the paper and against a
//! small independent oracle written here.

use mhdmt::dmt::*;
use num_rational::Rational64;

fn dim(v: &[usize]) -> Dimension {
    Dimension::new(v.to_vec()).unwrap()
}

fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Coefficients straight from their definition on the sorted counts.
fn oracle_coeffs(counts: &[usize]) -> Vec<i64> {
    let mut n: Vec<i64> = counts.iter().map(|&x| x as i64).collect();
    n.sort();
    let hops = n.len() - 1;
    (1..=n[0])
        .map(|i| {
            let mut best = i64::MAX;
            for k in 1..=hops {
                let s: i64 = n[..=k].iter().sum();
                best = best.min((s - i).div_euclid(k as i64));
            }
            1 - i + best
        })
        .collect()
}

fn oracle_rp(counts: &[usize]) -> Vec<i64> {
    let c = oracle_coeffs(counts);
    (0..=c.len()).map(|k| c[k..].iter().sum()).collect()
}

fn ints(c: &DmtCurve) -> Vec<i64> {
    c.integer_values().iter().map(|v| *v.numer() / *v.denom()).collect()
}

#[test]
fn coefficients() {
    assert_eq!(coeffs(&dim(&[2, 2, 2])).0, vec![2, 1]);
    assert_eq!(coeffs(&dim(&[2, 4, 3])).0, vec![4, 2]);
    for m in 1..7 {
        assert_eq!(coeffs(&dim(&[1, m])).0, vec![m as u64]);
    }
    for d in all_dimensions(4, 3) {
        let got: Vec<i64> = coeffs(&d).0.iter().map(|&c| c as i64).collect();
        assert_eq!(got, oracle_coeffs(d.counts()), "{d}");
    }
}

#[test]
fn rayleigh_product_curves() {
    assert_eq!(ints(&dmt_rp(&dim(&[2, 2, 2]))), vec![3, 1, 0]);
    assert_eq!(ints(&dmt_rp(&dim(&[2, 4, 3]))), vec![6, 2, 0]);
    assert_eq!(ints(&dmt_rp(&dim(&[2, 2, 2, 2]))), vec![3, 1, 0]);
    for (nt, nr) in [(1, 1), (2, 3), (4, 2), (3, 3)] {
        let want: Vec<i64> = (0..=nt.min(nr)).map(|k| ((nt - k) * (nr - k)) as i64).collect();
        assert_eq!(ints(&dmt_rp(&dim(&[nt, nr]))), want);
        assert_eq!(dmt_rp(&dim(&[nt, nr])), dmt_rayleigh(nt, nr));
    }
    for d in all_dimensions(4, 3) {
        assert_eq!(ints(&dmt_rp(&d)), oracle_rp(d.counts()), "{d}");
    }
}

#[test]
fn rayleigh_point_to_point() {
    assert_eq!(ints(&dmt_rayleigh(2, 2)), vec![4, 1, 0]);
    assert_eq!(ints(&dmt_rayleigh(1, 1)), vec![1, 0]);
    assert_eq!(ints(&dmt_rayleigh(2, 4)), vec![8, 3, 0]);
}

#[test]
fn cutset() {
    let c = cutset_bound(&dim(&[2, 2, 2]));
    assert_eq!((c.d_max, c.r_max), (4, 2));
    assert_eq!(c.curve, dmt_rayleigh(2, 2));
    let c = cutset_bound(&dim(&[2, 4, 3]));
    assert_eq!((c.d_max, c.r_max), (8, 2));
    let c = cutset_bound(&dim(&[1, 1, 1, 1]));
    assert_eq!((c.d_max, c.r_max), (1, 1));

    // Minimum of the hop curves sampled on a fine rational grid.
    for d in [dim(&[2, 8, 3, 5]), dim(&[3, 3, 8]), dim(&[4, 2, 5, 3])] {
        let c = cutset_bound(&d);
        let n = d.counts();
        for step in 0..=240 {
            let r = q(step, 60);
            let want = (1..n.len())
                .map(|i| dmt_rayleigh(n[i - 1], n[i]).eval(r))
                .min()
                .unwrap();
            assert_eq!(c.curve.eval(r), want, "{d} at r = {r}");
        }
    }
}

#[test]
fn symmetric_closed_form() {
    assert_eq!(dmt_symmetric(2, 2).eval(q(0, 1)), q(3, 1));
    assert_eq!(dmt_symmetric(2, 3).eval(q(0, 1)), q(3, 1));
    for hops in 5..8 {
        assert_eq!(dmt_symmetric(5, hops).eval(q(0, 1)), q(15, 1));
    }
}

#[test]
fn serial_partitions() {
    let d = dim(&[3, 1, 4, 2]);
    let all_df = DecodeSet::all_layers(3);
    assert_eq!(dmt_serial_partition(&d, &all_df).unwrap().eval(q(0, 1)), q(3, 1));
    let all_af = DecodeSet::destination_only(3);
    assert_eq!(dmt_serial_partition(&d, &all_af).unwrap().eval(q(0, 1)), q(2, 1));
    assert_eq!(dmt_serial_partition(&d, &all_af).unwrap(), dmt_rp(&d));
    assert!(DecodeSet::new(vec![1, 2], 3).is_err());
    assert!(DecodeSet::new(vec![2, 2, 3], 3).is_err());
}

/// Fewest decode layers reaching `target`, by trying every subset.
fn oracle_min_decode(d: &Dimension, target: u64) -> usize {
    let hops = d.hops();
    (0u32..1 << (hops - 1))
        .filter_map(|mask| {
            let mut idx: Vec<usize> = (1..hops).filter(|&l| mask >> (l - 1) & 1 == 1).collect();
            idx.push(hops);
            let set = DecodeSet::new(idx.clone(), hops).unwrap();
            let div = dmt_serial_partition(d, &set).unwrap().eval(q(0, 1));
            (div >= q(target as i64, 1)).then_some(idx.len())
        })
        .min()
        .unwrap()
}

#[test]
fn decoding_layers() {
    let d = dim(&[3, 1, 4, 2]);
    assert_eq!(where_to_decode(&d, 3).unwrap().indices(), &[2, 3]);
    assert_eq!(where_to_decode(&dim(&[2, 2, 2]), 3).unwrap().indices(), &[2]);
    assert_eq!(where_to_decode(&dim(&[2, 5, 1, 3]), 1).unwrap().indices(), &[3]);
    assert!(matches!(
        where_to_decode(&dim(&[2, 2, 2]), 5),
        Err(DmtError::UnachievableDiversity { target: 5, d_max: 4 })
    ));
    for d in all_dimensions(3, 4) {
        for target in 1..=d.d_max() {
            let set = where_to_decode(&d, target).unwrap();
            let div = dmt_serial_partition(&d, &set).unwrap().eval(q(0, 1));
            assert!(div >= q(target as i64, 1), "{d} target {target}");
            assert_eq!(set.indices().len(), oracle_min_decode(&d, target), "{d} target {target}");
        }
    }
}

#[test]
fn flip_and_forward_bound() {
    let c = dmt_ff_lower_bound(&dim(&[2, 2, 2]), 2).unwrap();
    assert_eq!(c.eval(q(0, 1)), q(4, 1));
    assert_eq!(c.eval(q(1, 2)), q(2, 1));
    assert_eq!(c.eval(q(2, 1)), q(0, 1));
    assert_eq!(dmt_ff_lower_bound(&dim(&[2, 2, 2, 2]), 4).unwrap().eval(q(0, 1)), q(4, 1));
    let d = dim(&[2, 4, 3]);
    let af = dmt_rp(&d);
    for k in 1..5 {
        let c = dmt_ff_lower_bound(&d, k).unwrap();
        for step in 0..=40 {
            let r = q(step, 20);
            if r >= q(1, k as i64) {
                assert_eq!(c.eval(r), af.eval(r));
            }
        }
    }
    assert_eq!(dmt_ff_lower_bound(&d, 0), Err(DmtError::ZeroModes));
}

#[test]
fn parallel_af() {
    let ones = vec![dim(&[1, 1, 1]); 8];
    match dmt_parallel_af(&ones).unwrap() {
        ParallelDmt::Curve(c) => assert_eq!(c, DmtCurve::from_integer_points(&[8, 0])),
        other => panic!("{other:?}"),
    }
    match dmt_parallel_af(&[dim(&[2, 2, 3]), dim(&[2, 2, 3])]).unwrap() {
        ParallelDmt::Curve(c) => assert_eq!(c.eval(q(0, 1)), q(8, 1)),
        other => panic!("{other:?}"),
    }
    assert_eq!(
        dmt_parallel_af(&[dim(&[2, 1, 3]), dim(&[2, 3, 3])]).unwrap(),
        ParallelDmt::DiversityOnly(2 + 5)
    );
    assert_eq!(dmt_parallel_af(&[]), Err(DmtError::NoPaths));
}

#[test]
fn parsing() {
    assert_eq!("2, 4,3".parse::<Dimension>().unwrap(), dim(&[2, 4, 3]));
    assert_eq!(dim(&[2, 4, 3]).to_string(), "(2,4,3)");
    assert!("2".parse::<Dimension>().is_err());
    assert!("2,0,3".parse::<Dimension>().is_err());
    assert!("2,a".parse::<Dimension>().is_err());
}
