use std::collections::HashSet;

use mhdmt::dmt::{all_dimensions, dmt_rp_values, Dimension};
use mhdmt::partition::*;

fn dim(v: &[usize]) -> Dimension {
    Dimension::new(v.to_vec()).unwrap()
}

fn sn(layer: usize, a: &[usize]) -> Supernode {
    Supernode::new(layer, a.iter().copied()).unwrap()
}

fn path(nodes: &[(usize, &[usize])]) -> AfPath {
    AfPath::new(nodes.iter().map(|(l, a)| sn(*l, a)).collect()).unwrap()
}

/// Antenna-pair edges of every hop used by a path.
fn edges(p: &AfPath) -> HashSet<(usize, usize, usize)> {
    let s = p.supernodes();
    let mut out = HashSet::new();
    for i in 1..s.len() {
        for &a in s[i - 1].antennas() {
            for &b in s[i].antennas() {
                out.insert((i, a, b));
            }
        }
    }
    out
}

fn oracle_independent(p: &Partition) -> bool {
    let sets: Vec<_> = p.paths().iter().map(edges).collect();
    (0..sets.len()).all(|i| (i + 1..sets.len()).all(|j| sets[i].is_disjoint(&sets[j])))
}

fn two_way_relay_split() -> Partition {
    Partition::new(vec![
        path(&[(0, &[0, 1]), (1, &[0]), (2, &[0, 1])]),
        path(&[(0, &[0, 1]), (1, &[1]), (2, &[0, 1])]),
    ])
    .unwrap()
}

#[test]
fn independence_examples() {
    let d = dim(&[2, 2, 2]);
    assert!(is_independent(&d, &two_way_relay_split()).unwrap());
    let t = Partition::trivial(&d);
    let twice = Partition::new(vec![t.paths()[0].clone(), t.paths()[0].clone()]).unwrap();
    assert!(!is_independent(&d, &twice).unwrap());
    let singles = Partition::new(vec![
        path(&[(0, &[0]), (1, &[0]), (2, &[0])]),
        path(&[(0, &[0]), (1, &[1]), (2, &[1])]),
        path(&[(0, &[1]), (1, &[0]), (2, &[1])]),
        path(&[(0, &[1]), (1, &[1]), (2, &[0])]),
    ])
    .unwrap();
    assert!(is_independent(&d, &singles).unwrap());
    assert!(is_full_diversity(&d, &singles).unwrap());
}

#[test]
fn full_diversity_examples() {
    let (k, p) = min_full_div_partition_2hop(2, 4, 3);
    assert_eq!(k, 2);
    let widths: Vec<_> = p.path_dimensions();
    assert_eq!(widths, vec![dim(&[2, 2, 3]), dim(&[2, 2, 3])]);
    assert!(is_full_diversity(&dim(&[2, 4, 3]), &p).unwrap());

    assert!(!is_full_diversity(&dim(&[2, 2, 2]), &Partition::trivial(&dim(&[2, 2, 2]))).unwrap());

    for n in 1..=5 {
        let (k, p) = min_full_div_partition_2hop(n, n, n);
        assert_eq!(k, n);
        assert!(p.path_dimensions().iter().all(|w| *w == dim(&[n, 1, n])));
        assert!(is_full_diversity(&dim(&[n, n, n]), &p).unwrap());
    }
    for m in 1..6 {
        assert_eq!(min_full_div_partition_2hop(1, m, 1).0, m);
    }
    let d = dim(&[2, 2, 2]);
    let t = Partition::trivial(&d);
    let twice = Partition::new(vec![t.paths()[0].clone(), t.paths()[0].clone()]).unwrap();
    assert_eq!(is_full_diversity(&d, &twice), Err(PartitionError::NotIndependent));
}

#[test]
fn two_hop_minimum_is_sound() {
    for n0 in 1..=5 {
        for n1 in 1..=6 {
            for n2 in 1..=5 {
                let d = dim(&[n0, n1, n2]);
                let (k, p) = min_full_div_partition_2hop(n0, n1, n2);
                assert_eq!(p.size(), k);
                assert!(oracle_independent(&p), "{d}");
                assert!(is_full_diversity(&d, &p).unwrap(), "{d}");
                assert_eq!(p.diversity_sum(), d.d_max(), "{d}");
                for w in p.path_dimensions() {
                    let o = w.ordered();
                    assert!(o[2] + 1 >= o[0] + o[1], "{d}: path {w}");
                }
                let sizes: Vec<usize> = p.layer_supernodes(1).iter().map(Supernode::size).collect();
                let (lo, hi) = (n1 / k, n1.div_ceil(k));
                assert!(sizes.iter().all(|&s| s == lo || s == hi), "{d}");
            }
        }
    }
}

#[test]
fn maximum_partitions() {
    assert_eq!(max_partition(&dim(&[2, 2, 2])).size(), 4);
    assert_eq!(max_partition(&dim(&[1, 1, 1, 1])).size(), 1);
    assert_eq!(max_partition(&dim(&[2, 4, 3])).size(), 8);
    for d in all_dimensions(4, 4) {
        let p = max_partition(&d);
        assert_eq!(p.size() as u64, d.d_max(), "{d}");
        assert!(oracle_independent(&p), "{d}");
        assert!(is_independent(&d, &p).unwrap(), "{d}");
        for (l, &n) in d.counts().iter().enumerate() {
            let mut load = vec![0; n];
            for path in p.paths() {
                load[path.supernode(l).antennas()[0]] += 1;
            }
            let (lo, hi) = (d.d_max() as usize / n, (d.d_max() as usize).div_ceil(n));
            assert!(load.iter().all(|&x| x == lo || x == hi), "{d} layer {l}: {load:?}");
        }
    }
}

#[test]
fn no_larger_single_antenna_family() {
    for d in all_dimensions(3, 3) {
        let (best, fam) = max_single_antenna_family_exhaustive(&d).unwrap();
        assert_eq!(best as u64, d.d_max(), "{d}");
        assert!(oracle_independent(&fam));
    }
}

#[test]
fn selection_partitions() {
    assert_eq!(nonind_partition_diversity(&dim(&[3, 2, 2, 2, 3]), 2).unwrap(), 4);
    assert_eq!(nonind_partition_diversity(&dim(&[2, 2, 2]), 1).unwrap(), 4);
    assert!(nonind_partition_diversity(&dim(&[2, 2, 2]), 2).is_err());
    assert!(nonind_partition_diversity(&dim(&[2, 2, 2]), 0).is_err());
    for n in 1..5 {
        let d = dim(&[n, n, n]);
        let want = (n * n) as u64;
        assert_eq!(nonind_partition_diversity(&d, 1).unwrap(), want);
    }
}

#[test]
fn flip_schedules() {
    let d = dim(&[2, 2, 2]);
    let s = ff_schedule(&d, &two_way_relay_split()).unwrap();
    assert_eq!(s.modes(), 2);
    assert_eq!(s.flip_diagonal(1, 1), vec![1.0, 1.0]);
    assert_eq!(s.flip_diagonal(1, 2), vec![1.0, -1.0]);
    assert!(s.warning.is_none());

    let d4 = dim(&[2, 2, 2, 2]);
    let split = |l: usize| vec![sn(l, &[0]), sn(l, &[1])];
    let s = FlipSchedule::from_layers(&d4, vec![split(1), split(2)]).unwrap();
    assert_eq!(s.modes(), 4);
    let tuples: HashSet<Vec<usize>> = (1..=4).map(|k| s.mode_tuple(k)).collect();
    assert_eq!(tuples.len(), 4);

    let t = ff_schedule(&d, &Partition::trivial(&d)).unwrap();
    assert_eq!(t.modes(), 1);
    assert_eq!(t.mode_flips(1), vec![vec![1.0, 1.0]]);
    assert!(t.warning.is_some());
}

#[test]
fn exhaustive_minimum_agrees_with_two_hop_formula() {
    for n in 1..=3 {
        let d = dim(&[n, n, n]);
        assert_eq!(min_full_div_partition_exhaustive(&d).unwrap().0, n);
    }
    assert!(matches!(
        min_full_div_partition_exhaustive(&dim(&[5, 5, 5])),
        Err(PartitionError::SearchTooLarge(_))
    ));
}

#[test]
fn documents_round_trip() {
    let d = dim(&[2, 4, 3]);
    for p in [max_partition(&d), min_full_div_partition_2hop(2, 4, 3).1, Partition::trivial(&d)] {
        let doc = PartitionDoc::from_partition(&d, &p).unwrap();
        let back = PartitionDoc::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let q = back.to_partition().unwrap();
        assert_eq!(q.path_dimensions(), p.path_dimensions());
        assert_eq!(q.diversity_sum(), p.diversity_sum());
    }
    assert!(PartitionDoc::from_json("{\"dimension\":[2,2],\"layers\":[[[0,1]],[[0,1]]],\"paths\":[[0,3]]}")
        .and_then(|d| d.to_partition())
        .is_err());
}

#[test]
fn per_path_diversities() {
    let p = min_full_div_partition_2hop(2, 4, 3).1;
    let sum: u64 = p.path_dimensions().iter().map(|w| dmt_rp_values(w)[0]).sum();
    assert_eq!(sum, p.diversity_sum());
    assert_eq!(sum, 8);
}
