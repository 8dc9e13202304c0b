//! Exhaustive partition searches for small channels. Both are exponential
//! and refuse dimensions outside their stated limits.
//!
//! Edges are packed into one `u64`, hop after hop, so disjointness is a
//! single AND. Both searches prune with the per-path cut-set bound: a path
//! never has more diversity than it has edges on any hop, so the paths still
//! to be added can contribute at most the number of free edges on each hop.

use std::collections::HashMap;

use super::{AfPath, Partition, PartitionError, Supernode};
use crate::dmt::{self, Dimension};

struct EdgeLayout {
    widths: Vec<usize>,
    offsets: Vec<usize>,
}

impl EdgeLayout {
    fn new(dim: &Dimension) -> Result<Self, PartitionError> {
        let widths = dim.counts().to_vec();
        let mut offsets = vec![0];
        for h in 1..widths.len() {
            offsets.push(offsets[h - 1] + widths[h - 1] * widths[h]);
        }
        if *offsets.last().unwrap() > 64 {
            return Err(PartitionError::SearchTooLarge("at most 64 edges".into()));
        }
        Ok(EdgeLayout { widths, offsets })
    }

    fn hops(&self) -> usize {
        self.widths.len() - 1
    }

    /// Edges of hop `h` (1-based).
    fn hop_mask(&self, h: usize) -> u64 {
        let count = self.offsets[h] - self.offsets[h - 1];
        low_bits(count) << self.offsets[h - 1]
    }

    /// Complete bipartite edges between consecutive antenna masks.
    fn path_edges(&self, nodes: &[u32]) -> u64 {
        let mut edges = 0u64;
        for h in 1..self.widths.len() {
            let nh = self.widths[h];
            for u in bits(nodes[h - 1]) {
                for v in bits(nodes[h]) {
                    edges |= 1 << (self.offsets[h - 1] + u * nh + v);
                }
            }
        }
        edges
    }

    /// Largest diversity the paths still to be chosen could add.
    fn free_bound(&self, used: u64) -> u64 {
        (1..=self.hops())
            .map(|h| u64::from((self.hop_mask(h) & !used).count_ones()))
            .min()
            .unwrap()
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask >> b & 1 == 1)
}

fn to_path(nodes: &[u32]) -> AfPath {
    let supernodes = nodes
        .iter()
        .enumerate()
        .map(|(l, &m)| Supernode::new(l, bits(m)).expect("non-empty mask"))
        .collect();
    AfPath::new(supernodes).expect("one supernode per layer")
}

/// Every tuple of non-empty antenna subsets, one per layer.
fn all_node_tuples(widths: &[usize]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &w in widths {
        let subsets = 1..(1u32 << w);
        out = out
            .into_iter()
            .flat_map(|t| {
                subsets.clone().map(move |s| {
                    let mut t = t.clone();
                    t.push(s);
                    t
                })
            })
            .collect();
    }
    out
}

/// Size of the largest family of edge-disjoint single-antenna paths, found
/// by branch and bound over all `prod n_i` candidate paths. Limited to
/// layers of at most 3 antennas and at most 3 hops.
pub fn max_single_antenna_family_exhaustive(dim: &Dimension) -> Result<(usize, Partition), PartitionError> {
    if dim.n_max() > 3 || dim.hops() > 3 {
        return Err(PartitionError::SearchTooLarge("layers of at most 3 antennas, at most 3 hops".into()));
    }
    let layout = EdgeLayout::new(dim)?;
    let mut candidates: Vec<Vec<u32>> = vec![vec![]];
    for &w in dim.counts() {
        candidates = candidates
            .into_iter()
            .flat_map(|t| {
                (0..w).map(move |a| {
                    let mut t = t.clone();
                    t.push(1 << a);
                    t
                })
            })
            .collect();
    }
    let candidates: Vec<(Vec<u32>, u64)> = candidates
        .into_iter()
        .map(|t| {
            let e = layout.path_edges(&t);
            (t, e)
        })
        .collect();

    struct Search<'a> {
        layout: &'a EdgeLayout,
        candidates: &'a [(Vec<u32>, u64)],
        best: Vec<usize>,
        chosen: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, from: usize, used: u64) {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            let remaining = (self.candidates.len() - from) as u64;
            let bound = self.layout.free_bound(used).min(remaining);
            if self.chosen.len() as u64 + bound <= self.best.len() as u64 {
                return;
            }
            for i in from..self.candidates.len() {
                let e = self.candidates[i].1;
                if e & used == 0 {
                    self.chosen.push(i);
                    self.run(i + 1, used | e);
                    self.chosen.pop();
                }
            }
        }
    }

    let mut s = Search { layout: &layout, candidates: &candidates, best: vec![], chosen: vec![] };
    s.run(0, 0);
    let paths = s.best.iter().map(|&i| to_path(&candidates[i].0)).collect();
    let p = Partition::new(paths)?;
    Ok((p.size(), p))
}

/// Smallest independent partition whose path diversities add up to the
/// cut-set `d_max`. Limited to layers of at most 4 antennas and at most 3
/// hops.
///
/// Any such partition covers every edge of a bottleneck hop, since each
/// path's diversity is at most its edge count there. The search therefore
/// branches on which path covers the lowest uncovered bottleneck edge,
/// which visits every candidate family exactly once.
pub fn min_full_div_partition_exhaustive(dim: &Dimension) -> Result<(usize, Partition), PartitionError> {
    if dim.n_max() > 4 || dim.hops() > 3 {
        return Err(PartitionError::SearchTooLarge("layers of at most 4 antennas, at most 3 hops".into()));
    }
    let layout = EdgeLayout::new(dim)?;
    let d_max = dim.d_max();
    let n = dim.counts();
    let bottleneck = (1..n.len()).find(|&h| (n[h - 1] * n[h]) as u64 == d_max).unwrap();
    let bottleneck_mask = layout.hop_mask(bottleneck);

    let mut div_cache: HashMap<Vec<usize>, u64> = HashMap::new();
    let candidates: Vec<(Vec<u32>, u64, u64)> = all_node_tuples(n)
        .into_iter()
        .map(|t| {
            let widths: Vec<usize> = t.iter().map(|m| m.count_ones() as usize).collect();
            let div = *div_cache
                .entry(widths.clone())
                .or_insert_with(|| dmt::dmt_rp_values(&Dimension::new(widths).unwrap())[0]);
            let e = layout.path_edges(&t);
            (t, e, div)
        })
        .collect();
    let mut by_edge: Vec<Vec<usize>> = vec![vec![]; 64];
    for (i, c) in candidates.iter().enumerate() {
        for b in 0..64 {
            if c.1 >> b & 1 == 1 && bottleneck_mask >> b & 1 == 1 {
                by_edge[b].push(i);
            }
        }
    }

    struct Search<'a> {
        layout: &'a EdgeLayout,
        candidates: &'a [(Vec<u32>, u64, u64)],
        by_edge: &'a [Vec<usize>],
        bottleneck_mask: u64,
        d_max: u64,
        best: Option<Vec<usize>>,
        chosen: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, used: u64, sum: u64) {
            if sum == self.d_max {
                if self.best.as_ref().is_none_or(|b| self.chosen.len() < b.len()) {
                    self.best = Some(self.chosen.clone());
                }
                return;
            }
            if self.best.as_ref().is_some_and(|b| self.chosen.len() + 1 >= b.len()) {
                return;
            }
            if sum + self.layout.free_bound(used) < self.d_max {
                return;
            }
            let free = self.bottleneck_mask & !used;
            if free == 0 {
                return;
            }
            let edge = free.trailing_zeros() as usize;
            for &i in &self.by_edge[edge] {
                let (_, e, div) = &self.candidates[i];
                if e & used == 0 {
                    self.chosen.push(i);
                    self.run(used | e, sum + div);
                    self.chosen.pop();
                }
            }
        }
    }

    let mut s = Search {
        layout: &layout,
        candidates: &candidates,
        by_edge: &by_edge,
        bottleneck_mask,
        d_max,
        best: None,
        chosen: vec![],
    };
    s.run(0, 0);
    let best = s.best.expect("the maximum partition is always full diversity");
    let paths = best.iter().map(|&i| to_path(&candidates[i].0)).collect();
    let p = Partition::new(paths)?;
    Ok((p.size(), p))
}
