//! Parallel partitions of a multihop channel.
//!
//! A partition is a set of AF paths; each path picks one supernode (a set
//! of antennas) per layer and the relays cycle through the paths in time.
//! A path uses every antenna pair between consecutive supernodes, so two
//! paths are independent when those edge sets are disjoint at every hop.

mod doc;
mod flip;
mod search;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dmt::{self, Dimension};

pub use doc::PartitionDoc;
pub use flip::{ff_schedule, FlipSchedule};
pub use search::{max_single_antenna_family_exhaustive, min_full_div_partition_exhaustive};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a partition needs at least one path")]
    Empty,
    #[error("malformed partition: {0}")]
    Malformed(String),
    #[error("partition is not independent")]
    NotIndependent,
    #[error("layer {layer} is not a relay layer of a {hops}-hop channel")]
    LayerOutOfRange { layer: usize, hops: usize },
    #[error("exhaustive search limited to {0}")]
    SearchTooLarge(String),
}

/// Antennas of one layer acting together.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Supernode {
    pub layer: usize,
    antennas: Vec<usize>,
}

impl Supernode {
    pub fn new(layer: usize, antennas: impl IntoIterator<Item = usize>) -> Result<Self, PartitionError> {
        let set: BTreeSet<usize> = antennas.into_iter().collect();
        if set.is_empty() {
            return Err(PartitionError::Malformed(format!("empty supernode in layer {layer}")));
        }
        Ok(Supernode { layer, antennas: set.into_iter().collect() })
    }

    /// Every antenna of `layer`.
    pub fn full(layer: usize, width: usize) -> Self {
        Supernode { layer, antennas: (0..width).collect() }
    }

    pub fn antennas(&self) -> &[usize] {
        &self.antennas
    }

    pub fn size(&self) -> usize {
        self.antennas.len()
    }

    pub fn contains(&self, antenna: usize) -> bool {
        self.antennas.binary_search(&antenna).is_ok()
    }

    pub fn intersects(&self, other: &Supernode) -> bool {
        self.antennas.iter().any(|&a| other.contains(a))
    }
}

/// One supernode per layer, source to destination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AfPath {
    supernodes: Vec<Supernode>,
}

impl AfPath {
    pub fn new(supernodes: Vec<Supernode>) -> Result<Self, PartitionError> {
        if supernodes.len() < 2 {
            return Err(PartitionError::Malformed("a path spans at least two layers".into()));
        }
        for (i, s) in supernodes.iter().enumerate() {
            if s.layer != i {
                return Err(PartitionError::Malformed(format!(
                    "supernode {i} of the path sits in layer {}",
                    s.layer
                )));
            }
        }
        Ok(AfPath { supernodes })
    }

    pub fn supernodes(&self) -> &[Supernode] {
        &self.supernodes
    }

    pub fn supernode(&self, layer: usize) -> &Supernode {
        &self.supernodes[layer]
    }

    /// `(n_{k,0}, ..., n_{k,N})`.
    pub fn widths(&self) -> Vec<usize> {
        self.supernodes.iter().map(Supernode::size).collect()
    }

    pub fn dimension(&self) -> Dimension {
        Dimension::new(self.widths()).expect("supernodes are non-empty")
    }

    /// Whether the two paths use a common antenna pair on some hop.
    pub fn shares_edge(&self, other: &AfPath) -> bool {
        let meet: Vec<bool> = self
            .supernodes
            .iter()
            .zip(&other.supernodes)
            .map(|(a, b)| a.intersects(b))
            .collect();
        meet.windows(2).any(|w| w[0] && w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    paths: Vec<AfPath>,
}

impl Partition {
    pub fn new(paths: Vec<AfPath>) -> Result<Self, PartitionError> {
        if paths.is_empty() {
            return Err(PartitionError::Empty);
        }
        let len = paths[0].supernodes.len();
        if paths.iter().any(|p| p.supernodes.len() != len) {
            return Err(PartitionError::Malformed("paths span different numbers of layers".into()));
        }
        Ok(Partition { paths })
    }

    /// The single wide path that uses every antenna: plain AF.
    pub fn trivial(dim: &Dimension) -> Self {
        let path = AfPath {
            supernodes: dim
                .counts()
                .iter()
                .enumerate()
                .map(|(i, &n)| Supernode::full(i, n))
                .collect(),
        };
        Partition { paths: vec![path] }
    }

    pub fn paths(&self) -> &[AfPath] {
        &self.paths
    }

    /// Partition size `K`.
    pub fn size(&self) -> usize {
        self.paths.len()
    }

    /// Checks that the partition fits `dim`.
    pub fn validate(&self, dim: &Dimension) -> Result<(), PartitionError> {
        for (k, path) in self.paths.iter().enumerate() {
            if path.supernodes.len() != dim.counts().len() {
                return Err(PartitionError::Malformed(format!(
                    "path {k} spans {} layers, the channel has {}",
                    path.supernodes.len(),
                    dim.counts().len()
                )));
            }
            for s in &path.supernodes {
                let width = dim.layer(s.layer);
                if let Some(&a) = s.antennas.iter().find(|&&a| a >= width) {
                    return Err(PartitionError::Malformed(format!(
                        "antenna {a} out of range in layer {} of width {width}",
                        s.layer
                    )));
                }
            }
        }
        Ok(())
    }

    /// Distinct supernodes used in `layer`, ordered by their antenna sets.
    pub fn layer_supernodes(&self, layer: usize) -> Vec<Supernode> {
        let set: BTreeSet<&Supernode> = self.paths.iter().map(|p| p.supernode(layer)).collect();
        set.into_iter().cloned().collect()
    }

    /// Widths of every path.
    pub fn path_dimensions(&self) -> Vec<Dimension> {
        self.paths.iter().map(AfPath::dimension).collect()
    }

    /// `sum_k d_AF(path_k)(0)`.
    pub fn diversity_sum(&self) -> u64 {
        self.paths
            .iter()
            .map(|p| dmt::dmt_rp_values(&p.dimension())[0])
            .sum()
    }
}

/// Whether no two paths of `p` share an edge.
pub fn is_independent(dim: &Dimension, p: &Partition) -> Result<bool, PartitionError> {
    p.validate(dim)?;
    let paths = p.paths();
    Ok(paths
        .iter()
        .enumerate()
        .all(|(i, a)| paths[i + 1..].iter().all(|b| !a.shares_edge(b))))
}

/// Full-diversity test for an independent partition: for some bottleneck
/// hop `(a, b)` whose layers are split into `K_a` and `K_b` supernodes, the
/// path count is `K_a K_b` and every path is narrow at the
/// bottleneck compared with its other layers.
pub fn is_full_diversity(dim: &Dimension, p: &Partition) -> Result<bool, PartitionError> {
    if !is_independent(dim, p)? {
        return Err(PartitionError::NotIndependent);
    }
    let n = dim.counts();
    let d_max = dim.d_max() as usize;
    let bottlenecks = (1..n.len()).filter(|&h| n[h - 1] * n[h] == d_max);
    for h in bottlenecks {
        let (a, b) = (h - 1, h);
        let (s_a, s_b) = (p.layer_supernodes(a), p.layer_supernodes(b));
        if p.size() != s_a.len() * s_b.len() || !tiles(&s_a, n[a]) || !tiles(&s_b, n[b]) {
            continue;
        }
        let narrow = p.paths().iter().all(|path| {
            let w = path.widths();
            let others = (0..w.len()).filter(|&l| l != a && l != b).map(|l| w[l]).min();
            others.is_none_or(|m| m + 1 >= w[a] + w[b])
        });
        if narrow {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the supernodes split `0..width` into disjoint blocks.
fn tiles(supernodes: &[Supernode], width: usize) -> bool {
    let mut seen = vec![false; width];
    for s in supernodes {
        for &a in s.antennas() {
            if std::mem::replace(&mut seen[a], true) {
                return false;
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// `d_max` edge-disjoint single-antenna paths. Layer 0 assigns path `k` to
/// antenna `k mod n_0`; each later layer walks the paths grouped by their
/// previous antenna and hands out antennas round-robin, so a group never
/// reuses an antenna and loads stay within one of each other.
pub fn max_partition(dim: &Dimension) -> Partition {
    let n = dim.counts();
    let d = dim.d_max() as usize;
    let mut assign: Vec<Vec<usize>> = vec![vec![0; n.len()]; d];
    for (k, a) in assign.iter_mut().enumerate() {
        a[0] = k % n[0];
    }
    for layer in 1..n.len() {
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by_key(|&k| (assign[k][layer - 1], k));
        for (pos, &k) in order.iter().enumerate() {
            assign[k][layer] = pos % n[layer];
        }
    }
    let paths = assign
        .into_iter()
        .map(|a| AfPath {
            supernodes: a
                .into_iter()
                .enumerate()
                .map(|(layer, ant)| Supernode { layer, antennas: vec![ant] })
                .collect(),
        })
        .collect();
    Partition { paths }
}

/// Smallest full-diversity partition of a two-hop channel: the relay layer
/// is cut into `K = ceil(n1 / (|n0 - n2| + 1))` near-equal supernodes and
/// each path is `(all source, one relay supernode, all destination)`.
pub fn min_full_div_partition_2hop(n0: usize, n1: usize, n2: usize) -> (usize, Partition) {
    assert!(n0 >= 1 && n1 >= 1 && n2 >= 1);
    let k = n1.div_ceil(n0.abs_diff(n2) + 1);
    let (base, extra) = (n1 / k, n1 % k);
    let mut start = 0;
    let paths = (0..k)
        .map(|j| {
            let size = base + usize::from(j < extra);
            let relay = Supernode { layer: 1, antennas: (start..start + size).collect() };
            start += size;
            AfPath { supernodes: vec![Supernode::full(0, n0), relay, Supernode::full(2, n2)] }
        })
        .collect();
    (k, Partition { paths })
}

/// Diversity of the selection partition that splits relay layer `layer`
/// into single antennas while every other layer stays whole.
pub fn nonind_partition_diversity(dim: &Dimension, layer: usize) -> Result<u64, PartitionError> {
    let hops = dim.hops();
    if layer == 0 || layer >= hops {
        return Err(PartitionError::LayerOutOfRange { layer, hops });
    }
    let head = dmt::dmt_rp_values(&dim.segment(0, layer))[0];
    let tail = dmt::dmt_rp_values(&dim.segment(layer, hops))[0];
    Ok(head.min(tail))
}

/// The selection partition itself: one path per antenna of `layer`.
pub fn selection_partition(dim: &Dimension, layer: usize) -> Result<Partition, PartitionError> {
    let hops = dim.hops();
    if layer == 0 || layer >= hops {
        return Err(PartitionError::LayerOutOfRange { layer, hops });
    }
    let paths = (0..dim.layer(layer))
        .map(|ant| AfPath {
            supernodes: dim
                .counts()
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    if i == layer {
                        Supernode { layer: i, antennas: vec![ant] }
                    } else {
                        Supernode::full(i, n)
                    }
                })
                .collect(),
        })
        .collect();
    Ok(Partition { paths })
}
