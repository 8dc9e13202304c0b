//! Flip-and-forward mode schedule.
//!
//! Every relay layer `i` is cut into `K_i` supernodes `S_{i,1..K_i}`. Mode
//! `k` of the `K' = prod K_i` modes flips the sign of supernode
//! `S_{i, f_i(k)}` at every relay layer (the first supernode is never
//! flipped), so the destination sees `K'` linearly independent mixtures of
//! the parallel paths.

use serde::{Deserialize, Serialize};

use super::{is_full_diversity, Partition, PartitionError, Supernode};
use crate::dmt::Dimension;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSchedule {
    /// Width of every layer, source to destination.
    widths: Vec<usize>,
    /// Supernodes of relay layers `1..N-1`; entry `i - 1` holds layer `i`.
    relay_supernodes: Vec<Vec<Supernode>>,
    /// Set when the partition the schedule came from is not full diversity.
    pub warning: Option<String>,
}

impl FlipSchedule {
    /// Builds a schedule from explicit relay supernodes; `layers[i - 1]`
    /// lists the supernodes of relay layer `i`.
    pub fn from_layers(dim: &Dimension, layers: Vec<Vec<Supernode>>) -> Result<Self, PartitionError> {
        let hops = dim.hops();
        if layers.len() + 1 != hops.max(1) {
            return Err(PartitionError::Malformed(format!(
                "{} relay layers given for a {hops}-hop channel",
                layers.len()
            )));
        }
        for (i, layer) in layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(PartitionError::Malformed(format!("relay layer {} has no supernodes", i + 1)));
            }
            let width = dim.layer(i + 1);
            for s in layer {
                if s.layer != i + 1 || s.antennas().iter().any(|&a| a >= width) {
                    return Err(PartitionError::Malformed(format!(
                        "supernode {:?} does not fit relay layer {}",
                        s.antennas(),
                        i + 1
                    )));
                }
            }
        }
        Ok(FlipSchedule { widths: dim.counts().to_vec(), relay_supernodes: layers, warning: None })
    }

    /// `K_1, ..., K_{N-1}`.
    pub fn counts(&self) -> Vec<usize> {
        self.relay_supernodes.iter().map(Vec::len).collect()
    }

    /// `K'`.
    pub fn modes(&self) -> usize {
        self.counts().iter().product()
    }

    pub fn relay_supernodes(&self, layer: usize) -> &[Supernode] {
        &self.relay_supernodes[layer - 1]
    }

    /// `f_i(k)` for relay layer `i` and mode `k`, both 1-based.
    pub fn mode_map(&self, layer: usize, k: usize) -> usize {
        let counts = self.counts();
        assert!(layer >= 1 && layer <= counts.len(), "relay layer {layer} out of range");
        assert!(k >= 1 && k <= self.modes(), "mode {k} out of range");
        let m = k - 1;
        let ki = counts[layer - 1];
        if layer == 1 {
            return m % ki + 1;
        }
        let stride: usize = counts[..layer - 1].iter().product();
        m.div_ceil(stride) % ki + 1
    }

    /// `(f_1(k), ..., f_{N-1}(k))`.
    pub fn mode_tuple(&self, k: usize) -> Vec<usize> {
        (1..=self.relay_supernodes.len()).map(|i| self.mode_map(i, k)).collect()
    }

    /// Diagonal of `F_{i,j}`: all `+1` for `j = 1`, otherwise `-1` exactly
    /// on the antennas of `S_{i,j}`.
    pub fn flip_diagonal(&self, layer: usize, j: usize) -> Vec<f64> {
        let width = self.widths[layer];
        if j == 1 {
            return vec![1.0; width];
        }
        let s = &self.relay_supernodes[layer - 1][j - 1];
        (0..width).map(|a| if s.contains(a) { -1.0 } else { 1.0 }).collect()
    }

    /// Diagonal of the selection matrix `J_{i,j}`: one on `S_{i,j}`.
    pub fn selection_diagonal(&self, layer: usize, j: usize) -> Vec<f64> {
        let s = &self.relay_supernodes[layer - 1][j - 1];
        (0..self.widths[layer]).map(|a| if s.contains(a) { 1.0 } else { 0.0 }).collect()
    }

    /// Flip diagonals of mode `k` for relay layers `1..N-1`.
    pub fn mode_flips(&self, k: usize) -> Vec<Vec<f64>> {
        self.mode_tuple(k)
            .iter()
            .enumerate()
            .map(|(i, &j)| self.flip_diagonal(i + 1, j))
            .collect()
    }
}

/// Reads the relay supernodes off `p` and builds the flip schedule. A
/// partition that is not full diversity (or not independent) still yields a
/// schedule, with [`FlipSchedule::warning`] set.
pub fn ff_schedule(dim: &Dimension, p: &Partition) -> Result<FlipSchedule, PartitionError> {
    p.validate(dim)?;
    let layers = (1..dim.hops()).map(|i| p.layer_supernodes(i)).collect();
    let mut sched = FlipSchedule::from_layers(dim, layers)?;
    sched.warning = match is_full_diversity(dim, p) {
        Ok(true) => None,
        Ok(false) => Some("partition is not full diversity".into()),
        Err(e) => Some(e.to_string()),
    };
    Ok(sched)
}
