//! JSON form of a partition: each layer lists its supernodes as antenna
//! index arrays and each path names one supernode per layer by position.

use serde::{Deserialize, Serialize};

use super::{AfPath, Partition, PartitionError, Supernode};
use crate::dmt::Dimension;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub dimension: Dimension,
    pub layers: Vec<Vec<Vec<usize>>>,
    pub paths: Vec<Vec<usize>>,
}

impl PartitionDoc {
    pub fn from_partition(dim: &Dimension, p: &Partition) -> Result<Self, PartitionError> {
        p.validate(dim)?;
        let supernodes: Vec<Vec<Supernode>> =
            (0..dim.counts().len()).map(|l| p.layer_supernodes(l)).collect();
        let paths = p
            .paths()
            .iter()
            .map(|path| {
                path.supernodes()
                    .iter()
                    .map(|s| supernodes[s.layer].iter().position(|t| t == s).unwrap())
                    .collect()
            })
            .collect();
        let layers = supernodes
            .iter()
            .map(|l| l.iter().map(|s| s.antennas().to_vec()).collect())
            .collect();
        Ok(PartitionDoc { dimension: dim.clone(), layers, paths })
    }

    pub fn to_partition(&self) -> Result<Partition, PartitionError> {
        if self.layers.len() != self.dimension.counts().len() {
            return Err(PartitionError::Malformed(format!(
                "{} layers listed for a {}-layer channel",
                self.layers.len(),
                self.dimension.counts().len()
            )));
        }
        let paths = self
            .paths
            .iter()
            .map(|refs| {
                if refs.len() != self.layers.len() {
                    return Err(PartitionError::Malformed("path length differs from layer count".into()));
                }
                let nodes = refs
                    .iter()
                    .enumerate()
                    .map(|(l, &j)| {
                        let ants = self.layers[l].get(j).ok_or_else(|| {
                            PartitionError::Malformed(format!("layer {l} has no supernode {j}"))
                        })?;
                        Supernode::new(l, ants.iter().copied())
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                AfPath::new(nodes)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = Partition::new(paths)?;
        p.validate(&self.dimension)?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("partition documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, PartitionError> {
        serde_json::from_str(s).map_err(|e| PartitionError::Malformed(e.to_string()))
    }
}
