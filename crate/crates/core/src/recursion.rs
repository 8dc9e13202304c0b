//! Recursive evaluation of the Rayleigh-product tradeoff, kept separate
//! from the closed form in [`crate::dmt`] so the two can check each other.
//!
//! `d(n, k)` is the cost of limiting the flow through the layered network
//! `n` to `k`. Splitting the chain before the last layer gives
//!
//! ```text
//! d((n_0..n_N), k) = min_{j >= k} d((n_0..n_{N-1}), j) + (j - k)(n_N - k)
//! ```
//!
//! which bottoms out at the point-to-point formula `(n_0 - k)(n_1 - k)`.

use std::collections::HashMap;

use thiserror::Error;

use crate::dmt::{self, Dimension};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecursionError {
    #[error("multiplexing gain {k} exceeds n_min = {n_min}")]
    GainOutOfRange { k: usize, n_min: usize },
}

/// Memoised evaluator. One instance per evaluation context; the table is
/// keyed on the ordered dimension, which is sound because the tradeoff does
/// not depend on layer order.
#[derive(Default)]
pub struct RecursionOracle {
    memo: HashMap<(Vec<usize>, usize), u64>,
}

impl RecursionOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dmt(&mut self, dim: &Dimension, k: usize) -> Result<u64, RecursionError> {
        let n_min = dim.n_min();
        if k > n_min {
            return Err(RecursionError::GainOutOfRange { k, n_min });
        }
        Ok(self.eval(dim.counts(), k))
    }

    /// Layers may be zero-width here; a chain whose narrowest layer is
    /// at most `k` already carries at most `k` streams and costs nothing.
    fn eval(&mut self, layers: &[usize], k: usize) -> u64 {
        let narrowest = *layers.iter().min().unwrap();
        if k >= narrowest {
            return 0;
        }
        if layers.len() == 2 {
            return ((layers[0] - k) * (layers[1] - k)) as u64;
        }
        let mut key = layers.to_vec();
        key.sort_unstable();
        if let Some(&d) = self.memo.get(&(key.clone(), k)) {
            return d;
        }
        let (head, last) = layers.split_at(layers.len() - 1);
        let last = last[0];
        let head_min = *head.iter().min().unwrap();
        let d = (k..=head_min)
            .map(|j| self.eval(head, j) + ((j - k) * (last - k)) as u64)
            .min()
            .unwrap();
        self.memo.insert((key, k), d);
        d
    }

    /// Splits after layer `i` instead: the prefix carries `j >= k` streams
    /// into layer `i`, and `(j, n_{i+1}, ..., n_N)` must then be cut to `k`.
    pub fn split_at(&mut self, dim: &Dimension, i: usize, k: usize) -> u64 {
        let n = dim.counts();
        assert!(i >= 1 && i < dim.hops());
        let head = &n[..=i];
        let head_min = *head.iter().min().unwrap();
        (k..=head_min)
            .map(|j| {
                let mut tail = vec![j];
                tail.extend_from_slice(&n[i + 1..]);
                self.eval(head, j) + self.eval(&tail, k)
            })
            .min()
            .unwrap()
    }

    /// Shifted evaluation `d(n - k, 0)`; `None` when some layer is not wider
    /// than `k`.
    pub fn shifted(&mut self, dim: &Dimension, k: usize) -> Option<u64> {
        if dim.counts().iter().any(|&n| n <= k) {
            return None;
        }
        let shifted: Vec<usize> = dim.counts().iter().map(|&n| n - k).collect();
        Some(self.eval(&shifted, 0))
    }
}

pub fn dmt_recursive(dim: &Dimension, k: usize) -> Result<u64, RecursionError> {
    RecursionOracle::new().dmt(dim, k)
}

/// Agreement of the recursion with the closed form at every integer gain,
/// plus the shift identity and split invariance over every interior layer.
pub fn cross_check(dim: &Dimension) -> bool {
    cross_check_with(&mut RecursionOracle::new(), dim)
}

pub fn cross_check_with(oracle: &mut RecursionOracle, dim: &Dimension) -> bool {
    let closed = dmt::dmt_rp_values(dim);
    (0..=dim.n_min()).all(|k| {
        let d = oracle.dmt(dim, k).expect("k within range");
        let shift_ok = oracle.shifted(dim, k).is_none_or(|s| s == d);
        let split_ok = (1..dim.hops()).all(|i| oracle.split_at(dim, i, k) == d);
        d == closed[k] && shift_ok && split_ok
    })
}
