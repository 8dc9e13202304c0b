//! Channel order, minimal forms and equivalence classes.
//!
//! Two dimensions have the same tradeoff exactly when their minimal forms
//! agree. The minimal form keeps the `N* + 1` smallest layers of the
//! ordered dimension, where the order `N*` is the first `k` at which the
//! remaining layers are wide enough to stop mattering.

use serde::{Deserialize, Serialize};

use crate::dmt::Dimension;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    /// Channel order `N*`.
    pub order: usize,
    /// `(ñ_0, ..., ñ_{N*})`.
    pub minimal_form: Dimension,
    /// Minimal form padded with `n_bar` up to the original length.
    pub minimal_vertical_form: Dimension,
    /// Antennas per extra layer that suffice to keep the tradeoff.
    pub n_bar: usize,
    /// Interval boundaries `p_0, ..., p_{N-1}`; `p_N` is `-inf` and left out.
    pub p: Vec<i64>,
}

/// Whether `dim` has the same tradeoff as its `k + 1` smallest layers, i.e.
/// `k (ñ_{k+1} + 1) >= sum_{l<=k} ñ_l`, with `ñ_{N+1} = +inf`.
pub fn can_reduce(dim: &Dimension, k: usize) -> bool {
    assert!(k >= 1 && k <= dim.hops(), "k = {k} outside 1..={}", dim.hops());
    if k == dim.hops() {
        return true;
    }
    let n = dim.ordered();
    let head: usize = n[..=k].iter().sum();
    k * (n[k + 1] + 1) >= head
}

pub fn analyze(dim: &Dimension) -> ReductionReport {
    let n = dim.ordered();
    let hops = dim.hops();
    let order = (1..=hops).find(|&k| can_reduce(dim, k)).unwrap();
    let head: usize = n[..=order].iter().sum();
    let n_bar = head.div_ceil(order) - 1;
    let minimal_form = Dimension::new(n[..=order].to_vec()).unwrap();
    let mut vertical = n[..=order].to_vec();
    vertical.resize(hops + 1, n_bar);
    ReductionReport {
        order,
        minimal_form,
        minimal_vertical_form: Dimension::new(vertical).unwrap(),
        n_bar,
        p: interval_bounds(&n),
    }
}

/// `p_0 = ñ_0` and `p_k = sum_{l<=k} ñ_l - k ñ_{k+1}` for `k = 1..N-1`.
/// Index `i` of the coefficient vector falls in `[p_k, p_{k-1}]` for the `k`
/// that attains the minimum in the coefficient formula.
pub fn interval_bounds(ordered: &[usize]) -> Vec<i64> {
    let hops = ordered.len() - 1;
    let mut p = vec![ordered[0] as i64];
    let mut sum = ordered[0] as i64;
    for k in 1..hops {
        sum += ordered[k] as i64;
        p.push(sum - k as i64 * ordered[k + 1] as i64);
    }
    p
}

/// Same tradeoff, decided by comparing minimal forms.
pub fn equivalent(a: &Dimension, b: &Dimension) -> bool {
    analyze(a).minimal_form == analyze(b).minimal_form
}

/// Caps every relay layer at `n_bar`, leaving source and destination alone.
pub fn practical_vertical_reduction(dim: &Dimension) -> Dimension {
    let n_bar = analyze(dim).n_bar;
    let hops = dim.hops();
    let counts = dim
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &n)| if i == 0 || i == hops { n } else { n.min(n_bar) })
        .collect();
    Dimension::new(counts).unwrap()
}
