//! Closed-form tradeoff curves for multihop channels.
//!
//! Everything here is exact integer/rational arithmetic. A channel is
//! described by its [`Dimension`], the antenna counts of the source, the
//! relay layers and the destination.

mod curve;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use curve::{DmtCurve, Vertex, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DmtError {
    #[error("a dimension needs at least two layers, got {0}")]
    TooShort(usize),
    #[error("layer {layer} has zero antennas")]
    EmptyLayer { layer: usize },
    #[error("cannot parse dimension {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid decode set {indices:?} for a {hops}-hop channel")]
    InvalidDecodeSet { indices: Vec<usize>, hops: usize },
    #[error("unachievable diversity {target}: the cut-set maximum is {d_max}")]
    UnachievableDiversity { target: u64, d_max: u64 },
    #[error("a parallel channel needs at least one path")]
    NoPaths,
    #[error("flip mode count must be positive")]
    ZeroModes,
}

/// Antenna counts `(n_0, ..., n_N)` of an `N`-hop channel, source first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Dimension(Vec<usize>);

impl Dimension {
    pub fn new(counts: Vec<usize>) -> Result<Self, DmtError> {
        if counts.len() < 2 {
            return Err(DmtError::TooShort(counts.len()));
        }
        if let Some(layer) = counts.iter().position(|&n| n == 0) {
            return Err(DmtError::EmptyLayer { layer });
        }
        Ok(Dimension(counts))
    }

    /// Symmetric `(n, ..., n)` channel with `hops` hops.
    pub fn symmetric(n: usize, hops: usize) -> Result<Self, DmtError> {
        Dimension::new(vec![n; hops + 1])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Number of hops `N`.
    pub fn hops(&self) -> usize {
        self.0.len() - 1
    }

    pub fn layer(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Non-decreasing copy of the counts.
    pub fn ordered(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    pub fn n_min(&self) -> usize {
        *self.0.iter().min().unwrap()
    }

    pub fn n_max(&self) -> usize {
        *self.0.iter().max().unwrap()
    }

    /// Cut-set maximum diversity `min_i n_{i-1} n_i`.
    pub fn d_max(&self) -> u64 {
        self.0
            .windows(2)
            .map(|w| (w[0] * w[1]) as u64)
            .min()
            .unwrap()
    }

    /// Cut-set maximum multiplexing gain `min_i n_i`.
    pub fn r_max(&self) -> usize {
        self.n_min()
    }

    /// Layers `from..=to` as a sub-channel.
    pub fn segment(&self, from: usize, to: usize) -> Dimension {
        assert!(from < to && to <= self.hops(), "bad segment {from}..={to}");
        Dimension(self.0[from..=to].to_vec())
    }
}

impl TryFrom<Vec<usize>> for Dimension {
    type Error = DmtError;
    fn try_from(v: Vec<usize>) -> Result<Self, DmtError> {
        Dimension::new(v)
    }
}

impl From<Dimension> for Vec<usize> {
    fn from(d: Dimension) -> Vec<usize> {
        d.0
    }
}

impl FromStr for Dimension {
    type Err = DmtError;

    /// Parses a comma-separated list such as `2,4,3`.
    fn from_str(s: &str) -> Result<Self, DmtError> {
        let err = |reason: String| DmtError::Parse { input: s.to_string(), reason };
        let counts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| err(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Dimension::new(counts).map_err(|e| err(e.to_string()))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Coefficients `c_1 >= ... >= c_{n_min} >= 0`; `d(k)` is the tail sum
/// `c_{k+1} + ... + c_{n_min}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmtCoeffs(pub Vec<u64>);

impl DmtCoeffs {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// Layers performing cooperative decode-and-forward, `D_1 < ... < D_m = N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeSet(Vec<usize>);

impl DecodeSet {
    pub fn new(indices: Vec<usize>, hops: usize) -> Result<Self, DmtError> {
        let ok = !indices.is_empty()
            && indices.windows(2).all(|w| w[0] < w[1])
            && indices[0] >= 1
            && *indices.last().unwrap() == hops;
        if ok {
            Ok(DecodeSet(indices))
        } else {
            Err(DmtError::InvalidDecodeSet { indices, hops })
        }
    }

    /// Pure amplify-and-forward: only the destination decodes.
    pub fn destination_only(hops: usize) -> Self {
        DecodeSet(vec![hops])
    }

    /// Every relay layer decodes.
    pub fn all_layers(hops: usize) -> Self {
        DecodeSet((1..=hops).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// `(start, end)` layer pairs of the AF segments, starting at layer 0.
    pub fn segments(&self) -> Vec<(usize, usize)> {
        let mut prev = 0;
        self.0
            .iter()
            .map(|&d| {
                let s = (prev, d);
                prev = d;
                s
            })
            .collect()
    }
}

/// Coefficients `c_i = 1 - i + min_k floor((sum_{l<=k} ñ_l - i) / k)`.
pub fn coeffs(dim: &Dimension) -> DmtCoeffs {
    let n = dim.ordered();
    let hops = dim.hops();
    let n_min = n[0] as i64;
    let prefix: Vec<i64> = n
        .iter()
        .scan(0i64, |acc, &x| {
            *acc += x as i64;
            Some(*acc)
        })
        .collect();
    let c = (1..=n_min)
        .map(|i| {
            let m = (1..=hops as i64)
                .map(|k| (prefix[k as usize] - i).div_euclid(k))
                .min()
                .unwrap();
            let ci = 1 - i + m;
            debug_assert!(ci >= 0);
            ci as u64
        })
        .collect();
    DmtCoeffs(c)
}

/// Integer vertex values `d(0), ..., d(n_min)` of the Rayleigh-product curve.
pub fn dmt_rp_values(dim: &Dimension) -> Vec<u64> {
    let c = coeffs(dim).0;
    let mut out = vec![0u64; c.len() + 1];
    for k in (0..c.len()).rev() {
        out[k] = out[k + 1] + c[k];
    }
    out
}

/// Tradeoff of the Rayleigh-product channel, which is also the tradeoff of
/// antenna-wise amplify-and-forward over the multihop channel.
pub fn dmt_rp(dim: &Dimension) -> DmtCurve {
    let ds: Vec<i64> = dmt_rp_values(dim).into_iter().map(|d| d as i64).collect();
    DmtCurve::from_integer_points(&ds)
}

/// Point-to-point `nt x nr` Rayleigh channel: `d(k) = (nt-k)(nr-k)`.
pub fn dmt_rayleigh(nt: usize, nr: usize) -> DmtCurve {
    assert!(nt >= 1 && nr >= 1, "antenna counts must be positive");
    let ds: Vec<i64> = (0..=nt.min(nr))
        .map(|k| ((nt - k) * (nr - k)) as i64)
        .collect();
    DmtCurve::from_integer_points(&ds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutsetBound {
    pub curve: DmtCurve,
    pub d_max: u64,
    pub r_max: usize,
}

/// Minimum over hops of the per-hop Rayleigh tradeoffs.
pub fn cutset_bound(dim: &Dimension) -> CutsetBound {
    let hops: Vec<DmtCurve> = dim
        .counts()
        .windows(2)
        .map(|w| dmt_rayleigh(w[0], w[1]))
        .collect();
    let refs: Vec<&DmtCurve> = hops.iter().collect();
    CutsetBound {
        curve: DmtCurve::pointwise_min(&refs),
        d_max: dim.d_max(),
        r_max: dim.r_max(),
    }
}

/// Closed form for the symmetric `(n, ..., n)` channel with `hops` hops.
pub fn dmt_symmetric(n: usize, hops: usize) -> DmtCurve {
    assert!(n >= 1 && hops >= 1);
    let (n, big_n) = (n as i64, hops as i64);
    let ds: Vec<i64> = (0..=n)
        .map(|k| {
            let a = (n - k) / big_n;
            let b = (n - k) % big_n;
            let twice = (n - k) * (n + 1 - k) + a * ((a - 1) * big_n + 2 * b);
            debug_assert!(twice % 2 == 0);
            twice / 2
        })
        .collect();
    DmtCurve::from_integer_points(&ds)
}

/// Serial partition: AF inside each segment, decoding at the layers of
/// `decode`. The tradeoff is the minimum over segments.
pub fn dmt_serial_partition(dim: &Dimension, decode: &DecodeSet) -> Result<DmtCurve, DmtError> {
    check_decode(dim, decode)?;
    let segs: Vec<DmtCurve> = decode
        .segments()
        .into_iter()
        .map(|(a, b)| dmt_rp(&dim.segment(a, b)))
        .collect();
    let refs: Vec<&DmtCurve> = segs.iter().collect();
    Ok(DmtCurve::pointwise_min(&refs))
}

/// Cooperative decode-and-forward at every layer. Coincides with the
/// cut-set bound.
pub fn dmt_df(dim: &Dimension) -> DmtCurve {
    dmt_serial_partition(dim, &DecodeSet::all_layers(dim.hops())).expect("all-layer set is valid")
}

fn check_decode(dim: &Dimension, decode: &DecodeSet) -> Result<(), DmtError> {
    if *decode.0.last().unwrap() != dim.hops() {
        return Err(DmtError::InvalidDecodeSet { indices: decode.0.clone(), hops: dim.hops() });
    }
    Ok(())
}

/// Smallest decode set reaching diversity `target`: each decoding layer is
/// pushed as far downstream as the AF segment before it allows.
pub fn where_to_decode(dim: &Dimension, target: u64) -> Result<DecodeSet, DmtError> {
    let d_max = dim.d_max();
    if target > d_max {
        return Err(DmtError::UnachievableDiversity { target, d_max });
    }
    let hops = dim.hops();
    let mut out = Vec::new();
    let mut prev = 0;
    while prev < hops {
        let next = (prev + 1..=hops)
            .rev()
            .find(|&end| dmt_rp_values(&dim.segment(prev, end))[0] >= target)
            .expect("a single hop always reaches the cut-set maximum");
        out.push(next);
        prev = next;
    }
    DecodeSet::new(out, hops)
}

/// `d_AF(r) + (d_max - d_AF(0)) (1 - K' r)^+`, the guaranteed tradeoff of
/// flip-and-forward with `k_modes` flip modes.
pub fn dmt_ff_lower_bound(dim: &Dimension, k_modes: usize) -> Result<DmtCurve, DmtError> {
    if k_modes == 0 {
        return Err(DmtError::ZeroModes);
    }
    let af = dmt_rp(dim);
    let gap = Q::from_integer(dim.d_max() as i64) - af.d_max();
    let knee = Q::new(1, k_modes as i64);
    let ramp = DmtCurve::from_vertices(vec![Vertex::new(Q::from_integer(0), gap), Vertex::new(knee, Q::from_integer(0))]);
    if gap == Q::from_integer(0) {
        return Ok(af);
    }
    Ok(af.add(&ramp))
}

/// Tradeoff of a parallel AF channel. The full curve is only known when
/// every path has the same tradeoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParallelDmt {
    /// `K * d_0(r)` for identical paths.
    Curve(DmtCurve),
    /// Heterogeneous paths: only the diversity `sum_k d_k(0)` is known.
    DiversityOnly(u64),
}

impl ParallelDmt {
    pub fn diversity(&self) -> u64 {
        match self {
            ParallelDmt::Curve(c) => c.d_max().to_integer() as u64,
            ParallelDmt::DiversityOnly(d) => *d,
        }
    }
}

pub fn dmt_parallel_af(path_dims: &[Dimension]) -> Result<ParallelDmt, DmtError> {
    let curves: Vec<DmtCurve> = path_dims.iter().map(dmt_rp).collect();
    let first = curves.first().ok_or(DmtError::NoPaths)?;
    if curves.iter().all(|c| c == first) {
        Ok(ParallelDmt::Curve(first.scale(curves.len() as i64)))
    } else {
        let total = curves.iter().map(|c| c.d_max().to_integer() as u64).sum();
        Ok(ParallelDmt::DiversityOnly(total))
    }
}

/// Every dimension with entries in `1..=max_entry` and `1..=max_hops` hops,
/// shortest first.
pub fn all_dimensions(max_entry: usize, max_hops: usize) -> Vec<Dimension> {
    let mut out = Vec::new();
    for len in 2..=max_hops + 1 {
        let mut v = vec![1; len];
        loop {
            out.push(Dimension(v.clone()));
            let mut i = 0;
            while i < len && v[i] == max_entry {
                v[i] = 1;
                i += 1;
            }
            if i == len {
                break;
            }
            v[i] += 1;
        }
    }
    out
}
