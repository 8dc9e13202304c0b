use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{sample_channel, Scheme, SimError};
use crate::dmt::Dimension;

pub const CSV_HEADER: &str = "snr_db,rate,trials,outages,p_hat,ci_lo,ci_hi";

/// Trials handed to one task; small enough to balance, large enough that
/// scheduling cost vanishes.
const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum RatePolicy {
    /// Fixed rate in bits per channel use.
    Fixed(f64),
    /// `r log2 SNR` bits per channel use.
    Multiplexing(f64),
}

impl RatePolicy {
    pub fn rate_at(&self, snr_db: f64) -> f64 {
        match *self {
            RatePolicy::Fixed(r) => r,
            RatePolicy::Multiplexing(r) => r * (snr_db / 10.0) * std::f64::consts::LOG2_10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutageEstimate {
    pub snr_db: f64,
    pub rate_bpcu: f64,
    pub trials: u64,
    pub outage_count: u64,
    pub p_hat: f64,
    pub ci95: (f64, f64),
}

impl OutageEstimate {
    pub fn new(snr_db: f64, rate_bpcu: f64, trials: u64, outage_count: u64) -> Self {
        assert!(trials >= 1 && outage_count <= trials);
        let p_hat = outage_count as f64 / trials as f64;
        OutageEstimate { snr_db, rate_bpcu, trials, outage_count, p_hat, ci95: ci95(p_hat, trials) }
    }
}

/// Normal-approximation interval widened by a `0.5 / n` continuity term.
pub fn ci95(p: f64, n: u64) -> (f64, f64) {
    let n = n as f64;
    let half = 1.96 * (p * (1.0 - p) / n).sqrt() + 0.5 / n;
    ((p - half).max(0.0), (p + half).min(1.0))
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `f` on a dedicated pool of `workers` threads (0 means rayon's
/// default).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Outage counts at every SNR of `snr_db`, sharing one channel draw per
/// trial across the grid.
pub fn estimate_outage_grid(
    dim: &Dimension,
    scheme: &Scheme,
    rate: RatePolicy,
    snr_db: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<OutageEstimate>, SimError> {
    assert!(trials >= 1, "at least one trial");
    scheme.check(dim)?;
    let points: Vec<(f64, f64)> = snr_db
        .iter()
        .map(|&db| (10f64.powf(db / 10.0), rate.rate_at(db)))
        .collect();
    let chunks = trials.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Vec<u64>, SimError> {
            let mut counts = vec![0u64; points.len()];
            for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                let real = sample_channel(dim, &mut trial_rng(seed, t));
                for (count, &(snr, r)) in counts.iter_mut().zip(&points) {
                    if scheme.outage(&real, snr, r)? {
                        *count += 1;
                    }
                }
            }
            Ok(counts)
        })
        .try_reduce(
            || vec![0u64; points.len()],
            |a, b| Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect()),
        )?;
    Ok(snr_db
        .iter()
        .zip(&points)
        .zip(counts)
        .map(|((&db, &(_, r)), k)| OutageEstimate::new(db, r, trials, k))
        .collect())
}

pub fn estimate_outage(
    dim: &Dimension,
    scheme: &Scheme,
    rate: f64,
    snr_db: f64,
    trials: u64,
    seed: u64,
) -> Result<OutageEstimate, SimError> {
    estimate_outage_grid(dim, scheme, RatePolicy::Fixed(rate), &[snr_db], trials, seed).map(|mut v| v.remove(0))
}

/// Minimum number of outage events before a point enters a slope fit.
pub const MIN_EVENTS: u64 = 20;

/// Negative slope of `log10 p_hat` against `log10 SNR`, by weighted least
/// squares with weights `1 / Var(log10 p_hat)`. Points with fewer than
/// [`MIN_EVENTS`] outages or `p_hat` of one are skipped.
pub fn estimate_slope(points: &[OutageEstimate]) -> Result<f64, SimError> {
    let used: Vec<(f64, f64, f64)> = points
        .iter()
        .filter(|p| p.outage_count >= MIN_EVENTS && p.p_hat > 0.0 && p.p_hat < 1.0)
        .map(|p| {
            let ln10 = std::f64::consts::LN_10;
            let var = (1.0 - p.p_hat) / (p.trials as f64 * p.p_hat * ln10 * ln10);
            (p.snr_db / 10.0, p.p_hat.log10(), 1.0 / var)
        })
        .collect();
    if used.len() < 3 {
        return Err(SimError::InsufficientPoints(used.len()));
    }
    let sw: f64 = used.iter().map(|u| u.2).sum();
    let mx = used.iter().map(|u| u.2 * u.0).sum::<f64>() / sw;
    let my = used.iter().map(|u| u.2 * u.1).sum::<f64>() / sw;
    let sxy: f64 = used.iter().map(|u| u.2 * (u.0 - mx) * (u.1 - my)).sum();
    let sxx: f64 = used.iter().map(|u| u.2 * (u.0 - mx) * (u.0 - mx)).sum();
    Ok(-sxy / sxx)
}

/// [`estimate_slope`] restricted to points with `lo <= p_hat <= hi`.
pub fn estimate_slope_in_band(points: &[OutageEstimate], lo: f64, hi: f64) -> Result<f64, SimError> {
    let band: Vec<OutageEstimate> = points
        .iter()
        .filter(|p| p.p_hat >= lo && p.p_hat <= hi)
        .cloned()
        .collect();
    estimate_slope(&band)
}

pub fn write_csv<W: Write>(mut out: W, points: &[OutageEstimate]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{:.6e},{:.6e},{:.6e}",
            p.snr_db, p.rate_bpcu, p.trials, p.outage_count, p.p_hat, p.ci95.0, p.ci95.1
        )?;
    }
    Ok(())
}
