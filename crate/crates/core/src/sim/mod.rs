//! Monte-Carlo outage simulation.
//!
//! Trial `t` of a run seeded with `s` draws its channel from the ChaCha8
//! stream `(s, t)`, so every trial is reproducible on its own and aggregate
//! counts do not depend on how trials are spread over threads. All points
//! of an SNR grid are evaluated on the same draws.

mod channel;
mod estimate;

use thiserror::Error;

pub use channel::{
    af_effective, af_gains, df_outage, ff_effective, flip_products, mutual_info, parallel_af_effective,
    pf_effective, relay_chain, sample_channel, selection_products, svd_align_effective, CMat,
    ChannelRealization, EffectiveChannel,
};
pub(crate) use channel::cn01;
pub use estimate::{
    ci95, estimate_outage, estimate_outage_grid, estimate_slope, estimate_slope_in_band, trial_rng,
    with_workers, write_csv, OutageEstimate, RatePolicy, CSV_HEADER,
};

use crate::dmt::{DecodeSet, Dimension};
use crate::partition::{FlipSchedule, Partition};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("incompatible configuration: {0}")]
    Incompatible(String),
    #[error("slope fit needs at least 3 usable points, got {0}")]
    InsufficientPoints(usize),
}

#[derive(Clone, Debug)]
pub enum Scheme {
    Af,
    Pf,
    Df(DecodeSet),
    ParallelAf(Partition),
    Ff(FlipSchedule),
    SvdAlign,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Af => "af",
            Scheme::Pf => "pf",
            Scheme::Df(_) => "df",
            Scheme::ParallelAf(_) => "parallel-af",
            Scheme::Ff(_) => "ff",
            Scheme::SvdAlign => "svd-align",
        }
    }

    pub fn check(&self, dim: &Dimension) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::Incompatible(m));
        match self {
            Scheme::Df(d) if d.indices().last() != Some(&dim.hops()) => {
                bad(format!("decode set {:?} does not end at layer {}", d.indices(), dim.hops()))
            }
            Scheme::ParallelAf(p) => p.validate(dim).or_else(|e| bad(e.to_string())),
            Scheme::Ff(s) if s.counts().len() + 1 != dim.hops().max(1) => {
                bad("flip schedule does not match the hop count".into())
            }
            Scheme::SvdAlign if dim.counts().iter().any(|&n| n != dim.layer(0)) => {
                bad(format!("SVD alignment needs a symmetric dimension, got {dim}"))
            }
            _ => Ok(()),
        }
    }

    /// The parallel channels a codeword is spread over: one for AF, PF and
    /// SVD alignment, one per mode or path otherwise. DF has no single
    /// end-to-end channel.
    pub fn effective_channels(&self, real: &ChannelRealization, snr: f64) -> Result<Vec<EffectiveChannel>, SimError> {
        Ok(match self {
            Scheme::Af => vec![af_effective(real, snr)],
            Scheme::Pf => vec![pf_effective(real, snr)],
            Scheme::Df(_) => return Err(SimError::Incompatible("DF has no end-to-end linear channel".into())),
            Scheme::ParallelAf(p) => parallel_af_effective(real, p, snr),
            Scheme::Ff(s) => ff_effective(real, s, snr),
            Scheme::SvdAlign => vec![svd_align_effective(real, snr)?],
        })
    }

    /// Outage indicator of one draw.
    pub fn outage(&self, real: &ChannelRealization, snr: f64, rate: f64) -> Result<bool, SimError> {
        let average = |effs: Vec<EffectiveChannel>| -> Result<f64, SimError> {
            let k = effs.len() as f64;
            let mut sum = 0.0;
            for e in &effs {
                sum += e.mutual_info(snr)?;
            }
            Ok(sum / k)
        };
        let mi = match self {
            Scheme::Af => af_effective(real, snr).mutual_info(snr)?,
            Scheme::Pf => pf_effective(real, snr).mutual_info(snr)?,
            Scheme::Df(d) => return df_outage(real, d, snr, rate),
            Scheme::ParallelAf(p) => average(parallel_af_effective(real, p, snr))?,
            Scheme::Ff(s) => average(ff_effective(real, s, snr))?,
            Scheme::SvdAlign => svd_align_effective(real, snr)?.mutual_info(snr)?,
        };
        Ok(mi < rate)
    }
}
