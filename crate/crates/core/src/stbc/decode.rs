//! Exhaustive ML decoding and coded error-rate simulation.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::{Codebook, StbcError};
use crate::dmt::Dimension;
use crate::sim::{cn01, sample_channel, trial_rng, CMat, EffectiveChannel, OutageEstimate, Scheme};

/// Whitened received blocks and scaled whitened gains.
struct Whitened {
    y: Vec<CMat>,
    g: Vec<CMat>,
}

fn whiten(received: &[CMat], eff: &[EffectiveChannel], snr: f64) -> Result<Whitened, StbcError> {
    let mut y = Vec::with_capacity(eff.len());
    let mut g = Vec::with_capacity(eff.len());
    for (r, e) in received.iter().zip(eff) {
        let l = e.whitener()?;
        let amp = Complex64::new((snr / e.inputs as f64).sqrt(), 0.0);
        let solve = |m: &CMat| {
            l.solve_lower_triangular(m)
                .ok_or_else(|| StbcError::Sim(crate::sim::SimError::Numerical("singular whitener".into())))
        };
        y.push(solve(r)?);
        g.push(solve(&e.gain)? * amp);
    }
    Ok(Whitened { y, g })
}

/// `||Y - G X||_F^2`, stopping once it passes `bound`.
fn residual(y: &CMat, g: &CMat, x: &CMat, bound: f64) -> f64 {
    let mut acc = 0.0;
    for t in 0..x.ncols() {
        for r in 0..y.nrows() {
            let mut v = y[(r, t)];
            for j in 0..x.nrows() {
                v -= g[(r, j)] * x[(j, t)];
            }
            acc += v.norm_sqr();
        }
        if acc > bound {
            return acc;
        }
    }
    acc
}

fn decode_whitened(w: &Whitened, cb: &Codebook) -> usize {
    let mut best = (f64::INFINITY, 0);
    for (i, cw) in cb.codewords.iter().enumerate() {
        let mut metric = 0.0;
        for ((y, g), x) in w.y.iter().zip(&w.g).zip(cw) {
            metric += residual(y, g, x, best.0 - metric);
            if metric >= best.0 {
                break;
            }
        }
        if metric < best.0 {
            best = (metric, i);
        }
    }
    best.1
}

fn check_shapes(cb: &Codebook, eff: &[EffectiveChannel]) -> Result<(), StbcError> {
    if eff.len() != cb.blocks() {
        return Err(StbcError::Incompatible(format!(
            "{} blocks per codeword, {} sub-channels",
            cb.blocks(),
            eff.len()
        )));
    }
    for (k, (e, rows)) in eff.iter().zip(cb.block_rows()).enumerate() {
        if e.inputs != rows {
            return Err(StbcError::Incompatible(format!(
                "block {k} has {rows} rows, sub-channel has {} inputs",
                e.inputs
            )));
        }
    }
    Ok(())
}

/// Index of the codeword minimising `sum_k ||L_k^{-1} (Y_k - sqrt(snr/n_0) G_k X_k)||^2`,
/// `L_k` the Cholesky factor of the noise covariance; ties go to the lowest
/// index.
pub fn ml_decode(received: &[CMat], eff: &[EffectiveChannel], cb: &Codebook, snr: f64) -> Result<usize, StbcError> {
    check_shapes(cb, eff)?;
    Ok(decode_whitened(&whiten(received, eff, snr)?, cb))
}

/// `sqrt(snr / n_0) G X + L W`, `W` white.
fn transmit<R: Rng + ?Sized>(e: &EffectiveChannel, x: &CMat, snr: f64, rng: &mut R) -> Result<CMat, StbcError> {
    let l = e.whitener()?;
    let w = CMat::from_fn(e.gain.nrows(), x.ncols(), |_, _| cn01(rng));
    let amp = Complex64::new((snr / e.inputs as f64).sqrt(), 0.0);
    Ok(&e.gain * x * amp + l * w)
}

/// Codeword error rate at each SNR. One channel draw and one codeword per
/// trial are shared across the grid; noise is drawn per point. The
/// `outage_count` of each estimate counts codeword errors.
pub fn simulate_ser(
    dim: &Dimension,
    scheme: &Scheme,
    cb: &Codebook,
    snr_db: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<OutageEstimate>, StbcError> {
    assert!(trials >= 1, "at least one trial");
    scheme.check(dim)?;
    {
        let mut rng = trial_rng(seed, 0);
        let real = sample_channel(dim, &mut rng);
        check_shapes(cb, &scheme.effective_channels(&real, 1.0)?)?;
    }
    const CHUNK: u64 = 1024;
    let snrs: Vec<f64> = snr_db.iter().map(|db| 10f64.powf(db / 10.0)).collect();
    let errors = (0..trials.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| -> Result<Vec<u64>, StbcError> {
            let mut counts = vec![0u64; snrs.len()];
            for t in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                let mut rng = trial_rng(seed, t);
                let real = sample_channel(dim, &mut rng);
                let sent = rng.random_range(0..cb.len());
                for (count, &snr) in counts.iter_mut().zip(&snrs) {
                    let eff = scheme.effective_channels(&real, snr)?;
                    let received = eff
                        .iter()
                        .zip(&cb.codewords[sent])
                        .map(|(e, x)| transmit(e, x, snr, &mut rng))
                        .collect::<Result<Vec<_>, _>>()?;
                    if decode_whitened(&whiten(&received, &eff, snr)?, cb) != sent {
                        *count += 1;
                    }
                }
            }
            Ok(counts)
        })
        .try_reduce(
            || vec![0u64; snrs.len()],
            |a, b| Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect()),
        )?;
    Ok(snr_db
        .iter()
        .zip(errors)
        .map(|(&db, k)| OutageEstimate::new(db, cb.rate_bits(), trials, k))
        .collect())
}
