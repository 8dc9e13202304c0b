//! Hop matrices and the end-to-end channel of each relaying scheme.
//!
//! Every scheme reduces to a chain `y = H_N W_{N-1} H_{N-1} ... W_1 H_1 x + noise`
//! where `W_i` is the linear map applied by relay layer `i`. The received
//! noise is `sum_j M_j z_j` with `M_N = I` and
//! `M_j = H_N W_{N-1} ... H_{j+1} W_j`, every `z_j` white with unit variance.

use nalgebra::{Cholesky, DMatrix, DVector, QR, SVD};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::SimError;
use crate::dmt::{DecodeSet, Dimension};
use crate::partition::{FlipSchedule, Partition};

pub type CMat = DMatrix<Complex64>;

/// One draw of the hop matrices; `hops[i - 1]` is `H_i`, of shape
/// `n_i x n_{i-1}`.
#[derive(Clone, Debug)]
pub struct ChannelRealization {
    pub hops: Vec<CMat>,
}

/// Circularly-symmetric complex Gaussian entries with unit variance.
pub fn sample_channel<R: Rng + ?Sized>(dim: &Dimension, rng: &mut R) -> ChannelRealization {
    let n = dim.counts();
    let hops = (1..n.len())
        .map(|i| CMat::from_fn(n[i], n[i - 1], |_, _| cn01(rng)))
        .collect();
    ChannelRealization { hops }
}

pub(crate) fn cn01<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `y = sqrt(snr / inputs) * gain * x + w` with `w ~ CN(0, noise_cov)`.
#[derive(Clone, Debug)]
pub struct EffectiveChannel {
    pub gain: CMat,
    pub noise_cov: CMat,
    /// Number of transmit antennas sharing the source power.
    pub inputs: usize,
}

impl EffectiveChannel {
    pub fn mutual_info(&self, snr: f64) -> Result<f64, SimError> {
        mutual_info(self, snr, self.inputs)
    }

    /// Lower Cholesky factor of the noise covariance.
    pub fn whitener(&self) -> Result<CMat, SimError> {
        Cholesky::new(self.noise_cov.clone())
            .map(|c| c.l())
            .ok_or_else(|| SimError::Numerical("noise covariance is not positive definite".into()))
    }
}

/// `log2 det(I + (snr / n0) K_z^{-1} G G^H)`, through the Cholesky factor of
/// `K_z` and then of the whitened Gram matrix.
pub fn mutual_info(eff: &EffectiveChannel, snr: f64, n0: usize) -> Result<f64, SimError> {
    let l = eff.whitener()?;
    let a = l
        .solve_lower_triangular(&eff.gain)
        .ok_or_else(|| SimError::Numerical("singular whitener".into()))?;
    let rows = a.nrows();
    let scale = Complex64::new(snr / n0 as f64, 0.0);
    let m = CMat::identity(rows, rows) + a.clone() * a.adjoint() * scale;
    let chol = Cholesky::new(m).ok_or_else(|| SimError::Numerical("non-positive Gram matrix".into()))?;
    Ok(chol.ln_determinant() / std::f64::consts::LN_2)
}

/// Normalisation gains of one relay layer: `H` maps `n_{i-1}` inputs, each
/// carrying `snr / n_{i-1}`, onto `n_i` antennas that retransmit at
/// `snr / n_i` each.
pub fn af_gains(h: &CMat, snr: f64) -> Vec<f64> {
    let p_in = snr / h.ncols() as f64;
    let p_out = snr / h.nrows() as f64;
    h.row_iter()
        .map(|row| {
            let power: f64 = row.iter().map(|z| z.norm_sqr()).sum();
            (p_out / (p_in * power + 1.0)).sqrt()
        })
        .collect()
}

fn diag(d: &[f64]) -> CMat {
    CMat::from_diagonal(&DVector::from_iterator(d.len(), d.iter().map(|&x| Complex64::new(x, 0.0))))
}

/// End-to-end channel of the chain with relay maps `relays[i - 1] = W_i`.
pub fn relay_chain(hops: &[CMat], relays: &[CMat]) -> EffectiveChannel {
    assert_eq!(relays.len() + 1, hops.len());
    let mut gain = hops[0].clone();
    for (w, h) in relays.iter().zip(&hops[1..]) {
        gain = h * (w * gain);
    }
    let rows = hops.last().unwrap().nrows();
    let mut noise_cov = CMat::identity(rows, rows);
    let mut m = CMat::identity(rows, rows);
    for j in (0..relays.len()).rev() {
        m = m * &hops[j + 1] * &relays[j];
        noise_cov += &m * m.adjoint();
    }
    EffectiveChannel { gain, noise_cov, inputs: hops[0].ncols() }
}

/// Plain AF with per-antenna normalisation, optionally with one sign
/// pattern per relay layer applied after it.
fn af_chain(hops: &[CMat], snr: f64, flips: Option<&[Vec<f64>]>) -> EffectiveChannel {
    let relays: Vec<CMat> = (0..hops.len() - 1)
        .map(|i| {
            let mut d = af_gains(&hops[i], snr);
            if let Some(f) = flips {
                d.iter_mut().zip(&f[i]).for_each(|(x, s)| *x *= s);
            }
            diag(&d)
        })
        .collect();
    relay_chain(hops, &relays)
}

pub fn af_effective(real: &ChannelRealization, snr: f64) -> EffectiveChannel {
    af_chain(&real.hops, snr, None)
}

/// Each relay layer projects onto the span of the signal it receives and
/// forwards that many streams from its first antennas.
pub fn pf_effective(real: &ChannelRealization, snr: f64) -> EffectiveChannel {
    let n = real.hops.len();
    let mut rank = real.hops[0].ncols();
    let mut hops = Vec::with_capacity(n);
    for (i, h) in real.hops.iter().enumerate() {
        let used = h.columns(0, rank).into_owned();
        if i + 1 == n {
            hops.push(used);
        } else if h.nrows() > rank {
            let q = QR::new(used.clone()).q();
            hops.push(q.adjoint() * used);
        } else {
            rank = h.nrows();
            hops.push(used);
        }
    }
    af_chain(&hops, snr, None)
}

/// One channel per flip mode, in mode order.
pub fn ff_effective(real: &ChannelRealization, sched: &FlipSchedule, snr: f64) -> Vec<EffectiveChannel> {
    (1..=sched.modes())
        .map(|k| af_chain(&real.hops, snr, Some(&sched.mode_flips(k))))
        .collect()
}

fn submatrix(h: &CMat, rows: &[usize], cols: &[usize]) -> CMat {
    CMat::from_fn(rows.len(), cols.len(), |r, c| h[(rows[r], cols[c])])
}

/// One channel per path, each using only its own antennas and counts.
pub fn parallel_af_effective(real: &ChannelRealization, p: &Partition, snr: f64) -> Vec<EffectiveChannel> {
    p.paths()
        .iter()
        .map(|path| {
            let s = path.supernodes();
            let hops: Vec<CMat> = (1..s.len())
                .map(|i| submatrix(&real.hops[i - 1], s[i].antennas(), s[i - 1].antennas()))
                .collect();
            af_chain(&hops, snr, None)
        })
        .collect()
}

/// Whether some decoded segment cannot carry `rate`.
pub fn df_outage(real: &ChannelRealization, decode: &DecodeSet, snr: f64, rate: f64) -> Result<bool, SimError> {
    for (from, to) in decode.segments() {
        let eff = af_chain(&real.hops[from..to], snr, None);
        if eff.mutual_info(snr)? < rate {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Relay `i` rotates onto the left singular vectors of `H_i`, normalises
/// each singular direction and transmits along the right singular vectors
/// of `H_{i+1}`, so the chain collapses to a product of singular values.
pub fn svd_align_effective(real: &ChannelRealization, snr: f64) -> Result<EffectiveChannel, SimError> {
    let n = real.hops[0].nrows();
    if real.hops.iter().any(|h| h.nrows() != n || h.ncols() != n) {
        return Err(SimError::Incompatible("SVD alignment needs square hops of one size".into()));
    }
    let svds: Vec<SVD<Complex64, _, _>> = real.hops.iter().map(|h| SVD::new(h.clone(), true, true)).collect();
    let p = snr / n as f64;
    let relays: Vec<CMat> = (0..real.hops.len() - 1)
        .map(|i| {
            let u = svds[i].u.as_ref().unwrap();
            let v_next = svds[i + 1].v_t.as_ref().unwrap().adjoint();
            let d: Vec<f64> = svds[i]
                .singular_values
                .iter()
                .map(|s| (p / (p * s * s + 1.0)).sqrt())
                .collect();
            v_next * diag(&d) * u.adjoint()
        })
        .collect();
    Ok(relay_chain(&real.hops, &relays))
}

/// `H_N prod (F_{i, f_i(k)} H_i)` for every mode `k`, without normalisation.
pub fn flip_products(real: &ChannelRealization, sched: &FlipSchedule) -> Vec<CMat> {
    (1..=sched.modes())
        .map(|k| {
            let relays: Vec<CMat> = sched.mode_flips(k).iter().map(|f| diag(f)).collect();
            relay_chain(&real.hops, &relays).gain
        })
        .collect()
}

/// `H_N prod (J_{i, j_i} H_i)` for every choice of one supernode per relay
/// layer.
pub fn selection_products(real: &ChannelRealization, sched: &FlipSchedule) -> Vec<CMat> {
    let counts = sched.counts();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for &k in &counts {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (1..=k).map(move |j| {
                    let mut t = t.clone();
                    t.push(j);
                    t
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .map(|t| {
            let relays: Vec<CMat> = t
                .iter()
                .enumerate()
                .map(|(i, &j)| diag(&sched.selection_diagonal(i + 1, j)))
                .collect();
            relay_chain(&real.hops, &relays).gain
        })
        .collect()
}
