//! Small space-time block codes over QAM: Alamouti, the Golden code and
//! its two-block parallel version, plus a row-splitting wrapper.
//!
//! Codewords are built exactly over `Z[zeta_8][theta]` from Gaussian-integer
//! QAM symbols. Every code here is linear over `Z[i]`, so codeword
//! differences are codewords over the difference alphabet, and the
//! non-vanishing determinant check enumerates differences directly.

mod decode;
mod ring;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use decode::{ml_decode, simulate_ser};
pub use ring::{GaussInt, GoldenZ8, Zeta8};

use crate::sim::{CMat, SimError};

/// Upper limit on determinant evaluations in one search.
pub const NVD_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StbcError {
    #[error("unsupported QAM order {0} (4 or 16)")]
    UnsupportedOrder(usize),
    #[error("unsupported parallel Golden index m = {0} (0 or 1)")]
    UnsupportedM(u8),
    #[error("row split {0:?} does not cover the two rows of a Golden codeword")]
    BadRowSplit(Vec<usize>),
    #[error("search needs {needed} evaluations, cap is {cap}")]
    SearchTooLarge { needed: u64, cap: u64 },
    #[error("incompatible code and channel: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QamAlphabet {
    order: usize,
    points: Vec<GaussInt>,
}

impl QamAlphabet {
    /// Odd-integer square QAM: `{±1±i}` or `{±1,±3}^2`.
    pub fn new(order: usize) -> Result<Self, StbcError> {
        let levels: Vec<i64> = match order {
            4 => vec![-1, 1],
            16 => vec![-3, -1, 1, 3],
            _ => return Err(StbcError::UnsupportedOrder(order)),
        };
        let points = levels
            .iter()
            .flat_map(|&re| levels.iter().map(move |&im| GaussInt::new(re, im)))
            .collect();
        Ok(QamAlphabet { order, points })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn points(&self) -> &[GaussInt] {
        &self.points
    }

    /// Mean `|s|^2`.
    pub fn energy(&self) -> f64 {
        self.points.iter().map(|p| p.norm_sqr() as f64).sum::<f64>() / self.points.len() as f64
    }

    /// Difference set used for determinant searches: `{-2,0,2}^2` for 4-QAM
    /// and the restriction `{-4,...,4}^2` (step 2) for 16-QAM, which keeps a
    /// four-symbol search under [`NVD_CAP`].
    pub fn differences(&self) -> Vec<GaussInt> {
        let reach = if self.order == 4 { 2 } else { 4 };
        let steps: Vec<i64> = (-reach..=reach).step_by(2).collect();
        steps
            .iter()
            .flat_map(|&re| steps.iter().map(move |&im| GaussInt::new(re, im)))
            .collect()
    }

    /// Every difference `s - s'` of two points.
    pub fn full_differences(&self) -> Vec<GaussInt> {
        let mut d: Vec<GaussInt> = self
            .points
            .iter()
            .flat_map(|a| self.points.iter().map(move |b| a - b))
            .collect();
        d.sort_by_key(|z| (z.re, z.im));
        d.dedup();
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CodeKind {
    Alamouti,
    /// `m = 0`: the Golden code; `m = 1`: two blocks `(X, tau(X))` with
    /// `gamma = zeta_8`.
    Golden { m: u8 },
    /// Rows of a Golden codeword dealt out to sub-channels, `rows[k]` to
    /// block `k`.
    BlockStacked { rows: Vec<usize> },
}

pub type ExactBlock = Vec<Vec<GoldenZ8>>;

impl CodeKind {
    fn symbols(&self) -> usize {
        match self {
            CodeKind::Alamouti => 2,
            _ => 4,
        }
    }

    /// Common factor applied to every exact entry.
    fn scale(&self) -> f64 {
        match self {
            CodeKind::Alamouti => 1.0,
            _ => 1.0 / 5f64.sqrt(),
        }
    }

    /// Blocks of the codeword carrying `s`, exactly.
    pub fn encode(&self, s: &[GaussInt]) -> Vec<ExactBlock> {
        let g = |z: GaussInt| GoldenZ8::scalar(Zeta8::from_gauss(z));
        match self {
            CodeKind::Alamouti => {
                let (s1, s2) = (g(s[0]), g(s[1]));
                vec![vec![vec![s1, -s2.conj()], vec![s2, s1.conj()]]]
            }
            CodeKind::Golden { m } => {
                let gamma = if *m == 0 { Zeta8::I } else { Zeta8::ZETA };
                let x = golden_block(s, gamma);
                if *m == 0 {
                    vec![x]
                } else {
                    let t = x.iter().map(|r| r.iter().map(|e| e.tau()).collect()).collect();
                    vec![x, t]
                }
            }
            CodeKind::BlockStacked { rows } => {
                let x = golden_block(s, Zeta8::I);
                let mut start = 0;
                rows.iter()
                    .map(|&r| {
                        let b = x[start..start + r].to_vec();
                        start += r;
                        b
                    })
                    .collect()
            }
        }
    }
}

/// `[[alpha(a + b theta), alpha(c + d theta)], [gamma sigma(alpha(c + d theta)), sigma(alpha(a + b theta))]]`
/// with `alpha = 1 + i - i theta`.
fn golden_block(s: &[GaussInt], gamma: Zeta8) -> ExactBlock {
    let alpha = GoldenZ8::new(Zeta8([1, 0, 1, 0]), Zeta8([0, 0, -1, 0]));
    let pair = |a: GaussInt, b: GaussInt| alpha * GoldenZ8::new(Zeta8::from_gauss(a), Zeta8::from_gauss(b));
    let u = pair(s[0], s[1]);
    let v = pair(s[2], s[3]);
    vec![vec![u, v], vec![GoldenZ8::scalar(gamma) * v.sigma(), u.sigma()]]
}

fn to_float(block: &ExactBlock, scale: f64) -> CMat {
    DMatrix::from_fn(block.len(), block[0].len(), |r, c| block[r][c].to_c64() * scale)
}

#[derive(Clone, Debug)]
pub struct Codebook {
    pub kind: CodeKind,
    pub alphabet: QamAlphabet,
    /// Info-symbol tuple of each codeword.
    pub symbols: Vec<Vec<GaussInt>>,
    /// Codewords with the structural scale only, for determinant checks.
    pub lattice: Vec<Vec<CMat>>,
    /// Codewords normalised so that block `k` has mean energy `rows_k * T`.
    pub codewords: Vec<Vec<CMat>>,
    pub energy_norm: f64,
}

impl Codebook {
    pub fn new(kind: CodeKind, alphabet: &QamAlphabet) -> Result<Self, StbcError> {
        match &kind {
            CodeKind::Golden { m } if *m > 1 => return Err(StbcError::UnsupportedM(*m)),
            CodeKind::BlockStacked { rows } if rows.iter().sum::<usize>() != 2 || rows.contains(&0) => {
                return Err(StbcError::BadRowSplit(rows.clone()))
            }
            _ => {}
        }
        let mut symbols: Vec<Vec<GaussInt>> = vec![vec![]];
        for _ in 0..kind.symbols() {
            symbols = symbols
                .into_iter()
                .flat_map(|t| {
                    alphabet.points().iter().map(move |&p| {
                        let mut t = t.clone();
                        t.push(p);
                        t
                    })
                })
                .collect();
        }
        let scale = kind.scale();
        let lattice: Vec<Vec<CMat>> = symbols
            .iter()
            .map(|s| kind.encode(s).iter().map(|b| to_float(b, scale)).collect())
            .collect();
        let target: f64 = lattice[0].iter().map(|b| (b.nrows() * b.ncols()) as f64).sum();
        let mean: f64 = lattice
            .iter()
            .map(|cw| cw.iter().map(|b| b.norm_squared()).sum::<f64>())
            .sum::<f64>()
            / lattice.len() as f64;
        let energy_norm = (target / mean).sqrt();
        let codewords = lattice
            .iter()
            .map(|cw| cw.iter().map(|b| b * Complex64::new(energy_norm, 0.0)).collect())
            .collect();
        Ok(Codebook { kind, alphabet: alphabet.clone(), symbols, lattice, codewords, energy_norm })
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Number of blocks `K`.
    pub fn blocks(&self) -> usize {
        self.codewords[0].len()
    }

    /// Transmit antennas of each block.
    pub fn block_rows(&self) -> Vec<usize> {
        self.codewords[0].iter().map(|b| b.nrows()).collect()
    }

    /// Info symbols per channel use, counting every block's time slots.
    pub fn rate(&self) -> f64 {
        let uses: usize = self.codewords[0].iter().map(|b| b.ncols()).sum();
        self.kind.symbols() as f64 / uses as f64
    }

    /// Bits per channel use.
    pub fn rate_bits(&self) -> f64 {
        self.rate() * (self.alphabet.order() as f64).log2()
    }

    pub fn to_json(&self) -> String {
        let doc = CodebookDoc {
            kind: self.kind.clone(),
            qam_order: self.alphabet.order(),
            basis: "entries are p + q*theta, p and q in Z[zeta8] on the power basis (1, zeta8, zeta8^2, zeta8^3); theta^2 = theta + 1".into(),
            scale: self.kind.scale(),
            energy_norm: self.energy_norm,
            codewords: self
                .symbols
                .iter()
                .map(|s| CodewordDoc {
                    symbols: s.iter().map(|z| [z.re, z.im]).collect(),
                    blocks: self.kind.encode(s),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("codebooks always serialize")
    }
}

#[derive(Serialize, Deserialize)]
pub struct CodebookDoc {
    pub kind: CodeKind,
    pub qam_order: usize,
    pub basis: String,
    pub scale: f64,
    pub energy_norm: f64,
    pub codewords: Vec<CodewordDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct CodewordDoc {
    pub symbols: Vec<[i64; 2]>,
    pub blocks: Vec<ExactBlock>,
}

pub fn alamouti(q: &QamAlphabet) -> Codebook {
    Codebook::new(CodeKind::Alamouti, q).expect("Alamouti is always constructible")
}

pub fn golden(q: &QamAlphabet, m: u8) -> Result<Codebook, StbcError> {
    Codebook::new(CodeKind::Golden { m }, q)
}

pub fn block_stacked(q: &QamAlphabet, rows: Vec<usize>) -> Result<Codebook, StbcError> {
    Codebook::new(CodeKind::BlockStacked { rows }, q)
}

#[derive(Clone, Debug, PartialEq)]
pub struct NvdReport {
    /// `min prod_k det(dX_k dX_k^H)` with the structural scale applied.
    pub min: f64,
    /// The same minimum before scaling, exactly, for codes whose blocks
    /// are square.
    pub exact_min: Option<i128>,
    pub argmin: Vec<GaussInt>,
    pub evaluations: u64,
}

fn gram_det(b: &CMat) -> f64 {
    (b * b.adjoint()).determinant().re
}

/// Exact `prod_k |det dX_k|^2` for square blocks; an integer for every code
/// built here.
fn exact_det_product(blocks: &[ExactBlock]) -> Option<i128> {
    let mut prod = Zeta8::ONE;
    for b in blocks {
        if b.len() != 2 || b[0].len() != 2 {
            return None;
        }
        let det = (b[0][0] * b[1][1] - b[0][1] * b[1][0]).as_zeta8()?;
        prod = prod * det * det.conj();
    }
    prod.as_integer().map(i128::from)
}

/// Minimum determinant product over every non-zero difference tuple drawn
/// from `diffs`.
pub fn verify_nvd(cb: &Codebook, diffs: &[GaussInt]) -> Result<NvdReport, StbcError> {
    let s = cb.kind.symbols() as u32;
    let needed = (diffs.len() as u64).pow(s) - 1;
    if needed > NVD_CAP {
        return Err(StbcError::SearchTooLarge { needed, cap: NVD_CAP });
    }
    let scale = cb.kind.scale();
    let mut best: Option<NvdReport> = None;
    let mut idx = vec![0usize; s as usize];
    let zero = diffs.iter().position(|z| *z == GaussInt::new(0, 0));
    let mut evaluations = 0;
    loop {
        let tuple: Vec<GaussInt> = idx.iter().map(|&i| diffs[i]).collect();
        if !idx.iter().all(|&i| Some(i) == zero) {
            evaluations += 1;
            let blocks = cb.kind.encode(&tuple);
            let exact = exact_det_product(&blocks);
            let float: f64 = blocks.iter().map(|b| gram_det(&to_float(b, scale))).product();
            let better = match &best {
                None => true,
                Some(b) => match (exact, b.exact_min) {
                    (Some(e), Some(m)) => e < m,
                    _ => float < b.min,
                },
            };
            if better {
                best = Some(NvdReport { min: float, exact_min: exact, argmin: tuple, evaluations: 0 });
            }
        }
        // odometer over the tuple indices
        let mut pos = 0;
        while pos < idx.len() {
            idx[pos] += 1;
            if idx[pos] < diffs.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == idx.len() {
            break;
        }
    }
    let mut report = best.expect("at least one non-zero difference");
    report.evaluations = evaluations;
    Ok(report)
}

/// Minimum over all pairs of distinct codewords, for codes that are not
/// known to be linear.
pub fn verify_nvd_pairs(cb: &Codebook) -> Result<f64, StbcError> {
    let n = cb.lattice.len() as u64;
    let needed = n * (n - 1) / 2;
    if needed > NVD_CAP {
        return Err(StbcError::SearchTooLarge { needed, cap: NVD_CAP });
    }
    let mut min = f64::INFINITY;
    for (i, a) in cb.lattice.iter().enumerate() {
        for b in &cb.lattice[i + 1..] {
            let v: f64 = a.iter().zip(b).map(|(x, y)| gram_det(&(x - y))).product();
            min = min.min(v);
        }
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabets() {
        let q4 = QamAlphabet::new(4).unwrap();
        assert_eq!(q4.points().len(), 4);
        assert_eq!(q4.energy(), 2.0);
        assert_eq!(q4.differences().len(), 9);
        assert_eq!(q4.full_differences(), q4.differences());
        let q16 = QamAlphabet::new(16).unwrap();
        assert_eq!(q16.energy(), 10.0);
        assert_eq!(q16.differences().len(), 25);
        assert_eq!(q16.full_differences().len(), 49);
        assert!(QamAlphabet::new(8).is_err());
    }

    #[test]
    fn alamouti_structure() {
        let cb = alamouti(&QamAlphabet::new(4).unwrap());
        assert_eq!(cb.len(), 16);
        for (s, cw) in cb.symbols.iter().zip(&cb.lattice) {
            let x = &cw[0];
            let e = (s[0].norm_sqr() + s[1].norm_sqr()) as f64;
            let g = x.adjoint() * x;
            assert!((g - CMat::identity(2, 2) * Complex64::new(e, 0.0)).norm() < 1e-12);
        }
        assert!(verify_nvd(&cb, &cb.alphabet.differences()).unwrap().min > 0.0);
    }

    #[test]
    fn golden_sizes_and_energy() {
        let q4 = QamAlphabet::new(4).unwrap();
        for m in [0, 1] {
            let cb = golden(&q4, m).unwrap();
            assert_eq!(cb.len(), 256);
            assert_eq!(cb.blocks(), usize::from(m) + 1);
            let energies: Vec<f64> = cb.codewords.iter().map(|cw| cw.iter().map(|b| b.norm_squared()).sum()).collect();
            let want = 4.0 * cb.blocks() as f64;
            assert!(energies.iter().all(|e| (e - want).abs() < 1e-9), "m = {m}");
        }
        assert!(matches!(golden(&q4, 2), Err(StbcError::UnsupportedM(2))));
    }

    #[test]
    fn golden_determinant_is_exact() {
        let cb = golden(&QamAlphabet::new(4).unwrap(), 0).unwrap();
        let r = verify_nvd(&cb, &cb.alphabet.differences()).unwrap();
        assert_eq!(r.evaluations, 9u64.pow(4) - 1);
        let e = r.exact_min.unwrap();
        assert!((r.min - e as f64 / 25.0).abs() < 1e-9 * r.min);
    }

    #[test]
    fn parallel_golden_blocks_are_conjugate() {
        let cb = golden(&QamAlphabet::new(4).unwrap(), 1).unwrap();
        let s = [GaussInt::new(1, -1), GaussInt::new(-1, -1), GaussInt::new(1, 1), GaussInt::new(-1, 1)];
        let b = cb.kind.encode(&s);
        assert_eq!(b[1][1][0], b[0][1][0].tau());
        // (2 + i)^2 (2 - i)^2 |q1^2 - i q2^2|^2 with q = a^2 + ab - b^2
        let q = |a: GaussInt, b: GaussInt| a * a + a * b - b * b;
        let (q1, q2) = (q(s[0], s[1]), q(s[2], s[3]));
        let inner = q1 * q1 - GaussInt::new(0, 1) * q2 * q2;
        assert_eq!(exact_det_product(&b), Some(25 * i128::from(inner.norm_sqr())));
    }

    #[test]
    fn block_stacked_is_positive() {
        let q4 = QamAlphabet::new(4).unwrap();
        let cb = block_stacked(&q4, vec![1, 1]).unwrap();
        assert_eq!(cb.block_rows(), vec![1, 1]);
        let r = verify_nvd(&cb, &q4.differences()).unwrap();
        assert!(r.min > 0.0 && r.exact_min.is_none());
        assert!(block_stacked(&q4, vec![2, 1]).is_err());
    }

    #[test]
    fn pairs_agree_with_differences() {
        let q4 = QamAlphabet::new(4).unwrap();
        for cb in [alamouti(&q4), golden(&q4, 0).unwrap()] {
            let pairs = verify_nvd_pairs(&cb).unwrap();
            let diffs = verify_nvd(&cb, &q4.differences()).unwrap().min;
            assert!((pairs - diffs).abs() < 1e-9 * diffs);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let q16 = QamAlphabet::new(16).unwrap();
        let cb = golden(&QamAlphabet::new(4).unwrap(), 0).unwrap();
        assert!(matches!(
            verify_nvd(&cb, &q16.full_differences()),
            Err(StbcError::SearchTooLarge { needed, .. }) if needed == 49u64.pow(4) - 1
        ));
    }

    #[test]
    fn json_export() {
        let cb = alamouti(&QamAlphabet::new(4).unwrap());
        let v: serde_json::Value = serde_json::from_str(&cb.to_json()).unwrap();
        assert_eq!(v["codewords"].as_array().unwrap().len(), 16);
        assert_eq!(v["codewords"][0]["symbols"][0], serde_json::json!([-1, -1]));
    }
}
