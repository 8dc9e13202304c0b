//! Command-line front end: `dmt`, `reduce`, `partition` and `simulate`.
//!
//! Exit codes are 0 on success, 2 for usage errors (bad flags, malformed
//! dimensions, incompatible scheme and partition) and 3 for numerical
//! failures during simulation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dmt::{self, DecodeSet, Dimension, DmtCurve, ParallelDmt};
use crate::partition::{
    self, ff_schedule, is_full_diversity, is_independent, max_partition, min_full_div_partition_2hop,
    min_full_div_partition_exhaustive, Partition, PartitionDoc,
};
use crate::reduction;
use crate::sim::{self, estimate_outage_grid, with_workers, OutageEstimate, RatePolicy, Scheme, SimError};
use crate::stbc::{self, Codebook, QamAlphabet, StbcError};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Numerical(m) => CliError::Numerical(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<StbcError> for CliError {
    fn from(e: StbcError) -> Self {
        match e {
            StbcError::Sim(s) => s.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "mhdmt", version, about = "Diversity-multiplexing tradeoff of MIMO multihop relay channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact tradeoff curves as a vertex table.
    Dmt(DmtArgs),
    /// Channel order, minimal forms and antenna reduction.
    Reduce(ReduceArgs),
    /// Parallel partitions as JSON.
    Partition(PartitionArgs),
    /// Monte-Carlo outage or codeword error rate.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CurveKind {
    Rp,
    Cutset,
    Df,
    Serial,
    FfBound,
    ParallelAf,
}

#[derive(Args, Debug)]
struct DmtArgs {
    /// Antenna counts, source first, e.g. 2,4,3.
    #[arg(long, value_parser = parse_dim)]
    dim: Dimension,
    /// Curves to emit; repeat or comma-separate.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "rp")]
    curve: Vec<CurveKind>,
    /// Decoding layers for the serial curve, e.g. 2,3.
    #[arg(long, value_delimiter = ',')]
    decode: Option<Vec<usize>>,
    /// Flip mode count for ff-bound; defaults to the minimum two-hop partition size.
    #[arg(long)]
    modes: Option<usize>,
    /// Path dimensions for parallel-af separated by ';', e.g. "2,2,3;2,2,3".
    /// Defaults to the maximum single-antenna partition.
    #[arg(long)]
    paths: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[arg(long, value_parser = parse_dim)]
    dim: Dimension,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("kind").required(true)))]
struct PartitionArgs {
    #[arg(long, value_parser = parse_dim)]
    dim: Dimension,
    /// d_max edge-disjoint single-antenna paths.
    #[arg(long, group = "kind")]
    max: bool,
    /// Smallest full-diversity partition of a two-hop channel.
    #[arg(long, group = "kind")]
    min_full_div: bool,
    /// Smallest full-diversity partition by exhaustive search (small channels only).
    #[arg(long, group = "kind")]
    exhaustive_min: bool,
    /// Selection partition splitting one relay layer into single antennas.
    #[arg(long, group = "kind")]
    selection: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeArg {
    Af,
    Pf,
    Df,
    ParallelAf,
    Ff,
    SvdAlign,
    CodedAf,
    CodedFf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeArg {
    Alamouti,
    Golden0,
    Golden1,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Re-run the configuration recorded in a manifest.
    #[arg(long, conflicts_with_all = ["dim", "scheme"])]
    from_manifest: Option<PathBuf>,
    #[arg(long, value_parser = parse_dim, required_unless_present = "from_manifest")]
    dim: Option<Dimension>,
    #[arg(long, value_enum, required_unless_present = "from_manifest")]
    scheme: Option<SchemeArg>,
    /// Fixed rate in bits per channel use.
    #[arg(long, conflicts_with = "multiplexing")]
    rate: Option<f64>,
    /// Multiplexing gain r: the rate is r log2 SNR.
    #[arg(long)]
    multiplexing: Option<f64>,
    /// SNR grid in dB as start:step:stop, or a single value.
    #[arg(long, value_parser = parse_grid_arg, default_value = "0:2:30")]
    snr: Grid,
    /// Trials per point; scientific notation such as 1e6 is accepted.
    #[arg(long, value_parser = parse_trials, default_value = "100000")]
    trials: u64,
    #[arg(long, env = "MHDMT_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Decoding layers for df, e.g. 2,3.
    #[arg(long, value_delimiter = ',')]
    decode: Option<Vec<usize>>,
    /// Partition JSON for parallel-af, ff and coded-ff.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Space-time code for coded schemes.
    #[arg(long, value_enum)]
    code: Option<CodeArg>,
    #[arg(long, default_value_t = 4)]
    qam: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Everything that determines a simulation's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dimension: Dimension,
    pub scheme: SchemeArg,
    pub rate: RatePolicy,
    pub snr_db: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub decode: Option<Vec<usize>>,
    pub partition: Option<PartitionDoc>,
    pub code: Option<CodeArg>,
    pub qam: usize,
    pub format: Format,
}

impl SimConfig {
    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("configs always serialize");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config: SimConfig,
    pub config_hash: String,
    pub workers: usize,
}

pub fn parse_dim(s: &str) -> Result<Dimension, String> {
    s.parse::<Dimension>().map_err(|e| e.to_string())
}

/// `start:step:stop` inclusive of `stop` (up to rounding), or one value.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [v] if v.is_finite() => Ok(vec![v]),
        [start, step, stop] => {
            if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
                return Err("grid needs start <= stop and a positive step".into());
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|i| start + step * i as f64).collect())
        }
        _ => Err(format!("expected start:step:stop, got {s:?}")),
    }
}

#[derive(Clone, Debug)]
struct Grid(Vec<f64>);

fn parse_grid_arg(s: &str) -> Result<Grid, String> {
    parse_grid(s).map(Grid)
}

pub fn parse_trials(s: &str) -> Result<u64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{s:?}: {e}"))?;
    if v < 1.0 || v.fract() != 0.0 || v > 1e15 {
        return Err(format!("trials must be a positive integer, got {s}"));
    }
    Ok(v as u64)
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Dmt(a) => cmd_dmt(a, stdout),
        Command::Reduce(a) => cmd_reduce(a, stdout),
        Command::Partition(a) => cmd_partition(a, stdout),
        Command::Simulate(a) => cmd_simulate(a, stdout, stderr),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.code()
        }
    }
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(usage),
    }
}

fn default_modes(dim: &Dimension) -> Result<usize, CliError> {
    if dim.hops() == 2 {
        let n = dim.counts();
        Ok(min_full_div_partition_2hop(n[0], n[1], n[2]).0)
    } else {
        Err(usage("--modes is required unless the channel has two hops"))
    }
}

fn cmd_dmt(a: DmtArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dim = &a.dim;
    let mut tables: Vec<(&'static str, DmtCurve)> = Vec::new();
    for kind in &a.curve {
        let (name, curve) = match kind {
            CurveKind::Rp => ("rp", dmt::dmt_rp(dim)),
            CurveKind::Cutset => ("cutset", dmt::cutset_bound(dim).curve),
            CurveKind::Df => ("df", dmt::dmt_df(dim)),
            CurveKind::Serial => {
                let decode = a.decode.clone().ok_or_else(|| usage("--curve serial needs --decode"))?;
                let set = DecodeSet::new(decode, dim.hops()).map_err(usage)?;
                ("serial", dmt::dmt_serial_partition(dim, &set).map_err(usage)?)
            }
            CurveKind::FfBound => {
                let k = match a.modes {
                    Some(k) => k,
                    None => default_modes(dim)?,
                };
                ("ff-bound", dmt::dmt_ff_lower_bound(dim, k).map_err(usage)?)
            }
            CurveKind::ParallelAf => {
                let paths: Vec<Dimension> = match &a.paths {
                    Some(s) => s.split(';').map(parse_dim).collect::<Result<_, _>>().map_err(usage)?,
                    None => max_partition(dim).path_dimensions(),
                };
                let curve = match dmt::dmt_parallel_af(&paths).map_err(usage)? {
                    ParallelDmt::Curve(c) => c,
                    ParallelDmt::DiversityOnly(d) => {
                        DmtCurve::from_vertices(vec![dmt::Vertex::int(0, d as i64)])
                    }
                };
                ("parallel-af", curve)
            }
        };
        tables.push((name, curve));
    }
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("curve,r,d\n");
            for (name, c) in &tables {
                for v in c.vertices() {
                    s.push_str(&format!("{name},{},{}\n", v.r, v.d));
                }
            }
            s
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = tables
                .iter()
                .map(|(name, c)| {
                    let vs = c
                        .vertices()
                        .iter()
                        .map(|v| serde_json::json!({ "r": v.r.to_string(), "d": v.d.to_string() }))
                        .collect();
                    (name.to_string(), serde_json::Value::Array(vs))
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "dimension": dim, "curves": map })).unwrap() + "\n"
        }
    };
    emit(&a.out, stdout, &text)
}

fn cmd_reduce(a: ReduceArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let r = reduction::analyze(&a.dim);
    let practical = reduction::practical_vertical_reduction(&a.dim);
    let text = match a.format {
        Format::Csv => {
            let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            format!(
                "order: {}\nminimal_form: {}\nminimal_vertical_form: {}\nn_bar: {}\npractical_vertical_reduction: {}\np: {}\n",
                r.order,
                r.minimal_form,
                r.minimal_vertical_form,
                r.n_bar,
                practical,
                join(&r.p)
            )
        }
        Format::Json => {
            let mut v = serde_json::to_value(&r).unwrap();
            v["practical_vertical_reduction"] = serde_json::to_value(&practical).unwrap();
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
    };
    emit(&a.out, stdout, &text)
}

fn cmd_partition(a: PartitionArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let dim = &a.dim;
    let mut extra = serde_json::Map::new();
    let p = if a.max {
        max_partition(dim)
    } else if a.min_full_div {
        if dim.hops() != 2 {
            return Err(usage("--min-full-div needs a two-hop channel; try --exhaustive-min"));
        }
        let n = dim.counts();
        min_full_div_partition_2hop(n[0], n[1], n[2]).1
    } else if a.exhaustive_min {
        min_full_div_partition_exhaustive(dim).map_err(usage)?.1
    } else {
        let layer = a.selection.expect("clap enforces one partition kind");
        let d = partition::nonind_partition_diversity(dim, layer).map_err(usage)?;
        extra.insert("diversity".into(), d.into());
        partition::selection_partition(dim, layer).map_err(usage)?
    };
    let doc = PartitionDoc::from_partition(dim, &p).map_err(usage)?;
    let independent = is_independent(dim, &p).map_err(usage)?;
    let mut v = serde_json::to_value(&doc).unwrap();
    v["size"] = p.size().into();
    v["independent"] = independent.into();
    if independent {
        v["full_diversity"] = is_full_diversity(dim, &p).map_err(usage)?.into();
        v["diversity_sum"] = p.diversity_sum().into();
    }
    for (k, val) in extra {
        v[k] = val;
    }
    emit(&a.out, stdout, &(serde_json::to_string_pretty(&v).unwrap() + "\n"))
}

fn load_partition(path: &Path, dim: &Dimension) -> Result<PartitionDoc, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = PartitionDoc::from_json(&text).map_err(usage)?;
    if &doc.dimension != dim {
        return Err(usage(format!("partition is for {}, channel is {dim}", doc.dimension)));
    }
    doc.to_partition().map_err(usage)?;
    Ok(doc)
}

fn build_config(a: &SimulateArgs) -> Result<SimConfig, CliError> {
    if let Some(path) = &a.from_manifest {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let m: Manifest = serde_json::from_str(&text).map_err(usage)?;
        return Ok(m.config);
    }
    let dim = a.dim.clone().expect("clap requires --dim");
    let scheme = a.scheme.expect("clap requires --scheme");
    let coded = matches!(scheme, SchemeArg::CodedAf | SchemeArg::CodedFf);
    let rate = match (a.rate, a.multiplexing) {
        (Some(r), None) => RatePolicy::Fixed(r),
        (None, Some(m)) => RatePolicy::Multiplexing(m),
        (None, None) if coded => RatePolicy::Fixed(0.0),
        _ => return Err(usage("give --rate or --multiplexing")),
    };
    if a.snr.0.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("SNR grid must be strictly increasing"));
    }
    let needs_partition = matches!(scheme, SchemeArg::ParallelAf | SchemeArg::Ff | SchemeArg::CodedFf);
    let partition = match (&a.partition, needs_partition) {
        (Some(path), true) => Some(load_partition(path, &dim)?),
        (Some(_), false) => return Err(usage("--partition only applies to parallel-af, ff and coded-ff")),
        (None, true) => {
            let p = if scheme == SchemeArg::ParallelAf {
                max_partition(&dim)
            } else if dim.hops() == 2 {
                let n = dim.counts();
                min_full_div_partition_2hop(n[0], n[1], n[2]).1
            } else {
                return Err(usage("ff without --partition needs a two-hop channel"));
            };
            Some(PartitionDoc::from_partition(&dim, &p).map_err(usage)?)
        }
        (None, false) => None,
    };
    if scheme == SchemeArg::Df && a.decode.is_none() {
        return Err(usage("df needs --decode"));
    }
    if scheme != SchemeArg::Df && a.decode.is_some() {
        return Err(usage("--decode only applies to df"));
    }
    let code = match (scheme, a.code) {
        (SchemeArg::CodedAf, c) => Some(c.unwrap_or(CodeArg::Alamouti)),
        (SchemeArg::CodedFf, c) => Some(c.unwrap_or(CodeArg::Golden1)),
        (_, None) => None,
        (_, Some(_)) => return Err(usage("--code only applies to coded schemes")),
    };
    Ok(SimConfig {
        dimension: dim,
        scheme,
        rate,
        snr_db: a.snr.0.clone(),
        trials: a.trials,
        seed: a.seed,
        decode: a.decode.clone(),
        partition,
        code,
        qam: a.qam,
        format: a.format,
    })
}

fn build_scheme(c: &SimConfig) -> Result<Scheme, CliError> {
    let dim = &c.dimension;
    let partition = || -> Result<Partition, CliError> {
        c.partition.as_ref().expect("config carries a partition").to_partition().map_err(usage)
    };
    Ok(match c.scheme {
        SchemeArg::Af | SchemeArg::CodedAf => Scheme::Af,
        SchemeArg::Pf => Scheme::Pf,
        SchemeArg::SvdAlign => Scheme::SvdAlign,
        SchemeArg::Df => {
            let d = c.decode.clone().ok_or_else(|| usage("df needs --decode"))?;
            Scheme::Df(DecodeSet::new(d, dim.hops()).map_err(usage)?)
        }
        SchemeArg::ParallelAf => Scheme::ParallelAf(partition()?),
        SchemeArg::Ff | SchemeArg::CodedFf => Scheme::Ff(ff_schedule(dim, &partition()?).map_err(usage)?),
    })
}

fn build_code(c: &SimConfig) -> Result<Option<Codebook>, CliError> {
    let Some(code) = c.code else { return Ok(None) };
    let q = QamAlphabet::new(c.qam)?;
    Ok(Some(match code {
        CodeArg::Alamouti => stbc::alamouti(&q),
        CodeArg::Golden0 => stbc::golden(&q, 0)?,
        CodeArg::Golden1 => stbc::golden(&q, 1)?,
    }))
}

fn run_config(c: &SimConfig, workers: usize) -> Result<Vec<OutageEstimate>, CliError> {
    let scheme = build_scheme(c)?;
    let code = build_code(c)?;
    with_workers(workers, || match &code {
        Some(cb) => Ok(stbc::simulate_ser(&c.dimension, &scheme, cb, &c.snr_db, c.trials, c.seed)?),
        None => Ok(estimate_outage_grid(&c.dimension, &scheme, c.rate, &c.snr_db, c.trials, c.seed)?),
    })
}

fn cmd_simulate(a: SimulateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let config = build_config(&a)?;
    let points = run_config(&config, a.workers)?;
    let body = match config.format {
        Format::Csv => {
            let mut buf = Vec::new();
            sim::write_csv(&mut buf, &points).map_err(usage)?;
            String::from_utf8(buf).expect("CSV is ASCII")
        }
        Format::Json => serde_json::to_string_pretty(&points).unwrap() + "\n",
    };
    let manifest = Manifest {
        tool: "mhdmt".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config_hash: config.hash(),
        config,
        workers: a.workers,
    };
    let manifest = serde_json::to_string_pretty(&manifest).unwrap() + "\n";
    emit(&a.out, stdout, &body)?;
    match &a.out {
        Some(p) => {
            let mut name = p.as_os_str().to_owned();
            name.push(".manifest.json");
            fs::write(&name, manifest).map_err(|e| usage(format!("cannot write manifest: {e}")))
        }
        None => stderr.write_all(manifest.as_bytes()).map_err(usage),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("mhdmt").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grids_and_trials() {
        assert_eq!(parse_grid("10:2:16").unwrap(), vec![10.0, 12.0, 14.0, 16.0]);
        assert_eq!(parse_grid("0:0.5:1").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("7").unwrap(), vec![7.0]);
        assert!(parse_grid("5:0:10").is_err());
        assert!(parse_grid("10:1:5").is_err());
        assert_eq!(parse_trials("1e6").unwrap(), 1_000_000);
        assert!(parse_trials("0").is_err());
        assert!(parse_trials("2.5").is_err());
    }

    #[test]
    fn dmt_table() {
        let (code, out, _) = run_str(&["dmt", "--dim", "2,2,2", "--curve", "rp"]);
        assert_eq!(code, 0);
        assert_eq!(out, "curve,r,d\nrp,0,3\nrp,1,1\nrp,2,0\n");
        let (code, _, err) = run_str(&["dmt", "--dim", "2,x,2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("dim"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["simulate", "--dim", "2,2,2,2", "--scheme", "ff", "--rate", "2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["simulate", "--dim", "2,2,2", "--scheme", "df", "--rate", "2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["simulate", "--dim", "2,2,2", "--scheme", "af"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
