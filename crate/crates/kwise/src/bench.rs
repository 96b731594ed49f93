//! Experiment grid over Mallows profiles: running times, consensus counts
//! and component sizes per `(m, k, phi, mode)` cell.

use std::io::Write;
use std::time::{Duration, Instant};

use kwise_core::majority::{solve_preprocessed_with, DigraphOptions, PreprocessOptions};
use kwise_core::sampling::{mallows_sample, MallowsParams, RNG_ALGORITHM};
use kwise_core::solver::{brute_force_consensus, enumerate_consensus_with, ConsensusResult, DEFAULT_ENUMERATION_LIMIT};
use kwise_core::{Error as CoreError, Profile, Ranking};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::AppError;

pub const CSV_HEADER: [&str; 9] =
    ["m", "k", "phi", "mode", "avg_ms", "max_ms", "min_ms", "avg_consensus", "avg_largest_scc"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Brute,
    Dp,
    Pre,
    PreRefined,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Brute => "brute",
            Mode::Dp => "dp",
            Mode::Pre => "pre",
            Mode::PreRefined => "pre-refined",
        }
    }
}

/// A `k` value, possibly relative to the number of candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KSpec {
    Fixed(usize),
    /// `k = m`.
    All,
}

impl KSpec {
    pub fn resolve(self, m: usize) -> usize {
        match self {
            KSpec::Fixed(k) => k,
            KSpec::All => m,
        }
    }
}

impl std::str::FromStr for KSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "m" => Ok(KSpec::All),
            t => t.parse().map(KSpec::Fixed).map_err(|_| format!("`{t}` is neither an integer nor `m`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub ms: Vec<usize>,
    pub ks: Vec<KSpec>,
    pub phis: Vec<f64>,
    pub n: usize,
    pub instances: usize,
    pub seed: u64,
    pub modes: Vec<Mode>,
    pub timeout: Option<Duration>,
    pub enumeration_limit: usize,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Let the preprocessing modes build digraphs for `k >= 4`.
    pub force_exponential: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            ms: vec![6, 10, 14],
            ks: vec![KSpec::Fixed(2), KSpec::Fixed(3), KSpec::All],
            phis: vec![0.5, 0.8, 0.85, 0.9, 0.95, 1.0],
            n: 50,
            instances: 50,
            seed: 0,
            modes: vec![Mode::Dp],
            timeout: None,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            threads: None,
            force_exponential: false,
        }
    }
}

impl ExperimentConfig {
    fn validate(&self) -> Result<(), AppError> {
        let usage = |s: &str| Err(AppError::Usage(s.to_string()));
        if self.ms.is_empty() || self.ks.is_empty() || self.phis.is_empty() || self.modes.is_empty() {
            return usage("m, k, phi and mode lists must be non-empty");
        }
        if self.n == 0 || self.instances == 0 {
            return usage("n and the number of instances must be positive");
        }
        if self.ms.contains(&0) {
            return usage("m must be positive");
        }
        if self.phis.iter().any(|p| !(*p > 0.0 && *p <= 1.0)) {
            return usage("phi must lie in (0, 1]");
        }
        Ok(())
    }

    /// `(m, k)` pairs of the grid, skipping `k > m` and repeated `k`.
    pub fn mk_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &m in &self.ms {
            let mut ks: Vec<usize> = Vec::new();
            for spec in &self.ks {
                let k = spec.resolve(m);
                if (2..=m.max(2)).contains(&k) && !ks.contains(&k) {
                    ks.push(k);
                }
            }
            out.extend(ks.into_iter().map(|k| (m, k)));
        }
        out
    }

    /// Seed of one sampled profile. Independent of `k` and of the mode, so
    /// every `k` and mode sees the same instances.
    pub fn instance_seed(&self, m: usize, phi: f64, instance: usize) -> u64 {
        [m as u64, phi.to_bits(), instance as u64].iter().fold(self.seed, |h, &x| mix(h ^ mix(x)))
    }

    pub fn instance(&self, m: usize, phi: f64, instance: usize) -> Result<Profile, AppError> {
        let params = MallowsParams::new(Ranking::identity(m), phi, self.n, self.instance_seed(m, phi, instance))?;
        Ok(mallows_sample(&params)?)
    }
}

// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Outcome of one mode on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    /// `None` when the instance timed out.
    pub optimum: Option<u64>,
    pub consensus: Option<usize>,
    pub truncated: bool,
    pub largest_block: Option<usize>,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub m: usize,
    pub k: usize,
    pub phi: f64,
    pub mode: Mode,
    pub avg_ms: Option<f64>,
    pub max_ms: Option<f64>,
    pub min_ms: Option<f64>,
    pub avg_consensus: Option<f64>,
    pub avg_largest_scc: Option<f64>,
    pub completed: usize,
    pub timed_out: usize,
    pub instances: Vec<InstanceRecord>,
}

impl CellRecord {
    fn new(m: usize, k: usize, phi: f64, mode: Mode, instances: Vec<InstanceRecord>) -> Self {
        let done: Vec<&InstanceRecord> = instances.iter().filter(|r| r.optimum.is_some()).collect();
        let mean = |f: &dyn Fn(&InstanceRecord) -> f64| {
            (!done.is_empty()).then(|| done.iter().map(|r| f(r)).sum::<f64>() / done.len() as f64)
        };
        let times = done.iter().map(|r| r.ms);
        CellRecord {
            m,
            k,
            phi,
            mode,
            avg_ms: mean(&|r| r.ms),
            max_ms: times.clone().reduce(f64::max),
            min_ms: times.reduce(f64::min),
            avg_consensus: mean(&|r| r.consensus.unwrap_or(0) as f64),
            avg_largest_scc: mean(&|r| r.largest_block.unwrap_or(0) as f64),
            completed: done.len(),
            timed_out: instances.len() - done.len(),
            instances,
        }
    }

    pub fn consensus_counts(&self) -> Vec<Option<usize>> {
        self.instances.iter().map(|r| r.consensus).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub version: String,
    pub rng: String,
    pub seed: u64,
    pub n: usize,
    pub instances: usize,
    pub modes: Vec<Mode>,
    pub timeout_ms: Option<u64>,
    pub enumeration_limit: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub metadata: ReportMetadata,
    pub cells: Vec<CellRecord>,
}

impl ExperimentReport {
    pub fn cell(&self, m: usize, k: usize, phi: f64, mode: Mode) -> Option<&CellRecord> {
        self.cells.iter().find(|c| c.m == m && c.k == k && c.phi == phi && c.mode == mode)
    }

    /// One row per cell under [`CSV_HEADER`]. Cells with no completed
    /// instance report `NA`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), AppError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        let num = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), |x| format!("{x:.3}"));
        for c in &self.cells {
            w.write_record([
                c.m.to_string(),
                c.k.to_string(),
                c.phi.to_string(),
                c.mode.name().to_string(),
                num(c.avg_ms),
                num(c.max_ms),
                num(c.min_ms),
                num(c.avg_consensus),
                num(c.avg_largest_scc),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String, AppError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs `mode` once. Timing covers the whole solve, enumeration included.
pub fn run_mode(
    profile: &Profile,
    k: usize,
    mode: Mode,
    config: &ExperimentConfig,
) -> Result<(Option<ConsensusResult>, f64), AppError> {
    let (limit, timeout) = (config.enumeration_limit, config.timeout);
    let start = Instant::now();
    let mut interrupt = || timeout.is_some_and(|t| start.elapsed() > t);
    let outcome = match mode {
        Mode::Brute => brute_force_consensus(profile, k),
        Mode::Dp => enumerate_consensus_with(profile, k, limit, &mut interrupt),
        Mode::Pre | Mode::PreRefined => {
            let options = PreprocessOptions {
                refine: mode == Mode::PreRefined,
                digraph: DigraphOptions { force_exponential: config.force_exponential },
                limit: Some(limit),
            };
            solve_preprocessed_with(profile, k, &options, &mut interrupt).map(|p| p.result)
        }
    };
    let ms = elapsed_ms(start);
    match outcome {
        Ok(result) => Ok((Some(result), ms)),
        Err(CoreError::Interrupted) => Ok((None, ms)),
        Err(e) => Err(e.into()),
    }
}

struct Job {
    m: usize,
    k: usize,
    phi: f64,
    instance: usize,
}

fn run_job(config: &ExperimentConfig, job: &Job) -> Result<Vec<InstanceRecord>, AppError> {
    let profile = config.instance(job.m, job.phi, job.instance)?;
    let mut records = Vec::with_capacity(config.modes.len());
    let mut reference: Option<(Mode, u64)> = None;
    for &mode in &config.modes {
        let (result, ms) = run_mode(&profile, job.k, mode, config)?;
        if let Some(r) = &result {
            match reference {
                Some((ref_mode, expected)) if expected != r.optimum => {
                    return Err(AppError::ModeDisagreement {
                        m: job.m,
                        k: job.k,
                        phi: job.phi,
                        instance: job.instance,
                        mode: mode.name().to_string(),
                        found: r.optimum,
                        reference_mode: ref_mode.name().to_string(),
                        expected,
                    });
                }
                None => reference = Some((mode, r.optimum)),
                _ => {}
            }
        }
        records.push(InstanceRecord {
            optimum: result.as_ref().map(|r| r.optimum),
            consensus: result.as_ref().map(|r| r.rankings.len()),
            truncated: result.as_ref().is_some_and(|r| r.truncated),
            largest_block: result.as_ref().map(|r| r.stats.largest_block),
            ms,
        });
    }
    Ok(records)
}

/// Runs every cell of the grid. Instances run on a rayon pool; the report
/// does not depend on the schedule apart from the measured times.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, AppError> {
    config.validate()?;
    let mut jobs = Vec::new();
    for (m, k) in config.mk_pairs() {
        for &phi in &config.phis {
            jobs.extend((0..config.instances).map(|instance| Job { m, k, phi, instance }));
        }
    }
    let run_all = || jobs.par_iter().map(|j| run_job(config, j)).collect::<Result<Vec<_>, _>>();
    let results = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| AppError::Usage(e.to_string()))?
            .install(run_all)?,
        None => run_all()?,
    };

    let mut cells = Vec::new();
    for (chunk_jobs, chunk) in jobs.chunks(config.instances).zip(results.chunks(config.instances)) {
        let Job { m, k, phi, .. } = chunk_jobs[0];
        for (i, &mode) in config.modes.iter().enumerate() {
            let records = chunk.iter().map(|per_mode| per_mode[i].clone()).collect();
            cells.push(CellRecord::new(m, k, phi, mode, records));
        }
    }
    Ok(ExperimentReport {
        metadata: ReportMetadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            rng: RNG_ALGORITHM.to_string(),
            seed: config.seed,
            n: config.n,
            instances: config.instances,
            modes: config.modes.clone(),
            timeout_ms: config.timeout.map(|t| t.as_millis() as u64),
            enumeration_limit: config.enumeration_limit,
        },
        cells,
    })
}
