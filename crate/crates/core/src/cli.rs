//! The `dioclt` command-line tool.
//!
//! Exit codes: 0 success, 1 statistical check failed, 2 invalid input,
//! 3 resource budget or count overflow, 4 I/O.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::config::{parse_orthant, parse_q_lower, read_config, serialize_config, DEFAULT_SEED};
use crate::constants::{constants_for, TheoreticalConstants};
use crate::counting::{
    brute_force_delta, delta_with_budget, sufficient_p_box, window_counts_with_budget, QPlan, DEFAULT_Q_BUDGET,
};
use crate::error::{Error, Result};
use crate::format::{fmt_g17, to_json_g17};
use crate::model::{ApproximationProblem, Mode, SamplePoint};
use crate::montecarlo::{
    exact_mean_oracle, run_simulation, sample_counts, Centering, SimulationConfig, SimulationSummary,
};
use crate::norms::NormSpec;
use crate::stats::{ad_test, ks_test, GoodnessOfFit, Moments};

pub const SCHEMA_VERSION: u32 = 1;
pub const THREADS_ENV: &str = "DIOCLT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "dioclt", version, about = "Counting weighted Diophantine approximations and checking their CLT")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form mean and variance constants as JSON.
    Constants(ConstantsArgs),
    /// Exact count for one parameter point.
    Count(CountArgs),
    /// Monte Carlo run: per-sample CSV and a summary with goodness-of-fit tests.
    Simulate(SimulateArgs),
    /// Compare Monte Carlo means with the exact mean over a grid of M.
    VerifyMean(VerifyMeanArgs),
    /// Per-annulus counts `e^s <= |q| < e^{s+1}` as CSV.
    Window(WindowArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(short = 'm', long = "m")]
    pub m: Option<usize>,
    #[arg(short = 'n', long = "n")]
    pub n: Option<usize>,
    /// Comma-separated, one per form.
    #[arg(long)]
    pub theta: Option<String>,
    /// Comma-separated, summing to n. Defaults to n/m each.
    #[arg(long)]
    pub weights: Option<String>,
    /// sup, euclidean or p<real>.
    #[arg(long, default_value = "sup")]
    pub norm: String,
    /// inhomogeneous or congruence.
    #[arg(long, default_value = "inhomogeneous")]
    pub mode: String,
    #[arg(long)]
    pub modulus: Option<u64>,
    /// m + n integers `(v', v'')`.
    #[arg(long, allow_hyphen_values = true)]
    pub residues: Option<String>,
    /// m + n of any, pos, neg, nonneg, nonpos.
    #[arg(long)]
    pub orthant: Option<String>,
    /// exclusive0 (`0 < |q|`) or inclusive1 (`1 <= |q|`).
    #[arg(long = "q-lower")]
    pub q_lower: Option<String>,
    /// Require the residues to be coprime to the modulus.
    #[arg(long)]
    pub strict: bool,
}

impl ProblemArgs {
    pub fn build(&self) -> Result<ApproximationProblem> {
        let missing = |k: &str| Error::InvalidArgument(format!("--{k} is required"));
        let m = self.m.ok_or_else(|| missing("m"))?;
        let n = self.n.ok_or_else(|| missing("n"))?;
        let thetas = parse_floats(self.theta.as_deref().ok_or_else(|| missing("theta"))?)?;
        let mut p = ApproximationProblem::new(m, n, thetas).with_norm(self.norm.parse::<NormSpec>()?);
        if let Some(w) = &self.weights {
            p.weights = parse_floats(w)?;
        }
        match self.mode.to_ascii_lowercase().as_str() {
            "inhomogeneous" => {
                if self.modulus.is_some() || self.residues.is_some() {
                    return Err(Error::InvalidArgument("--modulus/--residues need --mode congruence".into()));
                }
            }
            "congruence" => {
                let modulus = self.modulus.ok_or_else(|| missing("modulus"))?;
                let residues = parse_ints(self.residues.as_deref().ok_or_else(|| missing("residues"))?)?;
                p.mode = Mode::Congruence { residues, modulus };
            }
            other => return Err(Error::InvalidArgument(format!("unknown mode `{other}`"))),
        }
        if let Some(o) = &self.orthant {
            p.orthant = Some(parse_orthant(o)?);
        }
        if let Some(q) = &self.q_lower {
            p.q_lower = parse_q_lower(q)?;
        }
        p.strict = self.strict;
        p.validate()?;
        Ok(p)
    }

    fn given(&self) -> bool {
        self.m.is_some() || self.n.is_some() || self.theta.is_some()
    }
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    /// Row-major m x n entries; defaults to zeros.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// m entries; defaults to zeros.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// JSON file `{"u": [...], "v": [...]}`.
    #[arg(long = "sample-file", conflicts_with_all = ["u", "v"])]
    pub sample_file: Option<PathBuf>,
}

impl SampleArgs {
    pub fn build(&self, problem: &ApproximationProblem) -> Result<SamplePoint> {
        let (m, n) = (problem.m, problem.n);
        let sample = if let Some(path) = &self.sample_file {
            let text = std::fs::read_to_string(path)?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            let field = |k: &str| -> Result<Vec<f64>> {
                match value.get(k) {
                    None => Ok(vec![0.0; if k == "u" { m * n } else { m }]),
                    Some(v) => serde_json::from_value(v.clone())
                        .map_err(|e| Error::InvalidArgument(format!("{}: field `{k}`: {e}", path.display()))),
                }
            };
            SamplePoint { u: field("u")?, v: field("v")? }
        } else {
            SamplePoint {
                u: self.u.as_deref().map(parse_floats).transpose()?.unwrap_or_else(|| vec![0.0; m * n]),
                v: self.v.as_deref().map(parse_floats).transpose()?.unwrap_or_else(|| vec![0.0; m]),
            }
        };
        sample.check(problem)?;
        Ok(sample)
    }
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Absolute tolerance for the series constants.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub sample: SampleArgs,
    #[arg(short = 'T', long = "T")]
    pub t: f64,
    /// Literal enumeration over (p, q) boxes instead of the fast count.
    #[arg(long = "brute-force")]
    pub brute_force: bool,
    /// Maximum number of candidate q vectors.
    #[arg(long, default_value_t = DEFAULT_Q_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Experiment file (key = value lines); replaces the problem flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(short = 'M', long = "M")]
    pub windows: Option<usize>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; overrides DIOCLT_THREADS and the config file.
    #[arg(long)]
    pub threads: Option<usize>,
    /// theorem or empirical.
    #[arg(long)]
    pub centering: Option<String>,
    /// Per-sample CSV output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Summary JSON output; stdout when absent.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Echo the effective config file to stderr.
    #[arg(long = "print-config")]
    pub print_config: bool,
}

#[derive(Debug, Args)]
pub struct VerifyMeanArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Comma-separated integer M values (at least two).
    #[arg(long = "M-grid")]
    pub m_grid: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub sample: SampleArgs,
    #[arg(short = 'M', long = "M")]
    pub windows: usize,
    #[arg(long, default_value_t = DEFAULT_Q_BUDGET)]
    pub budget: u64,
}

/// Runs a parsed command, writing primary output to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Constants(a) => cmd_constants(&a, out),
        Command::Count(a) => cmd_count(&a, out),
        Command::Simulate(a) => cmd_simulate(&a, out, err),
        Command::VerifyMean(a) => cmd_verify_mean(&a, out, err),
        Command::Window(a) => cmd_window(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn cmd_constants(a: &ConstantsArgs, out: &mut dyn Write) -> Result<i32> {
    let problem = a.problem.build()?;
    let c = constants_for(&problem, a.tol)?;
    out.write_all(to_json_g17(&constants_json(&c)).as_bytes())?;
    Ok(0)
}

pub fn constants_json(c: &TheoreticalConstants) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "c_mean": c.c_mean,
        "sigma2_theorem": c.sigma2_theorem,
        "sigma2_proof_variant": c.sigma2_proof_variant,
        "omega_n": c.omega_n,
        "zeta_N": c.zeta_n.map(|z| z.value),
        "residue_double_sum": c.residue_double_sum.map(|s| s.value),
        "truncation_bounds": {
            "tolerance": c.tolerance,
            "zeta_N": c.zeta_n.map(|z| z.bound),
            "residue_double_sum": c.residue_double_sum.map(|s| s.bound),
        },
    })
}

pub fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> Result<i32> {
    let problem = a.problem.build()?;
    let sample = a.sample.build(&problem)?;
    let (r, method) = if a.brute_force {
        let p_box = sufficient_p_box(&problem, &sample, a.t);
        (brute_force_delta(&problem, &sample, a.t, p_box)?, "brute_force")
    } else {
        (delta_with_budget(&problem, &sample, a.t, a.budget)?, "enumeration")
    };
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "total": r.total,
        "q_enumerated": r.q_enumerated,
        "T": r.t,
        "method": method,
    });
    out.write_all(to_json_g17(&v).as_bytes())?;
    Ok(0)
}

fn env_threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(s) if !s.trim().is_empty() && !s.trim().eq_ignore_ascii_case("auto") => {
            let k: usize = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{THREADS_ENV}=`{s}` is not a thread count")))?;
            Ok(Some(k))
        }
        _ => Ok(None),
    }
}

fn simulation_config(a: &SimulateArgs) -> Result<SimulationConfig> {
    let mut config = match &a.config {
        Some(path) => {
            if a.problem.given() {
                return Err(Error::InvalidArgument("--config replaces the problem flags".into()));
            }
            let mut c = read_config(path)?;
            if let Some(w) = a.windows {
                c.windows = w;
            }
            if let Some(s) = a.samples {
                c.num_samples = s;
            }
            if let Some(s) = a.seed {
                c.seed = s;
            }
            c
        }
        None => {
            let problem = a.problem.build()?;
            let windows = a.windows.ok_or_else(|| Error::InvalidArgument("-M is required".into()))?;
            let samples = a.samples.unwrap_or(1000);
            SimulationConfig::new(problem, windows, samples, a.seed.unwrap_or(DEFAULT_SEED))
        }
    };
    if let Some(k) = env_threads()? {
        config.parallelism = Some(k);
    }
    if let Some(k) = a.threads {
        config.parallelism = Some(k);
    }
    if let Some(c) = &a.centering {
        config.centering =
            Centering::parse(c).ok_or_else(|| Error::InvalidArgument(format!("unknown centering `{c}`")))?;
    }
    config.validate()?;
    Ok(config)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let config = simulation_config(a)?;
    if a.print_config {
        err.write_all(serialize_config(&config).as_bytes())?;
    }
    // open outputs before the run so that a bad path fails fast
    let mut csv = a.csv.as_deref().map(create).transpose()?;
    let mut summary_file = a.summary.as_deref().map(create).transpose()?;
    let mut warnings = Vec::new();
    if config.problem.m == 1 {
        warnings.push("m = 1: the limit theorem assumes m >= 2; results are descriptive only".to_string());
    }
    for w in &warnings {
        writeln!(err, "warning: {w}")?;
    }
    let summary = run_simulation(&config)?;
    if let Some(f) = csv.as_mut() {
        summary.write_csv(f)?;
    }
    let constants = if config.problem.orthant.is_none() { Some(constants_for(&config.problem, 1e-12)?) } else { None };
    let report = summary_json(&summary, constants.as_ref(), &warnings)?;
    let text = to_json_g17(&report);
    match summary_file.as_mut() {
        Some(f) => {
            f.write_all(text.as_bytes())?;
            f.flush()?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn gof_json(g: &GoodnessOfFit) -> Value {
    json!({ "test": g.test.name(), "statistic": g.statistic, "p_value": g.p_value, "n_samples": g.n_samples })
}

/// Candidate whose value is closer to `empirical`; `"tie"` when equidistant.
pub fn closer_candidate(empirical: f64, theorem: f64, proof_variant: f64) -> &'static str {
    let (a, b) = ((empirical - theorem).abs(), (empirical - proof_variant).abs());
    if a < b {
        "sigma2_theorem"
    } else if b < a {
        "sigma2_proof_variant"
    } else {
        "tie"
    }
}

pub fn summary_json(s: &SimulationSummary, c: Option<&TheoreticalConstants>, warnings: &[String]) -> Result<Value> {
    let cfg = &s.config;
    let f_var = s.f_moments.variance();
    let approximate = cfg.centering == Centering::EmpiricalMean;
    let (gof, variance_report) = match c {
        Some(c) => {
            let mut rows = Vec::new();
            for (name, sigma2) in
                [("sigma2_theorem", c.sigma2_theorem), ("sigma2_proof_variant", c.sigma2_proof_variant)]
            {
                let ks = ks_test(&s.f_values, sigma2).ok();
                let ad = ad_test(&s.f_values, sigma2).ok();
                rows.push(json!({
                    "candidate": name,
                    "sigma2": sigma2,
                    "ks": ks.as_ref().map(gof_json),
                    "ad": ad.as_ref().map(gof_json),
                }));
            }
            let report = json!({
                "empirical_variance_f": f_var,
                "sigma2_theorem": c.sigma2_theorem,
                "sigma2_proof_variant": c.sigma2_proof_variant,
                "ratio_to_theorem": f_var / c.sigma2_theorem,
                "ratio_to_proof_variant": f_var / c.sigma2_proof_variant,
                "closer": closer_candidate(f_var, c.sigma2_theorem, c.sigma2_proof_variant),
            });
            (Value::Array(rows), report)
        }
        None => (Value::Null, Value::Null),
    };
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "config": serialize_config(cfg),
        "seed": cfg.seed,
        "M": cfg.windows,
        "T": cfg.t(),
        "num_samples": cfg.num_samples,
        "centering": cfg.centering.as_str(),
        "delta": {
            "mean": s.delta_moments.mean,
            "variance": s.delta_moments.variance(),
            "std_error": s.delta_moments.std_error(),
            "exact_mean": s.oracle_mean,
            "z_vs_exact_mean": s.oracle_z(),
        },
        "f": {
            "center": s.center,
            "c_mean": s.c_mean,
            "mean": s.f_moments.mean,
            "variance": f_var,
            "skewness": s.f_moments.skewness(),
        },
        "goodness_of_fit": gof,
        "p_values_approximate": approximate,
        "p_value_method": "asymptotic Kolmogorov series (100 terms); Anderson-Darling case-0 limit approximation",
        "variance_report": variance_report,
        "warnings": warnings,
        "wall_time_secs": s.wall_time_secs,
        "samples_per_second": s.samples_per_second,
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeanCheckRow {
    pub windows: usize,
    pub oracle: f64,
    pub mc_mean: f64,
    pub std_error: f64,
    pub z: f64,
}

pub fn verify_mean_rows(
    problem: &ApproximationProblem,
    grid: &[usize],
    samples: u64,
    seed: u64,
    parallelism: Option<usize>,
) -> Result<Vec<MeanCheckRow>> {
    let mut distinct = grid.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::InvalidArgument("M grid needs at least two distinct values".into()));
    }
    if grid.contains(&0) {
        return Err(Error::InvalidArgument("M grid values must be >= 1".into()));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    grid.iter()
        .map(|&w| {
            let t = (w as f64).exp();
            let oracle = exact_mean_oracle(problem, t)?;
            let plan = QPlan::new(problem, t)?;
            let counts = sample_counts(&plan, seed, samples, parallelism)?;
            let as_f64: Vec<f64> = counts.iter().map(|&d| d as f64).collect();
            let mom = Moments::from_slice(&as_f64);
            let se = mom.std_error();
            Ok(MeanCheckRow { windows: w, oracle, mc_mean: mom.mean, std_error: se, z: (mom.mean - oracle) / se })
        })
        .collect()
}

pub fn cmd_verify_mean(a: &VerifyMeanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let problem = a.problem.build()?;
    let grid = a
        .m_grid
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad M value `{s}`"))))
        .collect::<Result<Vec<_>>>()?;
    if problem.m == 1 {
        writeln!(err, "warning: m = 1: the limit theorem assumes m >= 2")?;
    }
    let threads = match a.threads {
        Some(k) => Some(k),
        None => env_threads()?,
    };
    let rows = verify_mean_rows(&problem, &grid, a.samples, a.seed, threads)?;
    writeln!(out, "M,oracle,mc_mean,stderr,z")?;
    let mut ok = true;
    for r in &rows {
        // a zero-variance sample only matches an identical oracle
        let z_ok = r.z.abs() <= 4.0 || (r.std_error == 0.0 && r.mc_mean == r.oracle);
        ok &= z_ok;
        writeln!(
            out,
            "{},{},{},{},{}",
            r.windows,
            fmt_g17(r.oracle),
            fmt_g17(r.mc_mean),
            fmt_g17(r.std_error),
            fmt_g17(r.z)
        )?;
    }
    Ok(if ok { 0 } else { 1 })
}

pub fn cmd_window(a: &WindowArgs, out: &mut dyn Write) -> Result<i32> {
    let problem = a.problem.build()?;
    let sample = a.sample.build(&problem)?;
    let w = window_counts_with_budget(&problem, &sample, a.windows, a.budget)?;
    writeln!(out, "s,count")?;
    for (s, c) in w.counts.iter().enumerate() {
        writeln!(out, "{s},{c}")?;
    }
    writeln!(out, "sum,{}", w.total())?;
    Ok(0)
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad number `{t}`"))))
        .collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad integer `{t}`"))))
        .collect()
}
