//! Reproducible sampling of the parameter torus and the normalized statistic.
//!
//! Sample `i` of a run is drawn from a ChaCha8 generator keyed by the run seed
//! and positioned on stream `i`, so every sample is a pure function of
//! `(seed, i)` and runs are identical for any thread count.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constants::constants_for;
use crate::counting::QPlan;
use crate::error::{Error, Result};
use crate::format::fmt_g17;
use crate::model::{ApproximationProblem, Mode, SamplePoint, SignReq};
use crate::stats::Moments;

/// Uniform sample point for stream `stream_index` of `seed`.
///
/// Entries of `u` are uniform on `[0, P)` with `P` the period of the count in
/// `u` (1 inhomogeneous, `N` congruence); `v` is uniform on `[0, 1)` in
/// inhomogeneous mode and zero in congruence mode.
pub fn sample_point(problem: &ApproximationProblem, stream_index: u64, seed: u64) -> SamplePoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_index);
    let period = problem.u_period();
    let mut draw = |scale: f64| {
        let x = rng.gen::<f64>() * scale;
        // x * scale can round up to scale
        if x >= scale {
            f64::from_bits(scale.to_bits() - 1)
        } else {
            x
        }
    };
    let u: Vec<f64> = (0..problem.m * problem.n).map(|_| draw(period)).collect();
    let v: Vec<f64> = match problem.mode {
        Mode::Inhomogeneous => (0..problem.m).map(|_| draw(1.0)).collect(),
        Mode::Congruence { .. } => vec![0.0; problem.m],
    };
    SamplePoint { u, v }
}

/// `(delta - c_mean M) / sqrt(M)`, with `log T = M`.
pub fn normalized_statistic(delta: f64, windows: f64, c_mean: f64) -> f64 {
    (delta - c_mean * windows) / windows.sqrt()
}

/// Exact average of the count over the sampling measure of [`sample_point`].
///
/// For each admissible `q`, the offset `<u_i, q> + v_i` is uniform modulo the
/// progression step, so the expected number of admissible `p_i` is the window
/// length divided by the step: `2 h_i / N`, or `h_i / N` under a sign
/// condition on the form coordinate. Summing the product over `q` gives
/// `2^m prod(theta) sum |q|^{-n}` (divided by `N^m` in congruence mode).
pub fn exact_mean_oracle(problem: &ApproximationProblem, t: f64) -> Result<f64> {
    let plan = QPlan::new(problem, t)?;
    Ok(exact_mean_from_plan(&plan))
}

pub(crate) fn exact_mean_from_plan(plan: &QPlan) -> f64 {
    let p = plan.problem();
    let (m, n) = (p.m, p.n);
    let form_factor: f64 = (0..m)
        .map(|i| {
            let signed = p.orthant.as_ref().is_some_and(|o| o.form_signs(m)[i] != SignReq::Any);
            (if signed { 1.0 } else { 2.0 }) * p.thetas[i]
        })
        .product();
    let step = (p.mode.modulus() as f64).powi(m as i32);
    let nf = n as f64;
    // Neumaier summation; the sum has ~e^{nM} terms
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    plan.for_each_q(|q, norm, _| {
        if let Some(o) = &p.orthant {
            if !o.q_signs(m).iter().zip(q).all(|(s, &x)| s.admits(x)) {
                return;
            }
        }
        let x = norm.powf(-nf);
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    });
    form_factor / step * (sum + comp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Centering {
    /// Subtract `c_mean * M`.
    #[default]
    TheoremMean,
    /// Subtract the sample mean of the counts.
    EmpiricalMean,
}

impl Centering {
    pub fn as_str(self) -> &'static str {
        match self {
            Centering::TheoremMean => "theorem",
            Centering::EmpiricalMean => "empirical",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "theorem" | "theorem-mean" | "theoremmean" => Some(Centering::TheoremMean),
            "empirical" | "empirical-mean" | "empiricalmean" => Some(Centering::EmpiricalMean),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub problem: ApproximationProblem,
    /// `T = e^M`.
    pub windows: usize,
    pub num_samples: u64,
    pub seed: u64,
    /// `None` auto-detects.
    pub parallelism: Option<usize>,
    pub centering: Centering,
}

impl SimulationConfig {
    pub fn new(problem: ApproximationProblem, windows: usize, num_samples: u64, seed: u64) -> Self {
        Self { problem, windows, num_samples, seed, parallelism: None, centering: Centering::default() }
    }

    pub fn validate(&mut self) -> Result<()> {
        self.problem.validate()?;
        if self.windows == 0 {
            return Err(Error::InvalidArgument("M must be >= 1".into()));
        }
        if self.num_samples < 2 {
            return Err(Error::InvalidArgument("need at least 2 samples".into()));
        }
        if self.parallelism == Some(0) {
            return Err(Error::InvalidArgument("parallelism must be >= 1".into()));
        }
        Ok(())
    }

    pub fn t(&self) -> f64 {
        (self.windows as f64).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSummary {
    pub config: SimulationConfig,
    pub deltas: Vec<u64>,
    pub f_values: Vec<f64>,
    pub delta_moments: Moments,
    pub f_moments: Moments,
    /// Value subtracted from each count before scaling.
    pub center: f64,
    /// Slope used by theorem centering (also reported under empirical centering).
    pub c_mean: f64,
    /// Exact average of the count at `T = e^M`.
    pub oracle_mean: f64,
    pub wall_time_secs: f64,
    pub samples_per_second: f64,
}

impl SimulationSummary {
    /// `(mc_mean - oracle) / stderr`.
    pub fn oracle_z(&self) -> f64 {
        (self.delta_moments.mean - self.oracle_mean) / self.delta_moments.std_error()
    }

    /// Per-sample rows `sample_index,delta,f_value`.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        out.write_all(b"sample_index,delta,f_value\n")?;
        for (i, (d, f)) in self.deltas.iter().zip(&self.f_values).enumerate() {
            writeln!(out, "{i},{d},{}", fmt_g17(*f))?;
        }
        out.flush()
    }
}

/// Counts for stream indices `0..num_samples`, in index order.
pub fn sample_counts(plan: &QPlan, seed: u64, num_samples: u64, parallelism: Option<usize>) -> Result<Vec<u64>> {
    let problem = plan.problem();
    let run = || {
        (0..num_samples)
            .into_par_iter()
            .map(|i| plan.count(&sample_point(problem, i, seed)).map(|r| r.total))
            .collect::<Result<Vec<u64>>>()
    };
    match parallelism {
        Some(1) => (0..num_samples).map(|i| plan.count(&sample_point(problem, i, seed)).map(|r| r.total)).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

pub fn run_simulation(config: &SimulationConfig) -> Result<SimulationSummary> {
    let mut config = config.clone();
    config.validate()?;
    let start = Instant::now();
    let plan = QPlan::new(&config.problem, config.t())?;
    let c_mean = if config.problem.orthant.is_some() {
        // slope of the exact mean: the mean at T = e^M over M, up to O(1/M)
        exact_mean_from_plan(&plan) / config.windows as f64
    } else {
        constants_for(&config.problem, 1e-12)?.c_mean
    };
    let oracle_mean = exact_mean_from_plan(&plan);
    let deltas = sample_counts(&plan, config.seed, config.num_samples, config.parallelism)?;
    let as_f64: Vec<f64> = deltas.iter().map(|&d| d as f64).collect();
    let delta_moments = Moments::from_slice(&as_f64);
    let mf = config.windows as f64;
    let center = match config.centering {
        Centering::TheoremMean => c_mean * mf,
        Centering::EmpiricalMean => delta_moments.mean,
    };
    let f_values: Vec<f64> = as_f64.iter().map(|d| (d - center) / mf.sqrt()).collect();
    let f_moments = Moments::from_slice(&f_values);
    let wall = start.elapsed().as_secs_f64();
    Ok(SimulationSummary {
        samples_per_second: config.num_samples as f64 / wall.max(1e-9),
        config,
        deltas,
        f_values,
        delta_moments,
        f_moments,
        center,
        c_mean,
        oracle_mean,
        wall_time_secs: wall,
    })
}
