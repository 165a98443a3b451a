//! Plain-text experiment files: `key = value` per line, `#` starts a comment.
//!
//! ```text
//! m = 2
//! n = 1
//! theta = 1,1
//! norm = sup
//! M = 12
//! samples = 5000
//! seed = 1
//! ```
//!
//! Congruence problems add `mode = congruence`, `modulus` and `residues`.
//! Unknown or repeated keys are rejected.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::format::fmt_g17;
use crate::model::{ApproximationProblem, Mode, OrthantRestriction, QLower, SignReq};
use crate::montecarlo::{Centering, SimulationConfig};
use crate::norms::NormSpec;

const KEYS: &[&str] = &[
    "m",
    "n",
    "theta",
    "weights",
    "norm",
    "mode",
    "modulus",
    "residues",
    "orthant",
    "q_lower",
    "strict",
    "M",
    "samples",
    "seed",
    "threads",
    "centering",
];

pub const DEFAULT_SEED: u64 = 20240601;

/// Parse a config file's text into a validated simulation config.
pub fn parse_config(text: &str) -> Result<SimulationConfig> {
    let mut kv: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(Error::Config(format!("line {}: unknown key `{key}`", lineno + 1)));
        }
        if kv.insert(key, (lineno + 1, value.trim())).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key `{key}`", lineno + 1)));
        }
    }
    let get = |k: &str| kv.get(k).map(|&(_, v)| v);
    let need = |k: &str| get(k).ok_or_else(|| Error::Config(format!("missing key `{k}`")));

    let m: usize = parse_one(need("m")?, "m")?;
    let n: usize = parse_one(need("n")?, "n")?;
    let thetas: Vec<f64> = parse_list(need("theta")?, "theta")?;
    let mut problem = ApproximationProblem::new(m, n, thetas);
    if let Some(w) = get("weights") {
        problem.weights = parse_list(w, "weights")?;
    }
    if let Some(norm) = get("norm") {
        problem.norm = norm.parse::<NormSpec>().map_err(|e| Error::Config(e.to_string()))?;
    }
    let mode = get("mode").unwrap_or("inhomogeneous");
    match mode.to_ascii_lowercase().as_str() {
        "inhomogeneous" => {
            if get("modulus").is_some() || get("residues").is_some() {
                return Err(Error::Config("modulus/residues need mode = congruence".into()));
            }
        }
        "congruence" => {
            let modulus: u64 = parse_one(need("modulus")?, "modulus")?;
            let residues: Vec<i64> = parse_list(need("residues")?, "residues")?;
            problem.mode = Mode::Congruence { residues, modulus };
        }
        other => return Err(Error::Config(format!("unknown mode `{other}`"))),
    }
    if let Some(o) = get("orthant") {
        problem.orthant = Some(parse_orthant(o)?);
    }
    if let Some(q) = get("q_lower") {
        problem.q_lower = parse_q_lower(q)?;
    }
    if let Some(s) = get("strict") {
        problem.strict = parse_one(s, "strict")?;
    }
    let windows: usize = parse_one(need("M")?, "M")?;
    let samples: u64 = parse_one(need("samples")?, "samples")?;
    let seed: u64 = match get("seed") {
        Some(s) => parse_one(s, "seed")?,
        None => DEFAULT_SEED,
    };
    let mut config = SimulationConfig::new(problem, windows, samples, seed);
    if let Some(t) = get("threads") {
        config.parallelism = if t.eq_ignore_ascii_case("auto") { None } else { Some(parse_one(t, "threads")?) };
    }
    if let Some(c) = get("centering") {
        config.centering = Centering::parse(c).ok_or_else(|| Error::Config(format!("unknown centering `{c}`")))?;
    }
    config.validate()?;
    Ok(config)
}

pub fn read_config(path: &Path) -> Result<SimulationConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

/// Inverse of [`parse_config`] for a validated config.
pub fn serialize_config(config: &SimulationConfig) -> String {
    let p = &config.problem;
    let floats = |xs: &[f64]| xs.iter().map(|&x| fmt_g17(x)).collect::<Vec<_>>().join(",");
    let mut out = String::new();
    let _ = writeln!(out, "m = {}", p.m);
    let _ = writeln!(out, "n = {}", p.n);
    let _ = writeln!(out, "theta = {}", floats(&p.thetas));
    let _ = writeln!(out, "weights = {}", floats(&p.weights));
    let _ = writeln!(out, "norm = {}", p.norm);
    match &p.mode {
        Mode::Inhomogeneous => {
            let _ = writeln!(out, "mode = inhomogeneous");
        }
        Mode::Congruence { residues, modulus } => {
            let r: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(out, "mode = congruence\nmodulus = {modulus}\nresidues = {}", r.join(","));
        }
    }
    if let Some(o) = &p.orthant {
        let _ = writeln!(out, "orthant = {o}");
    }
    let _ = writeln!(out, "q_lower = {}", q_lower_str(p.q_lower));
    let _ = writeln!(out, "strict = {}", p.strict);
    let _ = writeln!(out, "M = {}", config.windows);
    let _ = writeln!(out, "samples = {}", config.num_samples);
    let _ = writeln!(out, "seed = {}", config.seed);
    match config.parallelism {
        Some(k) => {
            let _ = writeln!(out, "threads = {k}");
        }
        None => {
            let _ = writeln!(out, "threads = auto");
        }
    }
    let _ = writeln!(out, "centering = {}", config.centering.as_str());
    out
}

pub fn parse_orthant(s: &str) -> Result<OrthantRestriction> {
    let signs = s
        .split(',')
        .map(|t| SignReq::parse(t.trim()).ok_or_else(|| Error::Config(format!("unknown sign requirement `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrthantRestriction::new(signs)?)
}

pub fn parse_q_lower(s: &str) -> Result<QLower> {
    match s.trim().to_ascii_lowercase().as_str() {
        "exclusive0" | "0" => Ok(QLower::Exclusive0),
        "inclusive1" | "1" => Ok(QLower::Inclusive1),
        other => Err(Error::Config(format!("unknown q_lower `{other}`"))),
    }
}

pub fn q_lower_str(q: QLower) -> &'static str {
    match q {
        QLower::Exclusive0 => "exclusive0",
        QLower::Inclusive1 => "inclusive1",
    }
}

fn parse_one<T: std::str::FromStr>(s: &str, key: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Config(format!("bad value `{s}` for `{key}`")))
}

fn parse_list<T: std::str::FromStr>(s: &str, key: &str) -> Result<Vec<T>> {
    s.split(',').map(|t| parse_one(t, key)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = "# toy\nm = 2\nn = 1\ntheta = 1, 1   # both\nnorm = sup\nM = 4\nsamples = 10\nseed = 3\n";

    #[test]
    fn parses_basic_file() {
        let c = parse_config(BASIC).unwrap();
        assert_eq!(c.problem.m, 2);
        assert_eq!(c.problem.thetas, vec![1.0, 1.0]);
        assert_eq!(c.problem.weights, vec![0.5, 0.5]);
        assert_eq!(c.windows, 4);
        assert_eq!(c.seed, 3);
        assert_eq!(c.parallelism, None);
    }

    #[test]
    fn round_trips() {
        let text = "m=2\nn=1\ntheta=0.3,1.7\nweights=0.25,0.75\nnorm=p3\nmode=congruence\nmodulus=3\nresidues=4,-1,2\northant=pos,any,any\nq_lower=inclusive1\nstrict=true\nM=5\nsamples=7\nseed=9\nthreads=2\ncentering=empirical\n";
        let a = parse_config(text).unwrap();
        let b = parse_config(&serialize_config(&a)).unwrap();
        assert_eq!(a, b);
        assert_eq!(serialize_config(&a), serialize_config(&b));
        assert!(matches!(&a.problem.mode, Mode::Congruence { residues, .. } if residues == &vec![1, 2, 2]));
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(matches!(parse_config(&format!("{BASIC}colour = red\n")), Err(Error::Config(_))));
        assert!(matches!(parse_config(&format!("{BASIC}m = 2\n")), Err(Error::Config(_))));
        assert!(parse_config("m = 2\n").is_err());
        assert!(parse_config(&format!("{BASIC}modulus = 2\n")).is_err());
    }

    #[test]
    fn validation_errors_propagate() {
        let bad = BASIC.replace("theta = 1, 1", "theta = 1, -1");
        assert!(matches!(parse_config(&bad), Err(Error::Model(_))));
        let bad = BASIC.replace("samples = 10", "samples = 1");
        assert!(matches!(parse_config(&bad), Err(Error::InvalidArgument(_))));
    }
}
