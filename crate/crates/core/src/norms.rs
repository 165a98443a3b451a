//! Norms on `R^n` and the geometric constant `omega_n`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::special::gamma;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormSpec {
    Sup,
    Euclidean,
    /// `l^p` norm, `p >= 1`.
    P(f64),
}

impl NormSpec {
    /// `P(2)` becomes `Euclidean`, `P(inf)` becomes `Sup`.
    pub fn canonical(self) -> Result<Self> {
        match self {
            NormSpec::P(p) if p.is_nan() || p < 1.0 => {
                Err(Error::InvalidArgument(format!("norm exponent p={p} must be >= 1")))
            }
            NormSpec::P(p) if p == f64::INFINITY => Ok(NormSpec::Sup),
            NormSpec::P(2.0) => Ok(NormSpec::Euclidean),
            other => Ok(other),
        }
    }

    /// `|x|` without a length check.
    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        match *self {
            NormSpec::Sup => x.iter().fold(0.0, |acc: f64, v| acc.max(v.abs())),
            NormSpec::Euclidean => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
            NormSpec::P(1.0) => x.iter().map(|v| v.abs()).sum(),
            NormSpec::P(p) => x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Sup => f.write_str("sup"),
            NormSpec::Euclidean => f.write_str("euclidean"),
            NormSpec::P(p) => write!(f, "p{p}"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    /// Accepts `sup`, `max`, `inf`, `euclidean`, `l2`, `p<real>` or `l<real>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let norm = match s.as_str() {
            "sup" | "max" | "inf" | "linf" => NormSpec::Sup,
            "euclidean" | "euclid" | "l2" => NormSpec::Euclidean,
            other => {
                let digits = other
                    .strip_prefix("p:")
                    .or_else(|| other.strip_prefix('p'))
                    .or_else(|| other.strip_prefix('l'))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown norm `{s}`")))?;
                let p: f64 = digits.parse().map_err(|_| Error::InvalidArgument(format!("unknown norm `{s}`")))?;
                NormSpec::P(p)
            }
        };
        norm.canonical()
    }
}

/// `|x|` for a vector that must have length `n`.
pub fn norm_value(norm: &NormSpec, x: &[f64], n: usize) -> Result<f64> {
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    Ok(norm.eval(x))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VolumeMethod {
    ClosedForm,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallVolume {
    pub value: f64,
    pub method: VolumeMethod,
    pub std_error: f64,
}

/// Volume of `{ |x| <= 1 }` in `R^n`, closed form.
pub fn unit_ball_volume(norm: &NormSpec, n: usize) -> Result<BallVolume> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension n must be >= 1".into()));
    }
    let nf = n as f64;
    let value = match norm.canonical()? {
        NormSpec::Sup => 2f64.powi(n as i32),
        NormSpec::Euclidean => PI.powf(nf / 2.0) / gamma(nf / 2.0 + 1.0),
        NormSpec::P(p) => (2.0 * gamma(1.0 + 1.0 / p)).powi(n as i32) / gamma(1.0 + nf / p),
    };
    Ok(BallVolume { value, method: VolumeMethod::ClosedForm, std_error: 0.0 })
}

/// Hit-or-miss estimate of the unit-ball volume inside the cube `[-1, 1]^n`.
pub fn unit_ball_volume_mc(norm: &NormSpec, n: usize, samples: u64, seed: u64) -> Result<BallVolume> {
    if n == 0 || samples < 2 {
        return Err(Error::InvalidArgument("need n >= 1 and at least 2 samples".into()));
    }
    let norm = norm.canonical()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; n];
    let mut hits = 0u64;
    for _ in 0..samples {
        for xi in x.iter_mut() {
            *xi = rng.gen_range(-1.0..1.0);
        }
        if norm.eval(&x) <= 1.0 {
            hits += 1;
        }
    }
    let cube = 2f64.powi(n as i32);
    let frac = hits as f64 / samples as f64;
    Ok(BallVolume {
        value: cube * frac,
        method: VolumeMethod::MonteCarlo { samples, seed },
        std_error: cube * (frac * (1.0 - frac) / samples as f64).sqrt(),
    })
}

/// `omega_n = n * vol({|x| <= 1})`, the cone measure of the unit sphere, so
/// that `int_{1 <= |y| < R} |y|^{-n} dy = omega_n log R`.
pub fn omega_n(norm: &NormSpec, n: usize) -> Result<f64> {
    Ok(n as f64 * unit_ball_volume(norm, n)?.value)
}
