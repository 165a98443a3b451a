//! Problem description shared by counting, constants and simulation.
//!
//! An [`ApproximationProblem`] fixes the system of `m` (affine) linear forms in
//! `n` integer variables: the thresholds `theta_i`, the weights `w_i` with
//! `sum w_i = n`, the norm applied to the denominator vector `q`, and whether
//! solutions are counted for a random shift (inhomogeneous mode) or inside a
//! fixed residue class modulo `N` (congruence mode).

use std::fmt;

use thiserror::Error;

use crate::norms::NormSpec;

/// Absolute tolerance on `sum w_i = n`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("dimensions must be positive (m={m}, n={n})")]
    Dimension { m: usize, n: usize },

    #[error("{what} has length {got}, expected {expected}")]
    Length { what: &'static str, expected: usize, got: usize },

    #[error("weights sum to {sum}, expected n={n}")]
    WeightSumMismatch { sum: f64, n: usize },

    #[error("weight w_{index}={weight} outside (0, {n})")]
    WeightRange { index: usize, weight: f64, n: usize },

    #[error("theta_{index}={theta} must be positive and finite")]
    NonPositiveTheta { index: usize, theta: f64 },

    #[error("bad residue vector: {0}")]
    BadResidue(String),

    #[error("gcd(residues, N) = {gcd} != 1")]
    GcdViolation { gcd: u64 },

    #[error("norm exponent p={0} must be >= 1")]
    BadNorm(f64),

    #[error("orthant restriction must constrain at least one coordinate")]
    TrivialOrthant,

    #[error("sample point: {0}")]
    BadSample(String),
}

/// Sign requirement on a single coordinate of `(p + u.q + v, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignReq {
    Any,
    NonNegative,
    Negative,
    Positive,
    NonPositive,
}

impl SignReq {
    pub fn admits(self, x: f64) -> bool {
        match self {
            SignReq::Any => true,
            SignReq::NonNegative => x >= 0.0,
            SignReq::Negative => x < 0.0,
            SignReq::Positive => x > 0.0,
            SignReq::NonPositive => x <= 0.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignReq::Any => "any",
            SignReq::NonNegative => "nonneg",
            SignReq::Negative => "neg",
            SignReq::Positive => "pos",
            SignReq::NonPositive => "nonpos",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.trim().to_ascii_lowercase().as_str() {
            "any" | "*" => SignReq::Any,
            "nonneg" | "nonnegative" | ">=0" => SignReq::NonNegative,
            "neg" | "negative" | "<0" => SignReq::Negative,
            "pos" | "positive" | ">0" => SignReq::Positive,
            "nonpos" | "nonpositive" | "<=0" => SignReq::NonPositive,
            _ => return None,
        })
    }
}

/// Per-coordinate sign pattern for the `m + n` coordinates of `(p + u.q + v, q)`.
///
/// The all-`Any` pattern is not representable; an unrestricted problem carries
/// no `OrthantRestriction` at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrthantRestriction {
    signs: Vec<SignReq>,
}

impl OrthantRestriction {
    pub fn new(signs: Vec<SignReq>) -> Result<Self, ModelError> {
        if signs.iter().all(|s| *s == SignReq::Any) {
            return Err(ModelError::TrivialOrthant);
        }
        Ok(Self { signs })
    }

    pub fn signs(&self) -> &[SignReq] {
        &self.signs
    }

    /// Requirements on the `m` form coordinates.
    pub fn form_signs(&self, m: usize) -> &[SignReq] {
        &self.signs[..m]
    }

    /// Requirements on the `n` denominator coordinates.
    pub fn q_signs(&self, m: usize) -> &[SignReq] {
        &self.signs[m..]
    }
}

impl fmt::Display for OrthantRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.signs.iter().map(|s| s.as_str()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Inhomogeneous,
    /// `(p, q) = residues (mod modulus)`, residues ordered as `(v', v'')`.
    Congruence {
        residues: Vec<i64>,
        modulus: u64,
    },
}

impl Mode {
    pub fn modulus(&self) -> u64 {
        match self {
            Mode::Inhomogeneous => 1,
            Mode::Congruence { modulus, .. } => *modulus,
        }
    }

    pub fn is_congruence(&self) -> bool {
        matches!(self, Mode::Congruence { .. })
    }
}

/// Lower end of the denominator range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum QLower {
    /// `0 < |q|`
    #[default]
    Exclusive0,
    /// `1 <= |q|`
    Inclusive1,
}

impl QLower {
    pub fn admits(self, norm: f64) -> bool {
        match self {
            QLower::Exclusive0 => norm > 0.0,
            QLower::Inclusive1 => norm >= 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationProblem {
    pub m: usize,
    pub n: usize,
    pub thetas: Vec<f64>,
    pub weights: Vec<f64>,
    pub norm: NormSpec,
    pub mode: Mode,
    pub orthant: Option<OrthantRestriction>,
    pub q_lower: QLower,
    /// Require `gcd(residues, N) = 1` in congruence mode.
    pub strict: bool,
}

impl ApproximationProblem {
    /// Inhomogeneous problem with equal weights `n/m` and the sup norm.
    pub fn new(m: usize, n: usize, thetas: Vec<f64>) -> Self {
        let w = if m == 0 { 0.0 } else { n as f64 / m as f64 };
        Self {
            m,
            n,
            thetas,
            weights: vec![w; m],
            norm: NormSpec::Sup,
            mode: Mode::Inhomogeneous,
            orthant: None,
            q_lower: QLower::Exclusive0,
            strict: false,
        }
    }

    pub fn with_norm(mut self, norm: NormSpec) -> Self {
        self.norm = norm;
        self
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Self {
        self.weights = weights;
        self
    }

    pub fn with_congruence(mut self, residues: Vec<i64>, modulus: u64) -> Self {
        self.mode = Mode::Congruence { residues, modulus };
        self
    }

    pub fn with_orthant(mut self, orthant: OrthantRestriction) -> Self {
        self.orthant = Some(orthant);
        self
    }

    pub fn with_q_lower(mut self, q_lower: QLower) -> Self {
        self.q_lower = q_lower;
        self
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    /// Checks every invariant and normalizes residues into `[0, N)`.
    /// Idempotent.
    pub fn validate(&mut self) -> Result<(), ModelError> {
        let (m, n) = (self.m, self.n);
        if m == 0 || n == 0 {
            return Err(ModelError::Dimension { m, n });
        }
        if self.thetas.len() != m {
            return Err(ModelError::Length { what: "thetas", expected: m, got: self.thetas.len() });
        }
        if self.weights.len() != m {
            return Err(ModelError::Length { what: "weights", expected: m, got: self.weights.len() });
        }
        for (index, &theta) in self.thetas.iter().enumerate() {
            if !(theta > 0.0 && theta.is_finite()) {
                return Err(ModelError::NonPositiveTheta { index: index + 1, theta });
            }
        }
        let nf = n as f64;
        for (index, &weight) in self.weights.iter().enumerate() {
            // a single form has to carry the whole weight n
            let upper_ok = if m == 1 { weight <= nf } else { weight < nf };
            if !(weight > 0.0 && upper_ok) {
                return Err(ModelError::WeightRange { index: index + 1, weight, n });
            }
        }
        let sum: f64 = self.weights.iter().sum();
        if (sum - nf).abs() > WEIGHT_SUM_TOL {
            return Err(ModelError::WeightSumMismatch { sum, n });
        }
        self.norm = self.norm.canonical().map_err(|_| match self.norm {
            NormSpec::P(p) => ModelError::BadNorm(p),
            _ => ModelError::BadNorm(f64::NAN),
        })?;
        if let Some(orthant) = &self.orthant {
            if orthant.signs().len() != m + n {
                return Err(ModelError::Length { what: "orthant", expected: m + n, got: orthant.signs().len() });
            }
        }
        if let Mode::Congruence { residues, modulus } = &mut self.mode {
            if *modulus == 0 {
                return Err(ModelError::BadResidue("modulus N must be >= 1".into()));
            }
            if residues.len() != m + n {
                return Err(ModelError::BadResidue(format!("expected {} residues, got {}", m + n, residues.len())));
            }
            let modulus_i = i64::try_from(*modulus).map_err(|_| ModelError::BadResidue("modulus too large".into()))?;
            for r in residues.iter_mut() {
                *r = r.rem_euclid(modulus_i);
            }
            if self.strict {
                let g = residues.iter().fold(*modulus, |acc, &r| gcd(acc, r as u64));
                if g != 1 {
                    return Err(ModelError::GcdViolation { gcd: g });
                }
            }
        }
        Ok(())
    }

    /// Period of the counting function in each entry of `u` (1 inhomogeneous, `N` congruence).
    pub fn u_period(&self) -> f64 {
        self.mode.modulus() as f64
    }

    pub fn theta_product(&self) -> f64 {
        self.thetas.iter().product()
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A point `(u, v)` of the parameter torus; `u` is row-major `m x n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl SamplePoint {
    pub fn zeros(m: usize, n: usize) -> Self {
        Self { u: vec![0.0; m * n], v: vec![0.0; m] }
    }

    pub fn row(&self, i: usize, n: usize) -> &[f64] {
        &self.u[i * n..(i + 1) * n]
    }

    /// Checks the shape against `problem`. Entries may be any finite real:
    /// counts are periodic in `u`, so off-torus points are still meaningful.
    pub fn check(&self, problem: &ApproximationProblem) -> Result<(), ModelError> {
        let (m, n) = (problem.m, problem.n);
        if self.u.len() != m * n {
            return Err(ModelError::Length { what: "u", expected: m * n, got: self.u.len() });
        }
        if self.v.len() != m {
            return Err(ModelError::Length { what: "v", expected: m, got: self.v.len() });
        }
        if self.u.iter().chain(&self.v).any(|x| !x.is_finite()) {
            return Err(ModelError::BadSample("entries must be finite".into()));
        }
        Ok(())
    }
}
