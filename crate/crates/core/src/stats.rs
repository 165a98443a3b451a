//! Streaming moments and goodness-of-fit against a centered normal law.
//!
//! Normal laws are parameterized by their variance everywhere (`sigma2`).

use std::cmp::Ordering;
use std::f64::consts::{PI, SQRT_2};

use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Mean and central moment sums, mergeable (Chan et al. / Pebay).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    m2: f64,
    m3: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.merge(&Moments { count: 1, mean: x, m2: 0.0, m3: 0.0 });
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * nb / n;
        let m2 = self.m2 + other.m2 + delta * delta * na * nb / n;
        let m3 = self.m3
            + other.m3
            + delta.powi(3) * na * nb * (na - nb) / (n * n)
            + 3.0 * delta * (na * other.m2 - nb * self.m2) / n;
        *self = Moments { count: self.count + other.count, mean, m2, m3 };
    }

    /// Fixed-shape pairwise reduction: leaves of 64 values merged in a
    /// balanced tree, so the result depends only on the input order.
    pub fn from_slice(values: &[f64]) -> Self {
        const LEAF: usize = 64;
        if values.len() <= LEAF {
            let mut acc = Moments::default();
            for &x in values {
                acc.push(x);
            }
            return acc;
        }
        let half = values.len().div_ceil(2 * LEAF) * LEAF;
        let mut left = Self::from_slice(&values[..half]);
        left.merge(&Self::from_slice(&values[half..]));
        left
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        (self.m2 / (self.count - 1) as f64).max(0.0)
    }

    /// Sample skewness `g1 = sqrt(n) m3 / m2^{3/2}`.
    pub fn skewness(&self) -> f64 {
        if self.count < 3 || self.m2 == 0.0 {
            return f64::NAN;
        }
        (self.count as f64).sqrt() * self.m3 / self.m2.powf(1.5)
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }
}

/// `P(X < xi)` for `X ~ N(0, sigma2)`.
pub fn normal_cdf(xi: f64, sigma2: f64) -> Result<f64> {
    check_sigma2(sigma2)?;
    Ok(std_normal_cdf(xi / sigma2.sqrt()))
}

fn check_sigma2(sigma2: f64) -> Result<()> {
    if !(sigma2 > 0.0) || !sigma2.is_finite() {
        return Err(Error::InvalidArgument(format!("variance {sigma2} must be positive")));
    }
    Ok(())
}

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

fn std_normal_sf(z: f64) -> f64 {
    0.5 * erfc(z / SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GofTest {
    KolmogorovSmirnov,
    AndersonDarling,
}

impl GofTest {
    pub fn name(self) -> &'static str {
        match self {
            GofTest::KolmogorovSmirnov => "KS",
            GofTest::AndersonDarling => "AD",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodnessOfFit {
    pub test: GofTest,
    pub statistic: f64,
    pub p_value: f64,
    pub n_samples: usize,
    pub sigma2_used: f64,
}

const MIN_GOF_SAMPLES: usize = 8;

fn sorted(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::InvalidArgument("samples contain NaN".into()));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    Ok(xs)
}

/// `sup_x |F_emp(x) - cdf(x)|` for any sample size.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no samples".into()));
    }
    let xs = sorted(samples)?;
    let n = xs.len() as f64;
    Ok(xs.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max((i + 1) as f64 / n - f).max(f - i as f64 / n)
    }))
}

/// `P(K > t)` for the Kolmogorov distribution.
pub fn kolmogorov_sf(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    let p = if t < 1.0 {
        // P(K <= t) = sqrt(2 pi)/t sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 t^2))
        let s: f64 = (1..=100)
            .map(|k| {
                let a = (2 * k - 1) as f64 * PI / t;
                (-a * a / 8.0).exp()
            })
            .sum();
        1.0 - (2.0 * PI).sqrt() / t * s
    } else {
        // 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2)
        2.0 * (1..=100)
            .map(|k| {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * (k * k) as f64 * t * t).exp()
            })
            .sum::<f64>()
    };
    p.clamp(0.0, 1.0)
}

/// One-sample Kolmogorov-Smirnov test against `N(0, sigma2)`; asymptotic
/// p-value with `sqrt(n)` scaling.
pub fn ks_test(samples: &[f64], sigma2: f64) -> Result<GoodnessOfFit> {
    check_sigma2(sigma2)?;
    if samples.len() < MIN_GOF_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "KS test needs at least {MIN_GOF_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    let sd = sigma2.sqrt();
    let d = ks_statistic(samples, |x| std_normal_cdf(x / sd))?;
    Ok(GoodnessOfFit {
        test: GofTest::KolmogorovSmirnov,
        statistic: d,
        p_value: kolmogorov_sf((samples.len() as f64).sqrt() * d),
        n_samples: samples.len(),
        sigma2_used: sigma2,
    })
}

/// Limiting CDF of the Anderson-Darling statistic, Marsaglia & Marsaglia (2004).
pub fn ad_limit_cdf(z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    let p = if z < 2.0 {
        (-1.2337141 / z).exp() / z.sqrt()
            * (2.00012 + (0.247105 - (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) * z)
    } else {
        (-(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) * z).exp()).exp()
    };
    p.clamp(0.0, 1.0)
}

/// Anderson-Darling test against the fully specified `N(0, sigma2)`.
pub fn ad_test(samples: &[f64], sigma2: f64) -> Result<GoodnessOfFit> {
    check_sigma2(sigma2)?;
    if samples.len() < MIN_GOF_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "AD test needs at least {MIN_GOF_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    let xs = sorted(samples)?;
    let sd = sigma2.sqrt();
    let n = xs.len();
    let nf = n as f64;
    let mut s = 0.0;
    for i in 0..n {
        let lower = std_normal_cdf(xs[i] / sd).ln();
        let upper = std_normal_sf(xs[n - 1 - i] / sd).ln();
        s += (2 * i + 1) as f64 * (lower + upper);
    }
    let a2 = (-nf - s / nf).max(0.0);
    let p_value = if a2.is_finite() { 1.0 - ad_limit_cdf(a2) } else { 0.0 };
    Ok(GoodnessOfFit {
        test: GofTest::AndersonDarling,
        statistic: a2,
        p_value: p_value.clamp(0.0, 1.0),
        n_samples: n,
        sigma2_used: sigma2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares of the mean count against `M`.
pub fn mean_slope(ms: &[f64], means: &[f64]) -> Result<LinearFit> {
    if ms.len() != means.len() {
        return Err(Error::LengthMismatch { expected: ms.len(), got: means.len() });
    }
    if ms.len() < 3 {
        return Err(Error::InvalidArgument("slope fit needs at least 3 grid points".into()));
    }
    let k = ms.len() as f64;
    let mx = ms.iter().sum::<f64>() / k;
    let my = means.iter().sum::<f64>() / k;
    let sxx: f64 = ms.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = ms.iter().zip(means).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = means.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("degenerate grid: all M equal".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).min(1.0) };
    Ok(LinearFit { slope, intercept: my - slope * mx, r2 })
}
