//! Closed-form means and variance candidates for both counting problems.
//!
//! Two variance expressions are carried side by side for the congruence
//! problem: the headline one,
//! `2^{m+1}/N^{m+n} prod(theta) omega_n (1 + 2/zeta_N(m+n) sum_{r in S_N} sum_{q>=1} (q-1)/(Nq+r)^{m+n})`,
//! and `2^m prod(theta) omega_n`, which is the value quoted where the limit
//! theorem for the window statistic is stated. Neither is preferred here;
//! the simulation harness measures which one the data supports.

use crate::error::{Error, Result};
use crate::model::{gcd, ApproximationProblem, Mode};
use crate::norms::omega_n;
use crate::special::{hurwitz_zeta, riemann_zeta, Certified};

/// `zeta_N(r) = sum_{k>=1, gcd(k,N)=1} k^{-r}`, via the Euler factors
/// `zeta(r) prod_{p | N} (1 - p^{-r})`.
pub fn zeta_n(r: f64, modulus: u64, tol: f64) -> Result<Certified> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be >= 1".into()));
    }
    let zeta = riemann_zeta(r, tol / 2.0)?;
    let factor: f64 = prime_divisors(modulus).iter().map(|&p| 1.0 - (p as f64).powf(-r)).product();
    let value = zeta.value * factor;
    // factor < 1, so the zeta error only shrinks
    let bound = zeta.bound * factor + 4.0 * f64::EPSILON * value;
    Ok(Certified { value, bound })
}

/// Direct partial sum of `zeta_N(r)` over `k <= terms` with the integral tail
/// bound `terms^{1-r}/(r-1)`.
pub fn zeta_n_direct(r: f64, modulus: u64, terms: u64) -> Result<Certified> {
    if !(r > 1.0) {
        return Err(Error::Divergent(format!("zeta exponent r={r} must exceed 1")));
    }
    if modulus == 0 || terms == 0 {
        return Err(Error::InvalidArgument("modulus and term count must be >= 1".into()));
    }
    let value: f64 = (1..=terms).rev().filter(|&k| gcd(k, modulus) == 1).map(|k| (k as f64).powf(-r)).sum();
    let tail = (terms as f64).powf(1.0 - r) / (r - 1.0);
    Ok(Certified { value, bound: tail + terms as f64 * f64::EPSILON * value })
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `S_N = { 0 <= i < N : gcd(i, N) = 1 }`; `S_1 = {0}`.
pub fn residue_set(modulus: u64) -> Vec<u64> {
    if modulus <= 1 {
        return vec![0];
    }
    (0..modulus).filter(|&i| gcd(i, modulus) == 1).collect()
}

/// `sum_{r in S_N} sum_{q>=1} (q-1)/(Nq+r)^{m+n}`.
///
/// With `a = 1 + r/N` each inner series equals
/// `N^{-d} (zeta(d-1, a) - a zeta(d, a))` in terms of the Hurwitz zeta, which
/// is evaluated with a certified error.
pub fn residue_double_sum(m: usize, n: usize, modulus: u64, tol: f64) -> Result<Certified> {
    let d = m + n;
    if d < 3 {
        return Err(Error::Divergent(format!("residue sum needs m+n >= 3, got {d}")));
    }
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be >= 1".into()));
    }
    let residues = residue_set(modulus);
    let df = d as f64;
    let nf = modulus as f64;
    let scale = nf.powf(-df);
    let each = tol / (scale * 6.0 * residues.len() as f64);
    let mut value = 0.0;
    let mut bound = 0.0;
    for &r in &residues {
        let a = 1.0 + r as f64 / nf;
        let lower = hurwitz_zeta(df - 1.0, a, each)?;
        let upper = hurwitz_zeta(df, a, each)?;
        value += scale * (lower.value - a * upper.value);
        bound += scale * (lower.bound + a * upper.bound);
    }
    bound += 4.0 * f64::EPSILON * value.abs() * residues.len() as f64;
    Ok(Certified { value, bound })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoreticalConstants {
    /// Slope of the mean in `log T`.
    pub c_mean: f64,
    /// Variance as given in the main statement of the limit theorem.
    pub sigma2_theorem: f64,
    /// Variance `2^m prod(theta) omega_n` as given for the window statistic.
    pub sigma2_proof_variant: f64,
    pub omega_n: f64,
    /// Congruence mode only.
    pub zeta_n: Option<Certified>,
    /// Congruence mode only.
    pub residue_double_sum: Option<Certified>,
    pub tolerance: f64,
}

pub fn constants_for(problem: &ApproximationProblem, tol: f64) -> Result<TheoreticalConstants> {
    let mut problem = problem.clone();
    problem.validate()?;
    if problem.orthant.is_some() {
        return Err(Error::InvalidArgument(
            "no closed-form constants for orthant-restricted counts; use the exact mean oracle".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let (m, n) = (problem.m, problem.n);
    let omega = omega_n(&problem.norm, n)?;
    let base = 2f64.powi(m as i32) * problem.theta_product() * omega;
    match &problem.mode {
        Mode::Inhomogeneous => Ok(TheoreticalConstants {
            c_mean: base,
            sigma2_theorem: base,
            sigma2_proof_variant: base,
            omega_n: omega,
            zeta_n: None,
            residue_double_sum: None,
            tolerance: tol,
        }),
        Mode::Congruence { modulus, .. } => {
            let d = (m + n) as i32;
            let scale = (*modulus as f64).powi(d);
            let zeta = zeta_n(d as f64, *modulus, tol)?;
            let sum = residue_double_sum(m, n, *modulus, tol)?;
            Ok(TheoreticalConstants {
                c_mean: base / scale,
                sigma2_theorem: 2.0 * base / scale * (1.0 + 2.0 * sum.value / zeta.value),
                sigma2_proof_variant: base,
                omega_n: omega,
                zeta_n: Some(zeta),
                residue_double_sum: Some(sum),
                tolerance: tol,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::NormSpec;
    use std::f64::consts::PI;

    #[test]
    fn zeta_n_examples() {
        let z = |n| zeta_n(2.0, n, 1e-12).unwrap().value;
        assert!((z(1) - PI * PI / 6.0).abs() < 1e-11);
        assert!((z(2) - PI * PI / 8.0).abs() < 1e-11);
        assert!((z(6) - PI * PI / 9.0).abs() < 1e-11);
        assert!(zeta_n(1.0, 2, 1e-10).is_err());
    }

    #[test]
    fn euler_product_matches_direct_series() {
        for modulus in 1..=30u64 {
            for r in [3.0, 4.0, 5.0] {
                let tol = 1e-9;
                let fast = zeta_n(r, modulus, tol).unwrap();
                let direct = zeta_n_direct(r, modulus, 200_000).unwrap();
                assert!(direct.bound < tol);
                assert!((fast.value - direct.value).abs() <= fast.bound + direct.bound, "N={modulus} r={r}");
            }
        }
    }

    #[test]
    fn residue_sets() {
        assert_eq!(residue_set(1), vec![0]);
        assert_eq!(residue_set(2), vec![1]);
        assert_eq!(residue_set(12), vec![1, 5, 7, 11]);
        assert_eq!(residue_set(7).len(), 6);
    }

    #[test]
    fn residue_sum_trivial_modulus_telescopes() {
        for d in 3..=6 {
            let s = residue_double_sum(2, d - 2, 1, 1e-12).unwrap();
            let want =
                riemann_zeta(d as f64 - 1.0, 1e-13).unwrap().value - riemann_zeta(d as f64, 1e-13).unwrap().value;
            assert!((s.value - want).abs() < 1e-11, "d={d}");
            assert!(s.bound <= 1e-12);
        }
    }

    #[test]
    fn residue_sum_against_reversed_direct_sum() {
        // N = 2, m + n = 3: S_2 = {1}, summand (q-1)/(2q+1)^3
        let q_max = 2_000_000u64;
        let direct: f64 = (1..=q_max).rev().map(|q| (q as f64 - 1.0) / (2.0 * q as f64 + 1.0).powi(3)).sum();
        // tail <= sum_{q>Q} q/(2q)^3 <= 1/(8Q)
        let tail = 1.0 / (8.0 * q_max as f64);
        let s = residue_double_sum(2, 1, 2, 1e-12).unwrap();
        assert!(s.value >= direct - 1e-12 && s.value <= direct + tail + 1e-12);
    }

    #[test]
    fn residue_sum_tolerance_contract() {
        for modulus in [1, 2, 3, 5, 12] {
            let coarse = residue_double_sum(2, 2, modulus, 1e-6).unwrap();
            let fine = residue_double_sum(2, 2, modulus, 1e-12).unwrap();
            assert!(coarse.bound <= 1e-6 && fine.bound <= 1e-12);
            assert!((coarse.value - fine.value).abs() <= 1e-6);
        }
        assert!(matches!(residue_double_sum(1, 1, 2, 1e-6), Err(Error::Divergent(_))));
    }

    fn base() -> ApproximationProblem {
        ApproximationProblem::new(2, 1, vec![1.0, 1.0]).with_norm(NormSpec::Sup)
    }

    #[test]
    fn inhomogeneous_constants() {
        let c = constants_for(&base(), 1e-12).unwrap();
        assert_eq!(c.c_mean, 8.0);
        assert_eq!(c.sigma2_theorem, 8.0);
        assert_eq!(c.sigma2_proof_variant, 8.0);
        assert!(c.zeta_n.is_none());
    }

    #[test]
    fn congruence_constants() {
        let c = constants_for(&base().with_congruence(vec![1, 1, 1], 2), 1e-12).unwrap();
        assert_eq!(c.c_mean, 1.0);
        assert_eq!(c.sigma2_proof_variant, 8.0);

        let c1 = constants_for(&base().with_congruence(vec![0, 0, 0], 1), 1e-12).unwrap();
        assert_eq!(c1.c_mean, 8.0);
        let z2 = zeta_n_direct(2.0, 1, 10_000_000).unwrap();
        let z3 = zeta_n_direct(3.0, 1, 100_000).unwrap();
        let want = 16.0 * (1.0 + 2.0 * (z2.value - z3.value) / z3.value);
        assert!((c1.sigma2_theorem - want).abs() < 1e-5, "{} vs {want}", c1.sigma2_theorem);
    }

    #[test]
    fn homogeneous_in_theta() {
        let lambda: f64 = 1.7;
        for problem in [base(), base().with_congruence(vec![1, 0, 1], 3)] {
            let scaled = ApproximationProblem { thetas: vec![lambda; 2], ..problem.clone() };
            let a = constants_for(&problem, 1e-12).unwrap();
            let b = constants_for(&scaled, 1e-12).unwrap();
            let k = lambda.powi(2);
            assert!((b.c_mean - k * a.c_mean).abs() < 1e-12 * b.c_mean);
            assert!((b.sigma2_theorem - k * a.sigma2_theorem).abs() < 1e-12 * b.sigma2_theorem);
            assert!((b.sigma2_proof_variant - k * a.sigma2_proof_variant).abs() < 1e-12 * b.sigma2_proof_variant);
        }
    }

    #[test]
    fn orthant_has_no_closed_form() {
        use crate::model::{OrthantRestriction, SignReq};
        let o = OrthantRestriction::new(vec![SignReq::Positive, SignReq::Any, SignReq::Any]).unwrap();
        assert!(constants_for(&base().with_orthant(o), 1e-12).is_err());
    }
}
