#![allow(dead_code)]

use dioclt::{ApproximationProblem, Mode, NormSpec, OrthantRestriction, SamplePoint, SignReq};
use rand::Rng;

pub fn random_weights(rng: &mut impl Rng, m: usize, n: usize) -> Vec<f64> {
    if m == 1 {
        return vec![n as f64];
    }
    let raw: Vec<f64> = (0..m).map(|_| rng.gen_range(0.2..1.0)).collect();
    let s: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|r| r / s * n as f64).collect();
    let head: f64 = w[..m - 1].iter().sum();
    w[m - 1] = n as f64 - head;
    w
}

pub fn random_orthant(rng: &mut impl Rng, len: usize) -> OrthantRestriction {
    const ALL: [SignReq; 5] =
        [SignReq::Any, SignReq::NonNegative, SignReq::Negative, SignReq::Positive, SignReq::NonPositive];
    loop {
        let signs: Vec<SignReq> = (0..len).map(|_| ALL[rng.gen_range(0..ALL.len())]).collect();
        if let Ok(o) = OrthantRestriction::new(signs) {
            return o;
        }
    }
}

/// Uniform entries, or with probability 1/3 multiples of 1/8 so that
/// boundary ties actually occur.
pub fn random_sample(rng: &mut impl Rng, problem: &ApproximationProblem) -> SamplePoint {
    let (m, n) = (problem.m, problem.n);
    let period = problem.u_period();
    let grid = rng.gen_bool(1.0 / 3.0);
    let mut draw = |scale: f64| {
        if grid {
            rng.gen_range(0..(8.0 * scale) as i64) as f64 / 8.0
        } else {
            rng.gen::<f64>() * scale
        }
    };
    let u = (0..m * n).map(|_| draw(period)).collect();
    let v = match problem.mode {
        Mode::Inhomogeneous => (0..m).map(|_| draw(1.0)).collect(),
        Mode::Congruence { .. } => vec![0.0; m],
    };
    SamplePoint { u, v }
}

/// A random problem in the small regime where brute force is cheap.
pub fn random_problem(rng: &mut impl Rng) -> ApproximationProblem {
    let m = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=2);
    let (euclidean, congruence, orthant) = (rng.gen_bool(0.5), rng.gen_bool(0.5), rng.gen_bool(0.4));
    problem_with(rng, m, n, euclidean, congruence, orthant)
}

/// Random thetas, weights, residues and sign pattern for a fixed shape.
pub fn problem_with(
    rng: &mut impl Rng,
    m: usize,
    n: usize,
    euclidean: bool,
    congruence: bool,
    orthant: bool,
) -> ApproximationProblem {
    let thetas = (0..m).map(|_| rng.gen_range(0.1..3.0)).collect();
    let mut p = ApproximationProblem::new(m, n, thetas).with_weights(random_weights(rng, m, n));
    p.norm = if euclidean { NormSpec::Euclidean } else { NormSpec::Sup };
    if congruence {
        let modulus = rng.gen_range(1..=4u64);
        let residues = (0..m + n).map(|_| rng.gen_range(-5..10i64)).collect();
        p = p.with_congruence(residues, modulus);
    }
    if orthant {
        p = p.with_orthant(random_orthant(rng, m + n));
    }
    p.validate().expect("random problem is valid");
    p
}

pub fn random_t(rng: &mut impl Rng) -> f64 {
    if rng.gen_bool(0.3) {
        rng.gen_range(2..=12) as f64
    } else {
        rng.gen_range(1.5..12.0)
    }
}

/// `omega_n = int_{S^{n-1}} |z|^{-n} dsigma(z)` by midpoint quadrature in
/// spherical coordinates; `y = r z` turns the shell integral into
/// `int dr/r = M` times this.
pub fn polar_omega(norm: &NormSpec, n: usize, steps: usize) -> f64 {
    use std::f64::consts::PI;
    match n {
        1 => norm.eval(&[1.0]).powi(-1) + norm.eval(&[-1.0]).powi(-1),
        2 => {
            let h = 2.0 * PI / steps as f64;
            (0..steps)
                .map(|k| {
                    let phi = (k as f64 + 0.5) * h;
                    norm.eval(&[phi.cos(), phi.sin()]).powi(-2) * h
                })
                .sum()
        }
        3 => {
            let (ht, hp) = (PI / steps as f64, 2.0 * PI / (2 * steps) as f64);
            let mut total = 0.0;
            for i in 0..steps {
                let th = (i as f64 + 0.5) * ht;
                let (st, ct) = th.sin_cos();
                for j in 0..2 * steps {
                    let phi = (j as f64 + 0.5) * hp;
                    let z = [st * phi.cos(), st * phi.sin(), ct];
                    total += norm.eval(&z).powi(-3) * st * ht * hp;
                }
            }
            total
        }
        _ => panic!("polar_omega supports n <= 3"),
    }
}
