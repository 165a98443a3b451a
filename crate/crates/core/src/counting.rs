//! Exact solution counts for the weighted approximation inequalities.
//!
//! For every denominator vector `q` in range, the number of admissible `p`
//! factorizes over the `m` forms, and each factor is the number of integers
//! (or members of a residue class) in an open interval. Those factors are
//! computed with floor arithmetic and then snapped onto the literal predicate
//! `|p + c| < h` evaluated in double precision, so the fast path and the
//! brute-force oracle agree bit for bit.

use crate::error::{Error, Result};
use crate::model::{ApproximationProblem, Mode, QLower, SamplePoint, SignReq};

/// Default limit on the number of candidate `q` vectors one count may visit.
pub const DEFAULT_Q_BUDGET: u64 = 1 << 34;

/// Plans with at most this many candidate vectors keep a precomputed table.
const TABLE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountResult {
    pub total: u64,
    /// Nonzero candidate vectors `q` visited.
    pub q_enumerated: u64,
    pub t: f64,
}

/// Per-annulus counts `e^s <= |q| < e^{s+1}`, `s = 0..M-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSeries {
    pub windows: usize,
    pub counts: Vec<u64>,
    pub sample: SamplePoint,
}

impl WindowSeries {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Lower edge of annulus `s`: `1` for `s = 0`, otherwise `e^s`.
pub fn annulus_edge(s: usize) -> f64 {
    if s == 0 {
        1.0
    } else {
        (s as f64).exp()
    }
}

/// An interval in the coordinate `x = p + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Window {
    lo: f64,
    lo_closed: bool,
    hi: f64,
    hi_closed: bool,
}

impl Window {
    fn new(h: f64, sign: SignReq) -> Self {
        let (lo, lo_closed, hi, hi_closed) = match sign {
            SignReq::Any => (-h, false, h, false),
            SignReq::NonNegative => (0.0, true, h, false),
            SignReq::Positive => (0.0, false, h, false),
            SignReq::Negative => (-h, false, 0.0, false),
            SignReq::NonPositive => (-h, false, 0.0, true),
        };
        Self { lo, lo_closed, hi, hi_closed }
    }

    #[inline]
    fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }
}

/// Number of `p = residue (mod modulus)` with `p + c` inside `window`.
fn count_progression(c: f64, window: Window, residue: i64, modulus: i64) -> u64 {
    let nf = modulus as f64;
    let rf = residue as f64;
    let inside = |k: i64| window.contains((residue + modulus * k) as f64 + c);
    let k_lo = ((window.lo - c - rf) / nf).ceil();
    let k_hi = ((window.hi - c - rf) / nf).floor();
    if !(k_lo.is_finite() && k_hi.is_finite()) || k_lo.abs() > 4e15 || k_hi.abs() > 4e15 {
        return 0;
    }
    let (k_lo, k_hi) = (k_lo as i64, k_hi as i64);
    let Some(mut first) = (k_lo - 1..=k_hi.max(k_lo) + 1).find(|&k| inside(k)) else {
        return 0;
    };
    while inside(first - 1) {
        first -= 1;
    }
    let mut last = (k_hi + 1).max(first);
    while last > first && !inside(last) {
        last -= 1;
    }
    while inside(last + 1) {
        last += 1;
    }
    (last - first + 1) as u64
}

/// Number of integers `p` with `|p + c| < h`.
pub fn count_interval(c: f64, h: f64) -> u64 {
    if !(h > 0.0) {
        return 0;
    }
    count_progression(c, Window::new(h, SignReq::Any), 0, 1)
}

/// Number of integers `p = r (mod modulus)` with `|p + c| < h`.
pub fn count_residue_interval(c: f64, h: f64, r: i64, modulus: u64) -> u64 {
    if !(h > 0.0) || modulus == 0 {
        return 0;
    }
    let modulus = modulus as i64;
    count_progression(c, Window::new(h, SignReq::Any), r.rem_euclid(modulus), modulus)
}

/// `<u_i, q> + shift`, shared by the fast path and the oracle.
#[inline]
pub(crate) fn form_offset(row: &[f64], q: &[f64], shift: f64) -> f64 {
    row.iter().zip(q).fold(0.0, |acc, (u, x)| acc + u * x) + shift
}

#[inline]
fn fill_thresholds(problem: &ApproximationProblem, norm: f64, out: &mut [f64]) {
    for ((h, theta), w) in out.iter_mut().zip(&problem.thetas).zip(&problem.weights) {
        *h = theta * norm.powf(-w);
    }
}

/// Everything about a count that does not depend on the sample point:
/// the candidate `q` vectors, their norms and the per-form thresholds.
#[derive(Debug, Clone)]
pub struct QPlan {
    problem: ApproximationProblem,
    t: f64,
    /// Per coordinate: smallest candidate value and number of candidates.
    axes: Vec<(i64, u64)>,
    modulus: i64,
    form_residues: Vec<i64>,
    box_points: u64,
    table: Option<Table>,
}

#[derive(Debug, Clone, Default)]
struct Table {
    q: Vec<f64>,
    norm: Vec<f64>,
    h: Vec<f64>,
}

impl QPlan {
    pub fn new(problem: &ApproximationProblem, t: f64) -> Result<Self> {
        Self::with_budget(problem, t, DEFAULT_Q_BUDGET)
    }

    pub fn with_budget(problem: &ApproximationProblem, t: f64, budget: u64) -> Result<Self> {
        let mut problem = problem.clone();
        problem.validate()?;
        if !(t > 1.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!("T={t} must be a finite real > 1")));
        }
        let (m, n) = (problem.m, problem.n);
        let modulus = problem.mode.modulus() as i64;
        let residues: Vec<i64> = match &problem.mode {
            Mode::Inhomogeneous => vec![0; m + n],
            Mode::Congruence { residues, .. } => residues.clone(),
        };
        let bound = t.ceil();
        let needed = (2.0 * bound + 1.0).powi(n as i32) / (modulus as f64).powi(n as i32);
        if needed > budget as f64 {
            return Err(Error::ResourceBudget { needed, limit: budget });
        }
        let bound = bound as i64;
        let axes: Vec<(i64, u64)> = residues[m..]
            .iter()
            .map(|&r| {
                let k_min = (-bound - r).div_euclid(modulus) + i64::from((-bound - r).rem_euclid(modulus) != 0);
                let k_max = (bound - r).div_euclid(modulus);
                (r + modulus * k_min, (k_max - k_min + 1).max(0) as u64)
            })
            .collect();
        let box_points = axes.iter().map(|a| a.1).product();
        let mut plan =
            Self { problem, t, axes, modulus, form_residues: residues[..m].to_vec(), box_points, table: None };
        if box_points <= TABLE_LIMIT {
            let mut table = Table::default();
            let mut h = vec![0.0; m];
            plan.scan(|q, norm| {
                fill_thresholds(&plan.problem, norm, &mut h);
                table.q.extend_from_slice(q);
                table.norm.push(norm);
                table.h.extend_from_slice(&h);
            });
            plan.table = Some(table);
        }
        Ok(plan)
    }

    pub fn problem(&self) -> &ApproximationProblem {
        &self.problem
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Nonzero candidate vectors in the enumeration box.
    pub fn q_enumerated(&self) -> u64 {
        self.box_points - u64::from(self.contains_origin())
    }

    fn contains_origin(&self) -> bool {
        self.axes.iter().all(|&(first, len)| {
            first <= 0 && first + self.modulus * (len as i64 - 1) >= 0 && first.rem_euclid(self.modulus) == 0
        })
    }

    /// Visits every nonzero candidate `q` with admissible norm, lexicographically.
    fn scan(&self, mut f: impl FnMut(&[f64], f64)) {
        let n = self.problem.n;
        if self.axes.iter().any(|a| a.1 == 0) {
            return;
        }
        let mut idx = vec![0u64; n];
        let mut q: Vec<f64> = self.axes.iter().map(|a| a.0 as f64).collect();
        loop {
            if q.iter().any(|&x| x != 0.0) {
                let norm = self.problem.norm.eval(&q);
                if self.problem.q_lower.admits(norm) && norm < self.t {
                    f(&q, norm);
                }
            }
            // odometer, last coordinate fastest
            let mut j = n;
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < self.axes[j].1 {
                    q[j] = (self.axes[j].0 + self.modulus * idx[j] as i64) as f64;
                    break;
                }
                idx[j] = 0;
                q[j] = self.axes[j].0 as f64;
            }
        }
    }

    /// Visits every admissible `q` with its norm and thresholds.
    pub fn for_each_q(&self, mut f: impl FnMut(&[f64], f64, &[f64])) {
        match &self.table {
            Some(table) => {
                let (n, m) = (self.problem.n, self.problem.m);
                for (k, &norm) in table.norm.iter().enumerate() {
                    f(&table.q[k * n..(k + 1) * n], norm, &table.h[k * m..(k + 1) * m]);
                }
            }
            None => {
                let mut h = vec![0.0; self.problem.m];
                self.scan(|q, norm| {
                    fill_thresholds(&self.problem, norm, &mut h);
                    f(q, norm, &h);
                });
            }
        }
    }

    /// Number of admissible `p` for one `q`, `None` on overflow.
    #[inline]
    fn solutions_at(&self, sample: &SamplePoint, q: &[f64], h: &[f64]) -> Option<u64> {
        let p = &self.problem;
        let (m, n) = (p.m, p.n);
        if let Some(orthant) = &p.orthant {
            if !orthant.q_signs(m).iter().zip(q).all(|(s, &x)| s.admits(x)) {
                return Some(0);
            }
        }
        let congruence = p.mode.is_congruence();
        let mut product = 1u64;
        for i in 0..m {
            let shift = if congruence { 0.0 } else { sample.v[i] };
            let c = form_offset(sample.row(i, n), q, shift);
            let sign = p.orthant.as_ref().map_or(SignReq::Any, |o| o.form_signs(m)[i]);
            let k = count_progression(c, Window::new(h[i], sign), self.form_residues[i], self.modulus);
            if k == 0 {
                return Some(0);
            }
            product = product.checked_mul(k)?;
        }
        Some(product)
    }

    /// Calls `f(norm, count)` for every admissible `q` with at least one solution.
    pub fn for_each_count(&self, sample: &SamplePoint, mut f: impl FnMut(f64, u64)) -> Result<()> {
        sample.check(&self.problem)?;
        let mut overflow = false;
        self.for_each_q(|q, norm, h| {
            if overflow {
                return;
            }
            match self.solutions_at(sample, q, h) {
                Some(0) => {}
                Some(k) => f(norm, k),
                None => overflow = true,
            }
        });
        if overflow {
            Err(Error::CountOverflow)
        } else {
            Ok(())
        }
    }

    pub fn count(&self, sample: &SamplePoint) -> Result<CountResult> {
        let mut total = 0u64;
        let mut overflow = false;
        self.for_each_count(sample, |_, k| match total.checked_add(k) {
            Some(t) => total = t,
            None => overflow = true,
        })?;
        if overflow {
            return Err(Error::CountOverflow);
        }
        Ok(CountResult { total, q_enumerated: self.q_enumerated(), t: self.t })
    }
}

/// `Delta_T` (inhomogeneous) or `Delta_{T,v,N}` (congruence), restricted to the
/// problem's orthant when one is set.
pub fn delta(problem: &ApproximationProblem, sample: &SamplePoint, t: f64) -> Result<CountResult> {
    QPlan::new(problem, t)?.count(sample)
}

pub fn delta_with_budget(
    problem: &ApproximationProblem,
    sample: &SamplePoint,
    t: f64,
    budget: u64,
) -> Result<CountResult> {
    QPlan::with_budget(problem, t, budget)?.count(sample)
}

/// Orthant-restricted count; the problem must carry a restriction.
pub fn orthant_count(problem: &ApproximationProblem, sample: &SamplePoint, t: f64) -> Result<CountResult> {
    if problem.orthant.is_none() {
        return Err(Error::InvalidArgument("problem has no orthant restriction".into()));
    }
    delta(problem, sample, t)
}

/// Counts per annulus `e^s <= |q| < e^{s+1}` for `s < M`. The lower end of the
/// range is forced to `1 <= |q|`.
pub fn window_counts(problem: &ApproximationProblem, sample: &SamplePoint, windows: usize) -> Result<WindowSeries> {
    window_counts_with_budget(problem, sample, windows, DEFAULT_Q_BUDGET)
}

pub fn window_counts_with_budget(
    problem: &ApproximationProblem,
    sample: &SamplePoint,
    windows: usize,
    budget: u64,
) -> Result<WindowSeries> {
    if windows == 0 {
        return Err(Error::InvalidArgument("M must be >= 1".into()));
    }
    let edges: Vec<f64> = (0..=windows).map(annulus_edge).collect();
    let problem = problem.clone().with_q_lower(QLower::Inclusive1);
    let plan = QPlan::with_budget(&problem, edges[windows], budget)?;
    let mut counts = vec![0u64; windows];
    let mut overflow = false;
    plan.for_each_count(sample, |norm, k| {
        let mut s = (norm.ln().floor().max(0.0) as usize).min(windows - 1);
        while s > 0 && norm < edges[s] {
            s -= 1;
        }
        while s + 1 < windows && norm >= edges[s + 1] {
            s += 1;
        }
        match counts[s].checked_add(k) {
            Some(c) => counts[s] = c,
            None => overflow = true,
        }
    })?;
    if overflow {
        return Err(Error::CountOverflow);
    }
    Ok(WindowSeries { windows, counts, sample: sample.clone() })
}

/// A `p` box half-width that covers every solution with `|q| < t`.
pub fn sufficient_p_box(problem: &ApproximationProblem, sample: &SamplePoint, t: f64) -> i64 {
    let (m, n) = (problem.m, problem.n);
    let b = t.ceil();
    (0..m)
        .map(|i| {
            let row: f64 = sample.row(i, n).iter().map(|u| u.abs() * b).sum();
            let shift = if problem.mode.is_congruence() { 0.0 } else { sample.v[i].abs() };
            (problem.thetas[i] + row + shift).ceil() as i64 + 1
        })
        .max()
        .unwrap_or(1)
}

/// Literal enumeration of all `(p, q)` in boxes, testing the inequalities,
/// congruences and sign conditions one tuple at a time.
pub fn brute_force_delta(
    problem: &ApproximationProblem,
    sample: &SamplePoint,
    t: f64,
    p_box: i64,
) -> Result<CountResult> {
    let q_lower = problem.q_lower;
    brute_force_range(problem, sample, t, p_box, |norm| q_lower.admits(norm) && norm < t)
}

/// Brute-force count restricted to annulus `s`.
pub fn brute_force_annulus(
    problem: &ApproximationProblem,
    sample: &SamplePoint,
    s: usize,
    p_box: i64,
) -> Result<CountResult> {
    let (lo, hi) = (annulus_edge(s), annulus_edge(s + 1));
    brute_force_range(problem, sample, hi, p_box, |norm| norm >= lo && norm < hi)
}

fn brute_force_range(
    problem: &ApproximationProblem,
    sample: &SamplePoint,
    t: f64,
    p_box: i64,
    admit: impl Fn(f64) -> bool,
) -> Result<CountResult> {
    let mut problem = problem.clone();
    problem.validate()?;
    sample.check(&problem)?;
    if !(t > 1.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("T={t} must be a finite real > 1")));
    }
    let need = sufficient_p_box(&problem, sample, t);
    if p_box < need {
        return Err(Error::InvalidArgument(format!("p_box={p_box} too small, need {need}")));
    }
    let (m, n) = (problem.m, problem.n);
    let modulus = problem.mode.modulus() as i64;
    let residues: Vec<i64> = match &problem.mode {
        Mode::Inhomogeneous => vec![0; m + n],
        Mode::Congruence { residues, .. } => residues.clone(),
    };
    let congruence = problem.mode.is_congruence();
    let signs = problem.orthant.as_ref().map(|o| o.signs().to_vec());
    let bound = t.ceil() as i64;

    let mut total = 0u64;
    let mut visited = 0u64;
    let mut qi = vec![-bound; n];
    let mut q = vec![0.0; n];
    let mut h = vec![0.0; m];
    let mut c = vec![0.0; m];
    'outer: loop {
        if qi.iter().any(|&x| x != 0) {
            visited += 1;
            for (dst, &src) in q.iter_mut().zip(&qi) {
                *dst = src as f64;
            }
            let norm = problem.norm.eval(&q);
            let q_ok = admit(norm)
                && qi.iter().zip(&residues[m..]).all(|(&x, &r)| (x - r).rem_euclid(modulus) == 0)
                && signs.as_ref().is_none_or(|s| s[m..].iter().zip(&q).all(|(s, &x)| s.admits(x)));
            if q_ok {
                fill_thresholds(&problem, norm, &mut h);
                for i in 0..m {
                    let shift = if congruence { 0.0 } else { sample.v[i] };
                    c[i] = form_offset(sample.row(i, n), &q, shift);
                }
                let accept = |i: usize, p: i64| -> bool {
                    let x = p as f64 + c[i];
                    (p - residues[i]).rem_euclid(modulus) == 0
                        && x.abs() < h[i]
                        && signs.as_ref().is_none_or(|s| s[i].admits(x))
                };
                total = total.checked_add(enumerate_p(0, m, p_box, &accept)).ok_or(Error::CountOverflow)?;
            }
        }
        let mut j = n;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            if qi[j] < bound {
                qi[j] += 1;
                break;
            }
            qi[j] = -bound;
        }
    }
    Ok(CountResult { total, q_enumerated: visited, t })
}

/// Counts tuples `(p_level, .., p_{m-1})` in the box accepted coordinate-wise.
fn enumerate_p(level: usize, m: usize, p_box: i64, accept: &impl Fn(usize, i64) -> bool) -> u64 {
    if level == m {
        return 1;
    }
    let mut count = 0;
    for p in -p_box..=p_box {
        if accept(level, p) {
            count += enumerate_p(level + 1, m, p_box, accept);
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OrthantRestriction;

    fn brute_interval(c: f64, h: f64, r: i64, modulus: i64) -> u64 {
        (-200i64..=200).filter(|p| (p - r).rem_euclid(modulus) == 0 && (*p as f64 + c).abs() < h).count() as u64
    }

    #[test]
    fn interval_examples() {
        assert_eq!(count_interval(0.5, 0.5), 0);
        assert_eq!(count_interval(0.0, 1.5), 3);
        assert_eq!(count_interval(-2.3, 3.1), brute_interval(-2.3, 3.1, 0, 1));
        assert_eq!(count_interval(-2.3, 3.1), 6);
        assert_eq!(count_interval(0.0, 1.0), 1);
    }

    #[test]
    fn residue_interval_examples() {
        assert_eq!(count_residue_interval(0.0, 0.9, 1, 2), 0);
        assert_eq!(count_residue_interval(0.4, 5.0, 2, 3), brute_interval(0.4, 5.0, 2, 3));
        assert_eq!(count_residue_interval(0.4, 5.0, 2, 3), 3);
        assert_eq!(count_residue_interval(0.4, 5.0, -1, 3), 3);
        for &(c, h) in &[(0.3, 0.2), (-7.25, 3.0), (12.5, 0.5), (0.0, 4.0)] {
            assert_eq!(count_residue_interval(c, h, 0, 1), count_interval(c, h));
        }
    }

    #[test]
    fn interval_counts_match_scan() {
        let mut x = 0.123_456_789f64;
        for _ in 0..2000 {
            x = (x * 9301.0 + 0.49297).fract();
            let c = (x - 0.5) * 60.0;
            let h = x * 9.0 + 1e-3;
            for modulus in 1..5 {
                for r in 0..modulus {
                    assert_eq!(
                        count_residue_interval(c, h, r, modulus as u64),
                        brute_interval(c, h, r, modulus),
                        "c={c} h={h} r={r} N={modulus}"
                    );
                }
            }
        }
    }

    #[test]
    fn sign_windows() {
        // integers in (-1.2, 1.2) shifted by 0: {-1, 0, 1}
        let w = |s| count_progression(0.0, Window::new(1.2, s), 0, 1);
        assert_eq!(w(SignReq::NonNegative), 2);
        assert_eq!(w(SignReq::Positive), 1);
        assert_eq!(w(SignReq::Negative), 1);
        assert_eq!(w(SignReq::NonPositive), 2);
    }

    fn toy() -> ApproximationProblem {
        ApproximationProblem::new(2, 1, vec![0.25, 0.25])
    }

    #[test]
    fn zero_sample_inhomogeneous() {
        let s = SamplePoint::zeros(2, 1);
        let r = delta(&toy(), &s, 10.0).unwrap();
        assert_eq!(r.total, 18);
        assert_eq!(r.q_enumerated, 20);
        assert_eq!(brute_force_delta(&toy(), &s, 10.0, 3).unwrap().q_enumerated, 20);
        assert_eq!(brute_force_delta(&toy(), &s, 10.0, 3).unwrap().total, 18);
    }

    #[test]
    fn zero_sample_parity() {
        let p = toy().with_congruence(vec![1, 1, 1], 2);
        let s = SamplePoint::zeros(2, 1);
        assert_eq!(delta(&p, &s, 10.0).unwrap().total, 0);
        assert_eq!(brute_force_delta(&p, &s, 10.0, 3).unwrap().total, 0);
    }

    #[test]
    fn positive_q_half() {
        let o = OrthantRestriction::new(vec![SignReq::Any, SignReq::Any, SignReq::Positive]).unwrap();
        let p = toy().with_orthant(o);
        let s = SamplePoint::zeros(2, 1);
        assert_eq!(orthant_count(&p, &s, 10.0).unwrap().total, 9);
        assert!(orthant_count(&toy(), &s, 10.0).is_err());
    }

    #[test]
    fn t_must_exceed_one() {
        let s = SamplePoint::zeros(2, 1);
        assert!(matches!(delta(&toy(), &s, 1.0), Err(Error::InvalidArgument(_))));
        assert!(delta(&toy(), &s, f64::NAN).is_err());
    }

    #[test]
    fn budget_guard() {
        let p = ApproximationProblem::new(2, 2, vec![1.0, 1.0]);
        let s = SamplePoint::zeros(2, 2);
        assert!(matches!(delta_with_budget(&p, &s, 1e4, 1000), Err(Error::ResourceBudget { .. })));
    }

    #[test]
    fn overflow_reported() {
        // huge thresholds: every q admits ~1e12 values of p per form
        let p = ApproximationProblem::new(2, 1, vec![1e12, 1e12]);
        let s = SamplePoint::zeros(2, 1);
        assert!(matches!(delta(&p, &s, 3.0), Err(Error::CountOverflow)));
    }

    #[test]
    fn streaming_path_matches_table() {
        // box (2*2049+1)^2 > TABLE_LIMIT forces the streaming path
        let p = ApproximationProblem::new(2, 2, vec![0.7, 1.3]);
        let s = SamplePoint { u: vec![0.31, 0.77, 0.05, 0.59], v: vec![0.4, 0.9] };
        let big = QPlan::new(&p, 2048.5).unwrap();
        assert!(big.table.is_none());
        let mut per_norm_stream = 0u64;
        big.for_each_count(&s, |norm, k| {
            if norm < 30.0 {
                per_norm_stream += k
            }
        })
        .unwrap();
        assert_eq!(per_norm_stream, delta(&p, &s, 30.0).unwrap().total);
    }

    #[test]
    fn window_single() {
        let p = ApproximationProblem::new(2, 1, vec![1.0, 1.0]);
        let s = SamplePoint { u: vec![0.3, 0.8], v: vec![0.1, 0.6] };
        let w = window_counts(&p, &s, 1).unwrap();
        let d = delta(&p.clone().with_q_lower(QLower::Inclusive1), &s, 1f64.exp()).unwrap();
        assert_eq!(w.counts, vec![d.total]);
        assert!(window_counts(&p, &s, 0).is_err());
    }

    #[test]
    fn brute_force_rejects_small_p_box() {
        let p = ApproximationProblem::new(2, 1, vec![1.0, 1.0]);
        let s = SamplePoint { u: vec![0.9, 0.9], v: vec![0.5, 0.5] };
        assert!(brute_force_delta(&p, &s, 10.0, 3).is_err());
        let need = sufficient_p_box(&p, &s, 10.0);
        assert!(brute_force_delta(&p, &s, 10.0, need).is_ok());
    }
}
