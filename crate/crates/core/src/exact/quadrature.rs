//! Numerical evaluation of `∫₀^∞ u^{s−1} (1+u)^{−t} du`.
//!
//! The half-line is split at `u = 1` and the tail is folded back with
//! `u ↦ 1/u`, so both pieces have the form `∫₀¹ w^{α−1} (1+w)^{−t} dw` with
//! `α = s` and `α = t − s`. Each piece is integrated on the graded mesh
//! `[2^{−j−1}, 2^{−j}]` with adaptive Gauss–Legendre bisection on every cell;
//! the innermost interval `[0, 2^{−J}]` is summed from the binomial series of
//! `(1+w)^{−t}` integrated term by term. No Gamma function is involved, so the
//! result is an independent check on [`beta_value`](super::beta_value).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::Rational;

const GAUSS_POINTS: usize = 20;
const GRADED_CELLS: i32 = 30;
const CELL_TOL: f64 = 1e-14;
const MAX_DEPTH: u32 = 30;

/// Result of the improper integral: either finite, or divergent at one of
/// the endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Quadrature {
    Converged(f64),
    Divergent,
}

impl Quadrature {
    pub fn value(self) -> Option<f64> {
        match self {
            Quadrature::Converged(v) => Some(v),
            Quadrature::Divergent => None,
        }
    }
}

/// `∫₀^∞ u^{s−1} (1+u)^{−t} du`; converges iff `0 < s < t`.
pub fn quadrature_integral(s: &Rational, t: &Rational) -> Quadrature {
    if !s.is_positive() || s >= t {
        return Quadrature::Divergent;
    }
    let tail = t - s;
    let (s, tail, t) = (s.to_f64(), tail.to_f64(), t.to_f64());
    Quadrature::Converged(unit_piece(s, t) + unit_piece(tail, t))
}

/// `∫₀¹ w^{α−1} (1+w)^{−t} dw` for `α > 0`.
fn unit_piece(alpha: f64, t: f64) -> f64 {
    let f = |w: f64| w.powf(alpha - 1.0) * (1.0 + w).powf(-t);
    let eps = 0.5f64.powi(GRADED_CELLS);
    let mut total = near_zero_series(alpha, t, eps);
    // Smallest cells first so the sum accumulates from small to large.
    for j in (0..GRADED_CELLS).rev() {
        let hi = 0.5f64.powi(j);
        let lo = 0.5 * hi;
        total += adaptive(&f, lo, hi, gauss(&f, lo, hi), 0);
    }
    total
}

/// `∫₀^ε w^{α−1}(1+w)^{−t} dw = Σ_j C(−t, j) ε^{α+j}/(α+j)` for small ε.
fn near_zero_series(alpha: f64, t: f64, eps: f64) -> f64 {
    let lead = eps.powf(alpha);
    let mut coef = 1.0; // C(−t, j) ε^j
    let mut sum = 0.0;
    for j in 0..64 {
        let term = coef / (alpha + j as f64);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        coef *= (-t - j as f64) / (j as f64 + 1.0) * eps;
    }
    lead * sum
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, depth: u32) -> f64 {
    let mid = 0.5 * (a + b);
    let left = gauss(f, a, mid);
    let right = gauss(f, mid, b);
    let refined = left + right;
    if depth >= MAX_DEPTH || (refined - whole).abs() <= CELL_TOL * refined.abs() {
        return refined;
    }
    adaptive(f, a, mid, left, depth + 1) + adaptive(f, mid, b, right, depth + 1)
}

fn gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = legendre_rule();
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    nodes
        .iter()
        .zip(weights)
        .map(|(x, w)| w * f(center + half * x))
        .sum::<f64>()
        * half
}

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on P_n.
fn legendre_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_POINTS;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        (nodes, weights)
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let (nodes, weights) = legendre_rule();
        assert!((weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // ∫ x^38 over [−1, 1] = 2/39, exact for a 20-point rule.
        let m: f64 = nodes.iter().zip(weights).map(|(x, w)| w * x.powi(38)).sum();
        assert!(rel(m, 2.0 / 39.0) < 1e-13);
    }

    #[test]
    fn examples() {
        let one = quadrature_integral(&rat(1, 1), &rat(2, 1)).value().unwrap();
        assert!(rel(one, 1.0) < 1e-12);
        let pi8 = quadrature_integral(&rat(3, 2), &rat(3, 1)).value().unwrap();
        assert!(rel(pi8, PI / 8.0) < 1e-12);
        assert_eq!(
            quadrature_integral(&rat(1, 1), &rat(1, 1)),
            Quadrature::Divergent
        );
    }

    #[test]
    fn divergence_boundary() {
        assert_eq!(
            quadrature_integral(&rat(0, 1), &rat(2, 1)),
            Quadrature::Divergent
        );
        assert_eq!(
            quadrature_integral(&rat(-1, 2), &rat(2, 1)),
            Quadrature::Divergent
        );
        assert_eq!(
            quadrature_integral(&rat(3, 1), &rat(2, 1)),
            Quadrature::Divergent
        );
        assert!(quadrature_integral(&rat(1, 100), &rat(2, 1))
            .value()
            .is_some());
    }

    #[test]
    fn strong_endpoint_singularity() {
        // ∫₀^∞ u^{−7/8}(1+u)^{−1} du = π / sin(π/8).
        let got = quadrature_integral(&rat(1, 8), &rat(1, 1)).value().unwrap();
        assert!(rel(got, PI / (PI / 8.0).sin()) < 1e-10, "{got}");
    }
}
