//! Gamma and Beta on the positive real axis.

use std::f64::consts::PI;

use super::Rational;
use crate::error::Error;

const LANCZOS_G: f64 = 7.0;
// Published table, kept digit for digit.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps us on the positive axis.
        return ln_gamma(x + 1.0) - x.ln();
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)` for positive rational arguments.
pub fn beta_value(a: &Rational, b: &Rational) -> Result<f64, Error> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::Domain(format!(
            "beta_value requires positive arguments, got ({a}, {b})"
        )));
    }
    let (a, b) = (a.to_f64(), b.to_f64());
    Ok((ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_at_integers_and_halves() {
        let mut fact = 1.0f64;
        for n in 1..25 {
            assert!(rel(ln_gamma(n as f64 + 1.0).exp(), fact * n as f64) < 1e-13);
            fact *= n as f64;
        }
        assert!(rel(ln_gamma(0.5).exp(), PI.sqrt()) < 1e-14);
        assert!(rel(ln_gamma(0.125).exp(), 7.533_941_598_797_612) < 1e-13);
    }

    #[test]
    fn beta_examples() {
        assert!(rel(beta_value(&rat(1, 1), &rat(1, 1)).unwrap(), 1.0) < 1e-12);
        // Γ(3/2)² / Γ(3) = π/8.
        assert!(rel(beta_value(&rat(3, 2), &rat(3, 2)).unwrap(), PI / 8.0) < 1e-12);
        // 1!·2!/4!
        assert!(rel(beta_value(&rat(2, 1), &rat(3, 1)).unwrap(), 1.0 / 12.0) < 1e-12);
    }

    #[test]
    fn beta_matches_factorial_identity_on_integers() {
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        for a in 1..12u32 {
            for b in 1..12u32 {
                let want = fact(a - 1) * fact(b - 1) / fact(a + b - 1);
                let got = beta_value(&rat(a.into(), 1), &rat(b.into(), 1)).unwrap();
                assert!(rel(got, want) < 1e-12, "B({a},{b})");
            }
        }
    }

    #[test]
    fn beta_rejects_non_positive() {
        assert!(beta_value(&rat(0, 1), &rat(1, 1)).is_err());
        assert!(beta_value(&rat(1, 1), &rat(-1, 2)).is_err());
    }
}
