//! Invariant hermitian forms.
//!
//! On the principal series the u_ℝ-invariant form is diagonal with
//!
//! ```text
//! V(n) = 4π ∫₀^∞ u^{n+(λ−1)/2} (1+u)^{−(λ+1)} du = 4π B(n + (λ+1)/2, (λ+1)/2 − n),
//! ```
//!
//! convergent for `|n| < (λ+1)/2` and continued beyond by the integration by
//! parts recurrence `V(n+1)/V(n) = (2n+λ+1)/(λ−1−2n)`. Values are stored as an
//! exact rational ratio to the reference vector (`n₀ = 0` or `½`) together with
//! the floating magnitude of the reference; signs never depend on floats.
//!
//! On a point module the form is `P(k) = (−1)^k k! ∏_{j=1}^k (m+j)`, exactly.
//! The g_ℝ-invariant form is `(v, v)_g = (θv, v)_u`.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{beta_value, HalfInt, Rational, Sign};
use crate::modules::{
    act, basis_window, theta_sign, BasisVector, Generator, LinComb, ModuleSpec, PrincipalSeries,
    Realization,
};

/// A diagonal form value relative to the reference vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormValue {
    pub sign: Sign,
    /// Exact `value / value(reference)`; absent at a pole.
    pub ratio_to_reference: Option<Rational>,
    pub magnitude: Option<f64>,
    /// Absolute value at the reference vector, including the factor 4π on
    /// the principal series. Infinite when the reference itself sits on a pole.
    pub reference_magnitude: f64,
}

impl FormValue {
    fn finite(ratio: Rational, reference_magnitude: f64) -> Self {
        FormValue {
            sign: Sign::of(&ratio),
            magnitude: Some(ratio.abs().to_f64() * reference_magnitude),
            ratio_to_reference: Some(ratio),
            reference_magnitude,
        }
    }

    fn pole(reference_magnitude: f64) -> Self {
        FormValue {
            sign: Sign::Pole,
            ratio_to_reference: None,
            magnitude: None,
            reference_magnitude,
        }
    }

    pub fn is_pole(&self) -> bool {
        self.sign == Sign::Pole
    }

    fn twisted(self, t: Sign) -> Self {
        match self.ratio_to_reference {
            Some(r) => {
                let r = if t == Sign::Negative { -r } else { r };
                FormValue::finite(r, self.reference_magnitude)
            }
            None => self,
        }
    }
}

/// One step of the meromorphic continuation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Continuation {
    Ratio(Rational),
    Pole,
    /// `0/0`; only occurs at `λ = 0`, odd parity.
    Indeterminate,
}

/// `I(s+1, t) / I(s, t) = s / (t − s − 1)` for `I(s, t) = ∫₀^∞ u^{s−1}(1+u)^{−t} du`.
fn shift_ratio(s: &Rational, t: &Rational) -> Continuation {
    let den = t - s - Rational::one();
    match (s.is_zero(), den.is_zero()) {
        (true, true) => Continuation::Indeterminate,
        (false, true) => Continuation::Pole,
        _ => Continuation::Ratio(s / &den),
    }
}

/// `V(n+1)/V(n) = (2n+λ+1)/(λ−1−2n)`.
pub fn continuation_ratio(n: HalfInt, lambda: &Rational) -> Continuation {
    let t = lambda + &Rational::one();
    let s = n.to_rational() + &t * &Rational::new(1, 2).unwrap();
    shift_ratio(&s, &t)
}

/// Indices with `−(λ+1)/2 < n < (λ+1)/2`, where the defining integral
/// converges.
pub fn convergence_range(ps: &PrincipalSeries) -> Vec<HalfInt> {
    let spec = ModuleSpec::PrincipalSeries(ps.clone());
    let radius = (ps.lambda() + &Rational::one()) * Rational::new(1, 2).unwrap();
    let bound = u32::try_from(radius.ceil()).expect("radius fits in u32");
    basis_window(&spec, bound)
        .into_iter()
        .filter_map(|v| match v {
            BasisVector::Series(n) if n.abs().to_rational() < radius => Some(n),
            _ => None,
        })
        .collect()
}

/// `4π B(n₀ + (λ+1)/2, (λ+1)/2 − n₀)`, or `∞` when the reference integral
/// diverges (only at `λ = 0`, odd parity).
fn series_reference_magnitude(ps: &PrincipalSeries) -> f64 {
    let half_t = (ps.lambda() + &Rational::one()) * Rational::new(1, 2).unwrap();
    let n0 = ps.parity().reference_index().to_rational();
    match beta_value(&(&half_t + &n0), &(&half_t - &n0)) {
        Ok(b) => 4.0 * PI * b,
        Err(_) => f64::INFINITY,
    }
}

/// Exact `V(n)/V(n₀)`, or `None` if the continuation path meets a pole.
fn series_ratio(ps: &PrincipalSeries, n: HalfInt) -> Option<Rational> {
    let n0 = ps.parity().reference_index();
    let steps = n.steps_from(n0).expect("index on the parity lattice");
    let mut acc = Rational::one();
    if steps >= 0 {
        for j in 0..steps {
            match continuation_ratio(n0.step(j), ps.lambda()) {
                Continuation::Ratio(r) => acc = acc * r,
                _ => return None,
            }
        }
    } else {
        // V(j) = V(j+1) / ratio(j), walking down from n₀.
        for j in 1..=-steps {
            match continuation_ratio(n0.step(-j), ps.lambda()) {
                Continuation::Ratio(r) if !r.is_zero() => acc = acc / r,
                _ => return None,
            }
        }
    }
    Some(acc)
}

/// `P(k) = (−1)^k k! ∏_{j=1}^k (m+j)`.
pub fn point_form_value(m: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 1..=i64::from(k) {
        acc = acc * Rational::integer(-j * (i64::from(m) + j));
    }
    acc
}

/// `(v, v)` for the u_ℝ-invariant form.
pub fn form_diagonal(v: &BasisVector, spec: &ModuleSpec) -> Result<FormValue> {
    spec.check_member(v)?;
    Ok(match (spec.realization(), *v) {
        (Realization::Series(ps), BasisVector::Series(n)) => {
            let reference = series_reference_magnitude(ps);
            if !reference.is_finite() {
                return Ok(FormValue::pole(reference));
            }
            match series_ratio(ps, n) {
                Some(r) => FormValue::finite(r, reference),
                None => FormValue::pole(reference),
            }
        }
        (Realization::Point { m, .. }, BasisVector::Point(k)) => {
            FormValue::finite(point_form_value(m, k), 1.0)
        }
        _ => unreachable!("membership checked"),
    })
}

/// `(v, w)` for the u_ℝ-invariant form; distinct weight vectors are
/// orthogonal.
pub fn form_pairing(v: &BasisVector, w: &BasisVector, spec: &ModuleSpec) -> Result<FormValue> {
    spec.check_member(w)?;
    let diag = form_diagonal(v, spec)?;
    if v == w {
        return Ok(diag);
    }
    Ok(FormValue::finite(
        Rational::zero(),
        diag.reference_magnitude,
    ))
}

/// `(v, v)_g = (θv, v)_u`.
pub fn gr_form_diagonal(v: &BasisVector, spec: &ModuleSpec) -> Result<FormValue> {
    let t = theta_sign(v, spec)?;
    Ok(form_diagonal(v, spec)?.twisted(t))
}

/// Which invariant form a pairing refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// Invariant under the compact real form su(2).
    Compact,
    /// Invariant under su(1,1); `(x, y)_g = (θx, y)_u`.
    Noncompact,
}

fn diagonal_ratio(v: &BasisVector, spec: &ModuleSpec, kind: FormKind) -> Result<Rational> {
    let value = match kind {
        FormKind::Compact => form_diagonal(v, spec)?,
        FormKind::Noncompact => gr_form_diagonal(v, spec)?,
    };
    value
        .ratio_to_reference
        .ok_or_else(|| Error::Domain(format!("form has a pole at {v} in {spec}")))
}

/// Exact pairing of two rational combinations, relative to the reference
/// value. Coefficients are real so no conjugation appears.
pub fn pair(x: &LinComb, y: &LinComb, spec: &ModuleSpec, kind: FormKind) -> Result<Rational> {
    pair_with(x, y, |v| diagonal_ratio(v, spec, kind))
}

fn pair_with(
    x: &LinComb,
    y: &LinComb,
    mut diag: impl FnMut(&BasisVector) -> Result<Rational>,
) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (v, c) in x.iter() {
        let d = y.coefficient(v);
        if !d.is_zero() {
            acc = acc + c * &d * diag(v)?;
        }
    }
    Ok(acc)
}

/// A pair `(u, w)` on which an invariance identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub identity: String,
    pub u: BasisVector,
    pub w: BasisVector,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub first_violation: Option<Violation>,
}

/// Checks exactly, for all `u, w` in the window:
///
/// * `(E₊u, w)_u = (u, E₋w)_u`, `(E₋u, w)_u = (u, E₊w)_u`, `(Hu, w)_u = (u, Hw)_u`;
/// * `(E₊u, w)_g = −(u, E₋w)_g`, `(E₋u, w)_g = −(u, E₊w)_g`, `(Hu, w)_g = (u, Hw)_g`.
///
/// Fails with a domain error if the form has a pole anywhere it is needed.
pub fn invariance_check(spec: &ModuleSpec, bound: u32) -> Result<InvarianceReport> {
    use FormKind::{Compact, Noncompact};
    use Generator::{EMinus, EPlus, H};
    let identities: [(&str, Generator, Generator, FormKind, i64); 6] = [
        ("(E+u,w)_u = (u,E-w)_u", EPlus, EMinus, Compact, 1),
        ("(E-u,w)_u = (u,E+w)_u", EMinus, EPlus, Compact, 1),
        ("(Hu,w)_u = (u,Hw)_u", H, H, Compact, 1),
        ("(E+u,w)_g = -(u,E-w)_g", EPlus, EMinus, Noncompact, -1),
        ("(E-u,w)_g = -(u,E+w)_g", EMinus, EPlus, Noncompact, -1),
        ("(Hu,w)_g = (u,Hw)_g", H, H, Noncompact, 1),
    ];
    let window = basis_window(spec, bound);
    // Each diagonal value walks the continuation from the reference index, so
    // memoize them across the O(window²) pairs.
    let mut cache: HashMap<(BasisVector, FormKind), Rational> = HashMap::new();
    let mut diag = |v: &BasisVector, kind: FormKind| -> Result<Rational> {
        if let Some(r) = cache.get(&(*v, kind)) {
            return Ok(r.clone());
        }
        let r = diagonal_ratio(v, spec, kind)?;
        cache.insert((*v, kind), r.clone());
        Ok(r)
    };
    let acted: HashMap<(Generator, BasisVector), LinComb> = Generator::ALL
        .iter()
        .flat_map(|g| window.iter().map(move |v| (*g, *v)))
        .map(|(g, v)| Ok(((g, v), act(g, &v, spec)?)))
        .collect::<Result<_>>()?;
    let mut checked = 0;
    for u in &window {
        for w in &window {
            for (name, left, right, kind, sign) in identities {
                let lu = &acted[&(left, *u)];
                let rw = &acted[&(right, *w)];
                let lhs = pair_with(lu, &LinComb::basis(*w), |v| diag(v, kind))?;
                let rhs = pair_with(&LinComb::basis(*u), rw, |v| diag(v, kind))?
                    * Rational::integer(sign);
                checked += 1;
                if lhs != rhs {
                    return Ok(InvarianceReport {
                        holds: false,
                        pairs_checked: checked,
                        first_violation: Some(Violation {
                            identity: name.into(),
                            u: *u,
                            w: *w,
                            lhs,
                            rhs,
                        }),
                    });
                }
            }
        }
    }
    Ok(InvarianceReport {
        holds: true,
        pairs_checked: checked,
        first_violation: None,
    })
}

/// `I(s, t)` continued from an anchor on `s + ℤ` inside `(0, t)` by exact
/// shift ratios.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuedIntegral {
    pub s: Rational,
    pub t: Rational,
    pub anchor_s: Rational,
    /// `I(anchor_s, t)` from log-Gamma.
    pub anchor_value: f64,
    /// Exact `I(s, t) / I(anchor_s, t)`, absent at a pole.
    pub ratio: Option<Rational>,
}

impl ContinuedIntegral {
    pub fn value(&self) -> Option<f64> {
        self.ratio.as_ref().map(|r| r.to_f64() * self.anchor_value)
    }

    pub fn sign(&self) -> Sign {
        self.ratio.as_ref().map_or(Sign::Pole, Sign::of)
    }
}

/// Meromorphic continuation of `∫₀^∞ u^{s−1}(1+u)^{−t} du` in `s`, anchored at
/// the point of `s + ℤ` nearest `t/2`.
pub fn continued_integral(s: &Rational, t: &Rational) -> Result<ContinuedIntegral> {
    let half = Rational::new(1, 2).unwrap();
    let shift = (s - &(t * &half) + half).floor();
    let anchor = s - &Rational::from(shift.clone());
    if !anchor.is_positive() || &anchor >= t {
        return Err(Error::Domain(format!(
            "no convergent anchor on {s} + ℤ for t = {t}"
        )));
    }
    let anchor_value = beta_value(&anchor, &(t - &anchor))?;
    let steps = i64::try_from(shift).map_err(|_| Error::Domain("shift out of range".into()))?;
    let mut ratio = Some(Rational::one());
    let mut cur = anchor.clone();
    for _ in 0..steps.abs() {
        let Some(acc) = ratio.take() else { break };
        if steps > 0 {
            ratio = match shift_ratio(&cur, t) {
                Continuation::Ratio(r) => Some(acc * r),
                _ => None,
            };
            cur = cur + Rational::one();
        } else {
            cur = cur - Rational::one();
            ratio = match shift_ratio(&cur, t) {
                Continuation::Ratio(r) if !r.is_zero() => Some(acc / r),
                _ => None,
            };
        }
    }
    Ok(ContinuedIntegral {
        s: s.clone(),
        t: t.clone(),
        anchor_s: anchor,
        anchor_value,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{quadrature_integral, rat};
    use crate::modules::{Orbit, Parity};

    fn ps(l: Rational, p: Parity) -> ModuleSpec {
        ModuleSpec::principal(l, p).unwrap()
    }

    fn s(twice: i64) -> BasisVector {
        BasisVector::Series(HalfInt::from_twice(twice))
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// Γ(a+1)/Γ(a) · Γ(b−1)/Γ(b) = a/(b−1) from the Gamma functional
    /// equation, with a = n + (λ+1)/2 and b = (λ+1)/2 − n.
    fn gamma_ratio_oracle(n: Rational, lambda: Rational) -> Rational {
        let half_t = (lambda + Rational::one()) * rat(1, 2);
        let a = &n + &half_t;
        let b = &half_t - &n;
        a / (b - Rational::one())
    }

    #[test]
    fn continuation_ratio_examples() {
        assert_eq!(
            continuation_ratio(HalfInt::ZERO, &rat(2, 1)),
            Continuation::Ratio(rat(3, 1))
        );
        assert_eq!(gamma_ratio_oracle(rat(0, 1), rat(2, 1)), rat(3, 1));
        assert_eq!(
            continuation_ratio(HalfInt::ZERO, &rat(1, 2)),
            Continuation::Ratio(rat(-3, 1))
        );
        assert_eq!(gamma_ratio_oracle(rat(0, 1), rat(1, 2)), rat(-3, 1));
        assert_eq!(
            continuation_ratio(HalfInt::integer(1), &rat(3, 1)),
            Continuation::Pole
        );
        assert_eq!(
            continuation_ratio(HalfInt::from_twice(-1), &rat(0, 1)),
            Continuation::Indeterminate
        );
    }

    #[test]
    fn continuation_ratio_matches_gamma_oracle_off_poles() {
        for q in 1..30 {
            let l = rat(q, 6);
            for twice in -12..=12 {
                let n = HalfInt::from_twice(twice);
                if let Continuation::Ratio(r) = continuation_ratio(n, &l) {
                    if !r.is_zero() {
                        assert_eq!(r, gamma_ratio_oracle(n.to_rational(), l.clone()));
                    }
                }
            }
        }
    }

    #[test]
    fn form_diagonal_examples() {
        let two = ps(rat(2, 1), Parity::Even);
        let v0 = form_diagonal(&s(0), &two).unwrap();
        assert_eq!(v0.sign, Sign::Positive);
        assert_eq!(v0.ratio_to_reference, Some(rat(1, 1)));
        assert!(rel(v0.magnitude.unwrap(), PI * PI / 2.0) < 1e-12);
        let q = 4.0 * PI * quadrature_integral(&rat(3, 2), &rat(3, 1)).value().unwrap();
        assert!(rel(v0.magnitude.unwrap(), q) < 1e-9);

        let v2 = form_diagonal(&s(4), &two).unwrap();
        assert_eq!(v2.sign, Sign::Negative);
        assert_eq!(v2.ratio_to_reference, Some(rat(-15, 1)));

        let half = ps(rat(1, 2), Parity::Even);
        assert_eq!(
            form_diagonal(&s(2), &half).unwrap().ratio_to_reference,
            Some(rat(-3, 1))
        );

        let p1 = ModuleSpec::point(1, Orbit::AtZero);
        let pv = form_diagonal(&BasisVector::Point(1), &p1).unwrap();
        assert_eq!(pv.ratio_to_reference, Some(rat(-2, 1)));
        let p2 = ModuleSpec::point(2, Orbit::AtZero);
        assert_eq!(
            form_diagonal(&BasisVector::Point(0), &p2)
                .unwrap()
                .ratio_to_reference,
            Some(rat(1, 1))
        );
    }

    #[test]
    fn poles_at_reduction_points() {
        let three = ps(rat(3, 1), Parity::Even);
        for twice in [-2, 0, 2] {
            assert!(!form_diagonal(&s(twice), &three).unwrap().is_pole());
        }
        for twice in [-6, -4, 4, 6] {
            assert!(form_diagonal(&s(twice), &three).unwrap().is_pole());
        }
        let zero_odd = ps(rat(0, 1), Parity::Odd);
        assert!(form_diagonal(&s(1), &zero_odd).unwrap().is_pole());
        assert!(form_diagonal(&s(-3), &zero_odd).unwrap().is_pole());
        let w1 = ModuleSpec::w1_sub(rat(3, 1), Parity::Even).unwrap();
        assert_eq!(
            form_diagonal(&s(2), &w1).unwrap().ratio_to_reference,
            Some(rat(2, 1))
        );
    }

    #[test]
    fn pairing_examples() {
        let two = ps(rat(2, 1), Parity::Even);
        let off = form_pairing(&s(2), &s(4), &two).unwrap();
        assert_eq!(off.sign, Sign::Zero);
        let p2 = ModuleSpec::point(2, Orbit::AtZero);
        let off = form_pairing(&BasisVector::Point(1), &BasisVector::Point(3), &p2).unwrap();
        assert_eq!(off.ratio_to_reference, Some(Rational::zero()));
        let on = form_pairing(&s(2), &s(2), &two).unwrap();
        assert_eq!(
            (on.sign, on.ratio_to_reference),
            (Sign::Positive, Some(rat(3, 1)))
        );
        assert!(form_pairing(&s(2), &s(3), &two).is_err());
    }

    #[test]
    fn gr_form_examples() {
        let half = ps(rat(1, 2), Parity::Even);
        let g = gr_form_diagonal(&s(2), &half).unwrap();
        assert_eq!(
            (g.sign, g.ratio_to_reference),
            (Sign::Positive, Some(rat(3, 1)))
        );
        let two = ps(rat(2, 1), Parity::Even);
        let g = gr_form_diagonal(&s(2), &two).unwrap();
        assert_eq!(
            (g.sign, g.ratio_to_reference),
            (Sign::Negative, Some(rat(-3, 1)))
        );
        let p3 = ModuleSpec::point(3, Orbit::AtZero);
        let g = gr_form_diagonal(&BasisVector::Point(2), &p3).unwrap();
        assert_eq!(g.ratio_to_reference, Some(rat(40, 1)));
    }

    #[test]
    fn convergence_range_examples() {
        let range = |l, p| convergence_range(&PrincipalSeries::new(l, p).unwrap());
        assert_eq!(
            range(rat(2, 1), Parity::Even),
            [-1, 0, 1].map(HalfInt::integer).to_vec()
        );
        assert_eq!(range(rat(1, 2), Parity::Even), vec![HalfInt::ZERO]);
        assert_eq!(
            range(rat(3, 1), Parity::Odd),
            [-3, -1, 1, 3].map(HalfInt::from_twice).to_vec()
        );
    }

    #[test]
    fn invariance_examples() {
        assert!(
            invariance_check(&ps(rat(2, 1), Parity::Even), 6)
                .unwrap()
                .holds
        );
        assert!(
            invariance_check(&ModuleSpec::point(2, Orbit::AtZero), 8)
                .unwrap()
                .holds
        );
        assert!(
            invariance_check(&ModuleSpec::point(2, Orbit::AtInfinity), 8)
                .unwrap()
                .holds
        );
        let w1 = ModuleSpec::w1_sub(rat(3, 1), Parity::Even).unwrap();
        assert!(invariance_check(&w1, 10).unwrap().holds);
        assert!(invariance_check(&ps(rat(3, 1), Parity::Even), 4).is_err());
    }

    #[test]
    fn symmetric_in_n() {
        for q in 0..24 {
            let l = rat(q, 4);
            for parity in [Parity::Even, Parity::Odd] {
                let spec = ps(l.clone(), parity);
                if !spec.is_irreducible() {
                    continue;
                }
                for v in basis_window(&spec, 10) {
                    let BasisVector::Series(n) = v else {
                        unreachable!()
                    };
                    let mirrored = BasisVector::Series(n.neg());
                    assert_eq!(
                        form_diagonal(&v, &spec).unwrap().ratio_to_reference,
                        form_diagonal(&mirrored, &spec).unwrap().ratio_to_reference,
                        "{spec} {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn continued_integral_matches_quadrature_inside() {
        let c = continued_integral(&rat(7, 2), &rat(5, 1)).unwrap();
        assert_eq!(c.anchor_s, rat(5, 2));
        let q = quadrature_integral(&rat(7, 2), &rat(5, 1)).value().unwrap();
        assert!(rel(c.value().unwrap(), q) < 1e-10);
        // Outside (0, t) the continuation alternates in sign and has poles at s ∈ −ℕ.
        assert_eq!(
            continued_integral(&rat(-1, 2), &rat(2, 1)).unwrap().sign(),
            Sign::Negative
        );
        assert_eq!(
            continued_integral(&rat(0, 1), &rat(2, 1)).unwrap().sign(),
            Sign::Pole
        );
        assert_eq!(
            continued_integral(&rat(2, 1), &rat(2, 1)).unwrap().sign(),
            Sign::Pole
        );
    }
}
