//! Hodge and weight filtrations on the weight bases.
//!
//! On the open orbit the Hodge level is governed by pole order:
//! `zⁿσ₀^μ ∈ F_p ⇔ |n| ≤ (λ+1)/2 + p`. On a point module the level is the
//! order of the normal derivative shifted by the codimension: `v_k ∈ F_p ⇔
//! k ≤ p − 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{HalfInt, Rational};
use crate::modules::{
    act, basis_window, BasisVector, ConstituentPart, Generator, ModuleSpec, Orbit, Parity,
    PrincipalSeries, Realization,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub vector: BasisVector,
    pub hodge_level: u32,
    /// Whether the vector lies in `W₁`. Point modules have `W₀` equal to the
    /// whole module, so every vector qualifies.
    pub w1_member: bool,
}

/// `(λ+1)/2`, the half-width of the level-0 window.
fn level_zero_radius(ps: &PrincipalSeries) -> Rational {
    (ps.lambda() + &Rational::one()) * Rational::new(1, 2).unwrap()
}

/// Hodge level of a series index: `max(0, ⌈|n| − (λ+1)/2⌉)`.
pub(crate) fn series_hodge_level(ps: &PrincipalSeries, n: HalfInt) -> u32 {
    let excess = n.abs().to_rational() - level_zero_radius(ps);
    let p = excess.ceil();
    if p <= 0.into() {
        0
    } else {
        u32::try_from(p).expect("hodge level fits in u32")
    }
}

/// Smallest `p` with `v ∈ F_p`.
pub fn hodge_level(v: &BasisVector, spec: &ModuleSpec) -> Result<u32> {
    spec.check_member(v)?;
    Ok(match (spec.realization(), *v) {
        (Realization::Series(ps), BasisVector::Series(n)) => series_hodge_level(ps, n),
        (Realization::Point { .. }, BasisVector::Point(k)) => k + 1,
        _ => unreachable!("membership checked"),
    })
}

/// Whether `v_n` lies in `W₁` of the principal series at the reduction
/// point `λ₀`: `|2n| ≤ λ₀ − 1`.
pub fn w1_member(v: &BasisVector, lambda0: &Rational, parity: Parity) -> Result<bool> {
    if !parity.reduces_at(lambda0) || lambda0.is_negative() {
        return Err(Error::Domain(format!(
            "λ₀ = {lambda0} is not a reduction point for {parity} parity"
        )));
    }
    let ps = PrincipalSeries::new(lambda0.clone(), parity)?;
    match v {
        BasisVector::Series(n) if parity.admits(*n) => Ok(ps.in_w1_range(*n)),
        _ => Err(Error::NotInModule {
            vector: v.to_string(),
            module: ps.to_string(),
        }),
    }
}

/// `W₁`-membership within an arbitrary spec. Irreducible principal series
/// have `W₁` equal to everything, point modules have `W₀` equal to
/// everything.
pub fn in_w1(v: &BasisVector, spec: &ModuleSpec) -> Result<bool> {
    spec.check_member(v)?;
    Ok(match spec {
        ModuleSpec::PrincipalSeries(ps) if ps.is_reducible() => {
            w1_member(v, ps.lambda(), ps.parity())?
        }
        _ => true,
    })
}

/// Number of basis vectors with Hodge level `≤ p`.
pub fn hodge_dim(spec: &ModuleSpec, p: u32) -> u64 {
    match spec.realization() {
        Realization::Point { .. } => u64::from(p),
        Realization::Series(ps) => {
            // Every vector of level ≤ p satisfies |n| ≤ (λ+1)/2 + p.
            let radius = level_zero_radius(ps) + Rational::integer(p.into());
            let bound = u32::try_from(radius.ceil()).expect("radius fits in u32");
            basis_window(spec, bound)
                .iter()
                .filter(|v| hodge_level(v, spec).expect("window member") <= p)
                .count() as u64
        }
    }
}

pub fn filtration_table(spec: &ModuleSpec, bound: u32) -> Vec<FiltrationReport> {
    basis_window(spec, bound)
        .into_iter()
        .map(|v| FiltrationReport {
            hodge_level: hodge_level(&v, spec).expect("window member"),
            w1_member: in_w1(&v, spec).expect("window member"),
            vector: v,
        })
        .collect()
}

/// Sorted h-weight multisets of `gr_{W,2}` and of the two point modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightComparison {
    pub lambda0: Rational,
    pub parity: Parity,
    pub cutoff: u32,
    pub quotient: Vec<i64>,
    pub points: Vec<i64>,
    pub equal: bool,
}

fn positive_reduction_point(lambda0: &Rational, parity: Parity) -> Result<u32> {
    if !lambda0.is_positive() || !parity.reduces_at(lambda0) {
        return Err(Error::Domain(format!(
            "λ₀ = {lambda0} is not a positive reduction point for {parity} parity"
        )));
    }
    lambda0
        .to_i64()
        .and_then(|m| u32::try_from(m).ok())
        .ok_or_else(|| Error::Domain(format!("λ₀ = {lambda0} out of range")))
}

/// h-eigenvalue of a basis vector, read off the action.
fn h_weight(v: &BasisVector, spec: &ModuleSpec) -> i64 {
    let image = act(Generator::H, v, spec).expect("window member");
    let c = image.coefficient(v);
    debug_assert_eq!(image.len(), 1, "H acts diagonally");
    c.to_i64().expect("h-weights are integers")
}

/// Compares the h-weights of the quotient basis `{|2n| > λ₀ − 1}` with those
/// of `Point(λ₀, 0) ⊕ Point(λ₀, ∞)`, all truncated to `|weight| ≤ cutoff`.
pub fn grw2_weights(lambda0: &Rational, parity: Parity, cutoff: u32) -> Result<WeightComparison> {
    let m = positive_reduction_point(lambda0, parity)?;
    let ambient = ModuleSpec::principal(lambda0.clone(), parity)?;
    let ModuleSpec::PrincipalSeries(ps) = &ambient else {
        unreachable!()
    };
    let keep = |w: &i64| w.unsigned_abs() <= u64::from(cutoff);

    let mut quotient: Vec<i64> = basis_window(&ambient, cutoff)
        .iter()
        .filter(|v| matches!(v, BasisVector::Series(n) if !ps.in_w1_range(*n)))
        .map(|v| h_weight(v, &ambient))
        .filter(keep)
        .collect();
    let mut points: Vec<i64> = [Orbit::AtZero, Orbit::AtInfinity]
        .into_iter()
        .flat_map(|orbit| {
            let spec = ModuleSpec::point(m, orbit);
            basis_window(&spec, cutoff)
                .iter()
                .map(|v| h_weight(v, &spec))
                .collect::<Vec<_>>()
        })
        .filter(keep)
        .collect();
    quotient.sort_unstable();
    points.sort_unstable();
    let equal = quotient == points;
    Ok(WeightComparison {
        lambda0: lambda0.clone(),
        parity,
        cutoff,
        quotient,
        points,
        equal,
    })
}

/// The ambient basis vector whose class in `gr_{W,2}` corresponds to `v_k`
/// of the point module on `orbit`: `n = ∓(k + (λ₀+1)/2)`.
pub fn quotient_vector(
    lambda0: &Rational,
    parity: Parity,
    orbit: Orbit,
    k: u32,
) -> Result<BasisVector> {
    let m = positive_reduction_point(lambda0, parity)?;
    let twice = 2 * i64::from(k) + i64::from(m) + 1;
    Ok(BasisVector::Series(HalfInt::from_twice(match orbit {
        Orbit::AtZero => -twice,
        Orbit::AtInfinity => twice,
    })))
}

/// Ambient-induced Hodge level on the point quotient minus the intrinsic
/// level `k + 1` of the point module. Reported only; the sign checks always
/// use the intrinsic level.
pub fn induced_hodge_shift(
    lambda0: &Rational,
    parity: Parity,
    orbit: Orbit,
    k: u32,
) -> Result<i64> {
    let v = quotient_vector(lambda0, parity, orbit, k)?;
    let induced = hodge_level(&v, &ModuleSpec::principal(lambda0.clone(), parity)?)?;
    let part = ModuleSpec::constituent(
        PrincipalSeries::new(lambda0.clone(), parity)?,
        ConstituentPart::PointPart(orbit),
    )?;
    let intrinsic = hodge_level(&BasisVector::Point(k), &part)?;
    Ok(i64::from(induced) - i64::from(intrinsic))
}
