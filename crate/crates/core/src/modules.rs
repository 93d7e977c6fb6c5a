//! The Harish-Chandra modules of SU(1,1) on explicit weight bases.
//!
//! Principal series: `v_n = zⁿ σ₀^μ` with `μ = (λ−1)/2`, `n ∈ ℤ` (even parity)
//! or `n ∈ ℤ + ½` (odd parity). The sl(2) triple acts by the product rule:
//!
//! ```text
//! E₊ v_n = −(n+μ) v_{n−1}     H v_n = −2n v_n     E₋ v_n = (n−μ) v_{n+1}
//! ```
//!
//! Point modules at the origin: `v_k = (d^k/dz^k δ₀) σ₂^{(m−1)/2}`, `k ≥ 0`,
//!
//! ```text
//! E₊ v_k = −v_{k+1}     H v_k = (2k+m+1) v_k     E₋ v_k = k(k+m) v_{k−1}
//! ```
//!
//! and at infinity the same formulas with `E₊ ↔ E₋`, `H ↦ −H`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{HalfInt, Rational, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Whether `n` lies on this parity's index lattice.
    pub fn admits(self, n: HalfInt) -> bool {
        match self {
            Parity::Even => n.is_integer(),
            Parity::Odd => !n.is_integer(),
        }
    }

    /// Normalization index of θ and of the form: `0` or `½`.
    pub fn reference_index(self) -> HalfInt {
        match self {
            Parity::Even => HalfInt::ZERO,
            Parity::Odd => HalfInt::HALF,
        }
    }

    /// Whether `λ` is a reduction point: odd integers for even parity, even
    /// integers for odd parity.
    pub fn reduces_at(self, lambda: &Rational) -> bool {
        match self {
            Parity::Even => lambda.is_odd_integer(),
            Parity::Odd => lambda.is_even_integer(),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// The two closed K-orbits on the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orbit {
    AtZero,
    AtInfinity,
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orbit::AtZero => "0",
            Orbit::AtInfinity => "∞",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    EPlus,
    H,
    EMinus,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::EPlus, Generator::H, Generator::EMinus];
}

/// Principal series parameters with dominant `λ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct PrincipalSeries {
    lambda: Rational,
    parity: Parity,
}

#[derive(Deserialize)]
struct RawSeries {
    lambda: Rational,
    parity: Parity,
}

impl TryFrom<RawSeries> for PrincipalSeries {
    type Error = Error;
    fn try_from(raw: RawSeries) -> Result<Self> {
        PrincipalSeries::new(raw.lambda, raw.parity)
    }
}

impl PrincipalSeries {
    pub fn new(lambda: Rational, parity: Parity) -> Result<Self> {
        if lambda.is_negative() {
            return Err(Error::Domain(format!(
                "λ = {lambda} is not dominant (need λ ≥ 0)"
            )));
        }
        Ok(PrincipalSeries { lambda, parity })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `μ = (λ−1)/2`.
    pub fn mu(&self) -> Rational {
        (&self.lambda - &Rational::one()) * Rational::new(1, 2).unwrap()
    }

    pub fn is_reducible(&self) -> bool {
        self.parity.reduces_at(&self.lambda)
    }

    /// `|2n| ≤ λ − 1`, the finite-dimensional piece at a reduction point.
    pub fn in_w1_range(&self, n: HalfInt) -> bool {
        Rational::integer(n.twice().abs()) <= &self.lambda - &Rational::one()
    }
}

impl fmt::Display for PrincipalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PS(λ={}, {})", self.lambda, self.parity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstituentPart {
    /// The finite-dimensional submodule `W₁`.
    W1Sub,
    /// A point-supported piece of `gr_{W,2}`, realized as the point module
    /// with `m = λ`.
    PointPart(Orbit),
}

/// Which Harish-Chandra module is meant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleSpec {
    PrincipalSeries(PrincipalSeries),
    PointModule {
        m: u32,
        orbit: Orbit,
    },
    Constituent {
        base: PrincipalSeries,
        part: ConstituentPart,
    },
}

impl ModuleSpec {
    pub fn principal(lambda: Rational, parity: Parity) -> Result<Self> {
        Ok(ModuleSpec::PrincipalSeries(PrincipalSeries::new(
            lambda, parity,
        )?))
    }

    pub fn point(m: u32, orbit: Orbit) -> Self {
        ModuleSpec::PointModule { m, orbit }
    }

    pub fn constituent(base: PrincipalSeries, part: ConstituentPart) -> Result<Self> {
        if !base.is_reducible() {
            return Err(Error::Domain(format!(
                "{base} is irreducible and has no constituents"
            )));
        }
        Ok(ModuleSpec::Constituent { base, part })
    }

    pub fn w1_sub(lambda: Rational, parity: Parity) -> Result<Self> {
        Self::constituent(
            PrincipalSeries::new(lambda, parity)?,
            ConstituentPart::W1Sub,
        )
    }

    /// Codimension of the supporting orbit: 0 for ℂ*, 1 for a point.
    pub fn codimension(&self) -> u32 {
        match self.realization() {
            Realization::Series(_) => 0,
            Realization::Point { .. } => 1,
        }
    }

    /// Whether the module is irreducible as a (g, K)-module.
    pub fn is_irreducible(&self) -> bool {
        match self {
            ModuleSpec::PrincipalSeries(ps) => !ps.is_reducible(),
            _ => true,
        }
    }

    /// The concrete basis and action this spec is computed on.
    pub fn realization(&self) -> Realization<'_> {
        match self {
            ModuleSpec::PrincipalSeries(ps) => Realization::Series(ps),
            ModuleSpec::Constituent {
                base,
                part: ConstituentPart::W1Sub,
            } => Realization::Series(base),
            ModuleSpec::PointModule { m, orbit } => Realization::Point {
                m: *m,
                orbit: *orbit,
            },
            ModuleSpec::Constituent {
                base,
                part: ConstituentPart::PointPart(orbit),
            } => {
                let m = base
                    .lambda()
                    .to_i64()
                    .and_then(|m| u32::try_from(m).ok())
                    .expect("reduction points are small non-negative integers");
                Realization::Point { m, orbit: *orbit }
            }
        }
    }

    /// Index of the vector the form and θ are normalized on.
    pub fn reference_vector(&self) -> BasisVector {
        match self.realization() {
            Realization::Series(ps) => BasisVector::Series(ps.parity().reference_index()),
            Realization::Point { .. } => BasisVector::Point(0),
        }
    }

    pub fn contains(&self, v: &BasisVector) -> bool {
        match (self, v) {
            (ModuleSpec::PrincipalSeries(ps), BasisVector::Series(n)) => ps.parity().admits(*n),
            (
                ModuleSpec::Constituent {
                    base,
                    part: ConstituentPart::W1Sub,
                },
                BasisVector::Series(n),
            ) => base.parity().admits(*n) && base.in_w1_range(*n),
            (ModuleSpec::PointModule { .. }, BasisVector::Point(_)) => true,
            (
                ModuleSpec::Constituent {
                    part: ConstituentPart::PointPart(_),
                    ..
                },
                BasisVector::Point(_),
            ) => true,
            _ => false,
        }
    }

    pub(crate) fn check_member(&self, v: &BasisVector) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::NotInModule {
                vector: v.to_string(),
                module: self.to_string(),
            })
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::PrincipalSeries(ps) => write!(f, "{ps}"),
            ModuleSpec::PointModule { m, orbit } => write!(f, "Point(m={m}, {orbit})"),
            ModuleSpec::Constituent {
                base,
                part: ConstituentPart::W1Sub,
            } => write!(f, "W1Sub of {base}"),
            ModuleSpec::Constituent {
                base,
                part: ConstituentPart::PointPart(o),
            } => {
                write!(f, "PointPart({o}) of {base}")
            }
        }
    }
}

/// The basis and action a spec is computed on.
#[derive(Clone, Copy, Debug)]
pub enum Realization<'a> {
    Series(&'a PrincipalSeries),
    Point { m: u32, orbit: Orbit },
}

/// A basis element: `zⁿσ₀^μ` (series) or `(d^k/dz^k δ₀) σ₂^{(m−1)/2}` (point).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisVector {
    Series(HalfInt),
    Point(u32),
}

impl BasisVector {
    /// Twice the series index, or the point index itself.
    pub fn index_twice(&self) -> i64 {
        match self {
            BasisVector::Series(n) => n.twice(),
            BasisVector::Point(k) => 2 * i64::from(*k),
        }
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisVector::Series(n) => write!(f, "v[{n}]"),
            BasisVector::Point(k) => write!(f, "v[{k}]"),
        }
    }
}

/// Finite rational combination of basis vectors; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinComb(BTreeMap<BasisVector, Rational>);

impl LinComb {
    pub fn zero() -> Self {
        LinComb(BTreeMap::new())
    }

    pub fn term(v: BasisVector, c: Rational) -> Self {
        let mut out = LinComb::zero();
        out.add_term(v, c);
        out
    }

    pub fn basis(v: BasisVector) -> Self {
        LinComb::term(v, Rational::one())
    }

    pub fn add_term(&mut self, v: BasisVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(v).or_insert_with(Rational::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.0.remove(&v);
        }
    }

    pub fn add(&mut self, other: &LinComb) {
        for (v, c) in &other.0 {
            self.add_term(*v, c.clone());
        }
    }

    pub fn scaled(&self, c: &Rational) -> LinComb {
        let mut out = LinComb::zero();
        for (v, x) in &self.0 {
            out.add_term(*v, x * c);
        }
        out
    }

    pub fn minus(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add(&other.scaled(&-Rational::one()));
        out
    }

    pub fn coefficient(&self, v: &BasisVector) -> Rational {
        self.0.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisVector, &Rational)> {
        self.0.iter()
    }
}

/// Action of a generator of the sl(2) triple on a basis vector.
pub fn act(gen: Generator, v: &BasisVector, spec: &ModuleSpec) -> Result<LinComb> {
    spec.check_member(v)?;
    Ok(match (spec.realization(), *v) {
        (Realization::Series(ps), BasisVector::Series(n)) => series_action(gen, n, &ps.mu()),
        (Realization::Point { m, orbit }, BasisVector::Point(k)) => {
            // The swap E₊ ↔ E₋, H ↦ −H relates the two closed orbits.
            let (gen, h_sign) = match (orbit, gen) {
                (Orbit::AtZero, g) => (g, 1),
                (Orbit::AtInfinity, Generator::EPlus) => (Generator::EMinus, 1),
                (Orbit::AtInfinity, Generator::EMinus) => (Generator::EPlus, 1),
                (Orbit::AtInfinity, Generator::H) => (Generator::H, -1),
            };
            point_action_at_zero(gen, k, m).scaled(&Rational::integer(h_sign))
        }
        _ => unreachable!("membership checked"),
    })
}

fn series_action(gen: Generator, n: HalfInt, mu: &Rational) -> LinComb {
    let nr = n.to_rational();
    match gen {
        Generator::EPlus => LinComb::term(BasisVector::Series(n.step(-1)), -(&nr + mu)),
        Generator::H => LinComb::term(BasisVector::Series(n), Rational::integer(-n.twice())),
        Generator::EMinus => LinComb::term(BasisVector::Series(n.step(1)), &nr - mu),
    }
}

fn point_action_at_zero(gen: Generator, k: u32, m: u32) -> LinComb {
    let (k64, m64) = (i64::from(k), i64::from(m));
    match gen {
        Generator::EPlus => LinComb::term(BasisVector::Point(k + 1), -Rational::one()),
        Generator::H => LinComb::term(BasisVector::Point(k), Rational::integer(2 * k64 + m64 + 1)),
        Generator::EMinus if k == 0 => LinComb::zero(),
        Generator::EMinus => LinComb::term(
            BasisVector::Point(k - 1),
            Rational::integer(k64 * (k64 + m64)),
        ),
    }
}

/// Linear extension of [`act`].
pub fn apply(gen: Generator, x: &LinComb, spec: &ModuleSpec) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (v, c) in x.iter() {
        out.add(&act(gen, v, spec)?.scaled(c));
    }
    Ok(out)
}

/// Eigenvalue `±1` of the Cartan involution on a basis vector:
/// `(−1)^{n−n₀}` with `n₀` the reference index.
pub fn theta_sign(v: &BasisVector, spec: &ModuleSpec) -> Result<Sign> {
    spec.check_member(v)?;
    let steps = match (spec.reference_vector(), *v) {
        (BasisVector::Series(n0), BasisVector::Series(n)) => {
            n.steps_from(n0).expect("same parity lattice")
        }
        (BasisVector::Point(_), BasisVector::Point(k)) => i64::from(k),
        _ => unreachable!("membership checked"),
    };
    Ok(Sign::alternating(steps))
}

/// The Cartan involution θ, diagonal on every basis.
pub fn theta(v: &BasisVector, spec: &ModuleSpec) -> Result<LinComb> {
    let t = theta_sign(v, spec)?;
    let c = if t == Sign::Positive {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(LinComb::term(*v, c))
}

/// Composition factors of a principal series module.
pub fn constituents(ps: &PrincipalSeries) -> Vec<ModuleSpec> {
    if !ps.is_reducible() {
        return vec![ModuleSpec::PrincipalSeries(ps.clone())];
    }
    let m = ps
        .lambda()
        .to_i64()
        .and_then(|m| u32::try_from(m).ok())
        .expect("reduction points are non-negative integers");
    let mut out = Vec::with_capacity(3);
    if ps.lambda().is_positive() {
        out.push(ModuleSpec::Constituent {
            base: ps.clone(),
            part: ConstituentPart::W1Sub,
        });
    }
    out.push(ModuleSpec::point(m, Orbit::AtZero));
    out.push(ModuleSpec::point(m, Orbit::AtInfinity));
    out
}

/// Basis vectors with `|n| ≤ bound` (series) or `k ≤ bound` (point), in
/// increasing index order.
pub fn basis_window(spec: &ModuleSpec, bound: u32) -> Vec<BasisVector> {
    match spec.realization() {
        Realization::Series(_) => {
            let b = 2 * i64::from(bound);
            (-b..=b)
                .map(|twice| BasisVector::Series(HalfInt::from_twice(twice)))
                .filter(|v| spec.contains(v))
                .collect()
        }
        Realization::Point { .. } => (0..=bound).map(BasisVector::Point).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ps(l: Rational, p: Parity) -> ModuleSpec {
        ModuleSpec::principal(l, p).unwrap()
    }

    fn s(twice: i64) -> BasisVector {
        BasisVector::Series(HalfInt::from_twice(twice))
    }

    #[test]
    fn action_examples() {
        let m3 = ps(rat(3, 1), Parity::Even);
        assert_eq!(
            act(Generator::EPlus, &s(2), &m3).unwrap(),
            LinComb::term(s(0), rat(-2, 1))
        );
        assert!(act(Generator::EMinus, &s(2), &m3).unwrap().is_zero());
        let m2 = ps(rat(2, 1), Parity::Even);
        assert_eq!(
            act(Generator::H, &s(4), &m2).unwrap(),
            LinComb::term(s(4), rat(-4, 1))
        );
        let p2 = ModuleSpec::point(2, Orbit::AtZero);
        assert_eq!(
            act(Generator::EMinus, &BasisVector::Point(2), &p2).unwrap(),
            LinComb::term(BasisVector::Point(1), rat(8, 1))
        );
    }

    #[test]
    fn membership_errors() {
        let even = ps(rat(2, 1), Parity::Even);
        assert!(matches!(
            act(Generator::H, &s(1), &even),
            Err(Error::NotInModule { .. })
        ));
        assert!(act(Generator::H, &BasisVector::Point(0), &even).is_err());
        let w1 = ModuleSpec::w1_sub(rat(3, 1), Parity::Even).unwrap();
        assert!(act(Generator::H, &s(4), &w1).is_err());
        assert!(theta(&s(4), &w1).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(ModuleSpec::principal(rat(-1, 2), Parity::Even).is_err());
        assert!(ModuleSpec::w1_sub(rat(1, 2), Parity::Even).is_err());
        assert!(ModuleSpec::w1_sub(rat(3, 1), Parity::Odd).is_err());
        assert!(ModuleSpec::w1_sub(rat(2, 1), Parity::Odd).is_ok());
        let bad: serde_json::Result<PrincipalSeries> =
            serde_json::from_str(r#"{"lambda":{"num":-1,"den":1},"parity":"even"}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn theta_examples() {
        let m2 = ps(rat(2, 1), Parity::Even);
        assert_eq!(theta(&s(0), &m2).unwrap(), LinComb::basis(s(0)));
        assert_eq!(theta(&s(6), &m2).unwrap(), LinComb::term(s(6), rat(-1, 1)));
        let odd = ps(rat(1, 2), Parity::Odd);
        assert_eq!(
            theta(&s(-1), &odd).unwrap(),
            LinComb::term(s(-1), rat(-1, 1))
        );
        assert_eq!(theta(&s(1), &odd).unwrap(), LinComb::basis(s(1)));
    }

    #[test]
    fn constituent_examples() {
        let three = PrincipalSeries::new(rat(3, 1), Parity::Even).unwrap();
        assert_eq!(
            constituents(&three),
            vec![
                ModuleSpec::Constituent {
                    base: three.clone(),
                    part: ConstituentPart::W1Sub
                },
                ModuleSpec::point(3, Orbit::AtZero),
                ModuleSpec::point(3, Orbit::AtInfinity),
            ]
        );
        let half = PrincipalSeries::new(rat(1, 2), Parity::Even).unwrap();
        assert_eq!(
            constituents(&half),
            vec![ModuleSpec::PrincipalSeries(half.clone())]
        );
        let zero_odd = PrincipalSeries::new(rat(0, 1), Parity::Odd).unwrap();
        assert_eq!(
            constituents(&zero_odd),
            vec![
                ModuleSpec::point(0, Orbit::AtZero),
                ModuleSpec::point(0, Orbit::AtInfinity)
            ]
        );
        // λ = 0 is not a reduction point for even parity.
        let zero_even = PrincipalSeries::new(rat(0, 1), Parity::Even).unwrap();
        assert_eq!(constituents(&zero_even).len(), 1);
    }

    #[test]
    fn window_examples() {
        let m2 = ps(rat(2, 1), Parity::Even);
        assert_eq!(
            basis_window(&m2, 2),
            (-2..=2).map(|n| s(2 * n)).collect::<Vec<_>>()
        );
        let w1 = ModuleSpec::w1_sub(rat(3, 1), Parity::Even).unwrap();
        assert_eq!(basis_window(&w1, 10), vec![s(-2), s(0), s(2)]);
        let p = ModuleSpec::point(2, Orbit::AtZero);
        assert_eq!(
            basis_window(&p, 3),
            (0..=3).map(BasisVector::Point).collect::<Vec<_>>()
        );
        let odd = ps(rat(1, 2), Parity::Odd);
        assert_eq!(basis_window(&odd, 1), vec![s(-1), s(1)]);
        let empty = ModuleSpec::w1_sub(rat(0, 1), Parity::Odd).unwrap();
        assert!(basis_window(&empty, 10).is_empty());
    }

    #[test]
    fn lincomb_drops_zeros() {
        let mut x = LinComb::term(s(0), rat(1, 2));
        x.add_term(s(0), rat(-1, 2));
        assert!(x.is_zero());
        x.add_term(s(2), Rational::zero());
        assert!(x.is_empty());
    }
}
