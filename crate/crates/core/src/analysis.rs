//! Sign-level theorems: the Hodge sign law, Jantzen sign crossing,
//! definiteness of the g_ℝ-invariant form, and unitarity of constituents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{HalfInt, Rational, Sign};
use crate::filtrations::{hodge_level, w1_member};
use crate::forms::{form_diagonal, gr_form_diagonal, invariance_check, InvarianceReport};
use crate::modules::{
    act, apply, basis_window, constituents, theta, BasisVector, Generator, LinComb, ModuleSpec,
    Parity, PrincipalSeries, Realization,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub vector: BasisVector,
    pub hodge_level: u32,
    pub codimension: u32,
    pub sign: Sign,
    /// `(−1)^{p−a}`.
    pub expected: Sign,
}

impl ConjectureRecord {
    pub fn matches(&self) -> bool {
        self.sign == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub spec: ModuleSpec,
    pub bound: u32,
    pub records: Vec<ConjectureRecord>,
    pub verdict: Verdict,
}

impl ConjectureReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &ConjectureRecord> {
        self.records.iter().filter(|r| !r.matches())
    }
}

/// Checks `sign (v, v)_u = (−1)^{p(v) − a}` on every window vector. A pole
/// counts as a mismatch, so the verdict fails closed.
pub fn verify_conjecture(spec: &ModuleSpec, bound: u32) -> Result<ConjectureReport> {
    let a = spec.codimension();
    let mut records = Vec::new();
    for v in basis_window(spec, bound) {
        let p = hodge_level(&v, spec)?;
        let sign = form_diagonal(&v, spec)?.sign;
        let expected = Sign::alternating(i64::from(p) - i64::from(a));
        records.push(ConjectureRecord {
            vector: v,
            hodge_level: p,
            codimension: a,
            sign,
            expected,
        });
    }
    let verdict = Verdict::from_bool(records.iter().all(ConjectureRecord::matches));
    Ok(ConjectureReport {
        spec: spec.clone(),
        bound,
        records,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JantzenRecord {
    pub vector: BasisVector,
    pub sign_below: Sign,
    pub sign_above: Sign,
    pub preserved: bool,
    pub w1: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JantzenReport {
    pub lambda0: Rational,
    pub parity: Parity,
    pub epsilon: Rational,
    pub bound: u32,
    pub records: Vec<JantzenRecord>,
    /// `preserved ⇔ w1` on every record.
    pub verdict: Verdict,
}

/// Signs of `(v_n, v_n)_u` at `λ₀ ∓ ε` against `W₁`-membership at `λ₀`.
pub fn jantzen_crossing(
    lambda0: &Rational,
    parity: Parity,
    epsilon: &Rational,
    bound: u32,
) -> Result<JantzenReport> {
    if !lambda0.is_positive() || !parity.reduces_at(lambda0) {
        return Err(Error::Domain(format!(
            "λ₀ = {lambda0} is not a positive reduction point for {parity} parity"
        )));
    }
    if !epsilon.is_positive() || epsilon >= &Rational::new(1, 2).unwrap() {
        return Err(Error::Domain(format!("ε = {epsilon} must lie in (0, 1/2)")));
    }
    let below = ModuleSpec::principal(lambda0 - epsilon, parity)?;
    let above = ModuleSpec::principal(lambda0 + epsilon, parity)?;
    if !below.is_irreducible() || !above.is_irreducible() {
        return Err(Error::Domain(format!(
            "λ₀ ± {epsilon} crosses another reduction point"
        )));
    }
    let mut records = Vec::new();
    for v in basis_window(&below, bound) {
        let sign_below = form_diagonal(&v, &below)?.sign;
        let sign_above = form_diagonal(&v, &above)?.sign;
        let w1 = w1_member(&v, lambda0, parity)?;
        records.push(JantzenRecord {
            vector: v,
            sign_below,
            sign_above,
            preserved: sign_below == sign_above,
            w1,
        });
    }
    let verdict = Verdict::from_bool(records.iter().all(|r| r.preserved == r.w1));
    Ok(JantzenReport {
        lambda0: lambda0.clone(),
        parity,
        epsilon: epsilon.clone(),
        bound,
        records,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PosDef,
    NegDef,
    Indefinite,
}

impl Definiteness {
    pub fn is_definite(self) -> bool {
        self != Definiteness::Indefinite
    }

    fn from_signs(signs: impl IntoIterator<Item = Sign>) -> Result<Self> {
        let (mut pos, mut neg) = (false, false);
        for s in signs {
            match s {
                Sign::Positive => pos = true,
                Sign::Negative => neg = true,
                other => {
                    return Err(Error::Domain(format!("form is degenerate (sign {other})")));
                }
            }
        }
        Ok(match (pos, neg) {
            (true, false) => Definiteness::PosDef,
            (false, true) => Definiteness::NegDef,
            _ => Definiteness::Indefinite,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinitenessReport {
    pub spec: ModuleSpec,
    pub bound: u32,
    pub window_signs: Vec<(BasisVector, Sign)>,
    /// Constant signs of the two infinite tails (one for point modules, none
    /// for finite-dimensional constituents).
    pub tail_signs: Vec<Sign>,
    pub verdict: Definiteness,
}

fn g_sign(v: &BasisVector, spec: &ModuleSpec) -> Result<Sign> {
    Ok(gr_form_diagonal(v, spec)?.sign)
}

/// Sign of the tail starting at `start`, checked constant over two
/// consecutive outward steps.
fn tail_sign(spec: &ModuleSpec, start: BasisVector, next: BasisVector) -> Result<Sign> {
    let a = g_sign(&start, spec)?;
    let b = g_sign(&next, spec)?;
    if a != b {
        return Err(Error::Domain(format!(
            "tail of {spec} is not constant-sign at {start}"
        )));
    }
    Ok(a)
}

/// Exact definiteness of the g_ℝ-invariant form on the whole basis: a scan
/// of the window plus the constant signs of the infinite tails.
///
/// On the principal series the tails are `|n| > (λ+1)/2`, where each outward
/// step raises the Hodge level by one and flips θ, so `t_n (−1)^{p(n)}` is
/// constant there. On point modules the sign is `t_k (−1)^k` times a
/// positive number, constant from `k = 0`.
pub fn definiteness_with_window(spec: &ModuleSpec, bound: u32) -> Result<DefinitenessReport> {
    if !spec.is_irreducible() {
        return Err(Error::Reducible(spec.to_string()));
    }
    let (window, tails) = match (spec, spec.realization()) {
        (ModuleSpec::Constituent { .. }, Realization::Series(ps)) => {
            // W₁ is finite: |2n| ≤ λ − 1.
            let full = u32::try_from(ps.lambda().ceil()).expect("small λ");
            (basis_window(spec, full), Vec::new())
        }
        (_, Realization::Series(ps)) => {
            let radius = (ps.lambda() + &Rational::one()) * Rational::new(1, 2).unwrap();
            // First lattice index beyond the radius on the positive side.
            let n0 = ps.parity().reference_index();
            let mut first = n0;
            while first.to_rational() <= radius {
                first = first.step(1);
            }
            let right = tail_sign(
                spec,
                BasisVector::Series(first),
                BasisVector::Series(first.step(1)),
            )?;
            let left_start = HalfInt::from_twice(-first.twice());
            let left = tail_sign(
                spec,
                BasisVector::Series(left_start),
                BasisVector::Series(left_start.step(-1)),
            )?;
            // Everything strictly inside the tails is scanned whatever the bound.
            let inner = u32::try_from(first.twice() / 2).expect("small λ");
            (basis_window(spec, bound.max(inner)), vec![left, right])
        }
        (_, Realization::Point { .. }) => {
            let tail = tail_sign(
                spec,
                BasisVector::Point(bound + 1),
                BasisVector::Point(bound + 2),
            )?;
            (basis_window(spec, bound), vec![tail])
        }
    };
    let window_signs = window
        .iter()
        .map(|v| Ok((*v, g_sign(v, spec)?)))
        .collect::<Result<Vec<_>>>()?;
    let verdict = Definiteness::from_signs(
        window_signs
            .iter()
            .map(|(_, s)| *s)
            .chain(tails.iter().copied()),
    )?;
    Ok(DefinitenessReport {
        spec: spec.clone(),
        bound,
        window_signs,
        tail_signs: tails,
        verdict,
    })
}

pub const DEFAULT_DEFINITENESS_WINDOW: u32 = 12;

pub fn definiteness(spec: &ModuleSpec) -> Result<Definiteness> {
    Ok(definiteness_with_window(spec, DEFAULT_DEFINITENESS_WINDOW)?.verdict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentVerdict {
    pub constituent: ModuleSpec,
    pub hermitian: bool,
    pub definiteness: Definiteness,
    pub unitary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub lambda: Rational,
    pub parity: Parity,
    pub reducible: bool,
    pub constituents: Vec<ConstituentVerdict>,
}

/// Decomposes `PS(λ, parity)` and decides unitarity of each constituent from
/// the signs of its g_ℝ-invariant form.
pub fn classify(lambda: &Rational, parity: Parity) -> Result<ClassificationReport> {
    let ps = PrincipalSeries::new(lambda.clone(), parity)?;
    let constituents = constituents(&ps)
        .into_iter()
        .map(|c| {
            let definiteness = definiteness(&c)?;
            Ok(ConstituentVerdict {
                constituent: c,
                // θ is inner and fixes every orbit and local system.
                hermitian: true,
                definiteness,
                unitary: definiteness.is_definite(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        lambda: lambda.clone(),
        parity,
        reducible: ps.is_reducible(),
        constituents,
    })
}

/// Outcome of the exact algebraic identities on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub spec: ModuleSpec,
    pub bound: u32,
    pub brackets: bool,
    pub theta: bool,
    pub invariance: InvarianceReport,
}

impl AlgebraReport {
    pub fn holds(&self) -> bool {
        self.brackets && self.theta && self.invariance.holds
    }
}

/// `[H,E₊] = 2E₊`, `[H,E₋] = −2E₋`, `[E₊,E₋] = H` on every window vector.
pub fn bracket_check(spec: &ModuleSpec, bound: u32) -> Result<bool> {
    use Generator::{EMinus, EPlus, H};
    let two = Rational::integer(2);
    for v in basis_window(spec, bound) {
        let x = LinComb::basis(v);
        let commutator = |a: Generator, b: Generator| -> Result<LinComb> {
            Ok(apply(a, &apply(b, &x, spec)?, spec)?.minus(&apply(b, &apply(a, &x, spec)?, spec)?))
        };
        if commutator(H, EPlus)? != act(EPlus, &v, spec)?.scaled(&two)
            || commutator(H, EMinus)? != act(EMinus, &v, spec)?.scaled(&-two.clone())
            || commutator(EPlus, EMinus)? != act(H, &v, spec)?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

fn apply_theta(x: &LinComb, spec: &ModuleSpec) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (v, c) in x.iter() {
        out.add(&theta(v, spec)?.scaled(c));
    }
    Ok(out)
}

/// `θ² = 1`, `θE±θ = −E±`, `θHθ = H` on every window vector.
pub fn theta_check(spec: &ModuleSpec, bound: u32) -> Result<bool> {
    for v in basis_window(spec, bound) {
        let x = LinComb::basis(v);
        let tx = apply_theta(&x, spec)?;
        if apply_theta(&tx, spec)? != x {
            return Ok(false);
        }
        for gen in Generator::ALL {
            let conj = apply_theta(&apply(gen, &tx, spec)?, spec)?;
            let direct = act(gen, &v, spec)?;
            let want = match gen {
                Generator::H => direct,
                _ => direct.scaled(&-Rational::one()),
            };
            if conj != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn algebra_suite(spec: &ModuleSpec, bound: u32) -> Result<AlgebraReport> {
    Ok(AlgebraReport {
        spec: spec.clone(),
        bound,
        brackets: bracket_check(spec, bound)?,
        theta: theta_check(spec, bound)?,
        invariance: invariance_check(spec, bound)?,
    })
}
