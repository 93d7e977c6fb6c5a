//! Payload types and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use su11_core::analysis::{AlgebraReport, ClassificationReport, ConjectureReport, JantzenReport};
use su11_core::filtrations::FiltrationReport;
use su11_core::{BasisVector, HalfInt, ModuleSpec, Orbit, Rational, Sign};

use crate::OutputFormat;

/// Relative tolerance for the quadrature oracle.
pub const ORACLE_RTOL: f64 = 1e-8;

/// Column order of `form-table --output csv`.
pub const CSV_COLUMNS: [&str; 8] = [
    "index_twice",
    "hodge_level",
    "u_sign",
    "ratio_num",
    "ratio_den",
    "magnitude",
    "g_sign",
    "w1",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftRow {
    pub orbit: Orbit,
    pub k: u32,
    pub vector: BasisVector,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescribeReport {
    pub spec: ModuleSpec,
    pub bound: u32,
    pub reducible: bool,
    pub codimension: u32,
    pub constituents: Vec<ModuleSpec>,
    /// Indices where the defining integral converges; absent for point modules.
    pub convergence_range: Option<Vec<HalfInt>>,
    pub filtration: Vec<FiltrationReport>,
    /// Hodge shift of the quotient map onto each point constituent.
    pub induced_shifts: Vec<ShiftRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormRow {
    pub vector: BasisVector,
    pub index_twice: i64,
    pub hodge_level: u32,
    pub u_sign: Sign,
    /// `(v, v)_u` divided by its value at the reference vector.
    pub ratio: Option<Rational>,
    pub magnitude: Option<f64>,
    pub g_sign: Sign,
    pub w1: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormTable {
    pub spec: ModuleSpec,
    pub bound: u32,
    pub rows: Vec<FormRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub conjecture: ConjectureReport,
    pub algebra: AlgebraReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub s: Rational,
    pub t: Rational,
    pub anchor_s: Rational,
    /// Anchor value times the exact shift ratio; absent at a pole.
    pub continued: Option<f64>,
    /// Direct quadrature; absent where the integral diverges.
    pub quadrature: Option<f64>,
    pub rel_err: Option<f64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub tolerance: f64,
    pub rows: Vec<OracleRow>,
}

/// One document per command, tagged by command name in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "report", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum Payload {
    Describe(DescribeReport),
    FormTable(FormTable),
    Verify(VerifyReport),
    Jantzen(JantzenReport),
    Classify(ClassificationReport),
    Oracle(OracleReport),
}

pub(crate) fn render(payload: &Payload, format: OutputFormat) -> Result<String, String> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(payload)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        OutputFormat::Csv => match payload {
            Payload::FormTable(t) => csv_form_table(t),
            _ => Err("csv output is only available for form-table".into()),
        },
        OutputFormat::Text => Ok(text(payload)),
    }
}

fn csv_form_table(t: &FormTable) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).map_err(|e| e.to_string())?;
    for r in &t.rows {
        let (num, den) = match &r.ratio {
            Some(q) => (q.numer().to_string(), q.denom().to_string()),
            None => (String::new(), String::new()),
        };
        w.write_record([
            r.index_twice.to_string(),
            r.hodge_level.to_string(),
            r.u_sign.to_string(),
            num,
            den,
            r.magnitude.map(|m| m.to_string()).unwrap_or_default(),
            r.g_sign.to_string(),
            r.w1.to_string(),
        ])
        .map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

fn text(payload: &Payload) -> String {
    let mut out = String::new();
    // Writing into a String cannot fail.
    let o = &mut out;
    match payload {
        Payload::Describe(d) => {
            let _ = writeln!(o, "module       {}", d.spec);
            let _ = writeln!(o, "reducible    {}", d.reducible);
            let _ = writeln!(o, "codimension  {}", d.codimension);
            let _ = writeln!(o, "constituents");
            for c in &d.constituents {
                let _ = writeln!(o, "  {c}");
            }
            if let Some(range) = &d.convergence_range {
                let list: Vec<String> = range.iter().map(|n| n.to_string()).collect();
                let _ = writeln!(o, "convergent   {{{}}}", list.join(", "));
            }
            let _ = writeln!(o, "\n{:>8} {:>5} {:>4}", "vector", "p", "W1");
            for r in &d.filtration {
                let _ = writeln!(
                    o,
                    "{:>8} {:>5} {:>4}",
                    r.vector.to_string(),
                    r.hodge_level,
                    yes(r.w1_member)
                );
            }
            if !d.induced_shifts.is_empty() {
                let _ = writeln!(
                    o,
                    "\n{:>12} {:>4} {:>8} {:>6}",
                    "orbit", "k", "vector", "shift"
                );
                for s in &d.induced_shifts {
                    let _ = writeln!(
                        o,
                        "{:>12} {:>4} {:>8} {:>6}",
                        s.orbit.to_string(),
                        s.k,
                        s.vector.to_string(),
                        s.shift
                    );
                }
            }
        }
        Payload::FormTable(t) => {
            let _ = writeln!(o, "module {}", t.spec);
            let _ = writeln!(
                o,
                "{:>8} {:>4} {:>8} {:>24} {:>14} {:>8} {:>4}",
                "vector", "p", "u-sign", "ratio", "magnitude", "g-sign", "W1"
            );
            for r in &t.rows {
                let mag = r
                    .magnitude
                    .map(|m| format!("{m:.6e}"))
                    .unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    o,
                    "{:>8} {:>4} {:>8} {:>24} {:>14} {:>8} {:>4}",
                    r.vector.to_string(),
                    r.hodge_level,
                    r.u_sign.to_string(),
                    opt(&r.ratio),
                    mag,
                    r.g_sign.to_string(),
                    yes(r.w1)
                );
            }
        }
        Payload::Verify(v) => {
            let c = &v.conjecture;
            let _ = writeln!(o, "module {}  window {}", c.spec, c.bound);
            let _ = writeln!(
                o,
                "{:>8} {:>4} {:>4} {:>8} {:>9}",
                "vector", "p", "a", "sign", "expected"
            );
            for r in &c.records {
                let _ = writeln!(
                    o,
                    "{:>8} {:>4} {:>4} {:>8} {:>9}{}",
                    r.vector.to_string(),
                    r.hodge_level,
                    r.codimension,
                    r.sign.to_string(),
                    r.expected.to_string(),
                    if r.matches() { "" } else { "  MISMATCH" }
                );
            }
            let a = &v.algebra;
            let _ = writeln!(o, "\nsign law     {}", verdict(c.verdict.passed()));
            let _ = writeln!(o, "brackets     {}", verdict(a.brackets));
            let _ = writeln!(o, "theta        {}", verdict(a.theta));
            let _ = writeln!(
                o,
                "invariance   {} ({} identities)",
                verdict(a.invariance.holds),
                a.invariance.pairs_checked
            );
            if let Some(bad) = &a.invariance.first_violation {
                let _ = writeln!(
                    o,
                    "  {} at u={} w={}: {} vs {}",
                    bad.identity, bad.u, bad.w, bad.lhs, bad.rhs
                );
            }
        }
        Payload::Jantzen(j) => {
            let _ = writeln!(o, "λ₀ = {} ({}), ε = {}", j.lambda0, j.parity, j.epsilon);
            let _ = writeln!(
                o,
                "{:>8} {:>8} {:>8} {:>10} {:>4}",
                "vector", "below", "above", "preserved", "W1"
            );
            for r in &j.records {
                let _ = writeln!(
                    o,
                    "{:>8} {:>8} {:>8} {:>10} {:>4}",
                    r.vector.to_string(),
                    r.sign_below.to_string(),
                    r.sign_above.to_string(),
                    yes(r.preserved),
                    yes(r.w1)
                );
            }
            let _ = writeln!(o, "\npreserved <=> W1: {}", verdict(j.verdict.passed()));
        }
        Payload::Classify(c) => {
            let _ = writeln!(
                o,
                "λ = {} ({}), reducible: {}",
                c.lambda, c.parity, c.reducible
            );
            for v in &c.constituents {
                let _ = writeln!(
                    o,
                    "  {:<40} {:<12} unitary: {}",
                    v.constituent.to_string(),
                    format!("{:?}", v.definiteness),
                    v.unitary
                );
            }
        }
        Payload::Oracle(r) => {
            let _ = writeln!(
                o,
                "{:>8} {:>8} {:>8} {:>22} {:>22} {:>9}",
                "s", "t", "anchor", "continued", "quadrature", "rel err"
            );
            for row in &r.rows {
                let _ = writeln!(
                    o,
                    "{:>8} {:>8} {:>8} {:>22} {:>22} {:>9}{}",
                    row.s.to_string(),
                    row.t.to_string(),
                    row.anchor_s.to_string(),
                    opt(&row.continued),
                    opt(&row.quadrature),
                    row.rel_err
                        .map(|e| format!("{e:.1e}"))
                        .unwrap_or_else(|| "-".into()),
                    if row.ok { "" } else { "  FAIL" }
                );
            }
            let _ = writeln!(
                o,
                "\nall within {:e}: {}",
                r.tolerance,
                verdict(r.rows.iter().all(|x| x.ok))
            );
        }
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
