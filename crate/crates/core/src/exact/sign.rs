use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::Rational;

/// Sign of a (possibly continued) form value. `Pole` only arises at
/// reduction points and absorbs everything it multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Pole,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        match r.signum() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }

    /// `(-1)^k`.
    pub fn alternating(k: i64) -> Sign {
        if k.rem_euclid(2) == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_definite(self) -> bool {
        matches!(self, Sign::Positive | Sign::Negative)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Pole => "pole",
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        use Sign::*;
        match (self, rhs) {
            (Pole, _) | (_, Pole) => Pole,
            (Zero, _) | (_, Zero) => Zero,
            (Positive, s) | (s, Positive) => s,
            (Negative, Negative) => Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
