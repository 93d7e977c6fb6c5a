use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::Error;

/// An element of ½ℤ, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn integer(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// Parses from an exact rational; fails unless `2r` is an integer.
    pub fn from_rational(r: &Rational) -> Result<Self, Error> {
        let doubled = r * &Rational::integer(2);
        doubled
            .to_i64()
            .map(HalfInt::from_twice)
            .ok_or_else(|| Error::Domain(format!("{r} is not in ½ℤ")))
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.twice, 2).expect("nonzero denominator")
    }

    pub const fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    pub const fn neg(self) -> Self {
        HalfInt { twice: -self.twice }
    }

    /// Shift by an integer number of unit steps.
    pub const fn step(self, by: i64) -> Self {
        HalfInt {
            twice: self.twice + 2 * by,
        }
    }

    /// Integer distance `self − other`; `None` when the two lie in different
    /// cosets of ℤ.
    pub const fn steps_from(self, other: HalfInt) -> Option<i64> {
        let d = self.twice - other.twice;
        if d % 2 == 0 {
            Some(d / 2)
        } else {
            None
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
