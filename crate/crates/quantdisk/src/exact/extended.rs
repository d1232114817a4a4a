use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{Signed, Zero};

use super::rational::{format_rational, Rational};

/// Value in [0, +∞].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtNonNeg {
    Finite(Rational),
    Infinite,
}

impl ExtNonNeg {
    pub fn finite(r: Rational) -> Self {
        debug_assert!(!r.is_negative());
        ExtNonNeg::Finite(r)
    }

    pub fn zero() -> Self {
        ExtNonNeg::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtNonNeg::Infinite)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtNonNeg::Finite(r) => Some(r),
            ExtNonNeg::Infinite => None,
        }
    }

    pub fn square(&self) -> Self {
        match self {
            ExtNonNeg::Finite(r) => ExtNonNeg::Finite(r * r),
            ExtNonNeg::Infinite => ExtNonNeg::Infinite,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtNonNeg::Finite(r) => super::rational::to_f64(r),
            ExtNonNeg::Infinite => f64::INFINITY,
        }
    }

    pub fn to_string_exact(&self) -> String {
        match self {
            ExtNonNeg::Finite(r) => format_rational(r),
            ExtNonNeg::Infinite => "inf".to_string(),
        }
    }
}

impl Add for &ExtNonNeg {
    type Output = ExtNonNeg;
    fn add(self, o: &ExtNonNeg) -> ExtNonNeg {
        match (self, o) {
            (ExtNonNeg::Finite(a), ExtNonNeg::Finite(b)) => ExtNonNeg::Finite(a + b),
            _ => ExtNonNeg::Infinite,
        }
    }
}

impl Mul for &ExtNonNeg {
    type Output = ExtNonNeg;
    /// Measure-theoretic convention 0·∞ = 0.
    fn mul(self, o: &ExtNonNeg) -> ExtNonNeg {
        match (self, o) {
            (ExtNonNeg::Finite(a), ExtNonNeg::Finite(b)) => ExtNonNeg::Finite(a * b),
            (ExtNonNeg::Finite(a), ExtNonNeg::Infinite) | (ExtNonNeg::Infinite, ExtNonNeg::Finite(a)) => {
                if a.is_zero() {
                    ExtNonNeg::zero()
                } else {
                    ExtNonNeg::Infinite
                }
            }
            _ => ExtNonNeg::Infinite,
        }
    }
}

impl PartialOrd for ExtNonNeg {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for ExtNonNeg {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (ExtNonNeg::Finite(a), ExtNonNeg::Finite(b)) => a.cmp(b),
            (ExtNonNeg::Finite(_), ExtNonNeg::Infinite) => Ordering::Less,
            (ExtNonNeg::Infinite, ExtNonNeg::Finite(_)) => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtNonNeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_exact())
    }
}
