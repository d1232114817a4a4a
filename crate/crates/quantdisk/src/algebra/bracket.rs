use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exact::{ExtNonNeg, Rational};

/// How the upper end of a [`Bracket`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum TailSource {
    Exact,
    GeometricTail,
    ModelMajorant,
    DivergentWitness,
}

/// Certified interval [lo, hi] ⊂ [0, +∞] for a nonnegative series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bracket {
    pub lo: Rational,
    pub hi: ExtNonNeg,
    pub depth: u64,
    pub tail: TailSource,
}

impl Bracket {
    pub fn exact(v: Rational) -> Self {
        debug_assert!(!v.is_negative());
        Bracket { hi: ExtNonNeg::Finite(v.clone()), lo: v, depth: 0, tail: TailSource::Exact }
    }

    pub fn zero() -> Self {
        Bracket::exact(Rational::zero())
    }

    /// Builds a bracket and normalizes the provenance so that `Exact` ⟺ lo = hi.
    pub fn new(lo: Rational, hi: ExtNonNeg, depth: u64, tail: TailSource) -> Self {
        let tight = hi.as_finite() == Some(&lo);
        let tail = match (tight, tail) {
            (true, TailSource::DivergentWitness) => TailSource::DivergentWitness,
            (true, _) => TailSource::Exact,
            (false, TailSource::Exact) => TailSource::ModelMajorant,
            (false, t) => t,
        };
        Bracket { lo, hi, depth, tail }
    }

    pub fn divergent(lo: Rational, depth: u64) -> Self {
        Bracket { lo, hi: ExtNonNeg::Infinite, depth, tail: TailSource::DivergentWitness }
    }

    pub fn unbounded(lo: Rational, depth: u64) -> Self {
        Bracket { lo, hi: ExtNonNeg::Infinite, depth, tail: TailSource::ModelMajorant }
    }

    pub fn is_exact(&self) -> bool {
        self.tail == TailSource::Exact
    }

    pub fn is_divergent(&self) -> bool {
        self.tail == TailSource::DivergentWitness
    }

    pub fn is_finite(&self) -> bool {
        !self.hi.is_infinite()
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        if self.is_exact() {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && ExtNonNeg::Finite(v.clone()) <= self.hi
    }

    pub fn width(&self) -> ExtNonNeg {
        match &self.hi {
            ExtNonNeg::Finite(h) => ExtNonNeg::Finite(h - &self.lo),
            ExtNonNeg::Infinite => ExtNonNeg::Infinite,
        }
    }

    fn combine_source(a: TailSource, b: TailSource) -> TailSource {
        a.max(b)
    }

    pub fn add(&self, o: &Bracket) -> Bracket {
        Bracket::new(
            &self.lo + &o.lo,
            &self.hi + &o.hi,
            self.depth.max(o.depth),
            Self::combine_source(self.tail, o.tail),
        )
    }

    /// Multiplies by a nonnegative rational.
    pub fn scale(&self, s: &Rational) -> Bracket {
        if s.is_zero() {
            return Bracket::zero();
        }
        Bracket::new(&self.lo * s, &self.hi * &ExtNonNeg::Finite(s.clone()), self.depth, self.tail)
    }

    pub fn square(&self) -> Bracket {
        Bracket::new(&self.lo * &self.lo, self.hi.square(), self.depth, self.tail)
    }

    pub fn mul(&self, o: &Bracket) -> Bracket {
        Bracket::new(&self.lo * &o.lo, &self.hi * &o.hi, self.depth.max(o.depth), Self::combine_source(self.tail, o.tail))
    }

    /// Adds a certified tail `t ≥ 0` to the upper end.
    pub fn with_tail(&self, t: &ExtNonNeg, source: TailSource) -> Bracket {
        let zero_tail = t.as_finite().is_some_and(|v| v.is_zero());
        let tail = if zero_tail { self.tail } else { Self::combine_source(self.tail, source) };
        Bracket::new(self.lo.clone(), &self.hi + t, self.depth, tail)
    }

    pub fn at_depth(mut self, depth: u64) -> Bracket {
        self.depth = depth;
        self
    }

    pub fn lo_f64(&self) -> f64 {
        crate::exact::rational::to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}] (depth {}, {:?})", self.lo, self.hi, self.depth, self.tail)
        }
    }
}
