//! Sub-factorial growth: sup-seminorms ‖a‖_ε = sup |a_N| / (rank N)!^ε and the
//! ℓ¹-versus-sup comparison constant Σ_{n≥1} (n!)^{-ε/2}.

use num_traits::{One, Signed, Zero};

use crate::algebra::{Bracket, TailSource};
use crate::error::{Error, Result};
use crate::exact::rational::pow;
use crate::exact::roots::pow_frac_bracket;
use crate::exact::{factorial_q, ExtNonNeg, GaussRat, Rational};

use super::htable::ln_rational;

const ROOT_BITS: u64 = 96;

fn split_eps(eps: &Rational) -> Result<(u32, u32)> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    let p = u32::try_from(eps.numer()).map_err(|_| Error::InvalidArgument("epsilon numerator too large".into()))?;
    let q = u32::try_from(eps.denom()).map_err(|_| Error::InvalidArgument("epsilon denominator too large".into()))?;
    Ok((p, q))
}

/// ‖a‖_ε on a finite sample, with the exact witness.
#[derive(Clone, Debug)]
pub struct SupSeminorm {
    pub epsilon: Rational,
    /// (|a_N|² / (rank N)!^{2ε})^q as an exact rational, ε = p/q.
    pub powered: Rational,
    pub argmax: Option<usize>,
    pub value: f64,
}

/// sup over the sample of |a_N| / (rank N)!^ε.
pub fn sup_seminorm(sample: &[(u64, GaussRat)], epsilon: &Rational) -> Result<SupSeminorm> {
    let (p, q) = split_eps(epsilon)?;
    let mut best = Rational::zero();
    let mut argmax = None;
    for (i, (rank, a)) in sample.iter().enumerate() {
        let r = u32::try_from(*rank).map_err(|_| Error::InvalidArgument("rank too large".into()))?;
        let v = pow(&a.norm_sqr(), q) / pow(&factorial_q(r), 2 * p);
        if argmax.is_none() || v > best {
            best = v;
            argmax = Some(i);
        }
    }
    let value = if best.is_zero() { 0.0 } else { (ln_rational(&best) / (2.0 * q as f64)).exp() };
    Ok(SupSeminorm { epsilon: epsilon.clone(), powered: best, argmax, value })
}

/// Σ_{n≥1} (n!)^{-ε/2}: exact-root brackets for n ≤ depth plus a geometric tail.
pub fn comparison_constant(epsilon: &Rational, depth: u64) -> Result<Bracket> {
    let (p, q) = split_eps(epsilon)?;
    let depth = u32::try_from(depth).map_err(|_| Error::InvalidArgument("depth too large".into()))?;
    let term = |n: u32| pow_frac_bracket(&(Rational::one() / factorial_q(n)), p, 2 * q, ROOT_BITS);
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for n in 1..=depth {
        let (l, h) = term(n);
        lo += l;
        hi += h;
    }
    // t_{n+1}/t_n = (n+1)^{-ε/2} ≤ (depth+2)^{-ε/2} for n > depth
    let (_, rho) = pow_frac_bracket(&Rational::new(1.into(), (depth + 2).into()), p, 2 * q, ROOT_BITS);
    if rho >= Rational::one() {
        return Ok(Bracket::unbounded(lo, depth as u64));
    }
    let (_, next) = term(depth + 1);
    let tail = next / (Rational::one() - rho);
    Ok(Bracket::new(lo, ExtNonNeg::Finite(hi), depth as u64, TailSource::GeometricTail)
        .with_tail(&ExtNonNeg::Finite(tail), TailSource::GeometricTail))
}

/// A closed-form bound on |a_n| supplied with the sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedFormBound {
    /// |a_n| ≤ c·b^n.
    Geometric { c: Rational, b: Rational },
    /// |a_n| ≥ c·(n!)^{p0} with c > 0.
    FactorialLower { c: Rational, p0: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// |a_n| ≤ C·(n!)^ε for all n, with C^q = `constant_pow` (ε = p/q).
    Bounded { constant_pow: Rational, checked_up_to: u64 },
    /// ‖a‖_ε = ∞.
    Unbounded { reason: String },
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub sup: Vec<SupSeminorm>,
    pub certificates: Vec<(Rational, Certificate)>,
    /// Some(true) when sub-factorial growth is certified, Some(false) when refuted.
    pub subfactorial: Option<bool>,
}

fn certify_geometric(c: &Rational, b: &Rational, p: u32, q: u32) -> Certificate {
    // b^{nq}/(n!)^p is nonincreasing from the first n with b^q ≤ (n+1)^p on
    let bq = pow(b, q);
    let mut n0 = 0u32;
    while pow(&Rational::from_integer((n0 + 1).into()), p) < bq {
        n0 += 1;
    }
    let mut best = Rational::zero();
    for n in 0..=n0 {
        let v = pow(b, n * q) / pow(&factorial_q(n), p);
        best = best.max(v);
    }
    Certificate::Bounded { constant_pow: pow(c, q) * best, checked_up_to: n0 as u64 }
}

/// Sup-seminorms of a sample and, given a closed-form bound, a growth certificate per ε.
pub fn growth_classify(sample: &[(u64, GaussRat)], eps_list: &[Rational], bound: Option<&ClosedFormBound>) -> Result<GrowthReport> {
    let mut sup = Vec::new();
    let mut certificates = Vec::new();
    for eps in eps_list {
        let (p, q) = split_eps(eps)?;
        sup.push(sup_seminorm(sample, eps)?);
        let cert = match bound {
            None => Certificate::Inconclusive,
            Some(ClosedFormBound::Geometric { c, b }) => certify_geometric(&c.abs(), &b.abs(), p, q),
            Some(ClosedFormBound::FactorialLower { c, p0 }) => {
                if c.is_positive() && eps < p0 {
                    Certificate::Unbounded { reason: format!("|a_n|/(n!)^{eps} ≥ c·(n!)^{} → ∞", p0 - eps) }
                } else {
                    Certificate::Inconclusive
                }
            }
        };
        certificates.push((eps.clone(), cert));
    }
    let subfactorial = match bound {
        Some(ClosedFormBound::Geometric { .. }) => Some(true),
        Some(ClosedFormBound::FactorialLower { c, p0 }) if c.is_positive() && p0.is_positive() => Some(false),
        _ => None,
    };
    Ok(GrowthReport { sup, certificates, subfactorial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn comparison_at_two_contains_e_minus_one() {
        let b = comparison_constant(&int(2), 20).unwrap();
        // e − 1 ∈ [s, s + 2/26!] with s = Σ_{n=1}^{25} 1/n!
        let s: Rational = (1..=25).map(|n| Rational::one() / factorial_q(n)).sum();
        let upper = &s + int(2) / factorial_q(26);
        assert!(b.lo <= upper);
        assert!(b.hi >= ExtNonNeg::Finite(s));
    }

    #[test]
    fn geometric_is_certified() {
        let bound = ClosedFormBound::Geometric { c: int(1), b: int(2) };
        let r = growth_classify(&[], &[rat(1, 2), rat(1, 3)], Some(&bound)).unwrap();
        assert_eq!(r.subfactorial, Some(true));
        for (_, c) in &r.certificates {
            assert!(matches!(c, Certificate::Bounded { .. }));
        }
    }

    #[test]
    fn factorial_is_rejected_below_one() {
        let bound = ClosedFormBound::FactorialLower { c: int(1), p0: int(1) };
        let r = growth_classify(&[], &[rat(1, 2), rat(9, 10)], Some(&bound)).unwrap();
        assert_eq!(r.subfactorial, Some(false));
        assert!(r.certificates.iter().all(|(_, c)| matches!(c, Certificate::Unbounded { .. })));
    }

    #[test]
    fn sup_norm_picks_largest() {
        let s = vec![(0, GaussRat::from_ints(1, 0)), (3, GaussRat::from_ints(12, 0))];
        let n = sup_seminorm(&s, &int(1)).unwrap();
        assert_eq!(n.argmax, Some(1));
        assert!((n.value - 2.0).abs() < 1e-12);
    }
}
