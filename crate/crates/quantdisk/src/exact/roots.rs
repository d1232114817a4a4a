use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Exact square root of a nonnegative rational, if it is a square.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let p = r.numer().sqrt();
    let q = r.denom().sqrt();
    if &(&p * &p) == r.numer() && &(&q * &q) == r.denom() {
        Some(Rational::new(p, q))
    } else {
        None
    }
}

/// Brackets `x^(1/k)` for `x ≥ 0` by dyadic rationals with `bits` fractional bits.
pub fn root_bracket(x: &Rational, k: u32, bits: u64) -> (Rational, Rational) {
    assert!(k >= 1 && !x.is_negative());
    if x.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    if k == 1 {
        return (x.clone(), x.clone());
    }
    let scale = BigInt::one() << bits;
    // floor((x * scale^k)^(1/k)) computed from integer parts of a rational
    let scaled = x * Rational::from_integer(num_traits::pow(scale.clone(), k as usize));
    let lo_int = scaled.floor().to_integer().nth_root(k);
    let lo = Rational::new(lo_int.clone(), scale.clone());
    let hi_candidate = Rational::new(lo_int.clone(), scale.clone());
    let hi = if num_traits::pow(hi_candidate.clone(), k as usize) == *x {
        hi_candidate
    } else {
        Rational::new(lo_int + 1, scale)
    };
    (lo, hi)
}

/// Brackets `x^(p/q)` for `x ≥ 0`, `q ≥ 1`.
pub fn pow_frac_bracket(x: &Rational, p: u32, q: u32, bits: u64) -> (Rational, Rational) {
    let xp = num_traits::pow(x.clone(), p as usize);
    root_bracket(&xp, q, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn exact_squares() {
        assert_eq!(sqrt_exact(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(sqrt_exact(&int(2)), None);
    }

    #[test]
    fn root_brackets_contain() {
        let (lo, hi) = root_bracket(&int(2), 2, 40);
        assert!(&lo * &lo <= int(2) && int(2) <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1 << 39));
        let (lo, hi) = root_bracket(&int(27), 3, 8);
        assert_eq!((lo, hi), (int(3), int(3)));
    }
}
