use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::multiindex::MultiIndex;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

static FACTORIAL_CAP: AtomicUsize = AtomicUsize::new(256);
static FACTORIALS: LazyLock<RwLock<Vec<BigInt>>> = LazyLock::new(|| RwLock::new(vec![BigInt::one()]));

/// Sets how many factorials are memoized (default 256).
pub fn set_factorial_cap(cap: usize) {
    FACTORIAL_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// n!, memoized up to the configured cap.
pub fn factorial(n: u32) -> BigInt {
    let n = n as usize;
    if let Some(v) = FACTORIALS.read().expect("factorial cache poisoned").get(n) {
        return v.clone();
    }
    let cap = FACTORIAL_CAP.load(Ordering::Relaxed);
    if n < cap {
        let mut table = FACTORIALS.write().expect("factorial cache poisoned");
        while table.len() <= n {
            let k = table.len();
            let next = &table[k - 1] * BigInt::from(k);
            table.push(next);
        }
        return table[n].clone();
    }
    let start = cap.saturating_sub(1);
    let mut acc = factorial(start as u32);
    for k in start + 1..=n {
        acc *= BigInt::from(k);
    }
    acc
}

pub fn factorial_q(n: u32) -> Rational {
    rational::from_big(factorial(n))
}

/// C(n, k), zero for k > n.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_q(n: u32, k: u32) -> Rational {
    rational::from_big(binomial(n, k))
}

/// C(n, k) for a possibly negative upper entry treated as zero when n < 0.
pub fn binomial_i(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as u32, k as u32)
    }
}

/// Componentwise product of binomial coefficients, zero unless R ≤ I.
pub fn multi_binomial(i: &MultiIndex, r: &MultiIndex) -> Rational {
    let mut acc = BigInt::one();
    for (a, b) in i.entries().iter().zip(r.entries()) {
        if b > a {
            return Rational::zero();
        }
        acc *= binomial(*a, *b);
    }
    rational::from_big(acc)
}

/// Multinomial |K|!/K!.
pub fn multinomial(k: &MultiIndex) -> BigInt {
    factorial(k.abs()) / k.factorial()
}

/// Falling factorial n(n−1)…(n−k+1).
pub fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// Rising factorial (z)_r = z(z+1)…(z+r−1).
pub fn pochhammer(z: &Rational, r: u32) -> Rational {
    let mut acc = Rational::one();
    let mut f = z.clone();
    for _ in 0..r {
        acc *= &f;
        f += Rational::one();
    }
    acc
}

/// True iff 2ħ ∉ {0, −1, −1/2, −1/3, …}.
pub fn is_allowed_hbar(hbar: &Rational) -> bool {
    if hbar.is_zero() {
        return false;
    }
    if hbar.is_positive() {
        return true;
    }
    let k = -(hbar * rational::int(2)).recip();
    !(rational::is_integer(&k) && k.is_positive())
}

/// Constructive (b, c) with bᵞ ≤ (z)_γ/γ! ≤ cᵞ for all γ.
pub fn pochhammer_ratio_bounds(z: &Rational) -> Result<(Rational, Rational)> {
    if !z.is_positive() {
        return Err(Error::InvalidArgument(format!("pochhammer_ratio_bounds needs z > 0, got {z}")));
    }
    let one = Rational::one();
    Ok((z.clone().min(one.clone()), z.clone().max(one)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1, 2), 0), int(1));
        assert_eq!(pochhammer(&int(2), 3), int(24));
        assert_eq!(pochhammer(&int(-1), 3), int(0));
    }

    #[test]
    fn allowed_hbar_examples() {
        assert!(is_allowed_hbar(&rat(1, 2)));
        assert!(!is_allowed_hbar(&rat(-1, 4)));
        assert!(is_allowed_hbar(&rat(-1, 3)));
        assert!(!is_allowed_hbar(&int(0)));
    }

    #[test]
    fn ratio_bound_examples() {
        assert_eq!(pochhammer_ratio_bounds(&int(1)).unwrap(), (int(1), int(1)));
        assert_eq!(pochhammer_ratio_bounds(&int(2)).unwrap(), (int(1), int(2)));
        assert_eq!(pochhammer_ratio_bounds(&rat(1, 2)).unwrap(), (rat(1, 2), int(1)));
        assert!(pochhammer_ratio_bounds(&int(0)).is_err());
        let r = pochhammer(&int(2), 3) / factorial_q(3);
        assert!(int(1) <= r && r <= int(8));
        let r = pochhammer(&rat(1, 2), 2) / factorial_q(2);
        assert_eq!(r, rat(3, 8));
    }

    #[test]
    fn binomials() {
        let i = MultiIndex::new(vec![2, 1]);
        assert_eq!(multi_binomial(&i, &MultiIndex::new(vec![1, 1])), int(2));
        assert_eq!(multi_binomial(&MultiIndex::zero(2), &MultiIndex::zero(2)), int(1));
        assert_eq!(multi_binomial(&MultiIndex::new(vec![1, 0]), &MultiIndex::new(vec![2, 0])), int(0));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(multinomial(&MultiIndex::new(vec![1, 2])), BigInt::from(3));
    }

    #[test]
    fn factorial_beyond_cap_matches() {
        let direct: BigInt = (1..=300u32).fold(BigInt::one(), |a, k| a * BigInt::from(k));
        assert_eq!(factorial(300), direct);
    }
}
