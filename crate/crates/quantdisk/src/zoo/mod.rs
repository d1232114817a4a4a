//! Concrete structure-constant models: polynomials, Laurent polynomials,
//! infinite matrices, group algebras and the flat Wick product.

pub mod group;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod wick;

pub use group::{group_character, group_rowsum, word_length, CharacterValue, Group, GroupElem, GroupModel};
pub use laurent::{laurent_rowsum, LaurentBasis, LaurentModel};
pub use matrix::{matrix_trace, MatrixBasis, MatrixModel, Pos};
pub use poly::{PolyBasis, PolyModel};
pub use wick::{WickFlatModel, WickIndex};

use num_traits::One;

use crate::algebra::Envelope;
use crate::exact::rational::pow;
use crate::exact::{factorial_q, Rational};

/// A rational upper bound for e^x, x ≥ 0.
pub fn exp_upper(x: &Rational) -> Rational {
    if x > &Rational::from_integer(64.into()) {
        // e < 3
        let n = x.ceil().to_integer();
        let n = u32::try_from(n).expect("exponent bound fits in u32");
        return pow(&Rational::from_integer(3.into()), n);
    }
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut j = 0u32;
    loop {
        j += 1;
        term = term * x / Rational::from_integer(j.into());
        sum += &term;
        // remaining terms shrink by at most x/(j+2) ≤ 1/2 each
        if x * Rational::from_integer(2.into()) <= Rational::from_integer((j + 2).into()) {
            let tail = &term * x / Rational::from_integer((j + 1).into()) * Rational::from_integer(2.into());
            if &tail * Rational::from_integer(1_000_000.into()) <= sum {
                return sum + tail;
            }
        }
    }
}

/// Envelope step for length-factorial rescalings with at most `g^r` indices of length r:
/// K' = K²·e^{gB²}, B' = 1 + gB².
pub(crate) fn length_factorial_step(env: &Envelope, g: &Rational) -> Option<Envelope> {
    if env.p != 0 {
        return None;
    }
    let x = g * &env.b * &env.b;
    Some(Envelope { k: &env.k * &env.k * exp_upper(&x), b: Rational::one() + x, p: 0 })
}

/// Σ_{r > depth} g^r·K²B^{2r}·L!/(r!(r−L)!), bounded by twice its first term once the
/// term ratio is ≤ 1/2.
pub(crate) fn length_factorial_tail(len_k: u64, depth: u64, env: &Envelope, g: &Rational) -> Option<Rational> {
    if env.p != 0 || depth < len_k {
        return None;
    }
    let x = g * &env.b * &env.b;
    let ratio = &x / Rational::from_integer(((depth + 2) * (depth + 2 - len_k)).into());
    if ratio * Rational::from_integer(2.into()) > Rational::one() {
        return None;
    }
    let r = (depth + 1) as u32;
    let l = len_k as u32;
    let t = &env.k * &env.k * factorial_q(l) * pow(&x, r) / (factorial_q(r) * factorial_q(r - l));
    Some(t * Rational::from_integer(2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn exp_upper_is_above() {
        for (x, e) in [(int(0), 1.0f64), (int(1), 1f64.exp()), (int(8), 8f64.exp()), (rat(1, 3), (1.0f64 / 3.0).exp())] {
            let u = crate::exact::rational::to_f64(&exp_upper(&x));
            assert!(u >= e && u <= e * 1.01, "{x}: {u} vs {e}");
        }
    }
}
