//! Exact arithmetic: rationals, Gaussian rationals, multiindices and combinatorics.

pub mod combinat;
pub mod extended;
pub mod gaussian;
pub mod multiindex;
pub mod rational;
pub mod roots;

pub use combinat::{
    binomial_q,
    binomial, factorial, factorial_q, is_allowed_hbar, multi_binomial, multinomial, pochhammer,
    pochhammer_ratio_bounds,
};
pub use extended::ExtNonNeg;
pub use gaussian::GaussRat;
pub use multiindex::MultiIndex;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
