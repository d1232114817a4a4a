use crate::algebra::ops::multiply_unchecked;
use crate::algebra::{Bracket, Element, StructureModel};
use crate::error::Result;
use crate::exact::roots::root_bracket;
use crate::exact::{ExtNonNeg, Rational};

use super::htable::{EngineConfig, HEngine};

/// Result of a certified comparison lhs ≤ rhs between brackets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Undetermined,
}

/// Certified verdict for `lhs ≤ rhs`.
pub fn compare_le(lhs: &Bracket, rhs: &Bracket) -> Verdict {
    if lhs.hi <= ExtNonNeg::Finite(rhs.lo.clone()) {
        Verdict::Holds
    } else if ExtNonNeg::Finite(lhs.lo.clone()) > rhs.hi {
        Verdict::Violated
    } else {
        Verdict::Undetermined
    }
}

/// Both sides of h_{m,ℓ,γ}(a⋆b)² ≤ h_{m+1,ℓ,γ}(a)·h_{m+1,2^m+ℓ,γ}(b).
#[derive(Clone, Debug)]
pub struct ProductCheck {
    pub lhs: Bracket,
    pub rhs: Bracket,
    pub verdict: Verdict,
}

/// Root-free check of the product-continuity inequality for one (m, ℓ, γ).
pub fn check_product_inequality<M: StructureModel>(
    model: &M,
    a: &Element<M::Index>,
    b: &Element<M::Index>,
    m: u32,
    ell: u64,
    g: &M::Index,
) -> Result<ProductCheck> {
    let ab = multiply_unchecked(model, a, b);
    let ea = HEngine::new(model, a)?;
    let eb = HEngine::new(model, b)?;
    let eab = HEngine::new(model, &ab)?;
    Ok(product_check_with(&eab, &ea, &eb, m, ell, g))
}

/// Same check reusing engines (ab must be the product of the two elements).
pub fn product_check_with<M: StructureModel>(
    eab: &HEngine<'_, M>,
    ea: &HEngine<'_, M>,
    eb: &HEngine<'_, M>,
    m: u32,
    ell: u64,
    g: &M::Index,
) -> ProductCheck {
    let lhs = eab.h_squared(m, ell, g);
    let rhs = ea.cell(m + 1, ell, g).mul(&eb.cell(m + 1, (1u64 << m) + ell, g));
    let verdict = compare_le(&lhs, &rhs);
    ProductCheck { lhs, rhs, verdict }
}

/// Triangle inequality h(a+b)^{1/2^m} ≤ h(a)^{1/2^m} + h(b)^{1/2^m} via certified roots.
pub fn triangle_verdict(sum: &Rational, ha: &Rational, hb: &Rational, m: u32, bits: u64) -> Verdict {
    let k = 1u32 << m;
    let (ra_lo, ra_hi) = root_bracket(ha, k, bits);
    let (rb_lo, rb_hi) = root_bracket(hb, k, bits);
    let rhs_lo = crate::exact::rational::pow(&(ra_lo + rb_lo), k);
    let rhs_hi = crate::exact::rational::pow(&(ra_hi + rb_hi), k);
    if sum <= &rhs_lo {
        Verdict::Holds
    } else if sum > &rhs_hi {
        Verdict::Violated
    } else {
        Verdict::Undetermined
    }
}

pub fn default_engine<'a, M: StructureModel>(model: &'a M, a: &'a Element<M::Index>) -> Result<HEngine<'a, M>> {
    HEngine::with_config(model, a, EngineConfig::default())
}
