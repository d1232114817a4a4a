use std::fmt::Write;

use num_traits::Zero;

use super::element::Element;
use super::model::StructureModel;
use crate::error::{Error, Result};
use crate::exact::GaussRat;

fn check_support<M: StructureModel>(model: &M, a: &Element<M::Index>) -> Result<()> {
    for i in a.support() {
        if !model.contains(i) {
            return Err(Error::OutsideUniverse { model: model.name(), index: i.to_string() });
        }
    }
    Ok(())
}

/// Bilinear extension of the structure constants.
pub fn multiply<M: StructureModel>(model: &M, a: &Element<M::Index>, b: &Element<M::Index>) -> Result<Element<M::Index>> {
    check_support(model, a)?;
    check_support(model, b)?;
    Ok(multiply_unchecked(model, a, b))
}

pub(crate) fn multiply_unchecked<M: StructureModel>(model: &M, a: &Element<M::Index>, b: &Element<M::Index>) -> Element<M::Index> {
    let mut out = Element::zero();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            let xy = x * y;
            for (k, c) in model.product_fan(i, j) {
                out.add_term(k, xy.scale(&c));
            }
        }
    }
    out
}

pub fn coefficient<I: Ord + Clone>(a: &Element<I>, g: &I) -> GaussRat {
    a.coefficient(g)
}

/// Antilinear index-mapped involution.
pub fn involute<M: StructureModel>(model: &M, a: &Element<M::Index>) -> Result<Element<M::Index>> {
    let mut out = Element::zero();
    for (i, c) in a.iter() {
        let j = model.involution(i).ok_or_else(|| Error::NoInvolution(model.name()))?;
        out.add_term(j, c.conj());
    }
    Ok(out)
}

/// Outcome of an exhaustive associativity sweep.
#[derive(Clone, Debug, Default)]
pub struct AssociativityReport {
    pub checked: usize,
    /// Positions (i, j, k) in the sample of failing triples.
    pub failures: Vec<(usize, usize, usize)>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn describe<I: Ord + Clone + std::fmt::Display>(&self, sample: &[Element<I>]) -> String {
        let mut s = format!("{} triples, {} failures", self.checked, self.failures.len());
        if let Some(&(i, j, k)) = self.failures.first() {
            let show = |e: &Element<I>| e.iter().map(|(x, c)| format!("{c}*[{x}]")).collect::<Vec<_>>().join(" + ");
            let _ = write!(s, "; witness ({}) ({}) ({})", show(&sample[i]), show(&sample[j]), show(&sample[k]));
        }
        s
    }
}

/// Checks (a⋆b)⋆c = a⋆(b⋆c) on every triple from the sample.
pub fn check_associativity<M: StructureModel>(model: &M, sample: &[Element<M::Index>]) -> AssociativityReport {
    let mut report = AssociativityReport::default();
    let products: Vec<Vec<Element<M::Index>>> = sample
        .iter()
        .map(|a| sample.iter().map(|b| multiply_unchecked(model, a, b)).collect())
        .collect();
    for (i, a) in sample.iter().enumerate() {
        for j in 0..sample.len() {
            for (k, c) in sample.iter().enumerate() {
                report.checked += 1;
                let left = multiply_unchecked(model, &products[i][j], c);
                let right = multiply_unchecked(model, a, &products[j][k]);
                if !left.sub(&right).is_zero() {
                    report.failures.push((i, j, k));
                }
            }
        }
    }
    report
}

/// Checks the unit law on a sample; `None` when the model has no unit.
pub fn check_unit<M: StructureModel>(model: &M, sample: &[Element<M::Index>]) -> Option<bool> {
    let u = Element::basis(model.unit()?);
    Some(sample.iter().all(|a| {
        multiply_unchecked(model, &u, a).sub(a).is_zero() && multiply_unchecked(model, a, &u).sub(a).is_zero()
    }))
}

/// Σ_β |C^γ_{αβ}| computed from a finite list of candidate β, for cross-checking models.
pub fn row_sum_by_enumeration<M: StructureModel>(model: &M, a: &M::Index, g: &M::Index, candidates: &[M::Index]) -> crate::exact::Rational {
    let mut acc = crate::exact::Rational::zero();
    for b in candidates {
        for (k, c) in model.product_fan(a, b) {
            if &k == g {
                acc += num_traits::Signed::abs(&c);
            }
        }
    }
    acc
}
