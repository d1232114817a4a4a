use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{involute, Element};
use crate::disk::{disk_multiply, eval_disk, DiskIndex, DiskModel, DiskPoint};
use crate::error::{Error, Result};
use crate::exact::combinat::{factorial_q, multi_binomial, pochhammer};
use crate::exact::rational::from_big;
use crate::exact::{binomial_q, GaussRat, MultiIndex, Rational};

/// Vector Σ ψ_Q f_{0,Q} of the complement of the Gel'fand ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<GnsTerm>", from = "Vec<GnsTerm>")]
pub struct GnsVector {
    terms: BTreeMap<MultiIndex, GaussRat>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GnsTerm {
    #[serde(rename = "Q")]
    q: MultiIndex,
    #[serde(flatten)]
    c: GaussRat,
}

impl From<GnsVector> for Vec<GnsTerm> {
    fn from(v: GnsVector) -> Self {
        v.terms.into_iter().map(|(q, c)| GnsTerm { q, c }).collect()
    }
}

impl From<Vec<GnsTerm>> for GnsVector {
    fn from(ts: Vec<GnsTerm>) -> Self {
        GnsVector::from_terms(ts.into_iter().map(|t| (t.q, t.c)))
    }
}

impl GnsVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(q: MultiIndex) -> Self {
        Self::from_terms([(q, GaussRat::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, GaussRat)>) -> Self {
        let mut v = Self::zero();
        for (q, c) in terms {
            v.add_term(q, c);
        }
        v
    }

    pub fn add_term(&mut self, q: MultiIndex, c: GaussRat) {
        let e = self.terms.entry(q).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coefficient(&self, q: &MultiIndex) -> GaussRat {
        self.terms.get(q).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest |Q| in the support.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::abs).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (q, c) in o.iter() {
            out.add_term(q.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        Self::from_terms(self.iter().map(|(q, c)| (q.clone(), c * s)))
    }
}

fn require_positive(hbar: &Rational) -> Result<()> {
    if hbar.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveHbar(hbar.to_string()))
    }
}

/// Weight δ₀(f_{0,Q}* ⋆ f_{0,Q}) = (1/2ħ)_{|Q|}/(|Q|!² Q!). The 1/Q! is the 1/K! of the
/// product at K = Q; it is absent from the textbook statement and needed for ⟨ψ, φ⟩ = δ₀(ψ* ⋆ φ).
fn weight(q: &MultiIndex, x: &Rational) -> Rational {
    let k = q.abs();
    let f = factorial_q(k);
    pochhammer(x, k) / (&f * &f * from_big(q.factorial()))
}

/// ⟨ψ, φ⟩ = δ₀(ιψ* ⋆ ιφ), antilinear in ψ.
pub fn gns_inner(psi: &GnsVector, phi: &GnsVector, hbar: &Rational) -> Result<GaussRat> {
    require_positive(hbar)?;
    let x = (Rational::from_integer(2.into()) * hbar).recip();
    let mut acc = GaussRat::zero();
    for (q, c) in psi.iter() {
        let d = phi.coefficient(q);
        if !d.is_zero() {
            acc += (c.conj() * d).scale(&weight(q, &x));
        }
    }
    Ok(acc)
}

/// Keeps the coefficients at (0, Q).
pub fn gns_project(a: &Element<DiskIndex>) -> GnsVector {
    GnsVector::from_terms(a.iter().filter(|(d, _)| d.p.is_zero()).map(|(d, c)| (d.q.clone(), c.clone())))
}

/// ι: the vector as an element of the disk algebra.
pub fn gns_embed(psi: &GnsVector, n: usize) -> Result<Element<DiskIndex>> {
    let mut out = Element::zero();
    for (q, c) in psi.iter() {
        out.add_term(DiskIndex::new(MultiIndex::zero(n), q.clone())?, c.clone());
    }
    Ok(out)
}

fn check_dims(model: &DiskModel, psi: &GnsVector) -> Result<()> {
    match psi.iter().find(|(q, _)| q.dim() != model.n()) {
        Some((q, _)) => Err(Error::InvalidArgument(format!("GNS index {q} does not have dimension {}", model.n()))),
        None => Ok(()),
    }
}

/// π(a)ψ = pr(a ⋆ ιψ).
pub fn gns_rep_definitional(model: &DiskModel, a: &Element<DiskIndex>, psi: &GnsVector) -> Result<GnsVector> {
    require_positive(model.hbar())?;
    check_dims(model, psi)?;
    Ok(gns_project(&disk_multiply(model, a, &gns_embed(psi, model.n())?)?))
}

/// π(a)ψ by the explicit P ≤ S double sum.
pub fn gns_rep_closed_form(model: &DiskModel, a: &Element<DiskIndex>, psi: &GnsVector) -> Result<GnsVector> {
    require_positive(model.hbar())?;
    check_dims(model, psi)?;
    let x = (Rational::from_integer(2.into()) * model.hbar()).recip();
    let ratio = |k: u32| pochhammer(&x, k) / factorial_q(k);
    let mut out = GnsVector::zero();
    for (d, a_pq) in a.iter() {
        let (p, q) = (&d.p, &d.q);
        let alpha = d.level();
        let base = (from_big(p.factorial()) * factorial_q(alpha - q.abs())).recip();
        for (s, psi_s) in psi.iter() {
            let Some(s_minus_p) = s.checked_sub(p) else { continue };
            let target = q.add(&s_minus_p);
            let top = alpha + s_minus_p.abs();
            let bottom = q.abs() + s_minus_p.abs();
            let c = &base * multi_binomial(&target, q) * binomial_q(top, s.abs()) * ratio(top) / ratio(bottom);
            out.add_term(target, (a_pq * psi_s).scale(&c));
        }
    }
    Ok(out)
}

/// E_w = Σ |Q|! w^Q/(1 − |w|²)^{|Q|} f_{0,Q} truncated to |Q| ≤ Γ, normalized against
/// [`gns_inner`] so that ⟨E_w, ψ⟩ = ψ(w).
pub fn coherent_vector(w: &DiskPoint, cap: u32) -> GnsVector {
    let n = w.n();
    let r = Rational::one() - w.coords().iter().map(GaussRat::norm_sqr).fold(Rational::zero(), |a, b| a + b);
    let mut out = GnsVector::zero();
    for q in MultiIndex::with_abs_le(n, cap) {
        let k = q.abs();
        let mut wq = GaussRat::one();
        for (wi, e) in w.coords().iter().zip(q.entries()) {
            wq *= wi.pow(*e);
        }
        let c = factorial_q(k) / crate::exact::rational::pow(&r, k);
        out.add_term(q, wq.scale(&c));
    }
    out
}

/// δ₀(a* ⋆ a), exact and asserted non-negative.
pub fn positivity_check(model: &DiskModel, a: &Element<DiskIndex>) -> Result<Rational> {
    require_positive(model.hbar())?;
    let prod = disk_multiply(model, &involute(model, a)?, a)?;
    let v = eval_disk(&prod, &DiskPoint::origin(model.n()), model.hbar())?;
    if !v.im.is_zero() || v.re.is_negative() {
        return Err(Error::OutsideDomain(format!("δ₀(a*a) = {v} is not a non-negative real")));
    }
    Ok(v.re)
}
