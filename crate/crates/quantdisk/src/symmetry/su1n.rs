use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::matrix::CMatrix;
use crate::algebra::{multiply, Element};
use crate::disk::{ConeModel, IndexTriple};
use crate::error::{Error, Result};
use crate::exact::rational::{int, pow};
use crate::exact::{GaussRat, MultiIndex, Rational};

/// An element U of SU(1, n): U†ηU = η and det U = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    u: CMatrix,
}

impl GroupElement {
    pub fn new(u: CMatrix) -> Result<Self> {
        if u.size() < 2 {
            return Err(Error::NotInGroup("matrix must be at least 2×2".into()));
        }
        let eta = CMatrix::eta(u.size());
        let diff = u.adjoint().mul(&eta).mul(&u).sub(&eta);
        if !diff.is_zero() {
            return Err(Error::NotInGroup(format!("U†ηU − η = {diff}")));
        }
        let det = u.det();
        if det != GaussRat::one() {
            return Err(Error::NotInGroup(format!("det U = {det}")));
        }
        Ok(GroupElement { u })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { u: CMatrix::identity(n + 1) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.u
    }

    pub fn n(&self) -> usize {
        self.u.size() - 1
    }

    pub fn compose(&self, o: &GroupElement) -> GroupElement {
        GroupElement { u: self.u.mul(&o.u) }
    }
}

/// An element ξ of su(1, n): ξ†η + ηξ = 0 and tr ξ = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    xi: CMatrix,
}

impl LieElement {
    pub fn new(xi: CMatrix) -> Result<Self> {
        if xi.size() < 2 {
            return Err(Error::NotInLieAlgebra("matrix must be at least 2×2".into()));
        }
        let eta = CMatrix::eta(xi.size());
        let diff = xi.adjoint().mul(&eta).add(&eta.mul(&xi));
        if !diff.is_zero() {
            return Err(Error::NotInLieAlgebra(format!("ξ†η + ηξ = {diff}")));
        }
        let tr = xi.trace();
        if !tr.is_zero() {
            return Err(Error::NotInLieAlgebra(format!("tr ξ = {tr}")));
        }
        Ok(LieElement { xi })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.xi
    }

    pub fn n(&self) -> usize {
        self.xi.size() - 1
    }

    pub fn bracket(&self, o: &LieElement) -> LieElement {
        LieElement { xi: self.xi.commutator(&o.xi) }
    }
}

/// The holomorphic exponent vector (γ − |I|, I) of e_{I,J,γ}.
fn full_exponent(i: &MultiIndex, gamma: u32) -> Vec<u32> {
    let mut e = vec![gamma - i.abs()];
    e.extend_from_slice(i.entries());
    e
}

type Poly = BTreeMap<Vec<u32>, GaussRat>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(GaussRat::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Π_i (Σ_j U_ij z^j)^{E_i} as a polynomial in z⁰, …, zⁿ.
fn linear_powers(u: &CMatrix, exps: &[u32]) -> Poly {
    let size = u.size();
    let mut acc: Poly = [(vec![0; size], GaussRat::one())].into_iter().collect();
    for (i, &e) in exps.iter().enumerate() {
        let lin: Poly = (0..size)
            .filter(|&j| !u.get(i, j).is_zero())
            .map(|j| {
                let mut v = vec![0; size];
                v[j] = 1;
                (v, u.get(i, j).clone())
            })
            .collect();
        for _ in 0..e {
            acc = poly_mul(&acc, &lin);
        }
    }
    acc
}

fn conj_matrix(u: &CMatrix) -> CMatrix {
    let rows = u.rows().into_iter().map(|r| r.iter().map(GaussRat::conj).collect()).collect();
    CMatrix::from_rows(rows).expect("square")
}

/// Matrix coefficients M_{IJ}^{KL}(U, γ) of U*f_{I,J,γ} = Σ M f_{K,L,γ}, keyed by
/// (source, target).
pub fn pullback_matrix(g: &GroupElement, gamma: u32) -> BTreeMap<(IndexTriple, IndexTriple), GaussRat> {
    let n = g.n();
    let u = g.matrix();
    let ubar = conj_matrix(u);
    let ms = MultiIndex::with_abs_le(n, gamma);
    let hol: HashMap<MultiIndex, Poly> = ms.iter().map(|i| (i.clone(), linear_powers(u, &full_exponent(i, gamma)))).collect();
    let anti: HashMap<MultiIndex, Poly> = ms.iter().map(|j| (j.clone(), linear_powers(&ubar, &full_exponent(j, gamma)))).collect();
    let mut out = BTreeMap::new();
    for src in IndexTriple::at_level(n, gamma) {
        let (h, a) = (&hol[&src.p], &anti[&src.q]);
        for (ek, ck) in h {
            for (el, cl) in a {
                let k = MultiIndex::new(ek[1..].to_vec());
                let l = MultiIndex::new(el[1..].to_vec());
                let tgt = IndexTriple::new(k, l, gamma).expect("homogeneous of degree γ");
                let c = (ck * cl).scale(&(src.prefactor() / tgt.prefactor()));
                if !c.is_zero() {
                    out.insert((src.clone(), tgt), c);
                }
            }
        }
    }
    out
}

/// (n+1)^{4γ} · (max|U_ij|²)^{2γ}, the square of the entrywise bound on M(U, γ).
pub fn pullback_bound_sqr(g: &GroupElement, gamma: u32) -> Rational {
    pow(&int(g.n() as i64 + 1), 4 * gamma) * pow(&g.matrix().max_norm_sqr(), 2 * gamma)
}

/// U*a, level by level.
pub fn apply_pullback(g: &GroupElement, a: &Element<IndexTriple>) -> Result<Element<IndexTriple>> {
    let mut cache: HashMap<u32, BTreeMap<(IndexTriple, IndexTriple), GaussRat>> = HashMap::new();
    let mut out = Element::zero();
    for (t, c) in a.iter() {
        if t.dim() != g.n() {
            return Err(Error::InvalidArgument(format!("{t} does not match n = {}", g.n())));
        }
        let m = cache.entry(t.alpha).or_insert_with(|| pullback_matrix(g, t.alpha));
        for ((_, tgt), v) in m.iter().filter(|((src, _), _)| src == t) {
            out.add_term(tgt.clone(), c * v);
        }
    }
    Ok(out)
}

/// Result of an automorphism check with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCheck {
    pub holds: bool,
    /// U*(a ⋆̃ b) − (U*a) ⋆̃ (U*b) when nonzero.
    pub witness: Option<Element<IndexTriple>>,
}

/// Compares U*(a ⋆̃ b) with (U*a) ⋆̃ (U*b).
pub fn check_automorphism(
    cone: &ConeModel,
    g: &GroupElement,
    a: &Element<IndexTriple>,
    b: &Element<IndexTriple>,
) -> Result<AutomorphismCheck> {
    let lhs = apply_pullback(g, &multiply(cone, a, b)?)?;
    let rhs = multiply(cone, &apply_pullback(g, a)?, &apply_pullback(g, b)?)?;
    let diff = lhs.sub(&rhs);
    Ok(if diff.is_zero() {
        AutomorphismCheck { holds: true, witness: None }
    } else {
        AutomorphismCheck { holds: false, witness: Some(diff) }
    })
}

fn level_one(n: usize, hol: usize, anti: usize) -> IndexTriple {
    let pick = |k: usize| if k == 0 { MultiIndex::zero(n) } else { MultiIndex::unit(n, k - 1) };
    IndexTriple::new(pick(hol), pick(anti), 1).expect("level one")
}

/// J_ξ = (i/2) Σ z̄^k η_kk ξ_kj z^j in the f-basis; z̄^k z^j = 2ħ f_{j,k,1}.
pub fn momentum_element(xi: &LieElement, hbar: &Rational) -> Element<IndexTriple> {
    let n = xi.n();
    let ih = GaussRat::new(Rational::zero(), hbar.clone());
    let mut out = Element::zero();
    for k in 0..=n {
        let eta = if k == 0 { -GaussRat::one() } else { GaussRat::one() };
        for j in 0..=n {
            let x = xi.matrix().get(k, j);
            if x.is_zero() {
                continue;
            }
            out.add_term(level_one(n, j, k), &ih * &eta * x.clone());
        }
    }
    out
}

/// d/dt|₀ exp(tξ)* a, computed on monomials.
pub fn infinitesimal_action(xi: &LieElement, a: &Element<IndexTriple>) -> Element<IndexTriple> {
    let x = xi.matrix();
    let size = x.size();
    let mut out = Element::zero();
    for (t, c) in a.iter() {
        let e = full_exponent(&t.p, t.alpha);
        let f = full_exponent(&t.q, t.alpha);
        let mut push = |hol: &[u32], anti: &[u32], w: GaussRat| {
            let tgt = IndexTriple::new(MultiIndex::new(hol[1..].to_vec()), MultiIndex::new(anti[1..].to_vec()), t.alpha)
                .expect("same level");
            let s = t.prefactor() / tgt.prefactor();
            out.add_term(tgt, c * &w.scale(&s));
        };
        for a_ in 0..size {
            if e[a_] == 0 && f[a_] == 0 {
                continue;
            }
            for b_ in 0..size {
                let xab = x.get(a_, b_);
                if xab.is_zero() {
                    continue;
                }
                if e[a_] > 0 {
                    let mut h = e.clone();
                    h[a_] -= 1;
                    h[b_] += 1;
                    push(&h, &f, xab.scale(&int(e[a_] as i64)));
                }
                if f[a_] > 0 {
                    let mut h = f.clone();
                    h[a_] -= 1;
                    h[b_] += 1;
                    push(&e, &h, xab.conj().scale(&int(f[a_] as i64)));
                }
            }
        }
    }
    out
}

/// Sign s in [J_ξ, f]_⋆̃ = s·iħ·dμ(ξ)f, fixed once from the golden test.
pub const DERIVATION_SIGN: i8 = -1;

fn commutator(cone: &ConeModel, a: &Element<IndexTriple>, b: &Element<IndexTriple>) -> Result<Element<IndexTriple>> {
    Ok(multiply(cone, a, b)?.sub(&multiply(cone, b, a)?))
}

fn derivation_sides(
    cone: &ConeModel,
    xi: &LieElement,
    f: &Element<IndexTriple>,
) -> Result<(Element<IndexTriple>, Element<IndexTriple>)> {
    let j = momentum_element(xi, &cone.hbar);
    let ih = GaussRat::new(Rational::zero(), cone.hbar.clone());
    Ok((commutator(cone, &j, f)?, infinitesimal_action(xi, f).scale(&ih)))
}

/// The sign s ∈ {+1, −1} for which the derivation identity holds on `f`, if any.
/// When both sides vanish every sign fits and the pinned one is reported.
pub fn derivation_sign(cone: &ConeModel, xi: &LieElement, f: &Element<IndexTriple>) -> Result<Option<i8>> {
    let (lhs, d) = derivation_sides(cone, xi, f)?;
    if lhs.is_zero() && d.is_zero() {
        Ok(Some(DERIVATION_SIGN))
    } else if lhs == d {
        Ok(Some(1))
    } else if lhs == d.scale(&-GaussRat::one()) {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

/// Outcome of the momentum-map checks for a pair of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumReport {
    /// [J_ξ, J_ζ]_⋆̃ = iħ J_{[ξ,ζ]}.
    pub bracket_holds: bool,
    /// Every sample satisfied the derivation identity with [`DERIVATION_SIGN`].
    pub derivation_holds: bool,
    pub samples: usize,
}

impl MomentumReport {
    pub fn passed(&self) -> bool {
        self.bracket_holds && self.derivation_holds
    }
}

/// Checks the momentum relations for ξ, ζ and the derivation identity on all basis
/// vectors up to `level`.
pub fn check_momentum_relations(cone: &ConeModel, xi: &LieElement, zeta: &LieElement, level: u32) -> Result<MomentumReport> {
    if xi.n() != cone.n || zeta.n() != cone.n {
        return Err(Error::InvalidArgument("Lie elements do not match the cone dimension".into()));
    }
    let h = &cone.hbar;
    let lhs = commutator(cone, &momentum_element(xi, h), &momentum_element(zeta, h))?;
    let ih = GaussRat::new(Rational::zero(), h.clone());
    let rhs = momentum_element(&xi.bracket(zeta), h).scale(&ih);
    let mut derivation_holds = true;
    let mut samples = 0;
    for t in IndexTriple::up_to(cone.n, level) {
        let f = Element::basis(t);
        for g in [xi, zeta] {
            samples += 1;
            if derivation_sign(cone, g, &f)? != Some(DERIVATION_SIGN) {
                derivation_holds = false;
            }
        }
    }
    Ok(MomentumReport { bracket_holds: lhs == rhs, derivation_holds, samples })
}

/// The element y = 2ħ(f_{0,0,1} − Σᵢ f_{eᵢ,eᵢ,1}).
pub fn y_element(cone: &ConeModel) -> Element<IndexTriple> {
    cone.y_minus_one().add(&cone.unit_element())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn g(re: Rational, im: Rational) -> GaussRat {
        GaussRat::new(re, im)
    }

    fn r(x: Rational) -> GaussRat {
        GaussRat::real(x)
    }

    pub(crate) fn phase() -> GroupElement {
        let u = g(rat(3, 5), rat(4, 5));
        GroupElement::new(CMatrix::from_rows(vec![vec![u.clone(), GaussRat::zero()], vec![GaussRat::zero(), u.conj()]]).unwrap())
            .unwrap()
    }

    pub(crate) fn boost() -> GroupElement {
        GroupElement::new(
            CMatrix::from_rows(vec![vec![r(rat(5, 4)), r(rat(3, 4))], vec![r(rat(3, 4)), r(rat(5, 4))]]).unwrap(),
        )
        .unwrap()
    }

    fn generators() -> (LieElement, LieElement) {
        let i = GaussRat::i();
        let xi = LieElement::new(CMatrix::from_rows(vec![vec![i.clone(), GaussRat::zero()], vec![GaussRat::zero(), -i]]).unwrap())
            .unwrap();
        let zeta = LieElement::new(
            CMatrix::from_rows(vec![vec![GaussRat::zero(), GaussRat::one()], vec![GaussRat::one(), GaussRat::zero()]]).unwrap(),
        )
        .unwrap();
        (xi, zeta)
    }

    #[test]
    fn validation() {
        let bad = CMatrix::from_rows(vec![vec![r(int(2)), GaussRat::zero()], vec![GaussRat::zero(), r(rat(1, 2))]]).unwrap();
        assert!(GroupElement::new(bad).is_err());
        assert!(LieElement::new(CMatrix::identity(2)).is_err());
        phase();
        boost();
    }

    #[test]
    fn identity_pullback() {
        let m = pullback_matrix(&GroupElement::identity(1), 2);
        assert_eq!(m.len(), 9);
        assert!(m.iter().all(|((s, t), v)| s == t && v.is_one()));
    }

    #[test]
    fn phase_is_diagonal() {
        for ((s, t), v) in pullback_matrix(&phase(), 2) {
            assert_eq!(s, t);
            assert_eq!(v.norm_sqr(), int(1));
        }
    }

    #[test]
    fn composition_law_and_bound() {
        let (u, v) = (phase(), boost());
        for gamma in 0..=2 {
            let muv = pullback_matrix(&u.compose(&v), gamma);
            let mu = pullback_matrix(&u, gamma);
            let mv = pullback_matrix(&v, gamma);
            for src in IndexTriple::at_level(1, gamma) {
                let lhs = apply_pullback(&u.compose(&v), &Element::basis(src.clone())).unwrap();
                let rhs = apply_pullback(&v, &apply_pullback(&u, &Element::basis(src.clone())).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
            for (m, el) in [(&muv, u.compose(&v)), (&mu, u.clone()), (&mv, v.clone())] {
                let b = pullback_bound_sqr(&el, gamma);
                assert!(m.values().all(|x| x.norm_sqr() <= b));
            }
        }
    }

    #[test]
    fn y_is_invariant() {
        let cone = ConeModel::new(1, rat(1, 2)).unwrap();
        let y = y_element(&cone);
        assert_eq!(apply_pullback(&boost(), &y).unwrap(), y);
    }

    #[test]
    fn automorphism_on_small_pairs() {
        let cone = ConeModel::new(1, rat(1, 2)).unwrap();
        for a in IndexTriple::up_to(1, 1) {
            for b in IndexTriple::up_to(1, 1) {
                let c = check_automorphism(&cone, &boost(), &Element::basis(a.clone()), &Element::basis(b)).unwrap();
                assert!(c.holds);
            }
        }
    }

    #[test]
    fn momentum_relations_pinned_sign() {
        let cone = ConeModel::new(1, rat(1, 2)).unwrap();
        let (xi, zeta) = generators();
        let f = Element::basis(IndexTriple::new(MultiIndex::new(vec![1]), MultiIndex::new(vec![0]), 1).unwrap());
        assert_eq!(derivation_sign(&cone, &xi, &f).unwrap(), Some(DERIVATION_SIGN));
        assert_eq!(derivation_sign(&cone, &zeta, &f).unwrap(), Some(DERIVATION_SIGN));
        let rep = check_momentum_relations(&cone, &xi, &zeta, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(momentum_element(&xi, &cone.hbar).len() == 2);
    }
}
