use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::triple::{prefactor, DiskIndex, IndexTriple};
use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::{is_allowed_hbar, pochhammer, GaussRat, MultiIndex, Rational};

/// A point w of the open cone y(w) = |w⁰|² − Σ|wⁱ|² > 0 in ℂ^{n+1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<GaussRat>", into = "Vec<GaussRat>")]
pub struct ConePoint {
    w: Vec<GaussRat>,
}

impl ConePoint {
    pub fn new(w: Vec<GaussRat>) -> Result<Self> {
        if w.len() < 2 {
            return Err(Error::InvalidArgument("a cone point needs at least two coordinates".into()));
        }
        let y = y_hat(&w, &w).re;
        if !y.is_positive() {
            return Err(Error::OutsideDomain(format!("y(w) = {y} is not positive")));
        }
        Ok(ConePoint { w })
    }

    pub fn coords(&self) -> &[GaussRat] {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.w.len() - 1
    }

    pub fn y(&self) -> Rational {
        y_hat(&self.w, &self.w).re
    }

    /// v = (w¹/w⁰, …, wⁿ/w⁰).
    pub fn project(&self) -> DiskPoint {
        let inv = self.w[0].checked_inv().expect("w⁰ ≠ 0 on the cone");
        DiskPoint { v: self.w[1..].iter().map(|x| x * &inv).collect() }
    }
}

impl TryFrom<Vec<GaussRat>> for ConePoint {
    type Error = Error;
    fn try_from(w: Vec<GaussRat>) -> Result<Self> {
        ConePoint::new(w)
    }
}

impl From<ConePoint> for Vec<GaussRat> {
    fn from(p: ConePoint) -> Self {
        p.w
    }
}

/// A point of the open unit ball 𝔻_n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<GaussRat>", into = "Vec<GaussRat>")]
pub struct DiskPoint {
    v: Vec<GaussRat>,
}

impl DiskPoint {
    pub fn new(v: Vec<GaussRat>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::InvalidArgument("a disk point needs at least one coordinate".into()));
        }
        let r2: Rational = v.iter().map(GaussRat::norm_sqr).sum();
        if r2 >= Rational::one() {
            return Err(Error::OutsideDomain(format!("|v|² = {r2} is not below 1")));
        }
        Ok(DiskPoint { v })
    }

    pub fn origin(n: usize) -> Self {
        DiskPoint { v: vec![GaussRat::zero(); n] }
    }

    pub fn coords(&self) -> &[GaussRat] {
        &self.v
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }
}

impl TryFrom<Vec<GaussRat>> for DiskPoint {
    type Error = Error;
    fn try_from(v: Vec<GaussRat>) -> Result<Self> {
        DiskPoint::new(v)
    }
}

impl From<DiskPoint> for Vec<GaussRat> {
    fn from(p: DiskPoint) -> Self {
        p.v
    }
}

fn require_allowed(hbar: &Rational) -> Result<()> {
    if is_allowed_hbar(hbar) {
        Ok(())
    } else {
        Err(Error::NotAllowedHbar(hbar.to_string()))
    }
}

/// ŷ(u, v) = u⁰ v̄⁰ − Σ uⁱ v̄ⁱ.
pub fn y_hat(u: &[GaussRat], v: &[GaussRat]) -> GaussRat {
    let mut acc = &u[0] * &v[0].conj();
    for (a, b) in u[1..].iter().zip(&v[1..]) {
        acc -= a * &b.conj();
    }
    acc
}

/// (z)_r for a Gaussian rational.
pub fn pochhammer_c(z: &GaussRat, r: u32) -> GaussRat {
    let mut acc = GaussRat::one();
    let mut f = z.clone();
    for _ in 0..r {
        acc *= &f;
        f += GaussRat::one();
    }
    acc
}

fn monomial(x: &[GaussRat], e: &MultiIndex) -> GaussRat {
    let mut acc = GaussRat::one();
    for (xi, &k) in x.iter().zip(e.entries()) {
        acc *= xi.pow(k);
    }
    acc
}

fn conj_all(x: &[GaussRat]) -> Vec<GaussRat> {
    x.iter().map(GaussRat::conj).collect()
}

/// f̂_{I,J,γ}(u, v), holomorphic in u and antiholomorphic in v.
pub fn basis_value_pair(t: &IndexTriple, u: &[GaussRat], v: &[GaussRat], hbar: &Rational) -> Result<GaussRat> {
    let yh = y_hat(u, v);
    let inv = yh.checked_inv().ok_or_else(|| Error::OutsideDomain("ŷ(u, v) = 0".into()))?;
    let vc = conj_all(v);
    let x = yh.scale(&(hbar * int(2)).recip());
    let mut val = pochhammer_c(&x, t.alpha).scale(&t.prefactor());
    val *= u[0].pow(t.alpha - t.p.abs()) * monomial(&u[1..], &t.p);
    val *= vc[0].pow(t.alpha - t.q.abs()) * monomial(&vc[1..], &t.q);
    Ok(val * inv.pow(t.alpha))
}

/// δ_w(f_{I,J,γ}).
pub fn basis_value(t: &IndexTriple, w: &ConePoint, hbar: &Rational) -> Result<GaussRat> {
    basis_value_pair(t, &w.w, &w.w, hbar)
}

/// δ_w(a) for a finite element of the cone algebra.
pub fn eval_upstairs(a: &Element<IndexTriple>, w: &ConePoint, hbar: &Rational) -> Result<GaussRat> {
    require_allowed(hbar)?;
    let mut acc = GaussRat::zero();
    for (t, c) in a.iter() {
        check_dim(t.dim(), w.n())?;
        acc += c * &basis_value(t, w, hbar)?;
    }
    Ok(acc)
}

/// â(u, v), the extension with ŷ in place of y.
pub fn eval_pair(a: &Element<IndexTriple>, u: &[GaussRat], v: &[GaussRat], hbar: &Rational) -> Result<GaussRat> {
    require_allowed(hbar)?;
    if u.len() != v.len() || u.len() < 2 {
        return Err(Error::InvalidArgument("pair evaluation needs two points of equal dimension".into()));
    }
    let mut acc = GaussRat::zero();
    for (t, c) in a.iter() {
        check_dim(t.dim() + 1, u.len())?;
        acc += c * &basis_value_pair(t, u, v, hbar)?;
    }
    Ok(acc)
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("dimension mismatch: element has n = {expected}, point has n = {got}")))
    }
}

/// [f_{P,Q,α}](v, u) = prefactor · (1/2ħ)_α · v^P ū^Q / (1 − v·ū)^α.
pub fn class_value_pair(p: &MultiIndex, q: &MultiIndex, alpha: u32, v: &[GaussRat], u: &[GaussRat], hbar: &Rational) -> Result<GaussRat> {
    let mut vu = GaussRat::one();
    for (a, b) in v.iter().zip(u) {
        vu -= a * &b.conj();
    }
    let inv = vu.checked_inv().ok_or_else(|| Error::OutsideDomain("1 − v·ū = 0".into()))?;
    let x = (hbar * int(2)).recip();
    let c = prefactor(p, q, alpha) * pochhammer(&x, alpha);
    Ok(monomial(v, p) * monomial(&conj_all(u), q) * inv.pow(alpha) * GaussRat::real(c))
}

/// δ_v([a]) for a finite element of the disk algebra.
pub fn eval_disk(a: &Element<DiskIndex>, v: &DiskPoint, hbar: &Rational) -> Result<GaussRat> {
    eval_disk_pair(a, v.coords(), v.coords(), hbar)
}

/// [a](v, u), holomorphic in v and antiholomorphic in u.
pub fn eval_disk_pair(a: &Element<DiskIndex>, v: &[GaussRat], u: &[GaussRat], hbar: &Rational) -> Result<GaussRat> {
    require_allowed(hbar)?;
    let mut acc = GaussRat::zero();
    for (d, c) in a.iter() {
        check_dim(d.dim(), v.len())?;
        acc += c * &class_value_pair(&d.p, &d.q, d.level(), v, u, hbar)?;
    }
    Ok(acc)
}

/// The section φ(v, u) = ((1/(1 − v·ū), v/(1 − v·ū)), (1, u)) on which ŷ = 1.
pub fn section(v: &[GaussRat], u: &[GaussRat]) -> Result<(Vec<GaussRat>, Vec<GaussRat>)> {
    let mut vu = GaussRat::one();
    for (a, b) in v.iter().zip(u) {
        vu -= a * &b.conj();
    }
    let inv = vu.checked_inv().ok_or_else(|| Error::OutsideDomain("1 − v·ū = 0".into()))?;
    let mut first = vec![inv.clone()];
    first.extend(v.iter().map(|x| x * &inv));
    let mut second = vec![GaussRat::one()];
    second.extend(u.iter().cloned());
    Ok((first, second))
}
