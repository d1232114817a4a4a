use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::triple::IndexTriple;
use crate::algebra::{Bracket, Branch, Element, FanIn, StructureModel, TailSource};
use crate::error::{Error, Result};
use crate::exact::combinat::{binomial_i, falling};
use crate::exact::rational::{from_big, int, ipow, pow};
use crate::exact::{factorial, is_allowed_hbar, multi_binomial, ExtNonNeg, GaussRat, MultiIndex, Rational};
use crate::seminorm::{modulus_bracket, HEngine};

type Fan = Arc<Vec<(IndexTriple, Rational)>>;

/// The cone algebra with the ⋆̃ product in the f-basis.
///
/// Structure constants do not depend on ħ; `hbar` is used by evaluation and by the
/// Wick-product oracle.
#[derive(Debug)]
pub struct ConeModel {
    pub n: usize,
    pub hbar: Rational,
    max_level: u32,
    products: RwLock<HashMap<(IndexTriple, IndexTriple), Fan>>,
    fans: RwLock<HashMap<(IndexTriple, Branch), Fan>>,
}

pub const DEFAULT_MAX_LEVEL: u32 = 8;

impl ConeModel {
    pub fn new(n: usize, hbar: Rational) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::InvalidArgument(format!("dimension n = {n} outside 1..=3")));
        }
        if hbar.is_zero() {
            return Err(Error::NotAllowedHbar(hbar.to_string()));
        }
        Ok(ConeModel {
            n,
            hbar,
            max_level: DEFAULT_MAX_LEVEL,
            products: RwLock::new(HashMap::new()),
            fans: RwLock::new(HashMap::new()),
        })
    }

    /// Raises or lowers the largest level accepted in element supports.
    pub fn with_max_level(mut self, max_level: u32) -> Self {
        self.max_level = max_level;
        self
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn require_allowed(&self) -> Result<()> {
        if is_allowed_hbar(&self.hbar) {
            Ok(())
        } else {
            Err(Error::NotAllowedHbar(self.hbar.to_string()))
        }
    }

    pub fn basis(&self, t: IndexTriple) -> Element<IndexTriple> {
        Element::basis(t)
    }

    pub fn unit_element(&self) -> Element<IndexTriple> {
        Element::basis(IndexTriple::unit(self.n))
    }

    /// y − 1 = 2ħ(f_{0,0,1} − Σᵢ f_{eᵢ,eᵢ,1}) − f_{0,0,0}.
    pub fn y_minus_one(&self) -> Element<IndexTriple> {
        let two_hbar = &self.hbar * int(2);
        let zero = MultiIndex::zero(self.n);
        let mut terms = vec![
            (IndexTriple::raw(zero.clone(), zero.clone(), 1), two_hbar.clone()),
            (IndexTriple::unit(self.n), -Rational::one()),
        ];
        for i in 0..self.n {
            let e = MultiIndex::unit(self.n, i);
            terms.push((IndexTriple::raw(e.clone(), e, 1), -two_hbar.clone()));
        }
        Element::from_real_terms(terms)
    }

    /// Memoized [`tilde_structure_constants`].
    pub fn constants(&self, a: &IndexTriple, b: &IndexTriple) -> Fan {
        let key = (a.clone(), b.clone());
        if let Some(f) = self.products.read().expect("product cache poisoned").get(&key) {
            return f.clone();
        }
        let fan = Arc::new(tilde_structure_constants(a, b));
        self.products.write().expect("product cache poisoned").entry(key).or_insert(fan).clone()
    }

    fn compute_fan_in(&self, g: &IndexTriple, branch: Branch) -> Vec<(IndexTriple, Rational)> {
        IndexTriple::up_to(self.n, g.alpha)
            .into_iter()
            .filter_map(|x| {
                let w = self.branch_sum(branch, &x, g);
                (!w.is_zero()).then_some((x, w))
            })
            .collect()
    }
}

/// Number of (k, K) in the summation window landing on the output triple; the ε factor.
pub fn occupancy(a: &IndexTriple, b: &IndexTriple, out: &IndexTriple) -> u32 {
    let (p, alpha) = (&a.p, a.alpha);
    let (r, s, beta) = (&b.p, &b.q, b.alpha);
    let kmax = (alpha - p.abs()).min(beta - s.abs());
    let mut count = 0;
    for kk in p.cmin(s).below() {
        for k in 0..=kmax {
            let i = p.add(r).checked_sub(&kk);
            if i.as_ref() == Some(&out.p) && alpha + beta == out.alpha + k + kk.abs() {
                count += 1;
            }
        }
    }
    count
}

/// C^{(I,J,γ)}_{(P,Q,α),(R,S,β)} in closed form.
pub fn structure_constant(a: &IndexTriple, b: &IndexTriple, out: &IndexTriple) -> Rational {
    let (p, q, alpha) = (&a.p, &a.q, a.alpha as i64);
    let (r, s, beta) = (&b.p, &b.q, b.alpha as i64);
    let (i, j, gamma) = (&out.p, &out.q, out.alpha as i64);
    let (Some(left), Some(right)) = (p.add(r).checked_sub(i), q.add(s).checked_sub(j)) else {
        return Rational::zero();
    };
    if left != right {
        return Rational::zero();
    }
    let eps = occupancy(a, b, out);
    if eps == 0 {
        return Rational::zero();
    }
    let e = alpha + beta - gamma - p.abs() as i64 - r.abs() as i64 + i.abs() as i64;
    if e < 0 {
        return Rational::zero();
    }
    let num = multi_binomial(i, r)
        * multi_binomial(j, q)
        * from_big(binomial_i(gamma - i.abs() as i64, beta - r.abs() as i64))
        * from_big(binomial_i(gamma - j.abs() as i64, alpha - q.abs() as i64))
        * int(eps as i64);
    let den = from_big(factorial(e as u32) * left.factorial());
    let v = num / den;
    if e % 2 == 1 {
        -v
    } else {
        v
    }
}

/// All nonzero C^{γ}_{ab}, enumerated over the support window max(α,β) ≤ γ ≤ α+β.
pub fn tilde_structure_constants(a: &IndexTriple, b: &IndexTriple) -> Vec<(IndexTriple, Rational)> {
    let n = a.dim();
    let pr = a.p.add(&b.p);
    let qs = a.q.add(&b.q);
    let mut out = Vec::new();
    for gamma in a.alpha.max(b.alpha)..=a.alpha + b.alpha {
        for i in pr.below() {
            if i.abs() > gamma {
                continue;
            }
            let Some(kk) = pr.checked_sub(&i) else { continue };
            let Some(j) = qs.checked_sub(&kk) else { continue };
            if j.abs() > gamma || j.dim() != n {
                continue;
            }
            let g = IndexTriple::raw(i, j, gamma);
            let c = structure_constant(a, b, &g);
            if !c.is_zero() {
                out.push((g, c));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// The same constants as a direct double sum over (k, K).
pub fn structure_constants_by_sum(a: &IndexTriple, b: &IndexTriple) -> Vec<(IndexTriple, Rational)> {
    let (p, q, alpha) = (&a.p, &a.q, a.alpha);
    let (r, s, beta) = (&b.p, &b.q, b.alpha);
    let mut acc: BTreeMap<IndexTriple, Rational> = BTreeMap::new();
    for kk in p.cmin(s).below() {
        for k in 0..=(alpha - p.abs()).min(beta - s.abs()) {
            let gamma = alpha + beta - k - kk.abs();
            let i = p.add(r).checked_sub(&kk).expect("K ≤ P");
            let j = q.add(s).checked_sub(&kk).expect("K ≤ S");
            let c = multi_binomial(&i, r)
                * multi_binomial(&j, q)
                * from_big(crate::exact::binomial(alpha + beta - k - p.abs() - r.abs(), beta - r.abs()))
                * from_big(crate::exact::binomial(alpha + beta - k - q.abs() - s.abs(), alpha - q.abs()))
                / from_big(factorial(k) * kk.factorial());
            let c = if k % 2 == 1 { -c } else { c };
            *acc.entry(IndexTriple::raw(i, j, gamma)).or_insert_with(Rational::zero) += c;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Wick product of the monomials e_{P,Q,α} = (z⁰)^{α−|P|} z^P (z̄⁰)^{α−|Q|} z̄^Q on ℂ^{n+1}
/// with the indefinite metric diag(−1, 1, …, 1).
pub fn wick_monomial_product(a: &IndexTriple, b: &IndexTriple, hbar: &Rational) -> Vec<(IndexTriple, Rational)> {
    let two_hbar = hbar * int(2);
    let (p, q, alpha) = (&a.p, &a.q, a.alpha);
    let (r, s, beta) = (&b.p, &b.q, b.alpha);
    let mut acc: BTreeMap<IndexTriple, Rational> = BTreeMap::new();
    for kk in p.cmin(s).below() {
        for k in 0..=(alpha - p.abs()).min(beta - s.abs()) {
            let order = k + kk.abs();
            let mut c = pow(&two_hbar, order) / from_big(factorial(k) * kk.factorial());
            if k % 2 == 1 {
                c = -c;
            }
            let mut d = falling(alpha - p.abs(), k) * falling(beta - s.abs(), k);
            for (idx, &kv) in kk.entries().iter().enumerate() {
                d *= falling(p.entries()[idx], kv) * falling(s.entries()[idx], kv);
            }
            c *= from_big(d);
            let g = IndexTriple::raw(
                p.add(r).checked_sub(&kk).expect("K ≤ P"),
                q.add(s).checked_sub(&kk).expect("K ≤ S"),
                alpha + beta - order,
            );
            *acc.entry(g).or_insert_with(Rational::zero) += c;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Structure constants recomputed through the Wick product: f ↦ e, multiply, e ↦ f.
pub fn oracle_structure_constants(a: &IndexTriple, b: &IndexTriple, hbar: &Rational) -> Result<Vec<(IndexTriple, Rational)>> {
    if !is_allowed_hbar(hbar) {
        return Err(Error::NotAllowedHbar(hbar.to_string()));
    }
    let two_hbar = hbar * int(2);
    // S⁻¹ f_{P,Q,α} = prefactor / (2ħ)^α · e_{P,Q,α}, and S e_{I,J,γ} = (2ħ)^γ / prefactor · f_{I,J,γ}.
    let down = |t: &IndexTriple| t.prefactor() * ipow(&two_hbar, -(t.alpha as i64));
    let scale = down(a) * down(b);
    Ok(wick_monomial_product(a, b, hbar)
        .into_iter()
        .map(|(g, c)| {
            let up = pow(&two_hbar, g.alpha) / g.prefactor();
            let v = &c * &scale * up;
            (g, v)
        })
        .collect())
}

/// C^{(I,J,γ)}_{(P,Q,α),·} = Σ_β |C^{(I,J,γ)}_{(P,Q,α),β}|, solved for the finitely many β.
pub fn cone_rowsum(t: &IndexTriple, out: &IndexTriple) -> Rational {
    let mut acc = Rational::zero();
    if t.alpha > out.alpha {
        return acc;
    }
    for kk in t.p.below() {
        let (Some(r), Some(s)) = (out.p.add(&kk).checked_sub(&t.p), out.q.add(&kk).checked_sub(&t.q)) else {
            continue;
        };
        for k in 0..=(t.alpha - t.p.abs()) {
            let beta = out.alpha as i64 + kk.abs() as i64 + k as i64 - t.alpha as i64;
            if beta < r.abs() as i64 || beta < s.abs() as i64 || (k as i64) > beta - s.abs() as i64 {
                continue;
            }
            let b = IndexTriple::raw(r.clone(), s.clone(), beta as u32);
            acc += structure_constant(t, &b, out).abs();
        }
    }
    acc
}

/// C^{(I,J,γ)}_{·,(R,S,β)} = Σ_α |C^{(I,J,γ)}_{α,(R,S,β)}|.
pub fn cone_colsum(t: &IndexTriple, out: &IndexTriple) -> Rational {
    let mut acc = Rational::zero();
    if t.alpha > out.alpha {
        return acc;
    }
    for kk in t.q.below() {
        let (Some(p), Some(q)) = (out.p.add(&kk).checked_sub(&t.p), out.q.add(&kk).checked_sub(&t.q)) else {
            continue;
        };
        for k in 0..=(t.alpha - t.q.abs()) {
            let alpha = out.alpha as i64 + kk.abs() as i64 + k as i64 - t.alpha as i64;
            if alpha < p.abs() as i64 || alpha < q.abs() as i64 || (k as i64) > alpha - p.abs() as i64 {
                continue;
            }
            let a = IndexTriple::raw(p.clone(), q.clone(), alpha as u32);
            acc += structure_constant(&a, t, out).abs();
        }
    }
    acc
}

/// Σ_{I,J} C^{(I,J,γ)}_{t,·}.
pub fn cone_rowsum_gamma_total(t: &IndexTriple, gamma: u32) -> Rational {
    IndexTriple::at_level(t.dim(), gamma).iter().map(|g| cone_rowsum(t, g)).sum()
}

/// (γ+1)^{4n+1} 4^γ.
pub fn rowsum_total_bound(n: usize, gamma: u32) -> Rational {
    pow(&int(gamma as i64 + 1), 4 * n as u32 + 1) * pow(&int(4), gamma)
}

impl StructureModel for ConeModel {
    type Index = IndexTriple;

    fn name(&self) -> String {
        format!("cone:{}", self.n)
    }

    fn contains(&self, t: &IndexTriple) -> bool {
        t.dim() == self.n && t.validate().is_ok() && t.alpha <= self.max_level
    }

    fn product_fan(&self, a: &IndexTriple, b: &IndexTriple) -> Vec<(IndexTriple, Rational)> {
        self.constants(a, b).as_ref().clone()
    }

    fn row_sum(&self, a: &IndexTriple, g: &IndexTriple) -> Rational {
        cone_rowsum(a, g)
    }

    fn col_sum(&self, b: &IndexTriple, g: &IndexTriple) -> Rational {
        cone_colsum(b, g)
    }

    fn rank(&self, t: &IndexTriple) -> u64 {
        t.alpha as u64
    }

    /// Finite by the filtration: only α of level ≤ γ contribute.
    fn fan_in(&self, g: &IndexTriple, branch: Branch, _radius: u64, _depth: u64) -> FanIn<IndexTriple> {
        let key = (g.clone(), branch);
        if let Some(f) = self.fans.read().expect("fan cache poisoned").get(&key) {
            return FanIn::Finite(f.as_ref().clone());
        }
        let fan = Arc::new(self.compute_fan_in(g, branch));
        let fan = self.fans.write().expect("fan cache poisoned").entry(key).or_insert(fan).clone();
        FanIn::Finite(fan.as_ref().clone())
    }

    fn unit(&self) -> Option<IndexTriple> {
        Some(IndexTriple::unit(self.n))
    }

    /// Complex conjugation f_{P,Q,α} ↦ f_{Q,P,α}.
    fn involution(&self, t: &IndexTriple) -> Option<IndexTriple> {
        Some(t.swapped())
    }

    fn rank_count_bound(&self) -> Option<(Rational, u32)> {
        Some((Rational::one(), 2 * self.n as u32))
    }

    fn indices_with_rank(&self, r: u64) -> Option<Vec<IndexTriple>> {
        Some(IndexTriple::at_level(self.n, r as u32))
    }

    fn parse_index(&self, v: &serde_json::Value) -> Result<IndexTriple> {
        let t: IndexTriple = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("cone index {{\"P\": [..], \"Q\": [..], \"alpha\": k}}: {e}")))?;
        t.validate()?;
        if t.dim() != self.n {
            return Err(Error::OutsideUniverse { model: self.name(), index: t.to_string() });
        }
        Ok(t)
    }

    fn index_json(&self, t: &IndexTriple) -> serde_json::Value {
        serde_json::to_value(t).expect("triple serializes")
    }
}

/// Growth constants (K, B, p) with Σ_{I,J} h_{m,ℓ}(I,J,γ) ≤ K·B^γ·(γ+1)^p for m ≥ 1,
/// from the γ-total row-sum bound, starting at Σ|a|².
pub fn combined_envelope(n: usize, norm2: &Rational, m: u32) -> (Rational, Rational, u32) {
    assert!(m >= 1);
    let mut k = norm2.clone();
    let mut b = int(4);
    let mut p = 4 * n as u32 + 1;
    for _ in 1..m {
        k = &k * &k;
        b = int(4) * &b * &b;
        p = 2 * p + 4 * n as u32 + 2;
    }
    (k, b, p)
}

/// Σ_{I,J} h_{m,ℓ}(I,J,γ). At m = 0 the moduli are bracketed when irrational.
pub fn h_combined(engine: &HEngine<'_, ConeModel>, m: u32, ell: u64, gamma: u32) -> Result<Bracket> {
    let n = engine.model().n;
    if m == 0 {
        let mut acc = Bracket::zero();
        for (t, c) in engine.element().iter() {
            if t.alpha != gamma {
                continue;
            }
            acc = acc.add(&modulus(c));
        }
        return Ok(acc);
    }
    let mut acc = Bracket::zero();
    for g in IndexTriple::at_level(n, gamma) {
        acc = acc.add(&engine.h(m, ell, &g)?.value);
    }
    Ok(acc)
}

fn modulus(c: &GaussRat) -> Bracket {
    match c.modulus_exact() {
        Some(r) => Bracket::exact(r),
        None => {
            let (lo, hi) = modulus_bracket(&c.norm_sqr(), 64);
            Bracket::new(lo, ExtNonNeg::Finite(hi), 0, TailSource::ModelMajorant)
        }
    }
}

/// Σ_γ R^γ/γ! · h_combined(m, ℓ, γ), summed exactly to `depth` with a certified tail.
pub fn seminorm_r(engine: &HEngine<'_, ConeModel>, m: u32, ell: u64, r: &Rational, depth: u32) -> Result<Bracket> {
    if !r.is_positive() {
        return Err(Error::InvalidArgument(format!("R must be positive, got {r}")));
    }
    let a = engine.element();
    if a.is_zero() {
        return Ok(Bracket::zero());
    }
    let top = if m == 0 { depth.max(a.support().map(|t| t.alpha).max().unwrap_or(0)) } else { depth };
    let mut acc = Bracket::zero();
    let mut weight = Rational::one();
    for gamma in 0..=top {
        if gamma > 0 {
            weight = weight * r / int(gamma as i64);
        }
        let h = h_combined(engine, m, ell, gamma)?;
        acc = acc.add(&h.scale(&weight));
    }
    let acc = acc.at_depth(depth as u64);
    if m == 0 {
        return Ok(acc);
    }
    let (k, b, p) = combined_envelope(engine.model().n, &a.norm2(), m);
    let tail = majorant_tail(r, &k, &b, p, depth + 1);
    Ok(match tail {
        Some(t) => acc.with_tail(&ExtNonNeg::Finite(t), TailSource::GeometricTail),
        None => Bracket::unbounded(acc.lo, depth as u64),
    })
}

/// Σ_{γ ≥ start} R^γ/γ! · K B^γ (γ+1)^p: summed term by term until the ratio of
/// consecutive terms drops to 1/2, then closed by twice the current term.
fn majorant_tail(r: &Rational, k: &Rational, b: &Rational, p: u32, start: u32) -> Option<Rational> {
    const MAX_STEPS: u32 = 100_000;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rb = r * b;
    let mut g = start;
    let mut term = pow(&rb, g) / from_big(factorial(g)) * k * pow(&int(g as i64 + 1), p);
    let mut acc = Rational::zero();
    for _ in 0..MAX_STEPS {
        let ratio = &rb / int(g as i64 + 1) * pow(&Rational::new(BigInt::from(g + 2), BigInt::from(g + 1)), p);
        if ratio <= half {
            return Some(acc + int(2) * term);
        }
        acc += &term;
        term *= ratio;
        g += 1;
    }
    None
}
