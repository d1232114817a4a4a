use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{Signed, Zero};

use super::cone::ConeModel;
use super::triple::{prefactor, DiskIndex, IndexTriple};
use crate::algebra::{multiply, Branch, Element, FanIn, StructureModel};
use crate::error::{Error, Result};
use crate::exact::combinat::multinomial;
use crate::exact::rational::{from_big, int};
use crate::exact::{binomial, factorial, is_allowed_hbar, multi_binomial, pochhammer, GaussRat, MultiIndex, Rational};

fn require_allowed(hbar: &Rational) -> Result<()> {
    if is_allowed_hbar(hbar) {
        Ok(())
    } else {
        Err(Error::NotAllowedHbar(hbar.to_string()))
    }
}

fn x_of(hbar: &Rational) -> Rational {
    (hbar * int(2)).recip()
}

/// Coefficients of [f_{I,J,γ}] in the disk basis f_{I+K,J+K}, |K| ≤ γ − max(|I|,|J|).
pub fn reduce_terms(t: &IndexTriple, hbar: &Rational) -> Result<Vec<(DiskIndex, Rational)>> {
    require_allowed(hbar)?;
    let x = x_of(hbar);
    let top = t.min_level();
    let head = t.prefactor() * pochhammer(&x, t.alpha);
    let mut out = Vec::new();
    for kk in MultiIndex::with_abs_le(t.dim(), t.alpha - top) {
        let lvl = top + kk.abs();
        let (p, q) = (t.p.add(&kk), t.q.add(&kk));
        let den = prefactor(&p, &q, lvl) * pochhammer(&x, lvl);
        let c = &head / den * from_big(binomial(t.alpha - top, kk.abs()) * multinomial(&kk));
        out.push((DiskIndex { p, q }, c));
    }
    Ok(out)
}

/// [f_t] expanded in the disk basis.
pub fn reduce_class(t: &IndexTriple, hbar: &Rational) -> Result<Element<DiskIndex>> {
    Ok(Element::from_real_terms(reduce_terms(t, hbar)?))
}

/// [a] for a finite element of the cone algebra.
pub fn reduce_element(a: &Element<IndexTriple>, hbar: &Rational) -> Result<Element<DiskIndex>> {
    let mut out = Element::zero();
    for (t, c) in a.iter() {
        for (d, r) in reduce_terms(t, hbar)? {
            out.add_term(d, c.scale(&r));
        }
    }
    Ok(out)
}

/// Lifts every f_{P,Q} to f_{P,Q,max(|P|,|Q|)}.
pub fn lift_element(a: &Element<DiskIndex>) -> Element<IndexTriple> {
    a.map_indices(DiskIndex::lift)
}

/// Coefficient of f_{R,S} in [a], read off directly from the upstairs coefficients.
pub fn disk_coefficient_extraction(a: &Element<IndexTriple>, r: &MultiIndex, s: &MultiIndex, hbar: &Rational) -> Result<GaussRat> {
    require_allowed(hbar)?;
    let x = x_of(hbar);
    let big_m = r.abs().max(s.abs());
    let small_m = r.abs().min(s.abs());
    let mut acc = GaussRat::zero();
    for (t, c) in a.iter() {
        if t.alpha < big_m {
            continue;
        }
        let (Some(i), Some(i2)) = (r.checked_sub(&t.p), s.checked_sub(&t.q)) else {
            continue;
        };
        if i != i2 {
            continue;
        }
        let (alpha, ia) = (t.alpha, i.abs());
        let ifac = from_big(i.factorial());
        let w = multi_binomial(r, &i) * multi_binomial(s, &i) * &ifac * from_big(factorial(big_m - small_m)) * &ifac
            / from_big(factorial(alpha - big_m + ia) * factorial(alpha - small_m + ia))
            * pochhammer(&x, alpha)
            / pochhammer(&x, big_m)
            * from_big(factorial(alpha + ia - big_m))
            / (from_big(factorial(alpha - big_m)) * ifac);
        acc += c.scale(&w);
    }
    Ok(acc)
}

/// (y − 1) ⋆̃ b, an element of the vanishing ideal of y = 1.
pub fn vanishing_ideal_witness(cone: &ConeModel, b: &Element<IndexTriple>) -> Result<Element<IndexTriple>> {
    cone.require_allowed()?;
    multiply(cone, &cone.y_minus_one(), b)
}

/// The disk algebra: the cone algebra modulo the ideal generated by y − 1, in the basis f_{P,Q}.
#[derive(Debug)]
pub struct DiskModel {
    cone: ConeModel,
    products: RwLock<HashMap<(DiskIndex, DiskIndex), Arc<Vec<(DiskIndex, Rational)>>>>,
}

impl DiskModel {
    pub fn new(n: usize, hbar: Rational) -> Result<Self> {
        require_allowed(&hbar)?;
        let cone = ConeModel::new(n, hbar)?.with_max_level(u32::MAX);
        Ok(DiskModel { cone, products: RwLock::new(HashMap::new()) })
    }

    pub fn cone(&self) -> &ConeModel {
        &self.cone
    }

    pub fn n(&self) -> usize {
        self.cone.n
    }

    pub fn hbar(&self) -> &Rational {
        &self.cone.hbar
    }

    pub fn unit_element(&self) -> Element<DiskIndex> {
        Element::basis(DiskIndex::unit(self.n()))
    }

    fn compute_fan(&self, a: &DiskIndex, b: &DiskIndex) -> Vec<(DiskIndex, Rational)> {
        let mut acc: BTreeMap<DiskIndex, Rational> = BTreeMap::new();
        for (t, c) in self.cone.constants(&a.lift(), &b.lift()).iter() {
            for (d, r) in reduce_terms(t, self.hbar()).expect("allowed hbar checked at construction") {
                *acc.entry(d).or_insert_with(Rational::zero) += c * r;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn fan(&self, a: &DiskIndex, b: &DiskIndex) -> Arc<Vec<(DiskIndex, Rational)>> {
        let key = (a.clone(), b.clone());
        if let Some(f) = self.products.read().expect("disk cache poisoned").get(&key) {
            return f.clone();
        }
        let f = Arc::new(self.compute_fan(a, b));
        self.products.write().expect("disk cache poisoned").entry(key).or_insert(f).clone()
    }

    fn abs_coefficient(&self, a: &DiskIndex, b: &DiskIndex, g: &DiskIndex) -> Rational {
        self.fan(a, b).iter().find(|(d, _)| d == g).map(|(_, c)| c.abs()).unwrap_or_else(Rational::zero)
    }
}

/// [a] ⋆ [b] through minimal-level lifts, the ⋆̃ product and reduction.
pub fn disk_multiply(model: &DiskModel, a: &Element<DiskIndex>, b: &Element<DiskIndex>) -> Result<Element<DiskIndex>> {
    let prod = multiply(&model.cone, &lift_element(a), &lift_element(b))?;
    reduce_element(&prod, model.hbar())
}

impl StructureModel for DiskModel {
    type Index = DiskIndex;

    fn name(&self) -> String {
        format!("disk:{}", self.n())
    }

    fn contains(&self, d: &DiskIndex) -> bool {
        d.dim() == self.n()
    }

    fn product_fan(&self, a: &DiskIndex, b: &DiskIndex) -> Vec<(DiskIndex, Rational)> {
        self.fan(a, b).as_ref().clone()
    }

    /// Every β with a nonzero C^g_{aβ} has level ≤ level(g) + level(a).
    fn row_sum(&self, a: &DiskIndex, g: &DiskIndex) -> Rational {
        DiskIndex::up_to(self.n(), g.level() + a.level()).iter().map(|b| self.abs_coefficient(a, b, g)).sum()
    }

    fn col_sum(&self, b: &DiskIndex, g: &DiskIndex) -> Rational {
        DiskIndex::up_to(self.n(), g.level() + b.level()).iter().map(|a| self.abs_coefficient(a, b, g)).sum()
    }

    fn rank(&self, d: &DiskIndex) -> u64 {
        d.level() as u64
    }

    /// [f_{P,0}] ⋆ [f_{0,P}] has a constant term for every P, so inputs of every level feed
    /// the unit; no enumeration is offered.
    fn fan_in(&self, _g: &DiskIndex, _branch: Branch, _radius: u64, _depth: u64) -> FanIn<DiskIndex> {
        FanIn::Unknown
    }

    fn unit(&self) -> Option<DiskIndex> {
        Some(DiskIndex::unit(self.n()))
    }

    fn involution(&self, d: &DiskIndex) -> Option<DiskIndex> {
        Some(d.swapped())
    }

    fn parse_index(&self, v: &serde_json::Value) -> Result<DiskIndex> {
        let d: DiskIndex = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("disk index {{\"P\": [..], \"Q\": [..]}}: {e}")))?;
        let d = DiskIndex::new(d.p, d.q)?;
        if !self.contains(&d) {
            return Err(Error::OutsideUniverse { model: self.name(), index: d.to_string() });
        }
        Ok(d)
    }

    fn index_json(&self, d: &DiskIndex) -> serde_json::Value {
        serde_json::to_value(d).expect("disk index serializes")
    }
}

/// Rank of a finite family of sparse rational vectors.
pub fn rank_of<K: Ord + Clone>(rows: &[BTreeMap<K, Rational>]) -> usize {
    let mut basis: Vec<(K, BTreeMap<K, Rational>)> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for (pivot, b) in &basis {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in b {
                    let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
        v.retain(|_, x| !x.is_zero());
        if let Some((k, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            for x in v.values_mut() {
                *x /= &c;
            }
            basis.push((k, v));
        }
    }
    basis.len()
}

/// Dimension of the kernel of the reduction map on the span of triples of level ≤ γ.
pub fn ideal_dimension(n: usize, gamma: u32, hbar: &Rational) -> Result<usize> {
    let triples = IndexTriple::up_to(n, gamma);
    let mut rows = Vec::with_capacity(triples.len());
    for t in &triples {
        rows.push(reduce_terms(t, hbar)?.into_iter().collect::<BTreeMap<_, _>>());
    }
    Ok(triples.len() - rank_of(&rows))
}

/// Dimension of {(y − 1) ⋆̃ b : level(b) ≤ γ − 1}.
pub fn witness_span_dimension(cone: &ConeModel, gamma: u32) -> Result<usize> {
    if gamma == 0 {
        return Ok(0);
    }
    let mut rows = Vec::new();
    for t in IndexTriple::up_to(cone.n, gamma - 1) {
        let w = vanishing_ideal_witness(cone, &Element::basis(t))?;
        rows.push(w.iter().map(|(k, c)| (k.clone(), c.re.clone())).collect::<BTreeMap<_, _>>());
    }
    Ok(rank_of(&rows))
}
