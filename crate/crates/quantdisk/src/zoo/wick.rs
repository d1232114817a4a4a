use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Branch, Element, FanIn, StructureModel};
use crate::error::{Error, Result};
use crate::exact::rational::{from_big, ipow};
use crate::exact::{GaussRat, MultiIndex, Rational};

/// Index (I, J) of e_{IJ} = z^I z̄^J / (I! J! (2ħ)^{|I|+|J|}).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WickIndex {
    #[serde(rename = "I")]
    pub i: MultiIndex,
    #[serde(rename = "J")]
    pub j: MultiIndex,
}

impl WickIndex {
    pub fn new(i: MultiIndex, j: MultiIndex) -> Self {
        WickIndex { i, j }
    }
}

impl fmt::Display for WickIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", self.i, self.j)
    }
}

/// Flat Wick star product on ℂ[z, z̄] in n complex dimensions.
#[derive(Clone, Debug)]
pub struct WickFlatModel {
    pub n: usize,
    pub hbar: Rational,
}

impl WickFlatModel {
    pub fn new(n: usize, hbar: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if !hbar.is_positive() {
            return Err(Error::NonPositiveHbar(hbar.to_string()));
        }
        Ok(WickFlatModel { n, hbar })
    }

    fn two_hbar(&self) -> Rational {
        &self.hbar * Rational::from_integer(2.into())
    }

    /// Coefficient of e_{I+K−N, J+L−N} in e_{IJ} ⋆ e_{KL} from the N-th Wick term.
    fn coef(&self, i: &MultiIndex, j: &MultiIndex, k: &MultiIndex, l: &MultiIndex, nn: &MultiIndex) -> Rational {
        let a = i.add(k).checked_sub(nn).expect("N ≤ I");
        let b = j.add(l).checked_sub(nn).expect("N ≤ L");
        let num = from_big(a.factorial() * b.factorial());
        let den = from_big(
            nn.factorial()
                * i.checked_sub(nn).expect("N ≤ I").factorial()
                * l.checked_sub(nn).expect("N ≤ L").factorial()
                * j.factorial()
                * k.factorial(),
        );
        num / den * ipow(&self.two_hbar(), -(nn.abs() as i64))
    }

    /// z^I z̄^J as an element of the rescaled basis.
    pub fn monomial(&self, i: MultiIndex, j: MultiIndex) -> Element<WickIndex> {
        let c = from_big(i.factorial() * j.factorial()) * ipow(&self.two_hbar(), (i.abs() + j.abs()) as i64);
        Element::from_real_terms([(WickIndex::new(i, j), c)])
    }

    pub fn coordinate(&self, k: usize) -> Element<WickIndex> {
        self.monomial(MultiIndex::unit(self.n, k), MultiIndex::zero(self.n))
    }

    pub fn conj_coordinate(&self, k: usize) -> Element<WickIndex> {
        self.monomial(MultiIndex::zero(self.n), MultiIndex::unit(self.n, k))
    }

    /// All indices with |I| + |J| ≤ d.
    pub fn indices_up_to(&self, d: u32) -> Vec<WickIndex> {
        let mut out = Vec::new();
        for total in 0..=d {
            for si in 0..=total {
                for i in MultiIndex::with_abs(self.n, si) {
                    for j in MultiIndex::with_abs(self.n, total - si) {
                        out.push(WickIndex::new(i.clone(), j));
                    }
                }
            }
        }
        out
    }
}

impl StructureModel for WickFlatModel {
    type Index = WickIndex;

    fn name(&self) -> String {
        format!("wick:{}", self.n)
    }

    fn contains(&self, x: &WickIndex) -> bool {
        x.i.dim() == self.n && x.j.dim() == self.n
    }

    fn product_fan(&self, a: &WickIndex, b: &WickIndex) -> Vec<(WickIndex, Rational)> {
        let mut out = Vec::new();
        for nn in a.i.cmin(&b.j).below() {
            let g = WickIndex::new(
                a.i.add(&b.i).checked_sub(&nn).expect("N ≤ I"),
                a.j.add(&b.j).checked_sub(&nn).expect("N ≤ L"),
            );
            out.push((g, self.coef(&a.i, &a.j, &b.i, &b.j, &nn)));
        }
        out
    }

    fn row_sum(&self, a: &WickIndex, g: &WickIndex) -> Rational {
        let mut acc = Rational::zero();
        for nn in a.i.below() {
            let (Some(k), Some(l)) = (g.i.add(&nn).checked_sub(&a.i), g.j.add(&nn).checked_sub(&a.j)) else {
                continue;
            };
            if nn.le(&l) {
                acc += self.coef(&a.i, &a.j, &k, &l, &nn).abs();
            }
        }
        acc
    }

    fn col_sum(&self, b: &WickIndex, g: &WickIndex) -> Rational {
        let mut acc = Rational::zero();
        for nn in b.j.below() {
            let (Some(i), Some(j)) = (g.i.add(&nn).checked_sub(&b.i), g.j.add(&nn).checked_sub(&b.j)) else {
                continue;
            };
            if nn.le(&i) {
                acc += self.coef(&i, &j, &b.i, &b.j, &nn).abs();
            }
        }
        acc
    }

    fn rank(&self, x: &WickIndex) -> u64 {
        (x.i.abs() + x.j.abs()) as u64
    }

    /// e_{I,0} ⋆ e_{0,I} reaches e_{0,0} for every I, so fan-in is infinite without a
    /// usable majorant.
    fn fan_in(&self, _g: &WickIndex, _branch: Branch, _radius: u64, _depth: u64) -> FanIn<WickIndex> {
        FanIn::Unknown
    }

    fn unit(&self) -> Option<WickIndex> {
        Some(WickIndex::new(MultiIndex::zero(self.n), MultiIndex::zero(self.n)))
    }

    /// Complex conjugation: e_{IJ} ↦ e_{JI}.
    fn involution(&self, x: &WickIndex) -> Option<WickIndex> {
        Some(WickIndex::new(x.j.clone(), x.i.clone()))
    }

    fn parse_index(&self, v: &serde_json::Value) -> Result<WickIndex> {
        let x: WickIndex =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("Wick index {{\"I\": [..], \"J\": [..]}}: {e}")))?;
        if !self.contains(&x) {
            return Err(Error::OutsideUniverse { model: self.name(), index: x.to_string() });
        }
        Ok(x)
    }

    fn index_json(&self, x: &WickIndex) -> serde_json::Value {
        serde_json::json!({ "I": x.i, "J": x.j })
    }
}

/// The commutator a ⋆ b − b ⋆ a.
pub fn commutator(model: &WickFlatModel, a: &Element<WickIndex>, b: &Element<WickIndex>) -> Result<Element<WickIndex>> {
    let ab = crate::algebra::multiply(model, a, b)?;
    let ba = crate::algebra::multiply(model, b, a)?;
    Ok(ab.sub(&ba))
}

impl WickFlatModel {
    pub fn unit_element(&self) -> Element<WickIndex> {
        Element::from_terms([(self.unit().expect("unit"), GaussRat::one())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multiply;
    use crate::exact::rational::{int, rat};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn canonical_commutation() {
        let m = WickFlatModel::new(1, rat(1, 2)).unwrap();
        let c = commutator(&m, &m.coordinate(0), &m.conj_coordinate(0)).unwrap();
        assert_eq!(c, m.unit_element());
    }

    #[test]
    fn z2_times_zbar2() {
        let h = rat(1, 3);
        let m = WickFlatModel::new(1, h.clone()).unwrap();
        let lhs = multiply(&m, &m.monomial(mi(&[2]), mi(&[0])), &m.monomial(mi(&[0]), mi(&[2]))).unwrap();
        let th = &h * int(2);
        let rhs = m
            .monomial(mi(&[2]), mi(&[2]))
            .add(&m.monomial(mi(&[1]), mi(&[1])).scale_real(&(int(4) * &th)))
            .add(&m.unit_element().scale_real(&(int(2) * &th * &th)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn constants_multiply_pointwise() {
        let m = WickFlatModel::new(2, int(1)).unwrap();
        let a = m.monomial(mi(&[1, 0]), mi(&[0, 2]));
        assert_eq!(multiply(&m, &m.unit_element(), &a).unwrap(), a);
    }
}
