use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Bracket, Branch, Element, Envelope, FanIn, StructureModel, TailSource};
use crate::error::{Error, Result};
use crate::exact::{ExtNonNeg, Rational};

/// Truncation and presentation settings for infinite sums.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Stop refining once tail ≤ rel_tolerance · partial sum.
    pub rel_tolerance: Rational,
    pub max_depth: u64,
    pub max_terms: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            rel_tolerance: Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 12)),
            max_depth: 48,
            max_terms: 60_000,
        }
    }
}

/// One cell h_{m,ℓ,γ}. At m = 0 the value is |a_γ| when that modulus is rational,
/// otherwise |a_γ|² with `squared = true`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HEntry {
    pub m: u32,
    pub ell: u64,
    pub value: Bracket,
    pub squared: bool,
}

/// Memoized h-table of one element in one model.
pub struct HEngine<'a, M: StructureModel> {
    model: &'a M,
    element: &'a Element<M::Index>,
    cfg: EngineConfig,
    norm2: Rational,
    radius: u64,
    memo: Mutex<HashMap<(u32, u64, M::Index), Bracket>>,
}

impl<'a, M: StructureModel> HEngine<'a, M> {
    pub fn new(model: &'a M, element: &'a Element<M::Index>) -> Result<Self> {
        Self::with_config(model, element, EngineConfig::default())
    }

    pub fn with_config(model: &'a M, element: &'a Element<M::Index>, cfg: EngineConfig) -> Result<Self> {
        for i in element.support() {
            if !model.contains(i) {
                return Err(Error::OutsideUniverse { model: model.name(), index: i.to_string() });
            }
        }
        let radius = element.support().map(|i| model.rank(i)).max().unwrap_or(0);
        Ok(HEngine { model, element, cfg, norm2: element.norm2(), radius, memo: Mutex::new(HashMap::new()) })
    }

    pub fn model(&self) -> &M {
        self.model
    }

    pub fn element(&self) -> &Element<M::Index> {
        self.element
    }

    fn check_ell(m: u32, ell: u64) -> Result<()> {
        if m > 62 || ell >= (1u64 << m) {
            return Err(Error::InvalidArgument(format!("ell = {ell} outside [0, 2^{m} - 1]")));
        }
        Ok(())
    }

    /// h_{m,ℓ,γ}(a).
    pub fn h(&self, m: u32, ell: u64, g: &M::Index) -> Result<HEntry> {
        Self::check_ell(m, ell)?;
        if m == 0 {
            let c = self.element.coefficient(g);
            return Ok(match c.modulus_exact() {
                Some(r) => HEntry { m, ell, value: Bracket::exact(r), squared: false },
                None => HEntry { m, ell, value: Bracket::exact(c.norm_sqr()), squared: true },
            });
        }
        Ok(HEntry { m, ell, value: self.cell(m, ell, g), squared: false })
    }

    /// h_{m,ℓ,γ}(a)² as a bracket; at m = 0 this is |a_γ|².
    pub fn h_squared(&self, m: u32, ell: u64, g: &M::Index) -> Bracket {
        if m == 0 {
            Bracket::exact(self.element.coefficient(g).norm_sqr())
        } else {
            self.cell(m, ell, g).square()
        }
    }

    /// h_{m,ℓ,γ} for m ≥ 1.
    pub fn cell(&self, m: u32, ell: u64, g: &M::Index) -> Bracket {
        assert!(m >= 1);
        // row and column sums coincide, so every ℓ gives the same value
        let ell = if self.model.is_commutative() { 0 } else { ell };
        let key = (m, ell, g.clone());
        if let Some(v) = self.memo.lock().expect("h memo poisoned").get(&key) {
            return v.clone();
        }
        let v = self.compute(m, ell, g);
        self.memo.lock().expect("h memo poisoned").entry(key).or_insert(v).clone()
    }

    /// Growth envelope of h_{m,ℓ} valid for every index.
    pub fn envelope(&self, m: u32, ell: u64) -> Option<Envelope> {
        if m == 0 {
            return None;
        }
        let first = Branch::from_bit(ell >> (m - 1));
        let (c, b) = self.model.envelope_seed(first)?;
        let mut env = Envelope { k: c * &self.norm2, b, p: 0 };
        for level in 1..m {
            let bit = ell >> (m - 1 - level);
            env = self.model.envelope_step(&env, Branch::from_bit(bit))?;
        }
        Some(env)
    }

    fn weighted_sum(&self, m: u32, ell: u64, terms: &[(M::Index, Rational)]) -> Bracket {
        let mut acc = Bracket::zero();
        for (alpha, w) in terms {
            if w.is_zero() {
                continue;
            }
            acc = acc.add(&self.h_squared(m, ell, alpha).scale(w));
        }
        acc
    }

    fn compute(&self, mm: u32, ell_next: u64, g: &M::Index) -> Bracket {
        let branch = Branch::from_bit(ell_next);
        let ell = ell_next >> 1;
        let m = mm - 1;
        if m == 0 {
            let mut acc = Rational::zero();
            for (alpha, c) in self.element.iter() {
                acc += c.norm_sqr() * self.model.branch_sum(branch, alpha, g);
            }
            return Bracket::exact(acc);
        }
        let mut depth = self.model.initial_depth(g, self.radius);
        loop {
            match self.model.fan_in(g, branch, self.radius, depth) {
                FanIn::Finite(terms) => return self.weighted_sum(m, ell, &terms),
                FanIn::Unknown => return Bracket::unbounded(Rational::zero(), depth),
                FanIn::Divergent { window, representative } => {
                    let acc = self.weighted_sum(m, ell, &window);
                    let rep = self.h_squared(m, ell, &representative);
                    return if rep.lo.is_positive() || rep.is_divergent() {
                        Bracket::divergent(acc.lo, depth)
                    } else if rep.hi.as_finite().is_some_and(|h| h.is_zero()) {
                        acc
                    } else {
                        Bracket::unbounded(acc.lo, depth)
                    };
                }
                FanIn::Truncated { terms, complete } => {
                    let partial = self.weighted_sum(m, ell, &terms).at_depth(depth);
                    if complete {
                        return partial;
                    }
                    let tail = self.envelope(m, ell).and_then(|env| self.model.tail_bound(g, branch, depth, &env));
                    let exhausted = depth >= self.cfg.max_depth || terms.len() >= self.cfg.max_terms;
                    if let Some(t) = tail {
                        let target = &self.cfg.rel_tolerance * &partial.lo;
                        if t <= target || t.is_zero() || exhausted {
                            return partial.with_tail(&ExtNonNeg::Finite(t), TailSource::GeometricTail);
                        }
                    } else if exhausted {
                        return Bracket::unbounded(partial.lo, depth);
                    }
                    depth = (depth + 2).max(depth * 5 / 4).min(self.cfg.max_depth);
                }
            }
        }
    }

    /// Largest rank in the support of the element.
    pub fn radius(&self) -> u64 {
        self.radius
    }
}

/// 2^m-th root of a nonnegative rational as f64, robust for very large values.
pub fn root_presentation(h: &Rational, m: u32) -> f64 {
    if h.is_zero() {
        return 0.0;
    }
    let ln = ln_rational(h);
    (ln / 2f64.powi(m as i32)).exp()
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        use num_traits::ToPrimitive;
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    use num_traits::ToPrimitive;
    top.to_f64().unwrap_or(1.0).ln() + (shift as f64) * std::f64::consts::LN_2
}

pub fn ln_rational(r: &Rational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

/// Float presentation of a seminorm value together with its exact backing.
#[derive(Clone, Debug)]
pub struct SeminormValue {
    pub entry: HEntry,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

fn present(entry: HEntry) -> Result<SeminormValue> {
    if entry.value.hi.is_infinite() {
        return Err(Error::Divergent(format!("h_{{{},{}}} is not finite: {}", entry.m, entry.ell, entry.value)));
    }
    let k = if entry.squared { 1 } else { entry.m };
    let lo = root_presentation(&entry.value.lo, k);
    let hi = root_presentation(entry.value.hi.as_finite().expect("finite"), k);
    Ok(SeminormValue { value: lo, lo, hi, entry })
}

/// ‖a‖_{m,ℓ,γ} = h_{m,ℓ,γ}(a)^{1/2^m}.
pub fn seminorm<M: StructureModel>(engine: &HEngine<'_, M>, m: u32, ell: u64, g: &M::Index) -> Result<SeminormValue> {
    present(engine.h(m, ell, g)?)
}

/// max over ℓ of h_{m,ℓ,γ}, root taken once.
pub fn seminorm_max_ell<M: StructureModel>(engine: &HEngine<'_, M>, m: u32, g: &M::Index) -> Result<SeminormValue> {
    let mut best: Option<HEntry> = None;
    for ell in 0..(1u64 << m) {
        let e = engine.h(m, ell, g)?;
        best = Some(match best {
            None => e,
            Some(b) => {
                let lo = b.value.lo.clone().max(e.value.lo.clone());
                let hi = b.value.hi.clone().max(e.value.hi.clone());
                let tail = b.value.tail.max(e.value.tail);
                let depth = b.value.depth.max(e.value.depth);
                HEntry { m, ell: if e.value.hi > b.value.hi { ell } else { b.ell }, value: Bracket::new(lo, hi, depth, tail), squared: b.squared }
            }
        });
    }
    present(best.expect("at least one ell"))
}

/// Convenience for m = 0 brackets of |a_γ| itself.
pub fn modulus_bracket(sq: &Rational, bits: u64) -> (Rational, Rational) {
    crate::exact::roots::root_bracket(sq, 2, bits)
}
