use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::from_big;
use crate::exact::{MultiIndex, Rational};

/// Index triple (P, Q, α) of the cone basis f_{P,Q,α}, with |P|, |Q| ≤ α.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexTriple {
    #[serde(rename = "P")]
    pub p: MultiIndex,
    #[serde(rename = "Q")]
    pub q: MultiIndex,
    pub alpha: u32,
}

impl IndexTriple {
    pub fn new(p: MultiIndex, q: MultiIndex, alpha: u32) -> Result<Self> {
        let t = IndexTriple { p, q, alpha };
        t.validate()?;
        Ok(t)
    }

    /// Constructor for callers that already know the triple is valid.
    pub(crate) fn raw(p: MultiIndex, q: MultiIndex, alpha: u32) -> Self {
        debug_assert!(p.abs() <= alpha && q.abs() <= alpha && p.dim() == q.dim());
        IndexTriple { p, q, alpha }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p.dim() != self.q.dim() {
            return Err(Error::InvalidArgument(format!("P and Q have different dimensions in {self}")));
        }
        if self.p.abs() > self.alpha || self.q.abs() > self.alpha {
            return Err(Error::InvalidArgument(format!("{self} violates |P|, |Q| ≤ alpha")));
        }
        Ok(())
    }

    pub fn unit(n: usize) -> Self {
        IndexTriple::raw(MultiIndex::zero(n), MultiIndex::zero(n), 0)
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// max(|P|, |Q|), the level of the class of f_{P,Q,α} on the disk.
    pub fn min_level(&self) -> u32 {
        self.p.abs().max(self.q.abs())
    }

    pub fn swapped(&self) -> IndexTriple {
        IndexTriple::raw(self.q.clone(), self.p.clone(), self.alpha)
    }

    /// All triples of dimension `n` at level exactly `alpha`.
    pub fn at_level(n: usize, alpha: u32) -> Vec<IndexTriple> {
        let ms = MultiIndex::with_abs_le(n, alpha);
        let mut out = Vec::with_capacity(ms.len() * ms.len());
        for p in &ms {
            for q in &ms {
                out.push(IndexTriple::raw(p.clone(), q.clone(), alpha));
            }
        }
        out.sort();
        out
    }

    /// All triples of dimension `n` with level ≤ `max_level`, in basis order.
    pub fn up_to(n: usize, max_level: u32) -> Vec<IndexTriple> {
        (0..=max_level).flat_map(|a| IndexTriple::at_level(n, a)).collect()
    }

    /// 1/(P!(α−|P|)!Q!(α−|Q|)!).
    pub fn prefactor(&self) -> Rational {
        prefactor(&self.p, &self.q, self.alpha)
    }
}

pub(crate) fn prefactor(p: &MultiIndex, q: &MultiIndex, alpha: u32) -> Rational {
    let den: BigInt = p.factorial()
        * crate::exact::factorial(alpha - p.abs())
        * q.factorial()
        * crate::exact::factorial(alpha - q.abs());
    from_big(den).recip()
}

impl Ord for IndexTriple {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.alpha, &self.p, &self.q).cmp(&(o.alpha, &o.p, &o.q))
    }
}

impl PartialOrd for IndexTriple {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for IndexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{};{})", self.p, self.q, self.alpha)
    }
}

/// Index (P, Q) of the disk basis f_{P,Q}; the level max(|P|, |Q|) is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiskIndex {
    #[serde(rename = "P")]
    pub p: MultiIndex,
    #[serde(rename = "Q")]
    pub q: MultiIndex,
}

impl DiskIndex {
    pub fn new(p: MultiIndex, q: MultiIndex) -> Result<Self> {
        if p.dim() != q.dim() {
            return Err(Error::InvalidArgument(format!("P = {p} and Q = {q} have different dimensions")));
        }
        Ok(DiskIndex { p, q })
    }

    pub fn unit(n: usize) -> Self {
        DiskIndex { p: MultiIndex::zero(n), q: MultiIndex::zero(n) }
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn level(&self) -> u32 {
        self.p.abs().max(self.q.abs())
    }

    /// f_{P,Q,max(|P|,|Q|)}.
    pub fn lift(&self) -> IndexTriple {
        IndexTriple::raw(self.p.clone(), self.q.clone(), self.level())
    }

    pub fn swapped(&self) -> DiskIndex {
        DiskIndex { p: self.q.clone(), q: self.p.clone() }
    }

    /// All disk indices of dimension `n` with level ≤ `max_level`, in basis order.
    pub fn up_to(n: usize, max_level: u32) -> Vec<DiskIndex> {
        let ms = MultiIndex::with_abs_le(n, max_level);
        let mut out = Vec::with_capacity(ms.len() * ms.len());
        for p in &ms {
            for q in &ms {
                out.push(DiskIndex { p: p.clone(), q: q.clone() });
            }
        }
        out.sort();
        out
    }
}

impl Ord for DiskIndex {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.level(), &self.p, &self.q).cmp(&(o.level(), &o.p, &o.q))
    }
}

impl PartialOrd for DiskIndex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for DiskIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.p, self.q)
    }
}
