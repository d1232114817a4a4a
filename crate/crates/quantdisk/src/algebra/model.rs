use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::One;

use crate::error::Result;
use crate::exact::rational::pow;
use crate::exact::Rational;

/// Requirements on a basis index.
pub trait BasisIndex: Clone + Ord + Eq + Hash + Debug + Display + Send + Sync + 'static {}

impl<T: Clone + Ord + Eq + Hash + Debug + Display + Send + Sync + 'static> BasisIndex for T {}

/// Which branch of the h-recursion: row sums (even ℓ) or column sums (odd ℓ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Even,
    Odd,
}

impl Branch {
    pub fn from_bit(bit: u64) -> Branch {
        if bit & 1 == 0 {
            Branch::Even
        } else {
            Branch::Odd
        }
    }
}

/// The inputs α feeding h_{m+1,·,γ} together with their weights C^γ_{α,·} (or C^γ_{·,α}).
#[derive(Clone, Debug)]
pub enum FanIn<I> {
    /// Every α with nonzero weight.
    Finite(Vec<(I, Rational)>),
    /// Every α of rank ≤ depth; `complete` when nothing lies beyond.
    Truncated { terms: Vec<(I, Rational)>, complete: bool },
    /// Weights are a positive constant on an infinite family; outside the finite
    /// `window`, h is constant along the family and equal to its value at `representative`.
    Divergent { window: Vec<(I, Rational)>, representative: I },
    /// No enumeration or tail control is available.
    Unknown,
}

/// Growth envelope h(α) ≤ k · b^rank(α) · (rank(α)+1)^p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub k: Rational,
    pub b: Rational,
    pub p: u32,
}

impl Envelope {
    pub fn at(&self, rank: u64) -> Rational {
        let poly = pow(&Rational::from_integer((rank + 1).into()), self.p);
        &self.k * pow(&self.b, rank as u32) * poly
    }

    pub fn constant(k: Rational) -> Envelope {
        Envelope { k, b: Rational::one(), p: 0 }
    }
}

/// An algebra with countable basis given by its structure constants C^γ_{αβ}.
///
/// All shipped models have rational structure constants.
pub trait StructureModel: Send + Sync {
    type Index: BasisIndex;

    fn name(&self) -> String;

    fn contains(&self, _i: &Self::Index) -> bool {
        true
    }

    /// Nonzero C^γ_{αβ} for fixed α, β.
    fn product_fan(&self, a: &Self::Index, b: &Self::Index) -> Vec<(Self::Index, Rational)>;

    /// C^γ_{α,·} = Σ_β |C^γ_{αβ}|.
    fn row_sum(&self, a: &Self::Index, g: &Self::Index) -> Rational;

    /// C^γ_{·,β} = Σ_α |C^γ_{αβ}|.
    fn col_sum(&self, b: &Self::Index, g: &Self::Index) -> Rational;

    fn branch_sum(&self, branch: Branch, x: &Self::Index, g: &Self::Index) -> Rational {
        match branch {
            Branch::Even => self.row_sum(x, g),
            Branch::Odd => self.col_sum(x, g),
        }
    }

    /// Nonnegative size used for enumeration order and growth envelopes.
    fn rank(&self, i: &Self::Index) -> u64;

    /// Inputs α with nonzero branch weight at γ. `radius` is the largest rank in the
    /// support of the element under study, `depth` the current truncation rank.
    fn fan_in(&self, g: &Self::Index, branch: Branch, radius: u64, depth: u64) -> FanIn<Self::Index>;

    /// (c, B) with branch_sum(α, γ) ≤ c·B^rank(γ) for every α.
    fn envelope_seed(&self, _branch: Branch) -> Option<(Rational, Rational)> {
        None
    }

    /// Envelope of h_{m+1} on the given branch from an envelope of h_m.
    fn envelope_step(&self, _env: &Envelope, _branch: Branch) -> Option<Envelope> {
        None
    }

    /// Upper bound on Σ env(α)²·weight(α, γ) over the α of rank > depth.
    fn tail_bound(&self, _g: &Self::Index, _branch: Branch, _depth: u64, _env: &Envelope) -> Option<Rational> {
        None
    }

    fn initial_depth(&self, g: &Self::Index, radius: u64) -> u64 {
        radius.max(self.rank(g)) + 1
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn unit(&self) -> Option<Self::Index> {
        None
    }

    /// Index map of the involution; coefficients are conjugated.
    fn involution(&self, _i: &Self::Index) -> Option<Self::Index> {
        None
    }

    /// h_{m,ℓ} is nondecreasing along rank when the index set is one ray.
    fn h_monotone_in_rank(&self) -> bool {
        false
    }

    /// (G, q) with #{α : rank α = r} ≤ G^r (r+1)^q.
    fn rank_count_bound(&self) -> Option<(Rational, u32)> {
        None
    }

    /// All indices of the given rank, when that set is finite and enumerable.
    fn indices_with_rank(&self, _r: u64) -> Option<Vec<Self::Index>> {
        None
    }

    fn parse_index(&self, v: &serde_json::Value) -> Result<Self::Index>;

    fn index_json(&self, i: &Self::Index) -> serde_json::Value;
}
