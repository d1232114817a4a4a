use num_traits::{One, Zero};

use crate::algebra::{Branch, Envelope, FanIn, StructureModel};
use crate::error::{Error, Result};
use crate::exact::{binomial_q, Rational};

/// Basis of ℂ[z]: monomials z^n or Taylor-rescaled z^n/n!.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolyBasis {
    Monomial,
    Factorial,
}

/// Polynomials in one variable, index n ↔ z^n (or z^n/n!).
#[derive(Clone, Debug)]
pub struct PolyModel {
    pub basis: PolyBasis,
}

impl PolyModel {
    pub fn new(basis: PolyBasis) -> Self {
        PolyModel { basis }
    }

    fn weight(&self, n: u64, k: u64) -> Rational {
        if n > k {
            return Rational::zero();
        }
        match self.basis {
            PolyBasis::Monomial => Rational::one(),
            PolyBasis::Factorial => binomial_q(k as u32, n as u32),
        }
    }
}

impl StructureModel for PolyModel {
    type Index = u64;

    fn name(&self) -> String {
        match self.basis {
            PolyBasis::Monomial => "poly:monomial".into(),
            PolyBasis::Factorial => "poly:factorial".into(),
        }
    }

    fn product_fan(&self, a: &u64, b: &u64) -> Vec<(u64, Rational)> {
        vec![(a + b, self.weight(*a, a + b))]
    }

    fn row_sum(&self, a: &u64, g: &u64) -> Rational {
        self.weight(*a, *g)
    }

    fn col_sum(&self, b: &u64, g: &u64) -> Rational {
        self.weight(*b, *g)
    }

    fn rank(&self, i: &u64) -> u64 {
        *i
    }

    fn fan_in(&self, g: &u64, _branch: Branch, _radius: u64, _depth: u64) -> FanIn<u64> {
        FanIn::Finite((0..=*g).map(|n| (n, self.weight(n, *g))).collect())
    }

    fn envelope_seed(&self, _branch: Branch) -> Option<(Rational, Rational)> {
        Some(match self.basis {
            PolyBasis::Monomial => (Rational::one(), Rational::one()),
            PolyBasis::Factorial => (Rational::one(), Rational::from_integer(2.into())),
        })
    }

    fn envelope_step(&self, env: &Envelope, _branch: Branch) -> Option<Envelope> {
        let k = &env.k * &env.k;
        match self.basis {
            // Σ_{n≤k} K²(n+1)^{2p} ≤ K²(k+1)^{2p+1}
            PolyBasis::Monomial if env.b.is_one() => Some(Envelope { k, b: Rational::one(), p: 2 * env.p + 1 }),
            PolyBasis::Monomial => None,
            // Σ_n C(k,n) K²B^{2n} = K²(1+B²)^k
            PolyBasis::Factorial if env.p == 0 => Some(Envelope { k, b: Rational::one() + &env.b * &env.b, p: 0 }),
            PolyBasis::Factorial => None,
        }
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn unit(&self) -> Option<u64> {
        Some(0)
    }

    fn h_monotone_in_rank(&self) -> bool {
        true
    }

    fn rank_count_bound(&self) -> Option<(Rational, u32)> {
        Some((Rational::one(), 0))
    }

    fn indices_with_rank(&self, r: u64) -> Option<Vec<u64>> {
        Some(vec![r])
    }

    fn parse_index(&self, v: &serde_json::Value) -> Result<u64> {
        v.as_u64().ok_or_else(|| Error::Parse(format!("polynomial index must be a nonnegative integer, got {v}")))
    }

    fn index_json(&self, i: &u64) -> serde_json::Value {
        serde_json::json!(i)
    }
}
