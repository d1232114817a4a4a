use num_traits::One;

use crate::algebra::{Branch, Envelope, FanIn, StructureModel};
use crate::error::{Error, Result};
use crate::exact::{factorial_q, Rational};

use super::{length_factorial_step, length_factorial_tail};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LaurentBasis {
    /// z^n.
    Plain,
    /// z^n / |n|!.
    Factorial,
}

/// Laurent polynomials ℂ[z, z⁻¹], index n ∈ ℤ.
#[derive(Clone, Debug)]
pub struct LaurentModel {
    pub basis: LaurentBasis,
}

/// C^k_{n,·}: |k|!/(|n|!·|k−n|!) in the factorial basis, the constant 1 in the plain basis.
pub fn laurent_rowsum(basis: LaurentBasis, n: i64, k: i64) -> Rational {
    match basis {
        LaurentBasis::Plain => Rational::one(),
        LaurentBasis::Factorial => {
            let f = |x: i64| factorial_q(x.unsigned_abs() as u32);
            f(k) / (f(n) * f(k - n))
        }
    }
}

impl LaurentModel {
    pub fn new(basis: LaurentBasis) -> Self {
        LaurentModel { basis }
    }

    fn ball(depth: u64) -> impl Iterator<Item = i64> {
        let d = depth as i64;
        -d..=d
    }
}

impl StructureModel for LaurentModel {
    type Index = i64;

    fn name(&self) -> String {
        match self.basis {
            LaurentBasis::Plain => "laurent:plain".into(),
            LaurentBasis::Factorial => "laurent:factorial".into(),
        }
    }

    fn product_fan(&self, a: &i64, b: &i64) -> Vec<(i64, Rational)> {
        let k = a + b;
        let c = match self.basis {
            LaurentBasis::Plain => Rational::one(),
            LaurentBasis::Factorial => {
                let f = |x: i64| factorial_q(x.unsigned_abs() as u32);
                f(k) / (f(*a) * f(*b))
            }
        };
        vec![(k, c)]
    }

    fn row_sum(&self, a: &i64, g: &i64) -> Rational {
        laurent_rowsum(self.basis, *a, *g)
    }

    fn col_sum(&self, b: &i64, g: &i64) -> Rational {
        laurent_rowsum(self.basis, *b, *g)
    }

    fn rank(&self, i: &i64) -> u64 {
        i.unsigned_abs()
    }

    fn fan_in(&self, g: &i64, branch: Branch, _radius: u64, depth: u64) -> FanIn<i64> {
        let terms: Vec<_> = Self::ball(depth).map(|n| (n, self.branch_sum(branch, &n, g))).collect();
        match self.basis {
            // every n contributes with weight 1; h_1 is constant in n
            LaurentBasis::Plain => FanIn::Divergent { window: terms, representative: depth as i64 + 1 },
            LaurentBasis::Factorial => FanIn::Truncated { terms, complete: false },
        }
    }

    fn envelope_seed(&self, _branch: Branch) -> Option<(Rational, Rational)> {
        match self.basis {
            LaurentBasis::Plain => None,
            LaurentBasis::Factorial => Some((Rational::one(), Rational::from_integer(2.into()))),
        }
    }

    fn envelope_step(&self, env: &Envelope, _branch: Branch) -> Option<Envelope> {
        match self.basis {
            LaurentBasis::Plain => None,
            LaurentBasis::Factorial => length_factorial_step(env, &Rational::from_integer(2.into())),
        }
    }

    fn tail_bound(&self, g: &i64, _branch: Branch, depth: u64, env: &Envelope) -> Option<Rational> {
        match self.basis {
            LaurentBasis::Plain => None,
            LaurentBasis::Factorial => length_factorial_tail(g.unsigned_abs(), depth, env, &Rational::from_integer(2.into())),
        }
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn unit(&self) -> Option<i64> {
        Some(0)
    }

    /// z ↦ z̄ on the unit circle: z^n ↦ z^{-n}.
    fn involution(&self, i: &i64) -> Option<i64> {
        Some(-i)
    }

    fn rank_count_bound(&self) -> Option<(Rational, u32)> {
        Some((Rational::from_integer(2.into()), 0))
    }

    fn indices_with_rank(&self, r: u64) -> Option<Vec<i64>> {
        let r = r as i64;
        Some(if r == 0 { vec![0] } else { vec![-r, r] })
    }

    fn parse_index(&self, v: &serde_json::Value) -> Result<i64> {
        v.as_i64().ok_or_else(|| Error::Parse(format!("Laurent index must be an integer, got {v}")))
    }

    fn index_json(&self, i: &i64) -> serde_json::Value {
        serde_json::json!(i)
    }
}
