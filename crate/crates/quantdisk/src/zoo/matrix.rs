use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Branch, Element, Envelope, FanIn, StructureModel};
use crate::error::{Error, Result};
use crate::exact::{factorial_q, GaussRat, Rational};

use super::exp_upper;

/// Basis of finitely supported infinite matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixBasis {
    /// E_ij.
    Plain,
    /// E_ij / √(i! j!).
    Hat,
    /// E_ij / (i j).
    Tilde,
}

/// Matrix position (i, j), both ≥ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos(pub u64, pub u64);

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub basis: MatrixBasis,
}

impl MatrixModel {
    pub fn new(basis: MatrixBasis) -> Self {
        MatrixModel { basis }
    }

    /// Weight of the contracted index j in E_ij E_jl.
    fn contraction(&self, j: u64) -> Rational {
        match self.basis {
            MatrixBasis::Plain => Rational::one(),
            MatrixBasis::Hat => Rational::one() / factorial_q(j as u32),
            MatrixBasis::Tilde => Rational::new(1.into(), (j * j).into()),
        }
    }
}

impl StructureModel for MatrixModel {
    type Index = Pos;

    fn name(&self) -> String {
        match self.basis {
            MatrixBasis::Plain => "matrix:plain".into(),
            MatrixBasis::Hat => "matrix:hat".into(),
            MatrixBasis::Tilde => "matrix:tilde".into(),
        }
    }

    fn contains(&self, i: &Pos) -> bool {
        i.0 >= 1 && i.1 >= 1
    }

    fn product_fan(&self, a: &Pos, b: &Pos) -> Vec<(Pos, Rational)> {
        if a.1 != b.0 {
            return Vec::new();
        }
        vec![(Pos(a.0, b.1), self.contraction(a.1))]
    }

    fn row_sum(&self, a: &Pos, g: &Pos) -> Rational {
        if a.0 == g.0 {
            self.contraction(a.1)
        } else {
            Rational::zero()
        }
    }

    fn col_sum(&self, b: &Pos, g: &Pos) -> Rational {
        if b.1 == g.1 {
            self.contraction(b.0)
        } else {
            Rational::zero()
        }
    }

    fn rank(&self, i: &Pos) -> u64 {
        i.0 + i.1
    }

    fn fan_in(&self, g: &Pos, branch: Branch, _radius: u64, depth: u64) -> FanIn<Pos> {
        let family = |j: u64| match branch {
            Branch::Even => Pos(g.0, j),
            Branch::Odd => Pos(j, g.1),
        };
        let terms: Vec<_> = (1..=depth).map(|j| (family(j), self.contraction(j))).collect();
        match self.basis {
            MatrixBasis::Plain => FanIn::Divergent { window: terms, representative: family(depth + 1) },
            _ => FanIn::Truncated { terms, complete: false },
        }
    }

    fn envelope_seed(&self, _branch: Branch) -> Option<(Rational, Rational)> {
        match self.basis {
            MatrixBasis::Plain => None,
            _ => Some((Rational::one(), Rational::one())),
        }
    }

    fn envelope_step(&self, env: &Envelope, _branch: Branch) -> Option<Envelope> {
        if env.p != 0 || env.b < Rational::one() {
            return None;
        }
        let b2 = &env.b * &env.b;
        let k2 = &env.k * &env.k;
        match self.basis {
            MatrixBasis::Plain => None,
            // Σ_j B^{2j}/j! ≤ e^{B²}
            MatrixBasis::Hat => Some(Envelope { k: k2 * exp_upper(&b2), b: b2, p: 0 }),
            // Σ_j 1/j² ≤ 5/3
            MatrixBasis::Tilde if env.b.is_one() => {
                Some(Envelope { k: k2 * Rational::new(5.into(), 3.into()), b: Rational::one(), p: 0 })
            }
            MatrixBasis::Tilde => None,
        }
    }

    fn tail_bound(&self, g: &Pos, branch: Branch, depth: u64, env: &Envelope) -> Option<Rational> {
        if env.p != 0 {
            return None;
        }
        let k2 = &env.k * &env.k;
        let b2 = &env.b * &env.b;
        let fixed = match branch {
            Branch::Even => g.0,
            Branch::Odd => g.1,
        };
        match self.basis {
            MatrixBasis::Plain => None,
            MatrixBasis::Hat => {
                // K²B^{2(fixed+j)}/j! for j > depth, ratio B²/(j+1)
                if &b2 * Rational::from_integer(2.into()) > Rational::from_integer((depth + 2).into()) {
                    return None;
                }
                let j = depth + 1;
                let t = k2 * crate::exact::rational::pow(&b2, (fixed + j) as u32) / factorial_q(j as u32);
                Some(t * Rational::from_integer(2.into()))
            }
            // Σ_{j>D} 1/j² ≤ 1/D
            MatrixBasis::Tilde if env.b.is_one() => Some(k2 / Rational::from_integer(depth.max(1).into())),
            MatrixBasis::Tilde => None,
        }
    }

    fn initial_depth(&self, g: &Pos, radius: u64) -> u64 {
        radius.max(g.0).max(g.1) + 1
    }

    /// E_ij* = E_ji.
    fn involution(&self, i: &Pos) -> Option<Pos> {
        Some(Pos(i.1, i.0))
    }

    fn rank_count_bound(&self) -> Option<(Rational, u32)> {
        Some((Rational::one(), 1))
    }

    fn indices_with_rank(&self, r: u64) -> Option<Vec<Pos>> {
        Some((1..r).map(|i| Pos(i, r - i)).collect())
    }

    fn parse_index(&self, v: &serde_json::Value) -> Result<Pos> {
        let p: Pos = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("matrix index [i, j]: {e}")))?;
        if !self.contains(&p) {
            return Err(Error::OutsideUniverse { model: self.name(), index: p.to_string() });
        }
        Ok(p)
    }

    fn index_json(&self, i: &Pos) -> serde_json::Value {
        serde_json::json!([i.0, i.1])
    }
}

/// Trace in the unrescaled E-basis.
pub fn matrix_trace(model: &MatrixModel, a: &Element<Pos>) -> GaussRat {
    let mut acc = GaussRat::zero();
    for (p, c) in a.iter() {
        if p.0 == p.1 {
            let w = match model.basis {
                MatrixBasis::Plain => Rational::one(),
                MatrixBasis::Hat => Rational::one() / factorial_q(p.0 as u32),
                MatrixBasis::Tilde => Rational::new(1.into(), (p.0 * p.0).into()),
            };
            acc += c.scale(&w);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::seminorm::HEngine;

    #[test]
    fn traces() {
        let plain = MatrixModel::new(MatrixBasis::Plain);
        assert_eq!(matrix_trace(&plain, &Element::basis(Pos(1, 1))), GaussRat::from_ints(1, 0));
        let hat = MatrixModel::new(MatrixBasis::Hat);
        assert!(matrix_trace(&hat, &Element::basis(Pos(1, 2))).is_zero());
        let a = Element::from_real_terms((1..=5).map(|r| (Pos(r, r), int(1))));
        let expect: Rational = (1..=5).map(|r| Rational::one() / factorial_q(r)).sum();
        assert_eq!(matrix_trace(&hat, &a), GaussRat::real(expect));
    }

    #[test]
    fn plain_divergence_pattern() {
        let m = MatrixModel::new(MatrixBasis::Plain);
        let a = Element::from_real_terms([(Pos(1, 2), int(1)), (Pos(3, 1), int(2))]);
        let e = HEngine::new(&m, &a).unwrap();
        // ℓ = 0: infinite exactly on nonzero rows; ℓ = 3: on nonzero columns
        assert!(e.cell(2, 0, &Pos(1, 5)).is_divergent());
        assert!(e.cell(2, 0, &Pos(2, 5)).is_finite());
        assert!(e.cell(2, 3, &Pos(4, 1)).is_divergent());
        assert!(e.cell(2, 1, &Pos(1, 1)).is_finite());
        assert!(e.cell(2, 2, &Pos(1, 1)).is_finite());
    }

    #[test]
    fn tilde_diagonal_example() {
        let m = MatrixModel::new(MatrixBasis::Tilde);
        let a = Element::from_real_terms((1..=6).map(|r| (Pos(r, r), int(r as i64))));
        let e = HEngine::new(&m, &a).unwrap();
        for r in 1..=6 {
            assert_eq!(e.cell(1, 0, &Pos(r, 2)).exact_value(), Some(&int(1)));
        }
    }
}
