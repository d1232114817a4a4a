use num_traits::{One, Signed, Zero};

use crate::algebra::{Bracket, StructureModel, TailSource};
use crate::exact::roots::root_bracket;
use crate::exact::{factorial_q, ExtNonNeg, Rational};
use crate::exact::rational::pow;

use super::htable::HEngine;

/// How |ω_γ| behaves with rank, used for tail control.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightProfile {
    /// Finitely many nonzero weights.
    Finite,
    /// |ω_γ| = R^rank(γ).
    Geometric { r: Rational },
    /// |ω_γ| = R^rank(γ) / rank(γ)!.
    GeometricFactorial { r: Rational },
}

/// The weights |ω_γ| of an ω-refined seminorm.
#[derive(Clone)]
pub struct OmegaWeights<I> {
    pub description: String,
    pub profile: WeightProfile,
    finite: Vec<(I, Rational)>,
}

impl<I: Clone + 'static> OmegaWeights<I> {
    /// Weight 1 at γ₀: the coefficient functional e^{γ₀}.
    pub fn coefficient(g: I) -> Self {
        OmegaWeights {
            description: "coefficient functional".into(),
            profile: WeightProfile::Finite,
            finite: vec![(g, Rational::one())],
        }
    }

    pub fn finite(weights: Vec<(I, Rational)>) -> Self {
        OmegaWeights {
            description: "finite weights".into(),
            profile: WeightProfile::Finite,
            finite: weights,
        }
    }

    /// |ω_γ| = |p|^rank, evaluation at a point of modulus R.
    pub fn geometric(r: Rational) -> Self {
        OmegaWeights {
            description: format!("point evaluation, |p| = {r}"),
            profile: WeightProfile::Geometric { r },
            finite: Vec::new(),
        }
    }

    /// |ω_γ| = R^rank / rank!, evaluation in the factorial basis.
    pub fn geometric_factorial(r: Rational) -> Self {
        OmegaWeights {
            description: format!("factorial-basis point evaluation, |p| = {r}"),
            profile: WeightProfile::GeometricFactorial { r },
            finite: Vec::new(),
        }
    }

    fn rank_weight(&self, rank: u64) -> Rational {
        match &self.profile {
            WeightProfile::Finite => Rational::zero(),
            WeightProfile::Geometric { r } => pow(r, rank as u32),
            WeightProfile::GeometricFactorial { r } => pow(r, rank as u32) / factorial_q(rank as u32),
        }
    }
}

/// Σ_γ |ω_γ| h_{m,ℓ,γ}(a) as a bracket over ranks ≤ `max_rank` plus a certified tail.
///
/// At m = 0 the summands |a_γ| are bracketed by dyadic square roots.
pub fn omega_h<M: StructureModel>(engine: &HEngine<'_, M>, m: u32, ell: u64, omega: &OmegaWeights<M::Index>, max_rank: u64) -> Bracket {
    let model = engine.model();
    let term = |g: &M::Index| -> Bracket {
        if m == 0 {
            let sq = engine.element().coefficient(g).norm_sqr();
            let (lo, hi) = root_bracket(&sq, 2, 96);
            Bracket::new(lo, ExtNonNeg::Finite(hi), 0, TailSource::GeometricTail)
        } else {
            engine.cell(m, ell, g)
        }
    };
    if let WeightProfile::Finite = omega.profile {
        let mut acc = Bracket::zero();
        for (g, w) in &omega.finite {
            acc = acc.add(&term(g).scale(&w.abs()));
        }
        return acc;
    }
    if m == 0 {
        let mut acc = Bracket::zero();
        for g in engine.element().support() {
            acc = acc.add(&term(g).scale(&omega.rank_weight(model.rank(g))));
        }
        return acc;
    }
    let mut acc = Bracket::zero();
    for r in 0..=max_rank {
        let Some(idx) = model.indices_with_rank(r) else {
            return Bracket::unbounded(acc.lo, r);
        };
        let w = omega.rank_weight(r);
        for g in &idx {
            acc = acc.add(&term(g).scale(&w));
        }
    }
    acc = acc.at_depth(max_rank);
    // divergence witness: weights ≥ 1 on a ray where h is nondecreasing and positive
    if let WeightProfile::Geometric { r } = &omega.profile {
        if r >= &Rational::one() && model.h_monotone_in_rank() {
            let positive = model
                .indices_with_rank(max_rank)
                .unwrap_or_default()
                .iter()
                .any(|g| term(g).lo.is_positive());
            if positive {
                return Bracket::divergent(acc.lo, max_rank);
            }
        }
    }
    match omega_tail(engine, m, ell, omega, max_rank) {
        Some(t) => acc.with_tail(&ExtNonNeg::Finite(t), TailSource::GeometricTail),
        None => Bracket::unbounded(acc.lo, max_rank),
    }
}

/// Σ_{rank > D} count·weight·envelope, bounded geometrically once the term ratio is < 1.
fn omega_tail<M: StructureModel>(engine: &HEngine<'_, M>, m: u32, ell: u64, omega: &OmegaWeights<M::Index>, depth: u64) -> Option<Rational> {
    let env = engine.envelope(m, ell)?;
    let (g, q) = engine.model().rank_count_bound()?;
    let (r, fact) = match &omega.profile {
        WeightProfile::Geometric { r } => (r.clone(), false),
        WeightProfile::GeometricFactorial { r } => (r.clone(), true),
        WeightProfile::Finite => return Some(Rational::zero()),
    };
    let term = |n: u64| -> Rational {
        let cnt = pow(&g, n as u32) * pow(&Rational::from_integer((n + 1).into()), q);
        cnt * omega.rank_weight(n) * env.at(n)
    };
    let n0 = depth + 1;
    let grow = Rational::new((n0 + 2).into(), (n0 + 1).into());
    let mut rho = &g * &r * &env.b * pow(&grow, env.p + q);
    if fact {
        rho /= Rational::from_integer((n0 + 1).into());
    }
    if rho >= Rational::one() {
        return None;
    }
    Some(term(n0) / (Rational::one() - rho))
}
