use num_traits::Signed;

use crate::algebra::Element;
use crate::disk::{eval_upstairs, ConePoint, IndexTriple};
use crate::error::{Error, Result};
use crate::exact::roots::sqrt_exact;
use crate::exact::{GaussRat, Rational};

/// Φ_{ħ'}⁻¹ ∘ Φ_ħ: the same coefficients, read in the basis f(ħ').
pub fn phi_image(a: &Element<IndexTriple>) -> Element<IndexTriple> {
    a.clone()
}

/// Outcome of the scaling identity (Φ_{ħ'}⁻¹Φ_ħ a)(w) = a(√t·w) with t = ħ/ħ'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RescaleStatus {
    Verified { t_sqrt: Rational, points: usize },
    Mismatch { point: usize, lhs: GaussRat, rhs: GaussRat },
    /// t is positive but not the square of a rational, so √t·w leaves ℚ(i).
    Skipped { reason: String },
}

/// Checks the scaling identity at every point.
pub fn phi_rescale(a: &Element<IndexTriple>, hbar: &Rational, hbar_prime: &Rational, points: &[ConePoint]) -> Result<RescaleStatus> {
    if !hbar.is_positive() || !hbar_prime.is_positive() {
        return Err(Error::NonPositiveHbar(format!("{hbar}, {hbar_prime}")));
    }
    let t = hbar / hbar_prime;
    let Some(s) = sqrt_exact(&t) else {
        return Ok(RescaleStatus::Skipped { reason: format!("t = {t} is not a rational square") });
    };
    let image = phi_image(a);
    for (k, w) in points.iter().enumerate() {
        let lhs = eval_upstairs(&image, w, hbar_prime)?;
        let scaled = ConePoint::new(w.coords().iter().map(|x| x.scale(&s)).collect())?;
        let rhs = eval_upstairs(a, &scaled, hbar)?;
        if lhs != rhs {
            return Ok(RescaleStatus::Mismatch { point: k, lhs, rhs });
        }
    }
    Ok(RescaleStatus::Verified { t_sqrt: s, points: points.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::exact::MultiIndex;

    #[test]
    fn quarter_scaling() {
        let a = Element::from_real_terms([
            (IndexTriple::new(MultiIndex::new(vec![1]), MultiIndex::new(vec![0]), 2).unwrap(), rat(3, 2)),
            (IndexTriple::unit(1), int(-1)),
        ]);
        let pts = vec![
            ConePoint::new(vec![GaussRat::real(int(1)), GaussRat::real(int(0))]).unwrap(),
            ConePoint::new(vec![GaussRat::real(rat(5, 4)), GaussRat::real(rat(3, 4))]).unwrap(),
        ];
        let st = phi_rescale(&a, &rat(1, 2), &rat(1, 8), &pts).unwrap();
        assert_eq!(st, RescaleStatus::Verified { t_sqrt: int(2), points: 2 });
        assert!(matches!(phi_rescale(&a, &rat(1, 2), &rat(1, 4), &pts).unwrap(), RescaleStatus::Skipped { .. }));
        assert_eq!(phi_rescale(&a, &rat(1, 3), &rat(1, 3), &pts).unwrap(), RescaleStatus::Verified { t_sqrt: int(1), points: 2 });
    }
}
