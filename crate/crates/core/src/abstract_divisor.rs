//! Barrier analysis for declared stratifications.
//!
//! For divisors that are not hyperplane arrangements — a smooth hypersurface
//! of degree `d` is the motivating case — the incidence data can be supplied
//! directly: components with degrees and multiplicities, strata with their
//! supports and total isotropy weights. The same invariant pipeline then
//! runs on the declaration; nothing geometric is computed, so the caller is
//! responsible for the stratification being the true one. The minimal Chern
//! number is an explicit input here (`n + 1` for CP^n), never inferred.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::invariants::{kappa_min, CoefficientSystem, InvariantError};
use crate::rational::rat;
use crate::report::{
    corollary_entry, BarrierReport, LambdaSearch, Verdict, WidthBound, WitnessFlat,
};
use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbstractError {
    #[error("divisor must have at least one component")]
    NoComponents,
    #[error("stratum {index}: empty support")]
    EmptyStratum { index: usize },
    #[error("stratum {index} references unknown component {component}")]
    UnknownComponent { index: usize, component: usize },
    #[error("stratum {index}: weight must be at least 1")]
    ZeroWeight { index: usize },
    #[error("component {index} has no singleton stratum")]
    MissingSingleton { index: usize },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// One irreducible component of the divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub degree: u32,
    pub multiplicity: Rat,
}

/// One declared stratum: the components containing it and the total
/// isotropy weight of its radial circle action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub support: Vec<usize>,
    pub weight: usize,
}

/// A stratified divisor given by declaration instead of geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractDivisor {
    pub n: usize,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
    /// Minimal Chern number of the ambient manifold; `n + 1` for CP^n.
    pub minimal_chern: u32,
}

impl AbstractDivisor {
    /// A smooth hypersurface of degree `d` in CP^n: one component, one
    /// stratum of weight one.
    pub fn cp_smooth(n: usize, d: u32) -> AbstractDivisor {
        AbstractDivisor {
            n,
            components: vec![Component {
                degree: d,
                multiplicity: Rat::one(),
            }],
            strata: vec![Stratum {
                support: vec![0],
                weight: 1,
            }],
            minimal_chern: n as u32 + 1,
        }
    }

    fn validate(&self) -> Result<(), AbstractError> {
        if self.components.is_empty() {
            return Err(AbstractError::NoComponents);
        }
        for (index, s) in self.strata.iter().enumerate() {
            if s.support.is_empty() {
                return Err(AbstractError::EmptyStratum { index });
            }
            if s.weight == 0 {
                return Err(AbstractError::ZeroWeight { index });
            }
            for &c in &s.support {
                if c >= self.components.len() {
                    return Err(AbstractError::UnknownComponent {
                        index,
                        component: c,
                    });
                }
            }
        }
        for index in 0..self.components.len() {
            let found = self.strata.iter().any(|s| s.support == [index]);
            if !found {
                return Err(AbstractError::MissingSingleton { index });
            }
        }
        Ok(())
    }
}

/// Run the invariant pipeline on a declared stratification.
pub fn analyze_abstract(div: &AbstractDivisor) -> Result<BarrierReport, AbstractError> {
    div.validate()?;
    let degrees: Vec<u32> = div.components.iter().map(|c| c.degree).collect();
    let mults: Vec<Rat> = div
        .components
        .iter()
        .map(|c| c.multiplicity.clone())
        .collect();
    let coeffs = CoefficientSystem::normalize(div.n, &mults, &degrees)?;

    // per-stratum ratios on the declaration
    let mut best: Option<(Rat, usize)> = None;
    for (i, s) in div.strata.iter().enumerate() {
        let lambda_v: Rat = s.support.iter().map(|&j| coeffs.lambda[j].clone()).sum();
        let ratio =
            (lambda_v.clone() - Rat::from_integer(Int::from(2 * s.weight as i64))) / lambda_v;
        if best.as_ref().is_none_or(|(r, _)| ratio > *r) {
            best = Some((ratio, i));
        }
    }
    let (sc, witness) = best.expect("validated: components have singleton strata");
    let kmin = kappa_min(&coeffs);
    let m = div
        .strata
        .iter()
        .map(|s| rat(s.weight as i64, s.support.len() as i64))
        .min()
        .expect("nonempty strata");

    let bound = crate::invariants::width_bound_sublevel(
        &Rat::zero(),
        &Rat::one(),
        div.minimal_chern,
        &sc,
        &kmin,
    )
    .expect("sigma = 0 is admissible")
    .map(WidthBound::Bound)
    .unwrap_or(WidthBound::NotApplicable);

    // smooth-hypersurface closed form n/d, for a single smooth component
    let smooth = if div.components.len() == 1 && div.strata.len() == 1 {
        let d = div.components[0].degree as i64;
        if d > div.n as i64 {
            corollary_entry(
                "smooth_divisor",
                Some(rat(div.n as i64, d)),
                bound.as_option().cloned(),
                None,
            )
        } else {
            corollary_entry(
                "smooth_divisor",
                None,
                bound.as_option().cloned(),
                Some(format!("needs degree d >= n+1, got d = {d}")),
            )
        }
    } else {
        corollary_entry(
            "smooth_divisor",
            None,
            bound.as_option().cloned(),
            Some("only applies to a single smooth component".to_string()),
        )
    };

    let verdict = if sc <= Rat::zero() {
        Verdict::Barrier
    } else {
        Verdict::Inconclusive
    };

    Ok(BarrierReport {
        n: div.n,
        components: div.components.len(),
        flats: div.strata.len(),
        sigma_crit: sc,
        witness: WitnessFlat {
            support: div.strata[witness].support.clone(),
            codim: div.strata[witness].weight,
        },
        kappa_min: kmin,
        minimal_chern: div.minimal_chern,
        m_of_d: m,
        width_bound: bound,
        verdict,
        corollaries: vec![smooth],
        kappa: coeffs.kappa,
        lambda: coeffs.lambda,
        lambda_search: LambdaSearch::NotRequested,
        sublevel: None,
        embedding_lower_bound: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_quartic_in_the_plane() {
        let report = analyze_abstract(&AbstractDivisor::cp_smooth(2, 4)).unwrap();
        assert_eq!(report.sigma_crit, rat(-1, 3));
        assert_eq!(report.kappa_min, rat(1, 4));
        assert_eq!(report.width_bound, WidthBound::Bound(rat(1, 2)));
        assert_eq!(report.verdict, Verdict::Barrier);
        let smooth = &report.corollaries[0];
        assert_eq!(smooth.closed_form, Some(rat(1, 2)));
        assert_eq!(smooth.matched, Some(true));
    }

    #[test]
    fn boundary_degree_equals_n_plus_one() {
        for n in 1..=4usize {
            let report = analyze_abstract(&AbstractDivisor::cp_smooth(n, n as u32 + 1)).unwrap();
            assert_eq!(report.sigma_crit, rat(0, 1));
            assert_eq!(
                report.width_bound,
                WidthBound::Bound(rat(n as i64, n as i64 + 1))
            );
        }
    }

    #[test]
    fn low_degree_is_not_applicable() {
        let report = analyze_abstract(&AbstractDivisor::cp_smooth(2, 2)).unwrap();
        assert_eq!(report.width_bound, WidthBound::NotApplicable);
        assert_eq!(report.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn validation_catches_bad_declarations() {
        let mut d = AbstractDivisor::cp_smooth(2, 4);
        d.strata.push(Stratum {
            support: vec![3],
            weight: 2,
        });
        assert_eq!(
            analyze_abstract(&d),
            Err(AbstractError::UnknownComponent {
                index: 1,
                component: 3
            })
        );
        let mut d = AbstractDivisor::cp_smooth(2, 4);
        d.strata.clear();
        assert_eq!(
            analyze_abstract(&d),
            Err(AbstractError::MissingSingleton { index: 0 })
        );
    }
}
