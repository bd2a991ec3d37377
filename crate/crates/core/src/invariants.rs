//! The symplectic invariants of an arrangement divisor and the width bounds.
//!
//! Every divisor component carries two positive rational coefficients: the
//! `kappa` lift of the symplectic class, normalized so a projective line has
//! area one, and the `lambda` lift of twice the first Chern class, whose
//! degree-weighted sum is `2(n+1)` on CP^n. From these and the lattice we
//! compute, all exactly:
//!
//! * per-stratum data: weight `w_v = codim(v)`, actions
//!   `kappa_v = sum of kappa_i over the support` and likewise `lambda_v`,
//!   and the ratio `(lambda_v - 2 w_v) / lambda_v`;
//! * `sigma_crit`: the maximum ratio over all flats — the barrier criterion
//!   is `sigma_crit <= 0`;
//! * `kappa_min`: the least positive value of an integer combination of the
//!   `kappa_i`, a rational gcd (meridian classes generate the pairing group);
//! * `m(D)`: the minimum over flats of `codim / support size`, equal to one
//!   exactly for normal crossings;
//! * the width bounds: for the full complement of the skeleton,
//!   `1 - ceil(1 - sigma_crit * (n+1)) * kappa_min`, and the sublevel
//!   variant `omega(A) - 2 sigma N - (1 - sigma) ceil(1 - sigma_crit * N) * kappa_min`;
//! * closed-form cross-checks for the special-case bounds (general
//!   position, degenerate arrangements, line configurations, smooth
//!   hypersurface), each asserted equal to the general bound.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::lattice::IntersectionLattice;
use crate::rational::{ceil_int, format_rational, rational_gcd};
use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("component {index}: coefficient must be positive, got {value}")]
    NonPositiveCoefficient { index: usize, value: String },
    #[error("coefficient vector has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("kappa must satisfy sum(kappa_i * deg_i) = 1, got {got}")]
    BadKappaSum { got: String },
    #[error("lambda must satisfy sum(lambda_i * deg_i) = 2(n+1) = {expected}, got {got}")]
    BadLambdaSum { expected: String, got: String },
    #[error("lattice is empty")]
    EmptyLattice,
    #[error("sublevel parameter sigma must lie in [0, 1), got {got}")]
    BadSigma { got: String },
    #[error(
        "flat {index} is not a double point of two lines (codim {codim}, {support} hyperplanes)"
    )]
    NotDoublePoint {
        index: usize,
        codim: usize,
        support: usize,
    },
    #[error("pair lower bound requires n = 2, got n = {n}")]
    NotPlane { n: usize },
}

/// The two coefficient lifts and the component degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSystem {
    /// Lift of the symplectic class; `sum(kappa_i * deg_i) = 1`.
    pub kappa: Vec<Rat>,
    /// Lift of twice the Chern class; `sum(lambda_i * deg_i) = 2(n+1)`.
    pub lambda: Vec<Rat>,
    /// Component degrees (all one for hyperplanes).
    pub degrees: Vec<u32>,
}

impl CoefficientSystem {
    /// Canonical normalization from divisor multiplicities:
    /// `kappa_i = d_i / sum(d_j deg_j)` and `lambda_i = 2(n+1) kappa_i`.
    pub fn normalize(
        n: usize,
        multiplicities: &[Rat],
        degrees: &[u32],
    ) -> Result<Self, InvariantError> {
        assert_eq!(multiplicities.len(), degrees.len());
        let mut total = Rat::zero();
        for (index, (d, &deg)) in multiplicities.iter().zip(degrees).enumerate() {
            if !d.is_positive() {
                return Err(InvariantError::NonPositiveCoefficient {
                    index,
                    value: format_rational(d),
                });
            }
            total += d * Rat::from_integer(Int::from(deg));
        }
        let chern = Rat::from_integer(Int::from(2 * (n as i64 + 1)));
        let kappa: Vec<Rat> = multiplicities.iter().map(|d| d / total.clone()).collect();
        let lambda: Vec<Rat> = kappa.iter().map(|k| k * chern.clone()).collect();
        let sys = CoefficientSystem {
            kappa,
            lambda,
            degrees: degrees.to_vec(),
        };
        sys.check(n)?;
        Ok(sys)
    }

    pub fn normalize_arrangement(arr: &Arrangement) -> Result<Self, InvariantError> {
        let degrees = vec![1u32; arr.len()];
        Self::normalize(arr.n, &arr.multiplicities(), &degrees)
    }

    /// Explicit lifts; both sum constraints are verified exactly.
    pub fn explicit(
        n: usize,
        kappa: Vec<Rat>,
        lambda: Vec<Rat>,
        degrees: Vec<u32>,
    ) -> Result<Self, InvariantError> {
        if kappa.len() != degrees.len() || lambda.len() != degrees.len() {
            return Err(InvariantError::WrongLength {
                expected: degrees.len(),
                got: if kappa.len() != degrees.len() {
                    kappa.len()
                } else {
                    lambda.len()
                },
            });
        }
        let sys = CoefficientSystem {
            kappa,
            lambda,
            degrees,
        };
        sys.check(n)?;
        Ok(sys)
    }

    /// Swap in a different `lambda` lift (e.g. one found by the LP search).
    pub fn with_lambda(mut self, n: usize, lambda: Vec<Rat>) -> Result<Self, InvariantError> {
        if lambda.len() != self.degrees.len() {
            return Err(InvariantError::WrongLength {
                expected: self.degrees.len(),
                got: lambda.len(),
            });
        }
        self.lambda = lambda;
        self.check(n)?;
        Ok(self)
    }

    fn check(&self, n: usize) -> Result<(), InvariantError> {
        for (index, v) in self.kappa.iter().chain(self.lambda.iter()).enumerate() {
            if !v.is_positive() {
                return Err(InvariantError::NonPositiveCoefficient {
                    index: index % self.kappa.len(),
                    value: format_rational(v),
                });
            }
        }
        let weigh = |xs: &[Rat]| -> Rat {
            xs.iter()
                .zip(&self.degrees)
                .map(|(x, &d)| x * Rat::from_integer(Int::from(d)))
                .sum()
        };
        let ksum = weigh(&self.kappa);
        if ksum != Rat::one() {
            return Err(InvariantError::BadKappaSum {
                got: format_rational(&ksum),
            });
        }
        let expected = Rat::from_integer(Int::from(2 * (n as i64 + 1)));
        let lsum = weigh(&self.lambda);
        if lsum != expected {
            return Err(InvariantError::BadLambdaSum {
                expected: format_rational(&expected),
                got: format_rational(&lsum),
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.kappa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappa.is_empty()
    }
}

/// Exact per-stratum invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumInvariants {
    pub flat: usize,
    /// Total isotropy weight of the radial circle action: the codimension.
    pub weight: usize,
    pub kappa_v: Rat,
    pub lambda_v: Rat,
    /// `(lambda_v - 2 weight) / lambda_v`.
    pub ratio: Rat,
}

/// Per-flat invariants for a lattice and coefficient system, in flat order.
pub fn stratum_invariants(
    lat: &IntersectionLattice,
    coeffs: &CoefficientSystem,
) -> Vec<StratumInvariants> {
    lat.flats
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let kappa_v: Rat = f.support.iter().map(|&j| coeffs.kappa[j].clone()).sum();
            let lambda_v: Rat = f.support.iter().map(|&j| coeffs.lambda[j].clone()).sum();
            let two_w = Rat::from_integer(Int::from(2 * f.codim as i64));
            let ratio = (lambda_v.clone() - two_w) / lambda_v.clone();
            StratumInvariants {
                flat: i,
                weight: f.codim,
                kappa_v,
                lambda_v,
                ratio,
            }
        })
        .collect()
}

/// Maximum of `(lambda_v - 2 w_v) / lambda_v` over all flats, with the
/// attaining flat; ties broken by smallest `(codim, support)`, which is the
/// flat order.
pub fn sigma_crit(
    lat: &IntersectionLattice,
    coeffs: &CoefficientSystem,
) -> Result<(Rat, usize), InvariantError> {
    let strata = stratum_invariants(lat, coeffs);
    let best = strata
        .iter()
        .max_by(|a, b| a.ratio.cmp(&b.ratio).then(b.flat.cmp(&a.flat)))
        .ok_or(InvariantError::EmptyLattice)?;
    Ok((best.ratio.clone(), best.flat))
}

/// Least positive integer combination of the `kappa_i`: the rational gcd.
pub fn kappa_min(coeffs: &CoefficientSystem) -> Rat {
    rational_gcd(&coeffs.kappa)
}

/// Crossing ratio `m(D)`: minimum over flats of `codim / |support|`.
///
/// Minimizing over flats equals minimizing over all index subsets: replacing
/// a subset by the saturated support of its flat keeps the codimension and
/// can only grow the subset.
pub fn m_of_d(lat: &IntersectionLattice) -> Result<Rat, InvariantError> {
    lat.flats
        .iter()
        .map(|f| Rat::new(Int::from(f.codim as i64), Int::from(f.support.len() as i64)))
        .min()
        .ok_or(InvariantError::EmptyLattice)
}

/// Width bound for the sublevel region: requires `sigma_crit <= 0` and
/// `sigma` in `[0, 1)`; `None` when the criterion hypothesis fails.
///
/// Value: `omega_a - 2 sigma n_chern - (1 - sigma) * ceil(1 - sc * n_chern) * kmin`,
/// with the exact rational ceiling.
pub fn width_bound_sublevel(
    sigma: &Rat,
    omega_a: &Rat,
    n_chern: u32,
    sc: &Rat,
    kmin: &Rat,
) -> Result<Option<Rat>, InvariantError> {
    if sigma.is_negative() || *sigma >= Rat::one() {
        return Err(InvariantError::BadSigma {
            got: format_rational(sigma),
        });
    }
    if sc.is_positive() {
        return Ok(None);
    }
    let n_chern = Rat::from_integer(Int::from(n_chern));
    let count = ceil_int(&(Rat::one() - sc * n_chern.clone()));
    let bound = omega_a.clone()
        - Rat::from_integer(Int::from(2)) * sigma * n_chern
        - (Rat::one() - sigma) * Rat::from_integer(count) * kmin;
    Ok(Some(bound))
}

/// Width bound for the whole skeleton complement in CP^n:
/// `1 - ceil(1 - sc * (n+1)) * kmin`; `None` when `sc > 0`.
pub fn width_bound_projective(n: usize, sc: &Rat, kmin: &Rat) -> Option<Rat> {
    width_bound_sublevel(&Rat::zero(), &Rat::one(), n as u32 + 1, sc, kmin)
        .expect("sigma = 0 is always admissible")
}

/// One special-case closed form and its agreement with the general bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub id: &'static str,
    pub applicable: bool,
    /// Why the hypotheses fail, when they do.
    pub note: Option<String>,
    pub closed_form: Option<Rat>,
    pub theorem_bound: Option<Rat>,
    pub matched: Option<bool>,
}

/// Assemble one cross-check row; `matched` compares the two values exactly.
pub fn corollary_entry(
    id: &'static str,
    closed_form: Option<Rat>,
    theorem: Option<Rat>,
    note: Option<String>,
) -> CorollaryCheck {
    let matched = match (&closed_form, &theorem) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    CorollaryCheck {
        id,
        applicable: closed_form.is_some(),
        note,
        closed_form,
        theorem_bound: theorem,
        matched,
    }
}

/// Evaluate the applicable special-case bounds for an arrangement and
/// assert each against the general bound computed from the same data.
/// The closed forms assume uniform multiplicities.
pub fn corollary_bounds(
    lat: &IntersectionLattice,
    coeffs: &CoefficientSystem,
) -> Result<Vec<CorollaryCheck>, InvariantError> {
    let n = lat.n;
    let l = lat.top().len();
    let uniform = coeffs.kappa.windows(2).all(|w| w[0] == w[1])
        && coeffs.lambda.windows(2).all(|w| w[0] == w[1]);
    let (sc, _) = sigma_crit(lat, coeffs)?;
    let kmin = kappa_min(coeffs);
    let theorem = width_bound_projective(n, &sc, &kmin);
    let m = m_of_d(lat)?;
    let rat_u = |a: i64, b: i64| Rat::new(Int::from(a), Int::from(b));

    let mut out = Vec::new();

    if !uniform {
        let note = Some("closed forms require uniform multiplicities".to_string());
        for id in [
            "generic_hyperplanes",
            "degenerate_hyperplanes",
            "line_configurations",
        ] {
            out.push(corollary_entry(id, None, theorem.clone(), note.clone()));
        }
        return Ok(out);
    }

    // general position: every flat lies on exactly codim-many hyperplanes
    let normal_crossings = lat.flats.iter().all(|f| f.support.len() == f.codim);
    out.push(if !normal_crossings {
        corollary_entry(
            "generic_hyperplanes",
            None,
            theorem.clone(),
            Some("arrangement is not in general position".to_string()),
        )
    } else if l < n + 1 {
        corollary_entry(
            "generic_hyperplanes",
            None,
            theorem.clone(),
            Some(format!("needs l >= n+1 hyperplanes, got l = {l}")),
        )
    } else {
        corollary_entry(
            "generic_hyperplanes",
            Some(rat_u(n as i64, l as i64)),
            theorem.clone(),
            None,
        )
    });

    // arbitrary arrangement: n/l + 1 - ceil(l * m(D)) / l, needs l m(D) >= n+1
    let lm = Rat::from_integer(Int::from(l as i64)) * m.clone();
    out.push(if lm < Rat::from_integer(Int::from(n as i64 + 1)) {
        corollary_entry(
            "degenerate_hyperplanes",
            None,
            theorem.clone(),
            Some(format!(
                "needs l * m(D) >= n+1, got {}",
                format_rational(&lm)
            )),
        )
    } else {
        let value = rat_u(n as i64, l as i64) + Rat::one()
            - Rat::from_integer(ceil_int(&lm)) / Rat::from_integer(Int::from(l as i64));
        corollary_entry("degenerate_hyperplanes", Some(value), theorem.clone(), None)
    });

    // line configurations in the plane: k = largest number of concurrent lines
    let max_point = lat
        .flats
        .iter()
        .filter(|f| f.codim == 2)
        .map(|f| f.support.len())
        .max();
    out.push(match (n, max_point) {
        (2, Some(k)) if 2 * l >= 3 * k => {
            let value = rat_u(2, l as i64) + Rat::one()
                - Rat::from_integer(ceil_int(&rat_u(2 * l as i64, k as i64)))
                    / Rat::from_integer(Int::from(l as i64));
            corollary_entry("line_configurations", Some(value), theorem.clone(), None)
        }
        (2, Some(k)) => corollary_entry(
            "line_configurations",
            None,
            theorem.clone(),
            Some(format!("needs 2l >= 3k, got l = {l}, k = {k}")),
        ),
        (2, None) => corollary_entry(
            "line_configurations",
            None,
            theorem.clone(),
            Some("no point flats".to_string()),
        ),
        _ => corollary_entry(
            "line_configurations",
            None,
            theorem.clone(),
            Some("only applies in CP^2".to_string()),
        ),
    });

    Ok(out)
}

/// Candidate ball-embedding lower bound from a double point of two lines:
/// `min(area(D_1), area(D_2), kappa_{v_1}, kappa_{v_2})`.
///
/// The flat must be a codimension-two flat supported on exactly two
/// hyperplanes of a plane arrangement (orthogonal-crossings local model).
/// This is a candidate only: it is reported with a caveat and tightness is
/// not asserted.
pub fn pair_embedding_lower_bound(
    lat: &IntersectionLattice,
    coeffs: &CoefficientSystem,
    flat: usize,
) -> Result<Rat, InvariantError> {
    if lat.n != 2 {
        return Err(InvariantError::NotPlane { n: lat.n });
    }
    let f = &lat.flats[flat];
    if f.codim != 2 || f.support.len() != 2 {
        return Err(InvariantError::NotDoublePoint {
            index: flat,
            codim: f.codim,
            support: f.support.len(),
        });
    }
    let strata = stratum_invariants(lat, coeffs);
    // the two line strata through the point; lines here have degree one, so
    // each has symplectic area one
    let mut best = Rat::one();
    for (i, line) in lat.flats.iter().enumerate() {
        if line.codim == 1
            && f.support.contains(&line.support[0])
            && f.leq(line)
            && strata[i].kappa_v < best
        {
            best = strata[i].kappa_v.clone();
        }
    }
    Ok(best)
}
