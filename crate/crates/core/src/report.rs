//! The barrier report: verdict, bounds, cross-checks, serialization.
//!
//! The verdict is deliberately two-valued. The criterion is sufficient
//! only, so the answer is `Barrier` exactly when `sigma_crit <= 0` (the
//! width bound is then automatically below the width of CP^n itself) and
//! `Inconclusive` otherwise — never "not a barrier".
//!
//! JSON output renders every rational as a `"p/q"` string so downstream
//! consumers cannot corrupt exact values through floating point.

use num_traits::{One, Signed};
use serde_json::json;
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError};
use crate::invariants::{self, kappa_min, m_of_d, sigma_crit, CoefficientSystem, InvariantError};
use crate::lattice::{build_lattice, IntersectionLattice};
use crate::lp::feasible_lambda;
use crate::rational::format_rational;
use crate::Rat;

pub use crate::invariants::{corollary_entry, CorollaryCheck};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Barrier,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Barrier => "Barrier",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// A width bound, or the marker that the criterion hypothesis failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WidthBound {
    Bound(Rat),
    NotApplicable,
}

impl WidthBound {
    pub fn as_option(&self) -> Option<&Rat> {
        match self {
            WidthBound::Bound(b) => Some(b),
            WidthBound::NotApplicable => None,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            WidthBound::Bound(b) => json!(format_rational(b)),
            WidthBound::NotApplicable => json!("not applicable"),
        }
    }

    fn render(&self) -> String {
        match self {
            WidthBound::Bound(b) => format_rational(b),
            WidthBound::NotApplicable => "not applicable".to_string(),
        }
    }
}

/// The flat (or declared stratum) attaining `sigma_crit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFlat {
    pub support: Vec<usize>,
    pub codim: usize,
}

/// Outcome of the optional search for an admissible `lambda` lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaSearch {
    NotRequested,
    /// The canonical lift already satisfies the criterion.
    AlreadyAdmissible,
    Found(Vec<Rat>),
    Infeasible,
}

/// Candidate ball-embedding lower bound from a double point (see
/// [`invariants::pair_embedding_lower_bound`]). Reported with a caveat: the
/// value is the orthogonal-crossings minimum formula, and no tightness is
/// claimed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCandidate {
    pub flat_support: Vec<usize>,
    pub value: Rat,
    pub caveat: &'static str,
}

const EMBEDDING_CAVEAT: &str = "candidate from the two-line crossing model; not certified tight";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublevelBound {
    pub sigma: Rat,
    pub bound: WidthBound,
}

/// Everything the analysis computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarrierReport {
    pub n: usize,
    /// Number of divisor components.
    pub components: usize,
    /// Number of flats (or declared strata).
    pub flats: usize,
    pub sigma_crit: Rat,
    pub witness: WitnessFlat,
    pub kappa_min: Rat,
    pub minimal_chern: u32,
    pub m_of_d: Rat,
    pub width_bound: WidthBound,
    pub verdict: Verdict,
    pub corollaries: Vec<CorollaryCheck>,
    pub kappa: Vec<Rat>,
    pub lambda: Vec<Rat>,
    pub lambda_search: LambdaSearch,
    pub sublevel: Option<SublevelBound>,
    pub embedding_lower_bound: Option<EmbeddingCandidate>,
}

/// Barrier verdict for a lattice with chosen coefficients.
pub fn verdict(
    lat: &IntersectionLattice,
    coeffs: &CoefficientSystem,
) -> Result<BarrierReport, InvariantError> {
    let (sc, witness_idx) = sigma_crit(lat, coeffs)?;
    let kmin = kappa_min(coeffs);
    let m = m_of_d(lat)?;
    let bound = invariants::width_bound_projective(lat.n, &sc, &kmin)
        .map(WidthBound::Bound)
        .unwrap_or(WidthBound::NotApplicable);
    let verdict = if sc.is_positive() {
        Verdict::Inconclusive
    } else {
        Verdict::Barrier
    };
    // the criterion implies a bound strictly below the ambient width 1
    if let WidthBound::Bound(b) = &bound {
        debug_assert!(*b < Rat::one());
        debug_assert_eq!(verdict, Verdict::Barrier);
    }
    let corollaries = invariants::corollary_bounds(lat, coeffs)?;
    let witness = &lat.flats[witness_idx];
    Ok(BarrierReport {
        n: lat.n,
        components: lat.top().len(),
        flats: lat.len(),
        sigma_crit: sc,
        witness: WitnessFlat {
            support: witness.support.clone(),
            codim: witness.codim,
        },
        kappa_min: kmin,
        minimal_chern: lat.n as u32 + 1,
        m_of_d: m,
        width_bound: bound,
        verdict,
        corollaries,
        kappa: coeffs.kappa.clone(),
        lambda: coeffs.lambda.clone(),
        lambda_search: LambdaSearch::NotRequested,
        sublevel: None,
        embedding_lower_bound: None,
    })
}

/// Knobs for [`analyze_arrangement`].
#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    /// Replace the divisor multiplicities before normalizing.
    pub multiplicities: Option<Vec<Rat>>,
    /// Explicit symplectic lift (validated: positive, sums to one).
    pub kappa: Option<Vec<Rat>>,
    /// Explicit Chern lift (validated: positive, sums to `2(n+1)`).
    pub lambda: Option<Vec<Rat>>,
    /// When the canonical lift fails the criterion, search the coefficient
    /// cone for an admissible one by exact LP.
    pub optimize_lambda: bool,
    /// Also bound the sublevel region `{rho > sigma}`.
    pub sigma: Option<Rat>,
}

/// Full analysis pipeline for an arrangement.
pub fn analyze_arrangement(
    arr: &Arrangement,
    opts: &AnalyzeOptions,
) -> Result<BarrierReport, AnalyzeError> {
    let arr = match &opts.multiplicities {
        Some(d) => arr.clone().with_multiplicities(d.clone())?,
        None => arr.clone(),
    };
    let lat = build_lattice(&arr);
    let base = CoefficientSystem::normalize_arrangement(&arr)?;
    let coeffs = match (&opts.kappa, &opts.lambda) {
        (None, None) => base,
        (k, l) => CoefficientSystem::explicit(
            arr.n,
            k.clone().unwrap_or_else(|| base.kappa.clone()),
            l.clone().unwrap_or_else(|| base.lambda.clone()),
            base.degrees.clone(),
        )?,
    };

    let (sc, _) = sigma_crit(&lat, &coeffs)?;
    let (coeffs, search) = if !opts.optimize_lambda {
        (coeffs, LambdaSearch::NotRequested)
    } else if !sc.is_positive() {
        (coeffs, LambdaSearch::AlreadyAdmissible)
    } else {
        match feasible_lambda(&lat, arr.n) {
            Some(lambda) => {
                let upgraded = coeffs.with_lambda(arr.n, lambda.clone())?;
                (upgraded, LambdaSearch::Found(lambda))
            }
            None => (coeffs, LambdaSearch::Infeasible),
        }
    };

    let mut report = verdict(&lat, &coeffs)?;
    report.lambda_search = search;

    if let Some(sigma) = &opts.sigma {
        let bound = invariants::width_bound_sublevel(
            sigma,
            &Rat::one(),
            arr.n as u32 + 1,
            &report.sigma_crit,
            &report.kappa_min,
        )?
        .map(WidthBound::Bound)
        .unwrap_or(WidthBound::NotApplicable);
        report.sublevel = Some(SublevelBound {
            sigma: sigma.clone(),
            bound,
        });
    }

    if arr.n == 2 {
        // best candidate over all double points of two lines
        let mut best: Option<(usize, Rat)> = None;
        for i in 0..lat.len() {
            let f = &lat.flats[i];
            if f.codim == 2 && f.support.len() == 2 {
                let v = invariants::pair_embedding_lower_bound(&lat, &coeffs, i)?;
                if best.as_ref().is_none_or(|(_, b)| v > *b) {
                    best = Some((i, v));
                }
            }
        }
        if let Some((i, value)) = best {
            report.embedding_lower_bound = Some(EmbeddingCandidate {
                flat_support: lat.flats[i].support.clone(),
                value,
                caveat: EMBEDDING_CAVEAT,
            });
        }
    }

    Ok(report)
}

impl BarrierReport {
    pub fn to_json(&self) -> serde_json::Value {
        let rats = |v: &[Rat]| -> Vec<String> { v.iter().map(format_rational).collect() };
        json!({
            "n": self.n,
            "components": self.components,
            "flats": self.flats,
            "sigma_crit": format_rational(&self.sigma_crit),
            "witness_flat": {
                "support": self.witness.support,
                "codim": self.witness.codim,
            },
            "kappa_min": format_rational(&self.kappa_min),
            "minimal_chern": self.minimal_chern,
            "m_of_d": format_rational(&self.m_of_d),
            "width_bound": self.width_bound.to_json(),
            "verdict": self.verdict.as_str(),
            "corollaries": self.corollaries.iter().map(|c| json!({
                "id": c.id,
                "applicable": c.applicable,
                "note": c.note,
                "closed_form": c.closed_form.as_ref().map(format_rational),
                "theorem_bound": c.theorem_bound.as_ref().map(format_rational),
                "matched": c.matched,
            })).collect::<Vec<_>>(),
            "kappa": rats(&self.kappa),
            "lambda": rats(&self.lambda),
            "lambda_search": match &self.lambda_search {
                LambdaSearch::NotRequested => json!("not requested"),
                LambdaSearch::AlreadyAdmissible => json!("already admissible"),
                LambdaSearch::Found(l) => json!({"found": rats(l)}),
                LambdaSearch::Infeasible => json!("infeasible"),
            },
            "sublevel": self.sublevel.as_ref().map(|s| json!({
                "sigma": format_rational(&s.sigma),
                "bound": s.bound.to_json(),
            })),
            "embedding_lower_bound": self.embedding_lower_bound.as_ref().map(|e| json!({
                "flat_support": e.flat_support,
                "value": format_rational(&e.value),
                "caveat": e.caveat,
            })),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report is valid JSON")
    }

    /// Plain-text table; `color` wraps the verdict in ANSI color.
    pub fn render_text(&self, color: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "Barrier analysis: CP^{}, {} component(s), {} flat(s)\n",
            self.n, self.components, self.flats
        ));
        let sup: Vec<String> = self.witness.support.iter().map(|s| s.to_string()).collect();
        out.push_str(&format!(
            "  sigma_crit    = {}  (witness {{{}}}, codim {})\n",
            format_rational(&self.sigma_crit),
            sup.join(","),
            self.witness.codim
        ));
        out.push_str(&format!(
            "  kappa_min     = {}\n",
            format_rational(&self.kappa_min)
        ));
        out.push_str(&format!(
            "  m(D)          = {}\n",
            format_rational(&self.m_of_d)
        ));
        out.push_str(&format!("  minimal Chern = {}\n", self.minimal_chern));
        out.push_str(&format!(
            "  width bound   = {}\n",
            self.width_bound.render()
        ));
        let verdict = match (self.verdict, color) {
            (Verdict::Barrier, true) => "\x1b[32mBarrier\x1b[0m".to_string(),
            (Verdict::Inconclusive, true) => "\x1b[33mInconclusive\x1b[0m".to_string(),
            (v, false) => v.as_str().to_string(),
        };
        out.push_str(&format!("  verdict       = {verdict}\n"));
        match &self.lambda_search {
            LambdaSearch::NotRequested => {}
            LambdaSearch::AlreadyAdmissible => {
                out.push_str("  lambda search : canonical lift already admissible\n");
            }
            LambdaSearch::Found(l) => {
                let ls: Vec<String> = l.iter().map(format_rational).collect();
                out.push_str(&format!("  lambda search : found ({})\n", ls.join(", ")));
            }
            LambdaSearch::Infeasible => {
                out.push_str(
                    "  lambda search : infeasible: no positive lift satisfies the criterion\n",
                );
            }
        }
        if let Some(s) = &self.sublevel {
            out.push_str(&format!(
                "  sublevel {{rho > {}}} bound = {}\n",
                format_rational(&s.sigma),
                s.bound.render()
            ));
        }
        if let Some(e) = &self.embedding_lower_bound {
            let sup: Vec<String> = e.flat_support.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "  embedding lower bound candidate = {}  at double point {{{}}} ({})\n",
                format_rational(&e.value),
                sup.join(","),
                e.caveat
            ));
        }
        out.push_str("Corollary cross-checks:\n");
        for c in &self.corollaries {
            match (&c.closed_form, &c.theorem_bound, c.matched) {
                (Some(cf), Some(tb), Some(m)) => {
                    out.push_str(&format!(
                        "  {:>24}: closed form {} vs theorem {}  {}\n",
                        c.id,
                        format_rational(cf),
                        format_rational(tb),
                        if m { "MATCH" } else { "MISMATCH" }
                    ));
                }
                _ => {
                    out.push_str(&format!(
                        "  {:>24}: not applicable ({})\n",
                        c.id,
                        c.note.as_deref().unwrap_or("hypotheses not met")
                    ));
                }
            }
        }
        out
    }
}
