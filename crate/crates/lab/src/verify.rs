//! The verification suite: every analytic claim behind the invariants,
//! checked on a concrete arrangement with seeded sampling.
//!
//! Checks, per arrangement:
//!
//! 1. `structural_commutation` — exact rational certificate for every
//!    strictly nested pair of flats (no tolerance involved);
//! 2. `poisson_bracket` — sampled `|{r_u, r_v}|` for nested pairs;
//! 3. `flow_commutation` — the two flows applied in both orders agree;
//! 4. `action_period` — time-one flow is the identity;
//! 5. `moment_invariance` — the moment map is constant along its own flow;
//! 6. `stratum_preservation` — the flow of a smaller flat maps the larger
//!    stratum into itself (on exact rational points of that stratum);
//! 7. `isotropy_weight` — linearized weights equal codimensions;
//! 8. `hamiltonian_consistency` — the action generator satisfies the
//!    Hamiltonian equation for the moment map, including points driven
//!    close to the fixed stratum.
//!
//! Results aggregate deterministically (pairs in lattice order, points in
//! sample order) and serialize to a JSON report.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use barrier_gauge_core::arrangement::Arrangement;
use barrier_gauge_core::lattice::{build_lattice, IntersectionLattice};

use crate::action::{check_commuting_structural, rat_to_f64, CircleActionSpec};
use crate::chart::{hamiltonian_consistency, poisson_bracket};
use crate::projective::ProjectivePoint;
use crate::LabError;

/// Tolerances and sampling parameters; `Default` gives the documented
/// values.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Numeric zero for exact identities sampled in floating point.
    pub tol_exact: f64,
    /// Flow-commutation tolerance.
    pub tol_flow: f64,
    /// Poisson-bracket tolerance for nested pairs.
    pub tol_bracket: f64,
    /// Hamiltonian-equation residual tolerance (finite differences).
    pub tol_consistency: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 100,
            seed: 0,
            tol_exact: 1e-10,
            tol_flow: 1e-9,
            tol_bracket: 1e-5,
            tol_consistency: 1e-4,
        }
    }
}

impl VerifyConfig {
    /// Override every numeric tolerance at once (the CLI `--tol` knob).
    pub fn with_uniform_tolerance(mut self, tol: f64) -> Self {
        self.tol_exact = tol;
        self.tol_flow = tol;
        self.tol_bracket = tol;
        self.tol_consistency = tol;
        self
    }
}

/// One check on one subject.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub check: &'static str,
    /// Flat indices involved: one for per-flat checks, two for pairs.
    pub subject: Vec<usize>,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub n: usize,
    pub flats: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "flats": self.flats,
            "seed": self.seed,
            "all_pass": self.all_pass(),
            "checks": self.checks.iter().map(|c| json!({
                "check": c.check,
                "subject": c.subject,
                "samples": c.samples,
                "max_residual": c.max_residual,
                "tolerance": c.tolerance,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("valid JSON")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "Verification: CP^{}, {} flat(s), seed {}\n",
            self.n, self.flats, self.seed
        );
        for c in &self.checks {
            let subject: Vec<String> = c.subject.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "  {} {:<24} flats [{}]  max residual {:.3e} (tol {:.1e}, {} samples)\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.check,
                subject.join(","),
                c.max_residual,
                c.tolerance,
                c.samples,
            ));
        }
        out.push_str(if self.all_pass() {
            "all checks passed\n"
        } else {
            "SOME CHECKS FAILED\n"
        });
        out
    }
}

/// Strictly nested pairs `(u, v)` with `flats[u] < flats[v]`, lattice order.
fn nested_pairs(lat: &IntersectionLattice) -> Vec<(usize, usize)> {
    lat.order.clone()
}

/// An exact rational point on the subspace of flat `f`, from small seeded
/// integer coefficients; lands on the stratum (or deeper, which is fine for
/// membership-style checks).
#[allow(clippy::needless_range_loop)]
fn rational_point_on<R: Rng>(rng: &mut R, spec: &CircleActionSpec) -> ProjectivePoint {
    let basis = spec.subspace_basis();
    loop {
        let coeffs: Vec<i64> = (0..basis.rows()).map(|_| rng.gen_range(-3..=3)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut coords = vec![0.0; basis.cols()];
        for (r, &c) in coeffs.iter().enumerate() {
            for j in 0..basis.cols() {
                coords[j] += c as f64 * rat_to_f64(basis.at(r, j));
            }
        }
        if coords.iter().any(|&x| x.abs() > 1e-12) {
            return ProjectivePoint::from_real(&coords).expect("nonzero");
        }
    }
}

/// A random point kept away from both fixed strata of the action.
fn generic_point_for<R: Rng>(rng: &mut R, spec: &CircleActionSpec, n: usize) -> ProjectivePoint {
    loop {
        let p = ProjectivePoint::random(rng, n);
        let m = spec.moment_value(&p);
        if (0.05..=0.95).contains(&m) {
            return p;
        }
    }
}

/// A point with a prescribed small moment value: unit vector in the flat
/// plus a scaled normal contribution.
fn near_fixed_point<R: Rng>(
    rng: &mut R,
    spec: &CircleActionSpec,
    n: usize,
    moment: f64,
) -> ProjectivePoint {
    let on = rational_point_on(rng, spec);
    let off = ProjectivePoint::random(rng, n);
    // blend: on + eps * off, with eps chosen so the moment is about right
    let eps = moment.sqrt();
    let coords: Vec<Complex64> = on
        .coords()
        .iter()
        .zip(off.coords())
        .map(|(&a, &b)| a + eps * b)
        .collect();
    ProjectivePoint::new(coords).expect("nonzero")
}

/// Run the full suite on an arrangement.
pub fn run_verification(
    arr: &Arrangement,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, LabError> {
    let lat = build_lattice(arr);
    let n = arr.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let specs: Vec<CircleActionSpec> = lat
        .flats
        .iter()
        .map(|f| CircleActionSpec::from_flat(n, f))
        .collect::<Result<_, _>>()?;
    let mut checks = Vec::new();

    // 1. exact structural commutation per nested pair
    for &(u, v) in &nested_pairs(&lat) {
        let ok = check_commuting_structural(n, &lat.flats[u], &lat.flats[v]).is_ok();
        checks.push(CheckResult {
            check: "structural_commutation",
            subject: vec![u, v],
            samples: 0,
            max_residual: if ok { 0.0 } else { f64::INFINITY },
            tolerance: 0.0,
            pass: ok,
        });
    }

    // 2-3. sampled bracket and flow commutation per nested pair
    for &(u, v) in &nested_pairs(&lat) {
        let mut max_bracket = 0.0f64;
        let mut max_flow = 0.0f64;
        for _ in 0..cfg.samples {
            let p = ProjectivePoint::random(&mut rng, n);
            let b = poisson_bracket(&specs[u], &specs[v], &p)?.abs();
            max_bracket = max_bracket.max(b);
            let s = rng.gen_range(0.0..1.0);
            let t = rng.gen_range(0.0..1.0);
            let a = specs[v].apply(t, &specs[u].apply(s, &p));
            let bpt = specs[u].apply(s, &specs[v].apply(t, &p));
            max_flow = max_flow.max(a.distance(&bpt));
        }
        checks.push(CheckResult {
            check: "poisson_bracket",
            subject: vec![u, v],
            samples: cfg.samples,
            max_residual: max_bracket,
            tolerance: cfg.tol_bracket,
            pass: max_bracket < cfg.tol_bracket,
        });
        checks.push(CheckResult {
            check: "flow_commutation",
            subject: vec![u, v],
            samples: cfg.samples,
            max_residual: max_flow,
            tolerance: cfg.tol_flow,
            pass: max_flow < cfg.tol_flow,
        });
    }

    // 4-5. per flat: period one, moment invariance
    for (i, spec) in specs.iter().enumerate() {
        let mut max_period = 0.0f64;
        let mut max_drift = 0.0f64;
        for _ in 0..cfg.samples {
            let p = ProjectivePoint::random(&mut rng, n);
            max_period = max_period.max(spec.apply(1.0, &p).distance(&p));
            let t = rng.gen_range(0.0..1.0);
            let drift = (spec.moment_value(&spec.apply(t, &p)) - spec.moment_value(&p)).abs();
            max_drift = max_drift.max(drift);
        }
        checks.push(CheckResult {
            check: "action_period",
            subject: vec![i],
            samples: cfg.samples,
            max_residual: max_period,
            tolerance: cfg.tol_exact,
            pass: max_period < cfg.tol_exact,
        });
        checks.push(CheckResult {
            check: "moment_invariance",
            subject: vec![i],
            samples: cfg.samples,
            max_residual: max_drift,
            tolerance: cfg.tol_exact,
            pass: max_drift < cfg.tol_exact,
        });
    }

    // 6. stratum preservation: the flow of the smaller flat maps the larger
    // stratum to itself, tested on rational points of the larger stratum
    for &(u, v) in &nested_pairs(&lat) {
        let mut max_escape = 0.0f64;
        let samples = cfg.samples.clamp(5, 25);
        for _ in 0..samples {
            let p = rational_point_on(&mut rng, &specs[v]);
            let t = rng.gen_range(0.0..1.0);
            let moved = specs[u].apply(t, &p);
            // membership in D_v: the moment of v stays zero
            max_escape = max_escape.max(specs[v].moment_value(&moved));
        }
        checks.push(CheckResult {
            check: "stratum_preservation",
            subject: vec![u, v],
            samples,
            max_residual: max_escape,
            tolerance: cfg.tol_exact,
            pass: max_escape < cfg.tol_exact,
        });
    }

    // 7. isotropy weights equal codimensions on sampled fixed points
    for (i, spec) in specs.iter().enumerate() {
        let samples = cfg.samples.clamp(3, 10);
        let mut pass = true;
        for _ in 0..samples {
            let p = rational_point_on(&mut rng, spec);
            match spec.isotropy_weight(&p) {
                Ok(w) => pass &= w == lat.flats[i].codim,
                Err(_) => pass = false,
            }
        }
        checks.push(CheckResult {
            check: "isotropy_weight",
            subject: vec![i],
            samples,
            max_residual: if pass { 0.0 } else { f64::INFINITY },
            tolerance: 0.0,
            pass,
        });
    }

    // 8. Hamiltonian equation, generic points plus one near the stratum
    for (i, spec) in specs.iter().enumerate() {
        let samples = cfg.samples.clamp(5, 20);
        let mut max_res = 0.0f64;
        for k in 0..samples {
            let p = if k == 0 {
                near_fixed_point(&mut rng, spec, n, 1e-6)
            } else {
                generic_point_for(&mut rng, spec, n)
            };
            max_res = max_res.max(hamiltonian_consistency(spec, &p)?);
        }
        checks.push(CheckResult {
            check: "hamiltonian_consistency",
            subject: vec![i],
            samples,
            max_residual: max_res,
            tolerance: cfg.tol_consistency,
            pass: max_res < cfg.tol_consistency,
        });
    }

    Ok(VerificationReport {
        n,
        flats: lat.len(),
        seed: cfg.seed,
        checks,
    })
}
