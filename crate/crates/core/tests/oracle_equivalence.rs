//! Oracle equivalences: every fast path in the library against an
//! independent brute-force computation from the testkit.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use barrier_gauge_core::invariants::{kappa_min, m_of_d, CoefficientSystem};
use barrier_gauge_core::lattice::build_lattice;
use barrier_gauge_core::lp::feasible_lambda;
use barrier_gauge_core::rational::rat;
use barrier_gauge_core::{named, Arrangement, Rat};
use barrier_gauge_testkit as oracle;

/// Built-in arrangements small enough for subset enumeration.
fn small_builtins() -> Vec<(String, Arrangement)> {
    let mut out: Vec<(String, Arrangement)> = Vec::new();
    for n in 1..=3usize {
        out.push((format!("coordinate({n})"), named::coordinate(n)));
    }
    for l in 2..=5 {
        out.push((format!("generic(1,{l})"), named::generic(1, l)));
    }
    for l in 3..=6 {
        out.push((format!("generic(2,{l})"), named::generic(2, l)));
    }
    for l in 4..=7 {
        out.push((format!("generic(3,{l})"), named::generic(3, l)));
    }
    out.push(("braid(2)".into(), named::braid(2)));
    out.push(("braid(3)".into(), named::braid(3)));
    out.push(("figure1a".into(), named::figure1a()));
    out.push(("figure1b".into(), named::figure1b()));
    out.push(("figure1c".into(), named::figure1c()));
    out.push(("figure1d".into(), named::figure1d()));
    out
}

#[test]
fn lattice_equals_subset_enumeration() {
    for (name, arr) in small_builtins() {
        assert!(arr.len() <= 10, "{name} exceeds the oracle size budget");
        let lat = build_lattice(&arr);
        // saturated support determines the flat, so (support, codim) pairs
        // are a complete comparison key
        let mut fast: Vec<(Vec<usize>, usize)> = lat
            .flats
            .iter()
            .map(|f| (f.support.clone(), f.codim))
            .collect();
        fast.sort();
        let slow = oracle::lattice_oracle(&arr);
        assert_eq!(fast, slow, "lattice mismatch for {name}");
    }
}

#[test]
fn m_of_d_equals_subset_brute_force() {
    for (name, arr) in small_builtins() {
        let lat = build_lattice(&arr);
        let fast = m_of_d(&lat).unwrap();
        let slow = oracle::m_of_d_oracle(&arr);
        assert_eq!(fast, slow, "m(D) mismatch for {name}");
    }
}

#[test]
fn kappa_min_equals_bounded_brute_force() {
    // 20 seeded coefficient vectors with denominators dividing 12; inside
    // that family the gcd is always attained in the |n_i| <= 6 box
    let mut rng = ChaCha8Rng::seed_from_u64(20260811);
    for case in 0..20 {
        let l = rng.gen_range(2..=5);
        let kappa: Vec<Rat> = (0..l)
            .map(|_| oracle::random_unit_rational(&mut rng))
            .collect();
        let coeffs = CoefficientSystem {
            kappa: kappa.clone(),
            lambda: kappa.clone(),
            degrees: vec![1; l],
        };
        let fast = kappa_min(&coeffs);
        let slow = oracle::kappa_min_box_oracle(&kappa, 6)
            .expect("positive entries give positive combinations");
        assert_eq!(fast, slow, "kappa_min mismatch on case {case}: {kappa:?}");
    }
}

#[test]
fn feasible_lambda_matches_fourier_motzkin() {
    // all built-ins with at most four hyperplanes, plus a two-line case
    let mut cases: Vec<(String, Arrangement)> = small_builtins()
        .into_iter()
        .filter(|(_, a)| a.len() <= 4)
        .collect();
    cases.push(("generic(2,2)".into(), named::generic(2, 2)));
    for (name, arr) in cases {
        let lat = build_lattice(&arr);
        let flat_data: Vec<(Vec<usize>, usize)> = lat
            .flats
            .iter()
            .map(|f| (f.support.clone(), f.codim))
            .collect();
        let simplex = feasible_lambda(&lat, arr.n);
        let fm = oracle::feasible_lambda_oracle(&flat_data, arr.len(), arr.n);
        assert_eq!(simplex.is_some(), fm, "feasibility disagreement for {name}");
        // soundness of any witness: all constraints hold exactly
        if let Some(lambda) = simplex {
            let total: Rat = lambda.iter().cloned().sum();
            assert_eq!(total, rat(2 * (arr.n as i64 + 1), 1), "{name} sum");
            for l in &lambda {
                assert!(*l > rat(0, 1), "{name} positivity");
            }
            for f in &lat.flats {
                let sum: Rat = f.support.iter().map(|&i| lambda[i].clone()).sum();
                assert!(
                    sum <= rat(2 * f.codim as i64, 1),
                    "{name} flat constraint violated"
                );
            }
        }
    }
}

#[test]
fn feasible_lambda_on_medium_arrangements_is_sound() {
    // beyond the oracle budget, still check witness soundness and the
    // expected feasibility pattern
    for (name, arr, expect) in [
        ("generic(2,5)", named::generic(2, 5), true),
        ("braid(2)", named::braid(2), true),
        ("figure1c", named::figure1c(), true),
        ("figure1d", named::figure1d(), true),
    ] {
        let lat = build_lattice(&arr);
        let got = feasible_lambda(&lat, arr.n);
        assert_eq!(got.is_some(), expect, "{name}");
        if let Some(lambda) = got {
            for f in &lat.flats {
                let sum: Rat = f.support.iter().map(|&i| lambda[i].clone()).sum();
                assert!(sum <= rat(2 * f.codim as i64, 1));
            }
        }
    }
}
