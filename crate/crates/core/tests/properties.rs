//! Property tests: structural invariants of the lattice and the exact
//! algebraic identities between the bound formulas.

use proptest::prelude::*;

use barrier_gauge_core::invariants::{
    kappa_min, m_of_d, sigma_crit, width_bound_projective, width_bound_sublevel, CoefficientSystem,
};
use barrier_gauge_core::lattice::build_lattice;
use barrier_gauge_core::rational::rat;
use barrier_gauge_core::report::{analyze_arrangement, AnalyzeOptions};
use barrier_gauge_core::{named, parse_arrangement, Arrangement, Int, Rat};

fn all_builtins() -> Vec<Arrangement> {
    let mut out = vec![
        named::coordinate(1),
        named::coordinate(2),
        named::coordinate(3),
        named::braid(2),
        named::braid(3),
        named::figure1a(),
        named::figure1b(),
        named::figure1c(),
        named::figure1d(),
    ];
    for l in 3..=6 {
        out.push(named::generic(2, l));
    }
    for l in 4..=6 {
        out.push(named::generic(3, l));
    }
    out
}

#[test]
fn saturation_invariant() {
    // for i outside the support, adding the normal increases the rank
    for arr in all_builtins() {
        let lat = build_lattice(&arr);
        for f in &lat.flats {
            for i in 0..arr.len() {
                let mut stacked = f.basis.clone();
                stacked = stacked.stack(&barrier_gauge_core::linalg::Matrix::from_rows(vec![arr
                    .hyperplanes[i]
                    .normal
                    .clone()]));
                let grew = stacked.rank() == f.codim + 1;
                assert_eq!(grew, !f.support.contains(&i));
            }
        }
    }
}

#[test]
fn lattice_closed_under_nonzero_intersection() {
    for arr in all_builtins() {
        let lat = build_lattice(&arr);
        for a in &lat.flats {
            for b in &lat.flats {
                let stacked = a.basis.stack(&b.basis);
                let rank = stacked.rank();
                if rank == arr.n + 1 {
                    continue; // zero subspace
                }
                let mut ech = stacked.clone();
                ech.rref();
                assert!(
                    lat.flats.iter().any(|f| f.basis == ech),
                    "missing intersection flat"
                );
            }
        }
    }
}

#[test]
fn order_is_antisymmetric_transitive_and_support_compatible() {
    for arr in all_builtins() {
        let lat = build_lattice(&arr);
        for &(u, v) in &lat.order {
            assert!(!lat.order.contains(&(v, u)), "antisymmetry");
            // for saturated flats, subspace order is support reverse inclusion
            let sup_u = &lat.flats[u].support;
            let sup_v = &lat.flats[v].support;
            assert!(sup_v.iter().all(|i| sup_u.contains(i)));
        }
        for &(u, v) in &lat.order {
            for &(x, w) in &lat.order {
                if x == v {
                    assert!(lat.order.contains(&(u, w)), "transitivity");
                }
            }
        }
    }
}

#[test]
fn determinism_byte_identical() {
    for arr in all_builtins() {
        let a = serde_json::to_string(&build_lattice(&arr).to_json()).unwrap();
        let b = serde_json::to_string(&build_lattice(&arr.clone()).to_json()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn sigma_crit_matches_crossing_ratio_formula() {
    // with uniform coefficients, sigma_crit = (n+1 - l*m(D)) / (n+1), exactly
    for arr in all_builtins() {
        let lat = build_lattice(&arr);
        let coeffs = CoefficientSystem::normalize_arrangement(&arr).unwrap();
        let (sc, _) = sigma_crit(&lat, &coeffs).unwrap();
        let m = m_of_d(&lat).unwrap();
        let n1 = rat(arr.n as i64 + 1, 1);
        let expected = (n1.clone() - rat(arr.len() as i64, 1) * m) / n1;
        assert_eq!(sc, expected);
    }
}

#[test]
fn sigma_crit_strictly_decreasing_in_l_for_generic() {
    for n in 1..=4usize {
        let mut last: Option<Rat> = None;
        for l in (n + 1)..=(n + 6) {
            let arr = named::generic(n, l);
            let lat = build_lattice(&arr);
            let coeffs = CoefficientSystem::normalize_arrangement(&arr).unwrap();
            let (sc, _) = sigma_crit(&lat, &coeffs).unwrap();
            if let Some(prev) = last {
                assert!(sc < prev, "not decreasing at n={n}, l={l}");
            }
            last = Some(sc);
        }
    }
}

#[test]
fn scale_invariance_of_reports() {
    for arr in [named::generic(2, 4), named::braid(2), named::figure1b()] {
        let base = analyze_arrangement(&arr, &AnalyzeOptions::default()).unwrap();
        for scale in [rat(3, 1), rat(7, 2), rat(1, 5)] {
            let scaled = arr
                .clone()
                .with_multiplicities(
                    arr.multiplicities()
                        .iter()
                        .map(|d| d * scale.clone())
                        .collect(),
                )
                .unwrap();
            let report = analyze_arrangement(&scaled, &AnalyzeOptions::default()).unwrap();
            assert_eq!(report, base);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // exact identity between the two bound formulas on random admissible input
    #[test]
    fn projective_bound_is_sublevel_bound_at_zero(
        n in 1usize..6,
        sc_num in -60i64..=0,
        sc_den in 1i64..12,
        k_num in 1i64..12,
        k_den in 1i64..40,
    ) {
        let sc = rat(sc_num, 12 * sc_den);
        let kmin = rat(k_num, k_num + k_den); // in (0, 1)
        let a = width_bound_projective(n, &sc, &kmin);
        let b = width_bound_sublevel(&rat(0, 1), &rat(1, 1), n as u32 + 1, &sc, &kmin).unwrap();
        prop_assert_eq!(a, b);
    }

    // applying an invertible rational matrix to all covectors preserves the
    // lattice shape: same (codim, support-size) data and isomorphic order
    #[test]
    fn projective_invariance(
        seed_rows in proptest::collection::vec(-3i64..=3, 9),
        which in 0usize..4,
    ) {
        let arr = match which {
            0 => named::coordinate(2),
            1 => named::generic(2, 4),
            2 => named::figure1a(),
            _ => named::braid(2),
        };
        // build an invertible matrix L*U from the sampled entries
        let mut lower = vec![vec![rat(0,1); 3]; 3];
        let mut upper = vec![vec![rat(0,1); 3]; 3];
        let mut it = seed_rows.into_iter();
        for i in 0..3 {
            for j in 0..3 {
                let v = it.next().unwrap();
                if i == j {
                    lower[i][j] = rat(1, 1);
                    upper[i][j] = if v >= 0 { rat(1, 1) } else { rat(-1, 1) };
                } else if i > j {
                    lower[i][j] = rat(v, 1);
                } else {
                    upper[i][j] = rat(v, 1);
                }
            }
        }
        let mul = |m: &Vec<Vec<Rat>>, v: &Vec<Rat>| -> Vec<Rat> {
            // row covector times matrix: (v M)_j = sum_i v_i M_ij
            (0..3).map(|j| (0..3).map(|i| v[i].clone() * m[i][j].clone()).sum()).collect()
        };
        let transformed: Vec<(Vec<Rat>, Rat)> = arr
            .hyperplanes
            .iter()
            .map(|h| (mul(&upper, &mul(&lower, &h.normal)), h.multiplicity.clone()))
            .collect();
        let arr2 = Arrangement::new(arr.n, transformed).expect("invertible image is valid");
        let lat1 = build_lattice(&arr);
        let lat2 = build_lattice(&arr2);
        prop_assert_eq!(lat1.len(), lat2.len());
        // supports match one-to-one because hyperplane indices are preserved
        let mut sig1: Vec<(usize, Vec<usize>)> =
            lat1.flats.iter().map(|f| (f.codim, f.support.clone())).collect();
        let mut sig2: Vec<(usize, Vec<usize>)> =
            lat2.flats.iter().map(|f| (f.codim, f.support.clone())).collect();
        sig1.sort();
        sig2.sort();
        prop_assert_eq!(sig1, sig2);
        prop_assert_eq!(&lat1.order, &lat2.order);
    }

    // round trip: parse(serialize(a)) == a exactly
    #[test]
    fn arrangement_round_trip(
        n in 1usize..4,
        raw in proptest::collection::vec(
            (proptest::collection::vec((-6i64..=6, 1i64..=4), 5), 1i64..5, 1i64..4),
            1..6
        ),
    ) {
        let rows: Vec<(Vec<Rat>, Rat)> = raw
            .iter()
            .map(|(normal, dn, dd)| {
                (
                    normal.iter().take(n + 1).map(|&(p, q)| rat(p, q)).collect(),
                    rat(*dn, *dd),
                )
            })
            .collect();
        // only well-formed arrangements round-trip; invalid rows are the
        // parser's job and tested separately
        if let Ok(arr) = Arrangement::new(n, rows) {
            let text = arr.to_json_string();
            let again = parse_arrangement(&text).unwrap();
            prop_assert_eq!(arr, again);
        }
    }

    // kappa_min is positive and divides every kappa_i
    #[test]
    fn kappa_min_divides_all_entries(
        raw in proptest::collection::vec((1i64..=12, 1i64..=12), 1..6),
    ) {
        let kappa: Vec<Rat> = raw.iter().map(|&(p, q)| rat(p, q)).collect();
        let coeffs = CoefficientSystem {
            kappa: kappa.clone(),
            lambda: kappa.clone(),
            degrees: vec![1; kappa.len()],
        };
        let g = kappa_min(&coeffs);
        prop_assert!(g > rat(0, 1));
        for k in &kappa {
            let q = k / g.clone();
            prop_assert!(q.is_integer(), "{} not a multiple of {}", k, g);
        }
    }
}

#[test]
fn clifford_torus_boundary_case() {
    // l = n+1 coordinate hyperplanes: bound n/(n+1), verdict Barrier
    for n in 1..=6usize {
        let report =
            analyze_arrangement(&named::coordinate(n), &AnalyzeOptions::default()).unwrap();
        assert_eq!(report.sigma_crit, rat(0, 1));
        assert_eq!(
            report.width_bound,
            barrier_gauge_core::report::WidthBound::Bound(Rat::new(
                Int::from(n as i64),
                Int::from(n as i64 + 1)
            ))
        );
    }
}
