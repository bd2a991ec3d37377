//! Brute-force oracles for the test suites.
//!
//! Everything here is deliberately independent of the library's algorithms:
//! elimination is re-implemented from scratch, the lattice oracle
//! enumerates all index subsets, the coefficient-cone oracle runs
//! Fourier-Motzkin elimination, and the minimal-action oracle scans a box
//! of integer combinations. The oracles share only the *types* of the
//! library, never its computational paths.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use barrier_gauge_core::arrangement::Arrangement;
use barrier_gauge_core::{Int, Rat};

/// Row-reduce in place (reduced echelon, unit pivots) and return the rank.
/// Written independently of the library's elimination.
#[allow(clippy::needless_range_loop)]
pub fn rref_oracle(rows: &mut Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rat::one() / rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..ncols {
                    let v = rows[r][c].clone() - f.clone() * rows[rank][c].clone();
                    rows[r][c] = v;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

pub fn rank_oracle(rows: &[Vec<Rat>]) -> usize {
    let mut copy = rows.to_vec();
    rref_oracle(&mut copy)
}

/// Exhaustive lattice: for every nonempty index subset, the echelon basis
/// of the spanned covectors (skipping full rank), keyed canonically, with
/// the saturated support. Returns `(support, codim)` pairs sorted by key.
pub fn lattice_oracle(arr: &Arrangement) -> Vec<(Vec<usize>, usize)> {
    let l = arr.len();
    assert!(l <= 16, "subset enumeration is for small arrangements");
    let normals: Vec<Vec<Rat>> = arr.hyperplanes.iter().map(|h| h.normal.clone()).collect();
    let mut seen: BTreeMap<Vec<Vec<Rat>>, (Vec<usize>, usize)> = BTreeMap::new();
    for mask in 1u32..(1 << l) {
        let mut rows: Vec<Vec<Rat>> = (0..l)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| normals[i].clone())
            .collect();
        let rank = rref_oracle(&mut rows);
        if rank == arr.n + 1 {
            continue;
        }
        if seen.contains_key(&rows) {
            continue;
        }
        let support: Vec<usize> = (0..l)
            .filter(|&i| {
                let mut test = rows.clone();
                test.push(normals[i].clone());
                rank_oracle(&test) == rank
            })
            .collect();
        seen.insert(rows, (support, rank));
    }
    let mut out: Vec<(Vec<usize>, usize)> = seen.into_values().collect();
    out.sort();
    out
}

/// `m(D)` directly from the definition: minimum of `codim / |I|` over all
/// nonempty index subsets whose intersection is a nonzero subspace (the
/// same convention as the stratification, which contains no zero stratum).
pub fn m_of_d_oracle(arr: &Arrangement) -> Rat {
    let l = arr.len();
    assert!(l <= 16);
    let normals: Vec<Vec<Rat>> = arr.hyperplanes.iter().map(|h| h.normal.clone()).collect();
    let mut best: Option<Rat> = None;
    for mask in 1u32..(1 << l) {
        let rows: Vec<Vec<Rat>> = (0..l)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| normals[i].clone())
            .collect();
        let size = rows.len() as i64;
        let rank = rank_oracle(&rows);
        if rank == arr.n + 1 {
            continue;
        }
        let ratio = Rat::new(Int::from(rank as i64), Int::from(size));
        if best.as_ref().is_none_or(|b| ratio < *b) {
            best = Some(ratio);
        }
    }
    best.expect("nonempty arrangement")
}

/// Minimum positive value of `sum(n_i kappa_i)` over integer boxes
/// `|n_i| <= bound`, or `None` if no combination in the box is positive.
pub fn kappa_min_box_oracle(kappa: &[Rat], bound: i64) -> Option<Rat> {
    let l = kappa.len();
    let mut best: Option<Rat> = None;
    let mut counters = vec![-bound; l];
    loop {
        let value: Rat = counters
            .iter()
            .zip(kappa)
            .map(|(&c, k)| Rat::from_integer(Int::from(c)) * k)
            .sum();
        if value.is_positive() && best.as_ref().is_none_or(|b| value < *b) {
            best = Some(value);
        }
        let mut i = 0;
        loop {
            if i == l {
                return best;
            }
            counters[i] += 1;
            if counters[i] <= bound {
                break;
            }
            counters[i] = -bound;
            i += 1;
        }
    }
}

/// A linear inequality `sum(coeffs_i x_i) <= rhs` (or `<` when strict).
#[derive(Debug, Clone)]
pub struct FmConstraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub strict: bool,
}

/// Fourier-Motzkin feasibility for a system of rational inequalities.
///
/// Eliminates variables one at a time; combining a strict with a non-strict
/// inequality yields a strict one. Feasibility of the final variable-free
/// system decides the original one exactly.
pub fn fourier_motzkin_feasible(mut system: Vec<FmConstraint>, nvars: usize) -> bool {
    for var in (0..nvars).rev() {
        let mut lower = Vec::new(); // coeff < 0: x >= ...
        let mut upper = Vec::new(); // coeff > 0: x <= ...
        let mut rest = Vec::new();
        for c in system {
            let a = c.coeffs[var].clone();
            if a.is_zero() {
                rest.push(c);
            } else if a.is_positive() {
                upper.push(c);
            } else {
                lower.push(c);
            }
        }
        for lo in &lower {
            for up in &upper {
                // scale so the eliminated coefficients cancel
                let a_lo = lo.coeffs[var].clone(); // negative
                let a_up = up.coeffs[var].clone(); // positive
                let coeffs: Vec<Rat> = (0..var)
                    .map(|i| {
                        lo.coeffs[i].clone() * a_up.clone() - up.coeffs[i].clone() * a_lo.clone()
                    })
                    .collect();
                let rhs = lo.rhs.clone() * a_up.clone() - up.rhs.clone() * a_lo.clone();
                rest.push(FmConstraint {
                    coeffs,
                    rhs,
                    strict: lo.strict || up.strict,
                });
            }
        }
        for c in rest.iter_mut() {
            c.coeffs.truncate(var);
        }
        system = rest;
    }
    system.iter().all(|c| {
        if c.strict {
            c.rhs.is_positive()
        } else {
            !c.rhs.is_negative()
        }
    })
}

/// Oracle for the coefficient-cone search: does a strictly positive
/// `lambda` with `sum = 2(n+1)` and all flat constraints exist?
///
/// The equality is eliminated by substitution and the rest goes through
/// Fourier-Motzkin with strict positivity constraints.
pub fn feasible_lambda_oracle(
    flat_constraints: &[(Vec<usize>, usize)], // (support, codim) per flat
    l: usize,
    n: usize,
) -> bool {
    // variables x_0..x_{l-1}; sum = total via substituting
    // x_{l-1} = total - x_0 - ... - x_{l-2}
    let total = Rat::from_integer(Int::from(2 * (n as i64 + 1)));
    let mut system: Vec<FmConstraint> = Vec::new();
    let reduced = |dense: &[Rat], rhs: Rat, strict: bool| -> FmConstraint {
        // substitute the last variable away
        let last = dense[l - 1].clone();
        let coeffs: Vec<Rat> = (0..l - 1)
            .map(|i| dense[i].clone() - last.clone())
            .collect();
        FmConstraint {
            coeffs,
            rhs: rhs - last * total.clone(),
            strict,
        }
    };
    // positivity: -x_i < 0
    for i in 0..l {
        let mut dense = vec![Rat::zero(); l];
        dense[i] = -Rat::one();
        system.push(reduced(&dense, Rat::zero(), true));
    }
    for (support, codim) in flat_constraints {
        let mut dense = vec![Rat::zero(); l];
        for &i in support {
            dense[i] = Rat::one();
        }
        system.push(reduced(
            &dense,
            Rat::from_integer(Int::from(2 * *codim as i64)),
            false,
        ));
    }
    if l == 1 {
        // no free variables: check directly
        return system.iter().all(|c| {
            if c.strict {
                c.rhs.is_positive()
            } else {
                !c.rhs.is_negative()
            }
        });
    }
    fourier_motzkin_feasible(system, l - 1)
}

/// Seeded positive rational with denominator dividing 12 and value in
/// `(0, 1]` — the corpus distribution for the minimal-action oracle.
pub fn random_unit_rational<R: Rng>(rng: &mut R) -> Rat {
    const DENOMS: [i64; 6] = [1, 2, 3, 4, 6, 12];
    let q = DENOMS[rng.gen_range(0..DENOMS.len())];
    let p = rng.gen_range(1..=q);
    Rat::new(Int::from(p), Int::from(q))
}
