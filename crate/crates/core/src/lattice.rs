//! Intersection lattices of hyperplane arrangements.
//!
//! A flat is a nonzero subspace of C^{n+1} obtained by intersecting a
//! nonempty set of the lifted hyperplanes. We represent a flat by the
//! reduced row echelon basis of the *normal span* (the covectors vanishing
//! on it): the echelon form of a row span is unique, so it doubles as the
//! canonical deduplication key, independent of insertion order. The empty
//! index set and the zero subspace are excluded, so codimensions range
//! over `1..=n`.
//!
//! Construction sweeps level by level: each known flat is intersected with
//! each hyperplane not already in its support, the resulting span is
//! saturated (extended to *all* hyperplanes whose normals it spans) and
//! keyed by its echelon basis. This touches only realized flats and never
//! enumerates the `2^l` index subsets.
//!
//! The partial order is `u <= v` iff the subspace of `u` is contained in
//! the subspace of `v` (the smaller stratum lies in the closure of the
//! larger), decided by exact row-reduction of one normal span against the
//! other rather than by support comparison.

use std::collections::BTreeMap;

use crate::arrangement::Arrangement;
use crate::linalg::Matrix;
use crate::rational::format_rational;
use crate::Rat;

/// A flat: saturated support, complex codimension, canonical echelon basis
/// of the normal span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    /// Sorted indices of *all* hyperplanes containing the flat.
    pub support: Vec<usize>,
    /// Complex codimension = rank of the normal span, in `1..=n`.
    pub codim: usize,
    /// Reduced row echelon basis of the normal span (`codim` rows).
    pub basis: Matrix<Rat>,
}

impl Flat {
    /// `self <= other` in the stratification order: the subspace of `self`
    /// is contained in the subspace of `other`, i.e. the normal span of
    /// `self` contains the normal span of `other`.
    pub fn leq(&self, other: &Flat) -> bool {
        if self.codim < other.codim {
            return false;
        }
        (0..other.basis.rows()).all(|r| self.basis.spans(other.basis.row(r)))
    }
}

/// The poset of all flats of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    pub n: usize,
    /// Flats sorted by `(codim, support)`.
    pub flats: Vec<Flat>,
    /// All strict order pairs `(u, v)` with `flats[u] < flats[v]`.
    pub order: Vec<(usize, usize)>,
}

impl IntersectionLattice {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// Indices of the codimension-one flats (the hyperplanes themselves).
    pub fn top(&self) -> Vec<usize> {
        (0..self.flats.len())
            .filter(|&i| self.flats[i].codim == 1)
            .collect()
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        u == v || self.order.binary_search(&(u, v)).is_ok()
    }

    /// Covering relations `u <| v` of the Hasse diagram: strict pairs with
    /// no intermediate `u < w < v`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order
            .iter()
            .copied()
            .filter(|&(u, v)| {
                !self
                    .order
                    .iter()
                    .any(|&(a, w)| a == u && w != v && self.order.binary_search(&(w, v)).is_ok())
            })
            .collect()
    }

    /// JSON export: flats plus the full strict order relation.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "flats": self.flats.iter().map(|f| serde_json::json!({
                "support": f.support,
                "codim": f.codim,
                "basis": f.basis.row_vecs().iter().map(|row| {
                    row.iter().map(format_rational).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "order": self.order.iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>(),
        })
    }

    /// Hasse diagram as a DOT digraph, one edge per covering relation,
    /// nodes labeled by support and codimension.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, f) in self.flats.iter().enumerate() {
            let sup: Vec<String> = f.support.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!(
                "  f{} [label=\"{{{}}} codim {}\"];\n",
                i,
                sup.join(","),
                f.codim
            ));
        }
        for (u, v) in self.covers() {
            out.push_str(&format!("  f{u} -> f{v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Saturate a normal span: all hyperplane indices whose normal it spans.
fn saturate(basis: &Matrix<Rat>, arr: &Arrangement) -> Vec<usize> {
    (0..arr.len())
        .filter(|&i| basis.spans(&arr.hyperplanes[i].normal))
        .collect()
}

/// Build the intersection lattice by incremental intersection.
pub fn build_lattice(arr: &Arrangement) -> IntersectionLattice {
    let n = arr.n;
    // canonical key -> (support, codim); BTreeMap keeps iteration stable
    let mut flats: BTreeMap<Matrix<Rat>, (Vec<usize>, usize)> = BTreeMap::new();
    let mut frontier: Vec<Matrix<Rat>> = Vec::new();

    for h in &arr.hyperplanes {
        let mut basis = Matrix::from_rows(vec![h.normal.clone()]);
        let rank = basis.rref();
        debug_assert_eq!(rank, 1);
        let support = saturate(&basis, arr);
        if flats.insert(basis.clone(), (support, rank)).is_none() {
            frontier.push(basis);
        }
    }

    while !frontier.is_empty() {
        let mut next = Vec::new();
        for basis in frontier {
            let support = flats[&basis].0.clone();
            for i in 0..arr.len() {
                if support.binary_search(&i).is_ok() {
                    continue;
                }
                let mut extended =
                    basis.stack(&Matrix::from_rows(vec![arr.hyperplanes[i].normal.clone()]));
                let rank = extended.rref();
                if rank == n + 1 {
                    continue; // zero subspace: not a flat
                }
                if flats.contains_key(&extended) {
                    continue;
                }
                let support = saturate(&extended, arr);
                flats.insert(extended.clone(), (support, rank));
                next.push(extended);
            }
        }
        frontier = next;
    }

    let mut list: Vec<Flat> = flats
        .into_iter()
        .map(|(basis, (support, codim))| Flat {
            support,
            codim,
            basis,
        })
        .collect();
    list.sort_by(|a, b| (a.codim, &a.support).cmp(&(b.codim, &b.support)));

    // Support reverse-inclusion is necessary for subspace containment once
    // supports are saturated, so it prefilters the quadratic sweep; the
    // exact row reduction stays the decider.
    let superset = |big: &[usize], small: &[usize]| -> bool {
        small.iter().all(|x| big.binary_search(x).is_ok())
    };
    let mut order = Vec::new();
    for u in 0..list.len() {
        for v in 0..list.len() {
            if u != v
                && list[u].codim > list[v].codim
                && superset(&list[u].support, &list[v].support)
                && list[u].leq(&list[v])
            {
                order.push((u, v));
            }
        }
    }
    order.sort_unstable();

    IntersectionLattice {
        n,
        flats: list,
        order,
    }
}
