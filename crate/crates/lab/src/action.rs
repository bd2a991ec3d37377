//! Circle actions attached to flats, their moment maps, and the exact
//! commutation certificate for nested pairs.
//!
//! A flat `v` (a linear subspace of C^{n+1} cut out by real-rational
//! covectors) splits `C^{n+1} = v + v^perp` orthogonally; the associated
//! action is the identity on `v` and multiplication by `e^{2 pi i t}` on
//! `v^perp`, with moment map `r_v([z]) = |P z|^2 / |z|^2` for the Hermitian
//! projection `P` onto `v^perp`. Because the covectors are real, `v^perp`
//! is exactly the rational row span of the covectors and every projection
//! used here is an exact rational matrix evaluated in floating point at the
//! last moment.
//!
//! For strictly nested flats `u < v` (as subspaces, `u` inside `v`) the
//! splitting `u + (u^perp ∩ v) + v^perp` is computed over the rationals and
//! certified: blocks pairwise orthogonal and jointly spanning. Both actions
//! are scalar on each block, so the certificate is an exact proof that the
//! two actions — and hence their moment maps — commute.

use num_complex::Complex64;
use num_traits::Zero;

use barrier_gauge_core::lattice::Flat;
use barrier_gauge_core::linalg::Matrix;
use barrier_gauge_core::Rat;

use crate::projective::ProjectivePoint;
use crate::LabError;

/// The action data of one flat: exact bases of the subspace and its
/// orthogonal complement, plus the cached float projection matrix.
#[derive(Debug, Clone)]
pub struct CircleActionSpec {
    n: usize,
    /// Exact basis of the flat subspace `v` (kernel of the covectors).
    subspace: Matrix<Rat>,
    /// Exact echelon basis of `v^perp` (the covector row span).
    perp: Matrix<Rat>,
    /// Complex codimension, `= perp.rows()`.
    weight: usize,
    /// Hermitian projection onto `v^perp`, exact rational, cached as floats.
    projector: Vec<Vec<f64>>,
}

impl CircleActionSpec {
    /// Build from the echelon covector basis of a flat's normal span.
    pub fn from_normal_span(n: usize, normal_span: &Matrix<Rat>) -> Result<Self, LabError> {
        let mut perp = normal_span.clone();
        let codim = perp.rref();
        if codim == 0 || codim > n {
            return Err(LabError::BadSplitting);
        }
        let subspace = Matrix::from_rows(perp.kernel_basis());
        // certificate: the two blocks are exactly orthogonal and span
        for r in 0..subspace.rows() {
            for s in 0..perp.rows() {
                if !dot(subspace.row(r), perp.row(s)).is_zero() {
                    return Err(LabError::BadSplitting);
                }
            }
        }
        if subspace.rows() + perp.rows() != n + 1 || subspace.stack(&perp).rank() != n + 1 {
            return Err(LabError::BadSplitting);
        }
        let projector = projection_matrix(&perp, n + 1);
        Ok(CircleActionSpec {
            n,
            subspace,
            perp,
            weight: codim,
            projector,
        })
    }

    pub fn from_flat(n: usize, flat: &Flat) -> Result<Self, LabError> {
        Self::from_normal_span(n, &flat.basis)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn codim(&self) -> usize {
        self.weight
    }

    pub fn subspace_basis(&self) -> &Matrix<Rat> {
        &self.subspace
    }

    pub fn perp_basis(&self) -> &Matrix<Rat> {
        &self.perp
    }

    fn project_perp(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.projector
            .iter()
            .map(|row| row.iter().zip(z).map(|(&p, &zj)| p * zj).sum::<Complex64>())
            .collect()
    }

    /// Moment map `r_v([z]) = |P z|^2 / |z|^2`, clamped into `[0, 1]`.
    ///
    /// Zero exactly on the fixed stratum `[v]`, one on the antipodal fixed
    /// stratum `[v^perp]`.
    pub fn moment_value(&self, p: &ProjectivePoint) -> f64 {
        let z = p.coords();
        let pz = self.project_perp(z);
        let num: f64 = pz.iter().map(|w| w.norm_sqr()).sum();
        let den: f64 = z.iter().map(|w| w.norm_sqr()).sum();
        (num / den).clamp(0.0, 1.0)
    }

    /// The time-`t` action: identity on `v`, `e^{2 pi i t}` on `v^perp`.
    pub fn apply(&self, t: f64, p: &ProjectivePoint) -> ProjectivePoint {
        let z = p.coords();
        let pz = self.project_perp(z);
        let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t);
        let coords: Vec<Complex64> = z
            .iter()
            .zip(&pz)
            .map(|(&zj, &pj)| (zj - pj) + phase * pj)
            .collect();
        ProjectivePoint::new(coords).expect("unitary action preserves the norm")
    }

    /// Total isotropy weight of the linearized action on the normal space
    /// to the fixed stratum at `p`.
    ///
    /// The point must lie on the fixed locus. The normal space is `v^perp`
    /// and the action rotates each of its complex lines with weight one
    /// relative to the fixed block, so the total is the exact rank of the
    /// covector span — recomputed here from the exact block structure, and
    /// equal to the flat's codimension.
    pub fn isotropy_weight(&self, p: &ProjectivePoint) -> Result<usize, LabError> {
        let m = self.moment_value(p);
        if m >= 1e-10 {
            return Err(LabError::NotOnFixedLocus(m));
        }
        // weight 1 per complex normal direction
        let per_block_weight = 1usize;
        Ok(per_block_weight * self.perp.rank())
    }
}

/// Exact rational dot product of real covectors.
fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() * y.clone())
        .fold(Rat::zero(), |acc, v| acc + v)
}

/// Hermitian projection onto the row span of real-rational `rows`, as an
/// exact rational matrix `B^T (B B^T)^{-1} B` converted to floats.
#[allow(clippy::needless_range_loop)]
fn projection_matrix(rows: &Matrix<Rat>, dim: usize) -> Vec<Vec<f64>> {
    let bt = rows.transpose();
    let gram = rows.mul_mat(&bt);
    // invert the Gram matrix column by column (it is invertible: rows are a
    // basis and the form is positive definite on real vectors)
    let k = gram.rows();
    let mut inv_cols: Vec<Vec<Rat>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut e = vec![Rat::zero(); k];
        e[j] = Rat::from_integer(1.into());
        inv_cols.push(gram.solve(&e).expect("Gram matrix is invertible"));
    }
    let mut p = vec![vec![Rat::zero(); dim]; dim];
    // P = B^T G^{-1} B
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = Rat::zero();
            for i in 0..k {
                for j in 0..k {
                    acc += bt.at(a, i).clone() * inv_cols[j][i].clone() * rows.at(j, b).clone();
                }
            }
            p[a][b] = acc;
        }
    }
    p.into_iter()
        .map(|row| row.into_iter().map(|r| rat_to_f64(&r)).collect())
        .collect()
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("projection entries are small rationals")
}

/// The certified three-block orthogonal splitting for nested flats.
#[derive(Debug, Clone)]
pub struct Splitting {
    /// Basis of the smaller subspace `u`.
    pub inner: Matrix<Rat>,
    /// Basis of `u^perp ∩ v`.
    pub middle: Matrix<Rat>,
    /// Basis of `v^perp`.
    pub outer: Matrix<Rat>,
}

/// Build and certify the splitting for strictly nested flats `u < v`
/// (the subspace of `u` strictly inside the subspace of `v`).
pub fn build_splitting(n: usize, u: &Flat, v: &Flat) -> Result<Splitting, LabError> {
    if !(u.leq(v) && u.codim > v.codim) {
        return Err(LabError::NotNested);
    }
    let u_spec = CircleActionSpec::from_flat(n, u)?;
    let v_spec = CircleActionSpec::from_flat(n, v)?;
    let inner = u_spec.subspace.clone();
    let outer = v_spec.perp.clone();
    // middle: vectors of rowspan(u covectors) killed by the v covectors —
    // parametrize x = U^T c and solve (V U^T) c = 0
    let ut = u_spec.perp.transpose();
    let vut = v_spec.perp.mul_mat(&ut);
    let c_basis = vut.kernel_basis();
    let middle_rows: Vec<Vec<Rat>> = c_basis.iter().map(|c| ut.mul_vec(c)).collect();
    let middle = Matrix::from_rows(middle_rows);
    let splitting = Splitting {
        inner,
        middle,
        outer,
    };
    certify(n, &splitting)?;
    Ok(splitting)
}

/// Exact certificate: blocks pairwise orthogonal, dimensions filling n+1,
/// joint rank n+1.
fn certify(n: usize, s: &Splitting) -> Result<(), LabError> {
    let blocks = [&s.inner, &s.middle, &s.outer];
    for (i, a) in blocks.iter().enumerate() {
        for b in blocks.iter().skip(i + 1) {
            for r in 0..a.rows() {
                for q in 0..b.rows() {
                    if !dot(a.row(r), b.row(q)).is_zero() {
                        return Err(LabError::BadSplitting);
                    }
                }
            }
        }
    }
    let total = s.inner.rows() + s.middle.rows() + s.outer.rows();
    if total != n + 1 {
        return Err(LabError::BadSplitting);
    }
    let stacked = s.inner.stack(&s.middle).stack(&s.outer);
    if stacked.rank() != n + 1 {
        return Err(LabError::BadSplitting);
    }
    Ok(())
}

/// Exact commutation proof for a nested pair: the certified splitting plus
/// the scalar-block property of both representations.
///
/// Scalarity is itself exact: the action of `u` fixes `inner` and rotates
/// `middle` and `outer` (both inside `u^perp`), the action of `v` fixes
/// `inner` and `middle` (both inside `v`) and rotates `outer`. Those
/// containments are verified by exact reduction against the echelon bases.
pub fn check_commuting_structural(n: usize, u: &Flat, v: &Flat) -> Result<Splitting, LabError> {
    let s = build_splitting(n, u, v)?;
    let contained = |rows: &Matrix<Rat>, span: &Matrix<Rat>| -> bool {
        (0..rows.rows()).all(|r| span.spans(rows.row(r)))
    };
    // u-action blocks: middle and outer lie in u^perp = rowspan(u.basis)
    if !contained(&s.middle, &u.basis) || !contained(&s.outer, &u.basis) {
        return Err(LabError::BadSplitting);
    }
    // v-action blocks: inner and middle lie in v = ker(v.basis)
    let killed = |rows: &Matrix<Rat>, covectors: &Matrix<Rat>| -> bool {
        (0..rows.rows()).all(|r| covectors.mul_vec(rows.row(r)).iter().all(|x| x.is_zero()))
    };
    if !killed(&s.inner, &v.basis) || !killed(&s.middle, &v.basis) {
        return Err(LabError::BadSplitting);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use barrier_gauge_core::lattice::build_lattice;
    use barrier_gauge_core::named;
    use barrier_gauge_core::rational::rat;

    fn span_e1() -> CircleActionSpec {
        // v = span(e_1) in C^2: covector (1, 0) kills e_1? no — v = ker of
        // covectors; span(e_1) is cut out by the covector e_0^*
        let covectors = Matrix::from_rows(vec![vec![rat(1, 1), rat(0, 1)]]);
        CircleActionSpec::from_normal_span(1, &covectors).unwrap()
    }

    #[test]
    fn moment_values_on_the_line() {
        let spec = span_e1();
        let p10 = ProjectivePoint::from_real(&[1.0, 0.0]).unwrap();
        let p01 = ProjectivePoint::from_real(&[0.0, 1.0]).unwrap();
        let p11 = ProjectivePoint::from_real(&[1.0, 1.0]).unwrap();
        assert!((spec.moment_value(&p10) - 1.0).abs() < 1e-12);
        assert!(spec.moment_value(&p01) < 1e-12);
        assert!((spec.moment_value(&p11) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn action_period_and_half_turn() {
        let spec = span_e1();
        let p = ProjectivePoint::from_real(&[1.0, 1.0]).unwrap();
        assert!(spec.apply(0.0, &p).distance(&p) < 1e-12);
        assert!(spec.apply(1.0, &p).distance(&p) < 1e-10);
        let half = spec.apply(0.5, &p);
        let expected = ProjectivePoint::from_real(&[-1.0, 1.0]).unwrap();
        assert!(half.distance(&expected) < 1e-10);
    }

    #[test]
    fn isotropy_weight_equals_codim() {
        let lat = build_lattice(&named::coordinate(2));
        for f in &lat.flats {
            let spec = CircleActionSpec::from_flat(2, f).unwrap();
            // exact rational point on the flat: any kernel basis vector
            let basis = spec.subspace_basis().row_vecs();
            let coords: Vec<f64> = basis[0].iter().map(rat_to_f64).collect();
            let p = ProjectivePoint::from_real(&coords).unwrap();
            assert_eq!(spec.isotropy_weight(&p).unwrap(), f.codim);
        }
    }

    #[test]
    fn isotropy_weight_deep_flat_in_cp4() {
        // codim-3 coordinate flat in CP^4
        let covectors = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
        ]);
        let spec = CircleActionSpec::from_normal_span(4, &covectors).unwrap();
        let p = ProjectivePoint::from_real(&[0.0, 0.0, 0.0, 2.0, 5.0]).unwrap();
        assert_eq!(spec.isotropy_weight(&p).unwrap(), 3);
    }

    #[test]
    fn isotropy_requires_fixed_point() {
        let spec = span_e1();
        let p = ProjectivePoint::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(
            spec.isotropy_weight(&p),
            Err(LabError::NotOnFixedLocus(_))
        ));
    }

    #[test]
    fn coordinate_splitting_blocks() {
        // u = span(e_2) < v = span(e_1, e_2) in C^3
        let u = flat_from_covectors(vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
        ]);
        let v = flat_from_covectors(vec![vec![rat(1, 1), rat(0, 1), rat(0, 1)]]);
        let s = check_commuting_structural(2, &u, &v).unwrap();
        assert_eq!(
            s.inner.row_vecs(),
            vec![vec![rat(0, 1), rat(0, 1), rat(1, 1)]]
        );
        assert_eq!(
            s.middle.row_vecs(),
            vec![vec![rat(0, 1), rat(1, 1), rat(0, 1)]]
        );
        assert_eq!(
            s.outer.row_vecs(),
            vec![vec![rat(1, 1), rat(0, 1), rat(0, 1)]]
        );
    }

    #[test]
    fn double_point_under_slanted_line() {
        // lines with covectors (1,0,0) and (1,1,1); their crossing u under
        // the second line v needs an exact Gram-style splitting
        let arr = barrier_gauge_core::Arrangement::new(
            2,
            vec![
                (vec![rat(1, 1), rat(0, 1), rat(0, 1)], rat(1, 1)),
                (vec![rat(1, 1), rat(1, 1), rat(1, 1)], rat(1, 1)),
            ],
        )
        .unwrap();
        let lat = build_lattice(&arr);
        let point = lat.flats.iter().find(|f| f.codim == 2).unwrap();
        let line = lat
            .flats
            .iter()
            .find(|f| f.codim == 1 && f.support == vec![1])
            .unwrap();
        assert!(check_commuting_structural(2, point, line).is_ok());
    }

    #[test]
    fn incomparable_flats_error() {
        let lat = build_lattice(&named::coordinate(2));
        let lines: Vec<&Flat> = lat.flats.iter().filter(|f| f.codim == 1).collect();
        assert!(matches!(
            check_commuting_structural(2, lines[0], lines[1]),
            Err(LabError::NotNested)
        ));
    }

    fn flat_from_covectors(rows: Vec<Vec<Rat>>) -> Flat {
        let mut basis = Matrix::from_rows(rows);
        let codim = basis.rref();
        Flat {
            support: vec![],
            codim,
            basis,
        }
    }
}
