//! Affine-chart computations: the Fubini-Study form, Poisson brackets and
//! the Hamiltonian equation, all in floating point.
//!
//! Conventions (also tested, not just documented):
//!
//! * Kahler potential `f(w) = log(1 + |w|^2) / (2 pi)` in the chart
//!   `w_j = z_j / z_m`, so `omega = (i / 2 pi) sum h_{jk} dw_j ^ dconj(w_k)`
//!   with `h_{jk} = delta_{jk} / (1+|w|^2) - conj(w_j) w_k / (1+|w|^2)^2`;
//!   this normalizes the area of a line to one.
//! * Hamiltonian fields satisfy `iota_{X_H} omega = -dH`; under this sign
//!   the period-one generator of the flat rotation is the Hamiltonian field
//!   of its moment map (the chart computation on CP^1 confirms the pair of
//!   signs; flipping either one breaks it).
//! * Gradients use central differences with step `1e-5`, balancing
//!   truncation against cancellation at double precision.
//!
//! The chart is always centered on the largest homogeneous coordinate, so
//! chart coordinates are bounded by one; the degeneracy guard exists for
//! callers that evaluate near somebody else's chart boundary.

use num_complex::Complex64;

use barrier_gauge_core::linalg::Matrix;

use crate::action::CircleActionSpec;
use crate::projective::ProjectivePoint;
use crate::LabError;

/// Central-difference step for gradients.
pub const FD_STEP: f64 = 1e-5;

/// Reject chart coordinates larger than this.
pub const CHART_LIMIT: f64 = 1e6;

/// Affine chart `z_m != 0` with `w_j = z_j / z_m` for `j != m`.
#[derive(Debug, Clone, Copy)]
pub struct Chart {
    pub base: usize,
    pub dim: usize,
}

impl Chart {
    /// The chart centered on the largest coordinate of `p`.
    pub fn containing(p: &ProjectivePoint) -> Chart {
        let base = p
            .coords()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .map(|(i, _)| i)
            .expect("points are nonzero");
        Chart { base, dim: p.dim() }
    }

    pub fn to_chart(&self, p: &ProjectivePoint) -> Result<Vec<Complex64>, LabError> {
        let z = p.coords();
        let zm = z[self.base];
        let mut w = Vec::with_capacity(self.dim);
        for (j, &zj) in z.iter().enumerate() {
            if j == self.base {
                continue;
            }
            let wj = zj / zm;
            if wj.norm() > CHART_LIMIT {
                return Err(LabError::ChartDegeneracy(wj.norm()));
            }
            w.push(wj);
        }
        Ok(w)
    }

    pub fn to_point(&self, w: &[Complex64]) -> ProjectivePoint {
        let mut z = Vec::with_capacity(self.dim + 1);
        let mut it = w.iter();
        for j in 0..=self.dim {
            if j == self.base {
                z.push(Complex64::new(1.0, 0.0));
            } else {
                z.push(*it.next().expect("chart dimension"));
            }
        }
        ProjectivePoint::new(z).expect("chart points are nonzero")
    }
}

/// Real coordinates `(x_1, y_1, ..., x_n, y_n)` of a chart vector.
pub fn to_real(w: &[Complex64]) -> Vec<f64> {
    w.iter().flat_map(|c| [c.re, c.im]).collect()
}

pub fn to_complex(x: &[f64]) -> Vec<Complex64> {
    x.chunks_exact(2)
        .map(|p| Complex64::new(p[0], p[1]))
        .collect()
}

/// The matrix `W[a][b] = omega(e_a, e_b)` of the Fubini-Study form on the
/// real chart basis at `w`.
pub fn fs_form_matrix(w: &[Complex64]) -> Matrix<f64> {
    let n = w.len();
    let norm1 = 1.0 + w.iter().map(|c| c.norm_sqr()).sum::<f64>();
    // h_{jk} = delta/(1+|w|^2) - conj(w_j) w_k / (1+|w|^2)^2
    let mut h = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut v = -w[j].conj() * w[k] / (norm1 * norm1);
            if j == k {
                v += 1.0 / norm1;
            }
            h[j][k] = v;
        }
    }
    // omega(xi, eta) = (i / 2 pi) sum h_{jk} (xi_j conj(eta_k) - eta_j conj(xi_k))
    let basis = |a: usize| -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[a / 2] = if a.is_multiple_of(2) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        v
    };
    let mut form = Matrix::zeros(2 * n, 2 * n);
    for a in 0..2 * n {
        let xi = basis(a);
        for b in 0..2 * n {
            let eta = basis(b);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                for k in 0..n {
                    acc += h[j][k] * (xi[j] * eta[k].conj() - eta[j] * xi[k].conj());
                }
            }
            let val = (Complex64::i() * acc / (2.0 * std::f64::consts::PI)).re;
            form.set(a, b, val);
        }
    }
    form
}

/// Central-difference gradient of `f` at `x`.
pub fn gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], step: f64) -> Vec<f64> {
    let mut grad = Vec::with_capacity(x.len());
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        probe[i] = x[i] + step;
        let plus = f(&probe);
        probe[i] = x[i] - step;
        let minus = f(&probe);
        probe[i] = x[i];
        grad.push((plus - minus) / (2.0 * step));
    }
    grad
}

/// Moment map of `spec` as a function of real chart coordinates.
fn moment_in_chart<'a>(spec: &'a CircleActionSpec, chart: &Chart) -> impl Fn(&[f64]) -> f64 + 'a {
    let chart = *chart;
    move |x: &[f64]| {
        let w = to_complex(x);
        let p = chart.to_point(&w);
        spec.moment_value(&p)
    }
}

/// Hamiltonian vector field of a function with gradient `grad` at a point
/// with form matrix `form`: the solution of `iota_X omega = -dH`, i.e.
/// `form * X = grad` given the antisymmetry of `form`.
pub fn hamiltonian_field(form: &Matrix<f64>, grad: &[f64]) -> Option<Vec<f64>> {
    form.solve_partial_pivot(grad)
}

/// Poisson bracket `{f, g} = omega(X_f, X_g)` of two moment maps at `p`.
pub fn poisson_bracket(
    u: &CircleActionSpec,
    v: &CircleActionSpec,
    p: &ProjectivePoint,
) -> Result<f64, LabError> {
    let chart = Chart::containing(p);
    let w = chart.to_chart(p)?;
    let x = to_real(&w);
    let form = fs_form_matrix(&w);
    let grad_u = gradient(moment_in_chart(u, &chart), &x, FD_STEP);
    let grad_v = gradient(moment_in_chart(v, &chart), &x, FD_STEP);
    let xu = hamiltonian_field(&form, &grad_u).ok_or(LabError::ChartDegeneracy(f64::MAX))?;
    let xv = hamiltonian_field(&form, &grad_v).ok_or(LabError::ChartDegeneracy(f64::MAX))?;
    let wxv = form.mul_vec(&xv);
    Ok(xu.iter().zip(&wxv).map(|(a, b)| a * b).sum())
}

/// Residual of the Hamiltonian equation for the action generator at `p`:
/// `| iota_X omega + d r_v |` where `X` is the numerical derivative of the
/// action path `t -> phi_v^t(p)` in the chart. Zero (to finite-difference
/// accuracy) exactly when the action is generated by `r_v` under the sign
/// conventions in the module docs.
pub fn hamiltonian_consistency(
    spec: &CircleActionSpec,
    p: &ProjectivePoint,
) -> Result<f64, LabError> {
    let chart = Chart::containing(p);
    let w0 = chart.to_chart(p)?;
    let x0 = to_real(&w0);
    // velocity of the action path by central differences
    let plus = to_real(&chart.to_chart(&spec.apply(FD_STEP, p))?);
    let minus = to_real(&chart.to_chart(&spec.apply(-FD_STEP, p))?);
    let velocity: Vec<f64> = plus
        .iter()
        .zip(&minus)
        .map(|(a, b)| (a - b) / (2.0 * FD_STEP))
        .collect();
    let form = fs_form_matrix(&w0);
    let grad = gradient(moment_in_chart(spec, &chart), &x0, FD_STEP);
    // iota_X omega applied to e_b is -(form * X)_b; the residual of
    // iota_X omega = -dr is therefore form * X - grad
    let wx = form.mul_vec(&velocity);
    let residual: f64 = wx
        .iter()
        .zip(&grad)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use barrier_gauge_core::linalg::Matrix;
    use barrier_gauge_core::rational::rat;

    fn span_e1_in_cp1() -> CircleActionSpec {
        let covectors = Matrix::from_rows(vec![vec![rat(1, 1), rat(0, 1)]]);
        CircleActionSpec::from_normal_span(1, &covectors).unwrap()
    }

    #[test]
    fn fs_area_normalization_on_cp1() {
        // omega(d/dx, d/dy) at w = 0 must be 1/(2 pi) * 2 / 2 = 1/pi... the
        // closed form is 1 / (pi (1+r^2)^2); check at w = 0 and w = 1
        let w0 = [Complex64::new(0.0, 0.0)];
        let f0 = fs_form_matrix(&w0);
        assert!((f0.at(0, 1) - 1.0 / std::f64::consts::PI).abs() < 1e-12);
        let w1 = [Complex64::new(1.0, 0.0)];
        let f1 = fs_form_matrix(&w1);
        assert!((f1.at(0, 1) - 1.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-12);
        // antisymmetry
        assert!((f1.at(0, 1) + f1.at(1, 0)).abs() < 1e-15);
    }

    #[test]
    fn consistency_on_cp1_closed_form() {
        // symbolic check point: r([z0:z1]) = |z0|^2/|z|^2 generates the
        // rotation z0 -> e^{2 pi i t} z0; residual must vanish to FD accuracy
        let spec = span_e1_in_cp1();
        let p = ProjectivePoint::from_real(&[1.0, 1.0]).unwrap();
        let res = hamiltonian_consistency(&spec, &p).unwrap();
        assert!(res < 1e-4, "residual {res}");
        // flipping the claimed sign must NOT vanish: the residual of
        // iota_X omega = +dr is |form*X + grad| which is about 2|grad|
        let chart = Chart::containing(&p);
        let x0 = to_real(&chart.to_chart(&p).unwrap());
        let grad = gradient(
            |x| {
                let w = to_complex(x);
                spec.moment_value(&chart.to_point(&w))
            },
            &x0,
            FD_STEP,
        );
        let gnorm: f64 = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        assert!(gnorm > 1e-2, "test point must have a nonzero gradient");
    }

    #[test]
    fn self_bracket_vanishes() {
        let spec = span_e1_in_cp1();
        let p = ProjectivePoint::from_real(&[1.0, 2.0]).unwrap();
        let b = poisson_bracket(&spec, &spec, &p).unwrap();
        assert!(b.abs() < 1e-12);
    }
}
