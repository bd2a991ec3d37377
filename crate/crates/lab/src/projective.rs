//! Points of CP^n in unit-normalized homogeneous coordinates.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::LabError;

/// A point `[z]` with `|z| = 1`; the representative phase is arbitrary.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    coords: Vec<Complex64>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self, LabError> {
        let norm = l2(&coords);
        if norm < 1e-12 {
            return Err(LabError::ZeroVector);
        }
        let coords = coords.into_iter().map(|z| z / norm).collect();
        Ok(ProjectivePoint { coords })
    }

    /// Convenience constructor from real homogeneous coordinates.
    pub fn from_real(coords: &[f64]) -> Result<Self, LabError> {
        Self::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Haar-ish random point: independent complex Gaussian coordinates.
    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        let coords = (0..=n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        ProjectivePoint::new(coords).expect("gaussian vector is nonzero a.s.")
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Hermitian pairing of the unit representatives.
    pub fn inner(&self, other: &ProjectivePoint) -> Complex64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    /// Projective distance: the l2 gap between the unit representatives
    /// after optimal phase alignment. Zero iff the points agree up to
    /// phase; computed coordinate-wise to avoid the cancellation that
    /// `sqrt(1 - |<z,w>|^2)` suffers near zero.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        let inner = self.inner(other);
        let phase = if inner.norm() > 1e-300 {
            inner / inner.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - phase * b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_measures_phase_invariantly() {
        let p = ProjectivePoint::from_real(&[3.0, 4.0]).unwrap();
        let q =
            ProjectivePoint::new(vec![Complex64::new(0.0, 3.0), Complex64::new(0.0, 4.0)]).unwrap();
        assert!(p.distance(&q) < 1e-12);
        let r = ProjectivePoint::from_real(&[1.0, 0.0]).unwrap();
        assert!(p.distance(&r) > 0.5);
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(
            ProjectivePoint::from_real(&[0.0, 0.0]).unwrap_err(),
            LabError::ZeroVector
        );
    }
}
