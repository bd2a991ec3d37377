//! Dense matrices over a [`Field`] scalar with deterministic elimination.
//!
//! The reduced row echelon form used for lattice keys picks the first
//! nonzero entry in column order as pivot — no magnitude heuristics — so
//! echelon forms of equal row spans are identical and usable as canonical
//! keys. Over exact rationals this is also numerically irrelevant; the
//! float-specific solver below does use partial pivoting.

use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Field> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self.at(r, k).clone() * other.at(k, c).clone();
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Stack the rows of `self` above the rows of `other`.
    pub fn stack(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form. Returns the rank.
    ///
    /// Pivot selection is the first row with a nonzero entry in the current
    /// column, scanning columns left to right; leading entries are scaled to
    /// one and cleared above and below. Deterministic for any scalar.
    pub fn rref(&mut self) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero());
            let Some(r) = found else { continue };
            self.swap_rows(pivot_row, r);
            let inv = S::one() / self.at(pivot_row, col).clone();
            for c in col..self.cols {
                let v = self.at(pivot_row, c).clone() * inv.clone();
                self.set(pivot_row, c, v);
            }
            for r2 in 0..self.rows {
                if r2 == pivot_row || self.at(r2, col).is_zero() {
                    continue;
                }
                let factor = self.at(r2, col).clone();
                for c in col..self.cols {
                    let v = self.at(r2, c).clone() - factor.clone() * self.at(pivot_row, c).clone();
                    self.set(r2, c, v);
                }
            }
            pivot_row += 1;
        }
        // drop the zero rows so the echelon matrix is itself the canonical key
        self.data.truncate(pivot_row * self.cols);
        self.rows = pivot_row;
        pivot_row
    }

    /// Rank without disturbing `self`.
    pub fn rank(&self) -> usize {
        self.clone().rref()
    }

    /// Reduce `v` against the rows of an echelon matrix; the result is zero
    /// iff `v` lies in the row span.
    pub fn reduce_against(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        let mut out = v.to_vec();
        for r in 0..self.rows {
            let lead = match (0..self.cols).find(|&c| !self.at(r, c).is_zero()) {
                Some(c) => c,
                None => continue,
            };
            if out[lead].is_zero() {
                continue;
            }
            // echelon rows have unit leading entries
            let factor = out[lead].clone();
            for (c, slot) in out.iter_mut().enumerate().skip(lead) {
                *slot = slot.clone() - factor.clone() * self.at(r, c).clone();
            }
        }
        out
    }

    /// Row-span membership test; `self` must be in reduced echelon form.
    pub fn spans(&self, v: &[S]) -> bool {
        self.reduce_against(v).iter().all(S::is_zero)
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per free
    /// column of the echelon form, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let mut ech = self.clone();
        ech.rref();
        let mut pivot_col_of_row = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for r in 0..ech.rows {
            if let Some(c) = (0..ech.cols).find(|&c| !ech.at(r, c).is_zero()) {
                pivot_col_of_row.push(c);
                is_pivot[c] = true;
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![S::zero(); self.cols];
            x[free] = S::one();
            for (r, &pc) in pivot_col_of_row.iter().enumerate() {
                x[pc] = S::zero() - ech.at(r, free).clone();
            }
            basis.push(x);
        }
        basis
    }

    /// Solve `self * x = b` for square invertible `self` by Gauss-Jordan
    /// with first-nonzero pivoting. Returns `None` when singular.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let rank = aug.rref();
        if rank < self.rows {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|r| aug.at(r, self.cols).clone())
                .collect(),
        )
    }
}

impl Matrix<f64> {
    /// Solve `self * x = b` by Gaussian elimination with partial pivoting.
    ///
    /// For floating point the first-nonzero rule of [`Matrix::solve`] is not
    /// numerically adequate; this variant picks the largest pivot by
    /// magnitude. Returns `None` when the matrix is numerically singular.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_partial_pivot(&self, b: &[f64]) -> Option<Vec<f64>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a: Vec<Vec<f64>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut x = b.to_vec();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                .unwrap();
            if a[piv][col].abs() < 1e-14 {
                return None;
            }
            a.swap(col, piv);
            x.swap(col, piv);
            for r in col + 1..n {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                x[r] -= f * x[col];
            }
        }
        for col in (0..n).rev() {
            x[col] /= a[col][col];
            for r in 0..col {
                x[r] -= a[r][col] * x[col];
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::Rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_already_echelon() {
        let mut a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let expected = a.clone();
        assert_eq!(a.rref(), 2);
        assert_eq!(a, expected);
    }

    #[test]
    fn rref_dependent_rows() {
        let mut a = m(&[&[1, 1, 1], &[2, 2, 2]]);
        assert_eq!(a.rref(), 1);
        assert_eq!(a, m(&[&[1, 1, 1]]));
    }

    #[test]
    fn rref_swap() {
        let mut a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.rref(), 2);
        assert_eq!(a, m(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn rref_empty_matrix() {
        let mut a: Matrix<Rat> = Matrix::from_rows(vec![]);
        assert_eq!(a.rref(), 0);
    }

    #[test]
    fn kernel_is_killed_by_matrix() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let kern = a.kernel_basis();
        assert_eq!(kern.len(), 1);
        for k in &kern {
            assert!(a.mul_vec(k).iter().all(|x| x == &rat(0, 1)));
        }
    }

    #[test]
    fn exact_solve() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[rat(5, 1), rat(10, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(3, 1)]);
    }

    #[test]
    fn float_solve_partial_pivot() {
        let a = Matrix::from_rows(vec![vec![1e-20, 1.0], vec![1.0, 1.0]]);
        let x = a.solve_partial_pivot(&[1.0, 2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
    }
}
