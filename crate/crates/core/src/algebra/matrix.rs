use std::fmt;

use super::field::{dot, Field, Scalar};
use crate::arrangement::Flat;
use crate::error::{Error, Result};

/// Dense row-major matrix over a single [`Field`]. Immutable: every
/// operation returns a new value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: cols,
                    found: row.len(),
                });
            }
            for s in &row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!("entry {s} is not in {field}")));
                }
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, cols: usize, rows: &[&[i64]]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// The submatrix `[M | J]` formed by the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// `[M, b]` with `b` appended as a last column.
    pub fn augment(&self, b: &[Scalar]) -> Result<Matrix> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for (r, rhs) in b.iter().enumerate() {
            data.extend_from_slice(self.row(r));
            data.push(rhs.clone());
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols + 1,
            data,
        })
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "stacking matrices of different widths");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// `M x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        self.rows().map(|row| dot(row, x)).collect()
    }

    /// `c M` for a row vector `c`.
    pub fn vec_mul(&self, c: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(c.len(), self.rows);
        (0..self.cols)
            .map(|col| {
                (0..self.rows).fold(self.field.zero(), |acc, r| &acc + &(&c[r] * self.get(r, col)))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// The pivot in each column is the first remaining row with a nonzero
    /// entry; with exact arithmetic the result is the unique RREF.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pivot_row) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pivot_row);
            let inv = m.get(lead, col).inv();
            m.scale_row(lead, &inv);
            for r in 0..m.rows {
                if r != lead && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_row_multiple(r, lead, &factor);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Whether `M x = b` has a solution, i.e. `rank M = rank [M, b]`.
    pub fn is_consistent(&self, b: &[Scalar]) -> Result<bool> {
        let aug = self.augment(b)?;
        let (_, pivots) = aug.rref_with_pivots();
        Ok(pivots.last() != Some(&self.cols))
    }

    /// The normalized generator of the left kernel of a matrix whose rows form
    /// a minimal linearly dependent set. The first entry of the result is 1
    /// and every entry is nonzero.
    pub fn left_kernel_line(&self) -> Result<Vec<Scalar>> {
        if self.rows == 0 {
            return Err(Error::Contract("left kernel line of a matrix with no rows".into()));
        }
        let (t, pivots) = self.transpose().rref_with_pivots();
        if pivots.len() + 1 != self.rows {
            return Err(Error::Contract(format!(
                "rows are not minimally dependent: rank {} with {} rows",
                pivots.len(),
                self.rows
            )));
        }
        let free = (0..self.rows)
            .find(|c| !pivots.contains(c))
            .expect("exactly one free column");
        let mut c = vec![self.field.zero(); self.rows];
        c[free] = self.field.one();
        for (r, &p) in pivots.iter().enumerate() {
            c[p] = -t.get(r, free);
        }
        if c.iter().any(Scalar::is_zero) {
            return Err(Error::Contract("rows are dependent but not minimally dependent".into()));
        }
        let scale = c[0].inv();
        Ok(c.iter().map(|x| x * &scale).collect())
    }

    /// The solution set of `M x = b` as a canonical [`Flat`], or `None` when
    /// the system is inconsistent.
    pub fn solution_flat(&self, b: &[Scalar]) -> Result<Option<Flat>> {
        let aug = self.augment(b)?;
        Ok(Flat::from_augmented(&aug))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.data[i] = &self.data[i] * s;
        }
    }

    // row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let s = self.get(source, c);
            if s.is_zero() {
                continue;
            }
            let delta = s * factor;
            let i = target * self.cols + c;
            self.data[i] = &self.data[i] - &delta;
        }
    }

    /// Drops all-zero rows (an RREF keeps them at the bottom).
    pub(crate) fn without_zero_rows(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|s| !s.is_zero()))
            .collect();
        self.select_rows(&keep)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn demo() -> Matrix {
        Matrix::from_i64(Q, 2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn vec_i64(field: Field, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn rref_fixed_points() {
        let z = Matrix::zeros(Q, 2, 3);
        assert_eq!(z.rref(), z);
        let id = Matrix::identity(Q, 3);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_demo() {
        let r = demo().rref();
        let expected = Matrix::from_i64(Q, 2, &[&[1, 0], &[0, 1], &[0, 0]]).unwrap();
        assert_eq!(r, expected);
        assert_eq!(r.rref(), r);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(Q, 3).rank(), 3);
        assert_eq!(demo().rank(), 2);
        assert_eq!(Matrix::zeros(Q, 2, 2).rank(), 0);
    }

    #[test]
    fn consistency_examples() {
        let empty = Matrix::zeros(Q, 0, 4);
        assert!(empty.is_consistent(&[]).unwrap());
        assert!(demo().is_consistent(&vec_i64(Q, &[1, 1, 2])).unwrap());
        assert!(!demo().is_consistent(&vec_i64(Q, &[1, 1, 1])).unwrap());
        assert_eq!(
            demo().is_consistent(&vec_i64(Q, &[1, 1])),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn left_kernel_examples() {
        let parallel = Matrix::from_i64(Q, 1, &[&[1], &[1]]).unwrap();
        assert_eq!(parallel.left_kernel_line().unwrap(), vec_i64(Q, &[1, -1]));
        assert_eq!(demo().left_kernel_line().unwrap(), vec_i64(Q, &[1, 1, -1]));
        let gf5 = Field::Prime(5);
        let m = Matrix::from_i64(gf5, 2, &[&[2, 0], &[1, 0]]).unwrap();
        assert_eq!(m.left_kernel_line().unwrap(), vec_i64(gf5, &[1, 3]));
    }

    #[test]
    fn left_kernel_rejects_non_circuits() {
        assert!(Matrix::identity(Q, 2).left_kernel_line().is_err());
        // dependent, but the first two rows alone are already dependent
        let m = Matrix::from_i64(Q, 2, &[&[1, 0], &[2, 0], &[0, 1]]).unwrap();
        assert!(m.left_kernel_line().is_err());
        let m = Matrix::from_i64(Q, 1, &[&[1], &[1], &[1]]).unwrap();
        assert!(m.left_kernel_line().is_err());
    }

    #[test]
    fn solution_flat_examples() {
        let full = Matrix::zeros(Q, 0, 3).solution_flat(&[]).unwrap().unwrap();
        assert_eq!(full.dim(), 3);
        let line = Matrix::from_i64(Q, 2, &[&[1, 1]]).unwrap();
        let f = line.solution_flat(&vec_i64(Q, &[0])).unwrap().unwrap();
        assert_eq!(f.dim(), 1);
        assert!(f.contains_point(&vec_i64(Q, &[2, -2])));
        let par = Matrix::from_i64(Q, 2, &[&[1, 0], &[1, 0]]).unwrap();
        assert!(par.solution_flat(&vec_i64(Q, &[0, 1])).unwrap().is_none());
    }

    #[test]
    fn vector_products() {
        let c = vec_i64(Q, &[1, 1, -1]);
        assert!(demo().vec_mul(&c).iter().all(Scalar::is_zero));
        assert_eq!(demo().mul_vec(&vec_i64(Q, &[1, 2])), vec_i64(Q, &[1, 2, 3]));
    }
}
