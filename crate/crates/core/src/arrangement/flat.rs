use crate::algebra::{dot, Field, Matrix, Scalar};

use super::Hyperplane;

/// A nonempty affine subspace `{x : M x = b}` of `F^d`, stored as the reduced
/// row echelon form of the augmented system `[M, b]` with zero rows removed.
/// Two flats are equal exactly when their canonical systems are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    ambient_dim: usize,
    system: Matrix,
}

/// `X = { point + Σ u_j directions[j] }`, with the directions indexed by the
/// free coordinates of the canonical system, so `x[free[j]] = u_j`.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub point: Vec<Scalar>,
    pub directions: Vec<Vec<Scalar>>,
    pub free: Vec<usize>,
}

impl Parametrization {
    pub fn at(&self, u: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(u.len(), self.directions.len());
        let mut x = self.point.clone();
        for (coef, dir) in u.iter().zip(&self.directions) {
            if coef.is_zero() {
                continue;
            }
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi = &*xi + &(coef * di);
            }
        }
        x
    }
}

impl Flat {
    /// The whole space `F^d`.
    pub fn full(field: Field, d: usize) -> Flat {
        Flat {
            ambient_dim: d,
            system: Matrix::zeros(field, 0, d + 1),
        }
    }

    /// Canonicalizes an augmented system; `None` if it is inconsistent.
    pub(crate) fn from_augmented(aug: &Matrix) -> Option<Flat> {
        let d = aug.n_cols() - 1;
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&d) {
            return None;
        }
        Some(Flat {
            ambient_dim: d,
            system: r.without_zero_rows(),
        })
    }

    pub fn field(&self) -> Field {
        self.system.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The canonical augmented system `[M, b]`.
    pub fn system(&self) -> &Matrix {
        &self.system
    }

    pub fn codim(&self) -> usize {
        self.system.n_rows()
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.codim()
    }

    pub fn is_full(&self) -> bool {
        self.codim() == 0
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        assert_eq!(x.len(), self.ambient_dim);
        self.system.rows().all(|row| dot(&row[..self.ambient_dim], x) == row[self.ambient_dim])
    }

    /// Whether this flat lies inside `h`.
    pub fn is_within(&self, h: &Hyperplane) -> bool {
        let row = Matrix::from_rows(self.field(), self.ambient_dim + 1, vec![h.augmented_row()])
            .expect("hyperplane matches ambient dimension");
        self.system.stack(&row).rank() == self.codim()
    }

    pub fn intersect(&self, h: &Hyperplane) -> Option<Flat> {
        let row = Matrix::from_rows(self.field(), self.ambient_dim + 1, vec![h.augmented_row()])
            .expect("hyperplane matches ambient dimension");
        Flat::from_augmented(&self.system.stack(&row))
    }

    /// Point-set inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Flat) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        self.system.stack(&other.system).rank() == self.codim()
    }

    pub fn parametrize(&self) -> Parametrization {
        let d = self.ambient_dim;
        let field = self.field();
        let pivots: Vec<usize> = self
            .system
            .rows()
            .map(|row| row.iter().position(|s| !s.is_zero()).expect("canonical rows are nonzero"))
            .collect();
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let mut point = vec![field.zero(); d];
        for (r, &p) in pivots.iter().enumerate() {
            point[p] = self.system.get(r, d).clone();
        }
        let directions = free
            .iter()
            .map(|&f| {
                let mut v = vec![field.zero(); d];
                v[f] = field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -self.system.get(r, f);
                }
                v
            })
            .collect();
        Parametrization { point, directions, free }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn hp(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane::new(normal.iter().map(|&v| Q.from_i64(v)).collect(), Q.from_i64(offset)).unwrap()
    }

    #[test]
    fn intersections_and_inclusion() {
        let v = Flat::full(Q, 3);
        let h = hp(&[1, 1, -1], 0);
        let x = v.intersect(&h).unwrap();
        assert_eq!(x.dim(), 2);
        assert!(x.is_within(&h));
        assert!(!v.is_within(&h));
        assert!(x.is_subset_of(&v));
        assert!(!v.is_subset_of(&x));
        let same = v.intersect(&hp(&[2, 2, -2], 0)).unwrap();
        assert_eq!(same, x);
        let parallel = hp(&[1, 1, -1], 1);
        assert!(x.intersect(&parallel).is_none());
    }

    #[test]
    fn parametrization_stays_on_flat() {
        let x = Flat::full(Q, 3).intersect(&hp(&[1, 2, 0], 5)).unwrap();
        let p = x.parametrize();
        assert_eq!(p.free, vec![1, 2]);
        for u in [[0, 0], [1, 0], [0, 1], [-3, 7]] {
            let u: Vec<Scalar> = u.iter().map(|&v| Q.from_i64(v)).collect();
            let pt = p.at(&u);
            assert!(x.contains_point(&pt));
            assert_eq!(pt[1], u[0]);
            assert_eq!(pt[2], u[1]);
        }
    }
}
