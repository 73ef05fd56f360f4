//! Represented matroids: a rank oracle on row subsets of a matrix, circuit
//! enumeration and normalized circuit vectors.
//!
//! Ground-set indices are 0-based throughout the library; user-facing output
//! (the CLI, error messages) shifts them to 1-based.

use itertools::Itertools;

use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// A matrix `A` whose rows `ρ_1, …, ρ_m ∈ F^n` represent a matroid on `[m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    matrix: Matrix,
    rank: usize,
}

/// A minimal dependent set of rows, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit(Vec<usize>);

impl Circuit {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset_of(&self, set: &[usize]) -> bool {
        self.0.iter().all(|i| set.contains(i))
    }

    /// Builds a circuit from indices without checking minimal dependence.
    pub fn new_unchecked(mut indices: Vec<usize>) -> Circuit {
        indices.sort_unstable();
        indices.dedup();
        Circuit(indices)
    }
}

/// The linear relation `Σ c_i ρ_i = 0` supported exactly on a circuit, scaled
/// so the entry at the smallest circuit index is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitVector {
    pub circuit: Circuit,
    pub coefficients: Vec<Scalar>,
}

impl Representation {
    /// Validates rows of length `n` over `field`. Zero rows (loops) are rejected.
    pub fn new(field: Field, n: usize, rows: Vec<Vec<Scalar>>) -> Result<Representation> {
        let matrix = Matrix::from_rows(field, n, rows)?;
        Representation::from_matrix(matrix)
    }

    pub fn from_matrix(matrix: Matrix) -> Result<Representation> {
        if let Some(r) = (0..matrix.n_rows()).find(|&r| matrix.row(r).iter().all(Scalar::is_zero)) {
            return Err(Error::ZeroRow(r + 1));
        }
        let rank = matrix.rank();
        Ok(Representation { matrix, rank })
    }

    pub fn from_i64(field: Field, n: usize, rows: &[&[i64]]) -> Result<Representation> {
        Representation::from_matrix(Matrix::from_i64(field, n, rows)?)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    /// Number of rows `m` (ground-set size).
    pub fn m(&self) -> usize {
        self.matrix.n_rows()
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.matrix.n_cols()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        self.matrix.row(i)
    }

    pub(crate) fn check_indices(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&i| i >= self.m()) {
            Some(&i) => Err(Error::IndexOutOfRange {
                index: i + 1,
                size: self.m(),
            }),
            None => Ok(()),
        }
    }

    pub(crate) fn check_vector(&self, g: &[Scalar]) -> Result<()> {
        if g.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                found: g.len(),
            });
        }
        if let Some(s) = g.iter().find(|s| s.field() != self.field()) {
            return Err(Error::FieldMismatch(format!("entry {s} is not in {}", self.field())));
        }
        Ok(())
    }

    /// `rank [A | J]`.
    pub fn subset_rank(&self, set: &[usize]) -> Result<usize> {
        self.check_indices(set)?;
        Ok(self.matrix.select_rows(set).rank())
    }

    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        Ok(self.subset_rank(set)? == set.len())
    }

    /// All circuits, sorted by size and then lexicographically.
    ///
    /// Subsets are scanned by increasing size up to `r + 1`; supersets of
    /// circuits already found are skipped, so every dependent set that
    /// survives is minimal.
    pub fn circuits(&self) -> Vec<Circuit> {
        let mut found: Vec<Circuit> = Vec::new();
        let max = (self.rank + 1).min(self.m());
        for size in 2..=max {
            let mut level = Vec::new();
            for subset in (0..self.m()).combinations(size) {
                if found.iter().any(|c| c.is_subset_of(&subset)) {
                    continue;
                }
                if self.matrix.select_rows(&subset).rank() < size {
                    level.push(Circuit(subset));
                }
            }
            found.extend(level);
        }
        debug_assert!(found.iter().all(|c| c.len() >= 2), "loops are rejected at construction");
        found
    }

    pub fn is_circuit(&self, set: &[usize]) -> Result<bool> {
        self.check_indices(set)?;
        if set.is_empty() {
            return Ok(false);
        }
        let k = set.len();
        if self.subset_rank(set)? != k - 1 {
            return Ok(false);
        }
        for skip in 0..k {
            let rest: Vec<usize> = set.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &i)| i).collect();
            if self.subset_rank(&rest)? != k - 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The normalized circuit vector of `circuit`, extended by zeros to length `m`.
    pub fn circuit_vector(&self, circuit: &Circuit) -> Result<CircuitVector> {
        if !self.is_circuit(circuit.indices())? {
            return Err(Error::Contract(format!(
                "{{{}}} is not a circuit",
                circuit.indices().iter().map(|i| i + 1).join(",")
            )));
        }
        let local = self.matrix.select_rows(circuit.indices()).left_kernel_line()?;
        let mut coefficients = vec![self.field().zero(); self.m()];
        for (&i, c) in circuit.indices().iter().zip(local) {
            coefficients[i] = c;
        }
        Ok(CircuitVector {
            circuit: circuit.clone(),
            coefficients,
        })
    }

    /// `f_k` = number of independent `k`-subsets, for `k = 0..=r`.
    pub fn independent_set_counts(&self) -> Vec<u64> {
        (0..=self.rank)
            .map(|k| {
                (0..self.m())
                    .combinations(k)
                    .filter(|s| self.matrix.select_rows(s).rank() == k)
                    .count() as u64
            })
            .collect()
    }
}
