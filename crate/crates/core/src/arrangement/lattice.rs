use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Arrangement, CharPoly, Flat};
use crate::bitset::IndexSet;
use crate::error::{Error, Result};

/// The intersection semi-lattice `L(A)`: all nonempty intersections of
/// hyperplanes, ordered by reverse inclusion, with `μ(V, X)` at every flat.
///
/// Flats are sorted by codimension and then by canonical system; index 0 is
/// always the ambient space `V`.
#[derive(Clone, Debug)]
pub struct SemiLattice {
    flats: Vec<Flat>,
    contains: Vec<IndexSet>,
    mobius: Vec<BigInt>,
    index: HashMap<Flat, usize>,
}

impl SemiLattice {
    pub(crate) fn build(arr: &Arrangement) -> SemiLattice {
        let n_h = arr.len();
        let containing = |x: &Flat| -> IndexSet {
            IndexSet::from_indices(n_h, (0..n_h).filter(|&i| x.is_within(arr.hyperplane(i))))
        };
        let v = Flat::full(arr.field(), arr.ambient_dim());
        let mut entries: Vec<(Flat, IndexSet)> = vec![(v.clone(), IndexSet::with_capacity(n_h))];
        let mut seen: HashMap<Flat, usize> = HashMap::from([(v, 0)]);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &xi in &frontier {
                for h in 0..n_h {
                    if entries[xi].1.contains(h) {
                        continue;
                    }
                    let Some(y) = entries[xi].0.intersect(arr.hyperplane(h)) else {
                        continue;
                    };
                    if seen.contains_key(&y) {
                        continue;
                    }
                    let c = containing(&y);
                    seen.insert(y.clone(), entries.len());
                    next.push(entries.len());
                    entries.push((y, c));
                }
            }
            frontier = next;
        }
        entries.sort_by(|a, b| (a.0.codim(), a.0.system()).cmp(&(b.0.codim(), b.0.system())));
        let (flats, contains): (Vec<Flat>, Vec<IndexSet>) = entries.into_iter().unzip();

        let mut mobius: Vec<BigInt> = Vec::with_capacity(flats.len());
        for i in 0..flats.len() {
            if i == 0 {
                mobius.push(BigInt::one());
                continue;
            }
            let below = (0..i)
                .filter(|&j| contains[j] != contains[i] && contains[j].is_subset(&contains[i]))
                .fold(BigInt::zero(), |acc, j| acc + &mobius[j]);
            mobius.push(-below);
        }
        let index = flats.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        SemiLattice {
            flats,
            contains,
            mobius,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat {
        &self.flats[i]
    }

    /// Indices of the hyperplanes containing flat `i`.
    pub fn containing(&self, i: usize) -> &IndexSet {
        &self.contains[i]
    }

    pub fn mobius(&self, i: usize) -> &BigInt {
        &self.mobius[i]
    }

    pub fn index_of(&self, x: &Flat) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `i ≤ j` in the lattice order, i.e. flat `j ⊆` flat `i`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.contains[i].is_subset(&self.contains[j])
    }

    /// `Σ μ(V, X) t^{dim X}`.
    pub fn char_poly(&self) -> CharPoly {
        self.flats
            .iter()
            .zip(&self.mobius)
            .fold(CharPoly::zero(), |acc, (x, mu)| &acc + &CharPoly::monomial(mu.clone(), x.dim()))
    }

    /// Re-checks `Σ_{V ≤ Z ≤ X} μ(V, Z) = 0` for every `X ≠ V`.
    pub fn verify_mobius(&self) -> Result<()> {
        if self.mobius.first() != Some(&BigInt::one()) {
            return Err(Error::Invariant("μ(V, V) ≠ 1".into()));
        }
        for i in 1..self.len() {
            let sum = (0..self.len())
                .filter(|&j| self.leq(j, i))
                .fold(BigInt::zero(), |acc, j| acc + &self.mobius[j]);
            if !sum.is_zero() {
                return Err(Error::Invariant(format!("Möbius sum {sum} at flat {i}")));
            }
        }
        Ok(())
    }
}
