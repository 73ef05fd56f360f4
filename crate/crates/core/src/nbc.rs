//! Affine circuits, affine broken circuits and affine NBC sets of an
//! arrangement, the NBC expansion of the characteristic polynomial, and the
//! coefficient comparison between equivalence classes of translations.

use num_bigint::BigInt;

use crate::arrangement::{Arrangement, CharPoly, Flat};
use crate::bitset::IndexSet;
use crate::deformation::Classification;
use crate::error::{Error, Result};
use crate::matroid::Representation;

/// A total order on hyperplane indices, given as the sequence from smallest
/// to largest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrder {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl TotalOrder {
    /// `0 ≺ 1 ≺ … ≺ m-1`.
    pub fn natural(m: usize) -> TotalOrder {
        TotalOrder {
            sequence: (0..m).collect(),
            position: (0..m).collect(),
        }
    }

    pub fn from_sequence(sequence: Vec<usize>) -> Result<TotalOrder> {
        let m = sequence.len();
        let mut position = vec![usize::MAX; m];
        for (pos, &i) in sequence.iter().enumerate() {
            if i >= m || position[i] != usize::MAX {
                return Err(Error::Contract(format!("{sequence:?} is not a permutation of 0..{m}")));
            }
            position[i] = pos;
        }
        Ok(TotalOrder { sequence, position })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// The `≺`-maximal element of a nonempty set.
    pub fn max_of(&self, set: &[usize]) -> usize {
        *set.iter().max_by_key(|&&i| self.position[i]).expect("nonempty set")
    }
}

/// A minimal affine dependent set of hyperplane indices, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineCircuit(pub Vec<usize>);

/// All affine circuits: index sets `I` with `∩_I H_i ≠ ∅` whose normals have
/// rank `|I| - 1`, every proper subset being independent.
///
/// The walk only grows affinely independent sets with nonempty intersection;
/// an extension that keeps the rank is a circuit candidate and is not grown
/// further.
pub fn affine_circuits(arr: &Arrangement) -> Vec<AffineCircuit> {
    let normals = arr.normals();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk(
        arr: &Arrangement,
        normals: &crate::algebra::Matrix,
        x: &Flat,
        next: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<AffineCircuit>,
    ) {
        for i in next..arr.len() {
            let Some(y) = x.intersect(arr.hyperplane(i)) else {
                continue;
            };
            stack.push(i);
            if y.codim() == stack.len() {
                walk(arr, normals, &y, i + 1, stack, out);
            } else {
                let k = stack.len();
                let minimal = (0..k - 1).all(|skip| {
                    let rest: Vec<usize> =
                        stack.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                    normals.select_rows(&rest).rank() == k - 1
                });
                if minimal {
                    out.push(AffineCircuit(stack.clone()));
                }
            }
            stack.pop();
        }
    }
    let v = Flat::full(arr.field(), arr.ambient_dim());
    walk(arr, &normals, &v, 0, &mut stack, &mut out);
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

/// Affine circuits with their `≺`-maximal element removed.
pub fn affine_broken_circuits(arr: &Arrangement, order: &TotalOrder) -> Vec<Vec<usize>> {
    affine_circuits(arr)
        .into_iter()
        .map(|AffineCircuit(mut c)| {
            let top = order.max_of(&c);
            c.retain(|&i| i != top);
            c
        })
        .collect()
}

fn check_order(arr: &Arrangement, order: &TotalOrder) -> Result<()> {
    if order.len() != arr.len() {
        return Err(Error::DimensionMismatch {
            expected: arr.len(),
            found: order.len(),
        });
    }
    Ok(())
}

/// Visits every affine NBC set (nonempty intersection, no broken circuit).
pub fn for_each_affine_nbc(arr: &Arrangement, order: &TotalOrder, mut visit: impl FnMut(&[usize])) -> Result<()> {
    check_order(arr, order)?;
    let n = arr.len();
    let broken: Vec<IndexSet> = affine_broken_circuits(arr, order)
        .into_iter()
        .map(|b| IndexSet::from_indices(n, b))
        .collect();
    // broken circuits grouped by their largest index, so a set grown in
    // increasing index order only needs checking against the new element
    let mut by_last: Vec<Vec<&IndexSet>> = vec![Vec::new(); n];
    for b in &broken {
        if let Some(last) = b.iter().last() {
            by_last[last].push(b);
        }
    }

    fn walk(
        arr: &Arrangement,
        by_last: &[Vec<&IndexSet>],
        x: &Flat,
        next: usize,
        set: &mut IndexSet,
        stack: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        visit(stack);
        for i in next..arr.len() {
            let Some(y) = x.intersect(arr.hyperplane(i)) else {
                continue;
            };
            set.insert(i);
            if !by_last[i].iter().any(|b| b.is_subset(set)) {
                stack.push(i);
                walk(arr, by_last, &y, i + 1, set, stack, visit);
                stack.pop();
            }
            set.remove(i);
        }
    }
    let v = Flat::full(arr.field(), arr.ambient_dim());
    let mut set = IndexSet::with_capacity(n);
    let mut stack = Vec::new();
    walk(arr, &by_last, &v, 0, &mut set, &mut stack, &mut visit);
    Ok(())
}

/// `(a_0, …, a_r)`: the number of affine NBC `k`-sets.
pub fn affine_nbc_counts(arr: &Arrangement, order: &TotalOrder) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; arr.ambient_dim() + 1];
    for_each_affine_nbc(arr, order, |s| counts[s.len()] += 1)?;
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(counts)
}

/// `Σ (-1)^k a_k t^{d-k}` from the NBC counts.
pub fn char_poly_nbc(arr: &Arrangement, order: &TotalOrder) -> Result<CharPoly> {
    let counts: Vec<BigInt> = affine_nbc_counts(arr, order)?.into_iter().map(BigInt::from).collect();
    Ok(CharPoly::from_alt_coeffs(arr.ambient_dim(), &counts))
}

/// One comparable pair `X ⊆ Y` of nonempty strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairComparison {
    /// Stratum index of the smaller flat `X`.
    pub lower: usize,
    /// Stratum index of the larger flat `Y`.
    pub upper: usize,
    pub a_lower: Vec<BigInt>,
    pub a_upper: Vec<BigInt>,
    pub holds: bool,
}

/// `a_k(M) ≤ a_k(X)` for one nonempty stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidComparison {
    pub stratum: usize,
    pub a_stratum: Vec<BigInt>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    /// Coefficients `a_k(M)` of `χ(A_0, t)`.
    pub a_matroid: Vec<BigInt>,
    pub pairs: Vec<PairComparison>,
    pub matroid: Vec<MatroidComparison>,
}

impl ComparisonReport {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(|p| p.holds) && self.matroid.iter().all(|m| m.holds)
    }
}

/// Componentwise `a ≤ b`, missing entries read as 0.
pub fn dominated(a: &[BigInt], b: &[BigInt]) -> bool {
    let zero = BigInt::from(0);
    (0..a.len().max(b.len())).all(|k| a.get(k).unwrap_or(&zero) <= b.get(k).unwrap_or(&zero))
}

/// Checks `a_k(X) ≤ a_k(Y)` for every comparable pair `X ⊊ Y` of nonempty
/// strata, and `a_k(M) ≤ a_k(X)` for every nonempty stratum.
pub fn verify_comparison(rep: &Representation, classification: &Classification) -> Result<ComparisonReport> {
    let zero = vec![rep.field().zero(); rep.m()];
    let a_matroid = Arrangement::from_representation(rep, &zero)?.char_poly().alt_coeffs();
    let lattice = &classification.lattice;
    let strata = &classification.strata;
    let alt = |i: usize| strata[i].chi.as_ref().map(CharPoly::alt_coeffs);

    let mut pairs = Vec::new();
    for lower in 0..strata.len() {
        let Some(a_lower) = alt(lower) else { continue };
        for upper in 0..strata.len() {
            if upper == lower || !lattice.leq(strata[upper].lattice_index, strata[lower].lattice_index) {
                continue;
            }
            let Some(a_upper) = alt(upper) else { continue };
            let holds = dominated(&a_lower, &a_upper);
            pairs.push(PairComparison {
                lower,
                upper,
                a_lower: a_lower.clone(),
                a_upper,
                holds,
            });
        }
    }
    let matroid = (0..strata.len())
        .filter_map(|i| {
            alt(i).map(|a| MatroidComparison {
                stratum: i,
                holds: dominated(&a_matroid, &a),
                a_stratum: a,
            })
        })
        .collect();
    Ok(ComparisonReport {
        a_matroid,
        pairs,
        matroid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Scalar};
    use crate::arrangement::Hyperplane;
    use crate::deformation::Deformations;

    const Q: Field = Field::Rationals;

    fn arr(rows: &[&[i64]], n: usize, g: &[i64]) -> Arrangement {
        let rep = Representation::from_i64(Q, n, rows).unwrap();
        let g: Vec<Scalar> = g.iter().map(|&v| Q.from_i64(v)).collect();
        Arrangement::from_representation(&rep, &g).unwrap()
    }

    const DEMO: &[&[i64]] = &[&[1, 0], &[0, 1], &[1, 1]];

    #[test]
    fn order_validation() {
        assert!(TotalOrder::from_sequence(vec![2, 0, 1]).is_ok());
        assert!(TotalOrder::from_sequence(vec![0, 0, 1]).is_err());
        assert!(TotalOrder::from_sequence(vec![0, 3, 1]).is_err());
        let o = TotalOrder::from_sequence(vec![2, 0, 1]).unwrap();
        assert_eq!(o.max_of(&[0, 1, 2]), 1);
        assert_eq!(o.max_of(&[0, 2]), 0);
    }

    #[test]
    fn affine_circuit_examples() {
        assert!(affine_circuits(&arr(DEMO, 2, &[0, 0, 1])).is_empty());
        assert_eq!(affine_circuits(&arr(DEMO, 2, &[0, 0, 0])), vec![AffineCircuit(vec![0, 1, 2])]);
        assert_eq!(affine_circuits(&arr(&[&[1], &[1]], 1, &[0, 0])), vec![AffineCircuit(vec![0, 1])]);
        assert!(affine_circuits(&arr(&[&[1], &[1]], 1, &[0, 1])).is_empty());
    }

    #[test]
    fn nbc_count_examples() {
        let n3 = TotalOrder::natural(3);
        assert_eq!(affine_nbc_counts(&Arrangement::empty(Q, 2), &TotalOrder::natural(0)).unwrap(), vec![1]);
        assert_eq!(affine_nbc_counts(&arr(DEMO, 2, &[0, 0, 0]), &n3).unwrap(), vec![1, 3, 2]);
        assert_eq!(affine_nbc_counts(&arr(DEMO, 2, &[0, 0, 1]), &n3).unwrap(), vec![1, 3, 3]);
        assert!(affine_nbc_counts(&arr(DEMO, 2, &[0, 0, 1]), &TotalOrder::natural(2)).is_err());
    }

    #[test]
    fn nbc_sets_for_concurrent_lines() {
        let mut sets = Vec::new();
        for_each_affine_nbc(&arr(DEMO, 2, &[0, 0, 0]), &TotalOrder::natural(3), |s| sets.push(s.to_vec())).unwrap();
        assert_eq!(sets, vec![vec![], vec![0], vec![0, 2], vec![1], vec![1, 2], vec![2]]);
    }

    #[test]
    fn char_poly_nbc_examples() {
        let n3 = TotalOrder::natural(3);
        assert_eq!(char_poly_nbc(&arr(DEMO, 2, &[0, 0, 0]), &n3).unwrap(), CharPoly::from_i64_descending(&[1, -3, 2]));
        assert_eq!(char_poly_nbc(&arr(DEMO, 2, &[0, 0, 1]), &n3).unwrap(), CharPoly::from_i64_descending(&[1, -3, 3]));
        let single = Arrangement::new(Q, 3, vec![Hyperplane::new(vec![Q.one(), Q.zero(), Q.zero()], Q.zero()).unwrap()])
            .unwrap();
        assert_eq!(
            char_poly_nbc(&single, &TotalOrder::natural(1)).unwrap(),
            CharPoly::from_i64_descending(&[1, -1, 0, 0])
        );
    }

    fn comparison(rows: &[&[i64]], n: usize) -> ComparisonReport {
        let rep = Representation::from_i64(Q, n, rows).unwrap();
        let c = Deformations::new(rep.clone()).unwrap().classify().unwrap();
        verify_comparison(&rep, &c).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn comparison_examples() {
        let r = comparison(DEMO, 2);
        assert!(r.holds());
        assert_eq!(r.pairs.len(), 1);
        assert_eq!(r.pairs[0].a_lower, big(&[1, 3, 2]));
        assert_eq!(r.pairs[0].a_upper, big(&[1, 3, 3]));

        let r = comparison(&[&[1, 0], &[0, 1]], 2);
        assert!(r.holds());
        assert!(r.pairs.is_empty());
        assert_eq!(r.matroid.len(), 1);

        let r = comparison(&[&[1], &[1]], 1);
        assert!(r.holds());
        assert_eq!((r.pairs[0].a_lower.clone(), r.pairs[0].a_upper.clone()), (big(&[1, 1]), big(&[1, 2])));
    }

    #[test]
    fn dominance_pads_with_zero() {
        assert!(dominated(&big(&[1, 2]), &big(&[1, 2, 1])));
        assert!(!dominated(&big(&[1, 2, 1]), &big(&[1, 2])));
    }
}
