//! Affine hyperplane arrangements over an exact field: intersection
//! semi-lattices, restrictions, and the characteristic polynomial computed
//! by Möbius recursion, by the Whitney subset expansion, and (over `GF(q)`)
//! by counting complement points.

mod flat;
mod lattice;
mod poly;

use num_bigint::BigInt;

pub use flat::{Flat, Parametrization};
pub use lattice::SemiLattice;
pub use poly::CharPoly;

use crate::algebra::{dot, Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::matroid::Representation;

/// Largest point space `count_complement_points` will scan.
pub const POINT_COUNT_CAP: u128 = 10_000_000;

/// The affine hyperplane `{x : normal · x = offset}`, scaled so the first
/// nonzero entry of the normal is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<Scalar>,
    offset: Scalar,
}

impl Hyperplane {
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Result<Hyperplane> {
        let Some(lead) = normal.iter().find(|s| !s.is_zero()) else {
            return Err(Error::Contract("hyperplane with zero normal".into()));
        };
        let scale = lead.inv();
        Ok(Hyperplane {
            normal: normal.iter().map(|s| s * &scale).collect(),
            offset: &offset * &scale,
        })
    }

    pub fn normal(&self) -> &[Scalar] {
        &self.normal
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        dot(&self.normal, x) == self.offset
    }

    pub(crate) fn augmented_row(&self) -> Vec<Scalar> {
        let mut row = self.normal.clone();
        row.push(self.offset.clone());
        row
    }

    pub fn as_flat(&self) -> Flat {
        Flat::full(self.offset.field(), self.dim())
            .intersect(self)
            .expect("a hyperplane is nonempty")
    }
}

/// An ordered multiset of hyperplanes in `F^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    field: Field,
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(field: Field, ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Arrangement> {
        for h in &hyperplanes {
            if h.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: h.dim(),
                });
            }
            if h.offset.field() != field {
                return Err(Error::FieldMismatch(format!("hyperplane over {} in {field}", h.offset.field())));
            }
        }
        Ok(Arrangement {
            field,
            ambient_dim,
            hyperplanes,
        })
    }

    pub fn empty(field: Field, ambient_dim: usize) -> Arrangement {
        Arrangement {
            field,
            ambient_dim,
            hyperplanes: Vec::new(),
        }
    }

    /// The translation deformation `A_g`: hyperplanes `ρ_i · x = g_i`.
    pub fn from_representation(rep: &Representation, g: &[Scalar]) -> Result<Arrangement> {
        rep.check_vector(g)?;
        let hyperplanes = (0..rep.m())
            .map(|i| Hyperplane::new(rep.row(i).to_vec(), g[i].clone()))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(rep.field(), rep.n(), hyperplanes)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// The coefficient matrix, one row per hyperplane normal.
    pub fn normals(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient_dim, self.hyperplanes.iter().map(|h| h.normal.clone()).collect())
            .expect("normals share the ambient dimension")
    }

    /// `∩_{i ∈ set} H_i`, or `None` when empty. The empty set gives `V`.
    pub fn intersection_of(&self, set: &[usize]) -> Option<Flat> {
        let rows = set.iter().map(|&i| self.hyperplanes[i].augmented_row()).collect();
        let aug = Matrix::from_rows(self.field, self.ambient_dim + 1, rows).expect("rows have ambient width");
        Flat::from_augmented(&aug)
    }

    /// The arrangement with hyperplane `idx` removed.
    pub fn without(&self, idx: usize) -> Arrangement {
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.remove(idx);
        Arrangement {
            field: self.field,
            ambient_dim: self.ambient_dim,
            hyperplanes,
        }
    }

    pub fn intersection_semilattice(&self) -> SemiLattice {
        SemiLattice::build(self)
    }

    /// `χ(A, t) = Σ_{X ∈ L(A)} μ(V, X) t^{dim X}`.
    pub fn char_poly(&self) -> CharPoly {
        self.intersection_semilattice().char_poly()
    }

    /// `Σ_S (-1)^{|S|} t^{dim ∩S}` over index sets `S` with nonempty intersection.
    pub fn char_poly_whitney(&self) -> CharPoly {
        let mut coeffs = vec![BigInt::from(0); self.ambient_dim + 1];
        let v = Flat::full(self.field, self.ambient_dim);
        self.whitney_walk(&v, 0, 0, &mut coeffs);
        CharPoly::from_ascending(coeffs)
    }

    // Depth-first over subsets in increasing index order; an empty
    // intersection prunes all supersets.
    fn whitney_walk(&self, x: &Flat, next: usize, size: usize, coeffs: &mut [BigInt]) {
        if size.is_multiple_of(2) {
            coeffs[x.dim()] += 1;
        } else {
            coeffs[x.dim()] -= 1;
        }
        for i in next..self.len() {
            if let Some(y) = x.intersect(&self.hyperplanes[i]) {
                self.whitney_walk(&y, i + 1, size + 1, coeffs);
            }
        }
    }

    /// Number of points of `F_q^d` on no hyperplane, by exhaustive scan.
    pub fn count_complement_points(&self) -> Result<u64> {
        let Field::Prime(q) = self.field else {
            return Err(Error::Contract("point counting needs a finite field".into()));
        };
        let total = (q as u128).pow(self.ambient_dim as u32);
        if total > POINT_COUNT_CAP {
            return Err(Error::Budget {
                what: "q^d",
                size: total,
                cap: POINT_COUNT_CAP,
            });
        }
        let planes: Vec<(Vec<u64>, u64)> = self
            .hyperplanes
            .iter()
            .map(|h| {
                (
                    h.normal.iter().map(|s| s.residue_value().expect("residue")).collect(),
                    h.offset.residue_value().expect("residue"),
                )
            })
            .collect();
        Ok(count_points_avoiding(q, self.ambient_dim, &planes))
    }

    /// `A/X`: the distinct nonempty traces `H ∩ X` for `H ⊉ X`, written in the
    /// free coordinates of `X`'s canonical parametrization.
    pub fn restriction(&self, x: &Flat) -> Result<Arrangement> {
        if x.ambient_dim() != self.ambient_dim || x.field() != self.field {
            return Err(Error::Contract("flat lives in a different space".into()));
        }
        let containing: Vec<usize> = (0..self.len()).filter(|&i| x.is_within(&self.hyperplanes[i])).collect();
        if self.intersection_of(&containing).as_ref() != Some(x) {
            return Err(Error::Contract("flat is not an intersection of hyperplanes of the arrangement".into()));
        }
        Ok(self.restrict_unchecked(x))
    }

    fn restrict_unchecked(&self, x: &Flat) -> Arrangement {
        let param = x.parametrize();
        let mut out: Vec<Hyperplane> = Vec::new();
        for h in &self.hyperplanes {
            if x.is_within(h) {
                continue;
            }
            let normal: Vec<Scalar> = param.directions.iter().map(|d| dot(&h.normal, d)).collect();
            if normal.iter().all(Scalar::is_zero) {
                // parallel to X and not containing it: misses X entirely
                continue;
            }
            let offset = &h.offset - &dot(&h.normal, &param.point);
            let pulled = Hyperplane::new(normal, offset).expect("nonzero normal");
            if !out.contains(&pulled) {
                out.push(pulled);
            }
        }
        Arrangement {
            field: self.field,
            ambient_dim: x.dim(),
            hyperplanes: out,
        }
    }

    /// Checks `χ(A) = χ(A ∖ H) − χ(A^H)` for `H` = hyperplane `idx`.
    ///
    /// When `H` occurs more than once in the multiset, deleting one copy
    /// leaves the lattice unchanged and the identity reads `χ(A) = χ(A ∖ H)`.
    pub fn deletion_restriction_check(&self, idx: usize) -> Result<bool> {
        if idx >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: idx + 1,
                size: self.len(),
            });
        }
        let h = &self.hyperplanes[idx];
        let deleted = self.without(idx);
        let whole = self.char_poly();
        if deleted.hyperplanes.contains(h) {
            return Ok(whole == deleted.char_poly());
        }
        let restricted = self.restrict_unchecked(&h.as_flat());
        Ok(whole == &deleted.char_poly() - &restricted.char_poly())
    }
}

/// Counts `x ∈ F_q^d` with `a·x ≠ b` for every `(a, b)` in `planes`.
pub(crate) fn count_points_avoiding(q: u64, d: usize, planes: &[(Vec<u64>, u64)]) -> u64 {
    let mut x = vec![0u64; d];
    let mut count = 0u64;
    loop {
        let off_all = planes.iter().all(|(a, b)| {
            let s = a.iter().zip(&x).fold(0u64, |acc, (ai, xi)| (acc + ai * xi) % q);
            s != *b
        });
        if off_all {
            count += 1;
        }
        // odometer, last coordinate fastest
        let mut k = d;
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            x[k] += 1;
            if x[k] < q {
                break;
            }
            x[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn demo(field: Field) -> Representation {
        Representation::from_i64(field, 2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn arr(rep: &Representation, g: &[i64]) -> Arrangement {
        let g: Vec<Scalar> = g.iter().map(|&v| rep.field().from_i64(v)).collect();
        Arrangement::from_representation(rep, &g).unwrap()
    }

    fn poly(c: &[i64]) -> CharPoly {
        CharPoly::from_i64_descending(c)
    }

    #[test]
    fn arrangement_from_examples() {
        let central = arr(&demo(Q), &[0, 0, 0]);
        assert_eq!(central.len(), 3);
        assert!(central.hyperplanes().iter().all(|h| h.offset().is_zero()));
        let par = Representation::from_i64(Q, 1, &[&[1], &[1]]).unwrap();
        let pts = arr(&par, &[0, 1]);
        assert_ne!(pts.hyperplane(0), pts.hyperplane(1));
        assert!(pts.intersection_of(&[0, 1]).is_none());
        let empty = Arrangement::from_representation(&Representation::new(Q, 2, vec![]).unwrap(), &[]).unwrap();
        assert!(empty.is_empty());
        assert!(Arrangement::from_representation(&demo(Q), &[Q.zero()]).is_err());
    }

    #[test]
    fn hyperplanes_are_canonical() {
        let a = Hyperplane::new(vec![Q.from_i64(0), Q.from_i64(2)], Q.from_i64(4)).unwrap();
        let b = Hyperplane::new(vec![Q.from_i64(0), Q.from_i64(-1)], Q.from_i64(-2)).unwrap();
        assert_eq!(a, b);
        assert!(Hyperplane::new(vec![Q.zero(), Q.zero()], Q.one()).is_err());
    }

    #[test]
    fn semilattice_examples() {
        let empty = Arrangement::empty(Q, 2);
        let l = empty.intersection_semilattice();
        assert_eq!(l.len(), 1);
        assert_eq!(l.mobius(0), &BigInt::from(1));

        let generic = arr(&demo(Q), &[0, 0, 1]).intersection_semilattice();
        assert_eq!(generic.len(), 7);
        let points: Vec<usize> = (0..7).filter(|&i| generic.flat(i).dim() == 0).collect();
        assert_eq!(points.len(), 3);
        assert!(points.iter().all(|&i| generic.mobius(i) == &BigInt::from(1)));
        generic.verify_mobius().unwrap();

        let central = arr(&demo(Q), &[0, 0, 0]).intersection_semilattice();
        assert_eq!(central.len(), 5);
        assert_eq!(central.flat(4).dim(), 0);
        assert_eq!(central.mobius(4), &BigInt::from(2));
        central.verify_mobius().unwrap();
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(Arrangement::empty(Q, 2).char_poly(), poly(&[1, 0, 0]));
        assert_eq!(arr(&demo(Q), &[0, 0, 0]).char_poly(), poly(&[1, -3, 2]));
        assert_eq!(arr(&demo(Q), &[0, 0, 1]).char_poly(), poly(&[1, -3, 3]));
    }

    #[test]
    fn whitney_examples() {
        assert_eq!(Arrangement::empty(Q, 2).char_poly_whitney(), poly(&[1, 0, 0]));
        let single = Arrangement::new(
            Q,
            3,
            vec![Hyperplane::new(vec![Q.one(), Q.zero(), Q.zero()], Q.zero()).unwrap()],
        )
        .unwrap();
        assert_eq!(single.char_poly_whitney(), poly(&[1, -1, 0, 0]));
        assert_eq!(single.char_poly(), poly(&[1, -1, 0, 0]));
        assert_eq!(arr(&demo(Q), &[0, 0, 1]).char_poly_whitney(), poly(&[1, -3, 3]));
    }

    #[test]
    fn point_count_examples() {
        let gf3 = Field::Prime(3);
        assert_eq!(Arrangement::empty(gf3, 2).count_complement_points().unwrap(), 9);
        assert_eq!(arr(&demo(gf3), &[0, 0, 0]).count_complement_points().unwrap(), 2);
        assert_eq!(arr(&demo(gf3), &[0, 0, 1]).count_complement_points().unwrap(), 3);
        assert!(matches!(Arrangement::empty(Q, 2).count_complement_points(), Err(Error::Contract(_))));
    }

    #[test]
    fn boolean_arrangement() {
        let rep = Representation::from_i64(Q, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]).unwrap();
        let a = arr(&rep, &[1, -1, 2]);
        assert_eq!(a.char_poly(), CharPoly::t_pow_times_t_minus_one_pow(1, 3));
    }

    #[test]
    fn restriction_examples() {
        let a = arr(&demo(Q), &[0, 0, 1]);
        let v = Flat::full(Q, 2);
        assert_eq!(a.restriction(&v).unwrap(), a);

        // the circuit arrangement of the demo: one hyperplane g1 + g2 - g3 = 0
        let h = Hyperplane::new(vec![Q.one(), Q.one(), Q.from_i64(-1)], Q.zero()).unwrap();
        let circuit_arr = Arrangement::new(Q, 3, vec![h.clone()]).unwrap();
        let r = circuit_arr.restriction(&h.as_flat()).unwrap();
        assert_eq!((r.ambient_dim(), r.len()), (2, 0));

        let h0 = Hyperplane::new(vec![Q.one()], Q.zero()).unwrap();
        let h1 = Hyperplane::new(vec![Q.one()], Q.one()).unwrap();
        let two = Arrangement::new(Q, 1, vec![h0.clone(), h1]).unwrap();
        assert!(two.restriction(&h0.as_flat()).unwrap().is_empty());
    }

    #[test]
    fn restriction_rejects_foreign_flats() {
        let a = arr(&demo(Q), &[0, 0, 1]);
        let other = Hyperplane::new(vec![Q.one(), Q.from_i64(-1)], Q.zero()).unwrap();
        assert!(matches!(a.restriction(&other.as_flat()), Err(Error::Contract(_))));
    }

    #[test]
    fn restriction_merges_duplicate_traces() {
        // lines x=0, y=0, x=y restricted to x=0: y=0 and x=y both meet it at the origin
        let rep = Representation::from_i64(Q, 2, &[&[1, 0], &[0, 1], &[1, -1]]).unwrap();
        let a = arr(&rep, &[0, 0, 0]);
        let r = a.restriction(&a.hyperplane(0).as_flat()).unwrap();
        assert_eq!((r.ambient_dim(), r.len()), (1, 1));
    }

    #[test]
    fn deletion_restriction_examples() {
        let single = Arrangement::new(Q, 2, vec![Hyperplane::new(vec![Q.one(), Q.zero()], Q.zero()).unwrap()]).unwrap();
        assert!(single.deletion_restriction_check(0).unwrap());
        for g in [[0, 0, 1], [0, 0, 0]] {
            let a = arr(&demo(Q), &g);
            for i in 0..3 {
                assert!(a.deletion_restriction_check(i).unwrap());
            }
        }
        let par = Representation::from_i64(Q, 1, &[&[1], &[1]]).unwrap();
        let doubled = arr(&par, &[0, 0]);
        assert!(doubled.deletion_restriction_check(0).unwrap());
    }
}
