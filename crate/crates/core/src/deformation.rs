//! Classification of translation deformations.
//!
//! For a representation `ρ` with matrix `A`, every `g ∈ F^m` defines the
//! arrangement `A_g` of hyperplanes `ρ_i · x = g_i`. Two translation vectors
//! are equivalent when the same row subsystems `[A | J] x = [g | J]` are
//! consistent. The classes are cut out by the circuit arrangement `A^ρ` in
//! `F^m`, which has one central hyperplane `c_I · y = 0` per circuit `I`:
//! the class of `g` is the relative complement of `A^ρ` on the smallest flat
//! of `A^ρ` containing `g`.
//!
//! Wherever two computations are known to agree (direct consistency of a
//! circuit subsystem versus orthogonality to its circuit vector; direct
//! consistency of an arbitrary subsystem versus the circuit criterion), both
//! are run and a disagreement is reported as [`Error::Invariant`].

use itertools::Itertools;

use crate::algebra::{dot, Field, Scalar};
use crate::arrangement::{Arrangement, CharPoly, Flat, Hyperplane, SemiLattice, POINT_COUNT_CAP};
use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::matroid::{Circuit, CircuitVector, Representation};

/// Largest box radius scanned when searching rational representatives.
const MAX_SEARCH_RADIUS: i64 = 64;

/// `A^ρ`: hyperplane `i` is `c_I · y = 0` for the `i`-th circuit `I`.
#[derive(Clone, Debug)]
pub struct CircuitArrangement {
    arrangement: Arrangement,
    vectors: Vec<CircuitVector>,
}

impl CircuitArrangement {
    pub fn new(rep: &Representation) -> Result<CircuitArrangement> {
        let vectors = rep
            .circuits()
            .iter()
            .map(|c| rep.circuit_vector(c))
            .collect::<Result<Vec<_>>>()?;
        let hyperplanes = vectors
            .iter()
            .map(|v| Hyperplane::new(v.coefficients.clone(), rep.field().zero()))
            .collect::<Result<Vec<_>>>()?;
        let arrangement = Arrangement::new(rep.field(), rep.m(), hyperplanes)?;
        Ok(CircuitArrangement { arrangement, vectors })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn circuit_vectors(&self) -> &[CircuitVector] {
        &self.vectors
    }

    /// The circuit whose hyperplane has index `i`.
    pub fn circuit_of(&self, i: usize) -> &Circuit {
        &self.vectors[i].circuit
    }
}

/// `C_g`: the circuits whose subsystem is consistent for `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConsistencySignature {
    members: IndexSet,
    circuits: Vec<Circuit>,
}

impl ConsistencySignature {
    /// Member circuits, in the order of the circuit arrangement.
    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// Member circuits as indices into the circuit arrangement.
    pub fn members(&self) -> &IndexSet {
        &self.members
    }

    pub fn is_subset(&self, other: &ConsistencySignature) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// One equivalence class: the relative complement of `A^ρ` on `flat`.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub flat: Flat,
    /// Index of `flat` in the lattice of the circuit arrangement.
    pub lattice_index: usize,
    /// The circuits `I` with `flat ⊆ H_I`.
    pub signature: ConsistencySignature,
    /// A translation vector of this class, `None` if the class is empty (finite fields only).
    pub representative: Option<Vec<Scalar>>,
    /// `χ(X, t)`, undefined for empty classes.
    pub chi: Option<CharPoly>,
    /// Number of vectors in the class, over `GF(q)` only.
    pub size: Option<u64>,
}

/// Output of [`Deformations::classify`]: strata in bijection with `L(A^ρ)`,
/// ordered by flat dimension descending and then by canonical form.
#[derive(Clone, Debug)]
pub struct Classification {
    pub lattice: SemiLattice,
    pub strata: Vec<Stratum>,
}

impl Classification {
    /// The stratum of `g = 0`: the intersection of all circuit hyperplanes.
    pub fn central(&self) -> &Stratum {
        self.strata.last().expect("the lattice is never empty")
    }

    /// The stratum of generic translations: the whole space `F^m`.
    pub fn generic(&self) -> &Stratum {
        &self.strata[0]
    }

    pub fn nonempty(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(|s| s.representative.is_some())
    }
}

/// A representation together with its circuit arrangement.
#[derive(Clone, Debug)]
pub struct Deformations {
    rep: Representation,
    circuits: CircuitArrangement,
}

impl Deformations {
    pub fn new(rep: Representation) -> Result<Deformations> {
        let circuits = CircuitArrangement::new(&rep)?;
        Ok(Deformations { rep, circuits })
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn circuit_arrangement(&self) -> &CircuitArrangement {
        &self.circuits
    }

    pub fn field(&self) -> Field {
        self.rep.field()
    }

    fn signature_from_mask(&self, members: IndexSet) -> ConsistencySignature {
        let circuits = members.iter().map(|i| self.circuits.circuit_of(i).clone()).collect();
        ConsistencySignature { members, circuits }
    }

    /// Direct route only: circuits whose subsystem `[A | I] x = [g | I]` is consistent.
    pub fn signature_by_consistency(&self, g: &[Scalar]) -> Result<IndexSet> {
        self.rep.check_vector(g)?;
        let mut mask = IndexSet::with_capacity(self.circuits.len());
        for (i, cv) in self.circuits.vectors.iter().enumerate() {
            let idx = cv.circuit.indices();
            let rhs: Vec<Scalar> = idx.iter().map(|&j| g[j].clone()).collect();
            if self.rep.matrix().select_rows(idx).is_consistent(&rhs)? {
                mask.insert(i);
            }
        }
        Ok(mask)
    }

    /// Geometric route only: circuits with `c_I · g = 0`.
    pub fn signature_by_orthogonality(&self, g: &[Scalar]) -> Result<IndexSet> {
        self.rep.check_vector(g)?;
        Ok(IndexSet::from_indices(
            self.circuits.len(),
            (0..self.circuits.len()).filter(|&i| dot(&self.circuits.vectors[i].coefficients, g).is_zero()),
        ))
    }

    /// `C_g`, computed by both routes; they must agree.
    pub fn consistency_signature(&self, g: &[Scalar]) -> Result<ConsistencySignature> {
        let direct = self.signature_by_consistency(g)?;
        let geometric = self.signature_by_orthogonality(g)?;
        if direct != geometric {
            return Err(Error::Invariant(format!(
                "circuit consistency {direct:?} disagrees with circuit-vector orthogonality {geometric:?}"
            )));
        }
        Ok(self.signature_from_mask(direct))
    }

    /// Whether `J ∈ I_g`, by direct consistency and by the circuit criterion.
    pub fn in_consistency_ideal(&self, g: &[Scalar], set: &[usize]) -> Result<bool> {
        self.rep.check_vector(g)?;
        self.rep.check_indices(set)?;
        let rhs: Vec<Scalar> = set.iter().map(|&j| g[j].clone()).collect();
        let direct = self.rep.matrix().select_rows(set).is_consistent(&rhs)?;
        let sig = self.consistency_signature(g)?;
        let by_circuits = (0..self.circuits.len())
            .filter(|&i| self.circuits.circuit_of(i).is_subset_of(set))
            .all(|i| sig.members.contains(i));
        if direct != by_circuits {
            return Err(Error::Invariant(format!(
                "consistency of {set:?} is {direct} directly but {by_circuits} by circuits"
            )));
        }
        Ok(direct)
    }

    /// `g ~ h`, i.e. `C_g = C_h`.
    pub fn equivalent(&self, g: &[Scalar], h: &[Scalar]) -> Result<bool> {
        Ok(self.consistency_signature(g)? == self.consistency_signature(h)?)
    }

    /// `X_g`: the intersection of all circuit hyperplanes through `g`.
    pub fn locate_stratum(&self, g: &[Scalar]) -> Result<Flat> {
        let sig = self.consistency_signature(g)?;
        let arr = self.circuits.arrangement();
        let x = arr
            .intersection_of(&sig.members.to_vec())
            .ok_or_else(|| Error::Invariant("central hyperplanes with empty intersection".into()))?;
        for i in 0..arr.len() {
            if sig.members.contains(i) != x.is_within(arr.hyperplane(i)) {
                return Err(Error::Invariant(format!(
                    "circuit {} is in C_g iff X_g lies in its hyperplane fails",
                    i + 1
                )));
            }
        }
        Ok(x)
    }

    fn lattice_containing(&self, x: &Flat) -> IndexSet {
        let arr = self.circuits.arrangement();
        IndexSet::from_indices(arr.len(), (0..arr.len()).filter(|&i| x.is_within(arr.hyperplane(i))))
    }

    fn is_flat_of_circuit_arrangement(&self, x: &Flat) -> bool {
        x.ambient_dim() == self.rep.m()
            && x.field() == self.field()
            && self.circuits.arrangement().intersection_of(&self.lattice_containing(x).to_vec()).as_ref() == Some(x)
    }

    /// Whether `g` lies in the relative complement of `A^ρ` on `x`.
    fn in_relative_complement(&self, x: &Flat, avoid: &[&Hyperplane], g: &[Scalar]) -> bool {
        x.contains_point(g) && avoid.iter().all(|h| !h.contains_point(g))
    }

    /// A deterministic vector of the class `M(A^ρ / X)`.
    ///
    /// Over the rationals, integer parameter vectors of `X` are scanned in
    /// growing boxes, each box in lexicographic order with coordinate values
    /// ordered `0, 1, -1, 2, -2, …`. Over `GF(q)` all points of `X` are
    /// scanned in lexicographic order and `None` means the class is empty.
    pub fn representative_in(&self, x: &Flat) -> Result<Option<Vec<Scalar>>> {
        Ok(self.representatives(x, 1)?.into_iter().next())
    }

    fn representatives(&self, x: &Flat, want: usize) -> Result<Vec<Vec<Scalar>>> {
        if !self.is_flat_of_circuit_arrangement(x) {
            return Err(Error::Contract("not a flat of the circuit arrangement".into()));
        }
        let arr = self.circuits.arrangement();
        let avoid: Vec<&Hyperplane> = arr.hyperplanes().iter().filter(|h| !x.is_within(h)).collect();
        let param = x.parametrize();
        let k = param.free.len();
        let mut found = Vec::new();
        match self.field() {
            Field::Prime(_) => {
                for u in self.field().vectors(k).expect("finite field") {
                    let g = param.at(&u);
                    if self.in_relative_complement(x, &avoid, &g) {
                        found.push(g);
                        if found.len() == want {
                            break;
                        }
                    }
                }
            }
            Field::Rationals => {
                'radius: for radius in 0..=MAX_SEARCH_RADIUS {
                    for u in box_shell(k, radius) {
                        let u: Vec<Scalar> = u.into_iter().map(|v| Field::Rationals.from_i64(v)).collect();
                        let g = param.at(&u);
                        if self.in_relative_complement(x, &avoid, &g) {
                            found.push(g);
                            if found.len() == want {
                                break 'radius;
                            }
                        }
                    }
                    if k == 0 {
                        break;
                    }
                }
                if found.is_empty() {
                    return Err(Error::Invariant("no rational representative within search radius".into()));
                }
            }
        }
        Ok(found)
    }

    /// Number of vectors of `GF(q)^m` in the class `M(A^ρ / X)`.
    pub fn stratum_size(&self, x: &Flat) -> Result<u64> {
        let Field::Prime(q) = self.field() else {
            return Err(Error::Contract("stratum sizes are only finite over GF(q)".into()));
        };
        let total = (q as u128).pow(x.dim() as u32);
        if total > POINT_COUNT_CAP {
            return Err(Error::Budget {
                what: "q^dim X",
                size: total,
                cap: POINT_COUNT_CAP,
            });
        }
        let arr = self.circuits.arrangement();
        arr.restriction(x)?.count_complement_points()
    }

    /// `χ(A_g, t)`.
    pub fn char_poly_at(&self, g: &[Scalar]) -> Result<CharPoly> {
        Ok(Arrangement::from_representation(&self.rep, g)?.char_poly())
    }

    /// One stratum per flat of `L(A^ρ)`, each with a representative and `χ(X, t)`.
    ///
    /// When a second representative exists it is used to re-derive `χ(X, t)`;
    /// a mismatch is an invariant violation.
    pub fn classify(&self) -> Result<Classification> {
        let lattice = self.circuits.arrangement().intersection_semilattice();
        let mut strata = Vec::with_capacity(lattice.len());
        for i in 0..lattice.len() {
            let flat = lattice.flat(i).clone();
            let signature = self.signature_from_mask(lattice.containing(i).clone());
            let reps = self.representatives(&flat, 2)?;
            let chi = match reps.first() {
                Some(g) => {
                    let chi = self.char_poly_at(g)?;
                    if let Some(h) = reps.get(1) {
                        let again = self.char_poly_at(h)?;
                        if again != chi {
                            return Err(Error::Invariant(format!(
                                "equivalent translations give {chi} and {again}"
                            )));
                        }
                    }
                    Some(chi)
                }
                None => None,
            };
            let size = match self.field() {
                Field::Prime(_) => Some(self.stratum_size(&flat)?),
                Field::Rationals => None,
            };
            strata.push(Stratum {
                flat,
                lattice_index: i,
                signature,
                representative: reps.into_iter().next(),
                chi,
                size,
            });
        }
        Ok(Classification { lattice, strata })
    }
}

fn digit_value(idx: i64) -> i64 {
    if idx % 2 == 1 {
        (idx + 1) / 2
    } else {
        -(idx / 2)
    }
}

/// Integer vectors with max-norm exactly `radius`, in lexicographic order
/// over the digit sequence `0, 1, -1, 2, -2, …`.
fn box_shell(k: usize, radius: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = 2 * radius + 1;
    let tuples: Box<dyn Iterator<Item = Vec<i64>>> = if k == 0 {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new((0..k).map(|_| 0..width).multi_cartesian_product())
    };
    tuples
        .filter(move |digits| radius == 0 || digits.iter().any(|&d| d >= 2 * radius - 1))
        .map(|digits| digits.into_iter().map(digit_value).collect())
}

/// `A^ρ` for `rep`.
pub fn circuit_arrangement(rep: &Representation) -> Result<CircuitArrangement> {
    CircuitArrangement::new(rep)
}
