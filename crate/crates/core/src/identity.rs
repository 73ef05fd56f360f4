//! The decomposition identity
//!
//! ```text
//! Σ_{X ∈ L(A^ρ)} χ(X, t) · χ(A^ρ/X, t) = t^n (t - 1)^m
//! ```
//!
//! checked as a polynomial identity over the rationals and, over `GF(q)`, as
//! a counting identity in which every term is obtained by exhaustive point
//! counts. Empty classes over `GF(q)` contribute 0.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::algebra::{Field, Scalar};
use crate::arrangement::{Arrangement, CharPoly, Hyperplane};
use crate::bitset::IndexSet;
use crate::deformation::{Classification, Deformations};
use crate::error::{Error, Result};
use crate::matroid::Representation;

/// Cap on `q^m` for scans over all translation vectors.
pub const TRANSLATION_SCAN_CAP: u128 = 250;
/// Cap on `q^{n+m}` for the lifted arrangement point count.
pub const LIFTED_SCAN_CAP: u128 = 20_000;

fn require_rationals(rep: &Representation) -> Result<()> {
    match rep.field() {
        Field::Rationals => Ok(()),
        f => Err(Error::Contract(format!("the polynomial identity needs the rationals, not {f}"))),
    }
}

fn require_prime(rep: &Representation) -> Result<u64> {
    match rep.field() {
        Field::Prime(q) => Ok(q),
        Field::Rationals => Err(Error::Contract("the counting identity needs a finite field".into())),
    }
}

fn check_cap(what: &'static str, q: u64, exp: usize, cap: u128) -> Result<()> {
    let size = (q as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::Budget { what, size, cap });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub stratum: usize,
    /// `χ(X, t)`.
    pub chi: CharPoly,
    /// `χ(A^ρ/X, t)`.
    pub chi_restriction: CharPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteDecompositionReport {
    pub terms: Vec<DecompositionTerm>,
    pub lhs: CharPoly,
    pub rhs: CharPoly,
}

impl InfiniteDecompositionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The per-stratum terms of the left-hand side over the rationals.
pub fn decomposition_terms(dfm: &Deformations, classification: &Classification) -> Result<Vec<DecompositionTerm>> {
    require_rationals(dfm.representation())?;
    let arr = dfm.circuit_arrangement().arrangement();
    classification
        .strata
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let chi = s
                .chi
                .clone()
                .ok_or_else(|| Error::Invariant("empty class over the rationals".into()))?;
            Ok(DecompositionTerm {
                stratum: i,
                chi,
                chi_restriction: arr.restriction(&s.flat)?.char_poly(),
            })
        })
        .collect()
}

/// `Σ_X χ(X, t) χ(A^ρ/X, t)`.
pub fn decomposition_lhs(dfm: &Deformations, classification: &Classification) -> Result<CharPoly> {
    Ok(decomposition_terms(dfm, classification)?
        .iter()
        .fold(CharPoly::zero(), |acc, t| &acc + &(&t.chi * &t.chi_restriction)))
}

pub fn verify_decomposition_infinite(dfm: &Deformations) -> Result<InfiniteDecompositionReport> {
    let rep = dfm.representation();
    require_rationals(rep)?;
    let classification = dfm.classify()?;
    let terms = decomposition_terms(dfm, &classification)?;
    let lhs = terms
        .iter()
        .fold(CharPoly::zero(), |acc, t| &acc + &(&t.chi * &t.chi_restriction));
    let rhs = CharPoly::t_pow_times_t_minus_one_pow(rep.n(), rep.m());
    Ok(InfiniteDecompositionReport { terms, lhs, rhs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTerm {
    pub stratum: usize,
    /// Complement points of `A_g` for `g` in the class; 0 for an empty class.
    pub complement_count: u64,
    /// Vectors in the class, counted by scanning all of `GF(q)^m`.
    pub class_size: u64,
    /// Complement points of `A^ρ/X`; must equal `class_size`.
    pub restriction_count: u64,
    /// Every `g` in the class had the same complement count.
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDecompositionReport {
    pub q: u64,
    pub terms: Vec<FiniteTerm>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl FiniteDecompositionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
            && self
                .terms
                .iter()
                .all(|t| t.constant && t.class_size == t.restriction_count)
    }
}

/// `Σ_X N(X) P(X) = q^n (q-1)^m` in native counts over `GF(q)`.
pub fn verify_decomposition_finite(dfm: &Deformations) -> Result<FiniteDecompositionReport> {
    let rep = dfm.representation();
    let q = require_prime(rep)?;
    check_cap("q^m", q, rep.m(), TRANSLATION_SCAN_CAP)?;
    let classification = dfm.classify()?;
    let lattice = &classification.lattice;
    let by_mask: HashMap<IndexSet, usize> = classification
        .strata
        .iter()
        .enumerate()
        .map(|(i, s)| (lattice.containing(s.lattice_index).clone(), i))
        .collect();

    let k = classification.strata.len();
    let mut class_size = vec![0u64; k];
    let mut counts: Vec<Option<u64>> = vec![None; k];
    let mut constant = vec![true; k];
    for g in rep.field().vectors(rep.m()).expect("finite field") {
        let mask = dfm.signature_by_consistency(&g)?;
        let i = *by_mask
            .get(&mask)
            .ok_or_else(|| Error::Invariant("signature matches no flat of the circuit arrangement".into()))?;
        class_size[i] += 1;
        let n = Arrangement::from_representation(rep, &g)?.count_complement_points()?;
        match counts[i] {
            None => counts[i] = Some(n),
            Some(prev) if prev != n => constant[i] = false,
            Some(_) => {}
        }
    }

    let arr = dfm.circuit_arrangement().arrangement();
    let mut terms = Vec::with_capacity(k);
    for (i, s) in classification.strata.iter().enumerate() {
        terms.push(FiniteTerm {
            stratum: i,
            complement_count: counts[i].unwrap_or(0),
            class_size: class_size[i],
            restriction_count: arr.restriction(&s.flat)?.count_complement_points()?,
            constant: constant[i],
        });
    }
    let lhs = terms
        .iter()
        .fold(BigInt::from(0), |acc, t| acc + BigInt::from(t.complement_count) * t.class_size);
    let rhs = boolean_count(q, rep.n(), rep.m());
    Ok(FiniteDecompositionReport { q, terms, lhs, rhs })
}

/// `q^n (q-1)^m`.
pub fn boolean_count(q: u64, n: usize, m: usize) -> BigInt {
    BigInt::from(q).pow(n as u32) * BigInt::from(q - 1).pow(m as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub total: BigInt,
    pub expected: BigInt,
}

impl CensusReport {
    pub fn holds(&self) -> bool {
        self.total == self.expected
    }
}

/// `Σ_{g ∈ GF(q)^m} |M(A_g)| = q^n (q-1)^m`: each pair `(x, g)` with
/// `ρ_i x ≠ g_i` for all `i` is counted once on either side.
pub fn census(rep: &Representation) -> Result<CensusReport> {
    let q = require_prime(rep)?;
    check_cap("q^m", q, rep.m(), TRANSLATION_SCAN_CAP)?;
    let mut total = BigInt::from(0);
    for g in rep.field().vectors(rep.m()).expect("finite field") {
        total += Arrangement::from_representation(rep, &g)?.count_complement_points()?;
    }
    Ok(CensusReport {
        total,
        expected: boolean_count(q, rep.n(), rep.m()),
    })
}

/// The arrangement `ρ_i · x - y_i = 0` in `F^{n+m}`.
pub fn lifted_arrangement(rep: &Representation) -> Result<Arrangement> {
    let (n, m, field) = (rep.n(), rep.m(), rep.field());
    let hyperplanes = (0..m)
        .map(|i| {
            let mut normal: Vec<Scalar> = rep.row(i).to_vec();
            normal.extend((0..m).map(|j| if i == j { field.from_i64(-1) } else { field.zero() }));
            Hyperplane::new(normal, field.zero())
        })
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(field, n + m, hyperplanes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedReport {
    pub point_count: u64,
    pub char_poly: CharPoly,
    pub expected: CharPoly,
    pub q: u64,
}

impl LiftedReport {
    pub fn holds(&self) -> bool {
        self.char_poly == self.expected && BigInt::from(self.point_count) == self.expected.eval_i64(self.q as i64)
    }
}

/// Counts the complement of the lifted arrangement over `GF(q)` and compares
/// it, and its lattice polynomial, with `t^n (t-1)^m`.
pub fn verify_lifted(rep: &Representation) -> Result<LiftedReport> {
    let q = require_prime(rep)?;
    check_cap("q^(n+m)", q, rep.n() + rep.m(), LIFTED_SCAN_CAP)?;
    let lifted = lifted_arrangement(rep)?;
    Ok(LiftedReport {
        point_count: lifted.count_complement_points()?,
        char_poly: lifted.char_poly(),
        expected: CharPoly::t_pow_times_t_minus_one_pow(rep.n(), rep.m()),
        q,
    })
}
