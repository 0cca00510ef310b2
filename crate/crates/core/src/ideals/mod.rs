//! Graded pieces of homogeneous ideals in the 20 invariant variables:
//! spans of generators, interpolated vanishing ideals, intersections and
//! colon ideals, all computed modulo primes block by block over the weight
//! classes of the torus action.

mod lab;
mod monomials;
mod parallel;
mod piece;

pub use lab::{point_mod, Lab, PointMod};
pub use monomials::{monomial_count, Grading, MonomialTable, Packed, Weight, WeightClass, MAX_DEGREE};
pub use parallel::{default_threads, map_indexed};
pub use piece::{Block, GradedPiece, PieceExport, Reducer, SparseForm};

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{crt_combine, rational_reconstruct, select_primes, ExactError, PrimeField, Rat, RationalField};
use crate::grassmann::{v_vars, InvariantVector, NV};
use crate::poly::{Monomial, MPoly, PolyError, RatPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("degree {degree} is below the smallest generator degree {min}")]
    DegreeTooSmall { degree: u32, min: u32 },
    #[error("pieces of degrees {0} and {1}")]
    DegreeMismatch(u32, u32),
    #[error("pieces over different primes or gradings")]
    PrimeMismatch,
    #[error("degree cap {0} exceeded")]
    DegreeCap(u32),
    #[error("expected forms in 20 variables, got {0}")]
    Arity(usize),
    #[error("form is not homogeneous for the grading")]
    NotHomogeneous,
    #[error("{got} points given, {need} needed")]
    TooFewPoints { need: usize, got: usize },
    #[error("degree {degree}, class {class}: dimension {before} dropped to {after} on the margin points")]
    Unstabilized { degree: u32, class: usize, before: usize, after: usize },
    #[error("primes disagree on class dimensions: {0:?}")]
    ConsensusFailure(Vec<(u64, usize)>),
    #[error("rational reconstruction failed")]
    Reconstruction,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Constructed,
    Interpolated,
}

/// Homogeneous generators with rational coefficients in v0..v19.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub label: String,
    pub provenance: Provenance,
    pub polys: Vec<RatPoly>,
}

/// Archive form of a generator set (polynomials in the text format).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorArchive {
    pub label: String,
    pub provenance: Provenance,
    pub variables: Vec<String>,
    pub degrees: Vec<u32>,
    pub generators: Vec<String>,
}

impl GeneratorSet {
    pub fn new(label: impl Into<String>, provenance: Provenance, polys: Vec<RatPoly>) -> Result<Self, IdealError> {
        for p in &polys {
            if p.vars().len() != NV {
                return Err(IdealError::Arity(p.vars().len()));
            }
            if !p.is_homogeneous() {
                return Err(IdealError::NotHomogeneous);
            }
        }
        Ok(GeneratorSet { label: label.into(), provenance, polys })
    }

    pub fn reduce(&self, field: &PrimeField) -> Result<Vec<SparseForm>, IdealError> {
        self.polys
            .iter()
            .map(|p| SparseForm::from_poly(p, field))
            .filter(|f| !matches!(f, Ok(x) if x.is_zero()))
            .collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|p| p.total_degree().unwrap_or(0)).collect()
    }

    pub fn to_archive(&self) -> GeneratorArchive {
        GeneratorArchive {
            label: self.label.clone(),
            provenance: self.provenance,
            variables: v_vars().names().to_vec(),
            degrees: self.degrees(),
            generators: self.polys.iter().map(|p| p.to_text()).collect(),
        }
    }

    pub fn from_archive(a: &GeneratorArchive) -> Result<Self, IdealError> {
        let polys = a
            .generators
            .iter()
            .map(|t| RatPoly::parse(RationalField, v_vars(), t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(a.label.clone(), a.provenance, polys)
    }
}

/// The same piece computed modulo two primes whose class dimensions agree.
#[derive(Debug, Clone)]
pub struct PiecePair {
    pub pieces: [GradedPiece; 2],
    /// Primes tried and the dimension each produced (including retries).
    pub trials: Vec<(u64, usize)>,
}

impl PiecePair {
    pub fn dimension(&self) -> usize {
        self.pieces[0].dimension()
    }

    pub fn degree(&self) -> u32 {
        self.pieces[0].degree
    }

    pub fn primes(&self) -> [u64; 2] {
        [self.pieces[0].field.modulus(), self.pieces[1].field.modulus()]
    }
}

/// Primes for two-prime consensus, with up to two retries on disagreement.
#[derive(Debug, Clone)]
pub struct PrimePlan {
    pub primes: Vec<u64>,
}

impl PrimePlan {
    pub fn seeded(seed: u64) -> PrimePlan {
        PrimePlan { primes: select_primes(seed, 4) }
    }

    pub fn explicit(primes: Vec<u64>) -> Result<PrimePlan, IdealError> {
        let mut seen = primes.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() < 2 || seen.len() != primes.len() {
            return Err(ExactError::TooFewPrimes(primes).into());
        }
        for &p in &primes {
            PrimeField::new(p)?;
            if p >= 1 << 31 {
                return Err(ExactError::ModulusTooLarge(p).into());
            }
        }
        Ok(PrimePlan { primes })
    }

    pub fn field(&self, i: usize) -> PrimeField {
        PrimeField::new(self.primes[i]).expect("validated prime")
    }

    /// Runs `f` at the first two primes; on disagreement of the class
    /// dimensions, runs it at the next two and accepts them only if they
    /// agree with each other.
    pub fn consensus<F>(&self, f: F) -> Result<PiecePair, IdealError>
    where
        F: Fn(PrimeField) -> Result<GradedPiece, IdealError>,
    {
        let mut trials = Vec::new();
        let mut iter = self.primes.chunks(2).filter(|c| c.len() == 2);
        for pair in iter.by_ref() {
            let a = f(PrimeField::new(pair[0])?)?;
            let b = f(PrimeField::new(pair[1])?)?;
            trials.push((pair[0], a.dimension()));
            trials.push((pair[1], b.dimension()));
            if a.class_dimensions() == b.class_dimensions() {
                return Ok(PiecePair { pieces: [a, b], trials });
            }
        }
        Err(IdealError::ConsensusFailure(trials))
    }
}

/// Reduces witnesses modulo the prime of `field`.
pub fn points_mod(witnesses: &[InvariantVector], field: &PrimeField) -> Result<Vec<PointMod>, IdealError> {
    witnesses.iter().map(|w| point_mod(w, field)).collect()
}

/// Lifts a piece known modulo several primes (with identical pivot
/// structure) to rational basis forms by Chinese remaindering and rational
/// reconstruction.
pub fn reconstruct(pieces: &[GradedPiece]) -> Result<Vec<RatPoly>, IdealError> {
    let first = pieces.first().ok_or(IdealError::Reconstruction)?;
    let table = &first.table;
    let mut out = Vec::new();
    for (c, b) in first.blocks.iter().enumerate() {
        for other in pieces {
            if other.blocks[c].pivots != b.pivots {
                return Err(IdealError::Reconstruction);
            }
        }
        let members = &table.classes[c].members;
        let rows: Vec<Vec<Vec<u32>>> = pieces.iter().map(|p| p.blocks[c].dense_rows()).collect();
        for r in 0..b.rank() {
            let mut terms = Vec::new();
            for k in 0..b.ncols() {
                let residues: Vec<(u64, u64)> =
                    pieces.iter().zip(&rows).map(|(p, rs)| (rs[r][k] as u64, p.field.modulus())).collect();
                let (a, m) = crt_combine(&residues);
                let x: Rat = rational_reconstruct(&a, &m).ok_or(IdealError::Reconstruction)?;
                if !x.is_zero() {
                    let e = table.monomials[members[k] as usize].exponents();
                    terms.push((Monomial(e), x));
                }
            }
            out.push(MPoly::from_terms(RationalField, v_vars(), terms));
        }
    }
    Ok(out)
}

/// Rational basis of a piece, adding primes until two successive
/// reconstructions agree and the result reduces back to every prime used.
pub fn reconstruct_stable<F>(seed: u64, f: F) -> Result<Vec<RatPoly>, IdealError>
where
    F: Fn(PrimeField) -> Result<GradedPiece, IdealError>,
{
    let primes = select_primes(seed ^ 0x5eed, crate::exact::prime_list().len());
    let mut pieces = Vec::new();
    let mut last: Option<Vec<RatPoly>> = None;
    for p in primes {
        pieces.push(f(PrimeField::new(p)?)?);
        if pieces.len() < 2 {
            continue;
        }
        if let Ok(r) = reconstruct(&pieces) {
            if last.as_ref() == Some(&r) {
                return Ok(r);
            }
            last = Some(r);
        }
    }
    Err(IdealError::Reconstruction)
}
