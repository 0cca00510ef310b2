//! Seeded witness sampling, witness archives and Jacobian ranks of the
//! family parameterizations.

use std::fmt;
use std::io::{BufRead, Write};

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::constructors::*;
use super::ComponentError;
use crate::exact::{rat, Jet, Rat, RatMatrix, Scalar};
use crate::grassmann::{coefficient_of_slot, InvariantVector, NC, NV};

/// Parameters are drawn uniformly from `[-PARAM_BOUND, PARAM_BOUND]`.
pub const PARAM_BOUND: i64 = 50;
/// Degenerate draws are retried at most this many times.
pub const MAX_RETRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Hurwitz,
    ChowLines,
    ChowConic,
    Squares,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Hurwitz, Family::ChowLines, Family::ChowConic, Family::Squares];

    pub fn name(self) -> &'static str {
        match self {
            Family::Hurwitz => "hurwitz",
            Family::ChowLines => "chow-lines",
            Family::ChowConic => "chow-conic",
            Family::Squares => "squares",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_lowercase();
        match key.as_str() {
            "hurwitz" => Some(Family::Hurwitz),
            "chowlines" | "lines" | "linepairs" => Some(Family::ChowLines),
            "chowconic" | "conic" | "conics" => Some(Family::ChowConic),
            "squares" | "square" => Some(Family::Squares),
            _ => None,
        }
    }

    /// Number of integer parameters of one draw.
    pub fn param_count(self) -> usize {
        match self {
            Family::Hurwitz => 10,
            Family::ChowLines => 16,
            Family::ChowConic => 14,
            Family::Squares => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Generating data of a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Params {
    /// Upper triangle of the surface matrix.
    Hurwitz { m: [i64; 10] },
    /// Two 2x4 frames.
    ChowLines { l1: [[i64; 4]; 2], l2: [[i64; 4]; 2] },
    /// `M0 = v v^T` and the upper triangle of `M1`.
    ChowConic { v: [i64; 4], m1: [i64; 10] },
    /// Coefficients of the linear form on p01..p23.
    Squares { ell: [i64; 6] },
}

impl Params {
    pub fn family(&self) -> Family {
        match self {
            Params::Hurwitz { .. } => Family::Hurwitz,
            Params::ChowLines { .. } => Family::ChowLines,
            Params::ChowConic { .. } => Family::ChowConic,
            Params::Squares { .. } => Family::Squares,
        }
    }

    pub fn flat(&self) -> Vec<i64> {
        match self {
            Params::Hurwitz { m } => m.to_vec(),
            Params::ChowLines { l1, l2 } => l1.iter().chain(l2).flatten().copied().collect(),
            Params::ChowConic { v, m1 } => v.iter().chain(m1).copied().collect(),
            Params::Squares { ell } => ell.to_vec(),
        }
    }

    pub fn from_flat(family: Family, x: &[i64]) -> Result<Params, ComponentError> {
        if x.len() != family.param_count() {
            return Err(ComponentError::ParamsMismatch(family));
        }
        let arr = |s: usize| -> [i64; 4] { std::array::from_fn(|i| x[s + i]) };
        Ok(match family {
            Family::Hurwitz => Params::Hurwitz { m: std::array::from_fn(|i| x[i]) },
            Family::ChowLines => Params::ChowLines { l1: [arr(0), arr(4)], l2: [arr(8), arr(12)] },
            Family::ChowConic => Params::ChowConic { v: arr(0), m1: std::array::from_fn(|i| x[4 + i]) },
            Family::Squares => Params::Squares { ell: std::array::from_fn(|i| x[i]) },
        })
    }
}

/// A sampled member of one family together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPoint {
    pub family: Family,
    pub seed: u64,
    pub params: Params,
    pub v: InvariantVector,
}

impl WitnessPoint {
    /// Rebuilds a witness from its parameters, checking nondegeneracy.
    pub fn from_params(seed: u64, params: Params) -> Result<WitnessPoint, ComponentError> {
        let family = params.family();
        let x: Vec<Rat> = params.flat().iter().map(|&n| rat(n, 1)).collect();
        if !nondegenerate(family, &x) {
            return Err(ComponentError::DegenerateLimit);
        }
        let inv = to_invariant(&parameterize(family, &x)?);
        let v = InvariantVector(std::array::from_fn(|i| inv[i].clone()));
        Ok(WitnessPoint { family, seed, params, v })
    }
}

fn sym<T: Scalar>(x: &[T]) -> SymMatrix4<T> {
    SymMatrix4(std::array::from_fn(|i| x[i].clone()))
}

fn frame<T: Scalar>(x: &[T]) -> [[T; 4]; 2] {
    std::array::from_fn(|r| std::array::from_fn(|c| x[4 * r + c].clone()))
}

/// The c-vector produced by the family constructor from flat parameters.
pub fn parameterize<T: Scalar>(family: Family, x: &[T]) -> Result<[T; NC], ComponentError> {
    if x.len() != family.param_count() {
        return Err(ComponentError::ParamsMismatch(family));
    }
    Ok(match family {
        Family::Hurwitz => hurwitz_coeffs(&sym(x)),
        Family::ChowLines => {
            let q1 = frame_minors(&frame(&x[..8]));
            let q2 = frame_minors(&frame(&x[8..]));
            product_coeffs(&meet_coeffs(&q1), &meet_coeffs(&q2))
        }
        Family::ChowConic => {
            let v: [T; 4] = std::array::from_fn(|i| x[i].clone());
            mixed_compound(&SymMatrix4::outer(&v), &sym(&x[4..]))
        }
        Family::Squares => {
            let ell: [T; 6] = std::array::from_fn(|i| x[i].clone());
            square_coeffs(&ell)
        }
    })
}

fn to_invariant<T: Scalar>(c: &[T; NC]) -> Vec<T> {
    // The canonical representative has c12 = 0: shift by -c12 along the gauge.
    let shift = c[12].clone();
    (0..NV)
        .map(|i| {
            let k = coefficient_of_slot(i);
            match k {
                5 => c[5].clone() - shift.clone(),
                9 => c[9].clone() + shift.clone(),
                _ => c[k].clone(),
            }
        })
        .collect()
}

fn nondegenerate(family: Family, x: &[Rat]) -> bool {
    match family {
        Family::Hurwitz => !sym(x).determinant().is_zero(),
        Family::ChowLines => {
            let q1 = frame_minors(&frame(&x[..8]));
            let q2 = frame_minors(&frame(&x[8..]));
            let nonzero = |q: &[Rat; 6]| q.iter().any(|e| !e.is_zero());
            let rows = vec![q1.to_vec(), q2.to_vec()];
            nonzero(&q1) && nonzero(&q2) && RatMatrix::from_rows(rows).expect("rect").rank() == 2
        }
        Family::ChowConic => {
            // Smooth conic: M1 is nondegenerate on the plane v^perp, i.e. the
            // bordered matrix [[M1, v], [v^T, 0]] is invertible.
            let m1 = sym(&x[4..]);
            let rows: Vec<Vec<Rat>> = (0..5)
                .map(|i| {
                    (0..5)
                        .map(|j| match (i < 4, j < 4) {
                            (true, true) => m1.get(i, j).clone(),
                            (true, false) => x[i].clone(),
                            (false, true) => x[j].clone(),
                            (false, false) => Rat::zero(),
                        })
                        .collect()
                })
                .collect();
            x[..4].iter().any(|e| !e.is_zero()) && RatMatrix::from_rows(rows).expect("square").rank() == 5
        }
        Family::Squares => x.iter().any(|e| !e.is_zero()),
    }
}

fn rng_for(family: Family, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(family as u64 + 1);
    rng
}

/// A deterministic witness of `family` for `seed`.
pub fn sample(family: Family, seed: u64) -> Result<WitnessPoint, ComponentError> {
    let mut rng = rng_for(family, seed);
    for _ in 0..MAX_RETRIES {
        let ints: Vec<i64> = (0..family.param_count()).map(|_| rng.gen_range(-PARAM_BOUND..=PARAM_BOUND)).collect();
        let params = Params::from_flat(family, &ints)?;
        match WitnessPoint::from_params(seed, params) {
            Ok(w) => return Ok(w),
            Err(ComponentError::DegenerateLimit) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ComponentError::SamplingExhausted { family, seed, retries: MAX_RETRIES })
}

/// Witnesses for seeds `first, first + 1, ..`.
pub fn sample_many(family: Family, first: u64, count: usize) -> Result<Vec<WitnessPoint>, ComponentError> {
    (0..count as u64).map(|k| sample(family, first + k)).collect()
}

/// Rank of the exact Jacobian of `params -> invariant vector` at the
/// parameters of `sample(family, seed)`: the dimension of the affine cone
/// over the family.
pub fn tangent_dimension(family: Family, seed: u64) -> Result<usize, ComponentError> {
    let w = sample(family, seed)?;
    let n = family.param_count();
    let x: Vec<Jet> = w.params.flat().iter().enumerate().map(|(i, &p)| Jet::variable(rat(p, 1), i, n)).collect();
    let v = to_invariant(&parameterize(family, &x)?);
    let rows: Vec<Vec<Rat>> = v.iter().map(|e| e.gradient(n)).collect();
    Ok(RatMatrix::from_rows(rows).expect("rect").rank())
}

/// Writes one JSON record per line.
pub fn write_archive<W: Write>(out: &mut W, witnesses: &[WitnessPoint]) -> Result<(), ComponentError> {
    for w in witnesses {
        let line = serde_json::to_string(w).map_err(|e| ComponentError::Archive(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| ComponentError::Archive(e.to_string()))?;
    }
    Ok(())
}

/// Reads an archive, re-deriving every invariant vector from its parameters.
pub fn read_archive<R: BufRead>(input: R) -> Result<Vec<WitnessPoint>, ComponentError> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line.map_err(|e| ComponentError::Archive(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let w: WitnessPoint = serde_json::from_str(&line).map_err(|e| ComponentError::Archive(e.to_string()))?;
        let rebuilt = WitnessPoint::from_params(w.seed, w.params.clone())?;
        if rebuilt != w {
            return Err(ComponentError::Archive(format!("record for seed {} does not match its parameters", w.seed)));
        }
        out.push(w);
    }
    Ok(out)
}
