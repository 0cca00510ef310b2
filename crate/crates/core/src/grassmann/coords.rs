use std::sync::{Arc, OnceLock};

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::GrassmannError;
use crate::exact::{format_rat, parse_rat, rat, Rat, RationalField};
use crate::poly::{MPoly, Monomial, RatPoly, VarSet};

/// Index pairs of the Plücker coordinates, in the order p01 .. p23.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Number of quadric coefficients c0..c20.
pub const NC: usize = 21;
/// Number of gauge-invariant coordinates v0..v19.
pub const NV: usize = 20;

/// The three coefficients moved by the gauge action: c5, c9, c12.
pub const GAUGE: [(usize, i64); 3] = [(5, 1), (9, -1), (12, 1)];

/// Position of the symmetric-matrix entry `(a, b)` in the list c0..c20
/// (upper triangle, row by row).
pub const fn c_index(a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    a * 6 - a * (a.saturating_sub(1)) / 2 + (b - a)
}

/// Row and column of coefficient `k` in the symmetric matrix.
pub fn c_entry(k: usize) -> (usize, usize) {
    for a in 0..6 {
        for b in a..6 {
            if c_index(a, b) == k {
                return (a, b);
            }
        }
    }
    panic!("coefficient index {k} out of range")
}

/// Invariant coordinate index for `c_k` with the gauge fixed by c12 = 0;
/// `None` for c12 itself.
pub const fn invariant_slot(k: usize) -> Option<usize> {
    if k < 12 {
        Some(k)
    } else if k == 12 {
        None
    } else {
        Some(k - 1)
    }
}

/// Coefficient index carrying invariant coordinate `i`.
pub const fn coefficient_of_slot(i: usize) -> usize {
    if i < 12 {
        i
    } else {
        i + 1
    }
}

fn cached(cell: &'static OnceLock<Arc<VarSet>>, f: impl FnOnce() -> Arc<VarSet>) -> Arc<VarSet> {
    cell.get_or_init(f).clone()
}

pub fn plucker_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    cached(&V, || VarSet::new(["p01", "p02", "p03", "p12", "p13", "p23"]).expect("names"))
}

pub fn c_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    cached(&V, || VarSet::indexed("c", NC))
}

pub fn v_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    cached(&V, || VarSet::indexed("v", NV))
}

/// The Plücker relation p01 p23 - p02 p13 + p03 p12.
pub fn plucker_relation() -> RatPoly {
    QuadricCoeffs::plucker().to_form()
}

/// Dual Plücker coordinates (q01, .., q23) of a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlueckerVector(pub [Rat; 6]);

impl PlueckerVector {
    /// The 2x2 minors of a 2x4 frame whose rows span the line.
    pub fn from_frame(rows: &[[Rat; 4]; 2]) -> Self {
        PlueckerVector(PAIRS.map(|(i, j)| &rows[0][i] * &rows[1][j] - &rows[0][j] * &rows[1][i]))
    }

    pub fn relation(&self) -> Rat {
        let q = &self.0;
        &q[0] * &q[5] - &q[1] * &q[4] + &q[2] * &q[3]
    }

    /// Nonzero and on the Grassmannian.
    pub fn validate(&self) -> Result<(), GrassmannError> {
        if self.0.iter().all(Zero::is_zero) || !self.relation().is_zero() {
            return Err(GrassmannError::NotALine);
        }
        Ok(())
    }
}

/// Coefficients c0..c20 of a quadratic form in Plücker coordinates, read as
/// the upper triangle of its symmetric 6x6 matrix.
///
/// Diagonal entries are coefficients of squares; an off-diagonal entry is
/// half the coefficient of the corresponding mixed monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadricCoeffs(pub [Rat; NC]);

impl QuadricCoeffs {
    pub fn zero() -> Self {
        QuadricCoeffs(std::array::from_fn(|_| Rat::zero()))
    }

    pub fn from_ints(c: [i64; NC]) -> Self {
        QuadricCoeffs(c.map(|x| rat(x, 1)))
    }

    /// The Plücker relation: 1/2 at c5 and c12, -1/2 at c9.
    pub fn plucker() -> Self {
        let mut q = Self::zero();
        for (k, s) in GAUGE {
            q.0[k] = rat(s, 2);
        }
        q
    }

    pub fn get(&self, a: usize, b: usize) -> &Rat {
        &self.0[c_index(a, b)]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        QuadricCoeffs(std::array::from_fn(|i| &self.0[i] * k))
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadricCoeffs(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    /// `Q + mu * P` as a quadratic form.
    pub fn add_plucker(&self, mu: &Rat) -> Self {
        self.add(&Self::plucker().scale(mu))
    }

    /// The gauge substitution c5 += lambda, c9 -= lambda, c12 += lambda.
    pub fn gauge(&self, lambda: &Rat) -> Self {
        let mut q = self.clone();
        for (k, s) in GAUGE {
            q.0[k] += lambda * Rat::from_integer(s.into());
        }
        q
    }

    pub fn to_form(&self) -> RatPoly {
        let vars = plucker_vars();
        let mut terms = Vec::new();
        for a in 0..6 {
            for b in a..6 {
                let c = self.get(a, b);
                if c.is_zero() {
                    continue;
                }
                let mut m = Monomial::one(6);
                m.0[a] += 1;
                m.0[b] += 1;
                terms.push((m, if a == b { c.clone() } else { c * rat(2, 1) }));
            }
        }
        MPoly::from_terms(RationalField, vars, terms)
    }

    /// Reads a quadratic form in the six Plücker variables.
    pub fn from_form(q: &RatPoly) -> Result<Self, GrassmannError> {
        if q.vars().len() != 6 {
            return Err(GrassmannError::NotQuadratic);
        }
        let mut out = Self::zero();
        for (m, c) in q.terms() {
            if m.degree() != 2 {
                return Err(GrassmannError::NotQuadratic);
            }
            let idx: Vec<usize> = (0..6).flat_map(|i| std::iter::repeat(i).take(m.0[i] as usize)).collect();
            let (a, b) = (idx[0], idx[1]);
            out.0[c_index(a, b)] = if a == b { c.clone() } else { c / rat(2, 1) };
        }
        Ok(out)
    }

    /// Canonical representative c12 = 0 of the gauge orbit, as 20 coordinates.
    pub fn invariant(&self) -> InvariantVector {
        let fixed = self.gauge(&-self.0[12].clone());
        InvariantVector(std::array::from_fn(|i| fixed.0[coefficient_of_slot(i)].clone()))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rat).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<Self, GrassmannError> {
        if s.len() != NC {
            return Err(GrassmannError::Length { expected: NC, got: s.len() });
        }
        let mut q = Self::zero();
        for (x, t) in q.0.iter_mut().zip(s) {
            *x = parse_rat(t)?;
        }
        Ok(q)
    }

    /// Largest absolute numerator or denominator, for size reports.
    pub fn height(&self) -> Rat {
        self.0
            .iter()
            .map(|x| Rat::from_integer(x.numer().abs().max(x.denom().clone())))
            .max()
            .unwrap_or_else(Rat::zero)
    }
}

/// The 20 gauge-invariant coordinates
/// (c0..c4, c5 - c12, c6..c8, c9 + c12, c10, c11, c13..c20).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantVector(#[serde(with = "rat_array")] pub [Rat; NV]);

impl InvariantVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The representative with c12 = 0.
    pub fn to_quadric(&self) -> QuadricCoeffs {
        let mut q = QuadricCoeffs::zero();
        for i in 0..NV {
            q.0[coefficient_of_slot(i)] = self.0[i].clone();
        }
        q
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rat).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<Self, GrassmannError> {
        if s.len() != NV {
            return Err(GrassmannError::Length { expected: NV, got: s.len() });
        }
        let mut v: [Rat; NV] = std::array::from_fn(|_| Rat::zero());
        for (x, t) in v.iter_mut().zip(s) {
            *x = parse_rat(t)?;
        }
        Ok(InvariantVector(v))
    }
}

mod rat_array {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{InvariantVector, NV};
    use crate::exact::{format_rat, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat; NV], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rat; NV], D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        InvariantVector::from_strings(&strings).map(|v| v.0).map_err(D::Error::custom)
    }
}

/// Symbolic images of c0..c20 in the invariant ring under c12 = 0.
pub fn invariant_images() -> Vec<RatPoly> {
    let v = v_vars();
    (0..NC)
        .map(|k| match invariant_slot(k) {
            Some(i) => MPoly::var(RationalField, v.clone(), i),
            None => MPoly::zero(RationalField, v.clone()),
        })
        .collect()
}
