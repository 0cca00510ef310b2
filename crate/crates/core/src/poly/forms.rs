//! Differential forms on affine 4-space with polynomial coefficients.
//!
//! The differentials are those of the first four variables of the
//! coefficient ring; further variables (if any) act as parameters.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{MPoly, PolyError, VarSet};
use crate::exact::Field;

pub const NDIFF: usize = 4;

/// A homogeneous `k`-form: `sum_S f_S dx_S` over `k`-subsets `S` (bit masks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffForm<F: Field> {
    degree: usize,
    field: F,
    vars: Arc<VarSet>,
    terms: BTreeMap<u8, MPoly<F>>,
}

/// Sign of moving the differentials of `t` past those of `s` into sorted
/// position: (-1)^#{(i, j) : i in s, j in t, i > j}.
fn shuffle_sign(s: u8, t: u8) -> bool {
    let mut inversions = 0;
    for i in 0..NDIFF {
        if s & (1 << i) != 0 {
            inversions += (t & ((1u8 << i) - 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

impl<F: Field> DiffForm<F> {
    pub fn zero(field: F, vars: Arc<VarSet>, degree: usize) -> Result<Self, PolyError> {
        if degree > NDIFF {
            return Err(PolyError::DegreeOverflow);
        }
        if vars.len() < NDIFF {
            return Err(PolyError::VarSetMismatch);
        }
        Ok(DiffForm { degree, field, vars, terms: BTreeMap::new() })
    }

    /// The 0-form `f`.
    pub fn function(f: MPoly<F>) -> Result<Self, PolyError> {
        let mut w = Self::zero(f.field().clone(), f.vars().clone(), 0)?;
        w.add_term(0, f);
        Ok(w)
    }

    /// `dx_i` scaled by `f`.
    pub fn basis(f: MPoly<F>, i: usize) -> Result<Self, PolyError> {
        if i >= NDIFF {
            return Err(PolyError::DegreeOverflow);
        }
        let mut w = Self::zero(f.field().clone(), f.vars().clone(), 1)?;
        w.add_term(1 << i, f);
        Ok(w)
    }

    /// `sum_i coeffs[i] dx_i`.
    pub fn one_form(coeffs: [MPoly<F>; NDIFF]) -> Result<Self, PolyError> {
        let mut w = Self::zero(coeffs[0].field().clone(), coeffs[0].vars().clone(), 1)?;
        for (i, c) in coeffs.into_iter().enumerate() {
            w.add_term(1 << i, c);
        }
        Ok(w)
    }

    fn add_term(&mut self, mask: u8, f: MPoly<F>) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mask) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<u8, MPoly<F>> {
        &self.terms
    }

    /// Coefficient of `dx_S` (zero if absent).
    pub fn coeff(&self, mask: u8) -> MPoly<F> {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| MPoly::zero(self.field.clone(), self.vars.clone()))
    }

    /// Coefficient of `dx_0 ^ dx_1 ^ dx_2 ^ dx_3` for a 4-form.
    pub fn top_coefficient(&self) -> MPoly<F> {
        self.coeff(0b1111)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch);
        }
        let mut out = self.clone();
        for (&m, f) in &other.terms {
            out.add_term(m, f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, f: &MPoly<F>) -> Self {
        let mut out = DiffForm { terms: BTreeMap::new(), ..self.clone() };
        for (&m, g) in &self.terms {
            out.add_term(m, g * f);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, PolyError> {
        let degree = self.degree + other.degree;
        if degree > NDIFF {
            return Err(PolyError::DegreeOverflow);
        }
        let mut out = Self::zero(self.field.clone(), self.vars.clone(), degree)?;
        for (&s, f) in &self.terms {
            for (&t, g) in &other.terms {
                if s & t != 0 {
                    continue;
                }
                let prod = f.checked_mul(g)?;
                out.add_term(s | t, if shuffle_sign(s, t) { -&prod } else { prod });
            }
        }
        Ok(out)
    }

    pub fn exterior_derivative(&self) -> Result<Self, PolyError> {
        if self.degree >= NDIFF {
            return Err(PolyError::DegreeOverflow);
        }
        let mut out = Self::zero(self.field.clone(), self.vars.clone(), self.degree + 1)?;
        for (&s, f) in &self.terms {
            for i in 0..NDIFF {
                let bit = 1u8 << i;
                if s & bit != 0 {
                    continue;
                }
                let df = f.diff(i);
                if df.is_zero() {
                    continue;
                }
                // dx_i ^ dx_S
                out.add_term(s | bit, if shuffle_sign(bit, s) { -&df } else { df });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{RationalField, Rat};

    fn ring() -> Arc<VarSet> {
        VarSet::new(["a2", "a3", "b2", "b3"]).unwrap()
    }

    fn var(i: usize) -> MPoly<RationalField> {
        MPoly::var(RationalField, ring(), i)
    }

    fn one() -> MPoly<RationalField> {
        MPoly::one(RationalField, ring())
    }

    #[test]
    fn wedge_basics() {
        let d = |i| DiffForm::basis(one(), i).unwrap();
        assert!(d(0).wedge(&d(0)).unwrap().is_zero());
        let top = d(0).wedge(&d(1)).unwrap().wedge(&d(2)).unwrap().wedge(&d(3)).unwrap();
        assert_eq!(top.top_coefficient(), one());
        let swapped = d(1).wedge(&d(0)).unwrap();
        assert_eq!(swapped.coeff(0b0011), -&one());
        let three = d(0).wedge(&d(1)).unwrap().wedge(&d(2)).unwrap();
        assert!(three.wedge(&three).is_err());
    }

    #[test]
    fn derivative_examples() {
        let c = MPoly::constant(RationalField, ring(), Rat::from_integer(5.into()));
        assert!(DiffForm::basis(c, 0).unwrap().exterior_derivative().unwrap().is_zero());
        // d(a3 da2) = da3 ^ da2 = -da2 ^ da3
        let w = DiffForm::basis(var(1), 0).unwrap().exterior_derivative().unwrap();
        assert_eq!(w.coeff(0b0011), -&one());
        assert_eq!(w.terms().len(), 1);
    }
}
