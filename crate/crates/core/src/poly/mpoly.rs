use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::varset::same_vars;
use super::{Monomial, PolyError, VarSet};
use crate::exact::{Field, PrimeField, Rat, RationalField};

/// Sparse polynomial with coefficients in `F`.
///
/// Terms are kept sorted by descending grevlex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Debug, Clone)]
pub struct MPoly<F: Field> {
    field: F,
    vars: Arc<VarSet>,
    terms: Vec<(Monomial, F::Elem)>,
}

pub type RatPoly = MPoly<RationalField>;
pub type FpPoly = MPoly<PrimeField>;

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.field == other.field && self.terms == other.terms
    }
}

impl<F: Field> Eq for MPoly<F> {}

impl<F: Field> MPoly<F> {
    pub fn zero(field: F, vars: Arc<VarSet>) -> Self {
        MPoly { field, vars, terms: Vec::new() }
    }

    pub fn constant(field: F, vars: Arc<VarSet>, c: F::Elem) -> Self {
        let n = vars.len();
        Self::from_terms(field, vars, vec![(Monomial::one(n), c)])
    }

    pub fn one(field: F, vars: Arc<VarSet>) -> Self {
        let c = field.one();
        Self::constant(field, vars, c)
    }

    pub fn var(field: F, vars: Arc<VarSet>, i: usize) -> Self {
        let n = vars.len();
        let c = field.one();
        MPoly { field, vars, terms: vec![(Monomial::var(n, i), c)] }
    }

    pub fn var_named(field: F, vars: Arc<VarSet>, name: &str) -> Result<Self, PolyError> {
        let i = vars.index(name)?;
        Ok(Self::var(field, vars, i))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(field: F, vars: Arc<VarSet>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), vars.len());
            match acc.get_mut(&m) {
                Some(x) => *x = field.add(x, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(field, vars, acc)
    }

    fn from_map(field: F, vars: Arc<VarSet>, acc: HashMap<Monomial, F::Elem>) -> Self {
        let mut terms: Vec<(Monomial, F::Elem)> =
            acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.grevlex(&a.0));
        MPoly { field, vars, terms }
    }

    /// Wraps terms already sorted, merged and nonzero.
    pub(crate) fn from_sorted(field: F, vars: Arc<VarSet>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0.grevlex(&w[1].0).is_gt()));
        MPoly { field, vars, terms }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .binary_search_by(|(t, _)| m.grevlex(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        MPoly { field: self.field.clone(), vars: self.vars.clone(), terms }
    }

    /// Degree in the single variable `i`.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0)
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if same_vars(&self.vars, &other.vars) && self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::VarSetMismatch)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.grevlex(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), if negate { f.neg(cb) } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { f.neg(c) } else { c.clone() })),
        );
        MPoly { field: f.clone(), vars: self.vars.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f.clone(), self.vars.clone()));
        }
        let mut acc: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = f.add(x, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_map(f.clone(), self.vars.clone(), acc))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f.clone(), self.vars.clone());
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), f.mul(x, c))).collect();
        MPoly { field: f.clone(), vars: self.vars.clone(), terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Self::zero(f.clone(), self.vars.clone());
        }
        // Multiplying by a monomial preserves grevlex order.
        let terms = self.terms.iter().map(|(t, x)| (t.mul(m), f.mul(x, c))).collect();
        MPoly { field: f.clone(), vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.field.clone(), self.vars.clone());
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Partial derivative by variable index.
    pub fn diff(&self, i: usize) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] > 0)
            .map(|(m, c)| {
                let mut e = m.clone();
                let k = e.0[i];
                e.0[i] -= 1;
                (e, f.mul(c, &f.from_i64(k as i64)))
            })
            .collect();
        // Lowering one exponent can reorder terms, so normalize again.
        Self::from_terms(f.clone(), self.vars.clone(), terms)
    }

    pub fn differentiate(&self, name: &str) -> Result<Self, PolyError> {
        Ok(self.diff(self.vars.index(name)?))
    }

    /// Applies the ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[MPoly<F>]) -> Result<Self, PolyError> {
        if images.len() < self.vars.len() {
            let missing = self.vars.name(images.len()).to_string();
            return Err(PolyError::MissingImage(missing));
        }
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        if images.iter().any(|p| !same_vars(&p.vars, &target) || p.field != self.field) {
            return Err(PolyError::VarSetMismatch);
        }
        let f = &self.field;
        // Cache powers of each image.
        let mut powers: Vec<Vec<MPoly<F>>> =
            vec![vec![MPoly::one(f.clone(), target.clone())]; images.len()];
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(f.clone(), target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(x) => *x = f.add(x, &tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(Self::from_map(f.clone(), target, acc))
    }

    /// Substitution keyed by variable name; every variable needs an image.
    pub fn substitute_named(&self, images: &HashMap<String, MPoly<F>>) -> Result<Self, PolyError> {
        let ordered = self
            .vars
            .names()
            .iter()
            .map(|n| images.get(n).cloned().ok_or_else(|| PolyError::MissingImage(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.substitute(&ordered)
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::VarSetMismatch);
        }
        let f = &self.field;
        let mut total = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = f.mul(&t, x);
                }
            }
            total = f.add(&total, &t);
        }
        Ok(total)
    }

    /// Re-expresses the polynomial over another field through `conv`.
    pub fn map_coeffs<G: Field>(
        &self,
        field: G,
        mut conv: impl FnMut(&F::Elem) -> Result<G::Elem, PolyError>,
    ) -> Result<MPoly<G>, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let x = conv(c)?;
            if !field.is_zero(&x) {
                terms.push((m.clone(), x));
            }
        }
        Ok(MPoly { field, vars: self.vars.clone(), terms })
    }

    /// Moves the polynomial into a varset with the same names in a different
    /// order, or into a superset; `positions[i]` is the new index of var `i`.
    pub fn relabel(&self, vars: Arc<VarSet>, positions: &[usize]) -> Self {
        let n = vars.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.0.iter().enumerate() {
                    e[positions[i]] += x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Self::from_terms(self.field.clone(), vars, terms)
    }

    /// Division with remainder by a single divisor (grevlex), over a field.
    ///
    /// Returns `(quotient, remainder)` with `self = quotient * g + remainder`
    /// and no term of the remainder divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        self.check_vars(g)?;
        let f = &self.field;
        let (lm, lc) = g.leading_term().ok_or(PolyError::DivisionByZero)?.clone();
        let lc_inv = f.inv(&lc).ok_or(PolyError::DivisionByZero)?;
        let mut work = self.clone();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = work.terms.first().cloned() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = f.mul(&c, &lc_inv);
                work = work.merge(&g.mul_term(&qm, &qc), true);
                quot.push((qm, qc));
            } else {
                rem.push(work.terms.remove(0));
            }
        }
        Ok((
            Self::from_terms(f.clone(), self.vars.clone(), quot),
            Self::from_sorted(f.clone(), self.vars.clone(), rem),
        ))
    }
}

impl MPoly<RationalField> {
    pub fn reduce_mod(&self, p: PrimeField) -> Result<FpPoly, PolyError> {
        self.map_coeffs(p, |c| p.from_rat(c).map_err(PolyError::from))
    }

    pub fn eval_rat(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        self.eval(point)
    }
}

impl<'a, F: Field> Add for &'a MPoly<F> {
    type Output = MPoly<F>;
    /// Panics on mismatched variable sets; see [`MPoly::checked_add`].
    fn add(self, o: &'a MPoly<F>) -> MPoly<F> {
        self.checked_add(o).expect("variable sets must agree")
    }
}

impl<'a, F: Field> Sub for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, o: &'a MPoly<F>) -> MPoly<F> {
        self.checked_sub(o).expect("variable sets must agree")
    }
}

impl<'a, F: Field> Mul for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, o: &'a MPoly<F>) -> MPoly<F> {
        self.checked_mul(o).expect("variable sets must agree")
    }
}

impl<'a, F: Field> Neg for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        let f = &self.field;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect();
        MPoly { field: f.clone(), vars: self.vars.clone(), terms }
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, o: MPoly<F>) -> MPoly<F> {
        &self + &o
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, o: MPoly<F>) -> MPoly<F> {
        &self - &o
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, o: MPoly<F>) -> MPoly<F> {
        &self * &o
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        -&self
    }
}
