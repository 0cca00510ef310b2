//! Normal forms of chart polynomials modulo the chart image of `Q`, with
//! coefficients that are polynomials in the quadric's coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::RationalField;
use crate::poly::{Monomial, MPoly, RatPoly, VarSet};

/// Chart monomial ordered by graded reverse lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChartMonomial(pub Monomial);

impl Ord for ChartMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.grevlex(&other.0)
    }
}

impl PartialOrd for ChartMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in a2, a3, b2, b3 with polynomial coefficients in the
/// parameter variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPoly {
    pub params: Arc<VarSet>,
    pub terms: BTreeMap<ChartMonomial, RatPoly>,
}

impl ChartPoly {
    /// Splits a polynomial whose first four variables are the chart
    /// variables and whose remaining variables are `params`.
    pub fn split(f: &RatPoly, params: Arc<VarSet>) -> ChartPoly {
        assert_eq!(f.vars().len(), 4 + params.len(), "ring must be chart variables + parameters");
        let mut groups: BTreeMap<ChartMonomial, Vec<(Monomial, crate::exact::Rat)>> = BTreeMap::new();
        for (m, c) in f.terms() {
            let chart = Monomial(m.0[..4].to_vec());
            let rest = Monomial(m.0[4..].to_vec());
            groups.entry(ChartMonomial(chart)).or_default().push((rest, c.clone()));
        }
        let terms = groups
            .into_iter()
            .map(|(k, t)| (k, MPoly::from_terms(RationalField, params.clone(), t)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        ChartPoly { params, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&ChartMonomial, &RatPoly)> {
        self.terms.iter().next_back()
    }
}

/// How the leading chart-coefficient `LC` of `Q` enters the remainder.
///
/// Every variant runs the same top-down reduction; they differ in which
/// power of `LC` multiplies each remainder coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PseudoDivision {
    /// Each step multiplies the working polynomial and the remainder collected
    /// so far by `LC`: the classical pseudo-remainder `LC^K f mod Q`.
    Eager,
    /// Each step multiplies the working polynomial only; remainder terms keep
    /// the power of `LC` reached when they were set aside.
    Lazy,
    /// The numerator of the normal form over the fraction field of the
    /// coefficient ring, in lowest terms.
    Reduced,
    /// The eager remainder with every factor of `LC` removed.
    Stripped,
}

impl PseudoDivision {
    pub const ALL: [PseudoDivision; 4] =
        [PseudoDivision::Eager, PseudoDivision::Lazy, PseudoDivision::Reduced, PseudoDivision::Stripped];

    pub fn name(self) -> &'static str {
        match self {
            PseudoDivision::Eager => "eager",
            PseudoDivision::Lazy => "lazy",
            PseudoDivision::Reduced => "reduced",
            PseudoDivision::Stripped => "stripped",
        }
    }
}

/// One remainder term `num / LC^k * m`, set aside after `set_aside` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderTerm {
    pub monomial: Monomial,
    pub num: RatPoly,
    pub k: u32,
    pub set_aside: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub lc: RatPoly,
    pub steps: u32,
    pub terms: Vec<RemainderTerm>,
}

struct LcPowers {
    lc: RatPoly,
    pows: Vec<RatPoly>,
}

impl LcPowers {
    fn new(lc: RatPoly) -> Self {
        let one = MPoly::one(RationalField, lc.vars().clone());
        LcPowers { lc, pows: vec![one] }
    }

    fn get(&mut self, e: u32) -> &RatPoly {
        while self.pows.len() <= e as usize {
            let next = self.pows.last().expect("nonempty") * &self.lc;
            self.pows.push(next);
        }
        &self.pows[e as usize]
    }
}

/// Exact quotient `f / lc` if `lc` divides `f`.
fn divide_exact(f: &RatPoly, lc: &RatPoly) -> Option<RatPoly> {
    let (q, r) = f.div_rem(lc).ok()?;
    r.is_zero().then_some(q)
}

/// Reduces `f` modulo `g` by repeatedly cancelling the largest term of the
/// working polynomial divisible by the leading chart monomial of `g`.
pub fn normal_form(f: &ChartPoly, g: &ChartPoly) -> NormalForm {
    let (lm, lc) = g.leading().map(|(m, c)| (m.0.clone(), c.clone())).expect("nonzero divisor");
    let tail: Vec<(Monomial, RatPoly)> =
        g.terms.iter().rev().skip(1).map(|(m, c)| (m.0.clone(), c.clone())).collect();
    let mut pows = LcPowers::new(lc.clone());
    let mut work: BTreeMap<ChartMonomial, (RatPoly, u32)> =
        f.terms.iter().map(|(m, c)| (m.clone(), (c.clone(), 0))).collect();
    let mut steps = 0;
    let mut terms = Vec::new();
    while let Some((m, (num, k))) = work.pop_last() {
        if !lm.divides(&m.0) {
            terms.push(RemainderTerm { monomial: m.0, num, k, set_aside: steps });
            continue;
        }
        steps += 1;
        let u = lm.quotient_of(&m.0);
        for (mq, cq) in &tail {
            let key = ChartMonomial(mq.mul(&u));
            let delta = -(&num * cq);
            let kd = k + 1;
            let merged = match work.remove(&key) {
                None => (delta, kd),
                Some((n0, k0)) => {
                    let top = k0.max(kd);
                    let a = &n0 * pows.get(top - k0);
                    let b = &delta * pows.get(top - kd);
                    (&a + &b, top)
                }
            };
            if !merged.0.is_zero() {
                work.insert(key, merged);
            }
        }
    }
    NormalForm { lc, steps, terms }
}

impl NormalForm {
    /// Remainder coefficient of one term under a convention.
    pub fn coefficient(&self, term: &RemainderTerm, conv: PseudoDivision) -> RatPoly {
        let pow = |e: u32| self.lc.pow(e);
        match conv {
            PseudoDivision::Eager => &term.num * &pow(self.steps - term.k),
            PseudoDivision::Lazy => &term.num * &pow(term.set_aside - term.k),
            PseudoDivision::Reduced => {
                let mut n = term.num.clone();
                for _ in 0..term.k {
                    match divide_exact(&n, &self.lc) {
                        Some(q) => n = q,
                        None => break,
                    }
                }
                n
            }
            PseudoDivision::Stripped => {
                let mut n = term.num.clone();
                while let Some(q) = divide_exact(&n, &self.lc) {
                    if q.is_zero() {
                        break;
                    }
                    n = q;
                }
                n
            }
        }
    }

    /// Nonzero remainder coefficients in decreasing monomial order.
    pub fn coefficients(&self, conv: PseudoDivision) -> Vec<(Monomial, RatPoly)> {
        let mut out: Vec<(Monomial, RatPoly)> = self
            .terms
            .iter()
            .map(|t| (t.monomial.clone(), self.coefficient(t, conv)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        out.sort_by(|a, b| b.0.grevlex(&a.0));
        out
    }

    /// The remainder with numeric values for the parameters, as a map from
    /// chart monomials to `num / LC^k` evaluated.
    pub fn specialize(&self, point: &[crate::exact::Rat]) -> BTreeMap<ChartMonomial, crate::exact::Rat> {
        let lc = self.lc.eval(point).expect("arity");
        let mut out = BTreeMap::new();
        for t in &self.terms {
            let mut v = t.num.eval(point).expect("arity");
            for _ in 0..t.k {
                v /= &lc;
            }
            if !v.is_zero() {
                out.insert(ChartMonomial(t.monomial.clone()), v);
            }
        }
        out
    }
}
