//! Degree-d monomials in the 20 invariant variables, packed into `u64`, and
//! their partition into weight classes of a diagonal torus action.

use std::collections::HashMap;
use std::sync::Arc;

use crate::grassmann::{c_entry, coefficient_of_slot, NV, PAIRS};
use crate::poly::Monomial;

use super::IdealError;

/// Bits per exponent in a packed monomial.
pub const BITS: u32 = 3;
/// Largest supported degree (so that exponents fit in `BITS` bits).
pub const MAX_DEGREE: u32 = 7;

/// A monomial with exponents packed `BITS` bits per variable; products of
/// monomials of total degree at most `MAX_DEGREE` are sums of packed words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Packed(pub u64);

impl Packed {
    pub fn from_exponents(e: &[u16]) -> Result<Packed, IdealError> {
        if e.len() != NV {
            return Err(IdealError::Arity(e.len()));
        }
        if e.iter().map(|&x| x as u32).sum::<u32>() > MAX_DEGREE {
            return Err(IdealError::DegreeCap(MAX_DEGREE));
        }
        Ok(Packed(e.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (x as u64) << (BITS * i as u32))))
    }

    pub fn var(i: usize) -> Packed {
        Packed(1u64 << (BITS * i as u32))
    }

    pub fn exponent(self, i: usize) -> u16 {
        ((self.0 >> (BITS * i as u32)) & ((1 << BITS) - 1)) as u16
    }

    pub fn exponents(self) -> Vec<u16> {
        (0..NV).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..NV).map(|i| self.exponent(i) as u32).sum()
    }

    /// Product; the caller keeps total degree within `MAX_DEGREE`.
    pub fn mul(self, other: Packed) -> Packed {
        Packed(self.0 + other.0)
    }
}

/// Weight of the torus acting on the four coordinates of projective
/// 3-space; each component counts how often an index occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub [u8; 4]);

impl Weight {
    pub fn add(self, o: Weight) -> Weight {
        Weight(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn checked_sub(self, o: Weight) -> Option<Weight> {
        let mut w = [0u8; 4];
        for i in 0..4 {
            w[i] = self.0[i].checked_sub(o.0[i])?;
        }
        Some(Weight(w))
    }
}

/// Per-variable weights defining a multigrading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub name: &'static str,
    pub weights: [Weight; NV],
}

impl Grading {
    /// Weight of `v_i`: the sum of the index multisets of the two Plücker
    /// coordinates whose product carries coefficient `c_k`.
    pub fn torus() -> Grading {
        let weights = std::array::from_fn(|i| {
            let (a, b) = c_entry(coefficient_of_slot(i));
            let mut w = [0u8; 4];
            for t in [PAIRS[a].0, PAIRS[a].1, PAIRS[b].0, PAIRS[b].1] {
                w[t] += 1;
            }
            Weight(w)
        });
        Grading { name: "torus", weights }
    }

    /// The ordinary grading: one class per degree.
    pub fn trivial() -> Grading {
        Grading { name: "trivial", weights: [Weight([0; 4]); NV] }
    }

    pub fn weight(&self, m: Packed) -> Weight {
        (0..NV).fold(Weight([0; 4]), |acc, i| {
            let e = m.exponent(i) as u8;
            let w = self.weights[i].0;
            acc.add(Weight(w.map(|x| x * e)))
        })
    }
}

/// One weight class of degree-d monomials.
#[derive(Debug, Clone)]
pub struct WeightClass {
    pub weight: Weight,
    /// Global indices, increasing.
    pub members: Vec<u32>,
}

/// The degree-d monomials in grevlex-descending order, with class lookup.
#[derive(Debug)]
pub struct MonomialTable {
    pub degree: u32,
    pub grading: Grading,
    pub monomials: Vec<Packed>,
    pub classes: Vec<WeightClass>,
    index: HashMap<Packed, (u32, u32)>,
    class_of: HashMap<Weight, usize>,
}

fn compositions(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if prefix.len() == n - 1 {
        prefix.push(d as u16);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for e in (0..=d).rev() {
        prefix.push(e as u16);
        compositions(n, d - e, prefix, out);
        prefix.pop();
    }
}

impl MonomialTable {
    pub fn new(degree: u32, grading: Grading) -> Result<Arc<MonomialTable>, IdealError> {
        if degree > MAX_DEGREE {
            return Err(IdealError::DegreeCap(MAX_DEGREE));
        }
        let mut exps = Vec::new();
        compositions(NV, degree, &mut Vec::new(), &mut exps);
        let mut monos: Vec<Monomial> = exps.into_iter().map(Monomial).collect();
        monos.sort_by(|a, b| b.grevlex(a));
        let monomials: Vec<Packed> =
            monos.iter().map(|m| Packed::from_exponents(&m.0)).collect::<Result<_, _>>()?;
        let mut class_of: HashMap<Weight, usize> = HashMap::new();
        let mut classes: Vec<WeightClass> = Vec::new();
        let mut index = HashMap::with_capacity(monomials.len());
        for (g, &m) in monomials.iter().enumerate() {
            let w = grading.weight(m);
            let c = *class_of.entry(w).or_insert_with(|| {
                classes.push(WeightClass { weight: w, members: Vec::new() });
                classes.len() - 1
            });
            index.insert(m, (c as u32, classes[c].members.len() as u32));
            classes[c].members.push(g as u32);
        }
        Ok(Arc::new(MonomialTable { degree, grading, monomials, classes, index, class_of }))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// `(class, position in class)` of a monomial of this degree.
    pub fn locate(&self, m: Packed) -> Option<(usize, usize)> {
        self.index.get(&m).map(|&(c, p)| (c as usize, p as usize))
    }

    pub fn class_of(&self, w: Weight) -> Option<usize> {
        self.class_of.get(&w).copied()
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].members.len()
    }

    pub fn largest_class(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).max().unwrap_or(0)
    }

    pub fn global_index(&self, m: Packed) -> Option<usize> {
        self.locate(m).map(|(c, p)| self.classes[c].members[p] as usize)
    }

    pub fn monomial_text(&self, g: usize) -> String {
        let m = self.monomials[g];
        let mut parts = Vec::new();
        for i in 0..NV {
            match m.exponent(i) {
                0 => {}
                1 => parts.push(format!("v{i}")),
                e => parts.push(format!("v{i}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Number of degree-d monomials in `n` variables.
pub fn monomial_count(n: u64, d: u64) -> u64 {
    let mut r = 1u64;
    for k in 1..=d {
        r = r * (n - 1 + k) / k;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(monomial_count(20, 2), 210);
        assert_eq!(monomial_count(20, 3), 1540);
        assert_eq!(monomial_count(20, 4), 8855);
        let t = MonomialTable::new(2, Grading::torus()).unwrap();
        assert_eq!(t.len(), 210);
        assert_eq!(t.classes.len(), 85);
        assert_eq!(t.largest_class(), 12);
        let t3 = MonomialTable::new(3, Grading::torus()).unwrap();
        assert_eq!((t3.len(), t3.classes.len(), t3.largest_class()), (1540, 231, 42));
        assert_eq!(MonomialTable::new(3, Grading::trivial()).unwrap().classes.len(), 1);
    }

    #[test]
    fn order_and_lookup() {
        let t = MonomialTable::new(2, Grading::torus()).unwrap();
        assert_eq!(t.monomial_text(0), "v0^2");
        assert_eq!(t.monomial_text(1), "v0*v1");
        assert_eq!(t.monomial_text(209), "v19^2");
        for g in 0..t.len() {
            assert_eq!(t.global_index(t.monomials[g]), Some(g));
        }
        let m = Packed::var(3).mul(Packed::var(7));
        assert_eq!(m.degree(), 2);
        assert_eq!(m.exponent(7), 1);
    }

    #[test]
    fn middle_coefficients_share_a_weight() {
        let g = Grading::torus();
        assert_eq!(g.weights[5], Weight([1, 1, 1, 1]));
        assert_eq!(g.weights[9], Weight([1, 1, 1, 1]));
        assert_eq!(g.weights[0], Weight([2, 2, 0, 0]));
    }
}
