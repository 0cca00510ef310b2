use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::Rat;

/// Commutative ring elements with owned arithmetic, so one generic routine
/// can run over numbers, polynomials and jets.
pub trait RingElem:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> RingElem for T where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Exact ring scalars that the geometric constructors can run over.
///
/// Implemented by [`Rat`] for plain evaluation and by [`Jet`] for exact
/// first-order derivatives (Jacobians of parameterizations).
pub trait Scalar:
    Clone + Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;
    fn value(&self) -> &Rat;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(n.into()))
    }
    /// Exactly zero, including any derivative part.
    fn vanishes(&self) -> bool {
        *self == Self::from_int(0)
    }
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn value(&self) -> &Rat {
        self
    }
}

/// A value together with its exact gradient: arithmetic in `Q[e_1..e_k]/(e)^2`.
///
/// An empty gradient stands for the zero vector, so constants are cheap.
#[derive(Debug, Clone)]
pub struct Jet {
    pub value: Rat,
    pub grad: Vec<Rat>,
}

impl Jet {
    pub fn constant(value: Rat) -> Self {
        Jet { value, grad: Vec::new() }
    }

    /// The `index`-th of `nvars` independent variables, at `value`.
    pub fn variable(value: Rat, index: usize, nvars: usize) -> Self {
        let mut grad = vec![Rat::zero(); nvars];
        grad[index] = Rat::one();
        Jet { value, grad }
    }

    /// Gradient padded to `nvars` entries.
    pub fn gradient(&self, nvars: usize) -> Vec<Rat> {
        let mut g = self.grad.clone();
        g.resize(nvars, Rat::zero());
        g
    }

    fn zip_grad(a: &[Rat], b: &[Rat], f: impl Fn(&Rat, &Rat) -> Rat) -> Vec<Rat> {
        let n = a.len().max(b.len());
        let z = Rat::zero();
        (0..n).map(|i| f(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect()
    }
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        let n = self.grad.len().max(other.grad.len());
        self.value == other.value && self.gradient(n) == other.gradient(n)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { value: &self.value + &o.value, grad: Jet::zip_grad(&self.grad, &o.grad, |a, b| a + b) }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { value: &self.value - &o.value, grad: Jet::zip_grad(&self.grad, &o.grad, |a, b| a - b) }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let grad = Jet::zip_grad(&self.grad, &o.grad, |da, db| &self.value * db + &o.value * da);
        Jet { value: &self.value * &o.value, grad }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { value: -self.value, grad: self.grad.into_iter().map(|g| -g).collect() }
    }
}

impl Scalar for Jet {
    fn from_rat(r: &Rat) -> Self {
        Jet::constant(r.clone())
    }
    fn value(&self) -> &Rat {
        &self.value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn product_rule() {
        let x = Jet::variable(rat(3, 1), 0, 2);
        let y = Jet::variable(rat(5, 1), 1, 2);
        let f = x.clone() * x.clone() * y.clone() - Jet::from_int(7) * y;
        // f = x^2 y - 7y: df/dx = 2xy = 30, df/dy = x^2 - 7 = 2.
        assert_eq!(f.value, rat(10, 1));
        assert_eq!(f.gradient(2), vec![rat(30, 1), rat(2, 1)]);
        assert!(Jet::from_int(0).vanishes());
        assert!(!x.vanishes());
    }
}
