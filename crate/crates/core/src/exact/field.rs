use std::fmt::Debug;
use std::hash::Hash;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use super::{format_rat, is_prime, parse_rat, ExactError, Rat};

/// Coefficient field contract shared by the rational and modular pipelines.
///
/// The field is a value (a "context"): prime fields carry their modulus, so
/// elements are plain data and all arithmetic goes through the field.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_rat(&self, r: &Rat) -> Result<Self::Elem, ExactError>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, ExactError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> Rat {
        Rat::from_integer(n.into())
    }
    fn from_rat(&self, r: &Rat) -> Result<Rat, ExactError> {
        Ok(r.clone())
    }
    fn format(&self, a: &Rat) -> String {
        format_rat(a)
    }
    fn parse(&self, s: &str) -> Result<Rat, ExactError> {
        parse_rat(s)
    }
}

/// The prime field F_p for a prime `p < 2^62`.
///
/// Primes below 2^31 additionally get Barrett constants, which the dense
/// elimination kernels use for vectorizable reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    barrett: Option<Barrett>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Barrett {
    pub p: u64,
    pub m: u64,
    pub s1: u32,
    pub s2: u32,
}

impl Barrett {
    fn new(p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 31));
        let k = 64 - p.leading_zeros();
        let m = ((1u128 << (2 * k)) / p as u128) as u64;
        Barrett { p, m, s1: k - 1, s2: k + 1 }
    }

    /// Reduces `x < p^2`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = (((x >> self.s1) & 0xffff_ffff) * (self.m & 0xffff_ffff)) >> self.s2;
        let mut r = x.wrapping_sub((q & 0xffff_ffff) * self.p);
        if r >= self.p {
            r -= self.p;
        }
        if r >= self.p {
            r -= self.p;
        }
        r
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if p >= 1 << 62 {
            return Err(ExactError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        let barrett = (p < 1 << 31).then(|| Barrett::new(p));
        Ok(PrimeField { p, barrett })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub(crate) fn barrett(&self) -> Option<&Barrett> {
        self.barrett.as_ref()
    }

    #[inline]
    pub fn mul_mod(&self, a: u64, b: u64) -> u64 {
        match &self.barrett {
            Some(b31) => b31.reduce(a * b),
            None => ((a as u128 * b as u128) % self.p as u128) as u64,
        }
    }

    #[inline]
    pub fn add_mod(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub_mod(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow_mod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_mod(r, a);
            }
            a = self.mul_mod(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv_mod(&self, a: u64) -> Option<u64> {
        (a % self.p != 0).then(|| self.pow_mod(a % self.p, self.p - 2))
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_mod(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.sub_mod(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_mod(*a, *b)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        self.inv_mod(*a)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rat(&self, r: &Rat) -> Result<u64, ExactError> {
        let den = self.reduce_int(r.denom());
        let inv = self
            .inv_mod(den)
            .ok_or_else(|| ExactError::DenominatorDivisible {
                value: format_rat(r),
                prime: self.p,
            })?;
        Ok(self.mul_mod(self.reduce_int(r.numer()), inv))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, ExactError> {
        let r = parse_rat(s)?;
        if r.is_negative() || !r.is_integer() {
            return self.from_rat(&r);
        }
        Ok(self.reduce_int(r.numer()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{prime_list, rat};

    #[test]
    fn barrett_matches_u128_reduction() {
        for &p in prime_list().iter().take(4).chain([3u64, 7, 1009, 65537].iter()) {
            let f = PrimeField::new(p).unwrap();
            let b = f.barrett().unwrap();
            let mut x: u64 = 0x1234_5678_9abc;
            for _ in 0..2000 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = x % p;
                let c = (x >> 17) % p;
                let v = a * c + (x >> 40) % p;
                if v < p * p {
                    assert_eq!(b.reduce(v), v % p);
                }
            }
            assert_eq!(b.reduce((p - 1) * (p - 1)), ((p - 1) * (p - 1)) % p);
        }
    }

    #[test]
    fn rational_reduction_rejects_bad_denominator() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_rat(&rat(3, 2)).unwrap(), 5);
        assert!(matches!(
            f.from_rat(&rat(1, 14)),
            Err(ExactError::DenominatorDivisible { prime: 7, .. })
        ));
        assert_eq!(f.from_i64(-1), 6);
        assert!(PrimeField::new(1007).is_err());
    }

    #[test]
    fn large_prime_path() {
        let p = (1u64 << 61) - 1;
        let f = PrimeField::new(p).unwrap();
        assert!(f.barrett().is_none());
        let a = p - 2;
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
    }
}
