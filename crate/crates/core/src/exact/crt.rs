use num::{BigInt, Integer, One, Signed, Zero};

use super::Rat;

/// Combines residues `r_i mod m_i` (pairwise coprime moduli) into the unique
/// residue modulo the product. Returns `(value, modulus)`.
pub fn crt_combine(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(r, p) in residues {
        let p = BigInt::from(p);
        let r = BigInt::from(r);
        // x' = x + m * ((r - x) * m^-1 mod p)
        let inv = mod_inverse(&m.mod_floor(&p), &p).expect("coprime moduli");
        let t = ((&r - &x) * inv).mod_floor(&p);
        x += &m * t;
        m *= p;
    }
    (x, m)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Wang's rational reconstruction: finds `n/d` with `|n|, d <= sqrt(m/2)` and
/// `n = a d (mod m)`, if one exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Lifts one vector of residues per prime to rationals, entrywise.
/// Returns `None` if any entry fails to reconstruct.
pub fn reconstruct_vector(images: &[(u64, Vec<u64>)]) -> Option<Vec<Rat>> {
    let len = images.first()?.1.len();
    if images.iter().any(|(_, v)| v.len() != len) {
        return None;
    }
    (0..len)
        .map(|i| {
            let residues: Vec<(u64, u64)> = images.iter().map(|(p, v)| (v[i], *p)).collect();
            let (x, m) = crt_combine(&residues);
            rational_reconstruct(&x, &m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Field, PrimeField};

    #[test]
    fn crt_small() {
        let (x, m) = crt_combine(&[(2, 3), (3, 5), (2, 7)]);
        assert_eq!(x, BigInt::from(23));
        assert_eq!(m, BigInt::from(105));
    }

    #[test]
    fn reconstruct_fractions() {
        let primes = [2147483647u64, 2147483629];
        for q in [rat(-7, 12), rat(123456, 789), rat(0, 1), rat(-1, 2)] {
            let images: Vec<(u64, Vec<u64>)> = primes
                .iter()
                .map(|&p| (p, vec![PrimeField::new(p).unwrap().from_rat(&q).unwrap()]))
                .collect();
            assert_eq!(reconstruct_vector(&images).unwrap(), vec![q]);
        }
    }
}
