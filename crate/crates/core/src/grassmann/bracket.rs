use num::Zero;

use super::coords::{c_index, QuadricCoeffs, NC};
use super::GrassmannError;
use crate::exact::{rat, rat_solve, Field, Rat, RingElem};
use crate::poly::MPoly;

/// Signed pairing of the Plücker coordinates: (01,23) +, (02,13) -, (03,12) +.
pub const BRACKET_PAIRS: [(usize, usize, i64); 3] = [(0, 5, 1), (1, 4, -1), (2, 3, 1)];

/// `dQ/dp01 dQ/dp23 - dQ/dp02 dQ/dp13 + dQ/dp03 dQ/dp12` for a quadratic form
/// in the six Plücker variables.
pub fn bracket<F: Field>(q: &MPoly<F>) -> Result<MPoly<F>, GrassmannError> {
    if q.vars().len() != 6 || q.terms().iter().any(|(m, _)| m.degree() != 2) {
        return Err(GrassmannError::NotQuadratic);
    }
    let d: Vec<MPoly<F>> = (0..6).map(|i| q.diff(i)).collect();
    let mut out = MPoly::zero(q.field().clone(), q.vars().clone());
    for (a, b, s) in BRACKET_PAIRS {
        let t = &d[a] * &d[b];
        out = if s > 0 { &out + &t } else { &out - &t };
    }
    Ok(out)
}

/// Half the coefficient vector of the bracket, `C J C` for the symmetric
/// matrix `C` of `c` and the pairing matrix `J`; generic so the same formula
/// serves numbers and symbolic coefficients.
///
/// This is the third column of the 21x3 coisotropy matrix.
pub fn half_bracket_coeffs<T: RingElem>(c: &[T], zero: &T) -> Vec<T> {
    assert_eq!(c.len(), NC);
    let m = |a: usize, b: usize| &c[c_index(a, b)];
    // (C J)[a][b] = sum_k C[a][k] J[k][b]; J pairs k with its complement.
    let partner = |k: usize| -> (usize, i64) {
        BRACKET_PAIRS
            .iter()
            .find_map(|&(x, y, s)| {
                if x == k {
                    Some((y, s))
                } else if y == k {
                    Some((x, s))
                } else {
                    None
                }
            })
            .expect("every index is paired")
    };
    let mut out = Vec::with_capacity(NC);
    for a in 0..6 {
        for b in a..6 {
            let mut acc = zero.clone();
            for k in 0..6 {
                let (l, s) = partner(k);
                let t = m(a, k).clone() * m(l, b).clone();
                acc = if s > 0 { acc + t } else { acc - t };
            }
            out.push(acc);
        }
    }
    out
}

/// Coefficient vector (in the c-convention) of the bracket of `q`.
pub fn bracket_coeffs(q: &QuadricCoeffs) -> QuadricCoeffs {
    let half = half_bracket_coeffs(&q.0, &Rat::zero());
    QuadricCoeffs(std::array::from_fn(|i| &half[i] * rat(2, 1)))
}

/// Witness for the coisotropy identity `bracket(Q) = s Q + t P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoisotropyCertificate {
    pub s: Rat,
    pub t: Rat,
}

fn validate(c: &QuadricCoeffs) -> Result<(), GrassmannError> {
    if c.is_zero() {
        return Err(GrassmannError::ZeroQuadric);
    }
    if c.invariant().is_zero() {
        return Err(GrassmannError::PlueckerMultiple);
    }
    Ok(())
}

/// Solves `bracket(Q) = s Q + t P` exactly; `None` when no `(s, t)` exists.
pub fn coisotropy_check(c: &QuadricCoeffs) -> Result<Option<CoisotropyCertificate>, GrassmannError> {
    validate(c)?;
    let lam = bracket_coeffs(c);
    let p = QuadricCoeffs::plucker();
    let a: Vec<Vec<Rat>> = (0..NC).map(|i| vec![c.0[i].clone(), p.0[i].clone()]).collect();
    let sol = rat_solve(&a, &lam.0)?;
    Ok(sol.map(|x| CoisotropyCertificate { s: x[0].clone(), t: x[1].clone() }))
}

/// Checks `bracket(Q) - s Q - t P = 0` as a polynomial identity in the
/// Plücker variables (independently of the coefficient formulas).
pub fn certificate_holds(c: &QuadricCoeffs, cert: &CoisotropyCertificate) -> bool {
    let q = c.to_form();
    let p = QuadricCoeffs::plucker().to_form();
    let lhs = bracket(&q).expect("quadratic");
    let rhs = &q.scale(&cert.s) + &p.scale(&cert.t);
    lhs == rhs
}

/// The normalization `Q + lambda P` whose bracket is a multiple of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CataneseNormalization {
    pub lambda: Rat,
    pub t: Rat,
    pub normalized: QuadricCoeffs,
}

/// Finds the unique `lambda` with `bracket(Q + lambda P) = t P`.
///
/// The `s`-part of the certificate of `Q + mu P` is affine in `mu`; it is
/// sampled at two values, solved for zero, and the result re-checked.
pub fn catanese_normalize(c: &QuadricCoeffs) -> Result<CataneseNormalization, GrassmannError> {
    let s_at = |mu: &Rat| -> Result<Rat, GrassmannError> {
        coisotropy_check(&c.add_plucker(mu))?
            .map(|cert| cert.s)
            .ok_or(GrassmannError::NotCoisotropic)
    };
    let s0 = s_at(&Rat::zero())?;
    let slope = s_at(&rat(1, 1))? - &s0;
    if slope.is_zero() {
        return Err(GrassmannError::NoUniqueLambda);
    }
    let lambda = -s0 / slope;
    let normalized = c.add_plucker(&lambda);
    let cert = coisotropy_check(&normalized)?.ok_or(GrassmannError::NoUniqueLambda)?;
    let expected = QuadricCoeffs::plucker().scale(&cert.t);
    if !cert.s.is_zero() || bracket_coeffs(&normalized) != expected {
        return Err(GrassmannError::NoUniqueLambda);
    }
    Ok(CataneseNormalization { lambda, t: cert.t, normalized })
}

/// Rank of the numeric 21x3 coisotropy matrix at `c`.
pub fn fig1_rank(c: &QuadricCoeffs) -> usize {
    let rows = super::fig1::fig1_numeric(c);
    crate::exact::RatMatrix::from_rows(rows.to_vec()).expect("rectangular").rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::coords::plucker_relation;

    fn single(a: usize, b: usize) -> QuadricCoeffs {
        let mut q = QuadricCoeffs::zero();
        q.0[c_index(a, b)] = if a == b { rat(1, 1) } else { rat(1, 2) };
        q
    }

    #[test]
    fn bracket_examples() {
        let q = single(0, 5).to_form();
        assert_eq!(q.to_text(), "p01*p23");
        assert_eq!(bracket(&q).unwrap(), q);
        assert!(bracket(&single(0, 0).to_form()).unwrap().is_zero());
        let sq = QuadricCoeffs::from_ints(std::array::from_fn(|k| {
            let (a, b) = crate::grassmann::coords::c_entry(k);
            (a == b) as i64
        }));
        let expect = plucker_relation().scale(&rat(4, 1));
        assert_eq!(bracket(&sq.to_form()).unwrap(), expect);
        assert_eq!(bracket_coeffs(&sq).to_form(), expect);
    }

    #[test]
    fn coisotropy_examples() {
        let c = coisotropy_check(&single(0, 5)).unwrap().unwrap();
        assert_eq!((c.s, c.t), (rat(1, 1), rat(0, 1)));
        let c = coisotropy_check(&single(0, 0)).unwrap().unwrap();
        assert_eq!((c.s, c.t), (rat(0, 1), rat(0, 1)));
        let q = single(0, 0).add(&single(1, 4));
        assert_eq!(q.to_form().to_text(), "p01^2 + p02*p13");
        assert_eq!(coisotropy_check(&q).unwrap(), None);
        assert_eq!(coisotropy_check(&QuadricCoeffs::zero()), Err(GrassmannError::ZeroQuadric));
        assert_eq!(
            coisotropy_check(&QuadricCoeffs::plucker().scale(&rat(3, 1))),
            Err(GrassmannError::PlueckerMultiple)
        );
    }

    #[test]
    fn catanese_examples() {
        let n = catanese_normalize(&single(0, 5)).unwrap();
        assert_eq!((n.lambda.clone(), n.t.clone()), (rat(-1, 2), rat(1, 4)));
        assert_eq!(catanese_normalize(&n.normalized).unwrap().lambda, rat(0, 1));
        let n = catanese_normalize(&single(0, 0)).unwrap();
        assert_eq!((n.lambda, n.t), (rat(0, 1), rat(0, 1)));
        let q = single(0, 0).add(&single(1, 4));
        assert_eq!(catanese_normalize(&q), Err(GrassmannError::NotCoisotropic));
    }
}
