//! The four families of coisotropic quadrics: Hurwitz forms of quadric
//! surfaces, Chow forms of line pairs and of plane conics, and squares of
//! linear forms.

mod constructors;
mod sample;

pub use constructors::{
    chow_conic_coeffs, compound2, det4, frame_minors, hurwitz_coeffs, meet_coeffs, mixed_compound,
    plucker_value, product_coeffs, square_coeffs, sym_rank, SymMatrix4, SYM4,
};
pub use sample::{
    parameterize, read_archive, sample, sample_many, tangent_dimension, write_archive, Family, Params,
    WitnessPoint, MAX_RETRIES, PARAM_BOUND,
};

use num::Zero;
use thiserror::Error;

use crate::exact::{Rat, RationalField};
use crate::grassmann::{plucker_vars, GrassmannError, PlueckerVector, QuadricCoeffs};
use crate::poly::RatPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComponentError {
    #[error("not a line: the Plücker relation fails or the vector is zero")]
    NotALine,
    #[error("M0 does not have rank one")]
    RankNotOne,
    #[error("the degeneration limit vanishes")]
    DegenerateLimit,
    #[error("the linear form is zero")]
    ZeroForm,
    #[error("expected a linear form in the six Plücker variables")]
    NotLinear,
    #[error("no nondegenerate draw for {family} after {retries} attempts (seed {seed})")]
    SamplingExhausted { family: Family, seed: u64, retries: usize },
    #[error("parameters do not match the family {0}")]
    ParamsMismatch(Family),
    #[error("witness archive: {0}")]
    Archive(String),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
}

fn check_line(l: &PlueckerVector) -> Result<(), ComponentError> {
    l.validate().map_err(|_| ComponentError::NotALine)
}

/// The Hurwitz form of the quadric surface with matrix `m`.
pub fn hurwitz_form(m: &SymMatrix4<Rat>) -> QuadricCoeffs {
    QuadricCoeffs(hurwitz_coeffs(m))
}

/// The linear form whose zero set on the Grassmannian is the set of lines
/// meeting `l`.
pub fn meet_form(l: &PlueckerVector) -> Result<RatPoly, ComponentError> {
    check_line(l)?;
    Ok(linear_form(&meet_coeffs(&l.0)))
}

fn linear_form(x: &[Rat; 6]) -> RatPoly {
    let vars = plucker_vars();
    let mut out = RatPoly::zero(RationalField, vars.clone());
    for (i, c) in x.iter().enumerate() {
        out = &out + &RatPoly::var(RationalField, vars.clone(), i).scale(c);
    }
    out
}

/// Coefficients of a linear form in the six Plücker variables.
pub fn linear_coeffs(ell: &RatPoly) -> Result<[Rat; 6], ComponentError> {
    if ell.vars().len() != 6 || ell.terms().iter().any(|(m, _)| m.degree() != 1) {
        return Err(ComponentError::NotLinear);
    }
    let mut x: [Rat; 6] = std::array::from_fn(|_| Rat::zero());
    for (m, c) in ell.terms() {
        let i = m.0.iter().position(|&e| e == 1).expect("degree one");
        x[i] = c.clone();
    }
    Ok(x)
}

/// The Chow form of the line pair `l1 + l2`.
pub fn chow_line_pair(l1: &PlueckerVector, l2: &PlueckerVector) -> Result<QuadricCoeffs, ComponentError> {
    check_line(l1)?;
    check_line(l2)?;
    Ok(QuadricCoeffs(product_coeffs(&meet_coeffs(&l1.0), &meet_coeffs(&l2.0))))
}

/// The Chow form of a plane conic, as the first-order coefficient of the
/// Hurwitz forms of `M0 + eps M1` with `M0` of rank one.
pub fn chow_conic(m0: &SymMatrix4<Rat>, m1: &SymMatrix4<Rat>) -> Result<QuadricCoeffs, ComponentError> {
    chow_conic_coeffs(m0, m1).map(QuadricCoeffs)
}

/// The square of a linear form in the Plücker variables.
pub fn square_form(ell: &RatPoly) -> Result<QuadricCoeffs, ComponentError> {
    let x = linear_coeffs(ell)?;
    if x.iter().all(Zero::is_zero) {
        return Err(ComponentError::ZeroForm);
    }
    Ok(QuadricCoeffs(square_coeffs(&x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::grassmann::{c_index, coisotropy_check};

    fn line(a: [i64; 4], b: [i64; 4]) -> PlueckerVector {
        PlueckerVector::from_frame(&[a.map(|x| rat(x, 1)), b.map(|x| rat(x, 1))])
    }

    #[test]
    fn hurwitz_examples() {
        let q = hurwitz_form(&SymMatrix4::identity());
        assert_eq!(q.to_form().to_text(), "p01^2 + p02^2 + p03^2 + p12^2 + p13^2 + p23^2");
        let q = hurwitz_form(&SymMatrix4::diagonal([1, 2, 3, 4]));
        let diag: Vec<Rat> = (0..6).map(|a| q.get(a, a).clone()).collect();
        assert_eq!(diag, [2, 3, 4, 6, 8, 12].map(|x| rat(x, 1)));
        assert_eq!(q.0.iter().filter(|x| !x.is_zero()).count(), 6);
    }

    #[test]
    fn meet_examples() {
        let e01 = line([1, 0, 0, 0], [0, 1, 0, 0]);
        let e23 = line([0, 0, 1, 0], [0, 0, 0, 1]);
        assert_eq!(meet_form(&e01).unwrap().to_text(), "p23");
        assert_eq!(meet_form(&e01).unwrap().eval_rat(&e01.0).unwrap(), rat(0, 1));
        assert_eq!(meet_form(&e01).unwrap().eval_rat(&e23.0).unwrap(), rat(1, 1));
        let bad = PlueckerVector(std::array::from_fn(|i| rat((i == 0 || i == 5) as i64, 1)));
        assert_eq!(meet_form(&bad), Err(ComponentError::NotALine));
    }

    #[test]
    fn line_pair_examples() {
        let e01 = line([1, 0, 0, 0], [0, 1, 0, 0]);
        let e23 = line([0, 0, 1, 0], [0, 0, 0, 1]);
        assert_eq!(chow_line_pair(&e01, &e23).unwrap().to_form().to_text(), "p01*p23");
        assert_eq!(chow_line_pair(&e01, &e01).unwrap().to_form().to_text(), "p23^2");
        let product = &meet_form(&e01).unwrap() * &meet_form(&e23).unwrap();
        assert_eq!(chow_line_pair(&e01, &e23).unwrap().to_form(), product);
    }

    #[test]
    fn conic_examples() {
        let e0 = SymMatrix4::outer(&[1, 0, 0, 0].map(|x| rat(x, 1)));
        let q = chow_conic(&e0, &SymMatrix4::diagonal([0, 1, 1, 1])).unwrap();
        assert_eq!(q.to_form().to_text(), "p01^2 + p02^2 + p03^2");
        assert_eq!(chow_conic(&e0, &e0), Err(ComponentError::DegenerateLimit));
        assert_eq!(
            chow_conic(&SymMatrix4::identity(), &e0),
            Err(ComponentError::RankNotOne)
        );
    }

    #[test]
    fn square_examples() {
        let p = |i| RatPoly::var(RationalField, plucker_vars(), i);
        let q = square_form(&p(0)).unwrap();
        assert_eq!(q.to_form().to_text(), "p01^2");
        let cert = coisotropy_check(&q).unwrap().unwrap();
        assert_eq!((cert.s, cert.t), (rat(0, 1), rat(0, 1)));
        let q = square_form(&(&p(0) + &p(5))).unwrap();
        assert_eq!(q.to_form().to_text(), "p01^2 + 2*p01*p23 + p23^2");
        assert!(coisotropy_check(&q).unwrap().is_some());
        assert_eq!(q.0[c_index(0, 5)], rat(1, 1));
        assert_eq!(square_form(&RatPoly::zero(RationalField, plucker_vars())), Err(ComponentError::ZeroForm));
        assert_eq!(square_form(&(&p(0) * &p(1))), Err(ComponentError::NotLinear));
    }
}
