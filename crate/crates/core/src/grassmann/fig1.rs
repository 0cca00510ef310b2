//! The 21x3 coisotropy matrix and the determinantal ideals built from it.

use num::Zero;

use super::bracket::half_bracket_coeffs;
use super::coords::{c_vars, invariant_images, QuadricCoeffs, GAUGE, NC};
use super::GrassmannError;
use crate::exact::{rat, Rat, RationalField};
use crate::poly::{MPoly, RatPoly, VarSet};

/// Column 1 of the matrix: twice the coefficient vector of the Plücker
/// relation, i.e. 1, -1, 1 in rows c5, c9, c12.
pub fn plucker_column() -> [i64; NC] {
    let mut col = [0i64; NC];
    for (k, s) in GAUGE {
        col[k] = s;
    }
    col
}

/// Rows `(2P, c, C J C)` with entries polynomial in c0..c20.
pub fn fig1_symbolic() -> Vec<[RatPoly; 3]> {
    let vars = c_vars();
    let zero = MPoly::zero(RationalField, vars.clone());
    let c: Vec<RatPoly> = (0..NC).map(|i| MPoly::var(RationalField, vars.clone(), i)).collect();
    let third = half_bracket_coeffs(&c, &zero);
    let first = plucker_column();
    (0..NC)
        .map(|i| {
            [
                MPoly::constant(RationalField, vars.clone(), rat(first[i], 1)),
                c[i].clone(),
                third[i].clone(),
            ]
        })
        .collect()
}

pub fn fig1_numeric(c: &QuadricCoeffs) -> Vec<Vec<Rat>> {
    let third = half_bracket_coeffs(&c.0, &Rat::zero());
    let first = plucker_column();
    (0..NC).map(|i| vec![rat(first[i], 1), c.0[i].clone(), third[i].clone()]).collect()
}

fn det3(m: [[&RatPoly; 3]; 3]) -> RatPoly {
    let minor = |r1: usize, r2: usize, a: usize, b: usize| &(m[r1][a] * m[r2][b]) - &(m[r1][b] * m[r2][a]);
    let t0 = m[0][0] * &minor(1, 2, 1, 2);
    let t1 = m[0][1] * &minor(1, 2, 0, 2);
    let t2 = m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// One 3x3 minor of the symbolic matrix, still in c0..c20.
#[derive(Debug, Clone)]
pub struct Minor {
    pub rows: [usize; 3],
    pub poly: RatPoly,
}

/// All three-row minors, in lexicographic row order.
pub fn fig1_minors() -> Vec<Minor> {
    let m = fig1_symbolic();
    let mut out = Vec::with_capacity(1330);
    for i in 0..NC {
        for j in i + 1..NC {
            for k in j + 1..NC {
                let rows = [i, j, k];
                let poly = det3(rows.map(|r| [&m[r][0], &m[r][1], &m[r][2]]));
                out.push(Minor { rows, poly });
            }
        }
    }
    out
}

/// Images of c0..c20 under the gauge action with a symbolic parameter,
/// in the ring (c0..c20, lam).
fn gauge_images() -> (std::sync::Arc<VarSet>, Vec<RatPoly>) {
    let base = c_vars();
    let ext = base.concat(&VarSet::new(["lam"]).expect("name")).expect("distinct");
    let lam = MPoly::var(RationalField, ext.clone(), NC);
    let mut images: Vec<RatPoly> = (0..NC).map(|i| MPoly::var(RationalField, ext.clone(), i)).collect();
    for (k, s) in GAUGE {
        images[k] = if s > 0 { &images[k] + &lam } else { &images[k] - &lam };
    }
    (ext, images)
}

/// Whether `f(c)` is unchanged by the gauge action, as a polynomial identity
/// in the gauge parameter.
pub fn is_gauge_invariant(f: &RatPoly) -> bool {
    let (ext, images) = gauge_images();
    let moved = f.substitute(&images).expect("21 images");
    let positions: Vec<usize> = (0..NC).collect();
    moved == f.relabel(ext, &positions)
}

/// Rewrites a gauge-invariant polynomial in c0..c20 in the invariant
/// variables v0..v19.
pub fn to_invariant(f: &RatPoly) -> RatPoly {
    f.substitute(&invariant_images()).expect("21 images")
}

/// The 1330 cubic generators of the coisotropic ideal, in v0..v19.
pub fn coisotropic_ideal_generators() -> Result<Vec<RatPoly>, GrassmannError> {
    let (ext, images) = gauge_images();
    let positions: Vec<usize> = (0..NC).collect();
    let inv = invariant_images();
    fig1_minors()
        .into_iter()
        .map(|m| {
            let moved = m.poly.substitute(&images).expect("21 images");
            if moved != m.poly.relabel(ext.clone(), &positions) {
                return Err(GrassmannError::InvarianceViolation(m.rows));
            }
            Ok(m.poly.substitute(&inv).expect("21 images"))
        })
        .collect()
}

/// The 210 quadrics: 2x2 minors of the first and third columns, in c0..c20.
pub fn catanese_generators() -> Vec<RatPoly> {
    let m = fig1_symbolic();
    let mut out = Vec::with_capacity(210);
    for i in 0..NC {
        for j in i + 1..NC {
            out.push(&(&m[i][0] * &m[j][2]) - &(&m[j][0] * &m[i][2]));
        }
    }
    out
}

/// The kernel vector of the numeric matrix given by a certificate
/// `bracket(Q) = s Q + t P`. Column 1 is `2P` and column 3 is half the
/// bracket, hence the scaling `(t/4, s/2, -1)`.
pub fn kernel_from_certificate(s: &Rat, t: &Rat) -> [Rat; 3] {
    [t / rat(4, 1), s / rat(2, 1), rat(-1, 1)]
}

pub fn mat_vec(rows: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    rows.iter()
        .map(|r| r.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_entries() {
        let m = fig1_symbolic();
        assert_eq!(m[0][2].to_text(), "2*c2*c3 - 2*c1*c4 + 2*c0*c5");
        assert_eq!(m[9][0].to_text(), "-1");
        assert_eq!(m[5][2].to_text(), "c5^2 - c4*c10 + c3*c14 + c2*c17 - c1*c19 + c0*c20");
    }

    #[test]
    fn gauge_invariance_detects_non_invariants() {
        let c5 = MPoly::var(RationalField, c_vars(), 5);
        let c9 = MPoly::var(RationalField, c_vars(), 9);
        assert!(!is_gauge_invariant(&c5));
        assert!(is_gauge_invariant(&(&c5 + &c9)));
    }
}
