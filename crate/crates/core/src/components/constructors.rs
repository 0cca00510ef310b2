//! Coefficient vectors of Hurwitz forms, Chow forms and squares, generic
//! over exact scalars so that the same code yields values and Jacobians.

use crate::exact::{Rat, Scalar};
use crate::grassmann::{c_index, NC, PAIRS};

use super::ComponentError;

/// Upper-triangle order of the 10 entries of a symmetric 4x4 matrix.
pub const SYM4: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// A symmetric 4x4 matrix defining a quadric surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix4<T>(pub [T; 10]);

impl<T: Scalar> SymMatrix4<T> {
    pub fn get(&self, i: usize, j: usize) -> &T {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let k = SYM4.iter().position(|&e| e == (i, j)).expect("index < 4");
        &self.0[k]
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        SymMatrix4(SYM4.map(|(i, j)| f(i, j)))
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| T::from_int((i == j) as i64))
    }

    pub fn diagonal(d: [i64; 4]) -> Self {
        Self::from_fn(|i, j| T::from_int(if i == j { d[i] } else { 0 }))
    }

    /// `v v^T`.
    pub fn outer(v: &[T; 4]) -> Self {
        Self::from_fn(|i, j| v[i].clone() * v[j].clone())
    }

    pub fn add_scaled(&self, other: &Self, k: &T) -> Self {
        SymMatrix4(std::array::from_fn(|n| self.0[n].clone() + k.clone() * other.0[n].clone()))
    }

    pub fn determinant(&self) -> T {
        let m: [[T; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| self.get(i, j).clone()));
        det4(&m)
    }
}

fn det3<T: Scalar>(m: [[&T; 3]; 3]) -> T {
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}

pub fn det4<T: Scalar>(m: &[[T; 4]; 4]) -> T {
    let mut acc = T::from_int(0);
    for j in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
        let minor = det3(std::array::from_fn(|r| std::array::from_fn(|c| &m[r + 1][cols[c]])));
        let term = m[0][j].clone() * minor;
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Second compound of a 4x4 matrix, rows and columns indexed by `PAIRS`.
pub fn compound2<T: Scalar>(m: &[[T; 4]; 4]) -> [[T; 6]; 6] {
    std::array::from_fn(|r| {
        std::array::from_fn(|s| {
            let (i, j) = PAIRS[r];
            let (k, l) = PAIRS[s];
            m[i][k].clone() * m[j][l].clone() - m[i][l].clone() * m[j][k].clone()
        })
    })
}

fn upper<T: Scalar>(m: &[[T; 6]; 6]) -> [T; NC] {
    let mut out: [T; NC] = std::array::from_fn(|_| T::from_int(0));
    for a in 0..6 {
        for b in a..6 {
            out[c_index(a, b)] = m[a][b].clone();
        }
    }
    out
}

fn dense<T: Scalar>(m: &SymMatrix4<T>) -> [[T; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j).clone()))
}

/// The Hurwitz form `p (wedge_2 M) p^T`: its coefficient matrix is the
/// second compound itself.
pub fn hurwitz_coeffs<T: Scalar>(m: &SymMatrix4<T>) -> [T; NC] {
    upper(&compound2(&dense(m)))
}

/// Coefficient of `eps` in `wedge_2 (M0 + eps M1)`.
pub fn mixed_compound<T: Scalar>(m0: &SymMatrix4<T>, m1: &SymMatrix4<T>) -> [T; NC] {
    let (a, b) = (dense(m0), dense(m1));
    let mut out: [T; NC] = std::array::from_fn(|_| T::from_int(0));
    for r in 0..6 {
        for s in r..6 {
            let (i, j) = PAIRS[r];
            let (k, l) = PAIRS[s];
            out[c_index(r, s)] = a[i][k].clone() * b[j][l].clone() + b[i][k].clone() * a[j][l].clone()
                - a[i][l].clone() * b[j][k].clone()
                - b[i][l].clone() * a[j][k].clone();
        }
    }
    out
}

/// Plücker coordinates of the row span of a 2x4 frame.
pub fn frame_minors<T: Scalar>(rows: &[[T; 4]; 2]) -> [T; 6] {
    PAIRS.map(|(i, j)| rows[0][i].clone() * rows[1][j].clone() - rows[0][j].clone() * rows[1][i].clone())
}

/// Coefficients (on p01..p23) of the linear form vanishing on the lines
/// that meet the line with coordinates `q`.
pub fn meet_coeffs<T: Scalar>(q: &[T; 6]) -> [T; 6] {
    [q[5].clone(), -q[4].clone(), q[3].clone(), q[2].clone(), -q[1].clone(), q[0].clone()]
}

/// c-vector of the product of two linear forms.
pub fn product_coeffs<T: Scalar>(x: &[T; 6], y: &[T; 6]) -> [T; NC] {
    let half = T::from_rat(&Rat::new(1.into(), 2.into()));
    let mut out: [T; NC] = std::array::from_fn(|_| T::from_int(0));
    for a in 0..6 {
        for b in a..6 {
            out[c_index(a, b)] = if a == b {
                x[a].clone() * y[a].clone()
            } else {
                half.clone() * (x[a].clone() * y[b].clone() + x[b].clone() * y[a].clone())
            };
        }
    }
    out
}

/// c-vector of the square of a linear form.
pub fn square_coeffs<T: Scalar>(x: &[T; 6]) -> [T; NC] {
    product_coeffs(x, x)
}

/// The Plücker relation evaluated at `q`.
pub fn plucker_value<T: Scalar>(q: &[T; 6]) -> T {
    q[0].clone() * q[5].clone() - q[1].clone() * q[4].clone() + q[2].clone() * q[3].clone()
}

/// Rank of a symmetric 4x4 rational matrix.
pub fn sym_rank(m: &SymMatrix4<Rat>) -> usize {
    let rows: Vec<Vec<Rat>> = (0..4).map(|i| (0..4).map(|j| m.get(i, j).clone()).collect()).collect();
    crate::exact::RatMatrix::from_rows(rows).expect("square").rank()
}

/// Chow form of the plane conic cut by `M1` on the plane `ker M0`, as the
/// degeneration limit of Hurwitz forms.
pub fn chow_conic_coeffs(m0: &SymMatrix4<Rat>, m1: &SymMatrix4<Rat>) -> Result<[Rat; NC], ComponentError> {
    if sym_rank(m0) != 1 {
        return Err(ComponentError::RankNotOne);
    }
    let c = mixed_compound(m0, m1);
    if c.iter().all(|x| num::Zero::is_zero(x)) {
        return Err(ComponentError::DegenerateLimit);
    }
    Ok(c)
}
