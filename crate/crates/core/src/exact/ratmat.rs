use num::Zero;

use super::{ExactError, Rat};

/// Dense matrix over the rationals, for small exact systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(RatMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    fn to_rows(&self) -> Vec<Vec<Rat>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[Rat]>::to_vec).collect()
    }

    /// Reduced row echelon form: (nonzero rows, pivot columns).
    pub fn rref(&self) -> (Vec<Vec<Rat>>, Vec<usize>) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            let Some(r) = (top..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(top, r);
            let inv = m[top][c].recip();
            for x in m[top].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[top].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == top || row[c].is_zero() {
                    continue;
                }
                let k = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &k * y;
                    }
                }
            }
            pivots.push(c);
            top += 1;
            if top == m.len() {
                break;
            }
        }
        m.truncate(top);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (rows, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rat::zero(); self.cols];
                v[free] = Rat::from_integer(1.into());
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = -row[free].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rat_rank(rows: &[Vec<Rat>]) -> Result<usize, ExactError> {
    Ok(RatMatrix::from_rows(rows.to_vec())?.rank())
}

/// Solves `A x = b` exactly; `None` if inconsistent. Free unknowns are set
/// to zero, so the answer is unique whenever `A` has full column rank.
pub fn rat_solve(a: &[Vec<Rat>], b: &[Rat]) -> Result<Option<Vec<Rat>>, ExactError> {
    if a.len() != b.len() {
        return Err(ExactError::Shape("right-hand side length".into()));
    }
    let n = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
        .collect();
    let (rows, pivots) = RatMatrix::from_rows(aug)?.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[n].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn solve_and_kernel() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)], vec![rat(5, 1), rat(6, 1)]];
        let b = vec![rat(5, 1), rat(11, 1), rat(17, 1)];
        assert_eq!(rat_solve(&a, &b).unwrap(), Some(vec![rat(1, 1), rat(2, 1)]));
        let b2 = vec![rat(5, 1), rat(11, 1), rat(18, 1)];
        assert_eq!(rat_solve(&a, &b2).unwrap(), None);
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 1), rat(0, 1)]]).unwrap();
        let k = m.kernel();
        assert_eq!(k, vec![vec![rat(-2, 1), rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1), rat(1, 1)]]);
        assert_eq!(rat_rank(&a).unwrap(), 2);
    }
}
