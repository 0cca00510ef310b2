use super::{Echelon, ExactError, Field, PrimeField, Rat};

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn from_entries(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: Vec<u64>,
    ) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let p = field.modulus();
        let entries = entries.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix { field, rows, cols, entries })
    }

    pub fn from_i64_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&x| field.from_i64(x)).collect();
        Ok(FpMatrix { field, rows: rows.len(), cols, entries })
    }

    pub fn from_rat_rows(field: PrimeField, rows: &[Vec<Rat>]) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ExactError::Shape("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|x| field.from_rat(x))
            .collect::<Result<_, _>>()?;
        Ok(FpMatrix { field, rows: rows.len(), cols, entries })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        self.entries[r * self.cols + c] = x % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| self.field.add_mod(acc, self.field.mul_mod(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form: (nonzero rows, pivot columns).
    pub fn rref(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let f = &self.field;
        let mut m: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            let Some(r) = (top..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(top, r);
            let inv = f.inv_mod(m[top][c]).expect("nonzero pivot");
            for x in m[top].iter_mut() {
                *x = f.mul_mod(*x, inv);
            }
            let pivot_row = m[top].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == top || row[c] == 0 {
                    continue;
                }
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub_mod(*x, f.mul_mod(k, y));
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
        if self.field.barrett().is_some() && self.rows > 0 && self.cols > 0 {
            let mut e = Echelon::new(self.field, self.cols);
            for r in 0..self.rows {
                e.insert(self.row(r).iter().map(|&x| x as u32).collect());
                if e.is_full() {
                    break;
                }
            }
            return e.rank();
        }
        self.rref().1.len()
    }
}

/// Rank and right kernel `{v : m v = 0}`.
///
/// The kernel basis is returned in reduced row echelon form, so it is a
/// canonical function of the matrix.
pub fn rank_and_kernel(m: &FpMatrix) -> (usize, Vec<Vec<u64>>) {
    let f = m.field;
    let (rows, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let raw: Vec<u64> = (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .flat_map(|free| {
            let mut v = vec![0u64; m.cols];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(&row[free]);
            }
            v
        })
        .collect();
    let k = m.cols - pivots.len();
    let basis = if k == 0 {
        Vec::new()
    } else {
        FpMatrix { field: f, rows: k, cols: m.cols, entries: raw }.rref().0
    };
    (pivots.len(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_ones() {
        let f = PrimeField::new(1009).unwrap();
        let id = FpMatrix::from_i64_rows(f, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(rank_and_kernel(&id), (2, vec![]));
        let f7 = PrimeField::new(7).unwrap();
        let ones = FpMatrix::from_i64_rows(f7, &[vec![1; 3], vec![1; 3], vec![1; 3]]).unwrap();
        let (r, k) = rank_and_kernel(&ones);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(ones.mul_vec(v).iter().all(|&x| x == 0));
        }
        assert_eq!(k, vec![vec![1, 0, 6], vec![0, 1, 6]]);
    }

    #[test]
    fn shape_errors() {
        let f = PrimeField::new(7).unwrap();
        assert!(FpMatrix::from_entries(f, 2, 2, vec![1, 2, 3]).is_err());
        assert!(FpMatrix::from_i64_rows(f, &[vec![1], vec![1, 2]]).is_err());
    }
}
