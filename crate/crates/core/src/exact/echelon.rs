//! Incremental reduced row echelon forms over word-sized prime fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Barrett;
use super::PrimeField;

/// Vector kernels over residues stored as `u32` (modulus `< 2^31`).
mod kernels {
    use super::Barrett;

    #[inline(always)]
    fn axpy_body(dst: &mut [u32], src: &[u32], c: u64, b: &Barrett) {
        let (p, m, s1, s2) = (b.p, b.m & 0xffff_ffff, b.s1, b.s2);
        for (d, &s) in dst.iter_mut().zip(src) {
            let x = *d as u64 + c * s as u64;
            let q = (((x >> s1) & 0xffff_ffff) * m) >> s2;
            let mut r = x.wrapping_sub((q & 0xffff_ffff) * p);
            if r >= p {
                r -= p;
            }
            if r >= p {
                r -= p;
            }
            *d = r as u32;
        }
    }

    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx2")]
    unsafe fn axpy_avx2(dst: &mut [u32], src: &[u32], c: u64, b: &Barrett) {
        axpy_body(dst, src, c, b)
    }

    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx512f,avx512dq,avx512vl")]
    unsafe fn axpy_avx512(dst: &mut [u32], src: &[u32], c: u64, b: &Barrett) {
        axpy_body(dst, src, c, b)
    }

    /// `dst += c * src (mod p)` for `c < p`.
    pub fn axpy(dst: &mut [u32], src: &[u32], c: u64, b: &Barrett) {
        debug_assert_eq!(dst.len(), src.len());
        #[cfg(target_arch = "x86_64")]
        {
            if std::arch::is_x86_feature_detected!("avx512dq")
                && std::arch::is_x86_feature_detected!("avx512vl")
            {
                // SAFETY: the required CPU features were detected at runtime.
                return unsafe { axpy_avx512(dst, src, c, b) };
            }
            if std::arch::is_x86_feature_detected!("avx2") {
                // SAFETY: as above.
                return unsafe { axpy_avx2(dst, src, c, b) };
            }
        }
        axpy_body(dst, src, c, b)
    }

    #[inline(always)]
    fn scale_body(dst: &mut [u32], c: u64, b: &Barrett) {
        for d in dst.iter_mut() {
            *d = b.reduce(*d as u64 * c) as u32;
        }
    }

    pub fn scale(dst: &mut [u32], c: u64, b: &Barrett) {
        scale_body(dst, c, b)
    }

    #[inline(always)]
    fn dot_body(a: &[u32], w: &[u32], p: u64) -> u64 {
        // Products are < 2^62; folding by a multiple of p near 2^63 keeps
        // each lane below 2^63 + 2^62.
        let big = (1u64 << 63) / p * p;
        let mut acc = [0u64; 8];
        let mut ca = a.chunks_exact(8);
        let mut cw = w.chunks_exact(8);
        for (x, y) in (&mut ca).zip(&mut cw) {
            for l in 0..8 {
                let s = acc[l] + x[l] as u64 * y[l] as u64;
                acc[l] = if s >= 1 << 63 { s - big } else { s };
            }
        }
        let mut total = 0u64;
        for x in acc {
            total = (total + x % p) % p;
        }
        for (&x, &y) in ca.remainder().iter().zip(cw.remainder()) {
            total = (total + x as u64 * y as u64 % p) % p;
        }
        total
    }

    pub fn dot(a: &[u32], w: &[u32], p: u64) -> u64 {
        debug_assert_eq!(a.len(), w.len());
        dot_body(a, w, p)
    }
}

pub(crate) use kernels::{axpy, dot};

/// A subspace of `F_p^n` kept in reduced row echelon form.
///
/// Rows are dense and each is zero in every pivot column except its own,
/// where it holds 1. Rows are stored in insertion order; `canonical_rows`
/// returns them sorted by pivot.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    barrett: Barrett,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    /// Panics if the modulus is not below 2^31.
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        let barrett = *field
            .barrett()
            .expect("Echelon requires a modulus below 2^31");
        Echelon {
            field,
            barrett,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivot_of_row(&self, r: usize) -> usize {
        self.pivots[r]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.rows[r]
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Reduces `v` modulo the row space in place (pivot entries become zero).
    pub fn reduce(&self, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.ncols);
        let p = self.barrett.p;
        // Coefficients can be read off before any subtraction: row t only
        // touches its own pivot column among all pivot columns.
        let coeffs: Vec<(usize, u64)> = self
            .pivots
            .iter()
            .enumerate()
            .filter_map(|(t, &pc)| {
                let c = v[pc] as u64;
                (c != 0).then(|| (t, p - c))
            })
            .collect();
        for (t, c) in coeffs {
            axpy(v, &self.rows[t], c, &self.barrett);
        }
    }

    /// Reduces a sparse vector, returning the dense remainder.
    pub fn reduce_sparse(&self, entries: &[(usize, u32)]) -> Vec<u32> {
        let mut v = vec![0u32; self.ncols];
        for &(c, x) in entries {
            v[c] = self.field.add_mod(v[c] as u64, x as u64) as u32;
        }
        self.reduce(&mut v);
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce(&mut v);
        self.insert_reduced(v)
    }

    /// Inserts a vector already reduced by [`Echelon::reduce`].
    pub fn insert_reduced(&mut self, mut v: Vec<u32>) -> bool {
        let Some(j) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv_mod(v[j] as u64).expect("nonzero");
        kernels::scale(&mut v, inv, &self.barrett);
        let p = self.barrett.p;
        for row in self.rows.iter_mut() {
            let c = row[j] as u64;
            if c != 0 {
                axpy(row, &v, p - c, &self.barrett);
            }
        }
        self.pivot_row[j] = Some(self.rows.len());
        self.pivots.push(j);
        self.rows.push(v);
        true
    }

    /// Rows sorted by pivot column: the canonical basis of the subspace.
    pub fn canonical_rows(&self) -> Vec<Vec<u32>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        order.into_iter().map(|r| self.rows[r].clone()).collect()
    }

    /// Canonical basis of the orthogonal complement `{w : r . w = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let p = self.barrett.p as u32;
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut w = vec![0u32; self.ncols];
                w[f] = 1;
                for (t, row) in self.rows.iter().enumerate() {
                    let x = row[f];
                    if x != 0 {
                        w[self.pivots[t]] = p - x;
                    }
                }
                w
            })
            .collect()
    }

    /// A uniformly random vector in the orthogonal complement.
    pub fn random_kernel_vector<R: Rng>(&self, rng: &mut R) -> Vec<u32> {
        let p = self.barrett.p;
        let mut w = vec![0u32; self.ncols];
        for c in 0..self.ncols {
            if self.pivot_row[c].is_none() {
                w[c] = rng.gen_range(0..p) as u32;
            }
        }
        for (t, row) in self.rows.iter().enumerate() {
            let s = dot(row, &w, p);
            // Row t is 1 at its pivot and w is 0 there, so this sets r . w = 0.
            w[self.pivots[t]] = if s == 0 { 0 } else { (p - s) as u32 };
        }
        w
    }

    /// Coordinates of `v` (assumed in the row space) on the stored rows:
    /// the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }
}

/// Number of probe vectors used to screen rows once insertions stall.
const PROBES: usize = 2;

/// Feeds many candidate rows into an [`Echelon`], screening them with random
/// orthogonal-complement probes once most candidates turn out redundant.
///
/// A row that fails the screen is certainly independent and is inserted
/// exactly. A row that passes is dependent except with probability at most
/// `p^-PROBES`.
#[derive(Debug, Clone)]
pub struct RowStream {
    ech: Echelon,
    rng: ChaCha8Rng,
    probes: Vec<Vec<u32>>,
    reject_run: usize,
    patience: usize,
    screened: usize,
}

impl RowStream {
    pub fn new(field: PrimeField, ncols: usize, seed: u64) -> Self {
        RowStream {
            ech: Echelon::new(field, ncols),
            rng: ChaCha8Rng::seed_from_u64(seed),
            probes: Vec::new(),
            reject_run: 0,
            patience: 8,
            screened: 0,
        }
    }

    pub fn from_echelon(ech: Echelon, seed: u64) -> Self {
        RowStream {
            ech,
            rng: ChaCha8Rng::seed_from_u64(seed),
            probes: Vec::new(),
            reject_run: 0,
            patience: 8,
            screened: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn into_echelon(self) -> Echelon {
        self.ech
    }

    /// Rows rejected by the probe screen rather than by exact reduction.
    pub fn screened(&self) -> usize {
        self.screened
    }

    fn refresh_probes(&mut self) {
        self.probes = (0..PROBES)
            .map(|_| self.ech.random_kernel_vector(&mut self.rng))
            .collect();
    }

    fn passes_probes_dense(&self, v: &[u32]) -> bool {
        let p = self.ech.barrett.p;
        self.probes.iter().all(|w| dot(v, w, p) == 0)
    }

    fn passes_probes_sparse(&self, v: &[(usize, u32)]) -> bool {
        let p = self.ech.barrett.p;
        self.probes.iter().all(|w| {
            v.iter()
                .fold(0u64, |acc, &(c, x)| (acc + x as u64 * w[c] as u64) % p)
                == 0
        })
    }

    fn accept(&mut self, inserted: bool) -> bool {
        if inserted {
            self.reject_run = 0;
            if !self.probes.is_empty() {
                self.refresh_probes();
            }
        } else {
            self.reject_run += 1;
            if self.reject_run >= self.patience && self.probes.is_empty() {
                self.refresh_probes();
            }
        }
        inserted
    }

    /// Offers a dense row; returns whether it was inserted.
    pub fn push(&mut self, v: Vec<u32>) -> bool {
        if self.ech.is_full() {
            return false;
        }
        if !self.probes.is_empty() && self.passes_probes_dense(&v) {
            self.screened += 1;
            return false;
        }
        let ins = self.ech.insert(v);
        self.accept(ins)
    }

    /// Offers a sparse row given as `(column, value)` pairs.
    pub fn push_sparse(&mut self, v: &[(usize, u32)]) -> bool {
        if self.ech.is_full() {
            return false;
        }
        if !self.probes.is_empty() && self.passes_probes_sparse(v) {
            self.screened += 1;
            return false;
        }
        let r = self.ech.reduce_sparse(v);
        let ins = self.ech.insert_reduced(r);
        self.accept(ins)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(1009).unwrap()
    }

    #[test]
    fn axpy_matches_scalar() {
        let f = PrimeField::new(2147483647).unwrap();
        let b = *f.barrett().unwrap();
        let src: Vec<u32> = (0..37u64).map(|i| ((i * 7919 + 3) % b.p) as u32).collect();
        let mut dst: Vec<u32> = (0..37u64).map(|i| ((i * i * 104729) % b.p) as u32).collect();
        let expect: Vec<u32> = dst
            .iter()
            .zip(&src)
            .map(|(&d, &s)| ((d as u64 + 123456789 * s as u64) % b.p) as u32)
            .collect();
        axpy(&mut dst, &src, 123456789, &b);
        assert_eq!(dst, expect);
    }

    #[test]
    fn echelon_rank_and_kernel() {
        let mut e = Echelon::new(field(), 4);
        assert!(e.insert(vec![1, 2, 3, 4]));
        assert!(e.insert(vec![2, 4, 6, 9]));
        assert!(!e.insert(vec![3, 6, 9, 13]));
        assert_eq!(e.rank(), 2);
        let rows = e.canonical_rows();
        assert_eq!(rows, vec![vec![1, 2, 3, 0], vec![0, 0, 0, 1]]);
        for w in e.kernel_basis() {
            for r in &rows {
                assert_eq!(dot(r, &w, 1009), 0);
            }
        }
        assert_eq!(e.kernel_basis().len(), 2);
    }

    #[test]
    fn stream_agrees_with_plain_insertion() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let basis: Vec<Vec<u32>> = (0..5)
            .map(|_| (0..12).map(|_| rng.gen_range(0..1009)).collect())
            .collect();
        let mut s = RowStream::new(f, 12, 11);
        let mut e = Echelon::new(f, 12);
        for _ in 0..80 {
            let mut v = vec![0u32; 12];
            for b in &basis {
                let c: u64 = rng.gen_range(0..1009);
                axpy(&mut v, b, c, f.barrett().unwrap());
            }
            s.push(v.clone());
            e.insert(v);
        }
        assert_eq!(s.rank(), 5);
        assert_eq!(e.rank(), 5);
        assert!(s.screened() > 0);
        assert_eq!(s.echelon().canonical_rows(), e.canonical_rows());
    }
}
