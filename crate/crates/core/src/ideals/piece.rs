//! Graded pieces of ideals modulo a prime, stored block by block over the
//! weight classes of a monomial table.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exact::{Echelon, Field, PrimeField, RowStream};
use crate::poly::RatPoly;

use super::monomials::{MonomialTable, Packed, Weight};
use super::IdealError;

/// A homogeneous form modulo a prime with packed monomial support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseForm {
    pub degree: u32,
    pub terms: Vec<(Packed, u32)>,
}

impl SparseForm {
    pub fn from_poly(f: &RatPoly, field: &PrimeField) -> Result<SparseForm, IdealError> {
        if f.vars().len() != crate::grassmann::NV {
            return Err(IdealError::Arity(f.vars().len()));
        }
        let degree = f.total_degree().unwrap_or(0);
        if !f.is_homogeneous() {
            return Err(IdealError::NotHomogeneous);
        }
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let x = field.from_rat(c)? as u32;
            if x != 0 {
                terms.push((Packed::from_exponents(&m.0)?, x));
            }
        }
        Ok(SparseForm { degree, terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common weight of all terms, or `NotHomogeneous`.
    pub fn weight(&self, table: &MonomialTable) -> Result<Option<Weight>, IdealError> {
        let mut w = None;
        for &(m, _) in &self.terms {
            let x = table.grading.weight(m);
            match w {
                None => w = Some(x),
                Some(y) if y != x => return Err(IdealError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(w)
    }
}

/// The row space of one weight class in reduced echelon form, stored
/// compactly: row `r` is `e_{pivots[r]} + sum_j coef[r][j] e_{free[j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub ncols: u32,
    pub pivots: Vec<u32>,
    pub free: Vec<u32>,
    pub coef: Vec<u32>,
}

impl Block {
    pub fn empty(ncols: usize) -> Block {
        Block { ncols: ncols as u32, pivots: Vec::new(), free: (0..ncols as u32).collect(), coef: Vec::new() }
    }

    pub fn full(ncols: usize) -> Block {
        Block { ncols: ncols as u32, pivots: (0..ncols as u32).collect(), free: Vec::new(), coef: Vec::new() }
    }

    pub fn from_echelon(e: &Echelon) -> Block {
        let free: Vec<u32> = e.free_columns().into_iter().map(|c| c as u32).collect();
        let rows = e.canonical_rows();
        let pivots: Vec<u32> = rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row") as u32)
            .collect();
        let mut coef = Vec::with_capacity(rows.len() * free.len());
        for r in &rows {
            coef.extend(free.iter().map(|&j| r[j as usize]));
        }
        Block { ncols: e.ncols() as u32, pivots, free, coef }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols as usize
    }

    /// Dense reduced rows, sorted by pivot.
    pub fn dense_rows(&self) -> Vec<Vec<u32>> {
        let nf = self.free.len();
        (0..self.rank())
            .map(|r| {
                let mut v = vec![0u32; self.ncols()];
                v[self.pivots[r] as usize] = 1;
                for (j, &c) in self.free.iter().enumerate() {
                    v[c as usize] = self.coef[r * nf + j];
                }
                v
            })
            .collect()
    }

    pub fn to_echelon(&self, field: &PrimeField) -> Echelon {
        let mut e = Echelon::new(*field, self.ncols());
        for r in self.dense_rows() {
            e.insert_reduced(r);
        }
        e
    }

    /// Pivot index or free index of every column.
    pub fn column_roles(&self) -> Vec<ColumnRole> {
        let mut roles = vec![ColumnRole::Free(0); self.ncols()];
        for (r, &c) in self.pivots.iter().enumerate() {
            roles[c as usize] = ColumnRole::Pivot(r);
        }
        for (j, &c) in self.free.iter().enumerate() {
            roles[c as usize] = ColumnRole::Free(j);
        }
        roles
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnRole {
    Pivot(usize),
    Free(usize),
}

/// Normal-form map of one block: reduces sparse vectors to coordinates on
/// the free columns.
pub struct Reducer<'a> {
    block: &'a Block,
    roles: Vec<ColumnRole>,
    field: PrimeField,
}

impl<'a> Reducer<'a> {
    pub fn new(block: &'a Block, field: PrimeField) -> Self {
        Reducer { roles: block.column_roles(), block, field }
    }

    pub fn free_len(&self) -> usize {
        self.block.free.len()
    }

    /// Free-column coordinates of `v mod rowspace`.
    pub fn reduce_sparse(&self, v: &[(usize, u32)], out: &mut [u32]) {
        let p = self.field.modulus();
        let nf = self.block.free.len();
        out.iter_mut().for_each(|x| *x = 0);
        for &(c, x) in v {
            match self.roles[c] {
                ColumnRole::Free(j) => out[j] = ((out[j] as u64 + x as u64) % p) as u32,
                ColumnRole::Pivot(r) => {
                    let row = &self.block.coef[r * nf..(r + 1) * nf];
                    let m = p - x as u64;
                    for (o, &a) in out.iter_mut().zip(row) {
                        if a != 0 {
                            *o = ((*o as u64 + m * a as u64) % p) as u32;
                        }
                    }
                }
            }
        }
    }

    pub fn contains_sparse(&self, v: &[(usize, u32)]) -> bool {
        let mut out = vec![0u32; self.free_len()];
        self.reduce_sparse(v, &mut out);
        out.iter().all(|&x| x == 0)
    }
}

/// A degree-d graded piece modulo one prime.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub degree: u32,
    pub field: PrimeField,
    pub table: Arc<MonomialTable>,
    pub blocks: Vec<Block>,
}

/// JSON export of a graded piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceExport {
    pub degree: u32,
    pub prime: u64,
    pub monomial_order: String,
    pub grading: String,
    pub monomials: Vec<String>,
    pub dimension: usize,
    pub rows: Vec<Vec<u32>>,
}

impl PartialEq for GradedPiece {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.field.modulus() == other.field.modulus()
            && self.blocks == other.blocks
    }
}

impl GradedPiece {
    pub fn zero(table: Arc<MonomialTable>, field: PrimeField) -> GradedPiece {
        let blocks = table.classes.iter().map(|c| Block::empty(c.members.len())).collect();
        GradedPiece { degree: table.degree, field, table, blocks }
    }

    pub fn full(table: Arc<MonomialTable>, field: PrimeField) -> GradedPiece {
        let blocks = table.classes.iter().map(|c| Block::full(c.members.len())).collect();
        GradedPiece { degree: table.degree, field, table, blocks }
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(Block::rank).sum()
    }

    pub fn codimension(&self) -> usize {
        self.table.len() - self.dimension()
    }

    pub fn class_dimensions(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::rank).collect()
    }

    fn check_compatible(&self, other: &GradedPiece) -> Result<(), IdealError> {
        if self.degree != other.degree {
            return Err(IdealError::DegreeMismatch(self.degree, other.degree));
        }
        if self.field.modulus() != other.field.modulus() || self.table.grading != other.table.grading {
            return Err(IdealError::PrimeMismatch);
        }
        Ok(())
    }

    /// Basis forms (one per echelon row), in class order.
    pub fn basis_forms(&self) -> Vec<(Weight, SparseForm)> {
        let mut out = Vec::with_capacity(self.dimension());
        for (c, b) in self.blocks.iter().enumerate() {
            let members = &self.table.classes[c].members;
            let w = self.table.classes[c].weight;
            for row in b.dense_rows() {
                let terms = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| (self.table.monomials[members[i] as usize], x))
                    .collect();
                out.push((w, SparseForm { degree: self.degree, terms }));
            }
        }
        out
    }

    /// Class index and sparse local coordinates of a homogeneous form.
    pub fn localize(&self, f: &SparseForm) -> Result<Option<(usize, Vec<(usize, u32)>)>, IdealError> {
        if f.degree != self.degree {
            return Err(IdealError::DegreeMismatch(f.degree, self.degree));
        }
        let Some(w) = f.weight(&self.table)? else {
            return Ok(None);
        };
        let c = self.table.class_of(w).expect("weight of a degree-d monomial");
        let v = f
            .terms
            .iter()
            .map(|&(m, x)| (self.table.locate(m).expect("degree-d monomial").1, x))
            .collect();
        Ok(Some((c, v)))
    }

    pub fn contains_form(&self, f: &SparseForm) -> Result<bool, IdealError> {
        Ok(match self.localize(f)? {
            None => true,
            Some((c, v)) => Reducer::new(&self.blocks[c], self.field).contains_sparse(&v),
        })
    }

    pub fn contains(&self, other: &GradedPiece) -> Result<bool, IdealError> {
        self.check_compatible(other)?;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            let red = Reducer::new(a, self.field);
            for row in b.dense_rows() {
                let v: Vec<(usize, u32)> =
                    row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
                if !red.contains_sparse(&v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Row-space intersection per class, as the complement of the sum of
    /// complements.
    pub fn intersect(&self, other: &GradedPiece) -> Result<GradedPiece, IdealError> {
        self.check_compatible(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                let n = a.ncols();
                let mut sum = Echelon::new(self.field, n);
                for k in a.to_echelon(&self.field).kernel_basis() {
                    sum.insert(k);
                }
                for k in b.to_echelon(&self.field).kernel_basis() {
                    sum.insert(k);
                }
                let mut out = Echelon::new(self.field, n);
                for k in sum.kernel_basis() {
                    out.insert(k);
                }
                Block::from_echelon(&out)
            })
            .collect();
        Ok(GradedPiece { blocks, ..self.clone() })
    }

    pub fn sum(&self, other: &GradedPiece) -> Result<GradedPiece, IdealError> {
        self.check_compatible(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                let mut e = a.to_echelon(&self.field);
                for r in b.dense_rows() {
                    e.insert(r);
                }
                Block::from_echelon(&e)
            })
            .collect();
        Ok(GradedPiece { blocks, ..self.clone() })
    }

    pub fn export(&self) -> PieceExport {
        let n = self.table.len();
        let mut rows = Vec::with_capacity(self.dimension());
        for (c, b) in self.blocks.iter().enumerate() {
            let members = &self.table.classes[c].members;
            for r in b.dense_rows() {
                let mut v = vec![0u32; n];
                for (i, &x) in r.iter().enumerate() {
                    v[members[i] as usize] = x;
                }
                rows.push(v);
            }
        }
        rows.sort_by_key(|r| r.iter().position(|&x| x != 0));
        PieceExport {
            degree: self.degree,
            prime: self.field.modulus(),
            monomial_order: "grevlex".into(),
            grading: self.table.grading.name.into(),
            monomials: (0..n).map(|g| self.table.monomial_text(g)).collect(),
            dimension: self.dimension(),
            rows,
        }
    }
}

/// Candidate rows of one class, offered to a sink that returns `true` once
/// the class is full (further rows are useless).
pub(crate) type RowSource<'a> = dyn Fn(usize, &mut dyn FnMut(&[(usize, u32)]) -> bool) + Sync + 'a;

/// Builds blocks class by class from candidate sparse rows.
pub(crate) fn build_blocks(table: &MonomialTable, field: PrimeField, seed: u64, threads: usize, rows_for: &RowSource) -> Vec<Block> {
    super::parallel::map_indexed(table.classes.len(), threads, |c| {
        let n = table.class_size(c);
        let mut stream = RowStream::new(field, n, seed ^ ((c as u64) << 20));
        let mut push = |v: &[(usize, u32)]| {
            if stream.rank() < n {
                stream.push_sparse(v);
            }
            stream.rank() == n
        };
        rows_for(c, &mut push);
        Block::from_echelon(stream.echelon())
    })
}
