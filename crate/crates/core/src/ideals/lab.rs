//! Graded-piece constructions modulo one prime: spans of products,
//! interpolation from points, and colon ideals.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::exact::{Echelon, Field, PrimeField, RowStream};
use crate::grassmann::{InvariantVector, NV};

use super::monomials::{Grading, MonomialTable, Packed, Weight};
use super::parallel::map_indexed;
use super::piece::{build_blocks, Block, GradedPiece, Reducer, SparseForm};
use super::IdealError;

/// Monomial tables, grading and scheduling shared by all constructions.
#[derive(Debug)]
pub struct Lab {
    pub grading: Grading,
    pub threads: usize,
    pub seed: u64,
    tables: Mutex<BTreeMap<u32, Arc<MonomialTable>>>,
}

/// A form together with its weight, for grouping.
type Weighted = (Weight, SparseForm);

/// A point of affine 20-space modulo a prime.
pub type PointMod = [u32; NV];

/// Reduces a witness to a point modulo `field`.
pub fn point_mod(v: &InvariantVector, field: &PrimeField) -> Result<PointMod, IdealError> {
    let mut out = [0u32; NV];
    for (o, x) in out.iter_mut().zip(&v.0) {
        *o = field.from_rat(x)? as u32;
    }
    Ok(out)
}

impl Lab {
    pub fn new(grading: Grading, threads: usize, seed: u64) -> Lab {
        Lab { grading, threads: threads.max(1), seed, tables: Mutex::new(BTreeMap::new()) }
    }

    pub fn torus(threads: usize, seed: u64) -> Lab {
        Lab::new(Grading::torus(), threads, seed)
    }

    pub fn table(&self, d: u32) -> Result<Arc<MonomialTable>, IdealError> {
        let mut t = self.tables.lock().expect("no poisoning");
        if let Some(x) = t.get(&d) {
            return Ok(x.clone());
        }
        let table = MonomialTable::new(d, self.grading.clone())?;
        t.insert(d, table.clone());
        Ok(table)
    }

    fn weighted(&self, forms: &[SparseForm]) -> Result<Vec<Weighted>, IdealError> {
        let mut out = Vec::with_capacity(forms.len());
        for f in forms {
            let t = self.table(f.degree)?;
            if let Some(w) = f.weight(&t)? {
                out.push((w, f.clone()));
            }
        }
        Ok(out)
    }

    /// The span of `m * f` over generators `f` of degree at most `d` and
    /// monomials `m` of the complementary degree.
    pub fn ideal_piece(&self, field: PrimeField, gens: &[SparseForm], d: u32) -> Result<GradedPiece, IdealError> {
        let table = self.table(d)?;
        let gens = self.weighted(gens)?;
        let mut by_degree: BTreeMap<u32, Vec<&Weighted>> = BTreeMap::new();
        for g in &gens {
            if g.1.degree <= d {
                by_degree.entry(g.1.degree).or_default().push(g);
            }
        }
        if gens.iter().all(|g| g.1.degree > d) && !gens.is_empty() {
            return Err(IdealError::DegreeTooSmall { degree: d, min: gens.iter().map(|g| g.1.degree).min().unwrap_or(0) });
        }
        let mult_tables: HashMap<u32, Arc<MonomialTable>> =
            by_degree.keys().map(|&e| Ok((e, self.table(d - e)?))).collect::<Result<_, IdealError>>()?;
        let source = |c: usize, push: &mut dyn FnMut(&[(usize, u32)]) -> bool| {
            let w = table.classes[c].weight;
            let mut row = Vec::new();
            for (e, list) in &by_degree {
                let mt = &mult_tables[e];
                for (wf, f) in list.iter().map(|x| (&x.0, &x.1)) {
                    let Some(u) = w.checked_sub(*wf).and_then(|u| mt.class_of(u)) else {
                        continue;
                    };
                    for &g in &mt.classes[u].members {
                        let m = mt.monomials[g as usize];
                        row.clear();
                        row.extend(f.terms.iter().map(|&(t, x)| (table.locate(t.mul(m)).expect("degree d").1, x)));
                        if push(&row) {
                            return;
                        }
                    }
                }
            }
        };
        let blocks = build_blocks(&table, field, self.seed ^ 0x1de, self.threads, &source);
        Ok(GradedPiece { degree: d, field, table, blocks })
    }

    /// `R_{d-e} * piece` for a piece of degree `e <= d`.
    pub fn products(&self, piece: &GradedPiece, d: u32) -> Result<GradedPiece, IdealError> {
        let forms: Vec<SparseForm> = piece.basis_forms().into_iter().map(|x| x.1).collect();
        if forms.is_empty() {
            return Ok(GradedPiece::zero(self.table(d)?, piece.field));
        }
        self.ideal_piece(piece.field, &forms, d)
    }

    /// Values of all degree-d monomials at a point.
    fn monomial_values(table: &MonomialTable, field: &PrimeField, x: &PointMod, class: usize) -> Vec<u32> {
        let d = table.degree as usize;
        let mut pows = [[0u64; 8]; NV];
        for i in 0..NV {
            pows[i][0] = 1;
            for e in 1..=d {
                pows[i][e] = field.mul_mod(pows[i][e - 1], x[i] as u64);
            }
        }
        table.classes[class]
            .members
            .iter()
            .map(|&g| {
                let m: Packed = table.monomials[g as usize];
                let mut v = 1u64;
                for i in 0..NV {
                    let e = m.exponent(i) as usize;
                    if e > 0 {
                        v = field.mul_mod(v, pows[i][e]);
                    }
                }
                v as u32
            })
            .collect()
    }

    /// Forms of degree d vanishing at all points: the kernel of the
    /// evaluation matrix, class by class. The last `margin` points must not
    /// change any class rank.
    pub fn vanishing_piece(
        &self,
        field: PrimeField,
        points: &[PointMod],
        d: u32,
        margin: usize,
    ) -> Result<GradedPiece, IdealError> {
        let table = self.table(d)?;
        let need = table.len() + margin;
        if points.len() < need {
            return Err(IdealError::TooFewPoints { need, got: points.len() });
        }
        let lead = points.len() - margin;
        let results = map_indexed(table.classes.len(), self.threads, |c| {
            let n = table.class_size(c);
            let mut stream = RowStream::new(field, n, self.seed ^ 0x7a5 ^ ((c as u64) << 20));
            let mut before = None;
            for (k, x) in points.iter().enumerate() {
                if k == lead {
                    before = Some(stream.rank());
                }
                if stream.rank() == n {
                    break;
                }
                stream.push(Self::monomial_values(&table, &field, x, c));
            }
            let before = before.unwrap_or(stream.rank());
            let mut ker = Echelon::new(field, n);
            for k in stream.echelon().kernel_basis() {
                ker.insert(k);
            }
            (Block::from_echelon(&ker), before, stream.rank())
        });
        let mut blocks = Vec::with_capacity(results.len());
        for (c, (b, before, after)) in results.into_iter().enumerate() {
            if before != after {
                return Err(IdealError::Unstabilized { degree: d, class: c, before: table.class_size(c) - before, after: table.class_size(c) - after });
            }
            blocks.push(b);
        }
        Ok(GradedPiece { degree: d, field, table, blocks })
    }

    /// `{f in R_d : f * q in (gens)_{d + deg q} for every divisor q}`.
    pub fn colon_piece(
        &self,
        field: PrimeField,
        gens: &[SparseForm],
        divisors: &[SparseForm],
        d: u32,
    ) -> Result<GradedPiece, IdealError> {
        let table = self.table(d)?;
        let divisors = self.weighted(divisors)?;
        let mut targets: BTreeMap<u32, GradedPiece> = BTreeMap::new();
        for (_, q) in &divisors {
            if !targets.contains_key(&q.degree) {
                targets.insert(q.degree, self.ideal_piece(field, gens, d + q.degree)?);
            }
        }
        self.colon_with_targets(field, &table, &divisors, &targets)
    }

    /// Colon by the 20 variables.
    pub fn colon_irrelevant_piece(&self, field: PrimeField, gens: &[SparseForm], d: u32) -> Result<GradedPiece, IdealError> {
        let vars: Vec<SparseForm> = (0..NV).map(|i| SparseForm { degree: 1, terms: vec![(Packed::var(i), 1)] }).collect();
        self.colon_piece(field, gens, &vars, d)
    }

    /// Colon of an already computed piece by the variables.
    pub fn colon_irrelevant_of(&self, target: &GradedPiece) -> Result<GradedPiece, IdealError> {
        if target.degree == 0 {
            return Err(IdealError::DegreeTooSmall { degree: 0, min: 1 });
        }
        let table = self.table(target.degree - 1)?;
        let vars: Vec<SparseForm> = (0..NV).map(|i| SparseForm { degree: 1, terms: vec![(Packed::var(i), 1)] }).collect();
        let divisors = self.weighted(&vars)?;
        let mut targets = BTreeMap::new();
        targets.insert(1, target.clone());
        self.colon_with_targets(target.field, &table, &divisors, &targets)
    }

    fn colon_with_targets(
        &self,
        field: PrimeField,
        table: &Arc<MonomialTable>,
        divisors: &[Weighted],
        targets: &BTreeMap<u32, GradedPiece>,
    ) -> Result<GradedPiece, IdealError> {
        let reducers: BTreeMap<u32, Vec<Reducer>> = targets
            .iter()
            .map(|(&e, t)| (e, t.blocks.iter().map(|b| Reducer::new(b, field)).collect()))
            .collect();
        let blocks = map_indexed(table.classes.len(), self.threads, |c| {
            let n = table.class_size(c);
            let u = table.classes[c].weight;
            let mut stream = RowStream::new(field, n, self.seed ^ 0xc01 ^ ((c as u64) << 20));
            'outer: for (wq, q) in divisors {
                let target = &targets[&q.degree];
                let Some(tc) = target.table.class_of(u.add(*wq)) else {
                    continue;
                };
                let red = &reducers[&q.degree][tc];
                let nf = red.free_len();
                if nf == 0 {
                    continue;
                }
                // Columns: the normal form of m * q for each monomial m of the class.
                let mut cols = vec![0u32; nf * n];
                let mut buf = vec![0u32; nf];
                let mut prod = Vec::with_capacity(q.terms.len());
                for (k, &g) in table.classes[c].members.iter().enumerate() {
                    let m = table.monomials[g as usize];
                    prod.clear();
                    prod.extend(q.terms.iter().map(|&(t, x)| (target.table.locate(t.mul(m)).expect("degree").1, x)));
                    red.reduce_sparse(&prod, &mut buf);
                    for j in 0..nf {
                        cols[j * n + k] = buf[j];
                    }
                }
                for j in 0..nf {
                    let row = &cols[j * n..(j + 1) * n];
                    if row.iter().any(|&x| x != 0) {
                        stream.push(row.to_vec());
                        if stream.rank() == n {
                            break 'outer;
                        }
                    }
                }
            }
            let mut ker = Echelon::new(field, n);
            for k in stream.echelon().kernel_basis() {
                ker.insert(k);
            }
            Block::from_echelon(&ker)
        });
        Ok(GradedPiece { degree: table.degree, field, table: table.clone(), blocks })
    }

    /// `dim (gens)_d - dim (gens of degree < d)_d`.
    pub fn minimal_generator_count(&self, field: PrimeField, gens: &[SparseForm], d: u32) -> Result<usize, IdealError> {
        let full = self.ideal_piece(field, gens, d)?;
        let lower: Vec<SparseForm> = gens.iter().filter(|g| g.degree < d).cloned().collect();
        let low = if lower.is_empty() { 0 } else { self.ideal_piece(field, &lower, d)?.dimension() };
        Ok(full.dimension() - low)
    }

    /// `dim V_d - dim (R_1 V_{d-1})` for pieces of one ideal.
    pub fn new_generators(&self, lower: Option<&GradedPiece>, piece: &GradedPiece) -> Result<usize, IdealError> {
        let low = match lower {
            Some(l) => self.products(l, piece.degree)?.dimension(),
            None => 0,
        };
        Ok(piece.dimension() - low)
    }
}
