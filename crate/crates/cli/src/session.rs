//! Shared state of one run: seeded witness pools, generator sets, and
//! graded pieces cached per prime.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use chow_core::components::{sample_many, Family, WitnessPoint};
use chow_core::exact::PrimeField;
use chow_core::grassmann::{coisotropic_ideal_generators, InvariantVector};
use chow_core::ideals::{monomial_count, points_mod, GeneratorSet, GradedPiece, Lab, Provenance, SparseForm};
use chow_core::integrability::{j_generators, Census, JGenerator, PseudoDivision};

use crate::{CliError, RunConfig};

/// Seed spacing between runs: witnesses of seed `s` start at `s * SEED_STRIDE`.
pub const SEED_STRIDE: u64 = 10_000_000;
/// Offset of the evaluation witnesses, disjoint from the interpolation ones.
pub const CHECK_OFFSET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    I(u32),
    J(u32),
    Vanish(Vec<Family>, u32),
}

/// The integrability generators with their per-chart censuses.
#[derive(Debug, Clone)]
pub struct JData {
    pub generators: Vec<JGenerator>,
    pub set: GeneratorSet,
    pub censuses: Vec<Census>,
}

/// The 1330 cubic minors as a generator set in v0..v19.
pub fn coisotropic_set() -> Result<GeneratorSet, CliError> {
    Ok(GeneratorSet::new("coisotropic", Provenance::Constructed, coisotropic_ideal_generators()?)?)
}

pub struct Session {
    pub cfg: RunConfig,
    pub lab: Lab,
    pools: Mutex<HashMap<Family, Vec<InvariantVector>>>,
    pieces: Mutex<HashMap<(u64, Key), Arc<GradedPiece>>>,
    i_gens: OnceLock<GeneratorSet>,
    j_data: OnceLock<JData>,
}

impl Session {
    pub fn new(cfg: RunConfig) -> Session {
        let lab = Lab::torus(cfg.threads, cfg.seed);
        Session {
            cfg,
            lab,
            pools: Mutex::new(HashMap::new()),
            pieces: Mutex::new(HashMap::new()),
            i_gens: OnceLock::new(),
            j_data: OnceLock::new(),
        }
    }

    /// First seed of the interpolation witnesses of this run.
    pub fn interpolation_seed(&self) -> u64 {
        self.base()
    }

    fn base(&self) -> u64 {
        self.cfg.seed.wrapping_mul(SEED_STRIDE) % (u64::MAX - 2 * SEED_STRIDE)
    }

    /// The first `n` interpolation witnesses of a family.
    pub fn pool(&self, family: Family, n: usize) -> Result<Vec<InvariantVector>, CliError> {
        let mut pools = self.pools.lock().expect("no poisoning");
        let pool = pools.entry(family).or_default();
        if pool.len() < n {
            let extra = sample_many(family, self.base() + pool.len() as u64, n - pool.len())?;
            pool.extend(extra.into_iter().map(|w| w.v));
        }
        Ok(pool[..n].to_vec())
    }

    /// Evaluation witnesses, disjoint from every interpolation pool.
    pub fn check_witnesses(&self, family: Family, n: usize) -> Result<Vec<WitnessPoint>, CliError> {
        Ok(sample_many(family, self.base() + CHECK_OFFSET, n)?)
    }

    /// `n` witnesses drawn round-robin from the families.
    pub fn mixed(&self, families: &[Family], n: usize) -> Result<Vec<InvariantVector>, CliError> {
        let k = families.len();
        let per: Vec<Vec<InvariantVector>> =
            families.iter().map(|&f| self.pool(f, n.div_ceil(k))).collect::<Result<_, _>>()?;
        Ok((0..n).map(|i| per[i % k][i / k].clone()).collect())
    }

    pub fn i_generators(&self) -> Result<&GeneratorSet, CliError> {
        if let Some(g) = self.i_gens.get() {
            return Ok(g);
        }
        let set = coisotropic_set()?;
        Ok(self.i_gens.get_or_init(|| set))
    }

    pub fn j_data(&self) -> Result<&JData, CliError> {
        if let Some(j) = self.j_data.get() {
            return Ok(j);
        }
        let (generators, censuses) = j_generators(PseudoDivision::Reduced);
        let polys = generators.iter().map(|g| g.poly.clone()).filter(|p| !p.is_zero()).collect();
        let set = GeneratorSet::new("integrability", Provenance::Constructed, polys)?;
        Ok(self.j_data.get_or_init(|| JData { generators, set, censuses }))
    }

    fn cached(
        &self,
        field: PrimeField,
        key: Key,
        build: impl FnOnce() -> Result<GradedPiece, CliError>,
    ) -> Result<Arc<GradedPiece>, CliError> {
        let k = (field.modulus(), key);
        if let Some(p) = self.pieces.lock().expect("no poisoning").get(&k) {
            return Ok(p.clone());
        }
        let p = Arc::new(build()?);
        self.pieces.lock().expect("no poisoning").insert(k, p.clone());
        Ok(p)
    }

    /// `I_d`: the span of the cubic generators at degree 3, then `R_{d-3} I_3`.
    pub fn i_piece(&self, field: PrimeField, d: u32) -> Result<Arc<GradedPiece>, CliError> {
        self.cached(field, Key::I(d), || {
            if d <= 3 {
                Ok(self.lab.ideal_piece(field, &self.i_generators()?.reduce(&field)?, d)?)
            } else {
                Ok(self.lab.products(&*self.i_piece(field, 3)?, d)?)
            }
        })
    }

    pub fn j_forms(&self, field: PrimeField) -> Result<Vec<SparseForm>, CliError> {
        Ok(self.j_data()?.set.reduce(&field)?)
    }

    pub fn j_piece(&self, field: PrimeField, d: u32) -> Result<Arc<GradedPiece>, CliError> {
        self.cached(field, Key::J(d), || Ok(self.lab.ideal_piece(field, &self.j_forms(field)?, d)?))
    }

    /// Forms of degree `d` vanishing on the union of the families.
    pub fn vanishing(&self, field: PrimeField, families: &[Family], d: u32) -> Result<Arc<GradedPiece>, CliError> {
        let mut fams = families.to_vec();
        fams.sort();
        fams.dedup();
        self.cached(field, Key::Vanish(fams.clone(), d), || {
            let n = monomial_count(20, d as u64) as usize;
            let count = self.cfg.witness_count(d)?;
            let points = points_mod(&self.mixed(&fams, count)?, &field)?;
            Ok(self.lab.vanishing_piece(field, &points, d, RunConfig::margin(n))?)
        })
    }

    /// Prime pairs in the order they are tried.
    pub fn pairs(&self) -> Vec<[PrimeField; 2]> {
        self.cfg
            .primes
            .chunks(2)
            .filter(|c| c.len() == 2)
            .map(|c| [PrimeField::new(c[0]).expect("validated"), PrimeField::new(c[1]).expect("validated")])
            .collect()
    }

    /// Evaluates `f` at both primes of each pair until a pair agrees.
    pub fn agreed<T, F>(&self, f: F) -> Result<(T, [u64; 2]), CliError>
    where
        T: PartialEq + std::fmt::Debug,
        F: Fn(PrimeField) -> Result<T, CliError>,
    {
        let mut seen = Vec::new();
        for [a, b] in self.pairs() {
            let x = f(a)?;
            let y = f(b)?;
            if x == y {
                return Ok((x, [a.modulus(), b.modulus()]));
            }
            seen.push(format!("{}: {x:?}, {}: {y:?}", a.modulus(), b.modulus()));
        }
        Err(CliError::Consensus(seen.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pools_are_deterministic_and_disjoint() {
        let s = Session::new(RunConfig::new(3));
        let a = s.pool(Family::Squares, 3).unwrap();
        let b = s.pool(Family::Squares, 5).unwrap();
        assert_eq!(a[..], b[..3]);
        let c = s.check_witnesses(Family::Squares, 3).unwrap();
        assert!(c.iter().all(|w| !b.contains(&w.v)));
        let m = s.mixed(&[Family::Squares, Family::Hurwitz], 4).unwrap();
        assert_eq!(m[0], b[0]);
        assert_eq!(m[2], b[1]);
        assert_eq!(m[1], s.pool(Family::Hurwitz, 1).unwrap()[0]);
    }

    #[test]
    fn agreement_retries_and_fails() {
        let s = Session::new(RunConfig::new(1));
        let (v, p) = s.agreed(|_| Ok(7)).unwrap();
        assert_eq!(v, 7);
        assert_eq!(p.to_vec(), s.cfg.primes[..2].to_vec());
        let first = s.cfg.primes[0];
        let (_, p) = s.agreed(|f| Ok(f.modulus() == first)).unwrap();
        assert_eq!(p.to_vec(), s.cfg.primes[2..].to_vec());
        let err = s.agreed(|f| Ok(f.modulus())).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
