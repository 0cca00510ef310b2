use std::path::PathBuf;

use chow_core::exact::{is_prime, select_primes};
use chow_core::ideals::{default_threads, monomial_count};

use crate::CliError;

/// Number of primes drawn when none are given: one pair plus one retry pair.
pub const AUTO_PRIMES: usize = 4;

/// Settings shared by all commands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    /// Witnesses per interpolation; `None` means monomial count plus margin.
    pub samples: Option<usize>,
    pub degree: u32,
    pub primes: Vec<u64>,
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub rational_reconstruct: bool,
}

impl RunConfig {
    pub fn new(seed: u64) -> RunConfig {
        RunConfig {
            seed,
            samples: None,
            degree: 4,
            primes: select_primes(seed, AUTO_PRIMES),
            threads: default_threads(),
            out: None,
            rational_reconstruct: false,
        }
    }

    /// Parses `auto` or a comma-separated list of primes in `(2^30, 2^31)`.
    pub fn parse_primes(seed: u64, text: &str) -> Result<Vec<u64>, CliError> {
        if text == "auto" {
            return Ok(select_primes(seed, AUTO_PRIMES));
        }
        let primes: Vec<u64> = text
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| CliError::Input(format!("bad prime {s:?}"))))
            .collect::<Result<_, _>>()?;
        let mut distinct = primes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 2 || distinct.len() != primes.len() {
            return Err(CliError::Input("need at least two distinct primes".into()));
        }
        for &p in &primes {
            if !(1 << 30..1 << 31).contains(&p) || !is_prime(p) {
                return Err(CliError::Input(format!("{p} is not a prime in (2^30, 2^31)")));
            }
        }
        Ok(primes)
    }

    /// Margin of extra witnesses checked for stabilization: 10%, rounded up.
    pub fn margin(monomials: usize) -> usize {
        monomials.div_ceil(10)
    }

    /// Witness count for an interpolation in degree `d`.
    pub fn witness_count(&self, d: u32) -> Result<usize, CliError> {
        let n = monomial_count(20, d as u64) as usize;
        let need = n + Self::margin(n);
        match self.samples {
            None => Ok(need),
            Some(s) if s >= need => Ok(s),
            Some(s) => Err(CliError::Input(format!("{s} samples given, degree {d} needs at least {need}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_counts() {
        let c = RunConfig::new(5);
        assert_eq!(c.primes.len(), 4);
        assert_eq!(RunConfig::parse_primes(5, "auto").unwrap(), c.primes);
        assert_eq!(RunConfig::parse_primes(0, "2147483647, 2147483629").unwrap(), vec![2147483647, 2147483629]);
        assert!(RunConfig::parse_primes(0, "2147483647").is_err());
        assert!(RunConfig::parse_primes(0, "2147483647,2147483647").is_err());
        assert!(RunConfig::parse_primes(0, "1000003,2147483647").is_err());
        assert_eq!(c.witness_count(2).unwrap(), 231);
        let mut s = c.clone();
        s.samples = Some(300);
        assert_eq!(s.witness_count(2).unwrap(), 300);
        assert!(s.witness_count(3).is_err());
    }
}
