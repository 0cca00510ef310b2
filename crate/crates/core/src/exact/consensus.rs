use std::collections::BTreeSet;

use super::{prime_list, ExactError};

/// Outcome of a rank computed independently modulo several primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsensusRank {
    pub rank: usize,
    /// Every `(prime, rank)` evaluated, including retries.
    pub per_prime: Vec<(u64, usize)>,
    /// Human-readable notes; empty when the first primes agreed.
    pub diagnostics: Vec<String>,
}

impl ConsensusRank {
    pub fn agreed(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Computes `rank_at(p)` for each prime and reconciles the answers.
///
/// Ranks of a reduction can only drop at unlucky primes, so the maximum is
/// the candidate. On disagreement two fresh primes from the fixed list are
/// tried; they must both reproduce the maximum, otherwise the result is
/// `ConsensusFailure`.
pub fn consensus_rank<F>(mut rank_at: F, primes: &[u64]) -> Result<ConsensusRank, ExactError>
where
    F: FnMut(u64) -> Result<usize, ExactError>,
{
    let distinct: BTreeSet<u64> = primes.iter().copied().collect();
    if distinct.len() < 2 || distinct.len() != primes.len() {
        return Err(ExactError::TooFewPrimes(primes.to_vec()));
    }
    let mut per_prime = Vec::new();
    for &p in primes {
        per_prime.push((p, rank_at(p)?));
    }
    let max = per_prime.iter().map(|x| x.1).max().unwrap_or(0);
    if per_prime.iter().all(|x| x.1 == max) {
        return Ok(ConsensusRank { rank: max, per_prime, diagnostics: Vec::new() });
    }
    let mut diagnostics = vec![format!("ranks disagree: {per_prime:?}")];
    let fresh: Vec<u64> = prime_list()
        .iter()
        .copied()
        .filter(|p| !distinct.contains(p))
        .take(2)
        .collect();
    let mut retry = Vec::new();
    for p in fresh {
        retry.push((p, rank_at(p)?));
    }
    per_prime.extend(retry.iter().copied());
    let retry_max = retry.iter().map(|x| x.1).max().unwrap_or(0);
    if retry.len() < 2 || retry.iter().any(|x| x.1 != retry_max) || retry_max < max {
        return Err(ExactError::ConsensusFailure(per_prime));
    }
    diagnostics.push(format!("fresh primes agree on rank {retry_max}"));
    Ok(ConsensusRank { rank: retry_max, per_prime, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{FpMatrix, PrimeField};

    fn rank_of(rows: Vec<Vec<i64>>) -> impl FnMut(u64) -> Result<usize, ExactError> {
        move |p| {
            let f = PrimeField::new(p)?;
            Ok(FpMatrix::from_i64_rows(f, &rows)?.rank())
        }
    }

    #[test]
    fn agreeing_primes() {
        let r = consensus_rank(rank_of(vec![vec![2, 4], vec![1, 2]]), &[1000003, 1000033]).unwrap();
        assert_eq!(r.rank, 1);
        assert!(r.agreed());
    }

    #[test]
    fn unlucky_prime_is_outvoted() {
        let r =
            consensus_rank(rank_of(vec![vec![1000003, 0], vec![0, 1]]), &[1000003, 1000033]).unwrap();
        assert_eq!(r.rank, 2);
        assert!(!r.agreed());
        assert_eq!(r.per_prime[0], (1000003, 1));
        assert_eq!(r.per_prime.len(), 4);
    }

    #[test]
    fn rejects_single_prime() {
        assert!(matches!(
            consensus_rank(rank_of(vec![vec![1]]), &[1000003]),
            Err(ExactError::TooFewPrimes(_))
        ));
        assert!(matches!(
            consensus_rank(rank_of(vec![vec![1]]), &[1000003, 1000003]),
            Err(ExactError::TooFewPrimes(_))
        ));
    }

    #[test]
    fn persistent_disagreement_fails() {
        let mut calls = 0;
        let flaky = |_p: u64| {
            calls += 1;
            Ok(calls)
        };
        assert!(matches!(
            consensus_rank(flaky, &[1000003, 1000033]),
            Err(ExactError::ConsensusFailure(_))
        ));
    }
}
