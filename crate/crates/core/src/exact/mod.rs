//! Exact scalars, prime fields and dense modular linear algebra.
//!
//! Everything here is deterministic: primes come from a fixed list, and the
//! Monte Carlo shortcuts in [`echelon::RowStream`] draw their randomness from
//! seeded generators.

mod consensus;
mod crt;
mod echelon;
mod field;
mod fpmat;
mod primes;
mod rat;
mod ratmat;
mod scalar;

pub use consensus::{consensus_rank, ConsensusRank};
pub use crt::{crt_combine, rational_reconstruct, reconstruct_vector};
pub use echelon::{Echelon, RowStream};
pub use field::{Field, PrimeField, RationalField};
pub use fpmat::{rank_and_kernel, FpMatrix};
pub use primes::{is_prime, prime_list, select_primes};
pub use rat::{format_rat, parse_rat, rat, Rat};
pub use ratmat::{rat_rank, rat_solve, RatMatrix};
pub use scalar::{Jet, RingElem, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range (must be < 2^62)")]
    ModulusTooLarge(u64),
    #[error("denominator of {value} is divisible by {prime}")]
    DenominatorDivisible { value: String, prime: u64 },
    #[error("need at least two distinct primes, got {0:?}")]
    TooFewPrimes(Vec<u64>),
    #[error("ranks disagree across primes after retry: {0:?}")]
    ConsensusFailure(Vec<(u64, usize)>),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}
