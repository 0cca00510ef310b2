use proptest::prelude::*;

use chow_core::exact::*;

#[test]
fn identity_rank_over_small_prime() {
    let f = PrimeField::new(1009).unwrap();
    let m = FpMatrix::from_i64_rows(f, &[vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!(m.rank(), 2);
    assert!(matches!(PrimeField::new(1007), Err(ExactError::NotPrime(1007))));
}

#[test]
fn consensus_examples() {
    let primes = select_primes(1, 2);
    let r = consensus_rank(|_| Ok(3), &primes).unwrap();
    assert_eq!(r.rank, 3);
    assert!(r.agreed());
    // one unlucky prime: fresh primes settle on the larger rank
    let bad = primes[0];
    let r = consensus_rank(|p| Ok(if p == bad { 2 } else { 3 }), &primes).unwrap();
    assert_eq!(r.rank, 3);
    assert_eq!(r.per_prime.len(), 4);
    assert!(!r.agreed());
    assert!(matches!(consensus_rank(|p| Ok(p as usize), &primes), Err(ExactError::ConsensusFailure(_))));
    assert!(matches!(consensus_rank(|_| Ok(1), &primes[..1]), Err(ExactError::TooFewPrimes(_))));
}

#[test]
fn rational_text_round_trip() {
    for s in ["0", "-3", "7/2", "-11/13"] {
        assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
    }
    assert_eq!(parse_rat("4/6").unwrap(), rat(2, 3));
    assert!(parse_rat("1/0").is_err());
    assert!(parse_rat("x").is_err());
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..5, c), r))
}

proptest! {
    #[test]
    fn modular_rank_matches_rational_rank(rows in small_matrix()) {
        let q: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        let exact = RatMatrix::from_rows(q).unwrap().rank();
        for p in select_primes(3, 2) {
            let m = FpMatrix::from_i64_rows(PrimeField::new(p).unwrap(), &rows).unwrap();
            prop_assert_eq!(m.rank(), exact);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in small_matrix()) {
        let f = PrimeField::new(prime_list()[0]).unwrap();
        let m = FpMatrix::from_i64_rows(f, &rows).unwrap();
        let (rank, kernel) = rank_and_kernel(&m);
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for k in kernel {
            prop_assert!(m.mul_vec(&k).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn crt_reconstructs_small_rationals(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = rat(n, d);
        let residues: Vec<(u64, u64)> = select_primes(9, 2)
            .into_iter()
            .map(|p| (PrimeField::new(p).unwrap().from_rat(&x).unwrap(), p))
            .collect();
        let (a, m) = crt_combine(&residues);
        prop_assert_eq!(rational_reconstruct(&a, &m), Some(x));
    }

    #[test]
    fn field_inverse(a in 1u64..1_000_000) {
        let f = PrimeField::new(prime_list()[5]).unwrap();
        prop_assert_eq!(f.mul_mod(a, f.inv_mod(a).unwrap()), 1);
        let r = rat(a as i64, 7);
        prop_assert_eq!(RationalField.mul(&r, &RationalField.inv(&r).unwrap()), rat(1, 1));
    }
}
