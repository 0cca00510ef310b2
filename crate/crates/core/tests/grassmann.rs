use num::Zero;
use proptest::prelude::*;

use chow_core::components::{hurwitz_form, SymMatrix4};
use chow_core::exact::{rat, Rat};
use chow_core::grassmann::*;

fn single(a: usize, b: usize) -> QuadricCoeffs {
    let mut q = QuadricCoeffs::zero();
    q.0[c_index(a, b)] = if a == b { rat(1, 1) } else { rat(1, 2) };
    q
}

fn sum_of_squares() -> QuadricCoeffs {
    (0..6).fold(QuadricCoeffs::zero(), |acc, a| acc.add(&single(a, a)))
}

#[test]
fn check_examples() {
    let q = single(0, 5);
    let cert = coisotropy_check(&q).unwrap().unwrap();
    assert_eq!((cert.s.clone(), cert.t.clone()), (rat(1, 1), rat(0, 1)));
    assert!(certificate_holds(&q, &cert));
    assert_eq!(catanese_normalize(&q).unwrap().lambda, rat(-1, 2));
    let q = single(0, 0).add(&single(1, 4));
    assert_eq!(coisotropy_check(&q).unwrap(), None);
    assert_eq!(fig1_rank(&q), 3);
    let q = sum_of_squares();
    let cert = coisotropy_check(&q).unwrap().unwrap();
    assert_eq!((cert.s, cert.t), (rat(0, 1), rat(4, 1)));
    assert_eq!(fig1_rank(&q), 2);
}

#[test]
fn coisotropic_minors_are_gauge_invariant_cubics() {
    let gens = coisotropic_ideal_generators().unwrap();
    assert_eq!(gens.len(), 1330);
    assert!(gens.iter().all(|g| g.is_zero() || g.total_degree() == Some(3)));
    assert_eq!(gens.iter().filter(|g| g.is_zero()).count(), 816);
}

#[test]
fn catanese_quadrics_are_quadrics() {
    let gens = catanese_generators();
    assert_eq!(gens.len(), 210);
    assert!(gens.iter().all(|g| g.is_zero() || g.total_degree() == Some(2)));
}

#[test]
fn invariant_round_trip() {
    let q = QuadricCoeffs::from_ints(std::array::from_fn(|i| i as i64 - 7));
    let v = q.invariant();
    assert_eq!(v.to_quadric().invariant(), v);
    assert_eq!(v.to_quadric().0[12], rat(0, 1));
    assert_eq!(InvariantVector::from_strings(&v.to_strings()).unwrap(), v);
    assert_eq!(QuadricCoeffs::from_strings(&q.to_strings()).unwrap(), q);
    assert!(QuadricCoeffs::from_strings(&["1".to_string()]).is_err());
}

fn coeffs() -> impl Strategy<Value = QuadricCoeffs> {
    prop::collection::vec(-3i64..4, NC).prop_map(|c| QuadricCoeffs::from_ints(c.try_into().unwrap()))
}

fn sym() -> impl Strategy<Value = SymMatrix4<Rat>> {
    prop::collection::vec(-4i64..5, 10).prop_map(|m| {
        let mut it = m.into_iter();
        let vals: Vec<Rat> = (0..10).map(|_| rat(it.next().unwrap(), 1)).collect();
        SymMatrix4(vals.try_into().unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gauge_preserves_invariants_and_minors(q in coeffs(), l in -5i64..6) {
        let g = q.gauge(&rat(l, 2));
        prop_assert_eq!(g.invariant(), q.invariant());
        prop_assert_eq!(fig1_rank(&q) <= 2, fig1_rank(&g) <= 2);
        prop_assume!(!q.invariant().is_zero());
        prop_assert_eq!(coisotropy_check(&q).unwrap().is_some(), coisotropy_check(&g).unwrap().is_some());
    }

    #[test]
    fn coisotropy_matches_matrix_rank(q in coeffs()) {
        prop_assume!(!q.invariant().is_zero());
        let cert = coisotropy_check(&q).unwrap();
        prop_assert_eq!(cert.is_some(), fig1_rank(&q) <= 2);
        if let Some(c) = cert {
            prop_assert!(certificate_holds(&q, &c));
            let k = kernel_from_certificate(&c.s, &c.t);
            prop_assert!(mat_vec(&fig1_numeric(&q), &k).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn hurwitz_forms_are_coisotropic(m in sym()) {
        let q = hurwitz_form(&m);
        prop_assume!(!q.invariant().is_zero());
        let cert = coisotropy_check(&q).unwrap();
        prop_assert!(cert.is_some());
        prop_assert!(certificate_holds(&q, &cert.unwrap()));
        let n = catanese_normalize(&q).unwrap();
        prop_assert_eq!(bracket_coeffs(&n.normalized), QuadricCoeffs::plucker().scale(&n.t));
        prop_assert!(catanese_normalize(&n.normalized).unwrap().lambda.is_zero());
        let lifted = q.add_plucker(&rat(3, 1));
        prop_assert_eq!(catanese_normalize(&lifted).unwrap().normalized, n.normalized);
    }

    #[test]
    fn scaling_scales_the_certificate(m in sym(), k in 1i64..5) {
        let q = hurwitz_form(&m);
        prop_assume!(!q.invariant().is_zero());
        let a = coisotropy_check(&q).unwrap().unwrap();
        let b = coisotropy_check(&q.scale(&rat(k, 1))).unwrap().unwrap();
        prop_assert_eq!(b.s, &a.s * rat(k, 1));
        prop_assert_eq!(b.t, &a.t * rat(k * k, 1));
    }
}
