use num::Zero;
use proptest::prelude::*;

use chow_core::components::*;
use chow_core::exact::{rat, Rat};
use chow_core::grassmann::{coisotropy_check, PlueckerVector, QuadricCoeffs};

fn ints(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..5, n)
}

fn sym(x: &[i64]) -> SymMatrix4<Rat> {
    SymMatrix4(std::array::from_fn(|i| rat(x[i], 1)))
}

fn frame(x: &[i64]) -> [[Rat; 4]; 2] {
    std::array::from_fn(|r| std::array::from_fn(|c| rat(x[4 * r + c], 1)))
}

fn value(q: &QuadricCoeffs, rows: &[[Rat; 4]; 2]) -> Rat {
    q.to_form().eval_rat(&PlueckerVector::from_frame(rows).0).unwrap()
}

/// `g^T M g` for a 4x4 integer matrix `g`.
fn congruence(m: &SymMatrix4<Rat>, g: &[i64]) -> SymMatrix4<Rat> {
    SymMatrix4::from_fn(|i, j| {
        let mut s = Rat::zero();
        for a in 0..4 {
            for b in 0..4 {
                s += rat(g[4 * a + i] * g[4 * b + j], 1) * m.get(a, b);
            }
        }
        s
    })
}

/// Rows of `X g^T`.
fn moved(rows: &[[Rat; 4]; 2], g: &[i64]) -> [[Rat; 4]; 2] {
    std::array::from_fn(|r| std::array::from_fn(|a| (0..4).map(|b| &rows[r][b] * rat(g[4 * a + b], 1)).sum()))
}

#[test]
fn hurwitz_form_is_the_tangency_determinant() {
    // Q_M(X) = det(X M X^T) by Cauchy-Binet
    let m = sym(&[2, 1, 0, -1, 3, 1, 0, 1, 2, 4]);
    let x = frame(&[1, 2, 0, -1, 0, 1, 3, 1]);
    let xm: Vec<Vec<Rat>> = (0..2)
        .map(|r| (0..4).map(|j| (0..4).map(|k| &x[r][k] * m.get(k, j)).sum()).collect())
        .collect();
    let g: Vec<Vec<Rat>> = (0..2).map(|r| (0..2).map(|s| (0..4).map(|j| &xm[r][j] * &x[s][j]).sum()).collect()).collect();
    let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
    assert_eq!(value(&hurwitz_form(&m), &x), det);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hurwitz_functoriality(m in ints(10), g in ints(16), x in ints(8)) {
        let m = sym(&m);
        let x = frame(&x);
        prop_assert_eq!(value(&hurwitz_form(&congruence(&m, &g)), &x), value(&hurwitz_form(&m), &moved(&x, &g)));
    }

    #[test]
    fn line_pair_is_symmetric_and_vanishes_on_meeting_lines(a in ints(8), b in ints(8), c in ints(4)) {
        let l1 = PlueckerVector::from_frame(&frame(&a));
        let l2 = PlueckerVector::from_frame(&frame(&b));
        prop_assume!(l1.0.iter().any(|x| !x.is_zero()) && l2.0.iter().any(|x| !x.is_zero()));
        let q = chow_line_pair(&l1, &l2).unwrap();
        prop_assert_eq!(&q, &chow_line_pair(&l2, &l1).unwrap());
        // a line through a point of l1
        let f = frame(&a);
        let through = [f[0].clone(), std::array::from_fn(|i| rat(c[i], 1))];
        prop_assert!(value(&q, &through).is_zero());
        prop_assert!(q.invariant().is_zero() || coisotropy_check(&q).unwrap().is_some());
    }

    #[test]
    fn conic_form_ignores_m0_shifts(v in ints(4), m1 in ints(10), rho in -3i64..4, k in 1i64..4) {
        let v: [Rat; 4] = std::array::from_fn(|i| rat(v[i], 1));
        let m0 = SymMatrix4::outer(&v);
        let m1 = sym(&m1);
        let Ok(q) = chow_conic(&m0, &m1) else { return Ok(()) };
        let shifted = chow_conic(&m0, &m1.add_scaled(&m0, &rat(rho, 1))).unwrap();
        prop_assert_eq!(&shifted, &q);
        let scaled = chow_conic(&m0, &SymMatrix4(m1.0.clone().map(|x| x * rat(k, 1)))).unwrap();
        prop_assert_eq!(scaled, q.scale(&rat(k, 1)));
    }

    #[test]
    fn conic_functoriality(v in ints(4), m1 in ints(10), g in ints(16), x in ints(8)) {
        let v: [Rat; 4] = std::array::from_fn(|i| rat(v[i], 1));
        let m0 = SymMatrix4::outer(&v);
        let m1 = sym(&m1);
        let Ok(q) = chow_conic(&m0, &m1) else { return Ok(()) };
        let Ok(q2) = chow_conic(&congruence(&m0, &g), &congruence(&m1, &g)) else { return Ok(()) };
        let x = frame(&x);
        prop_assert_eq!(value(&q2, &x), value(&q, &moved(&x, &g)));
    }

    #[test]
    fn witnesses_rebuild_and_round_trip(seed in 0u64..1000) {
        for f in Family::ALL {
            let w = sample(f, seed).unwrap();
            prop_assert_eq!(&WitnessPoint::from_params(seed, w.params.clone()).unwrap(), &w);
            let mut buf = Vec::new();
            write_archive(&mut buf, std::slice::from_ref(&w)).unwrap();
            prop_assert_eq!(read_archive(&buf[..]).unwrap(), vec![w.clone()]);
            prop_assert!(coisotropy_check(&w.v.to_quadric()).unwrap().is_some());
        }
    }
}

#[test]
fn tampered_archive_is_rejected() {
    let w = sample(Family::Squares, 3).unwrap();
    let mut buf = Vec::new();
    write_archive(&mut buf, &[w.clone()]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let first = w.v.to_strings()[0].clone();
    let tampered = text.replacen(&format!("\"{first}\""), "\"12345\"", 1);
    assert!(read_archive(tampered.as_bytes()).is_err());
    assert!(read_archive("not json\n".as_bytes()).is_err());
}

#[test]
fn family_names_parse() {
    for f in Family::ALL {
        assert_eq!(Family::parse(f.name()), Some(f));
    }
    assert_eq!(Family::parse("nope"), None);
}
