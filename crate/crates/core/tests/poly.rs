use std::sync::Arc;

use proptest::prelude::*;

use chow_core::exact::{rat, Rat, RationalField};
use chow_core::poly::{DiffForm, Monomial, MPoly, RatPoly, VarSet};

fn ring() -> Arc<VarSet> {
    VarSet::new(["x", "y", "z", "w", "t"]).unwrap()
}

fn poly() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, 5), -5i64..6, 1i64..4), 0..6).prop_map(|terms| {
        let t = terms.into_iter().map(|(e, n, d)| (Monomial(e), rat(n, d))).collect();
        MPoly::from_terms(RationalField, ring(), t)
    })
}

fn one_form() -> impl Strategy<Value = DiffForm<RationalField>> {
    [poly(), poly(), poly(), poly()].prop_map(|c| DiffForm::one_form(c).unwrap())
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MPoly::one(RationalField, ring()), a.clone());
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), i in 0usize..5) {
        prop_assert_eq!((&a * &b).diff(i), &(&a.diff(i) * &b) + &(&a * &b.diff(i)));
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let back = RatPoly::parse(RationalField, ring(), &a.to_text()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in prop::collection::vec(-3i64..4, 5)) {
        let pt: Vec<Rat> = x.iter().map(|&v| rat(v, 1)).collect();
        prop_assert_eq!((&a * &b).eval(&pt).unwrap(), a.eval(&pt).unwrap() * b.eval(&pt).unwrap());
    }

    #[test]
    fn division_identity(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn d_squared_is_zero(f in poly(), w in one_form()) {
        let df = DiffForm::function(f).unwrap().exterior_derivative().unwrap();
        prop_assert!(df.exterior_derivative().unwrap().is_zero());
        let dw = w.exterior_derivative().unwrap();
        prop_assert!(dw.exterior_derivative().unwrap().is_zero());
    }

    #[test]
    fn graded_leibniz_for_forms(f in poly(), w in one_form()) {
        // d(f w) = df ^ w + f dw
        let lhs = w.scale(&f).exterior_derivative().unwrap();
        let df = DiffForm::function(f.clone()).unwrap().exterior_derivative().unwrap();
        let rhs = df.wedge(&w).unwrap().add(&w.exterior_derivative().unwrap().scale(&f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_anticommutes_on_one_forms(a in one_form(), b in one_form()) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert!(ab.add(&ba).unwrap().is_zero());
    }
}
