use chow_core::components::{sample_many, Family};
use chow_core::exact::{prime_list, PrimeField, RationalField};
use chow_core::grassmann::{coisotropic_ideal_generators, v_vars, InvariantVector};
use chow_core::ideals::*;
use chow_core::poly::RatPoly;

fn field(i: usize) -> PrimeField {
    PrimeField::new(prime_list()[i]).unwrap()
}

fn witnesses(f: Family, d: u32) -> (Vec<InvariantVector>, usize) {
    let n = monomial_count(20, d as u64) as usize;
    let m = n.div_ceil(10);
    (sample_many(f, 100, n + m).unwrap().into_iter().map(|w| w.v).collect(), m)
}

fn forms(p: &GradedPiece) -> Vec<SparseForm> {
    p.basis_forms().into_iter().map(|x| x.1).collect()
}

fn poly(text: &str) -> RatPoly {
    RatPoly::parse(RationalField, v_vars(), text).unwrap()
}

#[test]
fn ambient_counts() {
    assert_eq!(monomial_count(20, 2), 210);
    assert_eq!(monomial_count(20, 3), 1540);
    assert_eq!(monomial_count(20, 5), 42504);
}

#[test]
fn torus_blocks_agree_with_one_dense_block() {
    let f = field(0);
    let torus = Lab::torus(1, 5);
    let dense = Lab::new(Grading::trivial(), 1, 5);
    let (pts, m) = witnesses(Family::Hurwitz, 2);
    let pts = points_mod(&pts, &f).unwrap();
    let a = torus.vanishing_piece(f, &pts, 2, m).unwrap();
    let b = dense.vanishing_piece(f, &pts, 2, m).unwrap();
    assert_eq!(b.blocks.len(), 1);
    assert_eq!((a.dimension(), b.dimension()), (20, 20));
    for g in forms(&a) {
        assert!(b.contains_form(&g).unwrap());
    }
    let gens = GeneratorSet::new("I", Provenance::Constructed, coisotropic_ideal_generators().unwrap()).unwrap();
    let red = gens.reduce(&f).unwrap();
    let a = torus.ideal_piece(f, &red, 3).unwrap();
    let b = dense.ideal_piece(f, &red, 3).unwrap();
    assert_eq!((a.dimension(), b.dimension()), (175, 175));
    for g in forms(&a) {
        assert!(b.contains_form(&g).unwrap());
    }
}

#[test]
fn vanishing_piece_is_canonical() {
    let lab = Lab::torus(1, 2);
    let (pts, m) = witnesses(Family::ChowConic, 2);
    let f = field(1);
    let a = lab.vanishing_piece(f, &points_mod(&pts, &f).unwrap(), 2, m).unwrap();
    let mut rev = pts.clone();
    rev.reverse();
    let b = lab.vanishing_piece(f, &points_mod(&rev, &f).unwrap(), 2, m).unwrap();
    assert_eq!(a, b);
    let g = field(2);
    let c = lab.vanishing_piece(g, &points_mod(&pts, &g).unwrap(), 2, m).unwrap();
    assert_eq!(a.class_dimensions(), c.class_dimensions());
    assert_eq!(a.dimension(), 21);
    let few = points_mod(&pts[..100], &f).unwrap();
    assert!(matches!(lab.vanishing_piece(f, &few, 2, m), Err(IdealError::TooFewPoints { .. })));
}

#[test]
fn coisotropic_cubics_vanish_on_hurwitz_forms() {
    let lab = Lab::torus(1, 3);
    let f = field(0);
    let gens = GeneratorSet::new("I", Provenance::Constructed, coisotropic_ideal_generators().unwrap()).unwrap();
    let i3 = lab.ideal_piece(f, &gens.reduce(&f).unwrap(), 3).unwrap();
    let (pts, m) = witnesses(Family::Hurwitz, 3);
    let h3 = lab.vanishing_piece(f, &points_mod(&pts, &f).unwrap(), 3, m).unwrap();
    assert!(h3.contains(&i3).unwrap());
    let i4 = lab.products(&i3, 4).unwrap();
    assert!(i4.dimension() >= i3.dimension());
}

#[test]
fn toy_ideals() {
    let lab = Lab::torus(1, 4);
    let f = field(3);
    let v0 = GeneratorSet::new("v0", Provenance::Constructed, vec![poly("v0")]).unwrap().reduce(&f).unwrap();
    for d in 1..=3 {
        let piece = lab.ideal_piece(f, &v0, d).unwrap();
        assert_eq!(piece.dimension() as u64, monomial_count(20, d as u64 - 1));
        assert_eq!(lab.colon_irrelevant_piece(f, &v0, d).unwrap(), piece);
    }
    // (v0^2) : m is (v0^2) in degree 2; (v0 v_i : all i) : m contains v0
    let sq = GeneratorSet::new("sq", Provenance::Constructed, vec![poly("v0^2")]).unwrap().reduce(&f).unwrap();
    assert_eq!(lab.colon_irrelevant_piece(f, &sq, 2).unwrap().dimension(), 1);
    let many: Vec<RatPoly> = (0..20).map(|i| poly(&format!("v0*v{i}"))).collect();
    let many = GeneratorSet::new("m", Provenance::Constructed, many).unwrap().reduce(&f).unwrap();
    assert_eq!(lab.colon_irrelevant_piece(f, &many, 1).unwrap().dimension(), 1);
    assert_eq!(lab.minimal_generator_count(f, &many, 2).unwrap(), 20);
    assert!(matches!(lab.ideal_piece(f, &sq, 1), Err(IdealError::DegreeTooSmall { .. })));
    // colon of (v0) by (v1): v1 is a nonzerodivisor
    let v1 = GeneratorSet::new("v1", Provenance::Constructed, vec![poly("v1")]).unwrap().reduce(&f).unwrap();
    assert_eq!(lab.colon_piece(f, &v0, &v1, 2).unwrap(), lab.ideal_piece(f, &v0, 2).unwrap());
}

#[test]
fn pieces_intersect_and_sum() {
    let lab = Lab::torus(1, 6);
    let f = field(0);
    let a = GeneratorSet::new("a", Provenance::Constructed, vec![poly("v0")]).unwrap().reduce(&f).unwrap();
    let b = GeneratorSet::new("b", Provenance::Constructed, vec![poly("v1")]).unwrap().reduce(&f).unwrap();
    let pa = lab.ideal_piece(f, &a, 2).unwrap();
    let pb = lab.ideal_piece(f, &b, 2).unwrap();
    assert_eq!(pa.intersect(&pb).unwrap().dimension(), 1);
    assert_eq!(pa.sum(&pb).unwrap().dimension(), 20 + 20 - 1);
    assert!(pa.sum(&pb).unwrap().contains(&pa).unwrap());
    let other = lab.ideal_piece(field(1), &GeneratorSet::new("a", Provenance::Constructed, vec![poly("v0")]).unwrap().reduce(&field(1)).unwrap(), 2).unwrap();
    assert_eq!(pa.intersect(&other), Err(IdealError::PrimeMismatch));
    assert!(matches!(pa.intersect(&lab.ideal_piece(f, &a, 3).unwrap()), Err(IdealError::DegreeMismatch(2, 3))));
}

#[test]
fn archives_and_exports_round_trip() {
    let lab = Lab::new(Grading::trivial(), 1, 7);
    let gens = GeneratorSet::new("t", Provenance::Interpolated, vec![poly("v0*v1 - 2/3*v5^2"), poly("v19")]).unwrap();
    let a = gens.to_archive();
    let text = serde_json::to_string(&a).unwrap();
    let back: GeneratorArchive = serde_json::from_str(&text).unwrap();
    assert_eq!(GeneratorSet::from_archive(&back).unwrap(), gens);
    assert_eq!(a.degrees, vec![2, 1]);
    assert!(GeneratorSet::new("bad", Provenance::Constructed, vec![poly("v0 + v1^2")]).is_err());
    let f = field(0);
    let p = lab.ideal_piece(f, &gens.reduce(&f).unwrap(), 2).unwrap();
    let e = p.export();
    let back: PieceExport = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
    assert_eq!(back, e);
    assert_eq!(e.dimension, p.dimension());
    assert_eq!(e.monomials.len(), 210);
}

#[test]
fn rational_reconstruction_of_an_interpolated_piece() {
    let lab = Lab::torus(1, 8);
    let (pts, m) = witnesses(Family::Squares, 2);
    let polys = reconstruct_stable(1, |f| lab.vanishing_piece(f, &points_mod(&pts, &f)?, 2, m)).unwrap();
    assert_eq!(polys.len(), 84);
    let check = sample_many(Family::Squares, 999, 10).unwrap();
    for w in &check {
        for q in &polys {
            assert!(num::Zero::is_zero(&q.eval(&w.v.0).unwrap()));
        }
    }
}

#[test]
fn consensus_over_two_primes() {
    let lab = Lab::torus(1, 9);
    let (pts, m) = witnesses(Family::Hurwitz, 2);
    let plan = PrimePlan::seeded(4);
    let pair = plan.consensus(|f| lab.vanishing_piece(f, &points_mod(&pts, &f)?, 2, m)).unwrap();
    assert_eq!(pair.dimension(), 20);
    assert_eq!(pair.trials.len(), 2);
    assert!(PrimePlan::explicit(vec![prime_list()[0]]).is_err());
    assert!(PrimePlan::explicit(vec![prime_list()[0], 1007]).is_err());
}
