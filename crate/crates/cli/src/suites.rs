//! Verification suites. Each returns a report of named sub-checks with
//! expected and computed values; modular quantities are accepted only when
//! two primes agree.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num::Zero;

use chow_core::components::{tangent_dimension, Family};
use chow_core::exact::{consensus_rank, ExactError, Field, FpMatrix, PrimeField, Rat, RatMatrix};
use chow_core::grassmann::{catanese_generators, catanese_normalize, fig1_symbolic, InvariantVector, NV};
use chow_core::ideals::{point_mod, Packed, points_mod, reconstruct_stable, GradedPiece, PointMod, SparseForm};
use chow_core::integrability::{chow_membership_test, j_generators, PseudoDivision};
use chow_core::poly::RatPoly;

use crate::latex::{parse_matrix, FIGURE1};
use crate::{CliError, Session, SuiteReport};

/// Criteria that are implemented faithfully but not attained.
pub const KNOWN_UNATTAINED: [u32; 1] = [9];

const H: Family = Family::Hurwitz;
const L: Family = Family::ChowLines;
const C: Family = Family::ChowConic;
const S: Family = Family::Squares;

/// Runs a suite and records its wall time.
pub fn timed(f: impl FnOnce() -> Result<SuiteReport, CliError>) -> Result<SuiteReport, CliError> {
    let t = Instant::now();
    let mut r = f()?;
    r.elapsed = t.elapsed();
    Ok(r)
}

fn forms(p: &GradedPiece) -> Vec<SparseForm> {
    p.basis_forms().into_iter().map(|x| x.1).collect()
}

/// Value of a form at a point modulo the prime.
pub fn eval_form(field: &PrimeField, f: &SparseForm, x: &PointMod) -> u64 {
    let mut acc = 0u64;
    for &(m, c) in &f.terms {
        let mut v = c as u64;
        for i in 0..NV {
            let e = m.exponent(i) as u64;
            if e > 0 {
                v = field.mul_mod(v, field.pow_mod(x[i] as u64, e));
            }
        }
        acc = field.add_mod(acc, v);
    }
    acc
}

fn vanishes_exactly(p: &RatPoly, v: &InvariantVector) -> Result<bool, CliError> {
    Ok(p.eval(&v.0)?.is_zero())
}

/// `beta_d = dim V_d - dim R_1 V_{d-1}` for the vanishing ideal of a union.
fn vanishing_beta(s: &Session, field: PrimeField, fams: &[Family], d: u32) -> Result<(usize, usize), CliError> {
    let top = s.vanishing(field, fams, d)?;
    let low = s.vanishing(field, fams, d - 1)?;
    Ok((top.dimension(), s.lab.new_generators(Some(&low), &top)?))
}

/// The triple intersection `V(C) ∩ V(L) ∩ V(S)` in degree `d`.
fn jtriple(s: &Session, field: PrimeField, d: u32) -> Result<GradedPiece, CliError> {
    let cl = s.vanishing(field, &[C], d)?.intersect(&*s.vanishing(field, &[L], d)?)?;
    Ok(cl.intersect(&*s.vanishing(field, &[S], d)?)?)
}

/// Criterion 1: the symbolic coisotropy matrix against the typeset one.
pub fn fig1(_: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("fig1");
    let typeset = parse_matrix(FIGURE1)?;
    let ours = fig1_symbolic();
    r.expect_eq("rows", 21, typeset.len());
    r.expect_eq("columns", 3, typeset.iter().map(Vec::len).max().unwrap_or(0));
    let mut matching = 0;
    for (i, row) in ours.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let t = typeset.get(i).and_then(|x| x.get(j)).map(RatPoly::to_text);
            if t.as_deref() == Some(entry.to_text().as_str()) {
                matching += 1;
            } else {
                r.note(format!("entry ({i},{j}): typeset {t:?}, computed {}", entry.to_text()));
            }
        }
    }
    r.expect_eq("entries equal as canonical strings", 63, matching);
    Ok(r)
}

/// Criterion 2: the 1330 minors span 175 cubics, by the block echelon and
/// by a dense rank over the full degree-3 space.
pub fn coisotropic_count(s: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("coisotropic_count");
    let gens = s.i_generators()?;
    r.expect_eq("generators", 1330, gens.polys.len());
    // A minor vanishes identically exactly when none of its rows is one of
    // the three where the first column is nonzero.
    let zero = gens.polys.iter().filter(|p| p.is_zero()).count();
    r.expect_eq("identically zero minors", 18 * 17 * 16 / 6, zero);
    r.expect_true("every other minor is a cubic", gens.polys.iter().all(|p| p.is_zero() || (p.is_homogeneous() && p.total_degree() == Some(3))));
    let table = s.lab.table(3)?;
    r.expect_eq("monomials of degree 3", 1540, table.len());
    let ((dim, beta), primes) = s.agreed(|f| {
        let piece = s.i_piece(f, 3)?;
        Ok((piece.dimension(), s.lab.minimal_generator_count(f, &gens.reduce(&f)?, 3)?))
    })?;
    r.use_primes(primes);
    r.expect_eq("dim I_3 (weight blocks)", 175, dim);
    r.expect_eq("beta_3(I)", 175, beta);
    let dense = consensus_rank(
        |p| {
            let field = PrimeField::new(p)?;
            let mut entries = vec![0u64; gens.polys.len() * table.len()];
            for (k, g) in gens.polys.iter().enumerate() {
                for (m, c) in g.terms() {
                    let col = Packed::from_exponents(&m.0)
                        .ok()
                        .and_then(|x| table.global_index(x))
                        .ok_or_else(|| ExactError::Shape("generator outside degree 3".into()))?;
                    entries[k * table.len() + col] = field.from_rat(c)?;
                }
            }
            Ok(FpMatrix::from_entries(field, gens.polys.len(), table.len(), entries)?.rank())
        },
        &primes,
    )?;
    r.expect_eq("rank of the dense 1330 x 1540 matrix", 175, dense.rank);
    r.expect_eq("nullity of the dense matrix", 1330 - 175, 1330 - dense.rank);
    Ok(r)
}

/// Criterion 3: minimal generator counts of the interpolated components.
pub fn component_counts(s: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("component_counts");
    let targets: [(&str, &[Family], u32, usize); 7] = [
        ("beta_2(Hurwitz)", &[H], 2, 20),
        ("beta_2(Squares)", &[S], 2, 84),
        ("beta_2(ChowLines)", &[L], 2, 0),
        ("beta_3(ChowLines)", &[L], 3, 265),
        ("beta_2(ChowConic)", &[C], 2, 21),
        ("beta_3(ChowConic)", &[C], 3, 35),
        ("beta_2(ChowConic ∩ ChowLines)", &[C, L], 2, 0),
    ];
    for (name, fams, d, want) in targets {
        let ((dim, beta), primes) = s.agreed(|f| vanishing_beta(s, f, fams, d))?;
        r.use_primes(primes);
        r.note(format!("{name}: piece dimension {dim}"));
        r.expect_eq(name, want, beta);
    }
    let ((dim, beta, same), primes) = s.agreed(|f| {
        let meet = s.vanishing(f, &[C], 3)?.intersect(&*s.vanishing(f, &[L], 3)?)?;
        let union = s.vanishing(f, &[C, L], 3)?;
        let low = s.vanishing(f, &[C], 2)?.intersect(&*s.vanishing(f, &[L], 2)?)?;
        let beta = s.lab.new_generators(Some(&low), &meet)?;
        Ok((meet.dimension(), beta, *union == meet))
    })?;
    r.use_primes(primes);
    r.note(format!("dim (ChowConic ∩ ChowLines)_3 = {dim}"));
    r.expect_eq("beta_3(ChowConic ∩ ChowLines)", 230, beta);
    r.expect_true("intersection equals vanishing on the union", same);
    Ok(r)
}

/// Criterion 4: `I_d` equals the intersection of the Hurwitz, line-pair and
/// squares pieces.
pub fn prop1(s: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("prop1");
    for d in 3..=s.cfg.degree.min(4) {
        let (row, primes) = s.agreed(|f| {
            let i = s.i_piece(f, d)?;
            let parts = [s.vanishing(f, &[H], d)?, s.vanishing(f, &[L], d)?, s.vanishing(f, &[S], d)?];
            let tri = parts[0].intersect(&parts[1])?.intersect(&parts[2])?;
            let dims: Vec<usize> = parts.iter().map(|p| p.dimension()).collect();
            Ok((i.dimension(), tri.dimension(), tri.contains(&i)?, i.contains(&tri)?, *i == tri, dims))
        })?;
        r.use_primes(primes);
        let (di, dt, fwd, back, eq, dims) = row;
        r.note(format!("degree {d}: Hurwitz, ChowLines, Squares pieces have dimensions {dims:?}"));
        if d == 3 {
            r.expect_eq("dim I_3", 175, di);
        }
        r.expect_eq(format!("dim intersection_{d} = dim I_{d}"), di, dt);
        r.expect_true(format!("I_{d} in intersection"), fwd);
        r.expect_true(format!("intersection in I_{d}"), back);
        r.expect_true(format!("equal echelon forms in degree {d}"), eq);
    }
    Ok(r)
}

/// Criterion 5: Hurwitz quadrics vanish on conics.
pub fn prop2(s: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("prop2");
    let checks = s.check_witnesses(C, 200)?;
    let ((dim, inside, bad), primes) = s.agreed(|f| {
        let h = s.vanishing(f, &[H], 2)?;
        let c = s.vanishing(f, &[C], 2)?;
        let pts: Vec<PointMod> = checks.iter().map(|w| point_mod(&w.v, &f)).collect::<Result<_, _>>()?;
        let hf = forms(&h);
        let bad = pts.iter().filter(|x| hf.iter().any(|q| eval_form(&f, q, x) != 0)).count();
        Ok((h.dimension(), c.contains(&h)?, bad))
    })?;
    r.use_primes(primes);
    r.expect_eq("dim (Hurwitz)_2", 20, dim);
    r.expect_true("(Hurwitz)_2 in (ChowConic)_2", inside);
    r.expect_eq("conic witnesses where a Hurwitz quadric is nonzero mod p", 0, bad);
    if s.cfg.rational_reconstruct {
        let n = s.cfg.witness_count(2)?;
        let pts = s.pool(H, n)?;
        let margin = crate::RunConfig::margin(210);
        let quadrics = reconstruct_stable(s.cfg.seed, |f| s.lab.vanishing_piece(f, &points_mod(&pts, &f)?, 2, margin))?;
        r.expect_eq("rational Hurwitz quadrics", 20, quadrics.len());
        let mut bad = 0;
        for w in &checks {
            let mut ok = true;
            for q in &quadrics {
                ok &= vanishes_exactly(q, &w.v)?;
            }
            bad += usize::from(!ok);
        }
        r.expect_eq("conic witnesses where a rational Hurwitz quadric is nonzero", 0, bad);
    } else {
        r.note("exact vanishing skipped (enable rational reconstruction)");
    }
    Ok(r)
}

/// Criterion 6: the colon of I by the squares' quadrics.
pub fn colon(s: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("colon");
    let top = s.cfg.degree.min(4);
    let (row, primes) = s.agreed(|f| {
        let i3 = forms(&*s.i_piece(f, 3)?);
        let sq = forms(&*s.vanishing(f, &[S], 2)?);
        let c3 = s.lab.colon_piece(f, &i3, &sq, 3)?;
        let same = c3 == *s.i_piece(f, 3)?;
        let c4 = if top >= 4 {
            let c4 = s.lab.colon_piece(f, &i3, &sq, 4)?;
            Some((c4.dimension(), s.lab.new_generators(Some(&c3), &c4)?))
        } else {
            None
        };
        Ok((sq.len(), c3.dimension(), same, c4))
    })?;
    r.use_primes(primes);
    let (nsq, d3, same, c4) = row;
    r.expect_eq("squares quadrics", 84, nsq);
    r.expect_eq("dim (I : Squares)_3", 175, d3);
    r.expect_true("(I : Squares)_3 = I_3", same);
    match c4 {
        Some((d4, b4)) => {
            r.note(format!("dim (I : Squares)_4 = {d4}"));
            r.expect_eq("beta_4(I : Squares)", 20, b4);
        }
        None => r.note("degree 4 skipped (degree cap below 4)"),
    }
    Ok(r)
}

/// Criterion 7: the Catanese quadrics and the normalization `Q + lambda P`.
pub fn catanese(s: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("catanese");
    let gens = catanese_generators();
    r.expect_eq("generators", 210, gens.len());
    r.expect_true("all homogeneous of degree 2", gens.iter().all(|g| g.is_zero() || (g.is_homogeneous() && g.total_degree() == Some(2))));
    let monos: BTreeSet<Vec<u16>> = gens.iter().flat_map(|g| g.terms().iter().map(|(m, _)| m.0.clone())).collect();
    let col: BTreeMap<&Vec<u16>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<Rat>> = gens
        .iter()
        .map(|g| {
            let mut row = vec![Rat::zero(); 231];
            for (m, c) in g.terms() {
                row[col[&m.0]] = c.clone();
            }
            row
        })
        .collect();
    let exact = RatMatrix::from_rows(rows.clone())?.rank();
    r.expect_eq("span over Q", 20, exact);
    let modular = consensus_rank(|p| Ok(FpMatrix::from_rat_rows(PrimeField::new(p)?, &rows)?.rank()), &s.cfg.primes[..2])?;
    r.use_primes([s.cfg.primes[0], s.cfg.primes[1]]);
    r.expect_eq("span modulo two primes", 20, modular.rank);
    let mut ok = 0;
    let mut renorm = 0;
    for fam in Family::ALL {
        for w in s.check_witnesses(fam, 25)? {
            match catanese_normalize(&w.v.to_quadric()) {
                Ok(n) => {
                    ok += 1;
                    if catanese_normalize(&n.normalized).map(|m| m.lambda.is_zero()).unwrap_or(false) {
                        renorm += 1;
                    }
                }
                Err(e) => r.note(format!("{fam} seed {}: {e}", w.seed)),
            }
        }
    }
    r.expect_eq("witnesses normalized with a unique lambda", 100, ok);
    r.expect_eq("re-normalization gives lambda = 0", 100, renorm);
    Ok(r)
}

/// Criterion 8: chart divisibility on the four families, and vanishing of
/// the integrability generators on the Chow variety and the squares.
pub fn membership(s: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("membership");
    for (fam, want) in [(L, 20), (C, 20), (S, 20), (H, 0)] {
        let mut yes = 0;
        for w in s.check_witnesses(fam, 20)? {
            yes += usize::from(chow_membership_test(&w.v.to_quadric())?);
        }
        r.expect_eq(format!("membership true on 20 {fam} witnesses"), want, yes);
    }
    let j = s.j_data()?;
    for fam in [L, C, S] {
        let ws = s.check_witnesses(fam, 20)?;
        let mut bad = 0;
        for w in &ws {
            for g in &j.generators {
                bad += usize::from(!vanishes_exactly(&g.poly, &w.v)?);
            }
        }
        r.expect_eq(format!("nonzero generator values on 20 {fam} witnesses"), 0, bad);
    }
    let h = s.check_witnesses(H, 1)?;
    let mut nonzero = 0;
    for g in &j.generators {
        nonzero += usize::from(!vanishes_exactly(&g.poly, &h[0].v)?);
    }
    r.note(format!("{nonzero} of {} generators are nonzero at a Hurwitz witness", j.generators.len()));
    r.expect_true("generators separate a Hurwitz witness", nonzero > 0);
    Ok(r)
}

/// Criterion 9: census and minimal generators of J, with the fallback
/// through the colon by the variables.
pub fn integrability(s: &Session, membership_ok: bool) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("integrability");
    let j = s.j_data()?;
    let target: BTreeMap<u32, usize> = [(3, 58), (4, 340), (5, 322)].into();
    let census_ok = j.censuses.iter().all(|c| c.degree_histogram == target && c.total == 720);
    for c in &j.censuses {
        r.note(format!("{} census ({:?}): {:?}, total {}", c.chart, c.convention, c.degree_histogram, c.total));
    }
    for conv in PseudoDivision::ALL.into_iter().filter(|&c| c != PseudoDivision::Reduced) {
        let (_, cs) = j_generators(conv);
        let first = &cs[0];
        let uniform = cs.iter().all(|c| c.degree_histogram == first.degree_histogram);
        r.note(format!("{conv:?} census: {:?} per chart (same in all charts: {uniform})", first.degree_histogram));
    }
    let mut direct = vec![r.expect_true("census 58 + 340 + 322 in every chart", census_ok)];
    let (betas, primes) = s.agreed(|f| {
        let g = s.j_forms(f)?;
        let mut out = Vec::new();
        for d in 3..=s.cfg.degree.clamp(3, 5) {
            out.push((d, s.lab.minimal_generator_count(f, &g, d)?, s.j_piece(f, d)?.dimension()));
        }
        Ok(out)
    })?;
    r.use_primes(primes);
    for (d, beta, dim) in betas {
        r.note(format!("dim J_{d} = {dim}"));
        direct.push(r.expect_eq(format!("beta_{d}(J)"), if d == 3 { 210 } else { 0 }, beta));
    }
    if s.cfg.degree < 5 {
        r.note("beta_5(J) not computed (degree cap below 5)");
        direct.push(false);
    }
    let (fb, primes) = s.agreed(|f| {
        let mut out = Vec::new();
        for d in [2u32, 3] {
            let colon = s.lab.colon_irrelevant_of(&*s.j_piece(f, d + 1)?)?;
            let tri = jtriple(s, f, d)?;
            out.push((d, colon.dimension(), tri.dimension(), colon == tri));
        }
        Ok(out)
    })?;
    r.use_primes(primes);
    let mut fallback = Vec::new();
    for (d, dc, dt, eq) in fb {
        r.note(format!("degree {d}: dim (J : m) = {dc}, dim triple intersection = {dt}"));
        fallback.push(r.expect_true(format!("fallback: (J : m)_{d} = (ChowConic ∩ ChowLines ∩ Squares)_{d}"), eq));
    }
    fallback.push(r.expect_true("fallback: membership suite passed", membership_ok));
    let (diag, _) = s.agreed(|f| {
        let i3 = s.i_piece(f, 3)?;
        let j3 = s.j_piece(f, 3)?;
        let mut both = s.i_generators()?.reduce(&f)?;
        both.extend(s.j_forms(f)?);
        let sum4 = s.lab.ideal_piece(f, &both, 4)?;
        let sat3 = s.lab.colon_irrelevant_of(&sum4)?;
        Ok((i3.intersect(&j3)?.dimension(), i3.sum(&j3)?.dimension(), sat3 == jtriple(s, f, 3)?))
    })?;
    r.note(format!(
        "diagnostic: dim (I_3 ∩ J_3) = {}, dim (I_3 + J_3) = {}, ((I + J) : m)_3 equals the triple intersection: {}",
        diag.0, diag.1, diag.2
    ));
    let direct_ok = direct.iter().all(|&x| x);
    let fallback_ok = fallback.iter().all(|&x| x);
    r.note(format!("direct targets met: {direct_ok}; fallback met: {fallback_ok}"));
    r.verdict = Some(direct_ok || fallback_ok);
    Ok(r)
}

/// Criterion 10: Jacobian ranks of the four parameterizations.
pub fn dimensions(s: &Session) -> Result<SuiteReport, CliError> {
    let mut r = SuiteReport::new("dimensions");
    for (fam, want) in [(H, 10), (L, 9), (C, 9), (S, 6)] {
        for k in 0..3 {
            let seed = s.check_witnesses(fam, 3)?[k].seed;
            r.expect_eq(format!("cone dimension of {fam} (seed {seed})"), want, tangent_dimension(fam, seed)?);
        }
    }
    Ok(r)
}

/// Suites behind each verify target, in run order.
pub fn run_target(s: &Session, target: &str) -> Result<Vec<SuiteReport>, CliError> {
    let mut out = Vec::new();
    let names: &[&str] = match target {
        "fig1" => &["fig1"],
        "counts" => &["coisotropic_count", "component_counts"],
        "prop1" => &["prop1", "colon"],
        "prop2" => &["prop2"],
        "prop3" => &["membership", "integrability"],
        "catanese" => &["catanese"],
        "dimensions" => &["dimensions"],
        "all" => &[
            "fig1",
            "coisotropic_count",
            "component_counts",
            "prop1",
            "prop2",
            "colon",
            "catanese",
            "membership",
            "integrability",
            "dimensions",
        ],
        other => return Err(CliError::Input(format!("unknown target {other:?}"))),
    };
    for name in names {
        let membership_ok = out.iter().any(|x: &SuiteReport| x.suite == "membership" && x.passed());
        out.push(timed(|| match *name {
            "fig1" => fig1(s),
            "coisotropic_count" => coisotropic_count(s),
            "component_counts" => component_counts(s),
            "prop1" => prop1(s),
            "prop2" => prop2(s),
            "colon" => colon(s),
            "catanese" => catanese(s),
            "membership" => membership(s),
            "integrability" => integrability(s, membership_ok),
            _ => dimensions(s),
        })?);
    }
    Ok(out)
}
