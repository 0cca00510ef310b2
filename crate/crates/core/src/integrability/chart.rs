use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::exact::{Rat, RationalField};
use crate::grassmann::{c_index, invariant_slot, QuadricCoeffs, NC, PAIRS};
use crate::poly::{DiffForm, MPoly, RatPoly, VarSet};

use super::IntegrabilityError;

/// Affine chart of the Grassmannian: the frame has identity columns at the
/// two pivot positions and the chart variables (a2, b2), (a3, b3) in the
/// remaining columns, in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chart {
    pivots: (usize, usize),
}

impl Chart {
    pub const STANDARD: Chart = Chart { pivots: (0, 1) };

    pub fn new(i: usize, j: usize) -> Result<Chart, IntegrabilityError> {
        if i >= j || j > 3 {
            return Err(IntegrabilityError::BadChart(i, j));
        }
        Ok(Chart { pivots: (i, j) })
    }

    /// The six charts, ordered by pivot pair.
    pub fn all() -> [Chart; 6] {
        PAIRS.map(|(i, j)| Chart { pivots: (i, j) })
    }

    pub fn pivots(&self) -> (usize, usize) {
        self.pivots
    }

    /// Frame column receiving column `m` of `[[1, 0, a2, a3], [0, 1, b2, b3]]`.
    pub fn column_map(&self) -> [usize; 4] {
        let (i, j) = self.pivots;
        let rest: Vec<usize> = (0..4).filter(|&c| c != i && c != j).collect();
        [i, j, rest[0], rest[1]]
    }

    /// Index (into p01..p23) of the Plücker coordinate complementary to
    /// the pivots: the only one of chart degree two.
    pub fn complementary(&self) -> usize {
        let m = self.column_map();
        PAIRS.iter().position(|&p| p == (m[2], m[3])).expect("pair")
    }

    /// The coefficient c_k whose chart monomials carry the leading term of a
    /// generic chart image: the square of the complementary coordinate.
    pub fn leading_slot(&self) -> usize {
        let k = self.complementary();
        c_index(k, k)
    }

    pub fn label(&self) -> String {
        format!("p{}{}", self.pivots.0, self.pivots.1)
    }
}

/// a2, a3, b2, b3.
pub fn chart_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| VarSet::new(["a2", "a3", "b2", "b3"]).expect("names")).clone()
}

/// a2, a3, b2, b3 followed by v0..v19.
pub fn symbolic_vars() -> Arc<VarSet> {
    static V: OnceLock<Arc<VarSet>> = OnceLock::new();
    V.get_or_init(|| chart_vars().concat(&crate::grassmann::v_vars()).expect("distinct")).clone()
}

/// Plücker coordinates of the chart frame as polynomials in a ring whose
/// first four variables are a2, a3, b2, b3.
pub fn chart_minors(chart: Chart, vars: &Arc<VarSet>) -> [RatPoly; 6] {
    let zero = MPoly::zero(RationalField, vars.clone());
    let one = MPoly::one(RationalField, vars.clone());
    let var = |i| MPoly::var(RationalField, vars.clone(), i);
    let std_rows = [[one.clone(), zero.clone(), var(0), var(1)], [zero.clone(), one.clone(), var(2), var(3)]];
    let mut frame: [Vec<RatPoly>; 2] = [vec![zero.clone(); 4], vec![zero.clone(); 4]];
    for (m, &col) in chart.column_map().iter().enumerate() {
        for r in 0..2 {
            frame[r][col] = std_rows[r][m].clone();
        }
    }
    PAIRS.map(|(x, y)| &(&frame[0][x] * &frame[1][y]) - &(&frame[0][y] * &frame[1][x]))
}

fn image(chart: Chart, coeffs: &[RatPoly]) -> RatPoly {
    let vars = coeffs[0].vars().clone();
    let p = chart_minors(chart, &vars);
    let mut out = MPoly::zero(RationalField, vars.clone());
    for a in 0..6 {
        for b in a..6 {
            let c = &coeffs[c_index(a, b)];
            if c.is_zero() {
                continue;
            }
            let mut t = &(&p[a] * &p[b]) * c;
            if a != b {
                t = t.scale(&Rat::from_integer(2.into()));
            }
            out = &out + &t;
        }
    }
    out
}

/// The chart image of a quadric, in a2, a3, b2, b3 (numeric) or in
/// a2, a3, b2, b3, v0..v19 (symbolic, gauge fixed by c12 = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QLocal {
    pub chart: Chart,
    pub poly: RatPoly,
}

/// Substitutes the chart minors into a numeric quadric.
pub fn chart_substitute(c: &QuadricCoeffs, chart: Chart) -> QLocal {
    let vars = chart_vars();
    let coeffs: Vec<RatPoly> = c.0.iter().map(|x| MPoly::constant(RationalField, vars.clone(), x.clone())).collect();
    QLocal { chart, poly: image(chart, &coeffs) }
}

/// Substitutes the chart minors into the generic quadric with invariant
/// coefficients v0..v19.
pub fn chart_substitute_symbolic(chart: Chart) -> QLocal {
    let vars = symbolic_vars();
    let coeffs: Vec<RatPoly> = (0..NC)
        .map(|k| match invariant_slot(k) {
            Some(i) => MPoly::var(RationalField, vars.clone(), 4 + i),
            None => MPoly::zero(RationalField, vars.clone()),
        })
        .collect();
    QLocal { chart, poly: image(chart, &coeffs) }
}

/// How the 1-forms pair partial derivatives of `Q` with differentials.
///
/// Write the chart variables as a 2x2 matrix `x` with rows (a2, a3) and
/// (b2, b3). `Columns` takes `alpha^i_j = sum_r dQ/dx_{r i} dx_{r j}`, whose
/// common kernel on a Chow hypersurface of a curve is tangent to the lines
/// through a fixed point of the curve. `Rows` takes
/// `alpha^i_j = sum_m dQ/dx_{i m} dx_{j m}`, the transpose, which recognizes
/// the dual hypersurfaces instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaConvention {
    Columns,
    Rows,
}

impl AlphaConvention {
    pub const ALL: [AlphaConvention; 2] = [AlphaConvention::Columns, AlphaConvention::Rows];

    pub fn name(self) -> &'static str {
        match self {
            AlphaConvention::Columns => "columns",
            AlphaConvention::Rows => "rows",
        }
    }
}

/// Coefficients (on da2, da3, db2, db3) of alpha^1_1, alpha^1_2,
/// alpha^2_1, alpha^2_2.
pub fn alpha_coefficients(ql: &QLocal, conv: AlphaConvention) -> [[RatPoly; 4]; 4] {
    let q = &ql.poly;
    let zero = MPoly::zero(RationalField, q.vars().clone());
    // partial[r][m] = dQ / dx_{r m}; the differential dx_{r m} is slot 2r + m.
    let partial = [[q.diff(0), q.diff(1)], [q.diff(2), q.diff(3)]];
    std::array::from_fn(|n| {
        let (i, j) = (n / 2, n % 2);
        let mut c: [RatPoly; 4] = std::array::from_fn(|_| zero.clone());
        for t in 0..2 {
            let (d, slot) = match conv {
                AlphaConvention::Columns => (&partial[t][i], 2 * t + j),
                AlphaConvention::Rows => (&partial[i][t], 2 * j + t),
            };
            c[slot] = d.clone();
        }
        c
    })
}

/// The four 1-forms alpha^1_1, alpha^1_2, alpha^2_1, alpha^2_2.
pub fn alpha_forms(ql: &QLocal, conv: AlphaConvention) -> [DiffForm<RationalField>; 4] {
    alpha_coefficients(ql, conv).map(|c| DiffForm::one_form(c).expect("four differentials"))
}

/// Position of `q_ijkl` (indices in {1, 2}) in the list of 16.
pub const fn q_index(i: usize, j: usize, k: usize, l: usize) -> usize {
    8 * (i - 1) + 4 * (j - 1) + 2 * (k - 1) + (l - 1)
}

/// `(i, j, k, l)` of position `n`.
pub const fn q_label(n: usize) -> [usize; 4] {
    [n / 8 + 1, (n / 4) % 2 + 1, (n / 2) % 2 + 1, n % 2 + 1]
}

/// The 16 top-form coefficients of `dQ ^ d(alpha^i_j) ^ alpha^k_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCoefficientSet {
    pub chart: Chart,
    pub q: Vec<RatPoly>,
}

impl QCoefficientSet {
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &RatPoly {
        &self.q[q_index(i, j, k, l)]
    }
}

pub fn q_coefficients(ql: &QLocal, conv: AlphaConvention) -> QCoefficientSet {
    let alpha = alpha_forms(ql, conv);
    let dq = DiffForm::function(ql.poly.clone()).and_then(|f| f.exterior_derivative()).expect("0-form");
    let d_alpha: Vec<_> = alpha.iter().map(|a| a.exterior_derivative().expect("1-form")).collect();
    let first: Vec<_> = d_alpha.iter().map(|da| dq.wedge(da).expect("3-form")).collect();
    let q = (0..16)
        .map(|n| {
            let [i, j, k, l] = q_label(n);
            first[2 * (i - 1) + (j - 1)]
                .wedge(&alpha[2 * (k - 1) + (l - 1)])
                .expect("4-form")
                .top_coefficient()
        })
        .collect();
    QCoefficientSet { chart: ql.chart, q }
}

/// The same coefficients by direct expansion over permutations: with
/// `alpha = sum f_m dx_m`, the top coefficient of `dQ ^ d(alpha) ^ alpha'` is
/// `sum_sigma sign(sigma) Q_{s0} d_{s1} f_{s2} f'_{s3}`.
pub fn q_coefficients_naive(ql: &QLocal, conv: AlphaConvention) -> QCoefficientSet {
    let q = &ql.poly;
    let zero = MPoly::zero(RationalField, q.vars().clone());
    let coeffs = alpha_coefficients(ql, conv);
    let grad: Vec<RatPoly> = (0..4).map(|i| q.diff(i)).collect();
    let mut perms = Vec::new();
    permutations(&mut [0, 1, 2, 3], 0, &mut perms);
    let out = (0..16)
        .map(|n| {
            let [i, j, k, l] = q_label(n);
            let f = &coeffs[2 * (i - 1) + (j - 1)];
            let g = &coeffs[2 * (k - 1) + (l - 1)];
            let mut acc = zero.clone();
            for (s, odd) in &perms {
                let t = &(&grad[s[0]] * &f[s[2]].diff(s[1])) * &g[s[3]];
                acc = if *odd { &acc - &t } else { &acc + &t };
            }
            acc
        })
        .collect();
    QCoefficientSet { chart: ql.chart, q: out }
}

fn permutations(a: &mut [usize; 4], k: usize, out: &mut Vec<([usize; 4], bool)>) {
    if k == 4 {
        let mut inv = 0;
        for x in 0..4 {
            for y in x + 1..4 {
                inv += (a[x] > a[y]) as usize;
            }
        }
        out.push((*a, inv % 2 == 1));
        return;
    }
    for i in k..4 {
        a.swap(k, i);
        permutations(a, k + 1, out);
        a.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn single(a: usize, b: usize) -> QuadricCoeffs {
        let mut q = QuadricCoeffs::zero();
        q.0[c_index(a, b)] = if a == b { rat(1, 1) } else { rat(1, 2) };
        q
    }

    #[test]
    fn standard_chart_images() {
        let c = Chart::STANDARD;
        let minors: Vec<String> = chart_minors(c, &chart_vars()).iter().map(|p| p.to_text()).collect();
        assert_eq!(minors, ["1", "b2", "b3", "-a2", "-a3", "-a3*b2 + a2*b3"].map(String::from));
        assert!(chart_substitute(&QuadricCoeffs::plucker(), c).poly.is_zero());
        assert_eq!(chart_substitute(&single(0, 5), c).poly.to_text(), "-a3*b2 + a2*b3");
        assert_eq!(chart_substitute(&single(0, 0), c).poly.to_text(), "1");
    }

    #[test]
    fn every_chart_kills_the_relation() {
        for c in Chart::all() {
            assert!(chart_substitute(&QuadricCoeffs::plucker(), c).poly.is_zero());
            let p = chart_minors(c, &chart_vars());
            assert_eq!(p.iter().filter(|x| x.total_degree() == Some(2)).count(), 1);
            assert_eq!(p[c.complementary()].total_degree(), Some(2));
        }
        assert_ne!(Chart::new(2, 1), Ok(Chart::STANDARD));
    }

    #[test]
    fn alpha_examples() {
        let ql = chart_substitute(&single(0, 5), Chart::STANDARD);
        assert_eq!(ql.poly.to_text(), "-a3*b2 + a2*b3");
        let rows = alpha_forms(&ql, AlphaConvention::Rows);
        assert_eq!(rows[0].coeff(0b0001).to_text(), "b3");
        assert_eq!(rows[0].coeff(0b0010).to_text(), "-b2");
        let d = rows[3].exterior_derivative().unwrap();
        assert_eq!(d.coeff(0b0110).to_text(), "-1");
        assert_eq!(d.coeff(0b1001).to_text(), "1");
        assert_eq!(d.terms().len(), 2);
        let cols = alpha_forms(&ql, AlphaConvention::Columns);
        assert_eq!(cols[0].coeff(0b0001).to_text(), "b3");
        assert_eq!(cols[0].coeff(0b0100).to_text(), "-a3");
        assert_eq!(cols[0].terms().len(), 2);
        let d = cols[3].exterior_derivative().unwrap();
        assert_eq!(d.coeff(0b0110).to_text(), "1");
        assert_eq!(d.coeff(0b1001).to_text(), "1");
        let constant = chart_substitute(&single(0, 0), Chart::STANDARD);
        for conv in AlphaConvention::ALL {
            assert!(alpha_forms(&constant, conv).iter().all(|a| a.is_zero()));
            assert!(q_coefficients(&constant, conv).q.iter().all(|q| q.is_zero()));
        }
    }

    #[test]
    fn conventions_are_transposes() {
        // Swapping a3 and b2 exchanges the two conventions, up to the order
        // and signs of the 16 coefficients.
        let m = QuadricCoeffs::from_ints(std::array::from_fn(|i| (i as i64 * 5) % 7 - 3));
        let ql = chart_substitute(&m, Chart::STANDARD);
        let vars = chart_vars();
        let images: Vec<RatPoly> = [0, 2, 1, 3].iter().map(|&i| MPoly::var(RationalField, vars.clone(), i)).collect();
        let swap = |p: &RatPoly| p.substitute(&images).unwrap();
        let swapped = QLocal { chart: ql.chart, poly: swap(&ql.poly) };
        let rows = q_coefficients(&swapped, AlphaConvention::Rows);
        let cols = q_coefficients(&ql, AlphaConvention::Columns);
        let square = |p: &RatPoly| (p * p).to_text();
        let mut a: Vec<String> = rows.q.iter().map(|p| square(&swap(p))).collect();
        let mut b: Vec<String> = cols.q.iter().map(square).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn naive_expansion_agrees() {
        let c = QuadricCoeffs::from_ints(std::array::from_fn(|i| (i as i64 * 7) % 5 - 2));
        for chart in Chart::all() {
            let ql = chart_substitute(&c, chart);
            for conv in AlphaConvention::ALL {
                assert_eq!(q_coefficients(&ql, conv), q_coefficients_naive(&ql, conv));
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        for n in 0..16 {
            let [i, j, k, l] = q_label(n);
            assert_eq!(q_index(i, j, k, l), n);
        }
    }
}
