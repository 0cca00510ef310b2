//! Chart-local differential conditions recognizing Chow forms among
//! coisotropic quadrics, and the ideal they generate.

mod chart;
mod normal_form;

pub use chart::{
    alpha_coefficients, alpha_forms, chart_minors, chart_substitute, chart_substitute_symbolic, chart_vars, q_coefficients,
    q_coefficients_naive, q_index, q_label, symbolic_vars, AlphaConvention, Chart, QCoefficientSet,
    QLocal,
};
pub use normal_form::{normal_form, ChartMonomial, ChartPoly, NormalForm, PseudoDivision, RemainderTerm};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grassmann::{coisotropy_check, v_vars, GrassmannError, QuadricCoeffs};
use crate::poly::RatPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntegrabilityError {
    #[error("pivot columns ({0}, {1}) do not form a chart")]
    BadChart(usize, usize),
    #[error("the quadric is not coisotropic")]
    NotCoisotropic,
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
}

/// Per-chart divisibility of the 16 coefficients by the chart image of `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub per_chart: Vec<(Chart, bool)>,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        self.per_chart.iter().all(|(_, ok)| *ok)
    }
}

/// Whether every `q_ijkl` is an exact multiple of the chart image of `Q`,
/// in one chart.
pub fn divisible_in_chart(c: &QuadricCoeffs, chart: Chart, conv: AlphaConvention) -> bool {
    let ql = chart_substitute(c, chart);
    if ql.poly.is_zero() {
        return true;
    }
    q_coefficients(&ql, conv).q.iter().all(|q| q.div_rem(&ql.poly).expect("same ring").1.is_zero())
}

pub fn membership_report(c: &QuadricCoeffs, conv: AlphaConvention) -> Result<MembershipReport, IntegrabilityError> {
    if coisotropy_check(c)?.is_none() {
        return Err(IntegrabilityError::NotCoisotropic);
    }
    Ok(MembershipReport { per_chart: Chart::all().iter().map(|&ch| (ch, divisible_in_chart(c, ch, conv))).collect() })
}

/// True iff, in each of the six charts, all 16 coefficients are divisible by
/// the chart image of `Q`.
pub fn chow_membership_test(c: &QuadricCoeffs) -> Result<bool, IntegrabilityError> {
    membership_report(c, AlphaConvention::Columns).map(|r| r.holds())
}

/// The symbolic coefficients `q_ijkl` of one chart, in a2, a3, b2, b3 and
/// the invariant variables.
pub fn symbolic_q(chart: Chart, conv: AlphaConvention) -> (QLocal, QCoefficientSet) {
    let ql = chart_substitute_symbolic(chart);
    let q = q_coefficients(&ql, conv);
    (ql, q)
}

/// One generator of the integrability ideal, with its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JGenerator {
    pub chart: Chart,
    /// `(i, j, k, l)` of the coefficient it comes from.
    pub q: [usize; 4],
    /// Exponents of the chart monomial whose coefficient it is.
    pub monomial: Vec<u16>,
    pub poly: RatPoly,
}

/// Degree census of the generators of one chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub chart: String,
    pub convention: PseudoDivision,
    pub degree_histogram: BTreeMap<u32, usize>,
    pub total: usize,
    pub non_homogeneous: usize,
}

/// Normal forms of the 16 symbolic coefficients of one chart.
#[derive(Debug, Clone)]
pub struct ChartReduction {
    pub chart: Chart,
    pub forms: Vec<NormalForm>,
}

pub fn reduce_chart(chart: Chart, conv: AlphaConvention) -> ChartReduction {
    let (ql, qs) = symbolic_q(chart, conv);
    let params = v_vars();
    let g = ChartPoly::split(&ql.poly, params.clone());
    let forms = qs.q.iter().map(|q| normal_form(&ChartPoly::split(q, params.clone()), &g)).collect();
    ChartReduction { chart, forms }
}

impl ChartReduction {
    pub fn generators(&self, conv: PseudoDivision) -> Vec<JGenerator> {
        let mut out = Vec::new();
        for (n, nf) in self.forms.iter().enumerate() {
            for (m, poly) in nf.coefficients(conv) {
                out.push(JGenerator { chart: self.chart, q: q_label(n), monomial: m.0, poly });
            }
        }
        out
    }

    pub fn census(&self, conv: PseudoDivision) -> Census {
        let gens = self.generators(conv);
        let mut hist = BTreeMap::new();
        for g in &gens {
            *hist.entry(g.poly.total_degree().unwrap_or(0)).or_insert(0) += 1;
        }
        Census {
            chart: self.chart.label(),
            convention: conv,
            degree_histogram: hist,
            total: gens.len(),
            non_homogeneous: gens.iter().filter(|g| !g.poly.is_homogeneous()).count(),
        }
    }
}

/// Generators of the integrability ideal over all six charts, in
/// chart-major order, with the censuses of each chart.
pub fn j_generators(conv: PseudoDivision) -> (Vec<JGenerator>, Vec<Census>) {
    j_generators_with(conv, AlphaConvention::Columns)
}

pub fn j_generators_with(conv: PseudoDivision, alpha: AlphaConvention) -> (Vec<JGenerator>, Vec<Census>) {
    let mut gens = Vec::new();
    let mut census = Vec::new();
    for chart in Chart::all() {
        let red = reduce_chart(chart, alpha);
        census.push(red.census(conv));
        gens.extend(red.generators(conv));
    }
    (gens, census)
}
