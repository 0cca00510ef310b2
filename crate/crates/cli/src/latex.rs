//! Reader for the LaTeX `array` layout of the 21x3 coisotropy matrix.

use chow_core::exact::RationalField;
use chow_core::grassmann::c_vars;
use chow_core::poly::RatPoly;

use crate::CliError;

/// The matrix as typeset, bundled with the crate.
pub const FIGURE1: &str = include_str!("../data/figure1.tex");

/// Rewrites one cell (`2 {c}_{0} {c}_{5}-{c}_{1}^{2}`) into the polynomial
/// text format (`2*c0*c5 - c1^2`).
pub fn cell_to_text(cell: &str) -> Result<String, CliError> {
    let mut tokens: Vec<String> = Vec::new();
    let mut rest = cell.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("{c}_{") {
            let end = r.find('}').ok_or_else(|| CliError::Input(format!("unclosed index in {cell:?}")))?;
            let mut factor = format!("c{}", &r[..end]);
            rest = &r[end + 1..];
            if let Some(p) = rest.strip_prefix("^{") {
                let end = p.find('}').ok_or_else(|| CliError::Input(format!("unclosed power in {cell:?}")))?;
                factor.push_str(&format!("^{}", &p[..end]));
                rest = &p[end + 1..];
            }
            tokens.push(factor);
        } else {
            let ch = rest.chars().next().expect("nonempty");
            if ch.is_whitespace() {
                rest = &rest[1..];
            } else if ch == '+' || ch == '-' {
                tokens.push(ch.to_string());
                rest = &rest[1..];
            } else if ch.is_ascii_digit() {
                let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                tokens.push(rest[..end].to_string());
                rest = &rest[end..];
            } else {
                return Err(CliError::Input(format!("unexpected {ch:?} in {cell:?}")));
            }
        }
    }
    let mut out = String::new();
    let mut prev_factor = false;
    for t in tokens {
        let is_op = t == "+" || t == "-";
        if is_op {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&t);
            out.push(' ');
        } else {
            if prev_factor {
                out.push('*');
            }
            out.push_str(&t);
        }
        prev_factor = !is_op;
    }
    Ok(out.trim().to_string())
}

/// Splits the array body into rows of raw cells.
pub fn parse_cells(tex: &str) -> Result<Vec<Vec<String>>, CliError> {
    let body = tex.trim();
    let body = body
        .strip_prefix(r"\left(")
        .map(str::trim_start)
        .and_then(|b| b.strip_prefix(r"\begin{array}"))
        .ok_or_else(|| CliError::Input("missing array header".into()))?;
    let body = body.trim_start();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.find('}').map(|k| &b[k + 1..]))
        .ok_or_else(|| CliError::Input("missing column spec".into()))?;
    let body = match body.find(r"\end{array}") {
        Some(k) => &body[..k],
        None => body,
    };
    Ok(body
        .split(r"\\")
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| r.split('&').map(|c| c.trim().to_string()).collect())
        .collect())
}

/// The typeset matrix as polynomials in c0..c20.
pub fn parse_matrix(tex: &str) -> Result<Vec<Vec<RatPoly>>, CliError> {
    parse_cells(tex)?
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|cell| Ok(RatPoly::parse(RationalField, c_vars(), &cell_to_text(cell)?)?))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells() {
        assert_eq!(cell_to_text("2  {c}_{0}  {c}_{5}-2  {c}_{1}  {c}_{4}").unwrap(), "2*c0*c5 - 2*c1*c4");
        assert_eq!(cell_to_text("{c}_{5}^{2}").unwrap(), "c5^2");
        assert_eq!(cell_to_text("-1").unwrap(), "- 1");
        assert!(cell_to_text("{c}_{x").is_err());
    }

    #[test]
    fn bundled_matrix_shape() {
        let m = parse_matrix(FIGURE1).unwrap();
        assert_eq!(m.len(), 21);
        assert!(m.iter().all(|r| r.len() == 3));
        assert_eq!(m[5][2].to_text(), RatPoly::parse(RationalField, c_vars(), "c0*c20 - c1*c19 + c2*c17 + c3*c14 - c4*c10 + c5^2").unwrap().to_text());
    }
}
