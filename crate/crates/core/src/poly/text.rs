//! Canonical text form: terms in descending grevlex order, written as
//! `coef*x^e*y` with exact coefficients, joined by ` + ` and ` - `.

use std::sync::Arc;

use super::{MPoly, Monomial, PolyError, VarSet};
use crate::exact::Field;

impl<F: Field> MPoly<F> {
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = self.field();
        let mut out = String::new();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let s = f.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.degree() == 0 {
                factors.push(mag);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars().name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars().name(i), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn parse(field: F, vars: Arc<VarSet>, text: &str) -> Result<Self, PolyError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(PolyError::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));
        let n = vars.len();
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(PolyError::Parse(format!("empty term in {text:?}")));
            }
            let mut coef = field.one();
            let mut exps = vec![0u16; n];
            for factor in chunk.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    let x = field.parse(factor).map_err(PolyError::from)?;
                    coef = field.mul(&coef, &x);
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((v, e)) => {
                        let e: u16 = e
                            .parse()
                            .map_err(|_| PolyError::Parse(format!("bad exponent in {factor:?}")))?;
                        (v, e)
                    }
                    None => (factor, 1),
                };
                let i = vars.index(name)?;
                exps[i] = exps[i]
                    .checked_add(e)
                    .ok_or_else(|| PolyError::Parse("exponent overflow".into()))?;
            }
            if neg {
                coef = field.neg(&coef);
            }
            terms.push((Monomial(exps), coef));
        }
        Ok(MPoly::from_terms(field, vars, terms))
    }
}
