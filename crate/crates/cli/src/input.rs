//! Quadric files: `{"kind": "quadric", "c": [21 fractions]}` or
//! `{"kind": "invariant", "v": [20 fractions]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use chow_core::grassmann::{GrassmannError, InvariantVector, QuadricCoeffs};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadricFile {
    Quadric { c: Vec<String> },
    Invariant { v: Vec<String> },
}

impl QuadricFile {
    /// The quadric with the gauge fixed by `c12 = 0`.
    pub fn canonical(&self) -> Result<QuadricCoeffs, CliError> {
        let q = match self {
            QuadricFile::Quadric { c } => {
                let q = QuadricCoeffs::from_strings(c).map_err(input_error)?;
                if q.is_zero() {
                    return Err(GrassmannError::ZeroQuadric.into());
                }
                q.invariant().to_quadric()
            }
            QuadricFile::Invariant { v } => InvariantVector::from_strings(v).map_err(input_error)?.to_quadric(),
        };
        if q.is_zero() {
            return Err(GrassmannError::ZeroQuadric.into());
        }
        Ok(q)
    }

    pub fn parse(text: &str) -> Result<QuadricFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("quadric file: {e}")))
    }

    pub fn load(path: &Path) -> Result<QuadricFile, CliError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

fn input_error(e: GrassmannError) -> CliError {
    CliError::Input(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use chow_core::exact::rat;

    #[test]
    fn canonicalizes_gauge() {
        let mut c = vec!["0".to_string(); 21];
        c[12] = "1".into();
        c[0] = "3/2".into();
        let q = QuadricFile::parse(&serde_json::to_string(&QuadricFile::Quadric { c }).unwrap()).unwrap();
        let k = q.canonical().unwrap();
        assert_eq!(k.0[12], rat(0, 1));
        assert_eq!(k.0[0], rat(3, 2));
        assert_eq!(k.0[5], rat(-1, 1));
        assert_eq!(k.0[9], rat(1, 1));
        let zero = QuadricFile::Invariant { v: vec!["0".into(); 20] };
        assert_eq!(zero.canonical().unwrap_err().exit_code(), 2);
        assert_eq!(QuadricFile::parse("{\"kind\":\"nope\"}").unwrap_err().exit_code(), 2);
        assert_eq!(QuadricFile::Quadric { c: vec!["1".into(); 3] }.canonical().unwrap_err().exit_code(), 2);
    }
}
