use std::sync::Arc;

use super::PolyError;

/// An ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(PolyError::Parse(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(PolyError::Parse(format!("duplicate variable {n}")));
            }
        }
        Ok(Arc::new(VarSet { names }))
    }

    /// `prefix0, prefix1, ...`.
    pub fn indexed(prefix: &str, n: usize) -> Arc<Self> {
        Self::new((0..n).map(|i| format!("{prefix}{i}"))).expect("well-formed names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize, PolyError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// The variables of `self` followed by those of `other`.
    pub fn concat(&self, other: &VarSet) -> Result<Arc<Self>, PolyError> {
        Self::new(self.names.iter().chain(&other.names).cloned())
    }
}

pub(crate) fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
