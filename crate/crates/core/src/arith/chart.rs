use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of distinct coordinate names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chart(Arc<[String]>);

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "i"
}

impl Chart {
    pub fn new<I, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !valid_name(v) {
                return Err(Error::InvalidChart(format!("`{v}` is not a valid variable name")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidChart(format!("variable `{v}` repeated")));
            }
        }
        Ok(Chart(vars.into()))
    }

    /// Chart `x1, …, xn`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Self> {
        Self::new((1..=n).map(|k| format!("{prefix}{k}")))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn var(&self, k: usize) -> &str {
        &self.0[k]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({})", self.0.join(","))
    }
}
