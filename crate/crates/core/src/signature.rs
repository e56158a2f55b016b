//! Graded sets of generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A generator of a signature: a name together with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: Arc<str>,
    pub arity: usize,
}

/// A finite graded set of named generators.
///
/// Generators keep their declaration order; names are unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    generators: Vec<Generator>,
    index: HashMap<Arc<str>, usize>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-')
}

impl Signature {
    pub fn new<I, S>(generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: AsRef<str>,
    {
        let mut sig = Signature {
            generators: Vec::new(),
            index: HashMap::new(),
        };
        for (name, arity) in generators {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::domain(format!("invalid generator name `{name}`")));
            }
            let name: Arc<str> = Arc::from(name);
            if sig.index.contains_key(&name) {
                return Err(Error::DuplicateGenerator(name.to_string()));
            }
            sig.index.insert(name.clone(), sig.generators.len());
            sig.generators.push(Generator { name, arity });
        }
        Ok(sig)
    }

    /// Parses the inline form `a:1,b:2,c:3`.
    pub fn parse_inline(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        let mut column = 1;
        for item in text.split(',') {
            let (name, arity) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(column, format!("expected `name:arity`, got `{item}`")))?;
            let arity = arity.trim().parse::<usize>().map_err(|_| {
                Error::parse(column + name.len() + 1, format!("invalid arity `{arity}`"))
            })?;
            gens.push((name.trim().to_string(), arity));
            column += item.len() + 1;
        }
        Signature::new(gens)
    }

    /// Parses the file form: one `name arity` pair per line. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(name), Some(arity), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::domain(format!(
                    "line {}: expected `name arity`",
                    lineno + 1
                )));
            };
            let arity = arity
                .parse::<usize>()
                .map_err(|_| Error::domain(format!("line {}: invalid arity `{arity}`", lineno + 1)))?;
            gens.push((name.to_string(), arity));
        }
        Signature::new(gens)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.index.get(name).map(|&i| &self.generators[i])
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.get(name).map(|g| g.arity)
    }

    /// The shared name handle for `name`, if it is a generator.
    pub(crate) fn name_handle(&self, name: &str) -> Option<Arc<str>> {
        self.get(name).map(|g| g.name.clone())
    }

    /// True iff no generator has arity 0.
    pub fn is_positive(&self) -> bool {
        self.generators.iter().all(|g| g.arity > 0)
    }

    /// Number of generators of arity `i - 1`, for `i >= 1`.
    pub fn profile(&self, i: usize) -> usize {
        assert!(i >= 1, "profile is indexed from 1");
        self.generators.iter().filter(|g| g.arity == i - 1).count()
    }

    pub fn max_arity(&self) -> usize {
        self.generators.iter().map(|g| g.arity).max().unwrap_or(0)
    }

    pub(crate) fn require_positive(&self, what: &str) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "{what} requires a positive signature (no generator of arity 0)"
            )))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", g.name, g.arity)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_file_forms_agree() {
        let a = Signature::parse_inline("a:1,b:2,c:3").unwrap();
        let b = Signature::parse_file("a 1\nb 2\n\n# comment\nc 3\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "a:1,b:2,c:3");
    }

    #[test]
    fn profile_counts_generators_by_arity() {
        let sig = Signature::parse_inline("a:2,b:2,c:0").unwrap();
        assert_eq!(sig.profile(1), 1);
        assert_eq!(sig.profile(2), 0);
        assert_eq!(sig.profile(3), 2);
        assert!(!sig.is_positive());
        assert!(Signature::parse_inline("a:1").unwrap().is_positive());
    }

    #[test]
    fn rejects_duplicates_and_bad_input() {
        assert_eq!(
            Signature::parse_inline("a:1,a:2"),
            Err(Error::DuplicateGenerator("a".into()))
        );
        assert!(matches!(
            Signature::parse_inline("a:1,b"),
            Err(Error::Parse { column: 5, .. })
        ));
        assert!(Signature::parse_inline("a:x").is_err());
        assert!(Signature::parse_file("a 1 2").is_err());
    }
}
