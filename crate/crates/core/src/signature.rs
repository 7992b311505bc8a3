//! Monoidal signatures: named generators with an arity and a coarity.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// A single operation symbol `name : arity -> coarity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub arity: usize,
    pub coarity: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, arity: usize, coarity: usize) -> Self {
        Generator {
            name: name.into(),
            arity,
            coarity,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.name, self.arity, self.coarity)
    }
}

/// An ordered list of generators with pairwise distinct names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    generators: Vec<Generator>,
}

impl Signature {
    pub fn new(generators: Vec<Generator>) -> Result<Self, SignatureError> {
        for (k, g) in generators.iter().enumerate() {
            if generators[..k].iter().any(|h| h.name == g.name) {
                return Err(SignatureError::DuplicateName(g.name.clone()));
            }
        }
        Ok(Signature { generators })
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    /// Lookup returning `(arity, coarity)`, or an error naming the symbol.
    pub fn arity(&self, name: &str) -> Result<(usize, usize), SignatureError> {
        self.get(name)
            .map(|g| (g.arity, g.coarity))
            .ok_or_else(|| SignatureError::UnknownGenerator(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_names() {
        let err = Signature::new(vec![Generator::new("f", 1, 1), Generator::new("f", 2, 1)]);
        assert_eq!(err, Err(SignatureError::DuplicateName("f".into())));
    }

    #[test]
    fn lookup() {
        let sig = Signature::new(vec![Generator::new("mu", 2, 1)]).unwrap();
        assert_eq!(sig.arity("mu"), Ok((2, 1)));
        assert!(sig.arity("nu").is_err());
    }
}
