//! Theory files: a named signature, a rule list and a mode pragma.
//!
//! ```text
//! theory nb
//! mode smc
//! gen mu  : 2 -> 1
//! gen eta : 0 -> 1
//! rule ba1 : (mu * id 1) ; mu => (id 1 * mu) ; mu
//! ```

use thiserror::Error;

use crate::dpo::{rule_from_terms, DpoError, DpoRule};
use crate::parser::{ParseError, TokenKind, TokenStream};
use crate::signature::{Generator, Signature, SignatureError};
use crate::term::{Mode, RewriteRuleTerm, TypeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TheoryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("rule `{name}`: {source}")]
    RuleType {
        name: String,
        #[source]
        source: TypeError,
    },
    #[error("duplicate rule name `{0}`")]
    DuplicateRule(String),
}

#[derive(Debug, Clone)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub rules: Vec<RewriteRuleTerm>,
    pub mode: Mode,
}

impl Theory {
    /// The rules in graph form, interpreted in the theory's mode.
    pub fn dpo_system(&self) -> Result<Vec<DpoRule>, DpoError> {
        self.rules
            .iter()
            .map(|r| rule_from_terms(r, &self.signature, self.mode))
            .collect()
    }

    pub fn rule(&self, name: &str) -> Option<&RewriteRuleTerm> {
        self.rules.iter().find(|r| r.name == name)
    }
}

pub fn parse_theory(text: &str) -> Result<Theory, TheoryError> {
    let mut ts = TokenStream::new(text)?;
    ts.expect(&TokenKind::Ident("theory".into()))
        .map_err(|_| ts.error_here("a theory file starts with `theory <name>`"))?;
    let (name, _) = ts.expect_ident()?;

    let mut generators: Vec<Generator> = Vec::new();
    let mut rules: Vec<RewriteRuleTerm> = Vec::new();
    let mut mode = Mode::Smc;
    while !ts.at_end() {
        let (keyword, tok) = ts.expect_ident()?;
        match keyword.as_str() {
            "mode" => {
                let (which, wtok) = ts.expect_ident()?;
                mode = match which.as_str() {
                    "smc" => Mode::Smc,
                    "frobenius" => Mode::Frobenius,
                    other => {
                        return Err(ParseError {
                            line: wtok.line,
                            col: wtok.col,
                            message: format!("unknown mode `{other}`, expected smc or frobenius"),
                        }
                        .into())
                    }
                };
            }
            "gen" => {
                let (gname, _) = ts.expect_ident()?;
                ts.expect(&TokenKind::Colon)?;
                let arity = ts.expect_nat()?;
                ts.expect(&TokenKind::Arrow)?;
                let coarity = ts.expect_nat()?;
                generators.push(Generator::new(gname, arity, coarity));
            }
            "rule" => {
                let (rname, _) = ts.expect_ident()?;
                ts.expect(&TokenKind::Colon)?;
                let lhs = crate::parser::parse_seq(&mut ts)?;
                ts.expect(&TokenKind::RewritesTo)?;
                let rhs = crate::parser::parse_seq(&mut ts)?;
                if rules.iter().any(|r| r.name == rname) {
                    return Err(TheoryError::DuplicateRule(rname));
                }
                rules.push(RewriteRuleTerm::new(rname, lhs, rhs));
            }
            other => {
                return Err(ParseError {
                    line: tok.line,
                    col: tok.col,
                    message: format!(
                        "unknown declaration `{other}`, expected mode, gen or rule"
                    ),
                }
                .into())
            }
        }
    }

    let signature = Signature::new(generators)?;
    for r in &rules {
        r.typecheck(&signature, mode)
            .map_err(|source| TheoryError::RuleType {
                name: r.name.clone(),
                source,
            })?;
    }
    Ok(Theory {
        name,
        signature,
        rules,
        mode,
    })
}

/// The bimonoid theory rendered as a theory file.
pub fn nb_theory_text() -> String {
    let mut s = String::from(
        "theory nb\nmode smc\n\ngen mu  : 2 -> 1\ngen eta : 0 -> 1\ngen nu  : 1 -> 2\ngen eps : 1 -> 0\n\n",
    );
    for rule in crate::nb::nb_rules() {
        s.push_str(&format!("rule {} : {} => {}\n", rule.name, rule.lhs, rule.rhs));
    }
    s
}
