//! The term language of the free symmetric monoidal category over a
//! signature, optionally extended with the special Frobenius generators and
//! the cups/caps they induce. Terms are interpreted into interfaced graphs.

use std::fmt;

use thiserror::Error;

use crate::cospan::{FrobGen, InterfacedGraph};
use crate::signature::Signature;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("cannot compose: left side has coarity {left_cod}, right side has arity {right_dom}")]
    CompositionMismatch { left_cod: usize, right_dom: usize },
    #[error("sides have different types: {lhs} vs {rhs}")]
    SidesMismatch { lhs: TermType, rhs: TermType },
    #[error("`{0}` is only available in frobenius mode")]
    FrobeniusOnly(&'static str),
}

/// Whether the ambient theory is plain symmetric monoidal or carries the
/// chosen special Frobenius structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Smc,
    Frobenius,
}

/// Domain and codomain width of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermType {
    pub dom: usize,
    pub cod: usize,
}

impl fmt::Display for TermType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.dom, self.cod)
    }
}

/// Term syntax. `Seq`/`Par` are sequential and parallel composition; the
/// Frobenius constructors and `Cup`/`Cap` are admitted in frobenius mode
/// only. The derived `Ord` gives the fixed total order used to pick
/// canonical representatives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Gen(String),
    Id(usize),
    Sym(usize, usize),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
    FMul,
    FUnit,
    FComul,
    FCounit,
    Cup(usize),
    Cap(usize),
}

impl Term {
    pub fn gen(name: impl Into<String>) -> Term {
        Term::Gen(name.into())
    }

    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: Term, b: Term) -> Term {
        Term::Par(Box::new(a), Box::new(b))
    }

    /// Right-nested sequential composition of a nonempty list.
    pub fn seq_all(mut parts: Vec<Term>) -> Term {
        let last = parts.pop().expect("seq_all of empty list");
        parts
            .into_iter()
            .rev()
            .fold(last, |acc, t| Term::seq(t, acc))
    }

    /// Right-nested parallel composition of a nonempty list.
    pub fn par_all(mut parts: Vec<Term>) -> Term {
        let last = parts.pop().expect("par_all of empty list");
        parts
            .into_iter()
            .rev()
            .fold(last, |acc, t| Term::par(t, acc))
    }

    /// Count of generator occurrences (Frobenius constructors excluded).
    pub fn generator_count(&self) -> usize {
        match self {
            Term::Gen(_) => 1,
            Term::Seq(a, b) | Term::Par(a, b) => a.generator_count() + b.generator_count(),
            _ => 0,
        }
    }
}

/// A named rewrite rule between terms of equal type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRuleTerm {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl RewriteRuleTerm {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        RewriteRuleTerm {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    /// The common type of both sides, or the first type error.
    pub fn typecheck(&self, sig: &Signature, mode: Mode) -> Result<TermType, TypeError> {
        let lt = typecheck(&self.lhs, sig, mode)?;
        let rt = typecheck(&self.rhs, sig, mode)?;
        if lt != rt {
            return Err(TypeError::SidesMismatch { lhs: lt, rhs: rt });
        }
        Ok(lt)
    }
}

pub fn typecheck(t: &Term, sig: &Signature, mode: Mode) -> Result<TermType, TypeError> {
    let frob = |name| {
        if mode == Mode::Frobenius {
            Ok(())
        } else {
            Err(TypeError::FrobeniusOnly(name))
        }
    };
    match t {
        Term::Gen(name) => {
            let (dom, cod) = sig
                .arity(name)
                .map_err(|_| TypeError::UnknownGenerator(name.clone()))?;
            Ok(TermType { dom, cod })
        }
        Term::Id(n) => Ok(TermType { dom: *n, cod: *n }),
        Term::Sym(n, m) => Ok(TermType {
            dom: n + m,
            cod: m + n,
        }),
        Term::Seq(a, b) => {
            let ta = typecheck(a, sig, mode)?;
            let tb = typecheck(b, sig, mode)?;
            if ta.cod != tb.dom {
                return Err(TypeError::CompositionMismatch {
                    left_cod: ta.cod,
                    right_dom: tb.dom,
                });
            }
            Ok(TermType {
                dom: ta.dom,
                cod: tb.cod,
            })
        }
        Term::Par(a, b) => {
            let ta = typecheck(a, sig, mode)?;
            let tb = typecheck(b, sig, mode)?;
            Ok(TermType {
                dom: ta.dom + tb.dom,
                cod: ta.cod + tb.cod,
            })
        }
        Term::FMul => frob("fmul").map(|_| TermType { dom: 2, cod: 1 }),
        Term::FUnit => frob("funit").map(|_| TermType { dom: 0, cod: 1 }),
        Term::FComul => frob("fcomul").map(|_| TermType { dom: 1, cod: 2 }),
        Term::FCounit => frob("fcounit").map(|_| TermType { dom: 1, cod: 0 }),
        Term::Cup(n) => frob("cup").map(|_| TermType {
            dom: 2 * n,
            cod: 0,
        }),
        Term::Cap(n) => frob("cap").map(|_| TermType {
            dom: 0,
            cod: 2 * n,
        }),
    }
}

/// Interpret a well-typed term as an interfaced graph. Generators become
/// single hyperedges; `Seq`/`Par` become pushout-gluing and disjoint union;
/// cups and caps are first expanded into Frobenius generators.
pub fn interpret(t: &Term, sig: &Signature, mode: Mode) -> Result<InterfacedGraph, TypeError> {
    typecheck(t, sig, mode)?;
    Ok(eval(t, sig))
}

fn eval(t: &Term, sig: &Signature) -> InterfacedGraph {
    match t {
        Term::Gen(name) => {
            let (arity, coarity) = sig.arity(name).expect("typechecked generator");
            InterfacedGraph::generator(name, arity, coarity)
        }
        Term::Id(n) => InterfacedGraph::identity(*n),
        Term::Sym(n, m) => InterfacedGraph::symmetry(*n, *m),
        Term::Seq(a, b) => eval(a, sig)
            .compose(&eval(b, sig))
            .expect("typechecked composition"),
        Term::Par(a, b) => eval(a, sig).tensor(&eval(b, sig)),
        Term::FMul => InterfacedGraph::frob_gen(FrobGen::Mul),
        Term::FUnit => InterfacedGraph::frob_gen(FrobGen::Unit),
        Term::FComul => InterfacedGraph::frob_gen(FrobGen::Comul),
        Term::FCounit => InterfacedGraph::frob_gen(FrobGen::Counit),
        Term::Cup(n) => eval(&expand_cup(*n), sig),
        Term::Cap(n) => eval(&expand_cap(*n), sig),
    }
}

/// The nested cup `2n -> 0`: wire `k` is paired with wire `2n-1-k`.
pub fn expand_cup(n: usize) -> Term {
    match n {
        0 => Term::Id(0),
        1 => Term::seq(Term::FMul, Term::FCounit),
        _ => Term::seq(
            Term::par(
                Term::Id(1),
                Term::par(expand_cup(n - 1), Term::Id(1)),
            ),
            expand_cup(1),
        ),
    }
}

/// The nested cap `0 -> 2n`, dual to [`expand_cup`].
pub fn expand_cap(n: usize) -> Term {
    match n {
        0 => Term::Id(0),
        1 => Term::seq(Term::FUnit, Term::FComul),
        _ => Term::seq(
            expand_cap(1),
            Term::par(
                Term::Id(1),
                Term::par(expand_cap(n - 1), Term::Id(1)),
            ),
        ),
    }
}

/// Bend a term `d : n -> m` into a ground term `0 -> n + m` using a cap.
pub fn bend(d: &Term, sig: &Signature) -> Result<Term, TypeError> {
    let ty = typecheck(d, sig, Mode::Frobenius)?;
    Ok(Term::seq(
        Term::Cap(ty.dom),
        Term::par(Term::Id(ty.dom), d.clone()),
    ))
}

/// The compact-closed dual `m -> n` of a term `c : n -> m`.
pub fn dual(c: &Term, sig: &Signature) -> Result<Term, TypeError> {
    let ty = typecheck(c, sig, Mode::Frobenius)?;
    let (n, m) = (ty.dom, ty.cod);
    Ok(Term::seq(
        Term::seq(
            Term::par(Term::Cap(n), Term::Id(m)),
            Term::par(Term::Id(n), Term::par(c.clone(), Term::Id(m))),
        ),
        Term::par(Term::Id(n), Term::Cup(m)),
    ))
}

/// A term whose interpretation routes input position `i` to output position
/// `perm[i]`. Built by selection: each displaced wire is rotated into place
/// with one `sym (c-p) 1` layer. Returns `Id(n)` for the identity.
pub fn perm_to_term(perm: &[usize]) -> Term {
    let n = perm.len();
    // q[p] = the wire that must end up at position p.
    let mut q = vec![0usize; n];
    for (i, &p) in perm.iter().enumerate() {
        q[p] = i;
    }
    let mut arr: Vec<usize> = (0..n).collect();
    let mut layers: Vec<Term> = Vec::new();
    let mut p = 0;
    while p < n {
        let c = p + arr[p..]
            .iter()
            .position(|&w| w == q[p])
            .expect("perm is a permutation");
        if c == p {
            p += 1;
            continue;
        }
        // If the whole tail is a cyclic shift, one block swap finishes it.
        let tail_rotated = arr[c..]
            .iter()
            .chain(arr[p..c].iter())
            .eq(q[p..].iter());
        let mut parts = Vec::new();
        if p > 0 {
            parts.push(Term::Id(p));
        }
        if tail_rotated {
            parts.push(Term::Sym(c - p, n - c));
            layers.push(Term::par_all(parts));
            break;
        }
        parts.push(Term::Sym(c - p, 1));
        if n - c - 1 > 0 {
            parts.push(Term::Id(n - c - 1));
        }
        layers.push(Term::par_all(parts));
        let w = arr.remove(c);
        arr.insert(p, w);
        p += 1;
    }
    if layers.is_empty() {
        Term::Id(n)
    } else {
        Term::seq_all(layers)
    }
}

/// The cospan routing input `i` to output position `perm[i]` directly; the
/// reference semantics for [`perm_to_term`].
pub fn permutation_cospan(perm: &[usize]) -> InterfacedGraph {
    let n = perm.len();
    let mut outputs = vec![0usize; n];
    for (i, &p) in perm.iter().enumerate() {
        outputs[p] = i;
    }
    InterfacedGraph::new(
        crate::hypergraph::Hypergraph::discrete(n),
        (0..n).collect(),
        outputs,
    )
    .expect("permutation interface in range")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, 0)
    }
}

/// Precedence: 0 = seq position, 1 = par position, 2 = atom position.
/// Both operators print right-associatively.
fn write_term(t: &Term, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
    match t {
        Term::Seq(a, b) => {
            if prec > 0 {
                write!(f, "(")?;
            }
            write_term(a, f, 1)?;
            write!(f, " ; ")?;
            write_term(b, f, 0)?;
            if prec > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
        Term::Par(a, b) => {
            if prec > 1 {
                write!(f, "(")?;
            }
            write_term(a, f, 2)?;
            write!(f, " * ")?;
            write_term(b, f, 1)?;
            if prec > 1 {
                write!(f, ")")?;
            }
            Ok(())
        }
        Term::Gen(name) => write!(f, "{name}"),
        Term::Id(n) => write!(f, "id {n}"),
        Term::Sym(n, m) => write!(f, "sym {n} {m}"),
        Term::FMul => write!(f, "fmul"),
        Term::FUnit => write!(f, "funit"),
        Term::FComul => write!(f, "fcomul"),
        Term::FCounit => write!(f, "fcounit"),
        Term::Cup(n) => write!(f, "cup {n}"),
        Term::Cap(n) => write!(f, "cap {n}"),
    }
}
