//! Rewriting string diagrams of symmetric monoidal categories by
//! double-pushout rewriting of interfaced hypergraphs.
//!
//! Diagrams are stored combinatorially: a [`hypergraph::Hypergraph`] of
//! labelled hyperedges plus ordered input/output interfaces
//! ([`cospan::InterfacedGraph`]). Terms ([`term::Term`]) interpret into such
//! graphs, and graphs denoting plain terms read back canonically
//! ([`readback`]). Rewriting ([`dpo`]) comes in two flavours: unrestricted
//! double-pushout steps, sound for theories with a chosen special Frobenius
//! structure, and convex steps, sound for plain symmetric monoidal
//! theories. The [`nb`] module ships the non-commutative bimonoid system
//! together with the lexicographic measure that proves it terminating.

pub mod cli;
pub mod cospan;
pub mod dot;
pub mod dpo;
pub mod factorize;
pub mod generate;
pub mod hypergraph;
pub mod json;
pub mod nb;
pub mod parser;
pub mod prove;
pub mod readback;
pub mod rng;
pub mod signature;
pub mod term;
pub mod theory;
