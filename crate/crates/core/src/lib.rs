//! Transition matroids of 4-regular graphs.
//!
//! A 4-regular graph with an Euler system determines a binary matroid on its
//! `3n` transitions. This crate builds that matroid, checks the rank
//! identities it satisfies, and evaluates the circuit-partition invariants it
//! determines: Martin polynomials, transition and interlace polynomials, the
//! Kauffman bracket of a link diagram and the Bollobás–Riordan polynomial of a
//! ribbon graph.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod invariants;
pub mod knots;
pub mod matroid;
pub mod par;
pub mod poly;
pub mod ribbon;
pub mod simple_graph;
pub mod words;

pub use error::{Error, Result};
pub use graph::{FourRegularGraph, Pairing, Transition, Transversal};
