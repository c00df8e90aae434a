//! Spacetime-translation-invariant Clifford circuits on the square and
//! kagome lattices, represented as symplectic cellular automata over the
//! Laurent ring F2[u,1/u].
//!
//! The crate builds circuit automata from small gate specs, classifies them
//! under the lattice point group, and simulates operator spreading,
//! entanglement growth, recurrences, erasure codes, hybrid
//! measurement dynamics, and two-point correlations.

pub mod automaton;
pub mod codes;
pub mod correlations;
pub mod dynamics;
pub mod hybrid;
pub mod lattice;
pub mod pauli;
pub mod pointgroup;
pub mod tableau;
pub mod polyring;
