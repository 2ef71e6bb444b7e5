//! Recognition of (k,l)-sparse, tight and spanning multigraphs, plus tooling
//! that audits, refutes and exhaustively searches candidate planarizing
//! gadgets for those graph classes.

pub mod error;
pub mod flow;
pub mod gadget;
pub mod graph;
pub mod planarity;
pub mod random;
pub mod sparsity;

pub use error::{Error, Result};
pub use graph::{MultiGraph, VertexId};
pub use sparsity::{Predicate, SparsityParams, SparsityVerdict, ViolationWitness};
