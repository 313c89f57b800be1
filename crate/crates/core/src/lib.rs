//! Exact codegree coefficients of the normalized adjacency characteristic
//! polynomial of k-uniform hypergraphs.
//!
//! The codegree-`d` coefficient of a simple k-graph is a weighted sum over
//! Veblen infragraphs (k-uniform multi-hypergraphs whose vertex degrees are
//! all divisible by `k`) with `d` edges. Each connected Veblen hypergraph
//! carries an *associated coefficient* `C_H`, a sum over its Euler rootings of
//! arborescence counts. This crate computes all of the pieces exactly:
//!
//! * [`hypergraph`]: multi-hypergraphs, flattening, components, text format;
//! * [`canon`]: canonical keys and automorphism group orders;
//! * [`digraph`]: Matrix-Tree arborescence counts and Euler circuit counts;
//! * [`assoc`]: Euler rootings and associated coefficients;
//! * [`simplex`]: the simplex constant `C_k` via derangement cycle types;
//! * [`enumerate`]: Veblen classes and Veblen infragraphs of a host;
//! * [`coeffs`]: occurrence counts, codegree coefficients, thresholds;
//! * [`poly`]: sparse big-integer polynomials (factored-form oracle).
//!
//! With the default `parallel` feature, batch work (class coefficients,
//! enumeration branches, partition terms) runs on rayon; without it every
//! path runs sequentially and produces identical output.

pub mod arith;
pub mod assoc;
pub mod budget;
pub mod canon;
pub mod catalog;
pub mod coeffs;
pub mod digraph;
pub mod enumerate;
mod error;
pub mod hypergraph;
mod par;
pub mod poly;
pub mod simplex;

pub use arith::{BigInt, Rational};
pub use assoc::{associated_coefficient, CoefficientCache, Rooting};
pub use budget::Budget;
pub use canon::{aut_order, canonical_key, CanonicalKey};
pub use coeffs::{codegree_coefficients, CoefficientVector};
pub use digraph::MultiDigraph;
pub use error::{Error, Result};
pub use hypergraph::{Edge, MultiHypergraph};
pub use poly::SparsePolynomial;
