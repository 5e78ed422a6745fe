//! Exact rational convex-polytope engine.
//!
//! Polytopes are given by half-spaces `⟨x, v_i⟩ ≤ λ_i` with primitive integer
//! normals. Vertices, edges and support extrema are derived lazily, once, and
//! cached on the polytope.

mod linalg;
mod lp;
mod parse;
mod polytope;
mod vector;

pub use linalg::{adjugate_int, det_int, inverse_unimodular, rank, solve};
pub use lp::in_cone;
pub use parse::{parse_polytope, parse_rational, polytope_to_json, polytope_to_value};
pub use polytope::{
    enumerate_edges, enumerate_vertices, support_extrema, Edge, HalfSpace, Polytope, SupportExtrema,
    Vertex,
};
pub use vector::{IntVector, Rational};
