//! Exact computation of the toric width of Delzant polytopes.
//!
//! A Delzant polytope `Δ = ⋂ {x : ⟨x, v_i⟩ ≤ λ_i}` is the moment image of a
//! symplectic toric manifold. For every primitive direction `u` the circle
//! generated by `u` acts with a largest finite stabilizer of order `m_u(Δ)`,
//! and the rescaled directional width
//!
//! ```text
//! T_u(Δ) = (max ⟨x,u⟩ − min ⟨x,u⟩) / m_u(Δ)
//! ```
//!
//! is the oscillation of an admissible Hamiltonian. The supremum over all
//! primitive `u` (the toric width) bounds the Hofer–Zehnder capacity from
//! below. This crate computes every ingredient in exact rational arithmetic
//! and reports radius-certified lower bounds for the toric width.
//!
//! Module map:
//! - [`ratgeom`]: rationals, half-spaces, vertex/edge enumeration, support extrema
//! - [`delzant`]: simplicity / rationality / smoothness validation
//! - [`lattice`]: primitive vectors, parallelepiped lattice counts, Pick's theorem
//! - [`width`]: `k^u_E`, `m_u`, `T_u` and the radius-bounded width scan
//! - [`affine`]: the `AGL(n, Z)` action and equivariance checks
//! - [`admissible`]: sampled plateau profiles with slope below one (floating point)
//! - [`fixtures`], [`render`]: fixture catalog and text/JSON/SVG/Markdown output

pub mod admissible;
pub mod affine;
pub mod delzant;
mod error;
pub mod fixtures;
pub mod lattice;
pub mod ratgeom;
pub mod render;
pub mod width;

pub use error::{Error, Result};
pub use ratgeom::{HalfSpace, IntVector, Polytope, Rational};
