use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed polytope document: {0}")]
    Malformed(String),

    #[error("facet {facet}: normal has length {got}, expected dimension {expected}")]
    DimensionMismatch {
        facet: usize,
        expected: usize,
        got: usize,
    },

    #[error("facet {facet}: zero normal vector")]
    ZeroNormal { facet: usize },

    #[error("facet {facet}: normal {normal} is not primitive (gcd {gcd}); set \"normalize\": true to divide it out")]
    NonPrimitiveNormal {
        facet: usize,
        normal: String,
        gcd: String,
    },

    #[error("facets {first} and {second} describe the same half-space")]
    DuplicateFacet { first: usize, second: usize },

    #[error("polytope is unbounded: the facet normals do not positively span R^{0}")]
    Unbounded(usize),

    #[error("polytope is empty")]
    Empty,

    #[error("polytope is not full-dimensional (affine hull has dimension {hull} < {dimension})")]
    NotFullDimensional { hull: usize, dimension: usize },

    #[error("facet {facet} is redundant: it does not cut out a face of codimension one")]
    RedundantFacet { facet: usize },

    #[error("edge {a}-{b} lies on {count} facets, expected {expected} (polytope is not simple)")]
    NonSimpleEdge {
        a: usize,
        b: usize,
        count: usize,
        expected: usize,
    },

    #[error("vertex {vertex} is not simple: {edges} incident edges, {facets} active facets")]
    NonSimpleVertex {
        vertex: usize,
        edges: usize,
        facets: usize,
    },

    #[error("vertex index {0} out of range")]
    NoSuchVertex(usize),

    #[error("zero vector has no primitive form")]
    ZeroVector,

    #[error("vector {0} is not primitive")]
    NotPrimitive(String),

    #[error("vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },

    #[error("polytope is not Delzant: {0}")]
    NotDelzant(String),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("invalid lattice polygon: {0}")]
    InvalidPolygon(String),

    #[error("infeasible profile: {0}")]
    InfeasibleProfile(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
