use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::linalg::{rank, solve};
use super::lp::in_cone;
use super::{IntVector, Rational};
use crate::{Error, Result};

/// The half-space `⟨x, normal⟩ ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: IntVector,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: IntVector, offset: Rational) -> Self {
        Self { normal, offset }
    }

    pub fn from_i64(normal: &[i64], offset: Rational) -> Self {
        Self::new(IntVector::from_i64(normal), offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub coordinates: Vec<Rational>,
    /// Facets tight at this vertex, ascending.
    pub active_facets: Vec<usize>,
}

/// A 1-face of the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Vertex indices, `endpoints.0 < endpoints.1`.
    pub endpoints: (usize, usize),
    /// Facets containing the whole edge (the `J_E` set), ascending.
    pub facet_set: Vec<usize>,
    /// Primitive integer direction from `endpoints.0` towards `endpoints.1`.
    pub direction: IntVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportExtrema {
    pub max: Rational,
    pub min: Rational,
    pub argmax: usize,
    pub argmin: usize,
}

impl SupportExtrema {
    pub fn width(&self) -> Rational {
        &self.max - &self.min
    }
}

#[derive(Clone, Debug)]
struct Geometry {
    vertices: Vec<Vertex>,
    /// Every 1-face, including those on non-simple vertices.
    edges: Vec<Edge>,
}

/// A convex polytope in half-space representation.
///
/// Vertices and edges are computed on first use and cached; the polytope is
/// immutable and `Sync`.
#[derive(Clone, Debug)]
pub struct Polytope {
    dimension: usize,
    facets: Vec<HalfSpace>,
    name: Option<String>,
    normalized: Vec<usize>,
    geometry: OnceLock<Result<Geometry>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.facets == other.facets && self.name == other.name
    }
}

impl Polytope {
    /// Checks facet-level well-formedness. Geometric checks (boundedness,
    /// emptiness, full dimension, redundancy) run on first vertex access.
    pub fn new(dimension: usize, facets: Vec<HalfSpace>, name: Option<String>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        for (i, f) in facets.iter().enumerate() {
            if f.normal.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    facet: i,
                    expected: dimension,
                    got: f.normal.dim(),
                });
            }
            if f.normal.is_zero() {
                return Err(Error::ZeroNormal { facet: i });
            }
            let g = f.normal.gcd();
            if !g.is_one() {
                return Err(Error::NonPrimitiveNormal {
                    facet: i,
                    normal: f.normal.to_string(),
                    gcd: g.to_string(),
                });
            }
        }
        for (i, j) in (0..facets.len()).tuple_combinations() {
            if facets[i] == facets[j] {
                return Err(Error::DuplicateFacet { first: i, second: j });
            }
        }
        Ok(Self {
            dimension,
            facets,
            name,
            normalized: Vec::new(),
            geometry: OnceLock::new(),
        })
    }

    pub(crate) fn with_normalized(mut self, normalized: Vec<usize>) -> Self {
        self.normalized = normalized;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Facets whose normal was divided by its gcd while parsing.
    pub fn normalized_facets(&self) -> &[usize] {
        &self.normalized
    }

    fn geometry(&self) -> Result<&Geometry> {
        self.geometry
            .get_or_init(|| compute_geometry(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn vertices(&self) -> Result<&[Vertex]> {
        Ok(&self.geometry()?.vertices)
    }

    /// All 1-faces without the simplicity requirement of [`enumerate_edges`].
    pub fn raw_edges(&self) -> Result<&[Edge]> {
        Ok(&self.geometry()?.edges)
    }

    /// Indices of the edges incident to `vertex`.
    pub fn incident_edges(&self, vertex: usize) -> Result<Vec<usize>> {
        let g = self.geometry()?;
        if vertex >= g.vertices.len() {
            return Err(Error::NoSuchVertex(vertex));
        }
        Ok(g.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.endpoints.0 == vertex || e.endpoints.1 == vertex)
            .map(|(i, _)| i)
            .collect())
    }

    /// Index of the edge whose facet set is exactly `facet_set`.
    pub fn edge_by_facets(&self, facet_set: &[usize]) -> Result<Option<usize>> {
        Ok(self
            .geometry()?
            .edges
            .iter()
            .position(|e| e.facet_set == facet_set))
    }
}

fn compute_geometry(p: &Polytope) -> Result<Geometry> {
    let n = p.dimension;
    let normals: Vec<Vec<Rational>> = p.facets.iter().map(|f| f.normal.to_rational()).collect();

    for i in 0..n {
        for sign in [1i64, -1] {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::from_integer(BigInt::from(sign));
            if !in_cone(&normals, &e) {
                return Err(Error::Unbounded(n));
            }
        }
    }

    let vertices = vertices_of(p, &normals);
    if vertices.is_empty() {
        return Err(Error::Empty);
    }

    let diffs: Vec<Vec<Rational>> = vertices[1..]
        .iter()
        .map(|v| sub(&v.coordinates, &vertices[0].coordinates))
        .collect();
    let hull = rank(&diffs);
    if hull < n {
        return Err(Error::NotFullDimensional { hull, dimension: n });
    }

    for facet in 0..p.facets.len() {
        let on: Vec<&Vertex> = vertices
            .iter()
            .filter(|v| v.active_facets.binary_search(&facet).is_ok())
            .collect();
        let face_dim = on.split_first().map(|(first, rest)| {
            rank(
                &rest
                    .iter()
                    .map(|v| sub(&v.coordinates, &first.coordinates))
                    .collect::<Vec<_>>(),
            )
        });
        if face_dim != Some(n - 1) {
            return Err(Error::RedundantFacet { facet });
        }
    }

    let mut edges = Vec::new();
    for (a, b) in (0..vertices.len()).tuple_combinations() {
        let common: Vec<usize> = vertices[a]
            .active_facets
            .iter()
            .copied()
            .filter(|f| vertices[b].active_facets.binary_search(f).is_ok())
            .collect();
        if common.len() + 1 < n {
            continue;
        }
        let rows: Vec<Vec<Rational>> = common.iter().map(|&f| normals[f].clone()).collect();
        if rank(&rows) != n - 1 {
            continue;
        }
        let diff = sub(&vertices[b].coordinates, &vertices[a].coordinates);
        let direction =
            IntVector::primitive_from_rational(&diff).expect("distinct vertices have non-zero difference");
        edges.push(Edge {
            endpoints: (a, b),
            facet_set: common,
            direction,
        });
    }

    Ok(Geometry { vertices, edges })
}

fn vertices_of(p: &Polytope, normals: &[Vec<Rational>]) -> Vec<Vertex> {
    let n = p.dimension;
    let subsets: Vec<Vec<usize>> = (0..p.facets.len()).combinations(n).collect();
    let points: Vec<Vec<Rational>> = subsets
        .par_iter()
        .filter_map(|subset| {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
            let b: Vec<Rational> = subset.iter().map(|&i| p.facets[i].offset.clone()).collect();
            let x = solve(&a, &b)?;
            p.facets
                .iter()
                .all(|f| f.normal.dot_rational(&x) <= f.offset)
                .then_some(x)
        })
        .collect();
    // BTreeMap: dedupe and lexicographic order in one go
    let unique: BTreeMap<Vec<Rational>, ()> = points.into_iter().map(|x| (x, ())).collect();
    unique
        .into_keys()
        .map(|x| {
            let active_facets = p
                .facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.normal.dot_rational(&x) == f.offset)
                .map(|(i, _)| i)
                .collect();
            Vertex {
                coordinates: x,
                active_facets,
            }
        })
        .collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// All vertices, lexicographically sorted, each with its active facets.
pub fn enumerate_vertices(p: &Polytope) -> Result<&[Vertex]> {
    p.vertices()
}

/// All edges; fails unless every edge lies on exactly `n − 1` facets.
pub fn enumerate_edges(p: &Polytope) -> Result<&[Edge]> {
    let edges = p.raw_edges()?;
    let expected = p.dimension() - 1;
    if let Some(e) = edges.iter().find(|e| e.facet_set.len() != expected) {
        return Err(Error::NonSimpleEdge {
            a: e.endpoints.0,
            b: e.endpoints.1,
            count: e.facet_set.len(),
            expected,
        });
    }
    Ok(edges)
}

/// Exact max and min of `⟨x, u⟩` over the polytope. Ties go to the
/// lexicographically smallest vertex.
pub fn support_extrema(p: &Polytope, u: &IntVector) -> Result<SupportExtrema> {
    if u.dim() != p.dimension() {
        return Err(Error::WrongLength {
            expected: p.dimension(),
            got: u.dim(),
        });
    }
    if u.is_zero() {
        return Err(Error::ZeroVector);
    }
    let vertices = p.vertices()?;
    let mut best: Option<SupportExtrema> = None;
    for (i, v) in vertices.iter().enumerate() {
        let value = u.dot_rational(&v.coordinates);
        best = Some(match best {
            None => SupportExtrema {
                max: value.clone(),
                min: value,
                argmax: i,
                argmin: i,
            },
            Some(mut s) => {
                if value > s.max {
                    s.max = value.clone();
                    s.argmax = i;
                }
                if value < s.min {
                    s.min = value;
                    s.argmin = i;
                }
                s
            }
        });
    }
    Ok(best.expect("a valid polytope has at least one vertex"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(n: i64) -> Rational {
        q(n, 1)
    }

    fn poly(dim: usize, facets: &[(&[i64], i64)]) -> Result<Polytope> {
        Polytope::new(
            dim,
            facets
                .iter()
                .map(|(n, o)| HalfSpace::from_i64(n, int(*o)))
                .collect(),
            None,
        )
    }

    fn coords(p: &Polytope) -> Vec<Vec<Rational>> {
        p.vertices().unwrap().iter().map(|v| v.coordinates.clone()).collect()
    }

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn cp2() -> Polytope {
        poly(2, &[(&[0, -1], 0), (&[1, 1], 1), (&[-1, 0], 0)]).unwrap()
    }

    #[test]
    fn cp2_vertices() {
        assert_eq!(coords(&cp2()), pts(&[&[0, 0], &[0, 1], &[1, 0]]));
    }

    #[test]
    fn box_vertices() {
        let p = poly(2, &[(&[-1, 0], 0), (&[1, 0], 1), (&[0, -1], 0), (&[0, 1], 2)]).unwrap();
        assert_eq!(coords(&p), pts(&[&[0, 0], &[0, 2], &[1, 0], &[1, 2]]));
    }

    #[test]
    fn hirzebruch_two_vertices() {
        let p = poly(2, &[(&[0, -1], 0), (&[1, 2], 3), (&[0, 1], 1), (&[-1, 0], 0)]).unwrap();
        assert_eq!(coords(&p), pts(&[&[0, 0], &[0, 1], &[1, 1], &[3, 0]]));
    }

    #[test]
    fn cp2_edges_and_hypotenuse() {
        let p = cp2();
        let edges = enumerate_edges(&p).unwrap();
        assert_eq!(edges.len(), 3);
        let hyp = edges.iter().find(|e| e.facet_set == vec![1]).unwrap();
        assert!(
            hyp.direction == IntVector::from_i64(&[-1, 1]) || hyp.direction == IntVector::from_i64(&[1, -1])
        );
    }

    #[test]
    fn cube_edges() {
        let mut f: Vec<(&[i64], i64)> = Vec::new();
        let axes: [&[i64]; 6] = [&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]];
        for (i, a) in axes.iter().enumerate() {
            f.push((a, if i % 2 == 0 { 1 } else { 0 }));
        }
        let p = poly(3, &f).unwrap();
        assert_eq!(p.vertices().unwrap().len(), 8);
        let edges = enumerate_edges(&p).unwrap();
        assert_eq!(edges.len(), 12);
        for e in edges {
            assert_eq!(e.facet_set.len(), 2);
            assert_eq!(e.direction.max_abs(), BigInt::one());
            assert_eq!(e.direction.entries().iter().filter(|x| !x.is_zero()).count(), 1);
        }
    }

    #[test]
    fn hirzebruch_slanted_edge_direction() {
        let p = poly(2, &[(&[0, -1], 0), (&[1, 2], 3), (&[0, 1], 1), (&[-1, 0], 0)]).unwrap();
        let edges = enumerate_edges(&p).unwrap();
        assert_eq!(edges.len(), 4);
        let slant = edges.iter().find(|e| e.facet_set == vec![1]).unwrap();
        assert_eq!(slant.direction.sign_canonical(), IntVector::from_i64(&[2, -1]));
    }

    #[test]
    fn support_extrema_examples() {
        let p = poly(2, &[(&[0, -1], 0), (&[1, 1], 2), (&[-1, 0], 0)]).unwrap();
        let s = support_extrema(&p, &IntVector::from_i64(&[1, -1])).unwrap();
        assert_eq!((s.max.clone(), s.min.clone()), (int(2), int(-2)));
        let v = p.vertices().unwrap();
        assert_eq!(v[s.argmax].coordinates, vec![int(2), int(0)]);
        assert_eq!(v[s.argmin].coordinates, vec![int(0), int(2)]);

        let sq = poly(2, &[(&[-1, 0], 0), (&[1, 0], 1), (&[0, -1], 0), (&[0, 1], 1)]).unwrap();
        let s = support_extrema(&sq, &IntVector::from_i64(&[1, 0])).unwrap();
        assert_eq!((s.max, s.min), (int(1), int(0)));
        // tie along the edge x = 1: smallest vertex (1,0) wins
        assert_eq!(sq.vertices().unwrap()[s.argmax].coordinates, vec![int(1), int(0)]);

        let h = poly(2, &[(&[0, -1], 0), (&[1, 2], 3), (&[0, 1], 1), (&[-1, 0], 0)]).unwrap();
        let s = support_extrema(&h, &IntVector::from_i64(&[1, 1])).unwrap();
        assert_eq!((s.max.clone(), s.min.clone()), (int(3), int(0)));
        assert_eq!(h.vertices().unwrap()[s.argmax].coordinates, vec![int(3), int(0)]);

        assert_eq!(support_extrema(&h, &IntVector::zeros(2)), Err(Error::ZeroVector));
        assert!(matches!(
            support_extrema(&h, &IntVector::zeros(3)),
            Err(Error::WrongLength { .. })
        ));
    }

    #[test]
    fn rational_offsets() {
        let p = Polytope::new(
            2,
            vec![
                HalfSpace::from_i64(&[0, -1], int(0)),
                HalfSpace::from_i64(&[1, 1], q(7, 3)),
                HalfSpace::from_i64(&[-1, 0], int(0)),
            ],
            None,
        )
        .unwrap();
        assert_eq!(
            coords(&p),
            vec![vec![int(0), int(0)], vec![int(0), q(7, 3)], vec![q(7, 3), int(0)]]
        );
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            poly(2, &[(&[0, -1], 0), (&[1, 1], 1)]).unwrap().vertices().unwrap_err(),
            Error::Unbounded(2)
        );
        assert_eq!(
            poly(2, &[(&[0, -1], -1), (&[1, 1], 0), (&[-1, 0], 0)])
                .unwrap()
                .vertices()
                .unwrap_err(),
            Error::Empty
        );
        assert!(matches!(
            poly(2, &[(&[0, -1], 0), (&[0, 1], 0), (&[1, 0], 1), (&[-1, 0], 0)])
                .unwrap()
                .vertices(),
            Err(Error::NotFullDimensional { hull: 1, .. })
        ));
        assert_eq!(
            poly(2, &[(&[0, -1], 0), (&[1, 1], 1), (&[-1, 0], 0), (&[1, 0], 5)])
                .unwrap()
                .vertices()
                .unwrap_err(),
            Error::RedundantFacet { facet: 3 }
        );
        assert!(matches!(
            poly(2, &[(&[0, -1], 0), (&[0, -1], 0), (&[1, 1], 1), (&[-1, 0], 0)]),
            Err(Error::DuplicateFacet { first: 0, second: 1 })
        ));
        assert!(matches!(poly(2, &[(&[0, 0], 0)]), Err(Error::ZeroNormal { facet: 0 })));
        assert!(matches!(
            poly(2, &[(&[2, 4], 0)]),
            Err(Error::NonPrimitiveNormal { facet: 0, .. })
        ));
        assert!(matches!(
            poly(2, &[(&[1, 0, 0], 0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_simple_pyramid_edges_rejected() {
        // square pyramid: apex lies on four facets
        let p = poly(
            3,
            &[
                (&[0, 0, -1], 0),
                (&[1, 0, 1], 1),
                (&[-1, 0, 1], 1),
                (&[0, 1, 1], 1),
                (&[0, -1, 1], 1),
            ],
        )
        .unwrap();
        assert_eq!(p.vertices().unwrap().len(), 5);
        assert_eq!(p.raw_edges().unwrap().len(), 8);
        // every edge of the pyramid still has exactly two facets
        assert!(enumerate_edges(&p).is_ok());
        let apex = p
            .vertices()
            .unwrap()
            .iter()
            .position(|v| v.active_facets.len() == 4)
            .unwrap();
        assert_eq!(p.incident_edges(apex).unwrap().len(), 4);
    }

    #[test]
    fn one_dimensional_interval() {
        let p = poly(1, &[(&[1], 3), (&[-1], 1)]).unwrap();
        assert_eq!(coords(&p), pts(&[&[-1], &[3]]));
        let e = enumerate_edges(&p).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].facet_set.is_empty());
    }
}
