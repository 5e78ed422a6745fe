//! Delzant conditions: simplicity, rationality, smoothness.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::ratgeom::{det_int, IntVector, Polytope, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Simplicity,
    Rationality,
    Smoothness,
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_delzant: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            is_delzant: violations.is_empty(),
            violations,
        }
    }

    /// Report for input that never became a polytope.
    pub fn structural(err: &Error) -> Self {
        Self::from_violations(vec![Violation {
            kind: ViolationKind::Structural,
            location: "polytope".into(),
            detail: err.to_string(),
        }])
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_delzant {
            return Ok(());
        }
        let summary = self
            .violations
            .iter()
            .map(|v| format!("{:?} at {}: {}", v.kind, v.location, v.detail).to_lowercase())
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::NotDelzant(summary))
    }
}

fn point(coords: &[Rational]) -> String {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn vertex_label(p: &Polytope, i: usize) -> String {
    let v = &p.vertices().expect("geometry already computed")[i];
    format!("vertex {i} {}", point(&v.coordinates))
}

/// Primitive directions of the edges at `vertex`, each pointing away from it,
/// sorted lexicographically.
pub fn edge_directions_at_vertex(p: &Polytope, vertex: usize) -> Result<Vec<IntVector>> {
    let n = p.dimension();
    let incident = p.incident_edges(vertex)?;
    let active = p.vertices()?[vertex].active_facets.len();
    if incident.len() != n || active != n {
        return Err(Error::NonSimpleVertex {
            vertex,
            edges: incident.len(),
            facets: active,
        });
    }
    Ok(outward_directions(p, vertex, &incident))
}

fn outward_directions(p: &Polytope, vertex: usize, incident: &[usize]) -> Vec<IntVector> {
    let edges = p.raw_edges().expect("geometry already computed");
    let mut dirs: Vec<IntVector> = incident
        .iter()
        .map(|&e| {
            let edge = &edges[e];
            if edge.endpoints.0 == vertex {
                edge.direction.clone()
            } else {
                edge.direction.neg()
            }
        })
        .collect();
    dirs.sort();
    dirs
}

/// Whether `diff` is a positive rational multiple of the integer vector `dir`.
fn is_positive_multiple(diff: &[Rational], dir: &IntVector) -> bool {
    let mut scale: Option<Rational> = None;
    for (d, k) in diff.iter().zip(dir.entries()) {
        if k == &BigInt::from(0) {
            if d != &Rational::from_integer(BigInt::from(0)) {
                return false;
            }
            continue;
        }
        let s = d / Rational::from_integer(k.clone());
        match &scale {
            None => scale = Some(s),
            Some(prev) if *prev != s => return false,
            _ => {}
        }
    }
    scale.is_some_and(|s| s.is_positive())
}

/// Check every vertex for simplicity, rationality and smoothness.
///
/// A non-simple vertex is reported once under simplicity; its directions are
/// not tested further.
pub fn validate_delzant(p: &Polytope) -> ValidationReport {
    let vertices = match p.vertices() {
        Ok(v) => v,
        Err(e) => return ValidationReport::structural(&e),
    };
    let edges = p.raw_edges().expect("vertices computed");
    let n = p.dimension();
    let mut violations = Vec::new();

    for (i, v) in vertices.iter().enumerate() {
        let incident = p.incident_edges(i).expect("index in range");
        if incident.len() != n || v.active_facets.len() != n {
            violations.push(Violation {
                kind: ViolationKind::Simplicity,
                location: vertex_label(p, i),
                detail: format!(
                    "{} incident edges and {} active facets, expected {n} of each",
                    incident.len(),
                    v.active_facets.len()
                ),
            });
            continue;
        }

        let mut rational = true;
        for &e in &incident {
            let edge = &edges[e];
            let other = if edge.endpoints.0 == i { edge.endpoints.1 } else { edge.endpoints.0 };
            let diff: Vec<Rational> = vertices[other]
                .coordinates
                .iter()
                .zip(&v.coordinates)
                .map(|(a, b)| a - b)
                .collect();
            let dir = if edge.endpoints.0 == i { edge.direction.clone() } else { edge.direction.neg() };
            // holds for any rational H-representation; kept as an explicit check
            if !is_positive_multiple(&diff, &dir) {
                rational = false;
                violations.push(Violation {
                    kind: ViolationKind::Rationality,
                    location: vertex_label(p, i),
                    detail: format!("edge towards vertex {other} is not along an integer vector"),
                });
            }
        }
        if !rational {
            continue;
        }

        let dirs = outward_directions(p, i, &incident);
        let m: Vec<Vec<BigInt>> = dirs.iter().map(|d| d.entries().to_vec()).collect();
        let det = det_int(&m);
        if !det.abs().is_one() {
            let listed: Vec<String> = dirs.iter().map(ToString::to_string).collect();
            violations.push(Violation {
                kind: ViolationKind::Smoothness,
                location: vertex_label(p, i),
                detail: format!(
                    "edge directions {} have determinant {}",
                    listed.join(", "),
                    det.abs()
                ),
            });
        }
    }
    ValidationReport::from_violations(violations)
}
