//! Per-direction stabilizer orders `k^u_E`, `m_u(Δ)`, the rescaled widths
//! `T_u(Δ)`, and the radius-bounded toric-width scan.
//!
//! For an edge `E` with facet set `J_E` and a primitive `u`, `k^u_E` is the
//! order of the stabilizer of the circle generated by `u` at points over the
//! interior of `E`. It is computed by brute-force lattice counting in the
//! parallelepiped spanned by `u` and `−v_j, j ∈ J_E`; the pairing formula
//! `max(|⟨u, d_E⟩|, 1)` is a faster route that the test suites check against
//! the count before it can be selected.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::delzant::validate_delzant;
use crate::lattice::{
    enumerate_primitive_directions, k_via_pairing, require_primitive, stabilizer_lattice_count,
    Parallelepiped,
};
use crate::ratgeom::{enumerate_edges, support_extrema, Edge, IntVector, Polytope, Rational};
use crate::render::ser_rational;
use crate::{Error, Result};

/// How `k^u_E` is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KMethod {
    /// Brute-force lattice count in `P^u_E` (ground truth).
    #[default]
    LatticeCount,
    /// `max(|⟨u, d_E⟩|, 1)` with `d_E` the primitive edge direction.
    Pairing,
}

#[derive(Clone, Debug)]
pub struct WidthOptions {
    /// Worker threads for the direction scan; 1 scans sequentially.
    pub threads: usize,
    pub k_method: KMethod,
    /// Run on input that fails (or was not given) Delzant validation.
    pub skip_validation: bool,
}

impl Default for WidthOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            k_method: KMethod::LatticeCount,
            skip_validation: false,
        }
    }
}

fn check_direction(p: &Polytope, u: &IntVector) -> Result<()> {
    if u.dim() != p.dimension() {
        return Err(Error::WrongLength {
            expected: p.dimension(),
            got: u.dim(),
        });
    }
    require_primitive(u)
}

/// `k^u_E` by lattice counting.
pub fn k_edge(p: &Polytope, edge: &Edge, u: &IntVector) -> Result<u64> {
    k_edge_with(p, edge, u, KMethod::LatticeCount)
}

pub fn k_edge_with(p: &Polytope, edge: &Edge, u: &IntVector, method: KMethod) -> Result<u64> {
    check_direction(p, u)?;
    match method {
        KMethod::LatticeCount => {
            let normals: Vec<&IntVector> = edge.facet_set.iter().map(|&j| &p.facets()[j].normal).collect();
            let k = stabilizer_lattice_count(&Parallelepiped::for_edge(u, &normals)?) + 1;
            #[cfg(debug_assertions)]
            if p.dimension() == 2 && normals.len() == 1 {
                let det = crate::lattice::k_via_det2(u, normals[0]).expect("primitive inputs");
                debug_assert_eq!(BigInt::from(k), det, "lattice count disagrees with |det(u,-v)|");
            }
            Ok(k)
        }
        KMethod::Pairing => k_via_pairing(u, &edge.direction)
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("k for {u} exceeds 64 bits"))),
    }
}

/// `m_u(Δ)`: the largest `k^u_E` over all edges.
pub fn m_u(p: &Polytope, u: &IntVector) -> Result<u64> {
    m_u_with(p, u, KMethod::LatticeCount)
}

pub fn m_u_with(p: &Polytope, u: &IntVector, method: KMethod) -> Result<u64> {
    check_direction(p, u)?;
    let mut best = 1;
    for e in enumerate_edges(p)? {
        best = best.max(k_edge_with(p, e, u, method)?);
    }
    Ok(best)
}

/// `T_u(Δ) = (max⟨x,u⟩ − min⟨x,u⟩) / m_u(Δ)`.
pub fn t_u(p: &Polytope, u: &IntVector) -> Result<Rational> {
    t_u_with(p, u, KMethod::LatticeCount)
}

pub fn t_u_with(p: &Polytope, u: &IntVector, method: KMethod) -> Result<Rational> {
    let m = m_u_with(p, u, method)?;
    let s = support_extrema(p, u)?;
    Ok(s.width() / Rational::from_integer(BigInt::from(m)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeK {
    pub endpoints: (usize, usize),
    pub facet_set: Vec<usize>,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionReport {
    pub u: IntVector,
    pub per_edge_k: Vec<EdgeK>,
    pub m_u: u64,
    #[serde(serialize_with = "ser_rational")]
    pub support_max: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub support_min: Rational,
    #[serde(rename = "T_u", serialize_with = "ser_rational")]
    pub t_u: Rational,
    pub stabilizer_note: String,
}

fn stabilizer_note(m: u64) -> String {
    if m == 1 {
        "m_u = 1: the circle generated by u acts freely away from its fixed points".into()
    } else {
        format!("m_u = {m}: the largest stabilizer of a point not fixed by the circle generated by u is Z/{m}")
    }
}

pub fn direction_report(p: &Polytope, u: &IntVector) -> Result<DirectionReport> {
    direction_report_with(p, u, KMethod::LatticeCount)
}

pub fn direction_report_with(p: &Polytope, u: &IntVector, method: KMethod) -> Result<DirectionReport> {
    check_direction(p, u)?;
    let per_edge_k = enumerate_edges(p)?
        .iter()
        .map(|e| {
            Ok(EdgeK {
                endpoints: e.endpoints,
                facet_set: e.facet_set.clone(),
                k: k_edge_with(p, e, u, method)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = per_edge_k.iter().map(|e| e.k).max().unwrap_or(1);
    let s = support_extrema(p, u)?;
    let t = s.width() / Rational::from_integer(BigInt::from(m));
    Ok(DirectionReport {
        u: u.sign_canonical(),
        per_edge_k,
        m_u: m,
        support_max: s.max,
        support_min: s.min,
        t_u: t,
        stabilizer_note: stabilizer_note(m),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub radius: u32,
    #[serde(rename = "best_T", serialize_with = "ser_rational")]
    pub best_t: Rational,
    pub best_directions: Vec<IntVector>,
    pub directions_scanned: usize,
    pub lower_bound_statement: String,
    pub validated: bool,
    pub k_method: KMethod,
}

/// Refuse non-Delzant input unless `skip` is set. Returns whether the input
/// was validated.
pub fn ensure_delzant(p: &Polytope, skip: bool) -> Result<bool> {
    if skip {
        // still need a well-formed simple polytope to count anything
        enumerate_edges(p)?;
        return Ok(false);
    }
    validate_delzant(p).into_result()?;
    Ok(true)
}

/// Scan all sign-canonical primitive `u` with `‖u‖_∞ ≤ radius` and return
/// the largest `T_u` with every maximizer.
///
/// The result is a lower bound for the toric width (the supremum may be
/// attained outside the box). The report is identical for any thread count.
pub fn toric_width_lb(p: &Polytope, radius: u32, opts: &WidthOptions) -> Result<WidthReport> {
    if radius == 0 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    let validated = ensure_delzant(p, opts.skip_validation)?;
    let directions = enumerate_primitive_directions(p.dimension(), radius);
    let eval = |u: &IntVector| t_u_with(p, u, opts.k_method);
    let values: Vec<Rational> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| directions.par_iter().map(eval).collect::<Result<Vec<_>>>())?
    } else {
        directions.iter().map(eval).collect::<Result<Vec<_>>>()?
    };

    let best_t = values.iter().max().cloned().unwrap_or_else(Rational::zero);
    let best_directions: Vec<IntVector> = directions
        .iter()
        .zip(&values)
        .filter(|(_, t)| **t == best_t)
        .map(|(u, _)| u.clone())
        .collect();
    let mut lower_bound_statement = format!(
        "c_HZ(M, ω) ≥ w_T(Δ) ≥ {best_t} (maximum of T_u over {} primitive directions with ‖u‖∞ ≤ {radius})",
        directions.len()
    );
    if !validated {
        lower_bound_statement.push_str(" [unvalidated: Delzant check skipped]");
    }
    Ok(WidthReport {
        radius,
        best_t,
        best_directions,
        directions_scanned: directions.len(),
        lower_bound_statement,
        validated,
        k_method: opts.k_method,
    })
}
