//! Fixture catalog: `cp2(c)`, `box(a_1, …, a_n)`, `hirzebruch(n, a, b)`,
//! plus vertex blow-ups and prisms for building further Delzant examples.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::delzant::validate_delzant;
use crate::ratgeom::{parse_rational, HalfSpace, IntVector, Polytope, Rational};
use crate::{Error, Result};

fn positive(name: &str, x: &Rational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("parameter {name} must be positive, got {x}")))
    }
}

fn zero() -> Rational {
    Rational::zero()
}

/// Triangle with vertices `(0,0), (c,0), (0,c)`.
pub fn cp2(c: Rational) -> Result<Polytope> {
    positive("c", &c)?;
    let name = format!("cp2(c={c})");
    Polytope::new(
        2,
        vec![
            HalfSpace::from_i64(&[0, -1], zero()),
            HalfSpace::from_i64(&[1, 1], c),
            HalfSpace::from_i64(&[-1, 0], zero()),
        ],
        Some(name),
    )
}

/// `[0, a_1] × … × [0, a_n]`; facets ordered `−e_1, e_1, −e_2, e_2, …`.
pub fn box_(sides: &[Rational]) -> Result<Polytope> {
    if sides.is_empty() {
        return Err(Error::InvalidArgument("box needs at least one side length".into()));
    }
    let n = sides.len();
    let mut facets = Vec::with_capacity(2 * n);
    for (i, a) in sides.iter().enumerate() {
        positive(&format!("a{}", i + 1), a)?;
        let e = IntVector::unit(n, i);
        facets.push(HalfSpace::new(e.neg(), zero()));
        facets.push(HalfSpace::new(e, a.clone()));
    }
    let listed: Vec<String> = sides.iter().map(ToString::to_string).collect();
    Polytope::new(n, facets, Some(format!("box({})", listed.join(","))))
}

/// Trapezoid with normals `(0,−1), (1,n), (0,1), (−1,0)` and offsets
/// `0, a+nb, b, 0`: vertices `(0,0), (a+nb,0), (a,b), (0,b)`.
pub fn hirzebruch(n: u32, a: Rational, b: Rational) -> Result<Polytope> {
    positive("a", &a)?;
    positive("b", &b)?;
    let slant = &a + &b * Rational::from_integer(BigInt::from(n));
    let name = format!("hirzebruch(n={n},a={a},b={b})");
    Polytope::new(
        2,
        vec![
            HalfSpace::from_i64(&[0, -1], zero()),
            HalfSpace::new(IntVector::from_i64(&[1, i64::from(n)]), slant),
            HalfSpace::from_i64(&[0, 1], b),
            HalfSpace::from_i64(&[-1, 0], zero()),
        ],
        Some(name),
    )
}

/// `P × [0, height]`, with the two new facets appended.
pub fn prism(p: &Polytope, height: Rational) -> Result<Polytope> {
    positive("height", &height)?;
    let n = p.dimension() + 1;
    let mut facets: Vec<HalfSpace> = p
        .facets()
        .iter()
        .map(|f| {
            let mut e = f.normal.entries().to_vec();
            e.push(BigInt::zero());
            HalfSpace::new(IntVector::new(e), f.offset.clone())
        })
        .collect();
    let top = IntVector::unit(n, n - 1);
    facets.push(HalfSpace::new(top.neg(), zero()));
    facets.push(HalfSpace::new(top, height.clone()));
    let name = format!("prism({},{height})", p.name().unwrap_or("polytope"));
    Polytope::new(n, facets, Some(name))
}

/// Cut off the corner at `vertex` of a Delzant polytope.
///
/// The new facet has normal `Σ v_i` over the facets at the vertex and offset
/// `Σ λ_i − ε`, where `ε = fraction · (shortest lattice length of an incident
/// edge)` and `0 < fraction < 1`. The result is again Delzant.
pub fn blow_up_vertex(p: &Polytope, vertex: usize, fraction: &Rational) -> Result<Polytope> {
    if !fraction.is_positive() || *fraction >= Rational::from_integer(BigInt::from(1)) {
        return Err(Error::InvalidArgument(format!("blow-up fraction {fraction} must lie in (0,1)")));
    }
    validate_delzant(p).into_result()?;
    let vertices = p.vertices()?;
    let v = vertices.get(vertex).ok_or(Error::NoSuchVertex(vertex))?;
    let edges = p.raw_edges()?;
    let mut shortest: Option<Rational> = None;
    for e in p.incident_edges(vertex)? {
        let edge = &edges[e];
        let other = if edge.endpoints.0 == vertex { edge.endpoints.1 } else { edge.endpoints.0 };
        // lattice length: the ratio of the difference to the primitive direction
        let (k, d) = edge
            .direction
            .entries()
            .iter()
            .enumerate()
            .find(|(_, d)| !d.is_zero())
            .expect("primitive direction is non-zero");
        let len = ((&vertices[other].coordinates[k] - &v.coordinates[k]) / Rational::from_integer(d.clone())).abs();
        shortest = Some(match shortest {
            Some(s) if s <= len => s,
            _ => len,
        });
    }
    let eps = shortest.expect("a vertex has incident edges") * fraction;
    let n = p.dimension();
    let mut normal = vec![BigInt::zero(); n];
    let mut offset = Rational::zero();
    for &j in &v.active_facets {
        let f = &p.facets()[j];
        for (acc, x) in normal.iter_mut().zip(f.normal.entries()) {
            *acc += x;
        }
        offset += &f.offset;
    }
    let mut facets = p.facets().to_vec();
    facets.push(HalfSpace::new(IntVector::new(normal), offset - eps));
    let name = format!("blowup({})", p.name().unwrap_or("polytope"));
    Polytope::new(n, facets, Some(name))
}

/// Parse `key=value,key=value` with exact rational values.
pub fn parse_params(text: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("parameter `{item}` is not key=value")))?;
        out.insert(k.trim().to_string(), parse_rational(v)?);
    }
    Ok(out)
}

fn take(params: &BTreeMap<String, Rational>, key: &str, default: Option<&str>) -> Result<Rational> {
    match (params.get(key), default) {
        (Some(v), _) => Ok(v.clone()),
        (None, Some(d)) => parse_rational(d),
        (None, None) => Err(Error::InvalidArgument(format!("missing parameter {key}"))),
    }
}

pub const FIXTURE_NAMES: [&str; 3] = ["cp2", "box", "hirzebruch"];

/// Build a named fixture. Parameters: `cp2: c`; `box: a1, a2, …` (or `a, b`
/// for a rectangle); `hirzebruch: n, a, b`. Missing values default to 1
/// (`n` defaults to 1 as well).
pub fn generate(name: &str, params: &BTreeMap<String, Rational>) -> Result<Polytope> {
    let known: &[&str] = match name {
        "cp2" => &["c"],
        "hirzebruch" => &["n", "a", "b"],
        "box" => &[],
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown fixture `{other}` (expected one of {})",
                FIXTURE_NAMES.join(", ")
            )))
        }
    };
    if !known.is_empty() {
        if let Some(k) = params.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::InvalidArgument(format!("fixture {name} has no parameter `{k}`")));
        }
    }
    match name {
        "cp2" => cp2(take(params, "c", Some("1"))?),
        "hirzebruch" => {
            let n = take(params, "n", Some("1"))?;
            if !n.is_integer() || n.is_negative() {
                return Err(Error::InvalidArgument(format!("hirzebruch n must be a non-negative integer, got {n}")));
            }
            let n: u32 = n
                .to_integer()
                .try_into()
                .map_err(|_| Error::InvalidArgument("hirzebruch n too large".into()))?;
            hirzebruch(n, take(params, "a", Some("1"))?, take(params, "b", Some("1"))?)
        }
        _ => {
            let sides = if params.keys().all(|k| k == "a" || k == "b") {
                vec![take(params, "a", Some("1"))?, take(params, "b", Some("1"))?]
            } else {
                let mut sides = Vec::new();
                for (k, v) in params {
                    let idx: usize = k
                        .strip_prefix('a')
                        .and_then(|s| s.parse().ok())
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| Error::InvalidArgument(format!("box parameter `{k}` should be a1, a2, …")))?;
                    sides.push((idx, v.clone()));
                }
                sides.sort_by_key(|(i, _)| *i);
                if sides.iter().enumerate().any(|(pos, (i, _))| *i != pos + 1) {
                    return Err(Error::InvalidArgument("box parameters must be a1..an without gaps".into()));
                }
                sides.into_iter().map(|(_, v)| v).collect()
            };
            box_(&sides)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn coords(p: &Polytope) -> Vec<Vec<Rational>> {
        p.vertices().unwrap().iter().map(|v| v.coordinates.clone()).collect()
    }

    #[test]
    fn catalog_is_delzant_for_tested_parameters() {
        let values = ["1/2", "1", "2", "7/3"];
        for c in values {
            assert!(validate_delzant(&cp2(q(c)).unwrap()).is_delzant);
            for b in values {
                assert!(validate_delzant(&box_(&[q(c), q(b)]).unwrap()).is_delzant);
                for n in 1..=5 {
                    assert!(validate_delzant(&hirzebruch(n, q(c), q(b)).unwrap()).is_delzant, "n={n} a={c} b={b}");
                }
            }
        }
        assert!(validate_delzant(&box_(&[q("1"), q("2"), q("3")]).unwrap()).is_delzant);
    }

    #[test]
    fn hirzebruch_vertices_match_trapezoid() {
        let h = hirzebruch(2, q("1"), q("1")).unwrap();
        let expect: Vec<Vec<Rational>> = [[0, 0], [0, 1], [1, 1], [3, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        assert_eq!(coords(&h), expect);
    }

    #[test]
    fn generate_from_params() {
        let p = generate("hirzebruch", &parse_params("n=3,a=1,b=1").unwrap()).unwrap();
        assert_eq!(p.name(), Some("hirzebruch(n=3,a=1,b=1)"));
        let b = generate("box", &parse_params("a1=1,a2=2,a3=3").unwrap()).unwrap();
        assert_eq!(b.dimension(), 3);
        let r = generate("box", &parse_params("a=1,b=2").unwrap()).unwrap();
        assert_eq!(r.dimension(), 2);
        assert!(generate("cp2", &parse_params("c=-1").unwrap()).is_err());
        assert!(generate("cp2", &parse_params("k=1").unwrap()).is_err());
        assert!(generate("sphere", &BTreeMap::new()).is_err());
        assert!(generate("box", &parse_params("a1=1,a3=2").unwrap()).is_err());
        assert!(generate("hirzebruch", &parse_params("n=1/2").unwrap()).is_err());
        assert!(parse_params("c").is_err());
    }

    #[test]
    fn blow_ups_stay_delzant() {
        let mut p = cp2(q("3")).unwrap();
        for (v, f) in [(0, "1/2"), (2, "1/3"), (1, "2/5")] {
            p = blow_up_vertex(&p, v, &q(f)).unwrap();
            assert!(validate_delzant(&p).is_delzant);
        }
        assert_eq!(p.facets().len(), 6);
        let cube = box_(&[q("1"), q("1"), q("1")]).unwrap();
        let cut = blow_up_vertex(&cube, 0, &q("1/2")).unwrap();
        assert!(validate_delzant(&cut).is_delzant);
        assert_eq!(cut.vertices().unwrap().len(), 10);
        assert!(blow_up_vertex(&cube, 0, &q("1")).is_err());
    }

    #[test]
    fn prisms_stay_delzant() {
        let p = prism(&hirzebruch(2, q("1"), q("1")).unwrap(), q("2")).unwrap();
        assert_eq!(p.dimension(), 3);
        assert!(validate_delzant(&p).is_delzant);
        assert_eq!(p.vertices().unwrap().len(), 8);
    }
}
