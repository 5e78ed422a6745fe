//! Text, JSON, Markdown and SVG output for reports and polytopes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serializer};

use crate::delzant::ValidationReport;
use crate::lattice::{enumerate_primitive_directions, PickReport};
use crate::ratgeom::{parse_rational, IntVector, Polytope, Rational};
use crate::width::{direction_report_with, DirectionReport, KMethod, WidthReport};
use crate::{Error, Result};

/// Serialize a rational as its exact `p/q` (or `p`) string.
pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn point(coords: &[Rational]) -> String {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize infallibly")
}

pub fn validation_text(r: &ValidationReport) -> String {
    if r.is_delzant {
        return "Delzant: yes\n".into();
    }
    let mut out = format!("Delzant: no ({} violation(s))\n", r.violations.len());
    for v in &r.violations {
        let kind = format!("{:?}", v.kind).to_lowercase();
        let _ = writeln!(out, "  {kind} at {}: {}", v.location, v.detail);
    }
    out
}

pub fn direction_text(r: &DirectionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "u = {}", r.u);
    for e in &r.per_edge_k {
        let facets: Vec<String> = e.facet_set.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "  edge {}-{} (facets {{{}}}): k = {}",
            e.endpoints.0,
            e.endpoints.1,
            facets.join(","),
            e.k
        );
    }
    let _ = writeln!(out, "m_u = {}", r.m_u);
    let _ = writeln!(out, "support: min {} max {}", r.support_min, r.support_max);
    let _ = writeln!(out, "T_u = {}", r.t_u);
    let _ = writeln!(out, "{}", r.stabilizer_note);
    out
}

pub fn width_text(r: &WidthReport) -> String {
    let dirs: Vec<String> = r.best_directions.iter().map(ToString::to_string).collect();
    let mut out = String::new();
    let _ = writeln!(out, "best_T = {}", r.best_t);
    let _ = writeln!(out, "best directions: {}", dirs.join(" "));
    let _ = writeln!(out, "directions scanned: {} (radius {})", r.directions_scanned, r.radius);
    let _ = writeln!(out, "{}", r.lower_bound_statement);
    out
}

pub fn pick_text(r: &PickReport) -> String {
    format!(
        "A = {}, i = {}, b = {}, i + b/2 - 1 = {}: {}\n",
        r.area,
        r.interior,
        r.boundary,
        Rational::from_integer(BigInt::from(r.interior))
            + Rational::new(BigInt::from(r.boundary), BigInt::from(2))
            - Rational::from_integer(BigInt::from(1)),
        if r.identity_holds { "holds" } else { "FAILS" }
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct WidthReportShape {
    radius: u32,
    #[serde(rename = "best_T")]
    best_t: String,
    best_directions: Vec<Vec<serde_json::Value>>,
    directions_scanned: usize,
    lower_bound_statement: String,
    validated: bool,
    k_method: String,
}

fn json_integer(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Schema check for `width --json` output.
pub fn validate_width_json(text: &str) -> Result<()> {
    let bad = |m: String| Error::Malformed(format!("width report: {m}"));
    let shape: WidthReportShape = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    parse_rational(&shape.best_t).map_err(|e| bad(format!("best_T: {e}")))?;
    if shape.radius == 0 {
        return Err(bad("radius must be positive".into()));
    }
    if !matches!(shape.k_method.as_str(), "lattice-count" | "pairing") {
        return Err(bad(format!("unknown k_method {:?}", shape.k_method)));
    }
    if shape.best_directions.is_empty() || shape.best_directions.len() > shape.directions_scanned {
        return Err(bad("best_directions must be a non-empty subset of the scan".into()));
    }
    let dim = shape.best_directions[0].len();
    for d in &shape.best_directions {
        let entries: Option<Vec<BigInt>> = d.iter().map(json_integer).collect();
        let u = IntVector::new(entries.ok_or_else(|| bad("direction entries must be integers".into()))?);
        if u.dim() != dim || !u.is_primitive() || !u.is_sign_canonical() {
            return Err(bad(format!("direction {u} is not a canonical primitive vector of length {dim}")));
        }
    }
    Ok(())
}

/// `p/q` regions of the per-direction table for the `n`-th Hirzebruch
/// trapezoid, in display order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HirzebruchRegion {
    Vertical,
    Horizontal,
    Negative,
    UpToOneOverN,
    UpToTwoOverN,
    BeyondTwoOverN,
}

impl HirzebruchRegion {
    pub fn classify(n: u32, u: &IntVector) -> Self {
        let (p, q) = (&u.entries()[0], &u.entries()[1]);
        if p.is_zero() {
            return Self::Vertical;
        }
        if q.is_zero() {
            return Self::Horizontal;
        }
        if p.is_negative() != q.is_negative() {
            return Self::Negative;
        }
        // 0 < p/q: compare n|p| with |q| and 2|q|
        let np = p.abs() * BigInt::from(n);
        let q = q.abs();
        if np <= q {
            Self::UpToOneOverN
        } else if np <= &q * 2 {
            Self::UpToTwoOverN
        } else {
            Self::BeyondTwoOverN
        }
    }

    pub fn label(self, n: u32) -> String {
        match self {
            Self::Vertical => "(0,±1)".into(),
            Self::Horizontal => "(±1,0)".into(),
            Self::Negative => "p/q < 0".into(),
            Self::UpToOneOverN => format!("0 < p/q ≤ 1/{n}"),
            Self::UpToTwoOverN => format!("1/{n} < p/q ≤ {}", Rational::new(2.into(), n.into())),
            Self::BeyondTwoOverN => format!("p/q > {}", Rational::new(2.into(), n.into())),
        }
    }
}

/// `n` if the facet normals are `(0,−1), (1,n), (0,1), (−1,0)` in that order.
pub fn detect_hirzebruch(p: &Polytope) -> Option<u32> {
    let f = p.facets();
    if p.dimension() != 2 || f.len() != 4 {
        return None;
    }
    let n = f[1].normal.entries()[1].to_u32()?;
    let expect = [[0, -1], [1, i64::from(n)], [0, 1], [-1, 0]];
    let ok = f
        .iter()
        .zip(expect)
        .all(|(h, e)| h.normal == IntVector::from_i64(&e));
    (ok && n >= 1).then_some(n)
}

/// Markdown table of `u | m_u | T_u` over all canonical primitive `u` with
/// `‖u‖∞ ≤ radius`; grouped by `p/q` region for Hirzebruch trapezoids.
pub fn markdown_table(p: &Polytope, radius: u32, method: KMethod) -> Result<String> {
    let mut rows = Vec::new();
    for u in enumerate_primitive_directions(p.dimension(), radius) {
        let r = direction_report_with(p, &u, method)?;
        rows.push((u, r.m_u, r.t_u));
    }
    let header = "| u | m_u | T_u |\n|---|---|---|\n";
    let row = |(u, m, t): &(IntVector, u64, Rational)| format!("| {u} | {m} | {t} |\n");
    let mut out = String::new();
    if let Some(title) = p.name() {
        let _ = writeln!(out, "## {title}\n");
    }
    match detect_hirzebruch(p) {
        Some(n) => {
            let mut groups: std::collections::BTreeMap<HirzebruchRegion, Vec<_>> = Default::default();
            for r in rows {
                groups.entry(HirzebruchRegion::classify(n, &r.0)).or_default().push(r);
            }
            for (region, rs) in groups {
                let _ = writeln!(out, "### {}\n", region.label(n));
                out.push_str(header);
                rs.iter().for_each(|r| out.push_str(&row(r)));
                out.push('\n');
            }
        }
        None => {
            out.push_str(header);
            rows.iter().for_each(|r| out.push_str(&row(r)));
        }
    }
    Ok(out)
}

/// Vertex indices of a polygon in counter-clockwise order, starting at the
/// lexicographically smallest vertex.
fn polygon_cycle(p: &Polytope) -> Result<Vec<usize>> {
    let verts = p.vertices()?;
    let edges = p.raw_edges()?;
    let m = verts.len();
    let mut nbrs = vec![Vec::new(); m];
    for e in edges {
        nbrs[e.endpoints.0].push(e.endpoints.1);
        nbrs[e.endpoints.1].push(e.endpoints.0);
    }
    if nbrs.iter().any(|n| n.len() != 2) {
        return Err(Error::Malformed("polygon boundary is not a cycle".into()));
    }
    let c = |i: usize, k: usize| verts[i].coordinates[k].clone();
    // from vertex 0 (lexicographic minimum) the counter-clockwise successor
    // is the neighbour with the smaller slope
    let (a, b) = (nbrs[0][0], nbrs[0][1]);
    let cross = (c(a, 0) - c(0, 0)) * (c(b, 1) - c(0, 1)) - (c(a, 1) - c(0, 1)) * (c(b, 0) - c(0, 0));
    let mut order = vec![0, if cross.is_positive() { a } else { b }];
    while order.len() < m {
        let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
        let next = if nbrs[cur][0] == prev { nbrs[cur][1] } else { nbrs[cur][0] };
        order.push(next);
    }
    Ok(order)
}

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Static SVG of a polygon with exact vertex labels and arrows for the given
/// directions drawn from the vertex centroid. Output depends only on the
/// input.
pub fn render_svg(p: &Polytope, directions: &[IntVector]) -> Result<String> {
    if p.dimension() != 2 {
        return Err(Error::InvalidArgument(format!(
            "SVG output needs a polygon, got dimension {}",
            p.dimension()
        )));
    }
    const SIZE: f64 = 480.0;
    const MARGIN: f64 = 70.0;
    let verts = p.vertices()?;
    let order = polygon_cycle(p)?;
    let xs: Vec<f64> = verts.iter().map(|v| f(&v.coordinates[0])).collect();
    let ys: Vec<f64> = verts.iter().map(|v| f(&v.coordinates[1])).collect();
    let (x0, x1) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let (y0, y1) = ys.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &y| (l.min(y), h.max(y)));
    let scale = (SIZE - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0);
    let px = |x: f64| MARGIN + (x - x0) * scale;
    let py = |y: f64| SIZE - MARGIN - (y - y0) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"  <defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="crimson"/></marker></defs>"#
    );
    if let Some(name) = p.name() {
        let _ = writeln!(out, r#"  <title>{}</title>"#, xml_escape(name));
    }
    let pts: Vec<String> = order.iter().map(|&i| format!("{:.2},{:.2}", px(xs[i]), py(ys[i]))).collect();
    let _ = writeln!(
        out,
        r#"  <polygon points="{}" fill="lightgray" stroke="black" stroke-width="2"/>"#,
        pts.join(" ")
    );
    let (cx, cy) = (
        xs.iter().sum::<f64>() / xs.len() as f64,
        ys.iter().sum::<f64>() / ys.len() as f64,
    );
    for &i in &order {
        let (x, y) = (px(xs[i]), py(ys[i]));
        // push labels away from the centroid
        let (dx, dy) = (x - px(cx), y - py(cy));
        let len = dx.hypot(dy).max(1e-9);
        let (lx, ly) = (x + 18.0 * dx / len, y + 18.0 * dy / len + 4.0);
        let _ = writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"  <text x="{lx:.2}" y="{ly:.2}" font-family="monospace" font-size="12" text-anchor="middle">{}</text>"#,
            point(&verts[i].coordinates)
        );
    }
    let arrow = 0.3 * (SIZE - 2.0 * MARGIN);
    for u in directions {
        if u.dim() != 2 {
            return Err(Error::WrongLength { expected: 2, got: u.dim() });
        }
        let (ux, uy) = (
            u.entries()[0].to_f64().unwrap_or(0.0),
            u.entries()[1].to_f64().unwrap_or(0.0),
        );
        let len = ux.hypot(uy).max(1e-9);
        let (sx, sy) = (px(cx), py(cy));
        let _ = writeln!(
            out,
            r#"  <line x1="{sx:.2}" y1="{sy:.2}" x2="{:.2}" y2="{:.2}" stroke="crimson" stroke-width="2" marker-end="url(#head)"><title>u = {u}</title></line>"#,
            sx + arrow * ux / len,
            sy - arrow * uy / len
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
