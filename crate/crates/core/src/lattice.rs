//! Primitive vectors, direction enumeration, lattice points of the
//! parallelepipeds `P^u_E`, and Pick's theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{NumAssign, One, Signed, ToPrimitive};
use serde::Serialize;

use crate::ratgeom::{adjugate_int, IntVector, Rational};
use crate::{Error, Result};

/// `v / gcd(v)` together with the gcd.
pub fn make_primitive(v: &IntVector) -> Result<(IntVector, BigInt)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.gcd();
    Ok((v.divided_by(&g), g))
}

pub fn require_primitive(v: &IntVector) -> Result<()> {
    if v.is_zero() {
        Err(Error::ZeroVector)
    } else if !v.is_primitive() {
        Err(Error::NotPrimitive(v.to_string()))
    } else {
        Ok(())
    }
}

/// All primitive `u ∈ Zⁿ` with `‖u‖_∞ ≤ radius`, one per `±` pair (first
/// non-zero entry positive), in lexicographic order.
pub fn enumerate_primitive_directions(n: usize, radius: u32) -> Vec<IntVector> {
    if n == 0 || radius == 0 {
        return Vec::new();
    }
    let r = i64::from(radius);
    let mut out = Vec::new();
    let mut cur = vec![-r; n];
    loop {
        let leading = cur.iter().find(|&&x| x != 0);
        if leading.is_some_and(|&x| x > 0) && cur.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1 {
            out.push(IntVector::from_i64(&cur));
        }
        // odometer, last coordinate fastest: lexicographic order
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < r {
                cur[k] += 1;
                break;
            }
            cur[k] = -r;
        }
    }
}

/// `{ Σ t_i g_i : 0 ≤ t_i ≤ 1 }` for `n` generators in `Zⁿ`.
///
/// For an edge `E` and direction `u` the generators are `u, −v_j (j ∈ J_E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parallelepiped {
    generators: Vec<IntVector>,
}

impl Parallelepiped {
    pub fn new(generators: Vec<IntVector>) -> Result<Self> {
        let n = generators.len();
        if let Some(g) = generators.iter().find(|g| g.dim() != n) {
            return Err(Error::WrongLength {
                expected: n,
                got: g.dim(),
            });
        }
        Ok(Self { generators })
    }

    /// `P^u_E`: generators `u` and `−v` for each normal `v` in `normals`.
    pub fn for_edge(u: &IntVector, normals: &[&IntVector]) -> Result<Self> {
        let mut gens = Vec::with_capacity(normals.len() + 1);
        gens.push(u.clone());
        gens.extend(normals.iter().map(|v| v.neg()));
        Self::new(gens)
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Column matrix `A = (g_1, …, g_n)`.
    fn matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.generators[j].entries()[i].clone()).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Faces {
    /// all `t_i ∈ (0,1)`
    Open,
    /// `t_1 ∈ (0,1)`, `t_i ∈ [0,1)` for the rest
    FirstOpenRestHalfOpen,
}

/// Integer points strictly inside the parallelepiped: bounding-box scan,
/// keeping `k` with `A⁻¹k ∈ (0,1)ⁿ`. Zero if the generators are dependent.
pub fn interior_lattice_count(pp: &Parallelepiped) -> u64 {
    count_points(pp, Faces::Open)
}

/// Integer points `A t` with `t_1 ∈ (0,1)` and the remaining `t_i ∈ [0,1)`.
///
/// When the trailing generators span a saturated sublattice (always the case
/// for `−v_j, j ∈ J_E` of a Delzant polytope) this is `|S¹_u ∩ T_E| − 1`,
/// the number of non-trivial elements of the circle `R u / Z u` lying in the
/// subtorus spanned by the trailing generators. In dimension two it equals
/// [`interior_lattice_count`]; in higher dimensions the open count misses
/// points on faces with some `t_i = 0`. Zero if the generators are dependent.
pub fn stabilizer_lattice_count(pp: &Parallelepiped) -> u64 {
    count_points(pp, Faces::FirstOpenRestHalfOpen)
}

fn count_points(pp: &Parallelepiped, faces: Faces) -> u64 {
    count_points_with(pp, faces, false)
}

fn count_points_with(pp: &Parallelepiped, faces: Faces, force_big: bool) -> u64 {
    let n = pp.dim();
    if n == 0 {
        return 0;
    }
    let a = pp.matrix();
    let (det, adj) = adjugate_int(&a);
    let Some(mut adj) = adj else {
        return 0;
    };
    // fold the sign into adj so that t = adj·x / |det|
    if det.is_negative() {
        for row in adj.iter_mut() {
            for e in row.iter_mut() {
                *e = -&*e;
            }
        }
    }
    let d = det.abs();
    let lo: Vec<BigInt> = a
        .iter()
        .map(|row| row.iter().filter(|e| e.is_negative()).sum())
        .collect();
    let hi: Vec<BigInt> = a
        .iter()
        .map(|row| row.iter().filter(|e| e.is_positive()).sum())
        .collect();

    let reach: Vec<BigInt> = lo.iter().zip(&hi).map(|(l, h)| l.abs().max(h.abs())).collect();
    let bound = adj
        .iter()
        .map(|row| row.iter().zip(&reach).map(|(e, r)| e.abs() * r).sum::<BigInt>())
        .max()
        .unwrap_or_default()
        + &d;
    if !force_big && bound < BigInt::one() << 120 {
        let cast = |v: &BigInt| v.to_i128().expect("bounded by 2^120");
        scan(
            adj.iter().map(|r| r.iter().map(cast).collect()).collect(),
            cast(&d),
            lo.iter().map(cast).collect(),
            hi.iter().map(cast).collect(),
            faces,
        )
    } else {
        scan(adj, d, lo, hi, faces)
    }
}

fn scan<T>(adj: Vec<Vec<T>>, d: T, lo: Vec<T>, hi: Vec<T>, faces: Faces) -> u64
where
    T: Integer + Signed + NumAssign + Clone + ToPrimitive,
{
    let n = lo.len();
    // Odometer over x_1..x_{n-1} with y = adj·x (x_0 = 0) kept incrementally;
    // the admissible x_0 form an interval, counted directly.
    let cols: Vec<Vec<T>> = (0..n).map(|k| adj.iter().map(|row| row[k].clone()).collect()).collect();
    let mut y: Vec<T> = adj
        .iter()
        .map(|row| {
            row.iter()
                .zip(&lo)
                .skip(1)
                .fold(T::zero(), |acc, (e, l)| acc + e.clone() * l.clone())
        })
        .collect();
    let mut x = lo.clone();
    let mut count = 0u64;
    let ceil_div = |a: T, b: T| -(-a).div_floor(&b);
    loop {
        // need lower_i ≤ y_i + c_i x_0 ≤ d − 1 for every i
        let mut from = lo[0].clone();
        let mut to = hi[0].clone();
        for (i, (yi, c)) in y.iter().zip(&cols[0]).enumerate() {
            let lower = if i == 0 || faces == Faces::Open { T::one() } else { T::zero() };
            let upper = d.clone() - T::one();
            let (l, u) = (lower - yi.clone(), upper - yi.clone());
            if c.is_zero() {
                if l > T::zero() || u < T::zero() {
                    to = from.clone() - T::one();
                    break;
                }
            } else if *c > T::zero() {
                from = from.max(ceil_div(l, c.clone()));
                to = to.min(u.div_floor(c));
            } else {
                from = from.max(ceil_div(u, c.clone()));
                to = to.min(l.div_floor(c));
            }
        }
        if to >= from {
            count += (to - from + T::one()).to_u64().expect("count fits in u64");
        }
        let mut k = 1;
        loop {
            if k >= n {
                return count;
            }
            if x[k] < hi[k] {
                x[k] += T::one();
                for (yi, c) in y.iter_mut().zip(&cols[k]) {
                    *yi += c.clone();
                }
                break;
            }
            let span = hi[k].clone() - lo[k].clone();
            for (yi, c) in y.iter_mut().zip(&cols[k]) {
                *yi -= c.clone() * span.clone();
            }
            x[k] = lo[k].clone();
            k += 1;
        }
    }
}

/// `|det(u, −v)|` for primitive `u, v ∈ Z²`, or 1 when `u = ±v`.
pub fn k_via_det2(u: &IntVector, v: &IntVector) -> Result<BigInt> {
    for w in [u, v] {
        if w.dim() != 2 {
            return Err(Error::WrongLength {
                expected: 2,
                got: w.dim(),
            });
        }
        require_primitive(w)?;
    }
    let (u, v) = (u.entries(), v.entries());
    let det = (&u[0] * &v[1] - &u[1] * &v[0]).abs();
    Ok(det.max(BigInt::one()))
}

/// `max(|⟨u, d⟩|, 1)` for the primitive direction `d` of an edge.
pub fn k_via_pairing(u: &IntVector, edge_direction: &IntVector) -> BigInt {
    u.dot(edge_direction).abs().max(BigInt::one())
}

/// Convex lattice polygon, vertices counterclockwise, no three collinear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<(i64, i64)>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ax, ay) = (i128::from(a.0 - o.0), i128::from(a.1 - o.1));
    let (bx, by) = (i128::from(b.0 - o.0), i128::from(b.1 - o.1));
    ax * by - ay * bx
}

impl LatticePolygon {
    /// Accepts either orientation; clockwise input is reversed.
    pub fn new(mut vertices: Vec<(i64, i64)>) -> Result<Self> {
        let m = vertices.len();
        if m < 3 {
            return Err(Error::InvalidPolygon(format!("{m} vertices; need at least 3")));
        }
        let twice_area: i128 = (0..m)
            .map(|i| cross((0, 0), vertices[i], vertices[(i + 1) % m]))
            .sum();
        if twice_area == 0 {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if twice_area < 0 {
            vertices.reverse();
        }
        for i in 0..m {
            let (a, b) = (vertices[i], vertices[(i + 1) % m]);
            for (j, &p) in vertices.iter().enumerate() {
                if j != i && j != (i + 1) % m && cross(a, b, p) <= 0 {
                    return Err(Error::InvalidPolygon(format!(
                        "vertex ({},{}) is not strictly inside the half-plane of edge ({},{})-({},{})",
                        p.0, p.1, a.0, a.1, b.0, b.1
                    )));
                }
            }
        }
        Ok(Self { vertices })
    }

    /// Convex hull of a point cloud (collinear boundary points dropped).
    pub fn convex_hull(points: &[(i64, i64)]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than three distinct points".into()));
        }
        let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                    hull.pop();
                }
                hull.push(p);
            }
            hull.pop();
        }
        Self::new(hull)
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PickReport {
    #[serde(serialize_with = "crate::render::ser_rational")]
    pub area: Rational,
    pub interior: u64,
    pub boundary: u64,
    pub identity_holds: bool,
}

/// Area (shoelace), boundary points (Σ gcd over edges) and interior points
/// (brute force), and whether `A = i + b/2 − 1`.
pub fn pick_check(poly: &LatticePolygon) -> PickReport {
    let v = &poly.vertices;
    let m = v.len();
    let twice_area: i128 = (0..m).map(|i| cross((0, 0), v[i], v[(i + 1) % m])).sum();
    let area = Rational::new(BigInt::from(twice_area), BigInt::from(2));
    let boundary: u64 = (0..m)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % m]);
            (b.0 - a.0).unsigned_abs().gcd(&(b.1 - a.1).unsigned_abs())
        })
        .sum();
    let (xmin, xmax) = v.iter().fold((i64::MAX, i64::MIN), |(l, h), p| (l.min(p.0), h.max(p.0)));
    let (ymin, ymax) = v.iter().fold((i64::MAX, i64::MIN), |(l, h), p| (l.min(p.1), h.max(p.1)));
    let mut interior = 0u64;
    for x in xmin..=xmax {
        for y in ymin..=ymax {
            if (0..m).all(|i| cross(v[i], v[(i + 1) % m], (x, y)) > 0) {
                interior += 1;
            }
        }
    }
    let rhs = Rational::from_integer(BigInt::from(interior))
        + Rational::new(BigInt::from(boundary), BigInt::from(2))
        - Rational::one();
    PickReport {
        identity_holds: area == rhs,
        area,
        interior,
        boundary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(e: &[i64]) -> IntVector {
        IntVector::from_i64(e)
    }

    fn pp(gens: &[&[i64]]) -> Parallelepiped {
        Parallelepiped::new(gens.iter().map(|g| iv(g)).collect()).unwrap()
    }

    /// Independent oracle: scan t over a fine grid of rationals j/|det| and
    /// keep those mapping to integer points.
    fn grid_oracle(gens: &[&[i64]], half_open: bool) -> u64 {
        let n = gens.len();
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(gens[j][i])).collect())
            .collect();
        let det = crate::ratgeom::det_int(&m).abs().to_i64().unwrap();
        if det == 0 {
            return 0;
        }
        // t = A⁻¹ x with x integer has denominator dividing det
        let mut count = 0;
        let mut idx = vec![0i64; n];
        loop {
            let ok_range = idx.iter().enumerate().all(|(i, &j)| {
                let lower = if i == 0 || !half_open { 1 } else { 0 };
                j >= lower && j < det
            });
            if ok_range {
                let integral = (0..n).all(|r| {
                    let s: i64 = (0..n).map(|c| gens[c][r] * idx[c]).sum();
                    s % det == 0
                });
                if integral {
                    count += 1;
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                if idx[k] + 1 < det {
                    idx[k] += 1;
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn make_primitive_examples() {
        assert_eq!(make_primitive(&iv(&[2, 4])).unwrap(), (iv(&[1, 2]), BigInt::from(2)));
        assert_eq!(make_primitive(&iv(&[3, -5])).unwrap(), (iv(&[3, -5]), BigInt::one()));
        assert_eq!(make_primitive(&iv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn direction_enumeration_examples() {
        let d1 = enumerate_primitive_directions(2, 1);
        assert_eq!(d1, vec![iv(&[0, 1]), iv(&[1, -1]), iv(&[1, 0]), iv(&[1, 1])]);
        let d2 = enumerate_primitive_directions(2, 2);
        assert_eq!(
            d2,
            vec![
                iv(&[0, 1]),
                iv(&[1, -2]),
                iv(&[1, -1]),
                iv(&[1, 0]),
                iv(&[1, 1]),
                iv(&[1, 2]),
                iv(&[2, -1]),
                iv(&[2, 1]),
            ]
        );
        assert_eq!(enumerate_primitive_directions(1, 3), vec![iv(&[1])]);
        assert!(enumerate_primitive_directions(2, 0).is_empty());
    }

    #[test]
    fn direction_enumeration_matches_brute_force() {
        for (n, r) in [(2usize, 5i64), (3, 3)] {
            let mut brute = Vec::new();
            for code in 0..(2 * r + 1).pow(n as u32) {
                let mut c = code;
                let v: Vec<i64> = (0..n)
                    .map(|_| {
                        let e = c % (2 * r + 1) - r;
                        c /= 2 * r + 1;
                        e
                    })
                    .rev()
                    .collect();
                let w = iv(&v);
                if w.is_primitive() && w.is_sign_canonical() {
                    brute.push(w);
                }
            }
            brute.sort();
            assert_eq!(enumerate_primitive_directions(n, r as u32), brute);
        }
    }

    #[test]
    fn interior_count_examples() {
        assert_eq!(interior_lattice_count(&pp(&[&[1, -1], &[-1, -1]])), 1);
        assert_eq!(interior_lattice_count(&pp(&[&[1, 0], &[-1, -1]])), 0);
        assert_eq!(interior_lattice_count(&pp(&[&[1, 0], &[2, 0]])), 0);
    }

    #[test]
    fn open_and_half_open_counts_differ_in_three_dimensions() {
        // cube edge along e1 with J_E normals −e2, −e3 and u = (2,1,0):
        // the circle element t = 1/2 lies on the face t_3 = 0
        let cube_edge = pp(&[&[2, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(interior_lattice_count(&cube_edge), 0);
        assert_eq!(stabilizer_lattice_count(&cube_edge), 1);
        let steep = pp(&[&[3, 3, 1], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(interior_lattice_count(&steep), 0);
        assert_eq!(stabilizer_lattice_count(&steep), 2);
    }

    #[test]
    fn counts_match_grid_oracle() {
        let cases: &[&[&[i64]]] = &[
            &[&[1, -1], &[-1, -1]],
            &[&[3, 5], &[-1, 0]],
            &[&[2, 7], &[1, -3]],
            &[&[2, 1, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[3, 3, 1], &[0, -1, 0], &[0, 0, -1]],
            &[&[2, 3, 5], &[1, 1, 0], &[0, 1, 2]],
            &[&[4, 2, 1], &[-1, 0, 0], &[0, 2, 1]],
        ];
        for gens in cases {
            let p = pp(gens);
            assert_eq!(interior_lattice_count(&p), grid_oracle(gens, false), "{gens:?}");
            assert_eq!(stabilizer_lattice_count(&p), grid_oracle(gens, true), "{gens:?}");
        }
    }

    #[test]
    fn big_integer_path_agrees() {
        for gens in [
            &[&[1, 0][..], &[-3, 2]][..],
            &[&[2, 1, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[3, 3, 1], &[0, -1, 0], &[1, 0, -2]],
        ] {
            let p = pp(gens);
            for faces in [Faces::Open, Faces::FirstOpenRestHalfOpen] {
                assert_eq!(count_points_with(&p, faces, true), count_points(&p, faces));
            }
        }
    }

    #[test]
    fn det2_examples() {
        assert_eq!(k_via_det2(&iv(&[1, 0]), &iv(&[1, 3])).unwrap(), BigInt::from(3));
        assert_eq!(k_via_det2(&iv(&[1, -1]), &iv(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(k_via_det2(&iv(&[1, 0]), &iv(&[1, 0])).unwrap(), BigInt::one());
        assert_eq!(k_via_det2(&iv(&[1, 0]), &iv(&[-1, 0])).unwrap(), BigInt::one());
        assert!(matches!(k_via_det2(&iv(&[2, 0]), &iv(&[1, 0])), Err(Error::NotPrimitive(_))));
        assert!(k_via_det2(&iv(&[1, 0, 0]), &iv(&[1, 0])).is_err());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(k_via_pairing(&iv(&[1, 0]), &iv(&[-3, 1])), BigInt::from(3));
        assert_eq!(
            k_via_pairing(&iv(&[1, 1]), &iv(&[0, 1])),
            BigInt::from(stabilizer_lattice_count(&pp(&[&[1, 1], &[-1, 0]])) + 1)
        );
        assert_eq!(k_via_pairing(&iv(&[1, 2]), &iv(&[2, -1])), BigInt::one());
    }

    #[test]
    fn pick_examples() {
        let sq = LatticePolygon::new(vec![(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let r = pick_check(&sq);
        assert_eq!((r.area.clone(), r.interior, r.boundary, r.identity_holds), (Rational::one(), 0, 4, true));

        let t4 = LatticePolygon::new(vec![(0, 0), (4, 0), (0, 4)]).unwrap();
        let r = pick_check(&t4);
        assert_eq!(r.area, Rational::from_integer(8.into()));
        assert_eq!((r.interior, r.boundary, r.identity_holds), (3, 12, true));

        // clockwise input is accepted
        let t2 = LatticePolygon::new(vec![(0, 0), (0, 2), (2, 0)]).unwrap();
        let r = pick_check(&t2);
        assert_eq!(r.area, Rational::from_integer(2.into()));
        assert_eq!((r.interior, r.boundary, r.identity_holds), (0, 6, true));
    }

    #[test]
    fn polygon_validation() {
        assert!(LatticePolygon::new(vec![(0, 0), (1, 0)]).is_err());
        assert!(LatticePolygon::new(vec![(0, 0), (1, 1), (2, 2)]).is_err());
        // collinear middle vertex
        assert!(LatticePolygon::new(vec![(0, 0), (1, 0), (2, 0), (0, 2)]).is_err());
        // reflex vertex
        assert!(LatticePolygon::new(vec![(0, 0), (4, 0), (1, 1), (0, 4)]).is_err());
        // pentagram: every turn has the same sign but it winds twice
        assert!(LatticePolygon::new(vec![(0, 10), (6, -8), (-10, 3), (10, 3), (-6, -8)]).is_err());
        let hull = LatticePolygon::convex_hull(&[(0, 0), (2, 0), (1, 0), (1, 1), (2, 2), (0, 2)]).unwrap();
        assert_eq!(hull.vertices(), &[(0, 0), (2, 0), (2, 2), (0, 2)]);
    }

    proptest! {
        #[test]
        fn counts_match_grid_oracle_on_random_generators(
            flat in proptest::collection::vec(-4i64..=4, 9),
            three in any::<bool>(),
        ) {
            let n = if three { 3 } else { 2 };
            let gens: Vec<&[i64]> = flat.chunks(3).take(n).map(|c| &c[..n]).collect();
            let p = pp(&gens);
            prop_assert_eq!(interior_lattice_count(&p), grid_oracle(&gens, false));
            prop_assert_eq!(stabilizer_lattice_count(&p), grid_oracle(&gens, true));
        }

        #[test]
        fn pick_holds_on_random_hulls(pts in proptest::collection::vec((-20i64..=20, -20i64..=20), 3..25)) {
            if let Ok(poly) = LatticePolygon::convex_hull(&pts) {
                prop_assert!(pick_check(&poly).identity_holds);
            }
        }

        #[test]
        fn interior_count_invariant_under_negation_and_permutation(
            g in proptest::collection::vec(-4i64..=4, 9),
            flip in 0usize..3,
            perm in 0usize..6,
        ) {
            let gens: Vec<IntVector> = g.chunks(3).map(iv).collect();
            let base = interior_lattice_count(&Parallelepiped::new(gens.clone()).unwrap());
            let mut flipped = gens.clone();
            flipped[flip] = flipped[flip].neg();
            prop_assert_eq!(interior_lattice_count(&Parallelepiped::new(flipped).unwrap()), base);
            let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let permuted: Vec<IntVector> = orders[perm].iter().map(|&i| gens[i].clone()).collect();
            prop_assert_eq!(interior_lattice_count(&Parallelepiped::new(permuted).unwrap()), base);
        }

        #[test]
        fn stabilizer_count_invariant_under_trailing_permutation(g in proptest::collection::vec(-4i64..=4, 9)) {
            let gens: Vec<IntVector> = g.chunks(3).map(iv).collect();
            let swapped = vec![gens[0].clone(), gens[2].clone(), gens[1].clone()];
            prop_assert_eq!(
                stabilizer_lattice_count(&Parallelepiped::new(gens).unwrap()),
                stabilizer_lattice_count(&Parallelepiped::new(swapped).unwrap())
            );
        }

        #[test]
        fn two_dimensional_counts_agree(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6, d in -6i64..=6) {
            let p = Parallelepiped::new(vec![iv(&[a, b]), iv(&[c, d])]).unwrap();
            let (u, v) = (iv(&[a, b]), iv(&[-c, -d]));
            if u.is_primitive() {
                prop_assert_eq!(interior_lattice_count(&p), stabilizer_lattice_count(&p));
            }
            if u.is_primitive() && v.is_primitive() {
                prop_assert_eq!(
                    BigInt::from(interior_lattice_count(&p) + 1),
                    k_via_det2(&u, &v).unwrap()
                );
            }
        }

        #[test]
        fn directions_nested_and_canonical(n in 1usize..=3, r in 1u32..=3) {
            let small = enumerate_primitive_directions(n, r);
            let large = enumerate_primitive_directions(n, r + 1);
            for u in &small {
                prop_assert!(u.is_primitive() && u.is_sign_canonical());
                prop_assert!(large.binary_search(u).is_ok());
            }
        }
    }
}
