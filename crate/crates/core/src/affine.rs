//! The action of `AGL(n, Z) = GL(n, Z) ⋉ Qⁿ` on polytopes.
//!
//! `x ↦ M x + t` sends `⟨x, v⟩ ≤ λ` to `⟨y, M⁻ᵀ v⟩ ≤ λ + ⟨t, M⁻ᵀ v⟩`. Facet
//! order is preserved, so edges of the image correspond to edges of the
//! source through their facet sets.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ratgeom::{det_int, enumerate_edges, inverse_unimodular, HalfSpace, IntVector, Polytope, Rational};
use crate::width::{k_edge, t_u};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMap {
    matrix: Vec<Vec<BigInt>>,
    translation: Vec<Rational>,
}

impl UnimodularMap {
    pub fn new(matrix: Vec<Vec<BigInt>>, translation: Vec<Rational>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        if translation.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                got: translation.len(),
            });
        }
        let det = det_int(&matrix);
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(Self { matrix, translation })
    }

    /// Row-major integer entries, `n²` of them.
    pub fn from_row_major(entries: &[BigInt], translation: Vec<Rational>) -> Result<Self> {
        let n = translation.len();
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "{} matrix entries for a translation of length {n}; expected {}",
                entries.len(),
                n * n
            )));
        }
        Self::new(entries.chunks(n).map(<[BigInt]>::to_vec).collect(), translation)
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Self {
            matrix,
            translation: vec![Rational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    /// `y ↦ M⁻¹ (y − t)`.
    pub fn inverse(&self) -> Self {
        let inv = inverse_unimodular(&self.matrix).expect("unimodular by construction");
        let translation = (0..self.dim())
            .map(|i| {
                -inv[i]
                    .iter()
                    .zip(&self.translation)
                    .fold(Rational::zero(), |acc, (m, t)| acc + t * Rational::from_integer(m.clone()))
            })
            .collect();
        Self {
            matrix: inv,
            translation,
        }
    }

    pub fn apply_point(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .zip(&self.translation)
            .map(|(row, t)| {
                row.iter()
                    .zip(x)
                    .fold(t.clone(), |acc, (m, xi)| acc + xi * Rational::from_integer(m.clone()))
            })
            .collect()
    }

    /// `Mᵀ u`: the direction on the source matching `u` on the image.
    pub fn pull_back_direction(&self, u: &IntVector) -> IntVector {
        let n = self.dim();
        IntVector::new(
            (0..n)
                .map(|j| (0..n).map(|i| &self.matrix[i][j] * &u.entries()[i]).sum())
                .collect(),
        )
    }

    /// `M⁻ᵀ v`: the image of a facet normal.
    fn push_forward_normal(&self, inverse: &[Vec<BigInt>], v: &IntVector) -> IntVector {
        let n = self.dim();
        IntVector::new(
            (0..n)
                .map(|j| (0..n).map(|i| &inverse[i][j] * &v.entries()[i]).sum())
                .collect(),
        )
    }
}

/// Image of `p` under `f`, facets in the same order.
pub fn apply_affine(p: &Polytope, f: &UnimodularMap) -> Result<Polytope> {
    if f.dim() != p.dimension() {
        return Err(Error::WrongLength {
            expected: p.dimension(),
            got: f.dim(),
        });
    }
    let inverse = inverse_unimodular(&f.matrix).expect("unimodular by construction");
    let facets = p
        .facets()
        .iter()
        .map(|h| {
            let normal = f.push_forward_normal(&inverse, &h.normal);
            debug_assert!(normal.is_primitive(), "GL(n,Z) preserves primitivity");
            let offset = &h.offset + normal.dot_rational(&f.translation);
            HalfSpace::new(normal, offset)
        })
        .collect();
    Polytope::new(p.dimension(), facets, p.name().map(|n| format!("affine({n})")))
}

/// Deterministic product of `steps` elementary moves (row additions with
/// coefficient in `[−3, 3]`, row swaps with a sign flip) plus a small
/// rational translation. `steps = 0` gives the identity.
pub fn random_unimodular(n: usize, seed: u64, steps: usize) -> UnimodularMap {
    let mut map = UnimodularMap::identity(n);
    if steps == 0 || n == 0 {
        return map;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = &mut map.matrix;
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        if n == 1 {
            m[0][0] = -&m[0][0];
            continue;
        }
        let j = (i + rng.gen_range(1..n)) % n;
        if rng.gen_bool(0.75) {
            let c = BigInt::from(rng.gen_range(-3i64..=3));
            let add: Vec<BigInt> = m[j].iter().map(|e| &c * e).collect();
            for (x, d) in m[i].iter_mut().zip(add) {
                *x += d;
            }
        } else {
            m.swap(i, j);
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
    map.translation = (0..n)
        .map(|_| Rational::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(rng.gen_range(1i64..=4))))
        .collect();
    debug_assert!(det_int(&map.matrix).abs().is_one());
    map
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceCheck {
    pub k_match: bool,
    pub t_match: bool,
}

/// Compare `k^u_{E'}` on `f(P)` with `k^{Mᵀu}_E` on `P` for every edge, and
/// `T_u(f(P))` with `T_{Mᵀu}(P)`.
pub fn check_equivariance(p: &Polytope, f: &UnimodularMap, u: &IntVector) -> Result<EquivarianceCheck> {
    let image = apply_affine(p, f)?;
    let pulled = f.pull_back_direction(u);
    let mut k_match = true;
    let image_edges = enumerate_edges(&image)?;
    let source_edges = enumerate_edges(p)?;
    if image_edges.len() != source_edges.len() {
        k_match = false;
    }
    for e in source_edges {
        let Some(j) = image.edge_by_facets(&e.facet_set)? else {
            k_match = false;
            continue;
        };
        if k_edge(&image, &image_edges[j], u)? != k_edge(p, e, &pulled)? {
            k_match = false;
        }
    }
    let t_match = t_u(&image, u)? == t_u(p, &pulled)?;
    Ok(EquivarianceCheck { k_match, t_match })
}
