//! Exact rational cones and Newton polyhedra: dual cones by double
//! description, strong convexity, conic-hull membership, and vertex
//! detection for point sets with a recession cone.
//!
//! Everything here is decided over the rationals; no floating point.

mod lp;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{Int, LatticeVector, Rational};

/// A polyhedral cone in `Q^dim` given by generating rays with integer
/// coordinates (any rational cone can be scaled to this form). Rays are kept
/// primitive, sorted, and deduplicated. Facet inequalities are not stored;
/// they are recovered on demand via [`RationalCone::facet_normals`].
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCone {
    dim: usize,
    rays: Vec<LatticeVector>,
}

impl std::fmt::Debug for RationalCone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cone(dim={}, rays={:?})", self.dim, self.rays)
    }
}

impl RationalCone {
    /// Builds a cone from generating rays. Zero vectors are dropped, rays are
    /// scaled primitive, sorted, and deduplicated. An empty ray list denotes
    /// the zero cone.
    pub fn from_rays(dim: usize, rays: Vec<LatticeVector>) -> Result<Self, Error> {
        assert!(dim >= 1);
        if let Some(bad) = rays.iter().find(|r| r.dim() != dim) {
            return Err(Error::Shape(format!(
                "ray {bad} has dim {}, cone has dim {dim}",
                bad.dim()
            )));
        }
        let mut rays: Vec<LatticeVector> = rays
            .into_iter()
            .filter(|r| !r.is_zero())
            .map(|r| r.primitive())
            .collect();
        rays.sort();
        rays.dedup();
        Ok(RationalCone { dim, rays })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Exact membership test: is `x` a nonnegative combination of the rays?
    pub fn contains(&self, x: &LatticeVector) -> bool {
        assert_eq!(x.dim(), self.dim, "membership dimension mismatch");
        if x.is_zero() {
            return true;
        }
        if self.rays.is_empty() {
            return false;
        }
        let a: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| {
                self.rays
                    .iter()
                    .map(|r| Rational::from_integer(r.get(i).clone()))
                    .collect()
            })
            .collect();
        let b: Vec<Rational> = (0..self.dim)
            .map(|i| Rational::from_integer(x.get(i).clone()))
            .collect();
        lp::feasible_point(&a, &b).is_some()
    }

    /// The dual cone `{w : <w, r> >= 0 for all rays r}`, computed by
    /// incremental double description with irredundancy filtering. Applying
    /// it twice recovers the original cone as a set.
    pub fn dual(&self) -> RationalCone {
        let d = self.dim;
        // Start from a generating set of the whole space and cut with one
        // inequality per ray.
        let mut gens: Vec<LatticeVector> = (0..d)
            .flat_map(|i| {
                let e = LatticeVector::basis(d, i);
                let ne = -&e;
                [e, ne]
            })
            .collect();
        for h in &self.rays {
            let mut pos: Vec<(LatticeVector, Int)> = Vec::new();
            let mut neg: Vec<(LatticeVector, Int)> = Vec::new();
            let mut next: Vec<LatticeVector> = Vec::new();
            for g in gens {
                let v = h.dot(&g);
                if v.is_zero() {
                    next.push(g);
                } else if v.is_positive() {
                    pos.push((g, v));
                } else {
                    neg.push((g, v));
                }
            }
            if neg.is_empty() {
                gens = next.into_iter().chain(pos.into_iter().map(|(g, _)| g)).collect();
                continue;
            }
            for (gp, cp) in &pos {
                for (gn, cn) in &neg {
                    // cp * gn + (-cn) * gp lies on the hyperplane <h, .> = 0.
                    let w = &gn.scaled(cp) + &gp.scaled(&-cn.clone());
                    if !w.is_zero() {
                        next.push(w.primitive());
                    }
                }
            }
            next.extend(pos.into_iter().map(|(g, _)| g));
            next.sort();
            next.dedup();
            prune_redundant(self.dim, &mut next);
            gens = next;
        }
        RationalCone::from_rays(d, gens).expect("dual rays share the cone dimension")
    }

    /// Outer description: `x` lies in the cone iff `<f, x> >= 0` for every
    /// returned functional. Computed lazily from the dual cone.
    pub fn facet_normals(&self) -> Vec<LatticeVector> {
        self.dual().rays
    }

    /// True iff the cone contains no line. The lineality space of a cone is
    /// spanned by generators whose negation stays inside, so testing each ray
    /// suffices.
    pub fn is_strongly_convex(&self) -> bool {
        self.rays.iter().all(|r| !self.contains(&-r))
    }

    /// Set equality via mutual conic containment of the ray lists.
    pub fn set_eq(&self, other: &RationalCone) -> bool {
        self.dim == other.dim
            && other.rays.iter().all(|r| self.contains(r))
            && self.rays.iter().all(|r| other.contains(r))
    }
}

/// Removes generators that are nonnegative combinations of the others.
fn prune_redundant(dim: usize, gens: &mut Vec<LatticeVector>) {
    let mut i = 0;
    while i < gens.len() {
        let candidate = gens[i].clone();
        let others: Vec<LatticeVector> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let cone = RationalCone { dim, rays: others };
        if cone.contains(&candidate) {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
}

/// Witness for a conic-hull membership query: convex coefficients over the
/// points and nonnegative coefficients over the recession rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullWitness {
    pub point_coeffs: Vec<Rational>,
    pub ray_coeffs: Vec<Rational>,
}

/// Decides `x in Conv(points) + Cone(rays)` exactly, returning the witness
/// combination when feasible.
pub fn conic_hull_member_witness(
    x: &LatticeVector,
    points: &[LatticeVector],
    rays: &[LatticeVector],
) -> Result<Option<HullWitness>, Error> {
    if points.is_empty() {
        return Err(Error::DegenerateInput("conic hull needs at least one point".into()));
    }
    let d = x.dim();
    if points.iter().chain(rays.iter()).any(|v| v.dim() != d) {
        return Err(Error::Shape("conic hull dimension mismatch".into()));
    }
    // Equalities: sum lambda_i p_i + sum mu_j r_j = x and sum lambda_i = 1.
    let cols = points.len() + rays.len();
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row: Vec<Rational> = Vec::with_capacity(cols);
        for p in points {
            row.push(Rational::from_integer(p.get(i).clone()));
        }
        for r in rays {
            row.push(Rational::from_integer(r.get(i).clone()));
        }
        a.push(row);
    }
    let mut convexity = vec![Rational::from_integer(Int::from(1)); points.len()];
    convexity.extend(std::iter::repeat_n(Rational::zero(), rays.len()));
    a.push(convexity);
    let mut b: Vec<Rational> = (0..d)
        .map(|i| Rational::from_integer(x.get(i).clone()))
        .collect();
    b.push(Rational::from_integer(Int::from(1)));

    Ok(lp::feasible_point(&a, &b).map(|z| HullWitness {
        point_coeffs: z[..points.len()].to_vec(),
        ray_coeffs: z[points.len()..].to_vec(),
    }))
}

/// Boolean form of [`conic_hull_member_witness`].
pub fn conic_hull_member(
    x: &LatticeVector,
    points: &[LatticeVector],
    rays: &[LatticeVector],
) -> Result<bool, Error> {
    Ok(conic_hull_member_witness(x, points, rays)?.is_some())
}

/// Searches for an integer functional `w` with `<w, r> >= 0` on all rays and
/// `<w, other> >= <w, m> + 1` for every other point; such a `w` certifies
/// that `m` is a vertex of `Conv(points) + Cone(rays)`.
pub fn vertex_certificate(
    m: &LatticeVector,
    others: &[LatticeVector],
    rays: &[LatticeVector],
) -> Option<LatticeVector> {
    let d = m.dim();
    // Free variable w is split as u - v; slack variables turn the
    // inequalities into equalities.
    let n_slack = rays.len() + others.len();
    let cols = 2 * d + n_slack;
    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    for (k, r) in rays.iter().enumerate() {
        let mut row = vec![Rational::zero(); cols];
        for i in 0..d {
            row[i] = Rational::from_integer(r.get(i).clone());
            row[d + i] = Rational::from_integer(-r.get(i).clone());
        }
        row[2 * d + k] = Rational::from_integer(Int::from(-1));
        a.push(row);
        b.push(Rational::zero());
    }
    for (k, p) in others.iter().enumerate() {
        let diff = p - m;
        let mut row = vec![Rational::zero(); cols];
        for i in 0..d {
            row[i] = Rational::from_integer(diff.get(i).clone());
            row[d + i] = Rational::from_integer(-diff.get(i).clone());
        }
        row[2 * d + rays.len() + k] = Rational::from_integer(Int::from(-1));
        a.push(row);
        b.push(Rational::from_integer(Int::from(1)));
    }
    let z = lp::feasible_point(&a, &b)?;
    let w: Vec<Rational> = (0..d).map(|i| &z[i] - &z[d + i]).collect();
    // Clear denominators; positive scaling preserves both certificate
    // conditions.
    let lcm = w
        .iter()
        .fold(Int::from(1), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    Some(LatticeVector::new(
        w.iter().map(|q| (q * &lcm).to_integer()).collect(),
    ))
}

/// Exact check of a vertex certificate produced by [`vertex_certificate`].
pub fn verify_vertex_certificate(
    w: &LatticeVector,
    m: &LatticeVector,
    others: &[LatticeVector],
    rays: &[LatticeVector],
) -> bool {
    rays.iter().all(|r| !w.dot(r).is_negative())
        && others.iter().all(|p| w.dot(m) < w.dot(p))
}

/// Vertices of `Conv(points) + recession`, sorted lexicographically.
///
/// A point `m` is a vertex exactly when it is not in the conic hull of the
/// remaining points with the recession rays. Duplicates are removed first; a
/// singleton point set is its own vertex set.
pub fn newton_vertices(
    points: &[LatticeVector],
    recession: &RationalCone,
) -> Result<Vec<LatticeVector>, Error> {
    if points.is_empty() {
        return Err(Error::DegenerateInput("vertex detection needs at least one point".into()));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.iter().any(|p| p.dim() != recession.dim()) {
        return Err(Error::Shape("points and recession cone dimension mismatch".into()));
    }
    if pts.len() == 1 {
        return Ok(pts);
    }
    let mut vertices = Vec::new();
    for (i, m) in pts.iter().enumerate() {
        let others: Vec<LatticeVector> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if !conic_hull_member(m, &others, recession.rays())? {
            vertices.push(m.clone());
        }
    }
    Ok(vertices)
}

/// The Newton polyhedron `Conv(points) + recession` of a finite exponent set,
/// carrying its computed vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    pub points: Vec<LatticeVector>,
    pub recession: RationalCone,
    pub vertices: Vec<LatticeVector>,
}

impl NewtonPolyhedron {
    pub fn new(points: Vec<LatticeVector>, recession: RationalCone) -> Result<Self, Error> {
        let mut points = points;
        points.sort();
        points.dedup();
        let vertices = newton_vertices(&points, &recession)?;
        Ok(NewtonPolyhedron { points, recession, vertices })
    }

    /// Every point of the set decomposes over the vertices plus a recession
    /// element; used as a sanity check on small instances.
    pub fn certify_point(&self, p: &LatticeVector) -> Result<bool, Error> {
        conic_hull_member(p, &self.vertices, self.recession.rays())
    }
}
