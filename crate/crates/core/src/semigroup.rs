//! Affine semigroups: positive gradings, exact membership with witnesses,
//! minimal generating sets, and bounded saturation checks.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{Int, LatticeVector, Rational};
use crate::polyhedral::RationalCone;

/// A finitely generated sub-semigroup of `Z^d`. The zero vector is excluded
/// from the generator list and duplicates are removed, preserving the first
/// occurrence order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SemigroupData", into = "SemigroupData")]
pub struct AffineSemigroup {
    dim: usize,
    generators: Vec<LatticeVector>,
    label: Option<String>,
}

/// Wire form of a semigroup: `{ "dim": d, "generators": [[..], ..], "label"? }`.
/// Entries beyond the 64-bit range are decimal strings.
#[derive(Clone, Serialize, Deserialize)]
struct SemigroupData {
    dim: usize,
    generators: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl TryFrom<SemigroupData> for AffineSemigroup {
    type Error = Error;
    fn try_from(data: SemigroupData) -> Result<Self, Error> {
        AffineSemigroup::new(data.dim, data.generators, data.label)
    }
}

impl From<AffineSemigroup> for SemigroupData {
    fn from(s: AffineSemigroup) -> SemigroupData {
        SemigroupData { dim: s.dim, generators: s.generators, label: s.label }
    }
}

impl AffineSemigroup {
    pub fn new(
        dim: usize,
        generators: Vec<LatticeVector>,
        label: Option<String>,
    ) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidParameter("semigroup dimension must be >= 1".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::Shape(format!(
                "generator {bad} has dim {}, semigroup has dim {dim}",
                bad.dim()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        let generators: Vec<LatticeVector> = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .filter(|g| seen.insert(g.clone()))
            .collect();
        if generators.is_empty() {
            return Err(Error::DegenerateInput("semigroup needs at least one nonzero generator".into()));
        }
        Ok(AffineSemigroup { dim, generators, label })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The real cone spanned by the generators.
    pub fn cone(&self) -> RationalCone {
        RationalCone::from_rays(self.dim, self.generators.clone())
            .expect("generators share the semigroup dimension")
    }

    /// An integer functional `w` with `<w, g> > 0` for every generator, built
    /// as the sum of the dual cone's rays (an interior point of the dual).
    /// Exists exactly when the cone of the generators is strongly convex;
    /// positivity is verified after construction.
    pub fn positive_functional(&self) -> Result<LatticeVector, Error> {
        let dual = self.cone().dual();
        if dual.rays().is_empty() {
            return Err(Error::NoPositiveGrading);
        }
        let mut w = LatticeVector::zero(self.dim);
        for r in dual.rays() {
            w = &w + r;
        }
        let w = w.primitive();
        if self.generators.iter().any(|g| !w.dot(g).is_positive()) {
            return Err(Error::NoPositiveGrading);
        }
        Ok(w)
    }

    fn grading_context(&self) -> Result<GradingContext, Error> {
        let w = self.positive_functional()?;
        let facets = self.cone().facet_normals();
        Ok(GradingContext { w, facets })
    }

    /// Decides `v` in the semigroup; on success returns one witness
    /// coefficient vector aligned with `generators()`.
    pub fn member(&self, v: &LatticeVector) -> Result<Option<Vec<u64>>, Error> {
        if v.dim() != self.dim {
            return Err(Error::Shape("membership dimension mismatch".into()));
        }
        let ctx = self.grading_context()?;
        Ok(member_search(&self.generators, &ctx, v))
    }

    /// The unique minimal generating set: generators that are not a sum of
    /// two or more of the remaining ones. Irreducibility is intrinsic in a
    /// sharp semigroup, so every generator is tested against all others and
    /// the reducible ones are removed simultaneously. Sorted lexicographically.
    pub fn minimal_generators(&self) -> Result<Vec<LatticeVector>, Error> {
        let ctx = self.grading_context()?;
        let mut minimal = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let others: Vec<LatticeVector> = self
                .generators
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if member_search(&others, &ctx, g).is_none() {
                minimal.push(g.clone());
            }
        }
        minimal.sort();
        Ok(minimal)
    }

    /// Enumerates every lattice point of the cone with `<w, x> <= bound` and
    /// reports those that are not semigroup members. An empty violation list
    /// is evidence of saturation up to the bound, not a proof.
    ///
    /// The default bound is three times the largest generator degree.
    pub fn bounded_saturation_check(
        &self,
        degree_bound: Option<Rational>,
    ) -> Result<SaturationReport, Error> {
        let ctx = self.grading_context()?;
        let max_degree = self
            .generators
            .iter()
            .map(|g| ctx.w.dot(g))
            .max()
            .expect("nonempty generators");
        let bound = match degree_bound {
            Some(b) => {
                if !b.is_positive() {
                    return Err(Error::InvalidParameter("degree bound must be positive".into()));
                }
                b
            }
            None => Rational::from_integer(max_degree * 3),
        };

        // Any cone point of degree <= B is a real combination with
        // coefficient sum <= B (degrees are integers >= 1), so each
        // coordinate is bounded by B * max |g_j|.
        let bound_floor = bound.floor().to_integer();
        let mut axis_bounds = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let m = self
                .generators
                .iter()
                .map(|g| g.get(j).abs())
                .max()
                .expect("nonempty generators");
            let limit = (&bound_floor * &m)
                .to_i64()
                .ok_or_else(|| Error::InvalidParameter("saturation bound too large to enumerate".into()))?;
            axis_bounds.push(limit.max(0));
        }
        let total: i128 = axis_bounds.iter().map(|&l| 2 * l as i128 + 1).product();
        if total > 20_000_000 {
            return Err(Error::InvalidParameter(format!(
                "saturation enumeration of {total} lattice points is too large"
            )));
        }

        let mut violations = Vec::new();
        let mut points_checked: u64 = 0;
        let mut coords = vec![0i64; self.dim];
        enumerate_box(&axis_bounds, 0, &mut coords, &mut |coords| {
            let x = LatticeVector::from_i64(coords);
            let deg = Rational::from_integer(ctx.w.dot(&x));
            if deg.is_negative() || deg > bound {
                return;
            }
            if !ctx.in_cone(&x) {
                return;
            }
            points_checked += 1;
            if member_search(&self.generators, &ctx, &x).is_none() {
                violations.push(x);
            }
        });
        violations.sort();
        Ok(SaturationReport { bound, points_checked, violations })
    }
}

fn enumerate_box(bounds: &[i64], axis: usize, coords: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if axis == bounds.len() {
        f(coords);
        return;
    }
    for x in -bounds[axis]..=bounds[axis] {
        coords[axis] = x;
        enumerate_box(bounds, axis + 1, coords, f);
    }
}

struct GradingContext {
    w: LatticeVector,
    facets: Vec<LatticeVector>,
}

impl GradingContext {
    fn in_cone(&self, x: &LatticeVector) -> bool {
        self.facets.iter().all(|f| !f.dot(x).is_negative())
    }
}

/// Dynamic program over the grading degree: level `k` holds every semigroup
/// element of degree `k` whose remainder `v - u` still lies in the cone.
/// Positivity of the grading makes the search exhaustive, hence complete.
fn member_search(
    generators: &[LatticeVector],
    ctx: &GradingContext,
    v: &LatticeVector,
) -> Option<Vec<u64>> {
    if v.is_zero() {
        return Some(vec![0; generators.len()]);
    }
    let target = ctx.w.dot(v);
    if !target.is_positive() {
        return None;
    }
    if !ctx.in_cone(v) {
        return None;
    }
    let Some(target) = target.to_usize() else {
        return None;
    };
    let degrees: Vec<usize> = generators
        .iter()
        .map(|g| {
            ctx.w
                .dot(g)
                .to_usize()
                .expect("generator degrees are small positive integers")
        })
        .collect();

    // levels[k]: vector -> (generator index, predecessor) for reconstruction.
    let mut levels: Vec<BTreeMap<LatticeVector, (usize, LatticeVector)>> =
        vec![BTreeMap::new(); target + 1];
    let origin = LatticeVector::zero(v.dim());
    levels[0].insert(origin.clone(), (usize::MAX, origin.clone()));

    for k in 1..=target {
        let mut level = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            let d = degrees[i];
            if d > k {
                continue;
            }
            for u in levels[k - d].keys() {
                let next = u + g;
                if level.contains_key(&next) {
                    continue;
                }
                let rest = v - &next;
                if ctx.in_cone(&rest) {
                    level.insert(next, (i, u.clone()));
                }
            }
        }
        levels[k] = level;
    }

    if !levels[target].contains_key(v) {
        return None;
    }
    let mut coeffs = vec![0u64; generators.len()];
    let mut current = v.clone();
    let mut degree = target;
    while degree > 0 {
        let (i, prev) = levels[degree][&current].clone();
        coeffs[i] += 1;
        degree -= degrees[i];
        current = prev;
    }
    Some(coeffs)
}

/// Outcome of a bounded saturation scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    #[serde(with = "crate::serde_util::rational_string")]
    pub bound: Rational,
    pub points_checked: u64,
    /// Cone lattice points within the bound that are not semigroup members.
    pub violations: Vec<LatticeVector>,
}

impl SaturationReport {
    pub fn is_consistent_with_saturation(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a membership witness by direct arithmetic.
pub fn verify_witness(generators: &[LatticeVector], coeffs: &[u64], v: &LatticeVector) -> bool {
    if generators.len() != coeffs.len() {
        return false;
    }
    let mut sum = LatticeVector::zero(v.dim());
    for (g, &c) in generators.iter().zip(coeffs) {
        sum = &sum + &g.scaled(&Int::from(c));
    }
    sum == *v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn v(entries: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(entries)
    }

    fn semigroup(dim: usize, gens: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::new(dim, gens.iter().map(|g| v(g)).collect(), None).unwrap()
    }

    #[test]
    fn constructor_normalizes() {
        let s = AffineSemigroup::new(
            2,
            vec![v(&[1, 0]), v(&[0, 0]), v(&[1, 0]), v(&[0, 1])],
            None,
        )
        .unwrap();
        assert_eq!(s.generators(), &[v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn positive_functional_on_cusp() {
        let s = semigroup(1, &[&[2], &[3]]);
        let w = s.positive_functional().unwrap();
        assert!(w.dot(&v(&[1])).is_positive());
    }

    #[test]
    fn positive_functional_on_m22() {
        let s = semigroup(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 1, 1]]);
        let w = s.positive_functional().unwrap();
        for g in s.generators() {
            assert!(w.dot(g).is_positive(), "w = {w} fails on {g}");
        }
    }

    #[test]
    fn no_grading_for_line() {
        let s = semigroup(1, &[&[1], &[-1]]);
        assert_eq!(s.positive_functional(), Err(Error::NoPositiveGrading));
        assert_eq!(s.member(&v(&[5])), Err(Error::NoPositiveGrading));
    }

    #[test]
    fn membership_in_cusp() {
        let s = semigroup(1, &[&[2], &[3]]);
        let witness = s.member(&v(&[5])).unwrap().expect("5 = 2 + 3");
        assert_eq!(witness, vec![1, 1]);
        assert!(verify_witness(s.generators(), &witness, &v(&[5])));
        assert_eq!(s.member(&v(&[1])).unwrap(), None);
        assert_eq!(s.member(&v(&[-2])).unwrap(), None);
        assert!(s.member(&v(&[0])).unwrap().is_some());
    }

    #[test]
    fn membership_in_m22() {
        let s = semigroup(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 1, 1]]);
        let witness = s.member(&v(&[1, 1, 1])).unwrap().expect("e1+e2+e3");
        assert!(verify_witness(s.generators(), &witness, &v(&[1, 1, 1])));
    }

    #[test]
    fn minimal_generators_collapse() {
        let s = semigroup(1, &[&[1], &[2], &[5]]);
        assert_eq!(s.minimal_generators().unwrap(), vec![v(&[1])]);
    }

    #[test]
    fn minimal_generators_of_cusp() {
        let s = semigroup(1, &[&[2], &[3]]);
        assert_eq!(s.minimal_generators().unwrap(), vec![v(&[2]), v(&[3])]);
    }

    #[test]
    fn minimal_generators_permutation_invariant() {
        let a = semigroup(2, &[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]);
        let b = semigroup(2, &[&[2, 1], &[1, 1], &[0, 1], &[1, 0]]);
        assert_eq!(a.minimal_generators().unwrap(), b.minimal_generators().unwrap());
    }

    #[test]
    fn saturation_finds_cusp_gap() {
        let s = semigroup(1, &[&[2], &[3]]);
        let report = s
            .bounded_saturation_check(Some(Rational::from_integer(Int::from(10))))
            .unwrap();
        assert_eq!(report.violations, vec![v(&[1])]);
    }

    #[test]
    fn saturation_of_free_semigroup() {
        let s = semigroup(2, &[&[1, 0], &[0, 1]]);
        let report = s
            .bounded_saturation_check(Some(Rational::from_integer(Int::from(5))))
            .unwrap();
        assert!(report.violations.is_empty());
        assert!(report.points_checked > 0);
    }

    #[test]
    fn saturation_rejects_nonpositive_bound() {
        let s = semigroup(1, &[&[2], &[3]]);
        assert!(matches!(
            s.bounded_saturation_check(Some(Rational::zero())),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn serde_round_trip() {
        let s = AffineSemigroup::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1])],
            Some("quadrant".into()),
        )
        .unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: AffineSemigroup = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
    }
}
