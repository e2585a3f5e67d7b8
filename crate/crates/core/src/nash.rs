//! Nash blowup charts of an affine toric variety, computed from the
//! logarithmic Jacobian exponent set: one chart per Newton-polyhedron
//! vertex, with a smoothness verdict per chart.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{det, generates_full_lattice, LatticeMatrix, LatticeVector};
use crate::logjac::{gamma_p, LogJacobianSet};
use crate::polyhedral::newton_vertices;
use crate::semigroup::AffineSemigroup;

/// One affine chart of the blowup: the semigroup generated by the source
/// generators together with the exponent differences at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashChart {
    pub vertex: LatticeVector,
    /// Source generators first, then the nonzero differences `m - m0`
    /// sorted lexicographically, deduplicated.
    pub chart_generators: Vec<LatticeVector>,
    pub minimal_generators: Vec<LatticeVector>,
    /// A d-dimensional chart is non-singular exactly when its semigroup is
    /// generated by d elements.
    pub smooth: bool,
    /// Set when the chart's minimal generating set equals the source's,
    /// i.e. the blowup returned the variety we started from.
    pub isomorphic_to_source: bool,
}

impl NashChart {
    pub fn semigroup(&self) -> AffineSemigroup {
        let dim = self.vertex.dim();
        AffineSemigroup::new(dim, self.chart_generators.clone(), None)
            .expect("chart generators are nonzero and share the source dimension")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashReport {
    pub source: AffineSemigroup,
    pub characteristic: u64,
    pub log_jacobian: LogJacobianSet,
    pub newton_vertices: Vec<LatticeVector>,
    pub charts: Vec<NashChart>,
    pub global_smooth: bool,
    /// Filled by characteristic-comparison drivers; `None` when a single
    /// characteristic was analyzed.
    pub char_free: Option<bool>,
}

/// Builds the chart cover of the Nash blowup of `X_Gamma` in the given
/// characteristic.
///
/// Hypotheses: the generators span `Z^d` and their cone is strongly convex;
/// violations surface as [`Error::LatticeNotFull`] and
/// [`Error::NoPositiveGrading`].
pub fn nash_charts(source: &AffineSemigroup, p: u64) -> Result<NashReport, Error> {
    let dim = source.dim();
    let recession = source.cone();
    if !recession.is_strongly_convex() {
        return Err(Error::NoPositiveGrading);
    }
    let log_jacobian = gamma_p(source, p)?;
    let source_minimal = source.minimal_generators()?;
    let vertices = newton_vertices(&log_jacobian.exponents, &recession)?;

    let mut charts = Vec::with_capacity(vertices.len());
    for vertex in &vertices {
        let mut diffs: Vec<LatticeVector> = log_jacobian
            .exponents
            .iter()
            .map(|m| m - vertex)
            .filter(|v| !v.is_zero())
            .collect();
        diffs.sort();
        let mut chart_generators: Vec<LatticeVector> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for g in source.generators().iter().chain(diffs.iter()) {
            if seen.insert(g.clone()) {
                chart_generators.push(g.clone());
            }
        }
        debug_assert!(generates_full_lattice(&chart_generators, dim));

        let chart_semigroup = AffineSemigroup::new(dim, chart_generators.clone(), None)?;
        let minimal_generators = chart_semigroup.minimal_generators()?;
        let smooth = minimal_generators.len() == dim;
        if smooth {
            let m = LatticeMatrix::from_columns(minimal_generators.clone())
                .expect("d generators in dimension d");
            debug_assert!(det(&m).map(|d| d.abs() == 1.into()).unwrap_or(false));
        }
        let isomorphic_to_source = minimal_generators == source_minimal;
        charts.push(NashChart {
            vertex: vertex.clone(),
            chart_generators,
            minimal_generators,
            smooth,
            isomorphic_to_source,
        });
    }

    let global_smooth = charts.iter().all(|c| c.smooth);
    Ok(NashReport {
        source: source.clone(),
        characteristic: p,
        log_jacobian,
        newton_vertices: vertices,
        charts,
        global_smooth,
        char_free: None,
    })
}

/// Result of applying [`nash_charts`] recursively to singular charts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashTree {
    pub report: NashReport,
    /// One branch per chart, in chart order.
    pub branches: Vec<NashBranch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashBranch {
    pub vertex: LatticeVector,
    pub outcome: BranchOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchOutcome {
    /// The chart is non-singular; the branch terminates.
    Smooth,
    /// The chart reproduces its source semigroup; iterating would loop, so
    /// the branch terminates as unresolvable by this process.
    FixedPoint,
    /// The chart is singular and was blown up again.
    Expanded(Box<NashTree>),
    /// The chart is singular but the depth budget ran out.
    Undecided,
}

impl NashTree {
    /// True when every leaf of the tree is a smooth chart.
    pub fn fully_resolved(&self) -> bool {
        self.branches.iter().all(|b| match &b.outcome {
            BranchOutcome::Smooth => true,
            BranchOutcome::Expanded(sub) => sub.fully_resolved(),
            BranchOutcome::FixedPoint | BranchOutcome::Undecided => false,
        })
    }

    pub fn has_fixed_point(&self) -> bool {
        self.branches.iter().any(|b| match &b.outcome {
            BranchOutcome::FixedPoint => true,
            BranchOutcome::Expanded(sub) => sub.has_fixed_point(),
            _ => false,
        })
    }

    pub fn undecided_leaves(&self) -> usize {
        self.branches
            .iter()
            .map(|b| match &b.outcome {
                BranchOutcome::Undecided => 1,
                BranchOutcome::Expanded(sub) => sub.undecided_leaves(),
                _ => 0,
            })
            .sum()
    }

    /// Number of blowup rounds applied along the deepest path.
    pub fn depth(&self) -> usize {
        1 + self
            .branches
            .iter()
            .filter_map(|b| match &b.outcome {
                BranchOutcome::Expanded(sub) => Some(sub.depth()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }
}

/// Applies [`nash_charts`] recursively to every singular chart until all
/// leaves are smooth, a fixed point is detected, or the depth budget is
/// exhausted.
pub fn nash_iterate(source: &AffineSemigroup, p: u64, max_depth: usize) -> Result<NashTree, Error> {
    if max_depth == 0 {
        return Err(Error::InvalidParameter("iteration depth must be >= 1".into()));
    }
    let report = nash_charts(source, p)?;
    let mut branches = Vec::with_capacity(report.charts.len());
    for chart in &report.charts {
        let outcome = if chart.smooth {
            BranchOutcome::Smooth
        } else if chart.isomorphic_to_source {
            BranchOutcome::FixedPoint
        } else if max_depth > 1 {
            BranchOutcome::Expanded(Box::new(nash_iterate(&chart.semigroup(), p, max_depth - 1)?))
        } else {
            BranchOutcome::Undecided
        };
        branches.push(NashBranch { vertex: chart.vertex.clone(), outcome });
    }
    Ok(NashTree { report, branches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(entries)
    }

    fn cusp() -> AffineSemigroup {
        AffineSemigroup::new(1, vec![v(&[2]), v(&[3])], Some("cusp".into())).unwrap()
    }

    #[test]
    fn cusp_char_zero_resolves_in_one_step() {
        let report = nash_charts(&cusp(), 0).unwrap();
        assert_eq!(report.newton_vertices, vec![v(&[2])]);
        assert_eq!(report.charts.len(), 1);
        let chart = &report.charts[0];
        // The difference 3 - 2 contributes the generator 1.
        assert!(chart.chart_generators.contains(&v(&[1])));
        assert_eq!(chart.minimal_generators, vec![v(&[1])]);
        assert!(chart.smooth);
        assert!(report.global_smooth);
    }

    #[test]
    fn cusp_char_two_is_nobile_fixed_point() {
        let report = nash_charts(&cusp(), 2).unwrap();
        assert_eq!(report.newton_vertices, vec![v(&[3])]);
        assert_eq!(report.charts.len(), 1);
        let chart = &report.charts[0];
        assert_eq!(chart.chart_generators, vec![v(&[2]), v(&[3])]);
        assert_eq!(chart.minimal_generators, vec![v(&[2]), v(&[3])]);
        assert!(!chart.smooth);
        assert!(chart.isomorphic_to_source);
        assert!(!report.global_smooth);
    }

    #[test]
    fn cusp_char_three_is_singular_too() {
        let report = nash_charts(&cusp(), 3).unwrap();
        let chart = &report.charts[0];
        assert_eq!(chart.minimal_generators, vec![v(&[2]), v(&[3])]);
        assert!(!chart.smooth);
        assert!(chart.isomorphic_to_source);
    }

    #[test]
    fn m22_all_charts_smooth() {
        let s = AffineSemigroup::new(
            3,
            vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[-1, 1, 1])],
            None,
        )
        .unwrap();
        for p in [0, 2, 3, 5] {
            let report = nash_charts(&s, p).unwrap();
            assert_eq!(report.newton_vertices.len(), 4);
            for chart in &report.charts {
                assert_eq!(chart.minimal_generators.len(), 3, "vertex {}", chart.vertex);
                assert!(chart.smooth);
            }
            assert!(report.global_smooth);
        }
    }

    #[test]
    fn iterate_cusp_char_zero() {
        let tree = nash_iterate(&cusp(), 0, 2).unwrap();
        assert_eq!(tree.depth(), 1);
        assert!(tree.fully_resolved());
        assert!(!tree.has_fixed_point());
    }

    #[test]
    fn iterate_cusp_char_two_stops_at_fixed_point() {
        let tree = nash_iterate(&cusp(), 2, 3).unwrap();
        assert_eq!(tree.depth(), 1);
        assert!(tree.has_fixed_point());
        assert!(!tree.fully_resolved());
        assert_eq!(tree.undecided_leaves(), 0);
    }

    #[test]
    fn iterate_rejects_zero_depth() {
        assert!(matches!(
            nash_iterate(&cusp(), 0, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn line_semigroup_is_rejected() {
        let s = AffineSemigroup::new(1, vec![v(&[1]), v(&[-1])], None).unwrap();
        assert_eq!(nash_charts(&s, 0), Err(Error::NoPositiveGrading));
    }
}
