//! Exact combinatorial engine for Nash blowups of affine toric varieties.
//!
//! The pipeline: an affine semigroup in `Z^d` determines a toric variety;
//! the exponent set of its logarithmic Jacobian ideal (mod `p`) spans a
//! Newton polyhedron whose vertices index the affine charts of the Nash
//! blowup; a chart is non-singular exactly when its semigroup is generated
//! by `d` elements. Constructors for the toric models of 2-generic
//! determinantal varieties are included. All arithmetic is exact.

pub mod detvar;
pub mod error;
pub mod exactla;
pub mod logjac;
pub mod nash;
pub mod polyhedral;
pub mod semigroup;
pub(crate) mod serde_util;

pub use detvar::{
    detvar_generators, dual_cone_conjecture_check, scan_minors, verify_minor_relations,
    DetVarSpec, DualConeVerdict, MinorScan, RelationReport,
};
pub use error::Error;
pub use exactla::{
    det, generates_full_lattice, rank, smith_normal_form, Int, LatticeMatrix, LatticeVector,
    Rational,
};
pub use logjac::{compare_characteristics, gamma_p, CharComparison, LogJacobianSet};
pub use nash::{nash_charts, nash_iterate, BranchOutcome, NashChart, NashReport, NashTree};
pub use polyhedral::{
    conic_hull_member, conic_hull_member_witness, newton_vertices, vertex_certificate,
    verify_vertex_certificate, HullWitness, NewtonPolyhedron, RationalCone,
};
pub use semigroup::{verify_witness, AffineSemigroup, SaturationReport};
