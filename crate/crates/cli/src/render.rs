//! Human-readable rendering of the command payloads.

use std::fmt::Write;

use toricnash::nash::BranchOutcome;
use toricnash::{
    CharComparison, DualConeVerdict, LatticeVector, MinorScan, NashReport, NashTree,
    SaturationReport,
};

fn vector_list(vectors: &[LatticeVector]) -> String {
    vectors.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn nash_text(report: &NashReport) -> String {
    let mut out = String::new();
    let label = report.source.label().unwrap_or("semigroup");
    writeln!(
        out,
        "nash blowup charts of {label} (dim {}, {} generators), characteristic {}",
        report.source.dim(),
        report.source.generators().len(),
        report.characteristic
    )
    .unwrap();
    writeln!(
        out,
        "log-Jacobian exponents: {} distinct from {} qualifying of {} subsets",
        report.log_jacobian.exponents.len(),
        report.log_jacobian.subset_count,
        report.log_jacobian.subsets_scanned
    )
    .unwrap();
    writeln!(out, "newton vertices: {}", vector_list(&report.newton_vertices)).unwrap();
    for chart in &report.charts {
        writeln!(
            out,
            "  chart at {}: {} generators, {} minimal -> {}{}",
            chart.vertex,
            chart.chart_generators.len(),
            chart.minimal_generators.len(),
            if chart.smooth { "smooth" } else { "singular" },
            if chart.isomorphic_to_source { " (isomorphic to source)" } else { "" }
        )
        .unwrap();
        writeln!(out, "    minimal generators: {}", vector_list(&chart.minimal_generators)).unwrap();
    }
    writeln!(
        out,
        "verdict: {}",
        if report.global_smooth { "all charts smooth" } else { "singular charts remain" }
    )
    .unwrap();
    out
}

pub fn tree_text(tree: &NashTree) -> String {
    let mut out = String::new();
    render_tree(tree, 0, &mut out);
    writeln!(
        out,
        "verdict: {}",
        if tree.fully_resolved() {
            "resolved: all leaves smooth".to_string()
        } else {
            format!(
                "unresolved: {} fixed point(s), {} undecided leaf(s)",
                if tree.has_fixed_point() { "has" } else { "no" },
                tree.undecided_leaves()
            )
        }
    )
    .unwrap();
    out
}

fn render_tree(tree: &NashTree, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    writeln!(
        out,
        "{pad}depth {}: characteristic {}, {} charts, {}",
        depth + 1,
        tree.report.characteristic,
        tree.report.charts.len(),
        if tree.report.global_smooth { "all smooth" } else { "singular charts present" }
    )
    .unwrap();
    for branch in &tree.branches {
        match &branch.outcome {
            BranchOutcome::Smooth => {
                writeln!(out, "{pad}  chart at {}: smooth", branch.vertex).unwrap();
            }
            BranchOutcome::FixedPoint => {
                writeln!(out, "{pad}  chart at {}: fixed point (chart equals source)", branch.vertex)
                    .unwrap();
            }
            BranchOutcome::Undecided => {
                writeln!(out, "{pad}  chart at {}: singular, depth exhausted", branch.vertex).unwrap();
            }
            BranchOutcome::Expanded(sub) => {
                writeln!(out, "{pad}  chart at {}: singular, blowing up again", branch.vertex).unwrap();
                render_tree(sub, depth + 1, out);
            }
        }
    }
}

pub fn scan_text(scan: &MinorScan) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "maximal-minor scan of the rank-one {}x{} generator matrix: {} subsets",
        scan.m, scan.n, scan.subsets_scanned
    )
    .unwrap();
    for entry in &scan.value_counts {
        writeln!(out, "  determinant {:>3}: {} subsets", entry.value.to_string(), entry.count).unwrap();
    }
    if scan.unimodular {
        writeln!(out, "verdict: unimodular (every maximal minor is 0, 1, or -1)").unwrap();
    } else {
        writeln!(out, "verdict: NOT unimodular; {} violations", scan.violations.len()).unwrap();
        for violation in &scan.violations {
            writeln!(out, "  columns {:?} -> {}", violation.columns, violation.value).unwrap();
        }
    }
    out
}

pub fn charfree_text(cmp: &CharComparison) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "characteristic comparison: {} exponents in characteristic 0",
        cmp.char_zero.exponents.len()
    )
    .unwrap();
    for per_prime in &cmp.primes {
        writeln!(
            out,
            "  p = {:>2}: {} exponents, {}",
            per_prime.characteristic,
            per_prime.gamma.exponents.len(),
            if per_prime.equal_to_char_zero { "equal to characteristic 0" } else { "DIFFERS" }
        )
        .unwrap();
    }
    writeln!(
        out,
        "verdict: {}",
        if cmp.characteristic_free { "characteristic-free" } else { "characteristic-dependent" }
    )
    .unwrap();
    out
}

pub fn dualcone_text(verdict: &DualConeVerdict) -> String {
    let mut out = String::new();
    writeln!(out, "dual cone of the rank-one {}x{} generator cone", verdict.m, verdict.n).unwrap();
    writeln!(out, "  computed rays: {}", vector_list(&verdict.computed_rays)).unwrap();
    writeln!(out, "  conjectured:   {}", vector_list(&verdict.expected_rays)).unwrap();
    writeln!(
        out,
        "verdict: {}",
        if verdict.matches { "match" } else { "MISMATCH (reportable finding)" }
    )
    .unwrap();
    out
}

pub fn saturation_text(report: &SaturationReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "saturation scan up to degree {}: {} cone lattice points checked",
        report.bound, report.points_checked
    )
    .unwrap();
    if report.violations.is_empty() {
        writeln!(out, "verdict: no violations (consistent with saturation up to the bound)").unwrap();
    } else {
        writeln!(out, "verdict: {} violation(s)", report.violations.len()).unwrap();
        for v in &report.violations {
            writeln!(out, "  {v} lies in the cone but not in the semigroup").unwrap();
        }
    }
    out
}
