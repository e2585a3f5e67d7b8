use std::time::Instant;
use toricnash::{detvar_generators, nash_charts, scan_minors};

#[test]
#[ignore]
fn probe_large_cases() {
    let t = Instant::now();
    let scan = scan_minors(&detvar_generators(4, 4).unwrap());
    println!("scan(4,4): {} subsets, unimodular={}, {:?}", scan.subsets_scanned, scan.unimodular, t.elapsed());

    for (m, n) in [(3, 3), (2, 4)] {
        let spec = detvar_generators(m, n).unwrap();
        let s = spec.semigroup();
        for p in [0u64, 2] {
            let t = Instant::now();
            let report = nash_charts(&s, p).unwrap();
            println!(
                "nash({m},{n}) p={p}: exponents={}, vertices={}, smooth={}, {:?}",
                report.log_jacobian.exponents.len(),
                report.newton_vertices.len(),
                report.global_smooth,
                t.elapsed()
            );
        }
    }
}
