//! Sampling diagnostics with exact overlays: the envelope's tail curve,
//! moment estimates against the certified series, the Borel–Cantelli
//! summability check and the partitioned union bound.
//!
//! ```bash
//! cargo run --example monte_carlo_tails
//! ```

use glspace::montecarlo::{
    borel_cantelli_diagnostic, dyadic_partition, estimate_lp, singleton_partition, tail_curve,
    union_bound_check, SampleBatch,
};
use glspace::{build_spec, BlockProcess, QuadratureConfig, UnitIntervalFunction};

fn main() {
    let cfg = QuadratureConfig::default();
    let spec = build_spec(1.0, UnitIntervalFunction::constant(1.0).unwrap(), 50_000, cfg).unwrap();
    let process = BlockProcess::new(spec).unwrap();
    let spec = process.spec();
    let batch = SampleBatch::new(42, 400_000).unwrap();

    println!("tail of sup_n g_n (400k draws) with exact overlay:");
    println!("{:>5} {:>12} {:>12} {:>12}", "u", "estimate", "stderr", "exact");
    for t in tail_curve(process.envelope(), &[0.5, 1.0, 1.5, 2.0, 3.0], &batch).unwrap() {
        println!(
            "{:>5} {:>12.6} {:>12.2e} {:>12.6}",
            t.threshold, t.estimate, t.std_error, t.exact
        );
    }
    println!();

    println!("moments of the envelope against the certified series:");
    println!("{:>5} {:>12} {:>12} {:>12}", "p", "estimate", "stderr", "series");
    for p in [1.0, 2.0, 3.0, 3.5] {
        let est = estimate_lp(process.envelope(), p, &batch).unwrap();
        let exact = spec.sup_lp_series(p).unwrap().value.powf(1.0 / p);
        println!("{p:>5} {:>12.6} {:>12.2e} {exact:>12.6}", est.estimate, est.std_error);
    }
    println!();

    let bc = borel_cantelli_diagnostic(spec, 0.5, 8).unwrap();
    println!("borel-cantelli at eps = 0.5:");
    for (n, prob, cum) in &bc.prefix {
        println!("  n = {n}: P = {prob:.6e}, partial sum {cum:.9}");
    }
    println!(
        "  total {:.12} (+ tail <= {:.1e}), chebyshev bound {:.6}, respected: {}",
        bc.partial_sum, bc.tail.upper, bc.chebyshev_bound, bc.bound_respected
    );
    println!();

    println!("union bound at u = 1.5 on shared draws:");
    for (name, partition) in [
        ("singleton", singleton_partition(spec.nmax())),
        ("dyadic", dyadic_partition(spec.nmax())),
    ] {
        let rep = union_bound_check(&process, &partition, 1.5, &batch).unwrap();
        println!(
            "  {name:<10} {} cells: lhs {:.6} <= rhs {:.6}, slack {:+.1e}",
            rep.cells, rep.lhs, rep.rhs, rep.slack
        );
    }
}
