//! Continuity of the process over its compact index space.
//!
//! T = {1, 2, …, ∞} with d(i, j) = |1/i - 1/j| has the single limit point
//! ∞, and the Grand Lebesgue modulus ||θ(n) - θ(∞)||Gψ_(4) decays like
//! n^(-1/4) — the process is continuous in norm even though its supremum
//! misbehaves.
//!
//! ```bash
//! cargo run --example continuity
//! ```

use glspace::{
    build_spec, MetricSpace, PsiFunction, QuadratureConfig, TPoint, UnitIntervalFunction,
};

fn main() {
    let t = MetricSpace { horizon: 10 };
    println!("distances in (T, d):");
    println!("  d(2, 4)  = {}", t.distance(TPoint::Finite(2), TPoint::Finite(4)));
    println!("  d(10, inf) = {}", t.distance(TPoint::Finite(10), TPoint::Infinity));
    println!();

    let cfg = QuadratureConfig::default();
    let spec = build_spec(1.0, UnitIntervalFunction::constant(1.0).unwrap(), 20_000, cfg).unwrap();
    let psi4 = PsiFunction::degenerate(4.0).unwrap();
    let (c, _) = spec.normalization();
    let (nu4, _) = spec.nu(4.0).unwrap();

    println!("modulus ||theta(n) - theta(inf)||G psi_(4) = (C/n)^(1/4) nu(4):");
    println!("{:>6} {:>10} {:>16} {:>16}", "n", "d(n,inf)", "modulus", "closed form");
    let mut n = 1u64;
    while n <= 16384 {
        let modulus = spec
            .continuity_modulus(&psi4, TPoint::Finite(n), TPoint::Infinity)
            .unwrap()
            .expect_finite();
        let closed = (c / n as f64).powf(0.25) * nu4;
        println!("{n:>6} {:>10.6} {modulus:>16.10} {closed:>16.10}", 1.0 / n as f64);
        n *= 4;
    }
    println!();

    let threshold = c * 1e4 * nu4.powi(4);
    println!("the modulus drops below 0.1 past n = C(beta) 10^4 nu^4(4) = {threshold:.2}");

    // Distinct finite points combine through the disjoint two-block union.
    let m = spec
        .continuity_modulus(&psi4, TPoint::Finite(3), TPoint::Finite(7))
        .unwrap()
        .expect_finite();
    println!("two-point modulus ||theta(3) - theta(7)|| = {m:.10}");
}
