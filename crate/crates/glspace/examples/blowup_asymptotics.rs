//! The block process and the blow-up of its supremum's norm.
//!
//! Each block g_n = n^β · f((a_n - x)/Δ_n) on [a_{n+1}, a_n) has a closed
//! Lp norm c_n Δ_n^(1/p) ν(p); the disjointness identity turns the norm of
//! sup_n g_n into a series whose p-th power behaves like C₁(β)/(4 - p).
//! The constants C₁, C₂ are outputs of the run, not inputs.
//!
//! ```bash
//! cargo run --example blowup_asymptotics
//! ```

use glspace::{build_spec, lp_norm, QuadratureConfig, UnitIntervalFunction};

fn main() {
    let cfg = QuadratureConfig::default();
    let f = UnitIntervalFunction::constant(1.0).unwrap();
    let spec = build_spec(1.0, f, 100_000, cfg).unwrap();
    let (c, c_err) = spec.normalization();
    println!("beta = 1, f = 1: C(beta) = {c:.12} (+/- {c_err:.1e}), a_1 = {}", spec.edge(1));
    println!();

    println!("block norms, closed form vs quadrature:");
    println!("{:>4} {:>6} {:>16} {:>16}", "n", "p", "closed", "quadrature");
    for n in [1u64, 2, 10, 50] {
        for p in [1.0, 3.9] {
            let closed = spec.block_lp_closed_form(n, p).unwrap();
            let quad = lp_norm(&spec.block(n).unwrap(), p, &cfg).unwrap().expect_finite();
            println!("{n:>4} {p:>6} {closed:>16.12} {quad:>16.12}");
        }
    }
    println!();

    println!("norm of the supremum at p = 4 - 2^(-k):");
    println!(
        "{:>3} {:>12} {:>12} {:>14} {:>14}",
        "k", "|sup g|_p", "(4-p)|.|_p^p", "(4-p)^.25|.|_p", "tail bracket"
    );
    let ks: Vec<u32> = (6..=20).collect();
    for row in spec.blowup_table(&ks).unwrap() {
        println!(
            "{:>3} {:>12.6} {:>12.8} {:>14.8} {:>14.2e}",
            row.k, row.sup_norm, row.scaled_power, row.scaled_norm, row.series_rel_bracket
        );
    }
    let limit = spec.blowup_limit().unwrap();
    println!();
    println!("extrapolated C1(beta) = {limit:.10} (equals C(beta) nu^4(4) / beta)");
    println!("extrapolated C2(beta) = {:.10}", limit.powf(0.25));
}
