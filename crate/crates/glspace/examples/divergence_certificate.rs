//! The punchline: every block lies in the Grand Lebesgue space over
//! [1, 4) with a uniform bound, and the generator (4-p)^(-1/8) is
//! *significantly weaker* than the flat generator — yet the supremum's
//! norm in that weaker space diverges. The certificate tracks the ratio
//! |sup g|_p / φ₀(p) on a grid accumulating at 4.
//!
//! ```bash
//! cargo run --example divergence_certificate
//! ```

use glspace::{build_spec, default_certificate_grid, PsiFunction, QuadratureConfig, UnitIntervalFunction};

fn main() {
    let cfg = QuadratureConfig::default();
    let spec = build_spec(1.0, UnitIntervalFunction::constant(1.0).unwrap(), 100_000, cfg).unwrap();
    let grid = default_certificate_grid();

    for (label, beta) in [
        ("phi0 = (4-p)^(-1/8), the weaker generator", 0.125),
        ("flat generator (4-p)^0 = 1", 0.0),
        ("matching generator (4-p)^(-1/4)", 0.25),
    ] {
        let phi = PsiFunction::power_singular(beta, 4.0).unwrap();
        let cert = spec.weaker_norm_divergence(&phi, &grid).unwrap();
        println!("{label}:");
        let show = [0, cert.rows.len() / 2, cert.rows.len() - 1];
        for (i, row) in cert.rows.iter().enumerate() {
            if show.contains(&i) {
                println!("  4 - p = {:>10.3e}   ratio = {:>12.6}", 4.0 - row.p, row.ratio);
            }
        }
        let verdict = if cert.certified { "DIVERGENT (certified)" } else { "bounded at this resolution" };
        println!("  => {verdict}");
        println!();
    }
}
