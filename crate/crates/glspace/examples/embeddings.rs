//! The two "significantly weaker" relations, with their evaluation traces.
//!
//! GLS sense: φ << ψ iff φ(p)/ψ(p) → ∞ along the escape set of φ.
//! Orlicz sense: Ψ << Φ iff Ψ(λu)/Φ(u) → 0 for every λ > 0.
//!
//! ```bash
//! cargo run --example embeddings
//! ```

use glspace::{
    endpoint_gap_grid, gls_weaker, orlicz_weaker, PsiFunction, RelationConfig, YoungFunction,
};

fn main() {
    let cfg = RelationConfig::default();
    let gaps = endpoint_gap_grid(1.0, 4.0, 128);

    println!("grand lebesgue relation on [1, 4):");
    let pairs = [
        ("(4-p)^(-1/8) vs 1", 0.125, 0.0),
        ("(4-p)^(-1/4) vs (4-p)^(-1/8)", 0.25, 0.125),
        ("(4-p)^(-1/8) vs (4-p)^(-1/4)", 0.125, 0.25),
        ("identical exponents", 0.5, 0.5),
    ];
    for (label, b1, b2) in pairs {
        let phi = PsiFunction::power_singular(b1, 4.0).unwrap();
        let psi = PsiFunction::power_singular(b2, 4.0).unwrap();
        let rep = gls_weaker(&phi, &psi, &gaps, &cfg).unwrap();
        let last = rep.trace.iter().rfind(|r| r.ratio.is_finite()).unwrap();
        println!(
            "  {label:<34} {:<12} (final ratio {:.3e} at gap {:.1e})",
            rep.verdict.as_str(),
            last.ratio,
            last.gap
        );
    }
    println!();

    println!("orlicz relation (lambda sweep 0.5, 1, 2, 10):");
    let ugrid: Vec<f64> = (0..40).map(|i| 1e3f64.powf(i as f64 / 39.0)).collect();
    let lambdas = [0.5, 1.0, 2.0, 10.0];
    let pairs: [(&str, YoungFunction, YoungFunction); 3] = [
        ("u^2 vs exp(u^2/2)-1", YoungFunction::power(2.0).unwrap(), YoungFunction::exp_square()),
        ("exp(u)-1 vs exp(u^2/2)-1", YoungFunction::exp_linear(), YoungFunction::exp_square()),
        ("exp(u^2/2)-1 vs itself", YoungFunction::exp_square(), YoungFunction::exp_square()),
    ];
    for (label, weak, strong) in pairs {
        let rep = orlicz_weaker(&weak, &strong, &lambdas, &ugrid, &cfg).unwrap();
        let last = rep.trace.last().unwrap();
        println!(
            "  {label:<34} {:<12} (log-ratio {:.1} at u = {:.0}, lambda = {})",
            rep.verdict.as_str(),
            last.log_ratio,
            last.u,
            last.lambda
        );
    }
}
