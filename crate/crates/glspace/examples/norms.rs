//! The four norms of a single function, side by side.
//!
//! ```bash
//! cargo run --example norms
//! ```

use glspace::norms::lorentz_default_tgrid;
use glspace::{
    gls_norm, lorentz_norm, lp_norm, luxemburg_norm, LorentzWeight, NormValue, PsiFunction,
    QuadratureConfig, UnitIntervalFunction, YoungFunction,
};

fn show(label: &str, report: &glspace::NormReport) {
    match &report.value {
        NormValue::Finite(v) => {
            let loc = report
                .location
                .map(|l| format!(" (attained at {l:.6})"))
                .unwrap_or_default();
            println!("{label:<34} {v:.9}{loc}");
        }
        NormValue::Divergent { witnesses } => {
            let top = witnesses.last().unwrap();
            println!(
                "{label:<34} divergent (witness {:.4} at {:.3e})",
                top.value, top.location
            );
        }
    }
}

fn main() {
    let cfg = QuadratureConfig::default();
    let f = UnitIntervalFunction::sqrt_log();
    println!("f(x) = sqrt(|log x|) on (0, 1)");
    println!("{}", "-".repeat(60));

    for p in [1.0, 2.0, 4.0] {
        show(&format!("lebesgue-riesz |f|_{p}"), &lp_norm(&f, p, &cfg).unwrap());
    }

    // Degenerate generator: the Grand Lebesgue norm collapses to L_r.
    let psi4 = PsiFunction::degenerate(4.0).unwrap();
    show("grand lebesgue, degenerate at 4", &gls_norm(&f, &psi4, &cfg).unwrap());

    // The subgaussian generator sqrt(p); the ratio peaks at small p.
    let sqrt_p = PsiFunction::p_power(0.5, 1.0, 60.0).unwrap();
    show("grand lebesgue, psi = sqrt(p)", &gls_norm(&f, &sqrt_p, &cfg).unwrap());

    // Luxemburg norm in the matching exponential Orlicz space: exactly 1.
    let phi = YoungFunction::exp_square();
    show("luxemburg, exp(u^2/2) - 1", &luxemburg_norm(&f, &phi, &cfg).unwrap());

    // The Lorentz norm under v(t) = t rides the singularity at 0.
    let v1 = LorentzWeight::power(1.0).unwrap();
    show("lorentz, v(t) = t", &lorentz_norm(&f, &v1, &lorentz_default_tgrid(), &cfg).unwrap());

    // Under v(t) = sqrt(t) the supremum moves inside and the norm is finite.
    let v_half = LorentzWeight::power(0.5).unwrap();
    show("lorentz, v(t) = sqrt(t)", &lorentz_norm(&f, &v_half, &lorentz_default_tgrid(), &cfg).unwrap());
}
