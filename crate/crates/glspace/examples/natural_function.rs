//! The natural function ν(p) = |f|_p traced for sqrt(|log x|), whose
//! moments are Gamma values: |f|_p^p = Γ(p/2 + 1), so ν(p) grows like
//! √p and the function is subgaussian.
//!
//! ```bash
//! cargo run --example natural_function
//! ```

use glspace::{
    distribution_function, make_natural_psi, QuadratureConfig, UnitIntervalFunction,
};

fn main() {
    let cfg = QuadratureConfig::default();
    let f = UnitIntervalFunction::sqrt_log();
    let nu = make_natural_psi(f.clone(), 16.0, cfg).unwrap();

    println!("{:>4} {:>14} {:>14} {:>10}", "p", "nu(p)", "nu(p)/sqrt(p)", "nu^p(p)");
    for p in 1..=16u32 {
        let p = p as f64;
        let v = nu.eval(p);
        println!("{p:>4} {v:>14.9} {:>14.9} {:>10.3e}", v / p.sqrt(), v.powf(p));
    }
    println!();
    let limit = (2.0 * std::f64::consts::E).sqrt().recip();
    println!("the ratio nu(p)/sqrt(p) settles toward 1/sqrt(2e) = {limit:.6}");
    println!();

    println!("tail P(f > u) against exp(-u^2):");
    println!("{:>6} {:>14} {:>14}", "u", "P(f > u)", "exp(-u^2)");
    for u in [0.5, 1.0, 1.5, 2.0, 3.0] {
        let tail = distribution_function(&f, u);
        println!("{u:>6} {tail:>14.9} {:>14.9}", (-u * u).exp());
    }
}
