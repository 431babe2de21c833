//! Compare the closed-form critical heat-bath temperature with the exact
//! bisected boundary across reset rates, at a cold spin bath.
//!
//! ```sh
//! cargo run -p spinbath --example phase_boundary
//! ```

use spinbath::model::ModelParams;
use spinbath::quantumness::{self, Regime};

fn main() {
    println!(
        "{:>6} {:>12} {:>12} {:>8}",
        "p", "closed_form", "exact", "rel"
    );
    for k in 0..8 {
        let p = 0.3 + 0.1 * k as f64;
        let crit = quantumness::critical_temperature(p, Regime::LowT2, None).unwrap();
        let coeffs = quantumness::perturbative_coefficients(p, Regime::LowT2, None).unwrap();
        let center = coeffs.full_linear()[0] / (2.0 * coeffs.full_quadratic());

        let base = ModelParams::new(1.0, center, 1.0, 0.01, p, p).unwrap();
        let bracket = (crit.t_crit / 3.0, 3.0 * crit.t_crit);
        match quantumness::magic_boundary_exact(&base, bracket) {
            Ok(exact) => println!(
                "{:>6.2} {:>12.6} {:>12.6} {:>7.2}%",
                p,
                crit.t_crit,
                exact,
                100.0 * (exact - crit.t_crit).abs() / crit.t_crit
            ),
            Err(e) => println!("{p:>6.2} {:>12.6} {:>12} ({e})", crit.t_crit, "-"),
        }
    }
}
