//! Zero-absorption detunings and the gain threshold for the pumped system.
//!
//! ```text
//! cargo run --release -p darkres --example zero_crossings
//! ```

use darkres::analytic::lambda_threshold;
use darkres::model::{MediumParams, SystemParams};
use darkres::observables::{
    auto_zero_bracket, feature_report, find_gain_threshold, OrderedDetuning,
};

fn main() -> darkres::Result<()> {
    let medium = MediumParams::mercury();
    let p = SystemParams::pumped_spike();

    let report = feature_report(&p, &medium, auto_zero_bracket(&p), Some((1e-8, 1e-3)))?;
    println!("lambda = {:e} gamma", p.lambda_pump);
    for z in &report.zero_crossings {
        let slope = report.slope_at[&OrderedDetuning(*z)];
        println!(
            "  Im chi = 0 at delta_p = {z:+.4e} gamma, d chi'/d delta_p = {slope:+.4e} / gamma"
        );
    }

    println!("\nabsorption -> gain at delta_p = 0:");
    for g42 in [4.0, 10.0, 15.0] {
        let q = p.with_g42(g42);
        let found = find_gain_threshold(&q, &medium, (1e-8, 1e-3))?;
        println!(
            "  g42 = {g42:>4} gamma: Lambda* = {found:.4e} gamma (estimate (g41/g42)^2 gamma23 = {:.4e})",
            lambda_threshold(&q)
        );
    }
    Ok(())
}
