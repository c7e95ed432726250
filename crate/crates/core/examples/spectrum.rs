//! Probe susceptibility across the three driving configurations: the
//! Autler-Townes doublet, the narrow absorption spike added by a weak
//! second drive, and the spike turned into gain by incoherent pumping.
//!
//! ```text
//! cargo run --release -p darkres --example spectrum
//! ```

use darkres::model::{MediumParams, SystemParams};
use darkres::observables::{chi_spectrum, Method};

fn show(title: &str, p: &SystemParams, grid: &[f64]) -> darkres::Result<()> {
    println!("{title}");
    println!("{:>12} {:>14} {:>14}", "delta_p", "chi'", "chi''");
    for pt in chi_spectrum(p, &MediumParams::mercury(), grid, Method::Numeric) {
        let pt = pt?;
        println!(
            "{:>12.4e} {:>14.6e} {:>14.6e}",
            pt.delta_p, pt.chi.re, pt.chi.im
        );
    }
    println!();
    Ok(())
}

fn main() -> darkres::Result<()> {
    let wide: Vec<f64> = (-8..=8).map(|k| k as f64).collect();
    let narrow: Vec<f64> = (-6..=6).map(|k| k as f64 * 1e-4).collect();

    show(
        "g41 = 0: Autler-Townes doublet",
        &SystemParams::doublet(),
        &wide,
    )?;
    show(
        "g41 = 0.04: absorption spike at resonance",
        &SystemParams::spike(),
        &narrow,
    )?;
    show(
        "lambda = 4e-5: the spike becomes gain",
        &SystemParams::pumped_spike(),
        &narrow,
    )?;
    Ok(())
}
