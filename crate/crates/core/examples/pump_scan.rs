//! Zero-absorption detuning and the dispersion slope there as the pump rate
//! grows, for three strengths of the strong drive. Rates below the onset
//! have no zero and show up as failed points. The positive slopes live in
//! a sliver just above the onset that this coarse grid mostly steps over.
//!
//! ```text
//! cargo run --release -p darkres --example pump_scan
//! ```

use darkres::model::{MediumParams, SystemParams};
use darkres::observables::Method;
use darkres::sweep::{run_sweep, Axis, Output, Spacing, SweepSpec};

fn main() -> darkres::Result<()> {
    for g42 in [4.0, 7.0, 10.0] {
        let spec = SweepSpec {
            base: SystemParams::spike().with_g42(g42),
            medium: MediumParams::mercury(),
            axis: Axis::Lambda,
            start: 1e-7,
            stop: 1e-3,
            points: 25,
            spacing: Spacing::Log,
            method: Method::Numeric,
            outputs: vec![Output::Delta0, Output::Slope],
        };
        let table = run_sweep(&spec)?;
        println!("g42 = {g42}: {} points below onset", table.failed.len());
        for row in &table.rows {
            println!(
                "  lambda {:.3e}  delta0 {:.4e}  slope {:+.4e}",
                row[0], row[1], row[2]
            );
        }
    }
    Ok(())
}
