//! Group index at the zero-absorption detuning. The dimensionless spectra
//! need the decay rate in s^-1 to become a group index; three plausible
//! values are tried.
//!
//! ```text
//! cargo run --release -p darkres --example group_index
//! ```

use darkres::model::{MediumParams, SystemParams};
use darkres::observables::{auto_zero_bracket, find_absorption_zero, group_index};

fn main() -> darkres::Result<()> {
    for lam in [2e-5, 4e-5, 1e-4, 1e-3] {
        let p = SystemParams::pumped_spike().with_lambda(lam);
        let d0 = find_absorption_zero(&p, &MediumParams::mercury(), auto_zero_bracket(&p))?;
        print!("lambda {lam:.0e}  delta0 {d0:.3e}:");
        for gamma_si in [1e6, 1e7, 1e8] {
            let m = MediumParams::mercury().with_gamma_si(gamma_si);
            print!("  n_g({gamma_si:.0e}) = {:+.3e}", group_index(&p, &m, d0)?);
        }
        println!();
    }
    Ok(())
}
