//! Eigenstates of the two drives and where they put the absorption peaks.
//!
//! ```text
//! cargo run --release -p darkres --example dressed_states
//! ```

use darkres::analytic::dressed_states;
use darkres::model::{MediumParams, SystemParams};
use darkres::observables::{chi, Method};

fn main() -> darkres::Result<()> {
    for (g41, g42) in [(0.0, 4.0), (0.04, 4.0), (3.0, 4.0)] {
        let d = dressed_states(g41, g42)?;
        println!("g41 = {g41}, g42 = {g42}");
        for (name, e, v) in [
            ("|0>", d.lambda_zero, d.zero),
            ("|+>", d.lambda_plus, d.plus),
            ("|->", d.lambda_minus, d.minus),
        ] {
            println!(
                "  {name} E = {e:+.4}  (|1>, |2>, |4>) = ({:+.4}, {:+.4}, {:+.4})",
                v[0], v[1], v[2]
            );
        }
    }

    // Autler-Townes peak on the positive side, found on a 1e-3 grid
    let p = SystemParams::doublet();
    let m = MediumParams::mercury();
    let mut best = (0.0, f64::MIN);
    for k in 500..=8000 {
        let dp = k as f64 * 1e-3;
        let im = chi(&p.with_delta_p(dp), &m, Method::Numeric)?.im;
        if im > best.1 {
            best = (dp, im);
        }
    }
    println!(
        "\nnumeric absorption maximum at delta_p = {:.3} (dressed energy {})",
        best.0, p.g42
    );
    Ok(())
}
