//! Full steady state at the centre of the absorption spike.
//!
//! ```text
//! cargo run --release -p darkres --example density_matrix
//! ```

use darkres::model::{damping_table, validate_params, SystemParams};
use darkres::steady_state::{residual, steady_state};

fn main() -> darkres::Result<()> {
    let p = SystemParams::spike();
    println!("regimes: {:?}", validate_params(&p)?);

    let rho = steady_state(&p)?;
    for i in 1..=4 {
        let row: Vec<String> = (1..=4)
            .map(|j| {
                let z = rho.get(i, j);
                format!("{:+.3e}{:+.3e}i", z.re, z.im)
            })
            .collect();
        println!("  {}", row.join("  "));
    }
    println!("populations  {:?}", rho.populations());
    println!("trace - 1    {:.1e}", (rho.trace() - 1.0).norm());
    println!("hermiticity  {:.1e}", rho.hermiticity_error());
    println!("residual     {:.1e}", residual(&p, &rho));
    let gamma23 = damping_table(&p).gamma(2, 3);
    println!(
        "Im rho23 / (g_p / Gamma23) = {:.4}",
        rho.rho23().im * gamma23 / p.g_p
    );
    Ok(())
}
