//! Closed forms against the full solution: the weak-probe expression is
//! essentially exact without pumping; the pumped Lorentzian is only
//! qualitative near threshold and improves as the pump grows.
//!
//! ```text
//! cargo run --release -p darkres --example compare_analytic
//! ```

use darkres::model::{MediumParams, SystemParams};
use darkres::observables::Method;
use darkres::sweep::{compare_methods, Axis, Output, Spacing, SweepSpec};

fn worst(base: SystemParams, method: Method, half_span: f64) -> darkres::Result<String> {
    let spec = SweepSpec {
        base,
        medium: MediumParams::mercury(),
        axis: Axis::DeltaP,
        start: -half_span,
        stop: half_span,
        points: 2000,
        spacing: Spacing::Linear,
        method,
        outputs: vec![Output::ChiRe],
    };
    let table = compare_methods(&spec)?;
    Ok(table.meta("max_rel_diff").unwrap_or("?").to_string())
}

fn main() -> darkres::Result<()> {
    let f4 = SystemParams::spike();
    println!(
        "weak-probe form, no pump:        {}",
        worst(f4, Method::AnalyticFull, 10.0)?
    );
    println!(
        "small-detuning limit, no pump:   {}",
        worst(f4, Method::AnalyticLimit, 1e-3)?
    );
    for lam in [4e-5, 1e-4, 4e-4] {
        println!(
            "pumped form, lambda = {lam:.0e}:    {}",
            worst(f4.with_lambda(lam), Method::AnalyticPump, 1e-3)?
        );
    }
    Ok(())
}
