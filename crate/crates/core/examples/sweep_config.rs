//! A sweep described by a config file, written as CSV and read back.
//!
//! ```text
//! cargo run --release -p darkres --example sweep_config [out.csv]
//! ```

use std::path::PathBuf;

use darkres::sweep::{parse_config, run_sweep, write_csv, SweepTable};

const CONFIG: &str = "\
# resonant absorption while the pump turns the spike into gain
g42 = 10
axis = LAMBDA
spacing = LOG
start = 1e-7
stop = 1e-3
points = 9
outputs = CHI_IM, POPULATIONS
";

fn main() -> darkres::Result<()> {
    let spec = parse_config(CONFIG)?;
    let table = run_sweep(&spec)?;
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("darkres_sweep.csv"));
    write_csv(&table, Some(&path))?;

    let back = SweepTable::from_csv(&std::fs::read_to_string(&path)?)?;
    assert_eq!(back.rows, table.rows);
    println!("wrote {} rows to {}", back.rows.len(), path.display());
    print!("{}", back.data_csv());
    Ok(())
}
