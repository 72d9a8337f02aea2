//! Sweep the Hawking temperature for several subsystems and write CSV.

use std::fs::File;

use horizon_gtn::reduced::{ModelParams, Subsystem};
use horizon_gtn::sweep::{run_sweep, write_csv, Range, Source, SweepSpec};

fn main() -> horizon_gtn::Result<()> {
    let fixed = ModelParams {
        r: 0.4,
        p: 0.9,
        ..Default::default()
    };
    let mut spec = SweepSpec::over_temperature(
        fixed,
        vec![Subsystem::AB1C1, Subsystem::AB2C2, Subsystem::AB1C2],
    );
    spec.range = Range::new(0.0, 2.0, 0.25)?;
    spec.source = Source::Both;

    let rows = run_sweep(&spec)?;
    write_csv(std::io::stdout().lock(), &rows)?;

    let path = std::env::temp_dir().join("temperature_sweep.csv");
    write_csv(File::create(&path)?, &rows)?;
    eprintln!("{} rows written to {}", rows.len(), path.display());
    Ok(())
}
