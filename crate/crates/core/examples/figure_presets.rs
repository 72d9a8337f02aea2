//! Run a figure recipe and summarize each curve.
//!
//! `cargo run --example figure_presets -- fig3c`

use horizon_gtn::sweep::{figure_preset, run_sweep, PRESET_NAMES};

fn main() -> horizon_gtn::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "fig2a".into());
    let preset = figure_preset(&name)?;
    let rows = run_sweep(&preset.spec)?;
    let per_curve = preset.spec.range.points().len();
    println!("{} ({} rows), presets: {}", preset.name, rows.len(), PRESET_NAMES.join(" "));
    for curve in rows.chunks(per_curve) {
        let first = &curve[0];
        let last = &curve[curve.len() - 1];
        let value = |r: &horizon_gtn::sweep::ResultRow| r.s.or(r.c).unwrap();
        println!(
            "  r = {}, p = {}, f = {:<5}  T = 0: {:.6}   T = {}: {:.6}",
            first.params.r,
            first.params.p,
            first.params.filter.to_string(),
            value(first),
            last.params.temperature,
            value(last)
        );
    }
    Ok(())
}
