//! Settings from a flat key = value file, overridden by flags.

use horizon_gtn::config::Settings;

fn main() -> horizon_gtn::Result<()> {
    let file = Settings::from_toml_str(
        r#"
alpha = 0.6
T = 0.5
r = 0.3
f = "none"
subsystem = "AB1C1,AB2C2"
range = "0:3:0.5"
seed = 42
"#,
    )?;
    let flags = Settings {
        mass: Some(2.0),
        ..Default::default()
    };
    let merged = file.overlay(flags);
    let mp = merged.model_params()?;
    println!("{mp:#?}");
    println!("subsystems: {:?}", merged.subsystems_or(&[]));
    println!("grid: {:?}", merged.range().points());
    println!("search seed {} with {} restarts", merged.search().seed, merged.search().restarts);
    Ok(())
}
