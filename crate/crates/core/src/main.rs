use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use horizon_gtn::config::{parse_subsystems, Settings};
use horizon_gtn::measures::MeasureSet;
use horizon_gtn::noise::FilterParams;
use horizon_gtn::reduced::Subsystem;
use horizon_gtn::sweep::{
    self, figure_preset, find_critical_t, find_sudden_death_c, run_sweep, CriticalQuery, DeathVariable,
    Range, Source, SweepSpec, SweepVariable, PRESET_NAMES,
};
use horizon_gtn::{verify, Error, Result};

#[derive(Parser)]
#[command(name = "horizon-gtn", version, about = "Tripartite nonlocality and entanglement near a Schwarzschild horizon")]
struct Cli {
    /// Flat key = value settings file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    params: ParamFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct ParamFlags {
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    omega: Option<f64>,
    /// Hawking temperature.
    #[arg(long = "T", global = true, conflicts_with = "mass")]
    temperature: Option<f64>,
    /// Black-hole mass, converted to T = 1/(8πM).
    #[arg(long, global = true)]
    mass: Option<f64>,
    /// GAD strength.
    #[arg(long, global = true)]
    r: Option<f64>,
    /// GAD mixing parameter.
    #[arg(long, global = true)]
    p: Option<f64>,
    /// Filter strength in (0, 1), or `none`.
    #[arg(long, global = true)]
    f: Option<String>,
    /// Comma-separated subsystems (AB1C1, AB1B2, AC1C2, AB2C2, AB1C2, AB2C1) or `all`.
    #[arg(long, global = true)]
    subsystem: Option<String>,
    /// Grid as start:stop:step.
    #[arg(long, global = true)]
    range: Option<String>,
    #[arg(long, global = true, value_enum)]
    source: Option<SourceArg>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random starts of the Svetlichny search.
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Output file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Pipeline,
    Closed,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Print a reduced density matrix.
    State,
    /// S and C at one parameter tuple, as CSV.
    Measure,
    /// Sweep one parameter, as CSV.
    Sweep {
        /// T, r, p, f, alpha or omega (default T).
        #[arg(long)]
        variable: Option<String>,
    },
    /// Critical temperature of GTN death, or sudden-death point of GTE.
    Critical {
        #[arg(long, value_enum, default_value = "gtn")]
        kind: CriticalKind,
        /// Bracket as lo:hi.
        #[arg(long, default_value = "0:10")]
        bracket: String,
        /// Threshold for the GTN crossing.
        #[arg(long, default_value_t = 4.0)]
        target: f64,
        /// Variable for the GTE search: T or r.
        #[arg(long, default_value = "T")]
        along: String,
    },
    /// Closed forms vs pipeline and Svetlichny closed forms vs search.
    Verify,
    /// Run a figure recipe (`list` prints the names).
    Preset { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum CriticalKind {
    Gtn,
    Gte,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn flag_settings(p: &ParamFlags) -> Result<Settings> {
    Ok(Settings {
        alpha: p.alpha,
        omega: p.omega,
        temperature: p.temperature,
        mass: p.mass,
        r: p.r,
        p: p.p,
        filter: p.f.as_deref().map(str::parse::<FilterParams>).transpose()?,
        subsystems: p.subsystem.as_deref().map(parse_subsystems).transpose()?,
        variable: None,
        range: p.range.as_deref().map(str::parse::<Range>).transpose()?,
        source: p.source.map(|s| match s {
            SourceArg::Pipeline => Source::Pipeline,
            SourceArg::Closed => Source::ClosedForm,
            SourceArg::Both => Source::Both,
        }),
        seed: p.seed,
        restarts: p.restarts,
        out: p.out.clone(),
    })
}

fn output(settings: &Settings) -> Result<Box<dyn Write>> {
    Ok(match &settings.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file = match &cli.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    let settings = file.overlay(flag_settings(&cli.params)?);

    match cli.command {
        Command::State => {
            let mp = settings.model_params()?;
            let mut out = output(&settings)?;
            for sub in settings.subsystems_or(&[Subsystem::AB1C1]) {
                let (rho, z, gap) = sweep::reduced_state(&mp, sub, settings.source())?;
                writeln!(out, "# {sub}  Z = {}", sweep::format_number(z))?;
                if let Some(g) = gap {
                    writeln!(out, "# routes differ by {g:e}; showing the pipeline matrix")?;
                }
                for i in 0..rho.dim() {
                    let row: Vec<String> = (0..rho.dim())
                        .map(|j| {
                            let v = rho.entry(i, j);
                            if v.im == 0.0 {
                                format!("{:>14.10}", v.re)
                            } else {
                                format!("{:>14.10}{:+.10}i", v.re, v.im)
                            }
                        })
                        .collect();
                    writeln!(out, "{}", row.join(" "))?;
                }
            }
            out.flush()?;
        }
        Command::Measure => {
            let mp = settings.model_params()?;
            let search = settings.search();
            let rows = settings
                .subsystems_or(&[Subsystem::AB1C1])
                .into_iter()
                .map(|sub| sweep::evaluate_point(&mp, sub, MeasureSet::BOTH, settings.source(), &search))
                .collect::<Result<Vec<_>>>()?;
            let mut out = output(&settings)?;
            sweep::write_csv(&mut out, &rows)?;
            out.flush()?;
        }
        Command::Sweep { variable } => {
            let variable = match variable {
                Some(v) => v.parse::<SweepVariable>()?,
                None => settings.variable(),
            };
            let spec = SweepSpec {
                variable,
                range: settings.range(),
                fixed: settings.model_params()?,
                curves: Vec::new(),
                subsystems: settings.subsystems_or(&[Subsystem::AB1C1]),
                measures: MeasureSet::BOTH,
                source: settings.source(),
                search: settings.search(),
            };
            let rows = run_sweep(&spec)?;
            let mut out = output(&settings)?;
            sweep::write_csv(&mut out, &rows)?;
            out.flush()?;
        }
        Command::Critical {
            kind,
            bracket,
            target,
            along,
        } => {
            let (lo, hi) = bracket
                .split_once(':')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::Config(format!("bracket {bracket:?} is not lo:hi")))?;
            let subs = settings.subsystems_or(&[Subsystem::AB1C1]);
            let mut out = output(&settings)?;
            for sub in subs {
                let q = CriticalQuery {
                    fixed: settings.model_params()?,
                    subsystem: sub,
                    source: settings.source(),
                    search: settings.search(),
                };
                let result = match kind {
                    CriticalKind::Gtn => find_critical_t(&q, (lo, hi), target),
                    CriticalKind::Gte => {
                        let variable = match along.as_str() {
                            "T" | "t" => DeathVariable::T,
                            "r" => DeathVariable::R,
                            other => return Err(Error::Config(format!("cannot search along {other:?}"))),
                        };
                        find_sudden_death_c(&q, variable, (lo, hi))
                    }
                };
                match result {
                    Ok(x) => writeln!(out, "{sub}: critical value {}", sweep::format_number(x))?,
                    Err(Error::NoCrossing { kind, .. }) => {
                        writeln!(out, "{sub}: no crossing in [{lo}, {hi}] ({kind:?})")?
                    }
                    Err(e) => return Err(e),
                }
            }
            out.flush()?;
        }
        Command::Verify => {
            let report = verify::run_all(settings.seed.unwrap_or(0), &settings.search())?;
            let mut out = output(&settings)?;
            write!(out, "{report}")?;
            out.flush()?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Preset { name } => {
            if name == "list" {
                println!("{}", PRESET_NAMES.join("\n"));
                return Ok(ExitCode::SUCCESS);
            }
            let mut spec = figure_preset(&name)?.spec;
            spec.search = settings.search();
            if let Some(source) = settings.source {
                spec.source = source;
            }
            if let Some(range) = settings.range {
                spec.range = range;
            }
            let rows = run_sweep(&spec)?;
            let mut out = output(&settings)?;
            sweep::write_csv(&mut out, &rows)?;
            out.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
