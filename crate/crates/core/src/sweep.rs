//! Parameter sweeps, critical-point root finders and figure presets.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{CrossingKind, Error, Result};
use crate::measures::{measure, MeasureSet, SearchConfig, LOCAL_BOUND};
use crate::noise::FilterParams;
use crate::reduced::{closed_form_with_norm, max_abs_diff, pipeline, ModelParams, Subsystem};

/// Largest entrywise gap tolerated between the two routes when
/// `source = both`.
pub const ROUTE_TOL: f64 = 1e-9;
/// Stand-in for `T → ∞`, in units of `ω`.
pub const ASYMPTOTIC_T: f64 = 1e6;
/// Root finders stop once the residual, or the bracket, is this small.
pub const ROOT_TOL: f64 = 1e-8;
pub const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    T,
    R,
    P,
    F,
    Alpha,
    Omega,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::T => "T",
            SweepVariable::R => "r",
            SweepVariable::P => "p",
            SweepVariable::F => "f",
            SweepVariable::Alpha => "alpha",
            SweepVariable::Omega => "omega",
        }
    }

    /// Copy of `mp` with this variable set to `value`.
    pub fn apply(self, mp: &ModelParams, value: f64) -> ModelParams {
        let mut out = *mp;
        match self {
            SweepVariable::T => out.temperature = value,
            SweepVariable::R => out.r = value,
            SweepVariable::P => out.p = value,
            SweepVariable::F => out.filter = FilterParams::Active(value),
            SweepVariable::Alpha => out.alpha = value,
            SweepVariable::Omega => out.omega = value,
        }
        out
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "T" | "t" => Ok(SweepVariable::T),
            "r" => Ok(SweepVariable::R),
            "p" => Ok(SweepVariable::P),
            "f" => Ok(SweepVariable::F),
            "alpha" => Ok(SweepVariable::Alpha),
            "omega" | "omega_k" => Ok(SweepVariable::Omega),
            other => Err(Error::Config(format!("unknown sweep variable {other:?}"))),
        }
    }
}

/// Inclusive grid `start, start + step, …, stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    /// A single point is allowed (`start == stop`).
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) || start > stop {
            return Err(Error::Config(format!("range needs start <= stop, got {start}:{stop}")));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::Config(format!("range step must be positive, got {step}")));
        }
        Ok(Range { start, stop, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let span = (self.stop - self.start) / self.step;
        // absorb rounding so that 0:3:0.01 ends exactly on 3
        let n = (span + 1e-9).floor() as usize;
        let mut pts: Vec<f64> = (0..=n).map(|i| self.start + i as f64 * self.step).collect();
        if let Some(last) = pts.last_mut() {
            if (*last - self.stop).abs() <= 1e-9 * self.step {
                *last = self.stop;
            }
        }
        pts
    }
}

impl FromStr for Range {
    type Err = Error;

    /// `start:stop:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!("range {s:?} is not start:stop:step")));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number {t:?} in range {s:?}")))
        };
        Range::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

/// Which route produces the reduced matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Source {
    /// Kraus evolution plus partial trace.
    #[default]
    Pipeline,
    ClosedForm,
    /// Both routes; rows where they disagree are flagged.
    Both,
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "pipeline" => Ok(Source::Pipeline),
            "closed" | "closed_form" => Ok(Source::ClosedForm),
            "both" => Ok(Source::Both),
            other => Err(Error::Config(format!("unknown source {other:?}"))),
        }
    }
}

/// Per-curve overrides of the fixed parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Curve {
    pub r: Option<f64>,
    pub p: Option<f64>,
    pub filter: Option<FilterParams>,
}

impl Curve {
    pub fn apply(&self, mp: &ModelParams) -> ModelParams {
        let mut out = *mp;
        if let Some(r) = self.r {
            out.r = r;
        }
        if let Some(p) = self.p {
            out.p = p;
        }
        if let Some(f) = self.filter {
            out.filter = f;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub range: Range,
    /// Values of the fields that are not swept.
    pub fixed: ModelParams,
    /// One curve per entry; an empty list means a single curve on `fixed`.
    pub curves: Vec<Curve>,
    pub subsystems: Vec<Subsystem>,
    pub measures: MeasureSet,
    pub source: Source,
    pub search: SearchConfig,
}

impl SweepSpec {
    /// Single curve on the default T grid.
    pub fn over_temperature(fixed: ModelParams, subsystems: Vec<Subsystem>) -> Self {
        SweepSpec {
            variable: SweepVariable::T,
            range: default_t_range(),
            fixed,
            curves: Vec::new(),
            subsystems,
            measures: MeasureSet::BOTH,
            source: Source::Pipeline,
            search: SearchConfig::default(),
        }
    }

    /// Parameter tuples in output order: curve, then swept value.
    pub fn grid(&self) -> Vec<(usize, f64, ModelParams)> {
        let single = [Curve::default()];
        let curves: &[Curve] = if self.curves.is_empty() { &single } else { &self.curves };
        let points = self.range.points();
        curves
            .iter()
            .enumerate()
            .flat_map(|(ci, curve)| {
                points
                    .iter()
                    .map(move |&v| (ci, v, self.variable.apply(&curve.apply(&self.fixed), v)))
            })
            .collect()
    }
}

/// `0 ≤ T ≤ 3` in steps of 0.01.
pub fn default_t_range() -> Range {
    Range {
        start: 0.0,
        stop: 3.0,
        step: 0.01,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub params: ModelParams,
    pub subsystem: Subsystem,
    pub s: Option<f64>,
    pub c: Option<f64>,
    /// Filter success probability, 1 with the filter off.
    pub z: f64,
    /// Route gap above [`ROUTE_TOL`] when both routes ran; `S` and `C` are
    /// then written as NaN.
    pub discrepancy: Option<f64>,
}

impl ResultRow {
    pub fn is_flagged(&self) -> bool {
        self.discrepancy.is_some()
    }
}

/// Reduced state of `sub` at `mp` from the chosen route, its `Z`, and the
/// route gap when both ran.
pub fn reduced_state(
    mp: &ModelParams,
    sub: Subsystem,
    source: Source,
) -> Result<(crate::qcore::DensityMatrix, f64, Option<f64>)> {
    let closed = || -> Result<(crate::qcore::DensityMatrix, f64)> {
        let (rho, z) = closed_form_with_norm(sub, mp)?;
        // with the filter off the forms are evaluated at f = 1/2
        let z = if mp.filter == FilterParams::Off { 1.0 } else { z };
        Ok((rho, z))
    };
    match source {
        Source::Pipeline => pipeline(mp, sub).map(|(rho, z)| (rho, z, None)),
        Source::ClosedForm => closed().map(|(rho, z)| (rho, z, None)),
        Source::Both => {
            let (rho, z) = pipeline(mp, sub)?;
            let (other, _) = closed()?;
            let gap = max_abs_diff(rho.entries(), other.entries());
            Ok((rho, z, (gap > ROUTE_TOL).then_some(gap)))
        }
    }
}

/// One row: measures of `sub` at `mp`.
pub fn evaluate_point(
    mp: &ModelParams,
    sub: Subsystem,
    which: MeasureSet,
    source: Source,
    search: &SearchConfig,
) -> Result<ResultRow> {
    let (rho, z, discrepancy) = reduced_state(mp, sub, source)?;
    let (s, c) = if discrepancy.is_some() {
        (which.s.then_some(f64::NAN), which.c.then_some(f64::NAN))
    } else {
        let m = measure(&rho, which, search)?;
        (m.s, m.c)
    };
    Ok(ResultRow {
        params: *mp,
        subsystem: sub,
        s,
        c,
        z,
        discrepancy,
    })
}

/// Evaluates every grid point and subsystem, ordered by curve, swept value
/// and subsystem. Points run in parallel; the order does not depend on
/// scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ResultRow>> {
    if spec.subsystems.is_empty() {
        return Err(Error::Config("sweep needs at least one subsystem".into()));
    }
    let tasks: Vec<(f64, ModelParams, Subsystem)> = spec
        .grid()
        .into_iter()
        .flat_map(|(_, v, mp)| spec.subsystems.iter().map(move |&sub| (v, mp, sub)))
        .collect();
    tasks
        .par_iter()
        .map(|&(v, mp, sub)| {
            evaluate_point(&mp, sub, spec.measures, spec.source, &spec.search).map_err(|e| {
                Error::AtGridPoint {
                    variable: spec.variable.name(),
                    value: v,
                    source: Box::new(e),
                }
            })
        })
        .collect()
}

pub const CSV_HEADER: &str = "T,alpha,omega,r,p,f,subsystem,S,C,Z";

/// 12 significant digits; NaN and missing values are written as `NaN` and
/// an empty field.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let s = format!("{:.11e}", v);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, v);
        trim_zeros(&fixed)
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn csv_line(row: &ResultRow) -> String {
    let mp = &row.params;
    let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        format_number(mp.temperature),
        format_number(mp.alpha),
        format_number(mp.omega),
        format_number(mp.r),
        format_number(mp.p),
        format_number(mp.filter.csv_value()),
        row.subsystem.tag(),
        opt(row.s),
        opt(row.c),
        format_number(row.z),
    )
}

/// Header plus one LF-terminated line per row.
pub fn write_csv<W: Write>(mut out: W, rows: &[ResultRow]) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", csv_line(row))?;
    }
    Ok(())
}

pub fn to_csv_string(rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

/// Common setup of the root finders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalQuery {
    pub fixed: ModelParams,
    pub subsystem: Subsystem,
    pub source: Source,
    pub search: SearchConfig,
}

impl CriticalQuery {
    pub fn new(fixed: ModelParams, subsystem: Subsystem) -> Self {
        CriticalQuery {
            fixed,
            subsystem,
            source: Source::Pipeline,
            search: SearchConfig::default(),
        }
    }

    fn value(&self, mp: &ModelParams, which: MeasureSet) -> Result<f64> {
        let row = evaluate_point(mp, self.subsystem, which, self.source, &self.search)?;
        let v = if which.s { row.s } else { row.c };
        match v {
            Some(v) if !v.is_nan() => Ok(v),
            _ => Err(Error::InvalidState(format!(
                "routes disagree by {:e} at this point",
                row.discrepancy.unwrap_or(f64::NAN)
            ))),
        }
    }
}

/// Hawking temperature in `bracket` where `S` crosses `target` (4 for the
/// death of nonlocality), by bisection.
///
/// Fails with [`Error::NoCrossing`] when `S − target` has the same sign at
/// both ends: `AlwaysBelow` means nonlocality is already absent,
/// `AlwaysAbove` that it survives the whole bracket.
pub fn find_critical_t(q: &CriticalQuery, bracket: (f64, f64), target: f64) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) {
        return Err(Error::Config(format!("bracket [{lo}, {hi}] is empty")));
    }
    let g = |t: f64| -> Result<f64> {
        let v = q.value(&q.fixed.with_temperature(t), MeasureSet::S_ONLY)?;
        Ok(v - target)
    };
    let (g_lo, g_hi) = (g(lo)?, g(hi)?);
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        let kind = if g_lo < 0.0 {
            CrossingKind::AlwaysBelow
        } else {
            CrossingKind::AlwaysAbove
        };
        return Err(Error::NoCrossing { lo, hi, kind });
    }
    let lo_sign = g_lo.signum();
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..MAX_BISECTIONS {
        mid = 0.5 * (lo + hi);
        let g_mid = g(mid)?;
        if g_mid.abs() <= ROOT_TOL || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if g_mid.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// Variable for [`find_sudden_death_c`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeathVariable {
    T,
    R,
}

/// Boundary of `{C > 0}` inside `bracket`, located to [`ROOT_TOL`].
///
/// `C` must be positive at one end and exactly zero at the other; otherwise
/// [`Error::NoCrossing`] reports `AlwaysAbove` (no death) or `AlwaysBelow`
/// (no entanglement anywhere).
pub fn find_sudden_death_c(q: &CriticalQuery, variable: DeathVariable, bracket: (f64, f64)) -> Result<f64> {
    let (lo, hi) = bracket;
    if !(lo < hi) {
        return Err(Error::Config(format!("bracket [{lo}, {hi}] is empty")));
    }
    let alive = |x: f64| -> Result<bool> {
        let mp = match variable {
            DeathVariable::T => q.fixed.with_temperature(x),
            DeathVariable::R => SweepVariable::R.apply(&q.fixed, x),
        };
        Ok(q.value(&mp, MeasureSet::C_ONLY)? > 0.0)
    };
    let (a_lo, a_hi) = (alive(lo)?, alive(hi)?);
    if a_lo == a_hi {
        let kind = if a_lo {
            CrossingKind::AlwaysAbove
        } else {
            CrossingKind::AlwaysBelow
        };
        return Err(Error::NoCrossing { lo, hi, kind });
    }
    // keep `living` on the side where C > 0
    let (mut living, mut dead) = if a_lo { (lo, hi) } else { (hi, lo) };
    for _ in 0..MAX_BISECTIONS {
        if (dead - living).abs() <= ROOT_TOL {
            break;
        }
        let mid = 0.5 * (living + dead);
        if alive(mid)? {
            living = mid;
        } else {
            dead = mid;
        }
    }
    Ok(0.5 * (living + dead))
}

/// A named figure recipe.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub spec: SweepSpec,
}

pub const PRESET_NAMES: [&str; 19] = [
    "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig5a",
    "fig5b", "fig6a", "fig6b", "fig7a", "fig7b", "fig8a", "fig8b", "fig9a", "fig9b",
];

/// Sweep recipe behind each figure panel: `T` over the default grid with
/// `ω = 1`, `α = √2/2`, one curve per decoherence strength or filter setting.
pub fn figure_preset(name: &str) -> Result<Preset> {
    let key = PRESET_NAMES
        .iter()
        .copied()
        .find(|n| n.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    let by_r = |p: f64| -> Vec<Curve> {
        [0.0, 0.4, 0.7]
            .iter()
            .map(|&r| Curve {
                r: Some(r),
                p: Some(p),
                filter: Some(FilterParams::Off),
            })
            .collect()
    };
    let by_f = |r: f64, p: f64, f: f64| -> Vec<Curve> {
        [FilterParams::Off, FilterParams::Active(f)]
            .iter()
            .map(|&filter| Curve {
                r: Some(r),
                p: Some(p),
                filter: Some(filter),
            })
            .collect()
    };
    use Subsystem::*;
    let (sub, measures, curves) = match key {
        "fig2a" => (AB1C1, MeasureSet::S_ONLY, by_r(1.0)),
        "fig2b" => (AB1C1, MeasureSet::C_ONLY, by_r(1.0)),
        "fig2c" => (AB1C1, MeasureSet::C_ONLY, by_r(0.8)),
        "fig3a" => (AB1C1, MeasureSet::S_ONLY, by_f(0.4, 1.0, 0.7)),
        "fig3b" => (AB1C1, MeasureSet::S_ONLY, by_f(0.7, 1.0, 0.85)),
        "fig3c" => (AB1C1, MeasureSet::C_ONLY, by_f(0.7, 1.0, 0.7)),
        "fig3d" => (AB1C1, MeasureSet::C_ONLY, by_f(0.7, 0.8, 0.75)),
        "fig4a" => (AB1B2, MeasureSet::S_ONLY, by_r(1.0)),
        "fig4b" => (AB1B2, MeasureSet::C_ONLY, by_r(1.0)),
        "fig5a" => (AB1B2, MeasureSet::S_ONLY, by_f(0.7, 1.0, 0.8)),
        "fig5b" => (AB1B2, MeasureSet::C_ONLY, by_f(0.7, 1.0, 0.8)),
        "fig6a" => (AB2C2, MeasureSet::S_ONLY, by_r(1.0)),
        "fig6b" => (AB2C2, MeasureSet::C_ONLY, by_r(1.0)),
        "fig7a" => (AB2C2, MeasureSet::S_ONLY, by_f(0.4, 1.0, 0.9)),
        "fig7b" => (AB2C2, MeasureSet::C_ONLY, by_f(0.7, 1.0, 0.8)),
        "fig8a" => (AB1C2, MeasureSet::S_ONLY, by_r(1.0)),
        "fig8b" => (AB1C2, MeasureSet::C_ONLY, by_r(1.0)),
        "fig9a" => (AB1C2, MeasureSet::S_ONLY, by_f(0.4, 1.0, 0.9)),
        "fig9b" => (AB1C2, MeasureSet::C_ONLY, by_f(0.7, 1.0, 0.8)),
        _ => unreachable!("name drawn from PRESET_NAMES"),
    };
    let mut spec = SweepSpec::over_temperature(ModelParams::default(), vec![sub]);
    spec.curves = curves;
    spec.measures = measures;
    Ok(Preset { name: key, spec })
}

/// Whether nonlocality is present, `S > 4`.
pub fn is_nonlocal(s: f64) -> bool {
    s > LOCAL_BOUND
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::S_MAX;

    #[test]
    fn range_points() {
        let pts = default_t_range().points();
        assert_eq!(pts.len(), 301);
        assert_eq!(pts[0], 0.0);
        assert_eq!(*pts.last().unwrap(), 3.0);
        assert_eq!(Range::new(0.0, 0.0, 1.0).unwrap().points(), vec![0.0]);
        assert!(Range::new(1.0, 0.0, 0.1).is_err());
        assert!(Range::new(0.0, 1.0, 0.0).is_err());
        assert_eq!("0:1:0.5".parse::<Range>().unwrap().points(), vec![0.0, 0.5, 1.0]);
        assert!("0:1".parse::<Range>().is_err());
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(-1.0), "-1");
        assert_eq!(format_number(S_MAX), "5.65685424949");
        assert_eq!(format_number(0.01), "0.01");
        assert_eq!(format_number(1e6), "1000000");
        assert_eq!(format_number(1.5e-9), "1.5e-9");
        assert_eq!(format_number(f64::NAN), "NaN");
    }

    #[test]
    fn ghz_anchor_row() {
        let mut spec = SweepSpec::over_temperature(ModelParams::default(), vec![Subsystem::AB1C1]);
        spec.range = Range::new(0.0, 0.0, 1.0).unwrap();
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].s.unwrap() - S_MAX).abs() < 1e-12);
        assert!((rows[0].c.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(
            to_csv_string(&rows),
            "T,alpha,omega,r,p,f,subsystem,S,C,Z\n0,0.707106781187,1,0,1,-1,AB1C1,5.65685424949,1,1\n"
        );
    }

    #[test]
    fn row_order_is_curve_value_subsystem() {
        let mut spec = SweepSpec::over_temperature(
            ModelParams::default(),
            vec![Subsystem::AB1C1, Subsystem::AB2C2],
        );
        spec.range = Range::new(0.0, 0.2, 0.1).unwrap();
        spec.curves = vec![
            Curve { r: Some(0.0), ..Default::default() },
            Curve { r: Some(0.5), ..Default::default() },
        ];
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[1].subsystem, Subsystem::AB2C2);
        assert_eq!(rows[2].params.temperature, 0.1);
        assert_eq!(rows[6].params.r, 0.5);
    }

    #[test]
    fn both_routes_flag_disagreement() {
        let mp = ModelParams {
            temperature: 1.0,
            r: 0.3,
            ..Default::default()
        };
        let ok = evaluate_point(&mp, Subsystem::AB1C1, MeasureSet::BOTH, Source::Both, &SearchConfig::default())
            .unwrap();
        assert!(!ok.is_flagged());
        let bad = evaluate_point(&mp, Subsystem::AB1B2, MeasureSet::BOTH, Source::Both, &SearchConfig::default())
            .unwrap();
        assert!(bad.is_flagged());
        assert!(bad.s.unwrap().is_nan());
    }

    #[test]
    fn annihilation_names_grid_point() {
        let fixed = ModelParams {
            alpha: 0.0,
            filter: FilterParams::Active(1e-16),
            ..Default::default()
        };
        let mut spec = SweepSpec::over_temperature(fixed, vec![Subsystem::AB1C1]);
        spec.range = Range::new(0.0, 0.0, 1.0).unwrap();
        match run_sweep(&spec) {
            Err(Error::AtGridPoint { variable: "T", value, source }) => {
                assert_eq!(value, 0.0);
                assert!(matches!(*source, Error::FilterAnnihilation { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn critical_temperature_brackets() {
        let q = CriticalQuery::new(ModelParams::default(), Subsystem::AB1C1);
        let tc = find_critical_t(&q, (0.0, 10.0), 4.0).unwrap();
        let s = |t: f64| {
            evaluate_point(&q.fixed.with_temperature(t), q.subsystem, MeasureSet::S_ONLY, q.source, &q.search)
                .unwrap()
                .s
                .unwrap()
        };
        assert!((s(tc) - 4.0).abs() <= ROOT_TOL);
        assert!(s(tc - 1e-3) > 4.0 && s(tc + 1e-3) < 4.0);

        let weak = CriticalQuery::new(ModelParams { r: 0.7, ..Default::default() }, Subsystem::AB1C1);
        assert!(matches!(
            find_critical_t(&weak, (0.0, 10.0), 4.0),
            Err(Error::NoCrossing { kind: CrossingKind::AlwaysBelow, .. })
        ));
    }

    #[test]
    fn sudden_death_requires_product_free_state() {
        for alpha in [0.0, 1.0] {
            let q = CriticalQuery::new(ModelParams { alpha, r: 0.7, p: 0.8, ..Default::default() }, Subsystem::AB1C1);
            assert!(matches!(
                find_sudden_death_c(&q, DeathVariable::T, (0.0, 10.0)),
                Err(Error::NoCrossing { kind: CrossingKind::AlwaysBelow, .. })
            ));
        }
    }

    #[test]
    fn presets() {
        let p = figure_preset("fig2a").unwrap();
        assert_eq!(p.spec.fixed.p, 1.0);
        assert_eq!(p.spec.subsystems, vec![Subsystem::AB1C1]);
        assert_eq!(figure_preset("fig6a").unwrap().spec.subsystems, vec![Subsystem::AB2C2]);
        let b = figure_preset("FIG3B").unwrap();
        assert!(b.spec.curves.iter().all(|c| c.r == Some(0.7)));
        assert_eq!(b.spec.curves[1].filter, Some(FilterParams::Active(0.85)));
        assert_eq!(b.spec.curves[0].filter, Some(FilterParams::Off));
        assert!(matches!(figure_preset("fig10a"), Err(Error::UnknownPreset(_))));
        for name in PRESET_NAMES {
            assert_eq!(figure_preset(name).unwrap().name, name);
        }
    }
}
