//! Genuine tripartite nonlocality (maximal Svetlichny value `S`) and genuine
//! tripartite entanglement (genuine tripartite concurrence `C`).
//!
//! X states use closed forms. For other states `S` is exact when Alice's
//! qubit carries no coherence ([`svetlichny_classical_first`]) and comes from
//! a multi-start search otherwise; `C` falls back on a separability
//! certificate (see [`genuine_concurrence`]).

mod concurrence;
mod svetlichny;

pub use concurrence::{classical_qubit, genuine_concurrence, gtc_pure, gtc_x, qubit_is_classical};
pub use svetlichny::{
    correlation_tensor, svetlichny_bruteforce, svetlichny_expectation, svetlichny_operator,
    svetlichny_classical_first, svetlichny_value, svetlichny_x, CorrelationTensor, Direction, SearchConfig, SvetlichnySearch,
    SvetlichnySetting,
};

use crate::error::Result;
use crate::qcore::DensityMatrix;

/// Tsirelson-type maximum `4√2` of the Svetlichny value.
pub const S_MAX: f64 = 4.0 * std::f64::consts::SQRT_2;
/// Largest Svetlichny value compatible with hybrid local–nonlocal models.
pub const LOCAL_BOUND: f64 = 4.0;
/// Off-X entries below this are treated as zero when choosing closed forms.
pub const X_FORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MeasureSet {
    pub s: bool,
    pub c: bool,
}

impl MeasureSet {
    pub const BOTH: MeasureSet = MeasureSet { s: true, c: true };
    pub const S_ONLY: MeasureSet = MeasureSet { s: true, c: false };
    pub const C_ONLY: MeasureSet = MeasureSet { s: false, c: true };
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    pub s: Option<f64>,
    pub c: Option<f64>,
    /// Optimal directions, when the method that produced `S` yields them.
    pub best_setting: Option<SvetlichnySetting>,
}

impl MeasureResult {
    pub fn has_gtn(&self) -> Option<bool> {
        self.s.map(|s| s > LOCAL_BOUND)
    }
}

/// Evaluates the requested measures on a three-qubit state.
pub fn measure(rho: &DensityMatrix, which: MeasureSet, search: &SearchConfig) -> Result<MeasureResult> {
    let (s, best_setting) = if which.s {
        let v = svetlichny_value(rho, search)?;
        (Some(v.value), v.setting)
    } else {
        (None, None)
    };
    let c = if which.c {
        Some(genuine_concurrence(rho)?)
    } else {
        None
    };
    Ok(MeasureResult { s, c, best_setting })
}
