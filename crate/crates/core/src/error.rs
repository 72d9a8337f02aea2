use thiserror::Error;

use crate::qcore::ModeLabel;

pub type Result<T> = std::result::Result<T, Error>;

/// Sign of the residual at both bracket ends when a root finder finds no
/// crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    /// The quantity is below the target across the whole bracket (for S:
    /// nonlocality is already absent).
    AlwaysBelow,
    /// The quantity stays above the target across the whole bracket (for S:
    /// nonlocality never dies inside the bracket; for C: no sudden death).
    AlwaysAbove,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("mode {0} appears in both operands")]
    LabelCollision(ModeLabel),

    #[error("label error: {0}")]
    Label(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("entry ({row}, {col}) has modulus {magnitude:e} outside the X pattern")]
    NotXForm {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("{name} = {value} outside its domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("relaxation rate formula gives gamma = {gamma} < 0")]
    FormulaDomain { gamma: f64 },

    #[error("filter removed all weight (Z = {z:e})")]
    FilterAnnihilation { z: f64 },

    #[error("no crossing inside bracket [{lo}, {hi}]: {kind:?}")]
    NoCrossing {
        lo: f64,
        hi: f64,
        kind: CrossingKind,
    },

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("at {variable} = {value}: {source}")]
    AtGridPoint {
        variable: &'static str,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }
}
