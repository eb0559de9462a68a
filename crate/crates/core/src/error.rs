use serde_json::json;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Numerical guards (dry, supersonic, bottom contact) abort the computation
/// rather than clamp: the model is only meaningful inside the wet subsonic
/// regime with the solid clear of the bottom.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{field}` must be positive (got {value})")]
    NonPositiveParameter { field: &'static str, value: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dry state: h = {h}{}", location(*.cell))]
    DryState { h: f64, cell: Option<usize> },

    #[error("state is not subsonic: gh - q^2/h^2 = {margin}{}", location(*.cell))]
    NotSubsonic { margin: f64, cell: Option<usize> },

    #[error("radius must be positive (got {r})")]
    NonPositiveRadius { r: f64 },

    #[error("no admissible boundary state at {face}: {reason} (bracket [{lo}, {hi}])")]
    NoWallSolution {
        face: &'static str,
        reason: String,
        lo: f64,
        hi: f64,
    },

    #[error("solid touches the bottom: min h_w = {h_w} at delta = {delta}")]
    BottomContact { delta: f64, h_w: f64 },

    #[error("coupled step diverged at t = {t}: {source}")]
    CouplingDiverged { t: f64, source: Box<Error> },

    #[error(
        "initial data incompatible at order {order}: residual {residual} > tolerance {tolerance}"
    )]
    IncompatibleData {
        order: u8,
        residual: f64,
        tolerance: f64,
    },

    #[error("Picard iteration is not contracting (differences grew up to iteration {iteration})")]
    NonContracting { iteration: usize, history: Vec<f64> },

    #[error("config error at `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("i/o error: {0}")]
    Io(String),
}

fn location(cell: Option<usize>) -> String {
    match cell {
        Some(j) => format!(" (cell {j})"),
        None => String::new(),
    }
}

impl Error {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            reason: reason.into(),
        }
    }

    /// Attaches a cell index to dry/subsonic errors raised by pointwise ops.
    pub fn at_cell(self, j: usize) -> Self {
        match self {
            Error::DryState { h, .. } => Error::DryState { h, cell: Some(j) },
            Error::NotSubsonic { margin, .. } => Error::NotSubsonic {
                margin,
                cell: Some(j),
            },
            other => other,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPositiveParameter { .. } => "NonPositiveParameter",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::DryState { .. } => "DryState",
            Error::NotSubsonic { .. } => "NotSubsonic",
            Error::NonPositiveRadius { .. } => "NonPositiveRadius",
            Error::NoWallSolution { .. } => "NoWallSolution",
            Error::BottomContact { .. } => "BottomContact",
            Error::CouplingDiverged { .. } => "CouplingDiverged",
            Error::IncompatibleData { .. } => "IncompatibleData",
            Error::NonContracting { .. } => "NonContracting",
            Error::Config { .. } => "ConfigError",
            Error::Io(_) => "IoError",
        }
    }

    /// The innermost numerical cause, looking through `CouplingDiverged`.
    pub fn root(&self) -> &Error {
        match self {
            Error::CouplingDiverged { source, .. } => source.root(),
            other => other,
        }
    }

    /// Process exit code: 2 for configuration problems, 3 for numerical aborts.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::NonPositiveParameter { .. } | Error::InvalidGrid(_) => 2,
            Error::Io(_) => 2,
            _ => 3,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "error": self.kind(),
            "message": self.to_string(),
        });
        if let Error::CouplingDiverged { source, .. } = self {
            v["cause"] = json!(source.root().kind());
        }
        v
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
