use adjlab_core::ideal::IdealError;
use adjlab_core::jets::JetError;
use adjlab_core::mld::MldError;
use adjlab_core::poly::PolyError;
use adjlab_core::singularity::SingularityError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown scenario or file: {0}")]
    Unknown(String),
    #[error("computation failed: {0}")]
    Engine(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn is_budget(&self) -> bool {
        matches!(self, HarnessError::Budget(_))
    }

    /// Exit status for errors that abort a run.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

macro_rules! engine_error {
    ($($t:ty),*) => {$(
        impl From<$t> for HarnessError {
            fn from(e: $t) -> Self {
                if e.is_budget() {
                    HarnessError::Budget(e.to_string())
                } else {
                    HarnessError::Engine(e.to_string())
                }
            }
        }
    )*};
}

engine_error!(IdealError, JetError, MldError, SingularityError);

impl From<PolyError> for HarnessError {
    fn from(e: PolyError) -> Self {
        HarnessError::Invalid(e.to_string())
    }
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        HarnessError::Parse {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        }
    }
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}
