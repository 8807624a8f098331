use thiserror::Error;

use crate::lexer::Pos;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DslError {
    #[error("{line}:{col}: SyntaxError: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: UnknownIdentifier: `{name}`{hint}")]
    UnknownIdentifier { line: usize, col: usize, name: String, hint: String },
    #[error("{line}:{col}: ChartMismatch: {message}")]
    ChartMismatch { line: usize, col: usize, message: String },
    #[error("{line}:{col}: EvaluationError: {message}")]
    Eval { line: usize, col: usize, message: String },
}

impl DslError {
    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        DslError::Syntax { line: pos.line, col: pos.col, message: message.into() }
    }

    pub fn unknown(pos: Pos, name: &str, hint: impl Into<String>) -> Self {
        DslError::UnknownIdentifier { line: pos.line, col: pos.col, name: name.to_string(), hint: hint.into() }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DslError::Syntax { .. } => "SyntaxError",
            DslError::UnknownIdentifier { .. } => "UnknownIdentifier",
            DslError::ChartMismatch { .. } => "ChartMismatch",
            DslError::Eval { .. } => "EvaluationError",
        }
    }
}

/// Failure while evaluating an expression or running a command. Located by
/// the statement that triggered it.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("ChartMismatch: {0}")]
    ChartMismatch(String),
    #[error("{0}")]
    Message(String),
}

impl EvalError {
    pub fn msg(m: impl Into<String>) -> Self {
        EvalError::Message(m.into())
    }

    pub fn at(self, line: usize, col: usize) -> DslError {
        match self {
            EvalError::ChartMismatch(message) => DslError::ChartMismatch { line, col, message },
            EvalError::Message(message) => DslError::Eval { line, col, message },
        }
    }
}

macro_rules! from_display {
    ($($t:ty),*) => {$(
        impl From<$t> for EvalError {
            fn from(e: $t) -> Self {
                let text = e.to_string();
                if text.to_lowercase().contains("chart mismatch") {
                    EvalError::ChartMismatch(text)
                } else {
                    EvalError::Message(text)
                }
            }
        }
    )*};
}

from_display!(
    dj_scalar::ScalarError,
    dj_cartan::GeomError,
    dj_omni::OmniError,
    dj_structures::StructError,
    dj_dolbeault::DolbeaultError
);

pub type EvalResult<T> = Result<T, EvalError>;
