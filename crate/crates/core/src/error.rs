use thiserror::Error;

/// Errors raised by the models and estimators.
///
/// Domain violations are reported eagerly instead of propagating NaN.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{param} = {value} is outside its domain ({expected})")]
    Domain {
        param: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("degenerate signal: {0}")]
    DegenerateSignal(&'static str),

    #[error("row {row}: {message}")]
    Format { row: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(param: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            param,
            value,
            expected,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Returns `Ok(x)` if `ok(x)` holds and `x` is not NaN, otherwise a domain error.
pub(crate) fn ensure<F: crate::Scalar>(
    x: F,
    param: &'static str,
    expected: &'static str,
    ok: impl FnOnce(F) -> bool,
) -> Result<F> {
    if !x.is_nan() && ok(x) {
        Ok(x)
    } else {
        Err(Error::domain(param, x.as_f64(), expected))
    }
}
