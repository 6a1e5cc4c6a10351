use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is non-finite or outside the range the model accepts.
    #[error("invalid {name} = {value}: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The requested quantity is not defined for this channel (e.g. the
    /// two-user ETW rate with `a > 1`).
    #[error("{what} is not defined here: {reason}")]
    Unsupported { what: &'static str, reason: String },

    /// Bisection was handed an interval without a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("function evaluated to a non-finite value at x = {x}")]
    NonFinite { x: f64 },

    /// Enumeration would exceed the supported size.
    #[error("{what}: {size} exceeds the limit of {limit}")]
    Resource {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid decode subset: {0}")]
    Subset(String),

    #[error("sweep configuration: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::Domain {
            name,
            value,
            reason: "must be finite",
        });
    }
    if value <= 0.0 {
        return Err(Error::Domain {
            name,
            value,
            reason: "must be positive",
        });
    }
    Ok(value)
}
