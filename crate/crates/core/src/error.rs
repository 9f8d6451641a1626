use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A non-finite value appeared while composing slit maps.
    #[error("trace evaluation failed at step {step}: {reason}")]
    Evaluation { step: usize, reason: String },

    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("point {0} is a pole of the conformal map")]
    Pole(num_complex::Complex64),

    #[error("could not certify a simple approximation: segments {first} and {second} intersect")]
    NotSimple { first: usize, second: usize },

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("{failed} of {total} simulated paths failed")]
    TooManyFailures { failed: u64, total: u64 },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
