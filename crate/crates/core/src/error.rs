use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library. Each variant names the module that produced it
/// so the CLI can report where a run failed.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("[{module}] domain error: {msg}")]
    Domain { module: &'static str, msg: String },

    #[error("[{module}] invalid derivator: {msg}")]
    InvalidDerivator { module: &'static str, msg: String },

    #[error("[stieltjes_integral] quadrature did not converge: estimate {estimate_re:e}{estimate_im:+e}i, error bound {error_bound:e}")]
    Accuracy {
        estimate_re: f64,
        estimate_im: f64,
        error_bound: f64,
    },

    #[error("[first_order] query at t = {t} lies past the truncation time t0 = {t0}")]
    Truncation { t: f64, t0: f64 },

    #[error("[g_derivative] degenerate point t = {t}: no increment of g found")]
    DegeneratePoint { t: f64 },

    #[error("[{module}] characteristic root {root_re}{root_im:+}i gives 1 + lambda*jump = 0 at t = {t}")]
    RootValidation {
        module: &'static str,
        root_re: f64,
        root_im: f64,
        t: f64,
    },

    #[error("[scheme] non-finite state at node {node} (t = {t})")]
    Divergence { node: usize, t: f64 },

    #[error("[cli] configuration error: {0}")]
    Config(String),

    #[error("[cli] i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(module: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            module,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidDerivator {
            module: "derivator",
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
