use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {}", .0.join("; "))]
    Config(Vec<String>),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("solver did not converge after {iterations} iterations (relative residual {residual:.3e}){}", context_suffix(.context))]
    Solver {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
        context: String,
    },

    #[error("grid too coarse: {0}")]
    Resolution(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

fn context_suffix(c: &str) -> String {
    if c.is_empty() {
        String::new()
    } else {
        format!(" while {c}")
    }
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(vec![msg.into()])
    }

    /// Attach a description of the failing task to a solver error.
    pub fn with_context(self, ctx: impl Into<String>) -> Self {
        match self {
            Error::Solver { iterations, residual, history, .. } => Error::Solver {
                iterations,
                residual,
                history,
                context: ctx.into(),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
