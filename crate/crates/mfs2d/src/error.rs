use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iteration (Newton, root search, halting scan) failed to converge.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// Invalid geometry: curve leaves the analyticity strip, crosses the
    /// boundary, or a point sits on a parametrization singularity.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A layer-potential eigenvalue vanished (Dirichlet resonance).
    #[error("resonant wavenumber: eigenvalue vanishes at mode m = {m}")]
    Resonance { m: i64 },

    /// Bad experiment configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Numerical failure in linear algebra (non-finite entries, singular
    /// triangular factor).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code per the CLI contract: 2 config, 3 numerical, 4 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
