use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("t = {t} is outside the validated range |t| <= {t_max}")]
    Range { t: f64, t_max: f64 },

    #[error("bad reduction at p = {0}")]
    BadReduction(u64),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("density inversion refused: {0}")]
    InsufficientDecay(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
