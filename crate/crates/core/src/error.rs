use thiserror::Error;

/// Errors raised by domain construction and the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// The domain description violates a structural invariant.
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    /// The base point is not natural for the domain.
    #[error("point {re}+{im}i is not natural: p + it is never inside the domain")]
    NotNatural { re: f64, im: f64 },

    /// A query was made at a radius where p + it lies outside the domain.
    #[error("t = {t} is outside the natural domain (t must exceed t0 = {t0})")]
    OutsideNaturalDomain { t: f64, t0: f64 },

    /// A numerical precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The operation is not available for this kind of domain.
    #[error("unsupported domain: {0}")]
    Unsupported(String),

    /// A corpus entry name was not recognised.
    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),

    /// Configuration could not be read or parsed.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by a violated mathematical precondition.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotNatural { .. } | Error::OutsideNaturalDomain { .. } | Error::Precondition(_)
        )
    }
}
