use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes do not fit the operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("not a d²-list: {0} matrices")]
    NotSquareCount(usize),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("frames do not commute (residual {0:.3e})")]
    NonCommuting(f64),
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("input not a unital *-homomorphism (residual {0:.3e})")]
    NotStarHom(f64),
    #[error("not a {0}-subalgebra: {1}")]
    NotKSubalgebra(usize, String),
    #[error("not a 𝒟-morphism (residual {0:.3e})")]
    NotDMorphism(f64),
    #[error("not a 𝒞-morphism (residual {0:.3e})")]
    NotCMorphism(f64),
    #[error("face index {index} out of range for a chain of length {len}")]
    FaceIndex { index: usize, len: usize },
    #[error("ill-conditioned index: singular value {sigma:.3e} near cutoff {cutoff:.3e}")]
    IllConditioned { sigma: f64, cutoff: f64 },
    #[error("inconsistent stages: {0}")]
    InconsistentStages(String),
    #[error("ill-defined group homomorphism: {0}")]
    IllDefinedHom(String),
    #[error("not stabilized within truncation")]
    NotStabilized,
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

impl Error {
    /// True for errors caused by malformed or mis-sized input rather than by
    /// a mathematical property failing.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_) | Error::Format(_) | Error::NotSquareCount(_) | Error::FaceIndex { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
