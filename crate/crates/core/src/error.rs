use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("context mismatch: (q={q1}, m={m1}) vs (q={q2}, m={m2})")]
    ContextMismatch {
        q1: usize,
        m1: usize,
        q2: usize,
        m2: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("enumeration exceeded cap of {cap} elements")]
    Overflow { cap: usize },

    /// A required hypothesis does not hold for the given input. Expected,
    /// reportable outcome rather than a bug.
    #[error("hypothesis violated: {0}")]
    Hypothesis(Hypothesis),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Hypothesis {
    #[error("induced action on coordinates is not transitive")]
    NotDeltaTransitive,
    #[error("component at coordinate {delta} is not transitive")]
    ComponentIntransitive { delta: usize },
    #[error("component at coordinate {delta} is not 2-transitive")]
    ComponentNotTwoTransitive { delta: usize },
    #[error("gamma and nu must be distinct (both {0})")]
    EqualSymbols(usize),
    #[error("code has a single word, minimum distance undefined")]
    SingletonCode,
    #[error("generator {index} is not an automorphism of the code")]
    NotAutomorphism { index: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_hypothesis(&self) -> bool {
        matches!(self, Error::Hypothesis(_))
    }
}

impl From<Hypothesis> for Error {
    fn from(h: Hypothesis) -> Self {
        Error::Hypothesis(h)
    }
}
