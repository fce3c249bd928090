//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("singular model: discriminant is zero")]
    SingularModel,

    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),

    #[error("factors are not pairwise coprime mod {0}; squarefree preprocessing needed")]
    NonCoprimeFactors(u64),

    #[error("prime {0} is outside the supported range {{2,3,5,7}}")]
    UnsupportedPrime(u64),

    #[error("bad reduction at {0} where good reduction is required")]
    BadReduction(u64),

    #[error("good or wrong-type reduction at {l}: expected {expected}")]
    WrongReductionType { l: u64, expected: &'static str },

    #[error("model is not minimal at {0}")]
    NotMinimal(u64),

    #[error("not multiplicative: v_{l}(j) = {vj} is non-negative")]
    NotMultiplicative { l: u64, vj: i64 },

    #[error("requested absolute precision {requested} does not exceed v_l(q) = {m}")]
    InsufficientRequestedPrecision { requested: u32, m: u32 },

    #[error("insufficient precision on operand `{0}`")]
    InsufficientPrecision(&'static str),

    #[error("p = {p} does not divide l - 1 = {lm1}; the power test is not defined")]
    PowerTestUndefined { p: u64, lm1: u64 },

    #[error("prime exceeds enumeration cap {cap}: l = {l}")]
    PrimeTooLarge { l: u64, cap: u64 },

    #[error("coefficients too large to minimize exactly")]
    UnfactorableInvariants,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("curve {label}: {source}")]
    Labeled {
        label: String,
        #[source]
        source: Box<Error>,
    },

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn with_label(self, label: &str) -> Error {
        Error::Labeled {
            label: label.to_owned(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
