use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {0} is outside the supported range 2 <= p < 2^32")]
    CharacteristicOutOfRange(u64),

    #[error("input error: {0}")]
    Input(String),

    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("generator {index} ({text}) is not homogeneous: term degrees {degrees:?}")]
    Inhomogeneous {
        index: usize,
        text: String,
        degrees: Vec<u32>,
    },

    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("ideal is not m-primary: no pure power of `{variable}` among the lead terms")]
    NotMPrimary { variable: String },

    #[error("horizon T = {given} is too small; use T >= {needed}")]
    HorizonTooSmall { given: usize, needed: usize },

    #[error("cutoff {cutoff} needs horizon T >= {needed} (have {given})")]
    CutoffTooLarge { cutoff: i64, given: i64, needed: i64 },

    #[error("no m-primary general reduction found in F_{p} after {attempts} attempts; use a larger prime")]
    FieldTooSmall { p: u64, attempts: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
