use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("even block size m must be at least 1 (got m = {0})")]
    InvalidSignature(i64),

    #[error("{var} is out of range for gl({m}|{n})")]
    VarOutOfRange { var: String, m: u16, n: u16 },

    #[error("mode {0} not allowed in a non-affine signature")]
    ModeInFiniteSignature(i32),

    #[error("generator index ({i},{j}) out of range for gl({m}|{n})")]
    GeneratorOutOfRange { i: u16, j: u16, m: u16, n: u16 },

    #[error("operation requires {expected} signature")]
    WrongSignatureKind { expected: &'static str },

    #[error("mu = {0} is invalid here: {1}")]
    InvalidMu(String, &'static str),

    #[error("mu = 0 rejected for a positive reachability certificate; use the mu-zero witness")]
    MuZeroRejected,

    #[error("mode window [{lo},{hi}] must satisfy lo <= 0 <= hi")]
    BadModeWindow { lo: i32, hi: i32 },

    #[error("monomial has modes outside the window [{lo},{hi}]")]
    MonomialOutsideWindow { lo: i32, hi: i32 },

    #[error("homogeneous degree {s} is empty for gl(1|{n}): exterior top is {n}")]
    DegreeAboveExteriorTop { s: u32, n: u16 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
