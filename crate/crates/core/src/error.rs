use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table must have at least one element")]
    EmptyTable,

    #[error("product {x}·{y} = {value} is out of range 0..{n}")]
    OutOfRange {
        x: usize,
        y: usize,
        value: usize,
        n: usize,
    },

    #[error("{0}")]
    NotLatin(String),

    #[error("not a loop: {0}")]
    NotLoop(String),

    #[error("identity must be at index 0 (found at {0}); normalize the table first")]
    IdentityNotNormalized(usize),

    #[error("not a group: {0}")]
    NotGroup(String),

    #[error("not uniquely 2-divisible: {0}")]
    NotUniquelyTwoDivisible(String),

    #[error("element {element} has even order {order}; no unique square root")]
    EvenOrder { element: String, order: usize },

    #[error("permutation has even order {0}; square root is not unique")]
    EvenOrderPermutation(usize),

    #[error("permutations have different degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),

    #[error("closure exceeded cap of {cap} elements (partial size {partial})")]
    ClosureCap { cap: usize, partial: usize },

    #[error("order {order} exceeds the table cap of {cap}; only streaming predicates are available")]
    TableCap { order: usize, cap: usize },

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("not power-associative at element {0}")]
    NotPowerAssociative(String),

    #[error("element sets differ: {0} vs {1} elements")]
    SizeMismatch(usize, usize),

    #[error("invalid subloop: {0}")]
    InvalidSubloop(String),

    #[error("ill-defined quotient: {0}")]
    IllDefinedQuotient(String),

    #[error("closed form is not invertible on H: {0}")]
    NonInvertibleExponent(String),

    #[error("construction invariant violated: {0}")]
    Invariant(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("spec parse error at token `{token}`: {reason}")]
    SpecParse { token: String, reason: String },

    #[error("{path}:{line}: {reason}")]
    TableFormat {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
