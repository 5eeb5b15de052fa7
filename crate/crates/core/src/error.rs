use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve bound {bound} is outside 1..={cap}")]
    Bound { bound: u64, cap: u64 },

    #[error("invalid sieve cap `{0}`: expected a positive integer")]
    SieveCap(String),

    #[error("argument {arg} exceeds table bound {bound}")]
    Range { arg: u64, bound: u64 },

    #[error("{value} is not a class representative for n = {n}")]
    Domain { n: u64, value: u64 },

    #[error("gap ratio is undefined when S has a single element")]
    UndefinedRatio,

    #[error(
        "algebra vectors belong to different quotient structures (n = {left} and n = {right})"
    )]
    StructureMismatch { left: u64, right: u64 },

    #[error("expected length {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("oracle refuses matrices larger than {cap} (got {size})")]
    OracleSize { size: usize, cap: usize },

    #[error("tolerance must be positive and finite")]
    Tolerance,

    #[error("zero vector has no Rayleigh quotient")]
    ZeroVector,

    #[error("n = {n} is above the size limit {limit}")]
    TooLarge { n: u64, limit: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("no columns requested")]
    NoColumns,

    #[error("column `{0}` not found")]
    MissingColumn(String),

    #[error("malformed sweep table: {0}")]
    Table(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
