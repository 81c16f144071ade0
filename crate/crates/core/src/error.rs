use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unparsable group spec `{0}`")]
    BadSpec(String),
    #[error("group order {order} exceeds the configured maximum {max}")]
    TooLarge { order: usize, max: usize },
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("malformed table file: {0}")]
    Malformed(String),
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("row {row} contains {value}, outside 0..{order}")]
    EntryOutOfRange { row: usize, value: usize, order: usize },
    #[error("row {row} is not a permutation")]
    RowNotPermutation { row: usize },
    #[error("column {column} is not a permutation")]
    ColumnNotPermutation { column: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails: ({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("arrangement has a repeated coordinate {0}")]
    RepeatedCoordinate(usize),
    #[error("coordinate {element} out of range for a group of order {order}")]
    OutOfRange { element: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(usize),
    #[error("arrangement has length {got}, order has arity {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Tuple(#[from] TupleError),
    #[error("order has {got} subset bits, expected C({m},{n}) = {expected}")]
    WrongBitCount { m: usize, n: usize, expected: usize, got: usize },
    #[error("order was built for `{order_group}` (order {order_m}), not `{group}` (order {group_m})")]
    GroupMismatch { order_group: String, order_m: usize, group: String, group_m: usize },
    #[error("literal enumeration needs {work} steps, above the cap {cap}")]
    CapExceeded { work: u128, cap: u128 },
    #[error("trivial order needs n > |G| (n = {n}, |G| = {m})")]
    NotTrivialArity { n: usize, m: usize },
    #[error("seed subset {0:?} is not a valid subset of the domain")]
    BadSeed(Vec<i64>),
    #[error("empty seed")]
    EmptySeed,
    #[error("malformed order file: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("arity must be at least 2, got {0}")]
    ArityTooSmall(usize),
    #[error("arity {n} exceeds the group order {m}; use the trivial order")]
    ArityAboveOrder { n: usize, m: usize },
    #[error("undecided: search explored {explored} nodes, cap is {cap}")]
    Undecided { explored: u64, cap: u64 },
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("C({m},{n}) = {subsets} subsets exceeds the oracle guard of {guard}")]
    TooManySubsets { m: usize, n: usize, subsets: u128, guard: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("range bound must be at least 2, got {0}")]
    BoundTooSmall(usize),
    #[error("report file: {0}")]
    Report(String),
}
