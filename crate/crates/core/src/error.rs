use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p must be odd (got {0})")]
    EvenCharacteristic(u64),
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("extension degree must be at least 1 (got {0})")]
    InvalidDegree(usize),
    #[error("field of order {p}^{m} is too large for this implementation")]
    FieldTooLarge { p: u64, m: usize },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0:?} is reducible over F_p")]
    ReducibleModulus(Vec<u32>),
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("discrete logarithm of zero is undefined")]
    ZeroHasNoLog,
    #[error("N does not divide p^m - 1 (N = {order}, p^m - 1 = {group})")]
    OrderDoesNotDivide { order: u64, group: u64 },
    #[error("index {index} out of range for {what} (must be < {bound})")]
    IndexOutOfRange { what: &'static str, index: u64, bound: u64 },
    #[error("ring elements belong to different field parameters")]
    MismatchedField,
    #[error("Gray map and Lee weight are only defined over the base ring (m = 1), got m = {0}")]
    NotBaseRing(usize),
    #[error("p^(4m) = {p}^{exponent} exceeds 2^63; exact 64-bit counting is not possible")]
    CodeTooLarge { p: u64, exponent: usize },
    #[error("work budget exceeded: {required} entry-operations needed, budget is {budget}; use the class-based method")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("weight is not constant on class {class}: representative weight {expected}, element {witness} has weight {found}")]
    ConstancyViolation { class: String, witness: String, expected: u64, found: u64 },
    #[error("{0} is not an element of the defining set")]
    NotInDefiningSet(String),
    #[error("dual distance search cap must be 2 or 3 (got {0})")]
    UnsupportedCap(u32),
    #[error("{what} has {size} elements, limit is {limit}")]
    TooLarge { what: &'static str, size: u64, limit: u64 },
    #[error("symbol alphabet p = {0} does not fit in one byte")]
    SymbolTooWide(u64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
