use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero-divisor encountered while inverting modulo the minimal polynomial of `{0}`; minimal polynomial likely reducible")]
    ZeroDivisor(String),

    #[error("generator `{0}` already exists in this tower")]
    DuplicateGenerator(String),

    #[error("minimal polynomial of `{name}` has degree {degree}; degree >= 2 is required")]
    MinpolyDegree { name: String, degree: usize },

    #[error("minimal polynomial of `{0}` is not square-free (gcd with its derivative is not 1)")]
    NotSquareFree(String),

    #[error("minimal polynomial of `{0}` must be a polynomial in `{0}` over the lower tower")]
    NotAPolynomial(String),

    #[error("elements or maps belong to different towers")]
    TowerMismatch,

    #[error("no value given for transcendental generator `{0}`")]
    MissingGeneratorValue(String),

    #[error("`{0}` is not a transcendental generator of the tower; values may only be prescribed on transcendental generators")]
    UnexpectedGeneratorValue(String),

    #[error("substitution hits a pole: {0}")]
    Pole(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("coefficient table violates the cocycle condition at (i,j,k) = ({}, {}, {})", .0.0, .0.1, .0.2)]
    GammaViolation((usize, usize, usize)),

    #[error("coefficient table has a zero entry at ({0}, {1})")]
    GammaZero(usize, usize),

    #[error("coefficient table is not reconstructed by its factor at ({0}, {1})")]
    GammaMismatch(usize, usize),

    #[error("malformed coefficient table: {0}")]
    GammaTable(String),

    #[error("order {order} out of range 0..={max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("product rule fails at order {order} for ({left}, {right})")]
    ProductRule { order: usize, left: String, right: String },

    #[error("axiom `{axiom}` is not meaningful here: {reason}")]
    AxiomMismatch { axiom: String, reason: String },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("operator unsupported on this carrier: {0}")]
    UnsupportedOperator(String),

    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),

    #[error("no decomposition witness found on GF({0}); this contradicts the decomposition theorem and indicates a defect")]
    DecompositionNotFound(u64),

    #[error("nonzero residual: input is not a polynomial function of degree <= {0}")]
    NonzeroResidual(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
