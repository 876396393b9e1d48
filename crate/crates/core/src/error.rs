use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("operator {op} expects {expected} argument(s), got {got}")]
    Arity {
        op: String,
        expected: usize,
        got: usize,
    },

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("empty word: the free semigroup has no unit")]
    EmptyWord,

    #[error("malformed context: {0}")]
    Context(String),

    #[error("order {order} is not defined for this signature: {reason}")]
    OrderSignature { order: String, reason: String },

    #[error("zero polynomial has no leading word")]
    ZeroPolynomial,

    #[error("coefficient {coeff} has a pole at lambda = {at}")]
    Pole { coeff: String, at: String },

    #[error("weight {0} is not invertible")]
    NotInvertible(String),

    #[error("rule {rule} is not oriented at {assignment}: {detail}")]
    NotOriented {
        rule: String,
        assignment: String,
        detail: String,
    },

    #[error("invalid rule schema {rule}: {reason}")]
    Schema { rule: String, reason: String },

    #[error("reduction did not terminate within {fuel} steps")]
    FuelExhausted { fuel: usize, steps: usize },

    #[error("composition invariant violated: {0}")]
    Composition(String),

    #[error("input is not in the expected basis: {0}")]
    NotInBasis(String),

    #[error("{line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
