use std::fmt;

use crate::graph::VertexId;

/// Errors surfaced by graph construction, search, and file ingestion.
#[derive(Debug)]
pub enum Error {
    /// A component sum left the representable integer range.
    Overflow,
    /// The labeling fixpoint ran past its relaxation-round guard, which
    /// signals a negative cycle or a pathological instance.
    RoundGuardExceeded { rounds: u64 },
    /// Exhaustive path enumeration exceeded its node budget.
    ExplosionGuard { budget: u64 },
    /// A cycle with negative scalarized cost exists under the given
    /// preference pair, so no optimal tree is defined.
    NegativeScalarCycle,
    /// The requested vertex is not reached by the tree or table.
    Unreachable { vertex: VertexId },
    /// No route satisfies the optimization goal.
    NoFeasibleRoute,
    /// The instance is too large for the exact labeling oracle.
    OracleGuard { product: u128, limit: u128 },
    /// Malformed input file.
    Parse { line: usize, msg: String },
    /// Road class outside 1..=4.
    UnknownClass { line: usize, class: i64 },
    /// Segment length must be a positive number of meters.
    NonPositiveLength { line: usize, length: i64 },
    /// A preference pair must have alpha >= 0, beta >= 0, alpha + beta > 0.
    InvalidPreference { alpha: f64, beta: f64 },
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => write!(f, "integer overflow in weight arithmetic"),
            Error::RoundGuardExceeded { rounds } => write!(
                f,
                "labeling did not reach a fixpoint within {rounds} relaxation rounds \
                 (negative cycle or pathological instance)"
            ),
            Error::ExplosionGuard { budget } => {
                write!(f, "path enumeration exceeded its budget of {budget} nodes")
            }
            Error::NegativeScalarCycle => {
                write!(f, "negative-cost cycle under the given preference pair")
            }
            Error::Unreachable { vertex } => write!(f, "vertex {vertex} is unreachable"),
            Error::NoFeasibleRoute => write!(f, "no route satisfies the goal"),
            Error::OracleGuard { product, limit } => write!(
                f,
                "instance too large for the exact oracle (n*(capacity+1) = {product} > {limit}); \
                 lower the capacity, shrink the instance, or raise the guard"
            ),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::UnknownClass { line, class } => {
                write!(f, "line {line}: unknown road class {class} (expected 1..=4)")
            }
            Error::NonPositiveLength { line, length } => {
                write!(f, "line {line}: non-positive segment length {length}")
            }
            Error::InvalidPreference { alpha, beta } => {
                write!(f, "invalid preference pair ({alpha}, {beta})")
            }
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
