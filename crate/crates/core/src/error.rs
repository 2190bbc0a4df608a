use thiserror::Error;

use crate::skewroot::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {from} does not divide {to}")]
    IncompatibleOrders { from: u32, to: u32 },
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element or object does not belong to the expected group: {0}")]
    MismatchedGroups(String),
    #[error("budget of {budget} exceeded while {what}")]
    BudgetExceeded { what: &'static str, budget: u64 },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid bicharacter: {0}")]
    InvalidBicharacter(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("elements belong to different twisted group algebras")]
    MismatchedAlgebras,
    #[error("grading is not a division grading: product of degrees {0} and {1} vanishes")]
    NotDivision(String, String),
    #[error("skew root system has not been validated")]
    NotValidated,
    #[error("invalid skew root system: {0}")]
    Invalid(ValidationReport),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("subgroup is not contained in the radical")]
    NotInRadical,
    #[error("cocycle does not induce the bicharacter of the root system")]
    CocycleMismatch,
    #[error("algebra is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("cocycle is not the pull-back of the reduced cocycle")]
    NotPulledBack,
    #[error("parameter out of range: {0}")]
    RangeError(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
