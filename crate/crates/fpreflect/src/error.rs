//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("unknown potential '{0}'")]
    UnknownPotential(String),
    #[error("asymptotic classification undecidable: {0}")]
    Undecidable(String),
    #[error("f is not differentiable at x = {x} (order {order}); query one side explicitly")]
    NonDifferentiable { x: f64, order: usize },
    #[error("derivative of order {0} not available (profile built with max order {1})")]
    MissingDerivative(usize, usize),
    #[error("point x = {x} outside potential domain (x_max = {x_max})")]
    OutsideDomain { x: f64, x_max: f64 },
    #[error("divergent bracket integral for sign word '{word}': {detail}")]
    DivergentBracket { word: String, detail: String },
    #[error("requested tolerance unreachable: {0}")]
    ToleranceUnreachable(String),
    #[error("low-energy expansion invalid for this potential: {0}")]
    LowEnergyInvalid(String),
    #[error("special function failure: {0}")]
    SpecialFunction(String),
    #[error("ODE integration failure: {0}")]
    OdeFailure(String),
    #[error("oracle paths disagree by {disagreement:.3e} (> {tol:.1e}) at k = {k}")]
    OracleDisagreement {
        disagreement: f64,
        tol: f64,
        k: String,
    },
    #[error("degenerate Moebius map (xi * R_r = 1)")]
    DegenerateMap,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
