use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial cannot be factored")]
    ZeroPolynomial,
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error("transcendental element")]
    Transcendental,
    #[error("extension not algebraic: transcendence degree {trdeg} < {nvars} variables")]
    NotAlgebraic { trdeg: usize, nvars: usize },
    #[error("expected transcendence degree 1, found {0}")]
    TrdegNotOne(usize),
    #[error("expected squarefree")]
    ExpectedSquarefree,
    #[error("polynomial is not irreducible over the base field")]
    Reducible,
    #[error("constant rational function has no decomposition")]
    ConstantInput,
    #[error("empty field presentation: {0}")]
    EmptyPresentation(&'static str),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
