//! Exact scalars: rationals, real surds `Σ qᵢ√nᵢ`, and their complexification.

mod complex;
mod float;
mod rational;
mod surd;
mod text;

pub use complex::ComplexSurd;
pub use rational::Rational;
pub use surd::{is_squarefree, squarefree_split, Surd};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("square root of negative rational {0}")]
    NegativeSqrt(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a single-term surd and cannot be inverted")]
    NotInvertible(String),
    #[error("radicand {0} does not fit in 64 bits")]
    RadicandOverflow(String),
    #[error("could not factor {0} by trial division")]
    FactorizationLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
}
