pub mod algebra;
pub mod base;
pub mod coupling;
pub mod element;
pub mod error;
pub mod generator;
pub mod gkm;
pub mod harmonic;
pub mod linalg;
pub mod presentations;
pub mod scalar;
pub mod table;
pub mod verify;
pub mod vir;

pub use algebra::{family_algebra, Family, LieAlgebra, Manifold};
pub use base::{builtin_algebra, BaseAlgebra, FiniteGen, Root};
pub use element::Element;
pub use error::{Error, Result};
pub use generator::{parse_element, GenId};
pub use scalar::{ComplexSurd, Rational, Surd};
