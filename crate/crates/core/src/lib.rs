//! Monodromy-side maps between SL2 representation spaces induced by ramified
//! covers of curves (five-punctured sphere, twice-punctured torus, genus two),
//! the word-level model of the fundamental groups involved, and an exact
//! enumerator of admissible cover data.

pub mod classify;
pub mod error;
pub mod maps;
pub mod mat2;
pub mod reps;
pub mod scalar;
pub mod sl2;
pub mod verify;
pub mod words;

pub use error::{ClassifyError, MapError, ParseError, RepError, Sl2Error, WordError};
pub use mat2::Mat2;
pub use scalar::{epsilon, set_epsilon, Backend, Scalar};
