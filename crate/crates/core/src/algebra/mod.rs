//! Exact arithmetic: integer normal forms, prime fields, and Laurent polynomial matrices.

pub mod character;
pub mod field;
pub mod integer;
pub mod laurent;
pub mod linear;
pub mod matrix;

pub use character::{CharacterPoint, Scalar};
pub use field::{Fp, PrimeField};
pub use integer::{smith_decomposition, smith_normal_form, IntMatrix, SmithDecomposition, SmithForm};
pub use laurent::{Coeff, LaurentPoly};
pub use matrix::{generic_rank, matrix_rank_at, minors, LaurentMatrix};
