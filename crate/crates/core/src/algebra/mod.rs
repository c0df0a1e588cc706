//! Desk-scale computer-algebra oracle used to verify the combinatorial
//! predictions independently: sparse polynomials over a prime field with
//! the degree-reverse-lexicographic order, Buchberger Groebner bases,
//! Krull dimension and Hilbert functions from lead-term data, explicit
//! matrix constructions, cogenerated mixed determinantal ideals and
//! Hilbert-scheme tangent spaces.
//!
//! Not a general-purpose CAS: no factorization, no primary decomposition,
//! no saturation, no elimination orders.

mod checks;
mod cogenerated;
mod dimension;
mod field;
mod groebner;
mod matrix;
mod monomial;
mod poly;
mod rng;
mod tangent;

pub use checks::{mixed_sum_dimension_check, MixedSumDims};
pub use cogenerated::{
    build_generic_grid, cogenerated_ideal, height_check, predicted_height, CogeneratedSpec,
    GridDegrees, HeightCheck,
};
pub use dimension::{
    dimension_of_ideal, hilbert_fn_oracle, krull_dim_from_lead_terms, standard_monomial_basis,
    DimensionReport,
};
pub use field::PrimeField;
pub use groebner::{groebner, normal_form, s_poly_reduces_to_zero, Budget, Ideal};
pub use matrix::{
    build_block_matrix, build_generic_matrix, build_staggered_monomial_matrix,
    column_deletion_flag, maximal_minors, DegMatrix, PolyMatrix,
};
pub use monomial::Monomial;
pub use poly::{PolyRing, SparsePoly};
pub use rng::DetRng;
pub use tangent::tangent_space_dim;

use thiserror::Error;

/// Default coefficient field characteristic, the customary Groebner prime.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("the family W(b;a) is empty")]
    EmptyFamily,
    #[error("Groebner budget exceeded after {pairs} S-pair reductions")]
    BudgetExceeded { pairs: u64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("specialized ideal has codimension {got}, expected {want}")]
    NotCodimC { got: usize, want: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
}
