//! Dimension counting and desk-scale verification for families of
//! determinantal schemes.
//!
//! A family `W(b;a)` collects the subschemes of `P^n` of codimension `c` cut
//! out by the maximal minors of a `t x (t+c-1)` homogeneous matrix whose
//! entry in row `i`, column `j` has degree `a_j - b_i`.  Everything the
//! library computes is driven by the degree data alone:
//!
//! * [`degrees`] — the `(n, t, c, b, a)` input type, validation and the
//!   non-emptiness criterion;
//! * [`combinatorics`] — the closed-form invariants (`lambda_c`, the
//!   correction terms `K_m`) and the conjectured dimension of `W(b;a)`;
//! * [`resolution`] — the graded Betti table of the Eagon–Northcott
//!   resolution, Hilbert functions and Hilbert polynomials;
//! * [`checker`] — evaluation of the sufficient numerical criteria that
//!   certify the dimension or smooth-component statements, aggregated into a
//!   [`checker::Report`];
//! * [`algebra`] — an independent computer-algebra oracle: polynomials over a
//!   prime field, Groebner bases, ideal dimension, Hilbert functions by
//!   monomial counting, cogenerated mixed determinantal ideals and
//!   Hilbert-scheme tangent spaces.

pub mod algebra;
pub mod checker;
pub mod combinatorics;
pub mod degrees;
pub mod resolution;

mod arith;
pub(crate) mod bigint_serde;

pub use degrees::{CharFlag, DegreeSpec};
