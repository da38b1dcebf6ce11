//! Noncommutative polynomials over the rationals and a degree-bounded
//! Buchberger procedure for the ideal of quantum automorphism relations.
//!
//! Reduction to zero modulo a partial basis proves an identity in the
//! abstract algebra, and therefore in the quantum automorphism group. A
//! nonzero normal form proves nothing.

mod buchberger;
mod poly;
mod relations;

pub use buchberger::{buchberger, normal_form, overlaps, s_polynomial, Obstruction, PartialGB};
pub use poly::{letter, letter_indices, Letter, Monomial, NcPoly};
pub use relations::{
    commutation_matrix, commutator, commutator_reduces, default_degree_cap, quantum_relations, verify_identity,
    CommutationMatrix,
};
