//! L-invariants from triangulation data.
//!
//! Each family supplies, for every graded piece of its triangulation, a
//! Hodge-Tate weight form `kappa_i` and a Frobenius factor `F_i`. The generic
//! value is
//!
//! ```text
//! prod_v -(sum_i B_{i-1} grad F_i) / (sum_i B_{i-1} grad_u kappa_i)
//! ```
//!
//! with `B` a row of plethysm coefficients. The closed forms of the four
//! families are kept separately in [`theorem`] and compared symbolically.

mod family;
mod formula;
pub mod theorem;

pub use family::{
    family_data, hecke_symbol, Family, GradedPiece, HeckeLogForm, TriangulationData,
    WeightLinearForm,
};
pub use formula::{
    generic_l_invariant, l_invariant_with_coefficients, place_pairs, place_pairs_with_coefficients,
    rank1_combine, Direction, LogDerivAssignment, PlacePair,
};
pub use theorem::{
    compare_to_theorem, symbolic_specialize, theorem_evaluator, theorem_symbolic, Classification,
    Comparison, LinearForm, SymbolicRatio, Theorem,
};
