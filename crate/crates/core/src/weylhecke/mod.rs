//! GSp(2g) Weyl group, Iwahori-Hecke eigenvalues on principal series,
//! slope bounds and refinement obstructions.
//!
//! Torus elements are written by exponents: `t = (a_1, ..., a_g; a_0)` stands
//! for `diag(p^{a_1}, ..., p^{a_g}, p^{a_0 - a_g}, ..., p^{a_0 - a_1})`.

mod hecke;
mod obstruction;
mod slope;
mod weyl;

pub use hecke::{
    beta, c_constant, half_modulus_exponent, hecke_diagonal, lambda_valuation,
    normalized_eigenvalues, recover_characters, u_p_eigenvalue, u_p_torus, unitary_u_eigenvalues,
    CharacterData, GspWeight,
};
pub use obstruction::{refinement_obstruction_orders, ObstructionOrders};
pub use slope::{
    gsp_slope_sides, slope_check_gsp, slope_check_hilbert, twist_search, twist_shift, GspPlace,
};
pub use weyl::{enumerate_weyl, weyl_conjugate, TorusExponent, WeylElement};
