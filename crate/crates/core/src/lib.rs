//! Macaulay inverse systems over exact fields: divided powers, contraction,
//! the dual action of automorphisms of a power series ring, tangent spaces to
//! orbits and normal forms of apolar algebras.

pub mod apolarity;
pub mod classification;
pub mod divided_powers;
pub mod dual_actions;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod random;
pub mod scalars;
pub mod subspaces;
pub mod tangent_orbits;
pub mod text;

pub use divided_powers::{contract, dp_mul, omega, omega_inv, pair, ClassicalPoly, DPPoly, Monomial, Operator};
pub use error::{Error, Result};
pub use scalars::{Field, Scalar};
pub use subspaces::{perp, Ambient, Basis, Space};
pub use text::{format_dp, format_operator, infer_arity, parse_operator, parse_poly, Mode};
pub use apolarity::{
    ann_graded, apolar_dim, hilbert_function, ideal_square_graded, is_compressed, is_t_compressed, symmetric_decomposition,
    HilbertFunction, SymmetricDecomposition,
};
pub use classification::{
    improved_normal_form, lower_degree_step, square_ideal_reduce, t_compressed_normal_form, unip_orbit_membership,
    Membership, ReductionStep, ReductionTrace,
};
pub use dual_actions::{
    apply_automorphism_dual, apply_derivation_dual, apply_group_element, apply_linear_map, apply_unit, compose,
    Automorphism, Derivation, GroupElement,
};
pub use golden::{golden_1222111, golden_13331, golden_char2};
pub use tangent_orbits::{
    cangrad_pair_filter, dense_orbit_test, orbit_dimension, perp_tangent, tangent_space, unip_tangent_space,
    TangentReport,
};
