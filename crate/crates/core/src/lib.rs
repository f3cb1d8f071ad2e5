//! Operator-valued Göppert-Mayer gauge transformation on a finite-mode
//! quantized electromagnetic field.
//!
//! The crate builds the multi-dipole gauge generator `X = −(i/ħ) Σ_q d_q·A(R_q)`
//! over a periodic-box mode lattice, evaluates `e^X Y e^{-X}` through the
//! two-term BCH closed form (valid because `[X, Y]` is a c-number), and
//! extracts the static dipole-dipole interaction, the divergent self energy
//! and the dipole-field shift of the electric-field operator. A second
//! construction uses a line-integral generator to recover the Coulomb field
//! of a point charge.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); `f64` aliases
//! are provided at the crate root.

pub mod coulomb_path;
pub mod error;
pub mod field_modes;
pub mod gauge_dipole;
pub mod linalg;
pub mod operator;
pub mod quadrature;
pub mod scalar;
pub mod units;

pub use coulomb_path::{
    commutator_endpoint_formula, commutator_line_integral, commutator_line_integral_with, coulomb_field,
    kernel_antiderivative, line_kernel, path_independence_residual, transformed_field, ChargePath,
    LineIntegralOptions,
};
pub use error::{Error, Result};
pub use field_modes::{
    analytic_dipole_tensor, coincident_commutator, commutator_ae_modesum, electric_field_coeffs,
    electric_field_coeffs_smeared, max_relative_deviation, operator_index, split_operator_index,
    vector_potential_coeffs, vector_potential_coeffs_smeared, FieldCoefficients, FieldKind, Mode, ModeCoefficients,
    ModeLattice,
};
pub use gauge_dipole::{
    build_gm_generator, build_gm_generator_smeared, build_y_generator, build_y_generator_smeared, e_dip_field,
    electric_field_operator, epsilon_dip, epsilon_dip_from_commutator, epsilon_self_regularized, field_shift,
    field_shift_from_commutator, pairwise_interaction, transform_report, Dipole, DipoleConfig, PairInteraction,
    SelfEnergy, SymbolicTerm, TransformReport,
};
pub use linalg::{Tensor3, Vec3};
pub use operator::{
    adjoint_action, adjoint_action_at, commutator, fock_adjoint_oracle, fock_matrix, fock_unitary, is_central,
    max_interior_deviation, time_derivative_conjugation, FockOracleConfig, ModeFactor, Monomial,
    OperatorPolynomial,
};
pub use scalar::Scalar;
pub use units::UnitSystem;

pub use num_complex::Complex;

pub type Vec3F64 = Vec3<f64>;
pub type Vec3F32 = Vec3<f32>;
pub type Tensor3F64 = Tensor3<f64>;
pub type Tensor3F32 = Tensor3<f32>;
pub type UnitSystemF64 = UnitSystem<f64>;
pub type ModeLatticeF64 = ModeLattice<f64>;
pub type ModeLatticeF32 = ModeLattice<f32>;
pub type OperatorPolynomialF64 = OperatorPolynomial<f64>;
pub type OperatorPolynomialF32 = OperatorPolynomial<f32>;
pub type DipoleF64 = Dipole<f64>;
pub type DipoleConfigF64 = DipoleConfig<f64>;
pub type ChargePathF64 = ChargePath<f64>;
pub type TransformReportF64 = TransformReport<f64>;
