//! Generic three-generator quadratic algebras: cubic Casimir, structure
//! functions of the deformed-oscillator realization, finite-dimensionality
//! constraints, and the spectrum derivations built on them.

mod casimir;
mod constants;
mod constraints;
mod crosscheck;
mod spectrum;
mod structure;

pub use casimir::{algebra_rhs, casimir_cubic};
pub use constants::{
    chain_casimir_central, chain_constants, pair_casimir_central, pair_constants,
    top_casimir_central, top_constants, ChainCentral, QuadAlgConstants,
};
pub use constraints::{
    chain_family, pair_family, solve_constraints, solve_constraints_at, top_family, AffineRoot,
    NumberOperatorLaw, RootFamily, SpectrumSolution,
};
pub use crosscheck::{
    chain_crosscheck, pair_crosscheck, top_crosscheck, ChainCrosscheck, PairCrosscheck,
    TopCrosscheck,
};
pub use spectrum::{
    admissible_branches, bounded_tuples, cartesian_energy, group_levels, hyperspherical_level,
    pair_laws, racah_spectrum, same_levels, spectrum_cartesian, spectrum_hyperspherical,
    spectrum_racah, spectrum_substructure, substructure_energy, total_angular_eigenvalue,
    HypersphericalLevel, Level, RacahLevel, SwParams,
};
pub use structure::{
    chain_factorized, pair_factorized, proportionality, structure_function_gamma0,
    structure_function_gamma_nonzero, top_factorized, GammaNonzeroVariant, Proportionality,
    StructureFunction,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QOscError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no admissible finite-dimensional solution: {0}")]
    NoAdmissibleSolution(String),
}
