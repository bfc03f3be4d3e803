//! The integrals of motion as exact operators and mechanical verification of
//! the symmetry-algebra identities they satisfy.

mod generators;
mod relations;
mod su11;
mod substructure;

pub use generators::GeneratorSet;
pub use relations::{
    distinct_tuples, printed_c_second_form, verify_selected, verify_sw_relations, Coverage,
    RelationCheck, SwRelation,
};
pub use su11::{verify_su11, z_identity_residual};
pub use substructure::{
    pair_casimir, verify_racah_chain, verify_racah_link, verify_substructure_qij, verify_top_link,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SwSymError {
    #[error("dimension N = {n} is too small (need N >= {min})")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("index out of range: {0}")]
    BadIndex(String),
}
