//! Exact symmetry-algebra machinery and spectrum derivations for the
//! N-dimensional Smorodinsky-Winternitz system
//! `H = −½ Σ ∂_i² + b Σ x_i² + Σ a_i / x_i²`.

pub mod opalg;
pub mod qoscillator;
pub mod spectral;
pub mod swsym;
