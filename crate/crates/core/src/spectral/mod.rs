//! Numerical oracles for the Schrödinger problem: orthogonal polynomials,
//! separated wavefunctions with finite-difference residuals, a tridiagonal
//! eigensolver for `B_i`, and degeneracy counting.

mod degeneracy;
mod fd;
mod polynomials;
mod residual;

pub use degeneracy::{degeneracy_bruteforce, degeneracy_count};
pub use fd::{
    b_eigenvalue_exact, b_eigenvalue_full_line, discretize_b, fd_eigen_1d, fd_eigen_richardson,
    Grid1D, RichardsonEigen, SymTridiagonal,
};
pub use polynomials::{jacobi_derivative, jacobi_eval, laguerre_eval};
pub use residual::{
    angular_residual, angular_samples, cartesian_residual, cartesian_samples, convergence_ratios,
    radial_residual, radial_samples, AngularForm, AngularSolution, CartesianFactor, RadialForm,
    RadialSolution, ResidualReport, SeparatedSolution,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("rejected sample: {0}")]
    RejectedSample(String),
}
