use std::f64::consts::FRAC_PI_2;

use crate::qoscillator::{hyperspherical_level, SwParams};

use super::fd::{b_eigenvalue_exact, b_eigenvalue_full_line, fd_eigen_1d, Grid1D};
use super::polynomials::{jacobi_derivative, jacobi_eval, laguerre_eval};
use super::SpectralError;

/// Samples with `|Ψ|` below this fraction of the largest sampled `|Ψ|` have
/// underflowed or sit on a node and are rejected.
const PSI_FLOOR: f64 = 1e-100;
/// Minimum distance of an angular sample from `0` and `π/2`.
const ANGLE_MARGIN: f64 = 1e-2;
const STEP: f64 = 2e-2;

fn d1_5pt(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

fn d2_5pt(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

/// Five-point first and second derivatives at `h` and `h/2`, Richardson combined.
fn derivatives(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
    let r = |d: &dyn Fn(f64) -> f64| (16.0 * d(h / 2.0) - d(h)) / 15.0;
    (r(&|hh| d1_5pt(f, x, hh)), r(&|hh| d2_5pt(f, x, hh)))
}

/// Step resolving a local power law `dist^order` near a singular point.
fn step_for(dist: f64, scale: f64, order: f64) -> f64 {
    (STEP * scale).min(dist / (10.0 * (order.abs() + 2.0)))
}

/// Maximum relative residual over a set of samples.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub samples: usize,
}

impl ResidualReport {
    fn from_values(values: &[f64]) -> Self {
        ResidualReport {
            max_residual: values.iter().cloned().fold(0.0, f64::max),
            samples: values.len(),
        }
    }
}

/// One Cartesian factor `ψ_n(x) = e^{−sx²/2} x^{½+εν} L_n^{εν}(sx²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartesianFactor {
    pub n: u32,
    pub a: f64,
    pub s: f64,
    /// `ε ν`.
    pub signed_nu: f64,
}

impl CartesianFactor {
    pub fn eval(&self, x: f64) -> f64 {
        let z = self.s * x * x;
        (-0.5 * z).exp() * x.powf(0.5 + self.signed_nu) * laguerre_eval(self.n, self.signed_nu, z)
    }

    /// Eigenvalue of `−½∂² + (s²/2)x² + a/x²`.
    pub fn energy(&self) -> f64 {
        self.s * (2.0 * f64::from(self.n) + self.signed_nu + 1.0)
    }
}

/// Radial factor `e^{−sr²/2} r^{Λ₁−(N−2)/2} L_{τ_r}^{Λ₁}(sr²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialSolution {
    pub dim: usize,
    pub tau_r: u32,
    pub s: f64,
    /// `Λ₁`, the Laguerre parameter `2ν`.
    pub lambda: f64,
    pub k1: f64,
    pub energy: f64,
}

impl RadialSolution {
    pub fn exponent(&self) -> f64 {
        self.lambda - (self.dim as f64 - 2.0) / 2.0
    }

    pub fn eval(&self, r: f64) -> f64 {
        let z = self.s * r * r;
        (-0.5 * z).exp() * r.powf(self.exponent()) * laguerre_eval(self.tau_r, self.lambda, z)
    }
}

/// Radial equation `−½(ψ'' + (N−1)/r ψ' − s²r²ψ ∓ k₁/r² ψ) = Eψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialForm {
    /// `−k₁/r²`, the sign that follows from separating the Laplacian.
    Corrected,
    /// `+k₁/r²`.
    PrintedOdeSign,
}

/// Angular factor `cos^c θ sin^d θ P_τ^{(α,β)}(cos 2θ)` at level `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularSolution {
    /// One-based level `1 ≤ l ≤ N−1`.
    pub level: usize,
    pub dim: usize,
    pub tau: u32,
    pub a: f64,
    pub cos_exp: f64,
    pub sin_exp: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `k_l`.
    pub k: f64,
    /// `k_{l+1}`, equal to `2a_N` at the bottom level.
    pub k_next: f64,
}

impl AngularSolution {
    fn cot_coeff(&self) -> f64 {
        (self.dim - self.level - 1) as f64
    }

    pub fn eval(&self, t: f64) -> f64 {
        t.cos().powf(self.cos_exp)
            * t.sin().powf(self.sin_exp)
            * jacobi_eval(self.tau, self.alpha, self.beta, (2.0 * t).cos())
    }

    /// Analytic derivative.
    pub fn derivative(&self, t: f64) -> f64 {
        let (s, c) = t.sin_cos();
        let x = (2.0 * t).cos();
        let p = jacobi_eval(self.tau, self.alpha, self.beta, x);
        let dp = jacobi_derivative(self.tau, self.alpha, self.beta, x);
        c.powf(self.cos_exp)
            * s.powf(self.sin_exp)
            * ((-self.cos_exp * s / c + self.sin_exp * c / s) * p - 2.0 * (2.0 * t).sin() * dp)
    }

    /// `k_l` as the Rayleigh quotient
    /// `∫w(ψ'² + (2a/cos² + k_{l+1}/sin²)ψ²) / ∫wψ²` with `w = sin^{N−l−1}θ`.
    pub fn rayleigh_quotient(&self) -> Result<f64, SpectralError> {
        let m = self.cot_coeff();
        if self.cos_exp <= 0.5 || 2.0 * self.sin_exp + m - 1.0 <= 0.0 {
            return Err(SpectralError::InvalidParameter(format!(
                "level {} solution is not normalizable on this branch",
                self.level
            )));
        }
        let num = |t: f64| {
            let (s, c) = t.sin_cos();
            let psi = self.eval(t);
            let dpsi = self.derivative(t);
            s.powf(m) * (dpsi * dpsi + (2.0 * self.a / (c * c) + self.k_next / (s * s)) * psi * psi)
        };
        let den = |t: f64| t.sin().powf(m) * self.eval(t).powi(2);
        let top = quadrature::double_exponential::integrate(num, 0.0, FRAC_PI_2, 1e-14).integral;
        let bottom = quadrature::double_exponential::integrate(den, 0.0, FRAC_PI_2, 1e-14).integral;
        Ok(top / bottom)
    }
}

/// Which form of the angular equation and solution to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngularForm {
    /// `−k_{l+1}/sin²` with `d = Λ_{l+1} − (N−l−2)/2`, `α = Λ_{l+1}`.
    Corrected,
    /// `+k_{l+1}/sin²` in the equation, corrected solution.
    PrintedOdeSign,
    /// `d = μ_{l+1} + 1 − (N−l)/2`, `α = μ_{l+1}` with the generic closed form
    /// `μ_l = 2Σ_{i≥l}τ_i + Σ_{i≥l}ε_iν_i + (N−l−2)/2`, corrected equation.
    PrintedGenericExponent,
}

/// Full hyperspherical separated solution.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatedSolution {
    pub radial: RadialSolution,
    /// Levels `l = 1..N−1`.
    pub angular: Vec<AngularSolution>,
}

impl SeparatedSolution {
    pub fn hyperspherical(
        p: &SwParams<f64>,
        tau_r: u32,
        tau: &[u32],
    ) -> Result<Self, SpectralError> {
        Self::with_form(p, tau_r, tau, AngularForm::Corrected)
    }

    pub fn with_form(
        p: &SwParams<f64>,
        tau_r: u32,
        tau: &[u32],
        form: AngularForm,
    ) -> Result<Self, SpectralError> {
        let n = p.dimension();
        if n < 2 {
            return Err(SpectralError::InvalidParameter(
                "hyperspherical separation needs N >= 2".into(),
            ));
        }
        let lvl = hyperspherical_level(p, tau_r, tau)
            .map_err(|e| SpectralError::InvalidParameter(e.to_string()))?;
        let lam = &lvl.lambda;
        let k_of = |l: usize| lam[l - 1] * lam[l - 1] - ((n as f64 - l as f64 - 1.0) / 2.0).powi(2);
        let angular = (1..n)
            .map(|l| {
                let m = (n - l) as f64;
                let lam_next = lam[l];
                let (sin_exp, alpha) = match form {
                    AngularForm::PrintedGenericExponent if l + 2 <= n => {
                        let mu_next = lam_next - (m - 1.0) + (m - 3.0) / 2.0;
                        (mu_next + 1.0 - m / 2.0, mu_next)
                    }
                    _ => (lam_next - (m - 2.0) / 2.0, lam_next),
                };
                let signed = p.signed_nu(l - 1);
                AngularSolution {
                    level: l,
                    dim: n,
                    tau: tau[l - 1],
                    a: p.a()[l - 1],
                    cos_exp: 0.5 + signed,
                    sin_exp,
                    alpha,
                    beta: signed,
                    k: k_of(l),
                    k_next: k_of(l + 1),
                }
            })
            .collect();
        let radial = RadialSolution {
            dim: n,
            tau_r,
            s: *p.s(),
            lambda: lam[0],
            k1: k_of(1),
            energy: lvl.energy,
        };
        Ok(SeparatedSolution { radial, angular })
    }
}

/// Deterministic low-discrepancy points in `[0.25, 2.5]^N / √s`.
pub fn cartesian_samples(n_dim: usize, s: f64, count: usize) -> Vec<Vec<f64>> {
    let scale = s.powf(-0.5);
    let steps: Vec<f64> = [2.0f64, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0]
        .iter()
        .cycle()
        .take(n_dim)
        .enumerate()
        .map(|(i, p)| (p.sqrt() + i as f64 * 0.618_033_988_749_895).fract())
        .collect();
    (1..=count)
        .map(|k| {
            steps
                .iter()
                .map(|st| scale * (0.25 + 2.25 * (k as f64 * st).fract()))
                .collect()
        })
        .collect()
}

/// Deterministic angles in `[0.05, π/2 − 0.05]`.
pub fn angular_samples(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| 0.05 + (FRAC_PI_2 - 0.1) * (k as f64 * 0.618_033_988_749_895).fract())
        .collect()
}

/// Deterministic radii in `[0.25, 3]/√s`.
pub fn radial_samples(s: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| s.powf(-0.5) * (0.25 + 2.75 * (k as f64 * 0.754_877_666_246_693).fract()))
        .collect()
}

fn check_value(v: f64, peak: f64, what: &str) -> Result<(), SpectralError> {
    if v.abs() <= PSI_FLOOR * peak || !v.is_finite() {
        return Err(SpectralError::RejectedSample(format!(
            "|ψ| = {v:e} at {what} (largest sampled |ψ| = {peak:e})"
        )));
    }
    Ok(())
}

/// Largest finite `|ψ|` over the samples, the reference for [`PSI_FLOOR`].
fn peak_of<X>(samples: &[X], f: impl Fn(&X) -> f64) -> f64 {
    samples
        .iter()
        .map(|x| f(x).abs())
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max)
}

/// `max |HΨ − EΨ| / |EΨ|` over the samples, with `Ψ = Π ψ_{n_i}(x_i)` and each
/// `∂_i²` taken by Richardson-extrapolated five-point differences.
pub fn cartesian_residual(
    p: &SwParams<f64>,
    n: &[u32],
    samples: &[Vec<f64>],
) -> Result<ResidualReport, SpectralError> {
    let dim = p.dimension();
    if n.len() != dim {
        return Err(SpectralError::InvalidParameter(format!(
            "need {dim} quantum numbers, got {}",
            n.len()
        )));
    }
    let s = *p.s();
    let factors: Vec<CartesianFactor> = (0..dim)
        .map(|i| CartesianFactor {
            n: n[i],
            a: p.a()[i],
            s,
            signed_nu: p.signed_nu(i),
        })
        .collect();
    let energy: f64 = factors.iter().map(CartesianFactor::energy).sum();
    let psi = |x: &[f64]| {
        factors
            .iter()
            .zip(x)
            .map(|(f, xi)| f.eval(*xi))
            .product::<f64>()
    };
    let scale = s.powf(-0.5);
    let peak = peak_of(samples, |x| if x.len() == dim { psi(x) } else { 0.0 });
    let values = samples
        .iter()
        .map(|x| {
            if x.len() != dim || x.iter().any(|v| !(*v > 0.0)) {
                return Err(SpectralError::RejectedSample(format!(
                    "{x:?} is not inside the positive orthant"
                )));
            }
            let v = psi(x);
            check_value(v, peak, &format!("{x:?}"))?;
            let mut h_psi = 0.0;
            for i in 0..dim {
                let along = |t: f64| {
                    let mut y = x.clone();
                    y[i] = t;
                    psi(&y)
                };
                let (_, d2) = derivatives(
                    &along,
                    x[i],
                    step_for(
                        x[i],
                        scale,
                        factors[i].signed_nu + 0.5 + 2.0 * f64::from(factors[i].n),
                    ),
                );
                h_psi += -0.5 * d2 + (0.5 * s * s * x[i] * x[i] + factors[i].a / (x[i] * x[i])) * v;
            }
            Ok((h_psi - energy * v).abs() / (energy * v).abs())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ResidualReport::from_values(&values))
}

/// Relative residual of the angular equation at level `l`
/// `ψ'' + (N−l−1)cot θ ψ' − 2a_l/cos²θ ψ ∓ k_{l+1}/sin²θ ψ = −k_l ψ`.
pub fn angular_residual(
    sol: &AngularSolution,
    form: AngularForm,
    samples: &[f64],
) -> Result<ResidualReport, SpectralError> {
    let sign = match form {
        AngularForm::PrintedOdeSign if sol.level + 1 < sol.dim => 1.0,
        _ => -1.0,
    };
    let m = sol.cot_coeff();
    let peak = peak_of(samples, |t| sol.eval(*t));
    let values = samples
        .iter()
        .map(|&t| {
            let dist = t.min(FRAC_PI_2 - t);
            if !(dist >= ANGLE_MARGIN) {
                return Err(SpectralError::RejectedSample(format!(
                    "θ = {t} is too close to 0 or π/2"
                )));
            }
            let f = |x: f64| sol.eval(x);
            let v = f(t);
            check_value(v, peak, &format!("θ = {t}"))?;
            let (d1, d2) = derivatives(
                &f,
                t,
                step_for(
                    dist,
                    1.0,
                    sol.cos_exp.abs().max(sol.sin_exp.abs()) + 2.0 * f64::from(sol.tau),
                ),
            );
            let (sn, cs) = t.sin_cos();
            let lhs = d2 + m * cs / sn * d1 - 2.0 * sol.a / (cs * cs) * v
                + sign * sol.k_next / (sn * sn) * v;
            let denom = (sol.k * v).abs().max(v.abs());
            Ok((lhs + sol.k * v).abs() / denom)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ResidualReport::from_values(&values))
}

/// Relative residual of the radial equation.
pub fn radial_residual(
    sol: &RadialSolution,
    form: RadialForm,
    samples: &[f64],
) -> Result<ResidualReport, SpectralError> {
    let sign = match form {
        RadialForm::Corrected => -1.0,
        RadialForm::PrintedOdeSign => 1.0,
    };
    let n1 = sol.dim as f64 - 1.0;
    let scale = sol.s.powf(-0.5);
    let peak = peak_of(samples, |r| if *r > 0.0 { sol.eval(*r) } else { 0.0 });
    let values = samples
        .iter()
        .map(|&r| {
            if !(r > 0.0) {
                return Err(SpectralError::RejectedSample(format!(
                    "r = {r} must be positive"
                )));
            }
            let f = |x: f64| sol.eval(x);
            let v = f(r);
            check_value(v, peak, &format!("r = {r}"))?;
            let (d1, d2) = derivatives(
                &f,
                r,
                step_for(r, scale, sol.exponent() + 2.0 * f64::from(sol.tau_r)),
            );
            let lhs = d2 + n1 / r * d1 - sol.s * sol.s * r * r * v + sign * sol.k1 / (r * r) * v;
            Ok((lhs + 2.0 * sol.energy * v).abs() / (2.0 * sol.energy * v).abs())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ResidualReport::from_values(&values))
}

/// `err_h / err_{h/2}` for the lowest `count` levels of `B`, against the exact
/// eigenvalues.
pub fn convergence_ratios(
    a: f64,
    b: f64,
    grid: &Grid1D,
    count: usize,
) -> Result<Vec<f64>, SpectralError> {
    let coarse = fd_eigen_1d(a, b, grid, count)?;
    let fine = fd_eigen_1d(a, b, &grid.refined(), count)?;
    Ok((0..count)
        .map(|k| {
            let exact = if a == 0.0 {
                b_eigenvalue_full_line(b, k as u32)
            } else {
                b_eigenvalue_exact(a, b, k as u32)
            };
            (coarse[k] - exact).abs() / (fine[k] - exact).abs()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: &[f64], b: f64, branches: Vec<i8>) -> SwParams<f64> {
        SwParams::from_b(a.to_vec(), b, branches).unwrap()
    }

    #[test]
    fn gaussian_ground_state() {
        let p = params(&[0.0], 0.5, vec![1]);
        let r = cartesian_residual(&p, &[0], &cartesian_samples(1, 1.0, 20)).unwrap();
        assert!(r.max_residual < 1e-8, "{r:?}");
    }

    #[test]
    fn laguerre_product_state() {
        let p = params(&[1.0, 1.0], 0.5, vec![1, 1]);
        let r = cartesian_residual(&p, &[1, 0], &cartesian_samples(2, 1.0, 20)).unwrap();
        assert!(r.max_residual < 1e-7, "{r:?}");
    }

    #[test]
    fn tiny_psi_is_rejected() {
        let p = params(&[0.0], 0.5, vec![1]);
        let err = cartesian_residual(&p, &[0], &[vec![1.0], vec![40.0]]).unwrap_err();
        assert!(matches!(err, SpectralError::RejectedSample(_)));
        assert!(cartesian_residual(&p, &[0], &[vec![-1.0]]).is_err());
    }

    #[test]
    fn bottom_angular_equation() {
        let p = params(&[0.4, 1.0], 0.5, vec![1, 1]);
        for tau in [0, 1, 3] {
            let sol = SeparatedSolution::hyperspherical(&p, 0, &[tau]).unwrap();
            let r = angular_residual(
                &sol.angular[0],
                AngularForm::Corrected,
                &angular_samples(20),
            )
            .unwrap();
            assert!(r.max_residual < 1e-7, "tau {tau}: {r:?}");
        }
    }

    #[test]
    fn angle_near_edge_is_rejected() {
        let p = params(&[1.0, 1.0], 0.5, vec![1, 1]);
        let sol = SeparatedSolution::hyperspherical(&p, 0, &[0]).unwrap();
        assert!(angular_residual(&sol.angular[0], AngularForm::Corrected, &[1e-3]).is_err());
        assert!(
            angular_residual(&sol.angular[0], AngularForm::Corrected, &[FRAC_PI_2 - 1e-3]).is_err()
        );
    }

    #[test]
    fn every_level_in_four_dimensions() {
        let p = params(&[1.0, 0.2, 3.0, 0.7], 0.8, vec![1, 1, 1, 1]);
        let sol = SeparatedSolution::hyperspherical(&p, 2, &[1, 0, 2]).unwrap();
        for ang in &sol.angular {
            let r = angular_residual(ang, AngularForm::Corrected, &angular_samples(20)).unwrap();
            assert!(r.max_residual < 1e-7, "level {}: {r:?}", ang.level);
            let k = ang.rayleigh_quotient().unwrap();
            assert!(
                (k - ang.k).abs() <= 1e-6 * ang.k.abs().max(1.0),
                "level {}: {k} vs {}",
                ang.level,
                ang.k
            );
        }
        let r = radial_residual(
            &sol.radial,
            RadialForm::Corrected,
            &radial_samples(*p.s(), 20),
        )
        .unwrap();
        assert!(r.max_residual < 1e-7, "{r:?}");
    }

    #[test]
    fn printed_forms_fail_where_expected() {
        let p = params(&[1.0, 1.0, 1.0, 1.0], 0.5, vec![1; 4]);
        let printed_sign = SeparatedSolution::hyperspherical(&p, 0, &[0, 0, 0]).unwrap();
        let r = angular_residual(
            &printed_sign.angular[0],
            AngularForm::PrintedOdeSign,
            &angular_samples(20),
        )
        .unwrap();
        assert!(r.max_residual > 1e-3);
        let rr = radial_residual(
            &printed_sign.radial,
            RadialForm::PrintedOdeSign,
            &radial_samples(1.0, 20),
        )
        .unwrap();
        assert!(rr.max_residual > 1e-3);
        let generic =
            SeparatedSolution::with_form(&p, 0, &[0, 0, 0], AngularForm::PrintedGenericExponent)
                .unwrap();
        let r = angular_residual(
            &generic.angular[0],
            AngularForm::Corrected,
            &angular_samples(20),
        )
        .unwrap();
        assert!(r.max_residual > 1e-3);
        // the bottom level has no generic exponent and stays correct
        let r = angular_residual(
            &generic.angular[2],
            AngularForm::Corrected,
            &angular_samples(20),
        )
        .unwrap();
        assert!(r.max_residual < 1e-7);
    }

    #[test]
    fn fd_reference_levels() {
        let g = Grid1D::reference(0.5, 4000).unwrap();
        let ev = super::super::fd_eigen_richardson(1.0, 0.5, &g, 5).unwrap();
        for (k, e) in ev.extrapolated.iter().enumerate() {
            let exact = 5.0 + 4.0 * k as f64;
            assert!((e - exact).abs() / exact < 1e-3, "{k}: {e}");
        }
        for r in convergence_ratios(1.0, 0.5, &g, 5).unwrap() {
            assert!((3.5..=4.5).contains(&r), "ratio {r}");
        }
    }

    #[test]
    fn fd_full_line_harmonic() {
        let g = Grid1D::reference(0.5, 4000).unwrap();
        let ev = fd_eigen_1d(0.0, 0.5, &g, 5).unwrap();
        for (m, e) in ev.iter().enumerate() {
            let exact = b_eigenvalue_full_line(0.5, m as u32);
            assert!((e - exact).abs() / exact < 1e-3, "{m}: {e}");
        }
    }
}
