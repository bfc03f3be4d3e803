use super::SpectralError;

/// Uniform grid on `[x_min, x_max]` with `intervals` cells and Dirichlet ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    intervals: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, intervals: usize) -> Result<Self, SpectralError> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min <= 0.0 {
            return Err(SpectralError::InvalidGrid(format!(
                "x_min must be > 0, got {x_min}"
            )));
        }
        if x_max <= x_min {
            return Err(SpectralError::InvalidGrid("x_max must exceed x_min".into()));
        }
        if intervals < 8 {
            return Err(SpectralError::InvalidGrid(format!(
                "need at least 8 intervals, got {intervals}"
            )));
        }
        Ok(Grid1D {
            x_min,
            x_max,
            intervals,
        })
    }

    /// Default truncation `[10⁻³, 12]·(2b)^{−1/4}` with `intervals` cells.
    pub fn reference(b: f64, intervals: usize) -> Result<Self, SpectralError> {
        if b <= 0.0 {
            return Err(SpectralError::InvalidParameter("b must be positive".into()));
        }
        let scale = (2.0 * b).powf(-0.25);
        Self::new(1e-3 * scale, 12.0 * scale, intervals)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    pub fn intervals(&self) -> usize {
        self.intervals
    }
    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / self.intervals as f64
    }
    pub fn refined(&self) -> Self {
        Grid1D {
            intervals: 2 * self.intervals,
            ..*self
        }
    }

    fn interior(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.h();
        (1..self.intervals).map(move |k| self.x_min + h * k as f64)
    }
}

/// Symmetric tridiagonal matrix: diagonal `d`, off-diagonal `e` (`e.len() + 1 == d.len()`).
#[derive(Clone, Debug)]
pub struct SymTridiagonal {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

impl SymTridiagonal {
    /// Number of eigenvalues strictly below `x` (Sturm sequence).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for (i, di) in self.d.iter().enumerate() {
            let off = if i == 0 {
                0.0
            } else {
                self.e[i - 1] * self.e[i - 1]
            };
            q = di - x - if i == 0 { 0.0 } else { off / q };
            if q == 0.0 {
                q = -f64::EPSILON * (di.abs() + x.abs()).max(1.0);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.d.len();
        (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let r = if i > 0 { self.e[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.e[i].abs() } else { 0.0 };
            (lo.min(self.d[i] - r), hi.max(self.d[i] + r))
        })
    }

    /// The `k`-th smallest eigenvalue (zero-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn lowest(&self, count: usize) -> Vec<f64> {
        (0..count.min(self.d.len()))
            .map(|k| self.eigenvalue(k))
            .collect()
    }
}

fn check_params(a: f64, b: f64) -> Result<(), SpectralError> {
    if b <= 0.0 || !b.is_finite() {
        return Err(SpectralError::InvalidParameter("b must be positive".into()));
    }
    if !(a >= 0.0) {
        return Err(SpectralError::InvalidParameter(format!(
            "a = {a}: the Dirichlet-at-origin solver needs a >= 0"
        )));
    }
    Ok(())
}

/// Three-point discretization of `B = −∂² + 2b x² + 2a/x²` on the grid interior.
pub fn discretize_b(a: f64, b: f64, grid: &Grid1D) -> SymTridiagonal {
    let h = grid.h();
    let inv_h2 = 1.0 / (h * h);
    let d = grid
        .interior()
        .map(|x| 2.0 * inv_h2 + 2.0 * b * x * x + 2.0 * a / (x * x))
        .collect::<Vec<_>>();
    let e = vec![-inv_h2; d.len().saturating_sub(1)];
    SymTridiagonal { d, e }
}

/// Lowest `count` eigenvalues of the discretized `B_i`.
///
/// For `a > 0` the grid is the half line with a Dirichlet wall at `x_min`. For
/// `a = 0` the potential is regular and the full line `[−x_max, x_max]` is used
/// instead, giving the even and odd states together.
pub fn fd_eigen_1d(a: f64, b: f64, grid: &Grid1D, count: usize) -> Result<Vec<f64>, SpectralError> {
    check_params(a, b)?;
    let mat = if a == 0.0 {
        let h = 2.0 * grid.x_max() / grid.intervals() as f64;
        let inv_h2 = 1.0 / (h * h);
        let d = (1..grid.intervals())
            .map(|k| {
                let x = -grid.x_max() + h * k as f64;
                2.0 * inv_h2 + 2.0 * b * x * x
            })
            .collect::<Vec<_>>();
        let e = vec![-inv_h2; d.len().saturating_sub(1)];
        SymTridiagonal { d, e }
    } else {
        discretize_b(a, b, grid)
    };
    if mat.d.len() < count {
        return Err(SpectralError::InvalidGrid(
            "grid has fewer points than requested eigenvalues".into(),
        ));
    }
    Ok(mat.lowest(count))
}

/// Eigenvalues on `grid` and on the refined grid, with the Richardson
/// combination `(4λ_{h/2} − λ_h)/3`.
#[derive(Clone, Debug)]
pub struct RichardsonEigen {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub extrapolated: Vec<f64>,
}

pub fn fd_eigen_richardson(
    a: f64,
    b: f64,
    grid: &Grid1D,
    count: usize,
) -> Result<RichardsonEigen, SpectralError> {
    let coarse = fd_eigen_1d(a, b, grid, count)?;
    let fine = fd_eigen_1d(a, b, &grid.refined(), count)?;
    let extrapolated = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    Ok(RichardsonEigen {
        coarse,
        fine,
        extrapolated,
    })
}

/// `e(B) = 2√(2b)(2q + ν + 1)` on the `+` branch.
pub fn b_eigenvalue_exact(a: f64, b: f64, q: u32) -> f64 {
    let nu = 0.5 * (1.0 + 8.0 * a).sqrt();
    2.0 * (2.0 * b).sqrt() * (2.0 * f64::from(q) + nu + 1.0)
}

/// Levels of `B` for `a = 0` on the full line: `2√(2b)(m + ½)`.
pub fn b_eigenvalue_full_line(b: f64, m: u32) -> f64 {
    2.0 * (2.0 * b).sqrt() * (f64::from(m) + 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_count_on_diagonal_matrix() {
        let m = SymTridiagonal {
            d: vec![3.0, 1.0, 2.0],
            e: vec![0.0, 0.0],
        };
        assert_eq!(m.count_below(1.5), 1);
        for (got, want) in m.lowest(3).iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn two_by_two_eigenvalues() {
        let m = SymTridiagonal {
            d: vec![2.0, 2.0],
            e: vec![1.0],
        };
        assert!((m.eigenvalue(0) - 1.0).abs() < 1e-12);
        assert!((m.eigenvalue(1) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn grid_invariants() {
        assert!(Grid1D::new(0.0, 1.0, 100).is_err());
        assert!(Grid1D::new(0.1, 0.05, 100).is_err());
        assert!(Grid1D::new(0.1, 1.0, 7).is_err());
        assert!(Grid1D::reference(0.0, 100).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = Grid1D::reference(0.5, 100).unwrap();
        assert!(fd_eigen_1d(1.0, -1.0, &g, 3).is_err());
        assert!(fd_eigen_1d(-0.1, 0.5, &g, 3).is_err());
    }
}
