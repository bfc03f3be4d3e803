use crate::opalg::{rat, Scalar};

use super::{QOscError, QuadAlgConstants};

/// Univariate polynomial in `ξ = n + u`, coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureFunction<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> StructureFunction<T> {
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_ring_zero()) {
            coeffs.pop();
        }
        StructureFunction { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `ξ − r`.
    pub fn linear_root(r: &T) -> Self {
        Self::from_coeffs(vec![r.neg(), T::from_int(1)])
    }

    /// `c0 + c1 ξ`.
    pub fn linear(c0: T, c1: T) -> Self {
        Self::from_coeffs(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, xi: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::from_int(0), |acc, c| acc.ring_mul(xi).ring_add(c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = T::from_int(0);
        Self::from_coeffs(
            (0..len)
                .map(|k| {
                    self.coeffs
                        .get(k)
                        .unwrap_or(&zero)
                        .ring_add(rhs.coeffs.get(k).unwrap_or(&zero))
                })
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&T::from_int(-1)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::from_coeffs(Vec::new());
        }
        let mut out = vec![T::from_int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].ring_add(&a.ring_mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.ring_mul(k)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(T::from_int(1)), |acc, _| acc.mul(self))
    }

    /// `Π (ξ − r)` over the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots.iter().fold(Self::constant(T::from_int(1)), |acc, r| {
            acc.mul(&Self::linear_root(r))
        })
    }

    /// Value at `ξ = n + u`.
    pub fn at(&self, n: i64, u: &T) -> T {
        self.eval(&T::from_int(n).ring_add(u))
    }
}

/// Structure function of the `γ = 0, ε ≠ 0` branch. `sqrt_epsilon` must square
/// to `ε`; `k` is the Casimir value.
pub fn structure_function_gamma0<T: Scalar>(
    c: &QuadAlgConstants<T>,
    k: &T,
    sqrt_epsilon: &T,
) -> Result<StructureFunction<T>, QOscError> {
    if !c.gamma.is_ring_zero() {
        return Err(QOscError::Precondition(
            "γ = 0 branch needs gamma = 0".into(),
        ));
    }
    if c.epsilon.is_ring_zero() {
        return Err(QOscError::Precondition(
            "γ = 0 branch needs epsilon != 0".into(),
        ));
    }
    let se2 = sqrt_epsilon.ring_mul(sqrt_epsilon);
    if !se2.approx_eq(&c.epsilon, 1e-12) {
        return Err(QOscError::Precondition(
            "sqrt_epsilon does not square to epsilon".into(),
        ));
    }
    let QuadAlgConstants {
        alpha,
        delta,
        epsilon,
        zeta,
        a,
        d,
        z,
        ..
    } = c;
    let q = |x: &T, y: &T| x.div(y);
    let se = sqrt_epsilon;
    let ze = q(zeta, epsilon);
    let ds = q(delta, se);
    let zs = q(z, se);
    let dde = q(&delta.ring_mul(delta), epsilon);
    let ase = a.ring_mul(se);

    let c0 = q(k, epsilon)
        .neg()
        .ring_sub(&zs)
        .ring_sub(&ds.ring_mul(&ze))
        .ring_add(&ze.ring_mul(&ze))
        .scale_by(&rat(1, 4));
    let c1 = d
        .scale_int(3)
        .ring_sub(&ase)
        .ring_sub(&alpha.ring_mul(&ds).scale_int(3))
        .ring_add(&dde.scale_int(3))
        .ring_sub(&zs.scale_int(6))
        .ring_add(&alpha.ring_mul(&ze).scale_int(6))
        .ring_sub(&ds.ring_mul(&ze).scale_int(6))
        .scale_by(&rat(-1, 12));
    let c2 = alpha
        .ring_mul(alpha)
        .ring_add(d)
        .ring_sub(&ase)
        .ring_sub(&alpha.ring_mul(&ds).scale_int(3))
        .ring_add(&dde)
        .ring_add(&alpha.ring_mul(&ze).scale_int(2))
        .scale_by(&rat(1, 4));
    let c3 = alpha
        .ring_mul(alpha)
        .scale_int(3)
        .ring_sub(&ase)
        .ring_sub(&alpha.ring_mul(&ds).scale_int(3))
        .scale_by(&rat(-1, 6));
    let c4 = alpha.ring_mul(alpha).scale_by(&rat(1, 4));
    Ok(StructureFunction::from_coeffs(vec![c0, c1, c2, c3, c4]))
}

/// Which reading of the `γ ≠ 0` display to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaNonzeroVariant {
    /// Verbatim, including `[2ξ+1]²` in the `48γ⁶` term.
    Printed,
    /// `[2ξ+1]` to the first power in the `48γ⁶` term.
    Corrected,
}

/// Structure function of the `γ ≠ 0` branch with Casimir value `k`.
pub fn structure_function_gamma_nonzero<T: Scalar>(
    c: &QuadAlgConstants<T>,
    k: &T,
    variant: GammaNonzeroVariant,
) -> Result<StructureFunction<T>, QOscError> {
    if c.gamma.is_ring_zero() {
        return Err(QOscError::Precondition(
            "γ ≠ 0 branch needs gamma != 0".into(),
        ));
    }
    let QuadAlgConstants {
        alpha: al,
        gamma: ga,
        delta: de,
        epsilon: ep,
        zeta: ze,
        a,
        d,
        z,
    } = c;
    let m = |xs: &[&T]| xs.iter().fold(T::from_int(1), |acc, x| acc.ring_mul(x));
    let sum = |xs: &[(i64, T)]| {
        xs.iter()
            .fold(T::from_int(0), |acc, (k, x)| acc.ring_add(&x.scale_int(*k)))
    };
    let pw = |x: &T, e: u32| (0..e).fold(T::from_int(1), |acc, _| acc.ring_mul(x));
    let sf = |x: T| StructureFunction::constant(x);
    // t_c = 2ξ + c
    let t = |c0: i64| StructureFunction::linear(T::from_int(c0), T::from_int(2));
    let tm3 = t(-3);
    let tm1 = t(-1);
    let tp1 = t(1);

    let g2 = pw(ga, 2);
    let g4 = pw(ga, 4);
    let g6 = pw(ga, 6);
    let g8 = pw(ga, 8);

    let lead = sum(&[(3, m(&[al, al])), (4, m(&[a, ga]))]);
    let term1 = sf(g8.ring_mul(&lead))
        .mul(&tm3.pow(2))
        .mul(&tm1.pow(4))
        .mul(&tp1.pow(2));

    let term2 = sf(g6.ring_mul(k).scale_int(-3072)).mul(&tm1.pow(2));

    let c48 = sum(&[
        (1, m(&[al, al, ep])),
        (-1, m(&[al, ga, de])),
        (1, m(&[a, ga, ep])),
        (-1, m(&[ga, ga, d])),
    ]);
    let e48 = match variant {
        GammaNonzeroVariant::Printed => 2,
        GammaNonzeroVariant::Corrected => 1,
    };
    let term3 = sf(g6.ring_mul(&c48).scale_int(-48))
        .mul(&tm1.pow(4))
        .mul(&tp1.pow(e48))
        .mul(&tm3);

    let c32 = sum(&[
        (3, m(&[al, al, ep, ep])),
        (4, m(&[al, ga, ga, ze])),
        (-6, m(&[al, ga, de, ep])),
        (2, m(&[a, ga, ep, ep])),
        (2, m(&[ga, ga, de, de])),
        (-4, m(&[ga, ga, d, ep])),
        (8, m(&[ga, ga, ga, z])),
    ]);
    // 12ξ² − 12ξ − 1
    let quad =
        StructureFunction::from_coeffs(vec![T::from_int(-1), T::from_int(-12), T::from_int(12)]);
    let term4 = sf(g4.ring_mul(&c32).scale_int(32))
        .mul(&tm1.pow(2))
        .mul(&quad);

    let c768 = sum(&[
        (1, m(&[al, ep, ep])),
        (4, m(&[ga, ga, ze])),
        (-2, m(&[ga, de, ep])),
    ]);
    let term5 = sf(c768.ring_mul(&c768).scale_int(768));

    let c256 = sum(&[
        (3, m(&[al, al, ep, ep, ep])),
        (4, m(&[al, &g4, ze])),
        (12, m(&[al, ga, ga, ze, ep])),
        (-9, m(&[al, ga, de, ep, ep])),
        (1, m(&[a, ga, ep, ep, ep])),
        (2, m(&[&g4, de, de])),
        (-12, m(&[ga, ga, ga, de, ze])),
        (6, m(&[ga, ga, de, de, ep])),
        (2, m(&[&g4, d, ep])),
        (-3, m(&[ga, ga, d, ep, ep])),
        (-4, m(&[&g4, ga, z])),
        (12, m(&[ga, ga, ga, z, ep])),
    ]);
    let term6 = sf(g2.ring_mul(&c256).scale_int(-256)).mul(&tm1.pow(2));

    Ok(term1
        .add(&term2)
        .add(&term3)
        .add(&term4)
        .add(&term5)
        .add(&term6))
}

/// Pair product `(1/1024b²)[4ξ−2−2ν_i][4ξ−2+2ν_i][8bξ−4b+4bν_j−s w][8bξ−4b−4bν_j−s w]`
/// with `b = s²/2` and `w` the eigenvalue of `2H − Σ_{k≠i,j} B_k`.
pub fn pair_factorized<T: Scalar>(nu_i: &T, nu_j: &T, s: &T, w: &T) -> StructureFunction<T> {
    let b = s.ring_mul(s).scale_by(&rat(1, 2));
    let lin = |c0: T, c1: T| StructureFunction::linear(c0, c1);
    let f1 = lin(T::from_int(-2).ring_sub(&nu_i.scale_int(2)), T::from_int(4));
    let f2 = lin(T::from_int(-2).ring_add(&nu_i.scale_int(2)), T::from_int(4));
    let base = b.scale_int(-4).ring_sub(&s.ring_mul(w));
    let f3 = lin(
        base.ring_add(&b.ring_mul(nu_j).scale_int(4)),
        b.scale_int(8),
    );
    let f4 = lin(
        base.ring_sub(&b.ring_mul(nu_j).scale_int(4)),
        b.scale_int(8),
    );
    let pref = T::from_int(1).div(&b.ring_mul(&b).scale_int(1024));
    f1.mul(&f2).mul(&f3).mul(&f4).scale(&pref)
}

/// The eight-factor chain product, roots `(2 ± y₁ ± y_{i+1})/4` and
/// `(2 ± z_{i−2} ± 2ν_i)/4`.
pub fn chain_factorized<T: Scalar>(y1: &T, y_next: &T, z_prev: &T, nu: &T) -> StructureFunction<T> {
    let two = T::from_int(2);
    let nu2 = nu.scale_int(2);
    let mut roots = Vec::with_capacity(8);
    for (p, q) in [(y1, y_next), (z_prev, &nu2)] {
        for sp in [1, -1] {
            for sq in [1, -1] {
                let r = two.ring_add(&p.scale_int(sp)).ring_add(&q.scale_int(sq));
                roots.push(r.scale_by(&rat(1, 4)));
            }
        }
    }
    StructureFunction::from_roots(&roots)
}

/// The six-factor top product, roots `(2 ± 2h/s)/4` and `(2 ± z_{N−2} ± 2ν_N)/4`.
pub fn top_factorized<T: Scalar>(h: &T, s: &T, z_prev: &T, nu: &T) -> StructureFunction<T> {
    let two = T::from_int(2);
    let hs = h.div(s).scale_int(2);
    let nu2 = nu.scale_int(2);
    let mut roots = vec![
        two.ring_sub(&hs).scale_by(&rat(1, 4)),
        two.ring_add(&hs).scale_by(&rat(1, 4)),
    ];
    for sp in [1, -1] {
        for sq in [1, -1] {
            let r = two
                .ring_add(&z_prev.scale_int(sp))
                .ring_add(&nu2.scale_int(sq));
            roots.push(r.scale_by(&rat(1, 4)));
        }
    }
    StructureFunction::from_roots(&roots)
}

/// Outcome of a pointwise ratio test between two structure functions.
#[derive(Clone, Debug)]
pub struct Proportionality {
    /// `lhs / rhs` at each sample, in sample order.
    pub ratios: Vec<f64>,
    pub samples: Vec<i64>,
    /// Largest relative deviation of any ratio from the first one.
    pub spread: f64,
}

impl Proportionality {
    pub fn constant(&self) -> Option<f64> {
        self.ratios.first().copied()
    }

    pub fn is_constant(&self, tol: f64) -> bool {
        !self.ratios.is_empty() && self.spread <= tol
    }
}

/// Compares `lhs(ξ = n + u_lhs)` with `rhs(n)` at the first `count` integers
/// `n ≥ 1` where `rhs` does not vanish. In floating point a sample is treated
/// as a root when `|rhs(n)|` is below `1e-8` times its larger neighbour.
pub fn proportionality<T: Scalar>(
    lhs: &StructureFunction<T>,
    u_lhs: &T,
    rhs: impl Fn(i64) -> T,
    count: usize,
) -> Proportionality {
    let mut ratios = Vec::with_capacity(count);
    let mut samples = Vec::with_capacity(count);
    let mut n = 1i64;
    while ratios.len() < count && n < 10_000 {
        let r = rhs(n);
        let vanishes = if T::EXACT {
            r.is_ring_zero()
        } else {
            let near = rhs(n - 1).to_f64().abs().max(rhs(n + 1).to_f64().abs());
            r.to_f64().abs() <= 1e-8 * near || r.to_f64() == 0.0
        };
        if !vanishes {
            let l = lhs.at(n, u_lhs);
            ratios.push(l.div(&r).to_f64());
            samples.push(n);
        }
        n += 1;
    }
    let first = ratios.first().copied().unwrap_or(f64::NAN);
    let spread = ratios
        .iter()
        .map(|r| (r - first).abs() / first.abs().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    Proportionality {
        ratios,
        samples,
        spread,
    }
}
