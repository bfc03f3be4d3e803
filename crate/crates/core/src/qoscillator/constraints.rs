use crate::opalg::{rat, Scalar};

/// Root `c + slope·X` of a factorized structure function, where `X` is the
/// central eigenvalue being solved for.
#[derive(Clone, Debug)]
pub struct AffineRoot<T> {
    pub constant: T,
    pub slope: T,
    /// Sign choices that produced this root, e.g. `[ε₁, ε₂]`.
    pub signs: Vec<i8>,
}

/// `Φ(ξ) = λ Π_k (ξ − r_k(X))` with affine roots in one unknown `X`.
#[derive(Clone, Debug)]
pub struct RootFamily<T> {
    pub name: &'static str,
    pub scale: T,
    pub roots: Vec<AffineRoot<T>>,
    /// `(c₀, c₁)` with energy `c₀ + c₁·X`, when `X` determines the energy.
    pub energy_map: Option<(T, T)>,
}

/// One finite-dimensional representation: `Φ(0) = Φ(p+1) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSolution<T> {
    pub u: T,
    pub p: u32,
    /// Signs of the root fixing `u`, then of the root fixing `p + 1`.
    pub branch_signs: Vec<i8>,
    pub zero_root: usize,
    pub top_root: usize,
    /// The solved central eigenvalue `X`.
    pub central: T,
    /// `Φ(n)` for `n = 1..=p`.
    pub phi_values: Vec<T>,
    /// Energy implied by `X`, empty when the family carries no energy map.
    pub energies: Vec<T>,
    pub positivity_ok: bool,
}

impl<T: Scalar> RootFamily<T> {
    pub fn roots_at(&self, x: &T) -> Vec<T> {
        self.roots
            .iter()
            .map(|r| r.constant.ring_add(&r.slope.ring_mul(x)))
            .collect()
    }

    /// `Φ(n)` for fixed `u` and `X`.
    pub fn eval(&self, n: i64, u: &T, x: &T) -> T {
        let xi = T::from_int(n).ring_add(u);
        self.roots_at(x)
            .iter()
            .fold(self.scale.clone(), |acc, r| acc.ring_mul(&xi.ring_sub(r)))
    }
}

/// Enumerates every way of matching `u` to one root and `p + 1 + u` to another,
/// for `0 ≤ p ≤ p_max`.
pub fn solve_constraints<T: Scalar>(
    family: &RootFamily<T>,
    p_max: u32,
    tol: f64,
) -> Vec<SpectrumSolution<T>> {
    (0..=p_max)
        .flat_map(|p| solve_constraints_at(family, p, tol))
        .collect()
}

/// Root matches for one `p`. Pairs of roots with equal slope leave `X`
/// undetermined and are skipped; results are deduplicated on `(u, X)`.
pub fn solve_constraints_at<T: Scalar>(
    family: &RootFamily<T>,
    p: u32,
    tol: f64,
) -> Vec<SpectrumSolution<T>> {
    let mut out: Vec<SpectrumSolution<T>> = Vec::new();
    let shift = T::from_int(i64::from(p) + 1);
    for (k, rk) in family.roots.iter().enumerate() {
        for (l, rl) in family.roots.iter().enumerate() {
            if k == l {
                continue;
            }
            let dslope = rl.slope.ring_sub(&rk.slope);
            if dslope.approx_eq(&T::from_int(0), tol) {
                continue;
            }
            // r_l(X) − r_k(X) = p + 1
            let x = shift
                .ring_sub(&rl.constant.ring_sub(&rk.constant))
                .div(&dslope);
            let u = rk.constant.ring_add(&rk.slope.ring_mul(&x));
            if out
                .iter()
                .any(|s| s.u.approx_eq(&u, tol) && s.central.approx_eq(&x, tol))
            {
                continue;
            }
            let values: Vec<T> = (1..=i64::from(p)).map(|n| family.eval(n, &u, &x)).collect();
            let positivity_ok = values
                .iter()
                .all(|v| v.is_positive() && v.to_f64().abs() > tol);
            let mut branch_signs = rk.signs.clone();
            branch_signs.extend(&rl.signs);
            out.push(SpectrumSolution {
                u,
                p,
                branch_signs,
                zero_root: k,
                top_root: l,
                energies: family
                    .energy_map
                    .iter()
                    .map(|(c0, c1)| c0.ring_add(&c1.ring_mul(&x)))
                    .collect(),
                central: x,
                phi_values: values,
                positivity_ok,
            });
        }
    }
    out
}

/// Pair family in `X = w`: roots `½ + σν_i/2` (label `[σ]`) and
/// `½ − σν_j/2 + w/(4s)` (label `[σ]`), scale `16`.
pub fn pair_family<T: Scalar>(nu_i: &T, nu_j: &T, s: &T) -> RootFamily<T> {
    let half = T::from_rational(&rat(1, 2));
    let zero = T::from_int(0);
    let slope = T::from_int(1).div(&s.scale_int(4));
    let mut roots = Vec::new();
    for sg in [1i8, -1] {
        roots.push(AffineRoot {
            constant: half.ring_add(&nu_i.scale_by(&rat(i64::from(sg), 2))),
            slope: zero.clone(),
            signs: vec![sg],
        });
    }
    for sg in [1i8, -1] {
        roots.push(AffineRoot {
            constant: half.ring_sub(&nu_j.scale_by(&rat(i64::from(sg), 2))),
            slope: slope.clone(),
            signs: vec![sg],
        });
    }
    RootFamily {
        name: "pair",
        scale: T::from_int(16),
        roots,
        energy_map: None,
    }
}

/// Chain family in `X = y₁`: roots `(2 + σ₁y₁ + σ₂y_{i+1})/4` and
/// `(2 + σ₁z_{i−2} + 2σ₂ν_i)/4`, scale `3·2³⁸`.
pub fn chain_family<T: Scalar>(y_next: &T, z_prev: &T, nu: &T) -> RootFamily<T> {
    let quarter = rat(1, 4);
    let two = T::from_int(2);
    let mut roots = Vec::new();
    for s1 in [1i8, -1] {
        for s2 in [1i8, -1] {
            roots.push(AffineRoot {
                constant: two
                    .ring_add(&y_next.scale_int(s2.into()))
                    .scale_by(&quarter),
                slope: T::from_rational(&rat(s1.into(), 4)),
                signs: vec![s1, s2],
            });
        }
    }
    for s1 in [1i8, -1] {
        for s2 in [1i8, -1] {
            roots.push(AffineRoot {
                constant: two
                    .ring_add(&z_prev.scale_int(s1.into()))
                    .ring_add(&nu.scale_int(2 * i64::from(s2)))
                    .scale_by(&quarter),
                slope: T::from_int(0),
                signs: vec![s1, s2],
            });
        }
    }
    RootFamily {
        name: "chain",
        scale: T::from_int(3 << 38),
        roots,
        energy_map: None,
    }
}

/// Top family in `X = h`: roots `(2 + 2σh/s)/4` and `(2 + σ₁z_{N−2} + 2σ₂ν_N)/4`,
/// scale `−3·2³⁸ s²`.
pub fn top_family<T: Scalar>(s: &T, z_prev: &T, nu: &T) -> RootFamily<T> {
    let quarter = rat(1, 4);
    let two = T::from_int(2);
    let mut roots = Vec::new();
    for sg in [-1i8, 1] {
        roots.push(AffineRoot {
            constant: T::from_rational(&rat(1, 2)),
            slope: T::from_int(sg.into()).div(&s.scale_int(2)),
            signs: vec![sg],
        });
    }
    for s1 in [1i8, -1] {
        for s2 in [1i8, -1] {
            roots.push(AffineRoot {
                constant: two
                    .ring_add(&z_prev.scale_int(s1.into()))
                    .ring_add(&nu.scale_int(2 * i64::from(s2)))
                    .scale_by(&quarter),
                slope: T::from_int(0),
                signs: vec![s1, s2],
            });
        }
    }
    let scale = s.ring_mul(s).scale_int(-(3 << 38));
    RootFamily {
        name: "top",
        scale,
        roots,
        energy_map: Some((T::from_int(0), T::from_int(1))),
    }
}

/// Eigenvalue of the diagonal generator `E` in terms of its number `q`.
#[derive(Clone, Debug, PartialEq)]
pub enum NumberOperatorLaw<T> {
    /// `e(E) = √ε (q + u)` for `γ = 0`.
    Linear { sqrt_epsilon: T, u: T },
    /// `e(E) = (γ/2)((q + u)² − ε/γ² − ¼)` for `γ ≠ 0`.
    Quadratic { gamma: T, epsilon: T, u: T },
}

impl<T: Scalar> NumberOperatorLaw<T> {
    pub fn eval(&self, q: u32) -> T {
        let q = T::from_int(q.into());
        match self {
            NumberOperatorLaw::Linear { sqrt_epsilon, u } => sqrt_epsilon.ring_mul(&q.ring_add(u)),
            NumberOperatorLaw::Quadratic { gamma, epsilon, u } => {
                let qu = q.ring_add(u);
                qu.ring_mul(&qu)
                    .ring_sub(&epsilon.div(&gamma.ring_mul(gamma)))
                    .ring_sub(&T::from_rational(&rat(1, 4)))
                    .ring_mul(gamma)
                    .scale_by(&rat(1, 2))
            }
        }
    }
}
