use std::cmp::Ordering;

use rayon::prelude::*;

use crate::opalg::{rat, Scalar};

use super::{
    pair_family, solve_constraints_at, top_family, NumberOperatorLaw, QOscError, SpectrumSolution,
};

/// Numeric model parameters: `a_1..a_N`, `s = √(2b)` and branch signs `ε_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SwParams<T> {
    a: Vec<T>,
    s: T,
    nu: Vec<T>,
    branches: Vec<i8>,
}

impl<T: Scalar> SwParams<T> {
    pub fn new(a: Vec<T>, s: T, branches: Vec<i8>) -> Result<Self, QOscError> {
        if a.is_empty() {
            return Err(QOscError::InvalidParameter(
                "need at least one coordinate".into(),
            ));
        }
        if branches.len() != a.len() {
            return Err(QOscError::InvalidParameter(format!(
                "{} branch signs for N = {}",
                branches.len(),
                a.len()
            )));
        }
        if branches.iter().any(|e| *e != 1 && *e != -1) {
            return Err(QOscError::InvalidParameter(
                "branch signs must be +1 or -1".into(),
            ));
        }
        if !s.is_positive() {
            return Err(QOscError::InvalidParameter("b must be positive".into()));
        }
        let nu = a
            .iter()
            .enumerate()
            .map(|(i, ai)| {
                let disc = T::from_int(1).ring_add(&ai.scale_int(8));
                disc.sqrt().map(|r| r.scale_by(&rat(1, 2))).ok_or_else(|| {
                    QOscError::InvalidParameter(format!(
                        "nu_{} = sqrt(1 + 8 a_{})/2 is not available (1 + 8a = {:?})",
                        i + 1,
                        i + 1,
                        disc
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SwParams { a, s, nu, branches })
    }

    /// Parameters from `b` instead of `s`.
    pub fn from_b(a: Vec<T>, b: T, branches: Vec<i8>) -> Result<Self, QOscError> {
        if !b.is_positive() {
            return Err(QOscError::InvalidParameter("b must be positive".into()));
        }
        let s = b
            .scale_int(2)
            .sqrt()
            .ok_or_else(|| QOscError::InvalidParameter("sqrt(2b) is not available".into()))?;
        Self::new(a, s, branches)
    }

    pub fn dimension(&self) -> usize {
        self.a.len()
    }
    pub fn a(&self) -> &[T] {
        &self.a
    }
    pub fn s(&self) -> &T {
        &self.s
    }
    pub fn b(&self) -> T {
        self.s.ring_mul(&self.s).scale_by(&rat(1, 2))
    }
    pub fn nu(&self) -> &[T] {
        &self.nu
    }
    pub fn branches(&self) -> &[i8] {
        &self.branches
    }
    pub fn with_branches(&self, branches: Vec<i8>) -> Result<Self, QOscError> {
        Self::new(self.a.clone(), self.s.clone(), branches)
    }

    /// `ε_i ν_i` (zero-based `i`).
    pub fn signed_nu(&self, i: usize) -> T {
        self.nu[i].scale_int(self.branches[i].into())
    }

    fn signed_nu_sum(&self, range: std::ops::Range<usize>) -> T {
        range.fold(T::from_int(0), |acc, i| acc.ring_add(&self.signed_nu(i)))
    }

    fn a_sum(&self, range: std::ops::Range<usize>) -> T {
        self.a[range]
            .iter()
            .fold(T::from_int(0), |acc, x| acc.ring_add(x))
    }
}

/// Sign vectors allowed by the branch policy: `+1` always, `−1` only when
/// `−1/8 < a_i < 3/8`.
pub fn admissible_branches<T: Scalar>(a: &[T]) -> Vec<Vec<i8>> {
    let lo = T::from_rational(&rat(-1, 8));
    let hi = T::from_rational(&rat(3, 8));
    a.iter().fold(vec![Vec::new()], |acc, ai| {
        let both = *ai > lo && *ai < hi;
        acc.into_iter()
            .flat_map(|prefix| {
                let signs: &[i8] = if both { &[1, -1] } else { &[1] };
                signs
                    .iter()
                    .map(|e| {
                        let mut v = prefix.clone();
                        v.push(*e);
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    })
}

/// An energy with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct Level<T> {
    pub energy: T,
    pub multiplicity: u64,
}

/// All tuples of `k` non-negative integers with sum at most `n_max`, in
/// graded lexicographic order.
pub fn bounded_tuples(k: usize, n_max: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=budget {
            prefix.push(v);
            rec(k - 1, budget - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n_max, &mut Vec::with_capacity(k), &mut out);
    out.sort_by_key(|t| (t.iter().sum::<u32>(), t.clone()));
    out
}

fn cmp_scalar<T: Scalar>(x: &T, y: &T) -> Ordering {
    x.partial_cmp(y).unwrap_or(Ordering::Equal)
}

/// Groups energies into levels, merging values equal within `tol`.
pub fn group_levels<T: Scalar>(mut energies: Vec<T>, tol: f64) -> Vec<Level<T>> {
    energies.sort_by(cmp_scalar);
    let mut out: Vec<Level<T>> = Vec::new();
    for e in energies {
        match out.last_mut() {
            Some(last) if last.energy.approx_eq(&e, tol) => last.multiplicity += 1,
            _ => out.push(Level {
                energy: e,
                multiplicity: 1,
            }),
        }
    }
    out
}

/// `true` when both level lists agree in energy (to `tol`) and multiplicity.
pub fn same_levels<T: Scalar>(x: &[Level<T>], y: &[Level<T>], tol: f64) -> bool {
    x.len() == y.len()
        && x.iter()
            .zip(y)
            .all(|(l, r)| l.multiplicity == r.multiplicity && l.energy.approx_eq(&r.energy, tol))
}

const GROUP_TOL: f64 = 1e-12;

fn enumerate<T: Scalar>(
    k: usize,
    n_max: u32,
    f: impl Fn(&[u32]) -> Result<T, QOscError> + Sync,
) -> Result<Vec<Level<T>>, QOscError> {
    let energies = bounded_tuples(k, n_max)
        .par_iter()
        .map(|t| f(t))
        .collect::<Result<Vec<T>, _>>()?;
    Ok(group_levels(energies, GROUP_TOL))
}

/// `E = s Σ (2n_i + ε_iν_i + 1)`.
pub fn cartesian_energy<T: Scalar>(p: &SwParams<T>, n: &[u32]) -> Result<T, QOscError> {
    if n.len() != p.dimension() {
        return Err(QOscError::InvalidParameter(
            "need one quantum number per coordinate".into(),
        ));
    }
    let total: i64 = n.iter().map(|v| i64::from(*v)).sum();
    let body =
        T::from_int(2 * total + p.dimension() as i64).ring_add(&p.signed_nu_sum(0..p.dimension()));
    Ok(p.s.ring_mul(&body))
}

/// Levels from the Cartesian separation with `Σ n_i ≤ n_max`.
pub fn spectrum_cartesian<T: Scalar>(
    p: &SwParams<T>,
    n_max: u32,
) -> Result<Vec<Level<T>>, QOscError> {
    enumerate(p.dimension(), n_max, |t| cartesian_energy(p, t))
}

/// Quantities of one hyperspherical separated state.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersphericalLevel<T> {
    pub energy: T,
    /// `Λ_l = 2Σ_{i≥l} τ_i + Σ_{i≥l} ε_iν_i + (N − l)` for `l = 1..N`; `Λ_1` is
    /// the Laguerre parameter `2ν`.
    pub lambda: Vec<T>,
    /// `k_l = Λ_l² − ((N − l − 1)/2)²` for `l = 1..N−1`.
    pub k: Vec<T>,
    /// `μ_l = 2Σ_{i≥l} τ_i + Σ_{i≥l} ε_iν_i + (N − l − 2)/2` for `l = 1..N−1`.
    pub mu: Vec<T>,
}

impl<T: Scalar> HypersphericalLevel<T> {
    /// Laguerre parameter `2ν` of the radial factor.
    pub fn two_nu(&self) -> &T {
        &self.lambda[0]
    }
}

/// Energy and separation constants for `τ_r` and `τ_1..τ_{N−1}`.
pub fn hyperspherical_level<T: Scalar>(
    p: &SwParams<T>,
    tau_r: u32,
    tau: &[u32],
) -> Result<HypersphericalLevel<T>, QOscError> {
    let n = p.dimension();
    if tau.len() + 1 != n {
        return Err(QOscError::InvalidParameter(format!(
            "need {} angular quantum numbers, got {}",
            n - 1,
            tau.len()
        )));
    }
    let lambda: Vec<T> = (1..=n)
        .map(|l| {
            let tsum: i64 = tau[l - 1..].iter().map(|v| i64::from(*v)).sum();
            T::from_int(2 * tsum + (n - l) as i64).ring_add(&p.signed_nu_sum(l - 1..n))
        })
        .collect();
    let k = (1..n)
        .map(|l| {
            let c = T::from_rational(&rat((n - l - 1) as i64, 2));
            lambda[l - 1]
                .ring_mul(&lambda[l - 1])
                .ring_sub(&c.ring_mul(&c))
        })
        .collect();
    let mu = (1..n)
        .map(|l| {
            lambda[l - 1]
                .ring_sub(&T::from_int((n - l) as i64))
                .ring_add(&T::from_rational(&rat(n as i64 - l as i64 - 2, 2)))
        })
        .collect();
    let energy =
        p.s.ring_mul(&T::from_int(2 * i64::from(tau_r) + 1).ring_add(&lambda[0]));
    Ok(HypersphericalLevel {
        energy,
        lambda,
        k,
        mu,
    })
}

/// Levels from the hyperspherical separation with `τ_r + Σ τ_i ≤ n_max`.
pub fn spectrum_hyperspherical<T: Scalar>(
    p: &SwParams<T>,
    n_max: u32,
) -> Result<Vec<Level<T>>, QOscError> {
    enumerate(p.dimension(), n_max, |t| {
        Ok(hyperspherical_level(p, t[0], &t[1..])?.energy)
    })
}

fn pick<'a, T: Scalar>(
    sols: &'a [SpectrumSolution<T>],
    signs: &[i8],
    what: &str,
) -> Result<&'a SpectrumSolution<T>, QOscError> {
    sols.iter()
        .find(|s| s.branch_signs == signs && s.positivity_ok)
        .ok_or_else(|| QOscError::NoAdmissibleSolution(format!("{what} with signs {signs:?}")))
}

/// Number-operator laws `e(B_i) = 4s(q + u_i)` obtained from the pair
/// substructures `(i, i+1 mod N)`; requires `N ≥ 2`.
pub fn pair_laws<T: Scalar>(
    p: &SwParams<T>,
    tol: f64,
) -> Result<Vec<NumberOperatorLaw<T>>, QOscError> {
    let n = p.dimension();
    if n < 2 {
        return Err(QOscError::InvalidParameter(
            "pair substructures need N >= 2".into(),
        ));
    }
    (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let fam = pair_family(&p.nu[i], &p.nu[j], &p.s);
            // p = 1 exercises positivity at n = 1
            let sols = solve_constraints_at(&fam, 1, tol);
            let sol = pick(&sols, &[p.branches[i], p.branches[j]], "pair substructure")?;
            Ok(NumberOperatorLaw::Linear {
                sqrt_epsilon: p.s.scale_int(4),
                u: sol.u.clone(),
            })
        })
        .collect()
}

/// `E = ½ Σ e(B_i)(q_i)` using the pair-substructure laws.
pub fn substructure_energy<T: Scalar>(laws: &[NumberOperatorLaw<T>], q: &[u32]) -> T {
    laws.iter()
        .zip(q)
        .fold(T::from_int(0), |acc, (law, qi)| {
            acc.ring_add(&law.eval(*qi))
        })
        .scale_by(&rat(1, 2))
}

/// Levels from the pair substructures with `Σ q_i ≤ n_max`.
pub fn spectrum_substructure<T: Scalar>(
    p: &SwParams<T>,
    n_max: u32,
) -> Result<Vec<Level<T>>, QOscError> {
    let laws = pair_laws(p, 1e-10)?;
    enumerate(p.dimension(), n_max, |q| Ok(substructure_energy(&laws, q)))
}

/// One state of the Racah-chain derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct RacahLevel<T> {
    /// `z_0..z_{N−2}`.
    pub z: Vec<T>,
    /// Eigenvalues of `Z_1..Z_{N−2}` from the quadratic number-operator law.
    pub e_z_chain: Vec<T>,
    pub y1: T,
    /// Eigenvalue of `Y_1` (the total angular operator `Z`).
    pub e_z: T,
    pub e_h: T,
    /// Top-substructure solution that fixed `e(H)`.
    pub top: SpectrumSolution<T>,
}

/// Spectrum through the chain `Z_1 ⊂ Z_2 ⊂ … ⊂ Y_1` and the top substructure,
/// for `q_1..q_{N−1}` and `p_N`.
pub fn racah_spectrum<T: Scalar>(
    p: &SwParams<T>,
    q: &[u32],
    p_n: u32,
) -> Result<RacahLevel<T>, QOscError> {
    let n = p.dimension();
    if n < 2 {
        return Err(QOscError::InvalidParameter(
            "the Racah chain needs N >= 2".into(),
        ));
    }
    if q.len() + 1 != n {
        return Err(QOscError::InvalidParameter(format!(
            "need {} chain quantum numbers, got {}",
            n - 1,
            q.len()
        )));
    }
    let gamma = T::from_int(8);
    let eps_upto = |m: usize| {
        p.a_sum(0..m)
            .scale_int(32)
            .ring_sub(&T::from_int(12 * m as i64))
    };
    let u_of = |z: &T, i: usize| {
        T::from_int(2)
            .ring_add(z)
            .ring_add(&p.signed_nu(i).scale_int(2))
            .scale_by(&rat(1, 4))
    };

    let mut z = vec![p.signed_nu(0).scale_int(2)];
    let mut e_z_chain = Vec::with_capacity(n.saturating_sub(2));
    for l in 1..n - 1 {
        // link i = l + 1 has E = Z_l, u = (2 + z_{l−1} + 2ε_{l+1}ν_{l+1})/4
        let u = u_of(&z[l - 1], l);
        let law = NumberOperatorLaw::Quadratic {
            gamma: gamma.clone(),
            epsilon: eps_upto(l + 1),
            u: u.clone(),
        };
        e_z_chain.push(law.eval(q[l - 1]));
        z.push(T::from_int(q[l - 1].into()).ring_add(&u).scale_int(4));
    }
    let z_top = z[n - 2].clone();
    let u_top = u_of(&z_top, n - 1);
    let q_top = q[n - 2];
    let top_law = NumberOperatorLaw::Quadratic {
        gamma,
        epsilon: eps_upto(n),
        u: u_top.clone(),
    };
    let e_z = top_law.eval(q_top);
    let y1 = T::from_int(q_top.into()).ring_add(&u_top).scale_int(4);

    let fam = top_family(&p.s, &z_top, &p.nu[n - 1]);
    let sols = solve_constraints_at(&fam, p_n + q_top, 1e-10);
    let sol = sols
        .iter()
        .find(|s| {
            s.u.approx_eq(&u_top, 1e-12)
                && s.branch_signs == [1, p.branches[n - 1], 1]
                && s.positivity_ok
        })
        .ok_or_else(|| QOscError::NoAdmissibleSolution("top substructure".into()))?
        .clone();
    Ok(RacahLevel {
        z,
        e_z_chain,
        y1,
        e_z,
        e_h: sol.central.clone(),
        top: sol,
    })
}

/// Levels from the Racah chain with `Σ q_i + p_N ≤ n_max`.
pub fn spectrum_racah<T: Scalar>(p: &SwParams<T>, n_max: u32) -> Result<Vec<Level<T>>, QOscError> {
    let n = p.dimension();
    enumerate(n, n_max, |t| {
        Ok(racah_spectrum(p, &t[..n - 1], t[n - 1])?.e_h)
    })
}

/// `e(Y_1) = ¼(3N − 4 − 8Σa) + (2Σq + Σε_iν_i + N − 1)²`.
pub fn total_angular_eigenvalue<T: Scalar>(p: &SwParams<T>, q: &[u32]) -> T {
    let n = p.dimension();
    let qsum: i64 = q.iter().map(|v| i64::from(*v)).sum();
    let half_y = T::from_int(2 * qsum + n as i64 - 1).ring_add(&p.signed_nu_sum(0..n));
    T::from_int(3 * n as i64 - 4)
        .ring_sub(&p.a_sum(0..n).scale_int(8))
        .scale_by(&rat(1, 4))
        .ring_add(&half_y.ring_mul(&half_y))
}
