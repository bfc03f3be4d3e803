//! Pointwise comparisons between the generic structure functions evaluated on
//! the SW substructure constants and the factorized products.

use crate::opalg::{rat, Scalar};

use super::{
    chain_casimir_central, chain_constants, chain_factorized, pair_casimir_central, pair_constants,
    pair_factorized, proportionality, structure_function_gamma0, structure_function_gamma_nonzero,
    top_casimir_central, top_constants, top_factorized, ChainCentral, GammaNonzeroVariant,
    Proportionality, QOscError,
};

fn nu_of<T: Scalar>(a: &T) -> Result<T, QOscError> {
    T::from_int(1)
        .ring_add(&a.scale_int(8))
        .sqrt()
        .map(|r| r.scale_by(&rat(1, 2)))
        .ok_or_else(|| QOscError::InvalidParameter("nu is not available for this a".into()))
}

fn sum<T: Scalar>(xs: &[T]) -> T {
    xs.iter().fold(T::from_int(0), |acc, x| acc.ring_add(x))
}

/// `¼(c − 8Σa + x²)`.
fn quarter_form<T: Scalar>(c: i64, a: &[T], x: &T) -> T {
    T::from_int(c)
        .ring_sub(&sum(a).scale_int(8))
        .ring_add(&x.ring_mul(x))
        .scale_by(&rat(1, 4))
}

#[derive(Clone, Debug)]
pub struct PairCrosscheck {
    pub u: f64,
    /// `2H − Σ_{k≠i,j} β_k` imposed by `Φ(p+1) = 0`.
    pub w: f64,
    /// Against the bracketed `1/(1024b²)` product.
    pub vs_bracket: Proportionality,
    /// Against `n(n + ε_iν_i)(n − p − 1)(n − ε_jν_j − p − 1)`.
    pub vs_product: Proportionality,
    /// Against the printed `n(n + ε_iν_i)(n − p − 1)(n + ε_jν_j − p − 1)`.
    pub vs_printed_product: Proportionality,
    /// `|Φ(0)|` and `|Φ(p+1)|`.
    pub zero_residuals: (f64, f64),
    /// `|Φ(p+1)|` under the printed constraint `w = 2s(p + 1 + ε_iν_i + ε_jν_j)`.
    pub printed_constraint_residual: f64,
}

/// γ = 0 structure function on the pair constants versus the factorized forms.
pub fn pair_crosscheck<T: Scalar>(
    a_i: &T,
    a_j: &T,
    s: &T,
    signs: (i8, i8),
    p: u32,
    points: usize,
) -> Result<PairCrosscheck, QOscError> {
    let nu_i = nu_of(a_i)?.scale_int(signs.0.into());
    let nu_j = nu_of(a_j)?.scale_int(signs.1.into());
    let b = s.ring_mul(s).scale_by(&rat(1, 2));
    let pp = i64::from(p);
    let build = |w: &T| {
        let c = pair_constants(w, a_i, a_j, &b);
        let k = pair_casimir_central(w, a_i, a_j, &b);
        structure_function_gamma0(&c, &k, &s.scale_int(4))
    };
    let w = s
        .scale_int(2)
        .ring_mul(&T::from_int(2 * pp + 2).ring_add(&nu_i).ring_add(&nu_j));
    let phi = build(&w)?;
    let u = T::from_rational(&rat(1, 2)).ring_add(&nu_i.scale_by(&rat(1, 2)));

    let bracket = pair_factorized(&nu_i, &nu_j, s, &w);
    let vs_bracket = proportionality(&phi, &u, |n| bracket.at(n, &u), points);
    let product = |n: i64, sign: i64| {
        let n_t = T::from_int(n);
        n_t.ring_mul(&n_t.ring_add(&nu_i))
            .ring_mul(&T::from_int(n - pp - 1))
            .ring_mul(&T::from_int(n - pp - 1).ring_add(&nu_j.scale_int(sign)))
    };
    let vs_product = proportionality(&phi, &u, |n| product(n, -1), points);
    let vs_printed_product = proportionality(&phi, &u, |n| product(n, 1), points);

    let w_printed = s
        .scale_int(2)
        .ring_mul(&T::from_int(pp + 1).ring_add(&nu_i).ring_add(&nu_j));
    let printed_constraint_residual = build(&w_printed)?.at(pp + 1, &u).to_f64().abs();

    Ok(PairCrosscheck {
        u: u.to_f64(),
        w: w.to_f64(),
        vs_bracket,
        vs_product,
        vs_printed_product,
        zero_residuals: (
            phi.at(0, &u).to_f64().abs(),
            phi.at(pp + 1, &u).to_f64().abs(),
        ),
        printed_constraint_residual,
    })
}

#[derive(Clone, Debug)]
pub struct ChainCrosscheck {
    pub printed: Proportionality,
    pub corrected: Proportionality,
}

/// γ ≠ 0 structure function on the constants of chain link `i` (one-based,
/// `2 ≤ i ≤ N−1`) versus the eight-factor product, at eigenvalue labels
/// `y₁`, `y_{i+1}`, `z_{i−2}`.
pub fn chain_crosscheck<T: Scalar>(
    a: &[T],
    i: usize,
    y1: &T,
    y_next: &T,
    z_prev: &T,
    points: usize,
) -> Result<ChainCrosscheck, QOscError> {
    let n = a.len();
    if i < 2 || i + 1 > n {
        return Err(QOscError::InvalidParameter(format!(
            "chain link {i} for N = {n}"
        )));
    }
    let nu = nu_of(&a[i - 1])?;
    let central = ChainCentral {
        y1: quarter_form(3 * n as i64 - 4, a, y1),
        y_next: quarter_form(3 * (n - i) as i64 - 4, &a[i..], y_next),
        z_prev: quarter_form(3 * i as i64 - 7, &a[..i - 1], z_prev),
    };
    let c = chain_constants(i, a, &central);
    let k = chain_casimir_central(i, a, &central);
    let u = T::from_int(2)
        .ring_add(z_prev)
        .ring_add(&nu.scale_int(2))
        .scale_by(&rat(1, 4));
    let product = chain_factorized(y1, y_next, z_prev, &nu);
    let cmp = |variant| -> Result<Proportionality, QOscError> {
        let phi = structure_function_gamma_nonzero(&c, &k, variant)?;
        Ok(proportionality(&phi, &u, |m| product.at(m, &u), points))
    };
    Ok(ChainCrosscheck {
        printed: cmp(GammaNonzeroVariant::Printed)?,
        corrected: cmp(GammaNonzeroVariant::Corrected)?,
    })
}

#[derive(Clone, Debug)]
pub struct TopCrosscheck {
    pub printed: Proportionality,
    pub corrected: Proportionality,
}

/// γ ≠ 0 structure function on the top constants versus the six-factor
/// product, at energy `h` and label `z_{N−2}`.
pub fn top_crosscheck<T: Scalar>(
    a: &[T],
    s: &T,
    h: &T,
    z_prev: &T,
    points: usize,
) -> Result<TopCrosscheck, QOscError> {
    let n = a.len();
    if n < 2 {
        return Err(QOscError::InvalidParameter(
            "top substructure needs N >= 2".into(),
        ));
    }
    let nu = nu_of(&a[n - 1])?;
    let b = s.ring_mul(s).scale_by(&rat(1, 2));
    let zv = quarter_form(3 * n as i64 - 7, &a[..n - 1], z_prev);
    let c = top_constants(a, h, &zv, &b);
    let k = top_casimir_central(a, h, &zv, &b);
    let u = T::from_int(2)
        .ring_add(z_prev)
        .ring_add(&nu.scale_int(2))
        .scale_by(&rat(1, 4));
    let product = top_factorized(h, s, z_prev, &nu);
    let cmp = |variant| -> Result<Proportionality, QOscError> {
        let phi = structure_function_gamma_nonzero(&c, &k, variant)?;
        Ok(proportionality(&phi, &u, |m| product.at(m, &u), points))
    };
    Ok(TopCrosscheck {
        printed: cmp(GammaNonzeroVariant::Printed)?,
        corrected: cmp(GammaNonzeroVariant::Corrected)?,
    })
}
