//! Three-generator substructures: the pair algebras `{B_i, A_ij, C_ij}` and the
//! links of the Racah chain `{Z_{i−1}, Y_i, C_i}` and `{Y_1, B_N, D}`.

use rayon::prelude::*;

use crate::opalg::{rat, Operator, ParamPoly};
use crate::qoscillator::{
    casimir_cubic, chain_casimir_central, chain_constants, pair_casimir_central,
    top_casimir_central, top_constants, ChainCentral,
};

use super::{GeneratorSet, RelationCheck, SwSymError};

fn scalar(p: ParamPoly) -> Operator {
    Operator::scalar(p)
}

/// `8a_p − 3` as a scalar operator (zero-based `p`).
fn shifted(n: usize, p: usize) -> ParamPoly {
    ParamPoly::a(n, p)
        .scale_int(8)
        .sub(&ParamPoly::from_int(n, 3))
}

/// `8 Σ_{j ∈ range} a_j − 3·|range|` (zero-based range).
fn block(n: usize, range: std::ops::Range<usize>) -> ParamPoly {
    let len = range.len() as i64;
    range
        .fold(ParamPoly::zero(n), |acc, j| acc.add(&ParamPoly::a(n, j)))
        .scale_int(8)
        .sub(&ParamPoly::from_int(n, 3 * len))
}

/// The printed pair Casimir
/// `C² − 8{B_i²,A} + 8w{B_i,A} − 8(4a_i+4a_j−11)B_i² + 8(8a_i−11)wB_i − 32bA²`.
pub fn pair_casimir(g: &GeneratorSet, i: usize, j: usize) -> Operator {
    let n = g.dimension();
    let (bi, a, c) = (g.b(i), g.a(i, j), g.c(i, j));
    let w = g.pair_central(i, j);
    let bi2 = bi * bi;
    let coeff_b2 = ParamPoly::a(n, i)
        .scale_int(4)
        .add(&ParamPoly::a(n, j).scale_int(4))
        .sub(&ParamPoly::from_int(n, 11))
        .scale_int(-8);
    let coeff_wb = ParamPoly::a(n, i)
        .scale_int(8)
        .sub(&ParamPoly::from_int(n, 11))
        .scale_int(8);
    c * c - bi2.anticommutator(a).scale_int(8)
        + (&w * bi.anticommutator(a)).scale_int(8)
        + bi2.scale_poly(&coeff_b2)
        + (&w * bi).scale_poly(&coeff_wb)
        - (a * a).scale_poly(&ParamPoly::b(n).scale_int(32))
}

/// Checks the pair substructure for zero-based `i != j`.
pub fn verify_substructure_qij(
    g: &GeneratorSet,
    i: usize,
    j: usize,
) -> Result<Vec<RelationCheck>, SwSymError> {
    let n = g.dimension();
    if i == j || i >= n || j >= n {
        return Err(SwSymError::BadIndex(format!("pair ({}, {})", i + 1, j + 1)));
    }
    let idx = [i, j];
    let (bi, a, c) = (g.b(i), g.a(i, j), g.c(i, j));
    let w = g.pair_central(i, j);
    let b_par = ParamPoly::b(n);
    let k_op = pair_casimir(g, i, j);
    let wscalar = &w;

    let jobs: Vec<(&str, Box<dyn Fn() -> Operator + Sync>)> = vec![
        ("Q_ij:[B_i,A_ij]=C_ij", Box::new(|| bi.commutator(a) - c)),
        (
            "Q_ij:[B_i,C_ij]",
            Box::new(|| {
                let rhs = (bi * bi).scale_int(8) - (wscalar * bi).scale_int(8)
                    + a.scale_poly(&b_par.scale_int(32));
                bi.commutator(c) - rhs
            }),
        ),
        (
            "Q_ij:[A_ij,C_ij]",
            Box::new(|| {
                let half_shift = scalar(shifted(n, i).scale(&rat(1, 2)));
                let coeff = ParamPoly::a(n, i)
                    .scale_int(4)
                    .add(&ParamPoly::a(n, j).scale_int(4))
                    .sub(&ParamPoly::from_int(n, 3))
                    .scale_int(-8);
                let rhs = -bi.anticommutator(a).scale_int(8)
                    + (wscalar * (a + &half_shift)).scale_int(8)
                    + bi.scale_poly(&coeff);
                a.commutator(c) - rhs
            }),
        ),
        ("K_ij commutes B_i", Box::new(|| k_op.commutator(bi))),
        ("K_ij commutes A_ij", Box::new(|| k_op.commutator(a))),
        ("K_ij commutes C_ij", Box::new(|| k_op.commutator(c))),
        (
            "K_ij=K'_ij",
            Box::new(|| {
                let a_i = scalar(ParamPoly::a(n, i));
                let a_j = scalar(ParamPoly::a(n, j));
                let b = scalar(b_par.clone());
                &k_op - pair_casimir_central(wscalar, &a_i, &a_j, &b)
            }),
        ),
    ];
    Ok(jobs
        .par_iter()
        .map(|(name, f)| RelationCheck::run(name, &idx, f))
        .collect())
}

fn chain_central_ops(g: &GeneratorSet, i: usize) -> ChainCentral<Operator> {
    ChainCentral {
        y1: g.y(1),
        y_next: g.y(i + 1),
        z_prev: g.z(i - 2),
    }
}

fn param_scalars(n: usize) -> Vec<Operator> {
    (0..n).map(|k| scalar(ParamPoly::a(n, k))).collect()
}

/// Checks one link `2 ≤ i ≤ N−1` (one-based) of the Racah chain.
pub fn verify_racah_link(g: &GeneratorSet, i: usize) -> Result<Vec<RelationCheck>, SwSymError> {
    let n = g.dimension();
    if i < 2 || i + 1 > n {
        return Err(SwSymError::BadIndex(format!(
            "chain link i = {i} for N = {n}"
        )));
    }
    let idx = [i - 1];
    let e = g.z(i - 1);
    let f = g.y(i);
    let gc = e.commutator(&f);
    let central = chain_central_ops(g, i);
    let ChainCentral { y1, y_next, z_prev } = &central;
    let a_i = shifted(n, i - 1);
    let head = block(n, 0..i - 1);
    let tail = block(n, i..n);
    let inner = || {
        // Y_1 + Y_{i+1} + Z_{i−2} − 4a_i + 3/2
        y1 + y_next
            + z_prev
            + scalar(
                ParamPoly::a(n, i - 1)
                    .scale_int(-4)
                    .add(&ParamPoly::constant(n, rat(3, 2))),
            )
    };

    let jobs: Vec<(&str, Box<dyn Fn() -> Operator + Sync>)> = vec![
        (
            "R(3):[Z_{i-1},C_i]",
            Box::new(|| {
                let rhs = (&e * &e).scale_int(8) + e.anticommutator(&f).scale_int(8)
                    - (inner() * &e).scale_int(8)
                    + f.scale_poly(&block(n, 0..i).scale_int(4))
                    - y1.scale_poly(&a_i.scale_int(4))
                    - y_next.scale_poly(&head.scale_int(4))
                    + ((y1 - y_next) * z_prev).scale_int(8);
                e.commutator(&gc) - rhs
            }),
        ),
        (
            "R(3):[Y_i,C_i]",
            Box::new(|| {
                let rhs = -(&f * &f).scale_int(8)
                    - e.anticommutator(&f).scale_int(8)
                    - e.scale_poly(&block(n, i - 1..n).scale_int(4))
                    + (inner() * &f).scale_int(8)
                    + y1.scale_poly(&a_i.scale_int(4))
                    + z_prev.scale_poly(&tail.scale_int(4))
                    - (y1 * y_next).scale_int(8)
                    + (y_next * z_prev).scale_int(8);
                f.commutator(&gc) - rhs
            }),
        ),
        ("R(3):[Y_1,Z_{i-1}]", Box::new(|| y1.commutator(&e))),
        ("R(3):[Y_1,Y_i]", Box::new(|| y1.commutator(&f))),
        ("R(3):[Y_{i+1},Z_{i-1}]", Box::new(|| y_next.commutator(&e))),
        ("R(3):[Y_{i+1},Y_i]", Box::new(|| y_next.commutator(&f))),
        ("R(3):[Z_{i-2},Z_{i-1}]", Box::new(|| z_prev.commutator(&e))),
        ("R(3):[Z_{i-2},Y_i]", Box::new(|| z_prev.commutator(&f))),
        ("R(3):[Y_1,Y_{i+1}]", Box::new(|| y1.commutator(y_next))),
        ("R(3):[Y_1,Z_{i-2}]", Box::new(|| y1.commutator(z_prev))),
        (
            "R(3):[Y_{i+1},Z_{i-2}]",
            Box::new(|| y_next.commutator(z_prev)),
        ),
        (
            "R(3):K_i=K'_i",
            Box::new(|| {
                let a = param_scalars(n);
                let c = chain_constants(i, &a, &central);
                casimir_cubic(&c, &e, &f, &gc) - chain_casimir_central(i, &a, &central)
            }),
        ),
        (
            "R(3):[K_i,Z_{i-1}]",
            Box::new(|| {
                let c = chain_constants(i, &param_scalars(n), &central);
                casimir_cubic(&c, &e, &f, &gc).commutator(&e)
            }),
        ),
        (
            "R(3):[K_i,Y_i]",
            Box::new(|| {
                let c = chain_constants(i, &param_scalars(n), &central);
                casimir_cubic(&c, &e, &f, &gc).commutator(&f)
            }),
        ),
    ];
    Ok(jobs
        .par_iter()
        .map(|(name, f)| RelationCheck::run(name, &idx, f))
        .collect())
}

/// Checks the top substructure `{Y_1, B_N, D}` with central `H`, `Z_{N−2}`.
pub fn verify_top_link(g: &GeneratorSet) -> Vec<RelationCheck> {
    let n = g.dimension();
    let e = g.y(1);
    let f = g.b(n - 1).clone();
    let dd = e.commutator(&f);
    let h = &g.h;
    let zp = g.z(n - 2);
    let b_par = ParamPoly::b(n);
    let idx = [n - 1];

    let jobs: Vec<(&str, Box<dyn Fn() -> Operator + Sync>)> = vec![
        (
            "Top:[Y_1,D]",
            Box::new(|| {
                let rhs = e.anticommutator(&f).scale_int(8) - (h * &e).scale_int(16)
                    + f.scale_poly(&block(n, 0..n).scale_int(4))
                    + (h * &zp).scale_int(16)
                    - h.scale_poly(&shifted(n, n - 1).scale_int(8));
                e.commutator(&dd) - rhs
            }),
        ),
        (
            "Top:[B_N,D]",
            Box::new(|| {
                let rhs = -(&f * &f).scale_int(8) - e.scale_poly(&b_par.scale_int(32))
                    + (h * &f).scale_int(16)
                    + zp.scale_poly(&b_par.scale_int(32));
                f.commutator(&dd) - rhs
            }),
        ),
        ("Top:[Z_{N-2},Y_1]", Box::new(|| zp.commutator(&e))),
        ("Top:[Z_{N-2},B_N]", Box::new(|| zp.commutator(&f))),
        ("Top:[H,Z_{N-2}]", Box::new(|| h.commutator(&zp))),
        ("Top:[H,Y_1]", Box::new(|| h.commutator(&e))),
        (
            "Top:K=K'",
            Box::new(|| {
                let a = param_scalars(n);
                let b = scalar(b_par.clone());
                let c = top_constants(&a, h, &zp, &b);
                casimir_cubic(&c, &e, &f, &dd) - top_casimir_central(&a, h, &zp, &b)
            }),
        ),
    ];
    jobs.par_iter()
        .map(|(name, f)| RelationCheck::run(name, &idx, f))
        .collect()
}

/// Every chain link plus the top substructure.
pub fn verify_racah_chain(g: &GeneratorSet) -> Vec<RelationCheck> {
    let n = g.dimension();
    let mut out: Vec<RelationCheck> = (2..n)
        .flat_map(|i| verify_racah_link(g, i).expect("admissible link"))
        .collect();
    out.extend(verify_top_link(g));
    out
}
