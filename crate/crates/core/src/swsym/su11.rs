//! Radial ladder operators and the angular operator `Z`.

use crate::opalg::{rat, Operator, ParamPoly};

use super::{GeneratorSet, RelationCheck};

/// `[D⁺,H] = −2sD⁺`, `[D⁻,H] = 2sD⁻`, `[D⁻,D⁺] = 4sH` with `s = √(2b)`, plus
/// the rewriting of `Z` through the rotation generators.
pub fn verify_su11(g: &GeneratorSet) -> Vec<RelationCheck> {
    let n = g.dimension();
    let s = ParamPoly::s(n);
    let (dp, dm, h) = (&g.d_plus, &g.d_minus, &g.h);
    vec![
        RelationCheck::run("su(1,1):[D+,H]", &[], || {
            dp.commutator(h) + dp.scale_poly(&s.scale_int(2))
        }),
        RelationCheck::run("su(1,1):[D-,H]", &[], || {
            dm.commutator(h) - dm.scale_poly(&s.scale_int(2))
        }),
        RelationCheck::run("su(1,1):[D-,D+]", &[], || {
            dm.commutator(dp) - h.scale_poly(&s.scale_int(4))
        }),
        RelationCheck::run("Z=-sum J^2+...", &[], || z_identity_residual(g)),
    ]
}

/// `Z − (−Σ_{i<j} J_ij² + 2r² Σ a_i/x_i² − 2Σ a_i + N(N−1)/4)`.
pub fn z_identity_residual(g: &GeneratorSet) -> Operator {
    let n = g.dimension();
    let mut rhs = Operator::constant(n, rat((n * (n - 1)) as i64, 4));
    for i in 0..n {
        for j in (i + 1)..n {
            let jij = g.j(i, j);
            rhs = rhs - jij * jij;
        }
    }
    let r2 = (0..n).fold(Operator::zero(n), |acc, i| acc + Operator::x_pow(n, i, 2));
    let weighted = (0..n).fold(Operator::zero(n), |acc, i| {
        acc + Operator::x_pow(n, i, -2).scale_poly(&ParamPoly::a(n, i))
    });
    rhs = rhs + (r2 * weighted).scale_int(2);
    let a_sum = (0..n).fold(ParamPoly::zero(n), |acc, i| acc.add(&ParamPoly::a(n, i)));
    rhs = rhs - Operator::scalar(a_sum.scale_int(2));
    g.z_total() - rhs
}
