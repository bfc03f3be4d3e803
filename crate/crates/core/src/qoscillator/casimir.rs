use crate::opalg::{rat, Ring};

use super::QuadAlgConstants;

/// Cubic Casimir of the quadratic algebra with constants `c`:
///
/// ```text
/// K = G² − α{E²,F} − γ{E,F²} + (αγ−δ){E,F} + (γ²−ε)F² + (γδ−2ζ)F
///     + (2a/3)E³ + (d + aγ/3 + α²)E² + (aε/3 + αδ + 2z)E
/// ```
///
/// Constants multiply from the left; they must commute with `E`, `F`, `G`.
pub fn casimir_cubic<T: Ring>(c: &QuadAlgConstants<T>, e: &T, f: &T, g: &T) -> T {
    let ac = |x: &T, y: &T| x.ring_mul(y).ring_add(&y.ring_mul(x));
    let third = rat(1, 3);
    let e2 = e.ring_mul(e);
    let f2 = f.ring_mul(f);

    let mut k = g.ring_mul(g);
    k = k.ring_sub(&c.alpha.ring_mul(&ac(&e2, f)));
    k = k.ring_sub(&c.gamma.ring_mul(&ac(e, &f2)));
    k = k.ring_add(
        &c.alpha
            .ring_mul(&c.gamma)
            .ring_sub(&c.delta)
            .ring_mul(&ac(e, f)),
    );
    k = k.ring_add(
        &c.gamma
            .ring_mul(&c.gamma)
            .ring_sub(&c.epsilon)
            .ring_mul(&f2),
    );
    k = k.ring_add(
        &c.gamma
            .ring_mul(&c.delta)
            .ring_sub(&c.zeta.scale_int(2))
            .ring_mul(f),
    );
    if !c.a.is_ring_zero() {
        k = k.ring_add(&c.a.scale_by(&rat(2, 3)).ring_mul(&e2.ring_mul(e)));
    }
    let e2_coeff =
        c.d.ring_add(&c.a.ring_mul(&c.gamma).scale_by(&third))
            .ring_add(&c.alpha.ring_mul(&c.alpha));
    k = k.ring_add(&e2_coeff.ring_mul(&e2));
    let e_coeff =
        c.a.ring_mul(&c.epsilon)
            .scale_by(&third)
            .ring_add(&c.alpha.ring_mul(&c.delta))
            .ring_add(&c.z.scale_int(2));
    k.ring_add(&e_coeff.ring_mul(e))
}

/// Right-hand sides of `[E, G]` and `[F, G]` implied by the constants.
pub fn algebra_rhs<T: Ring>(c: &QuadAlgConstants<T>, e: &T, f: &T) -> (T, T) {
    let ac = |x: &T, y: &T| x.ring_mul(y).ring_add(&y.ring_mul(x));
    let e2 = e.ring_mul(e);
    let ef = ac(e, f);
    let one = e.lift(&rat(1, 1));
    let eg = c
        .alpha
        .ring_mul(&e2)
        .ring_add(&c.gamma.ring_mul(&ef))
        .ring_add(&c.delta.ring_mul(e))
        .ring_add(&c.epsilon.ring_mul(f))
        .ring_add(&c.zeta.ring_mul(&one));
    let fg =
        c.a.ring_mul(&e2)
            .ring_sub(&c.gamma.ring_mul(&f.ring_mul(f)))
            .ring_sub(&c.alpha.ring_mul(&ef))
            .ring_add(&c.d.ring_mul(e))
            .ring_sub(&c.delta.ring_mul(f))
            .ring_add(&c.z.ring_mul(&one));
    (eg, fg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::Operator;

    #[test]
    fn zero_constants_and_generators_give_zero() {
        let zero = Operator::zero(2);
        let c = QuadAlgConstants {
            alpha: zero.clone(),
            gamma: zero.clone(),
            delta: zero.clone(),
            epsilon: zero.clone(),
            zeta: zero.clone(),
            a: zero.clone(),
            d: zero.clone(),
            z: zero.clone(),
        };
        assert!(casimir_cubic(&c, &zero, &zero, &zero).is_zero());
    }
}
