use crate::opalg::{rat, Ring};

/// Structure constants of a three-generator quadratic algebra
///
/// ```text
/// [E, F] = G
/// [E, G] = α E² + γ {E, F} + δ E + ε F + ζ
/// [F, G] = a E² − γ F² − α {E, F} + d E − δ F + z
/// ```
///
/// Each constant lives in a ring `T` that commutes with `E`, `F`, `G`:
/// central operators, exact rationals, or floats.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadAlgConstants<T> {
    pub alpha: T,
    pub gamma: T,
    pub delta: T,
    pub epsilon: T,
    pub zeta: T,
    pub a: T,
    pub d: T,
    pub z: T,
}

impl<T: Ring> QuadAlgConstants<T> {
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> QuadAlgConstants<U> {
        QuadAlgConstants {
            alpha: f(&self.alpha),
            gamma: f(&self.gamma),
            delta: f(&self.delta),
            epsilon: f(&self.epsilon),
            zeta: f(&self.zeta),
            a: f(&self.a),
            d: f(&self.d),
            z: f(&self.z),
        }
    }
}

fn shifted<T: Ring>(a: &T) -> T {
    // 8a − 3
    a.scale_int(8).ring_sub(&a.lift(&rat(3, 1)))
}

/// `8 Σ a_j − 3·count` over the given slice.
fn block<T: Ring>(one: &T, a: &[T]) -> T {
    let sum = a.iter().fold(one.zero_like(), |acc, x| acc.ring_add(x));
    sum.scale_int(8)
        .ring_sub(&one.lift(&rat(3 * a.len() as i64, 1)))
}

/// Constants of the pair substructure generated by `E = B_i`, `F = A_ij`,
/// `G = C_ij`, with `w = 2H − Σ_{k≠i,j} B_k`.
pub fn pair_constants<T: Ring>(w: &T, a_i: &T, a_j: &T, b: &T) -> QuadAlgConstants<T> {
    let c = |num: i64| w.lift(&rat(num, 1));
    QuadAlgConstants {
        alpha: c(8),
        gamma: c(0),
        delta: w.scale_int(-8),
        epsilon: b.scale_int(32),
        zeta: c(0),
        a: c(0),
        // −8(4a_i + 4a_j − 3)
        d: a_i
            .scale_int(4)
            .ring_add(&a_j.scale_int(4))
            .ring_sub(&c(3))
            .scale_int(-8),
        z: shifted(a_i).ring_mul(w).scale_int(4),
    }
}

/// Central values for one link of the Racah chain.
#[derive(Clone, Debug)]
pub struct ChainCentral<T> {
    pub y1: T,
    /// `Y_{i+1}` (zero when `i = N − 1`).
    pub y_next: T,
    /// `Z_{i−2}` (zero when `i = 2`).
    pub z_prev: T,
}

/// Constants of the chain substructure `E = Z_{i−1}`, `F = Y_i`, `G = [E, F]`
/// for one-based `2 ≤ i ≤ N − 1`; `a` holds `a_1..a_N`.
pub fn chain_constants<T: Ring>(
    i: usize,
    a: &[T],
    central: &ChainCentral<T>,
) -> QuadAlgConstants<T> {
    let n = a.len();
    assert!(i >= 2 && i < n, "chain link i must satisfy 2 <= i <= N-1");
    let one = &central.y1;
    let c = |num: i64, den: i64| one.lift(&rat(num, den));
    let ai = &a[i - 1];
    let ChainCentral { y1, y_next, z_prev } = central;
    let head = block(one, &a[..i - 1]); // 8Σ_{j<i} a_j − 3(i−1)
    let tail = block(one, &a[i..]); // 8Σ_{j>i} a_j − 3(N−i)
    let delta = y1
        .ring_add(y_next)
        .ring_add(z_prev)
        .ring_sub(&ai.scale_int(4))
        .ring_add(&c(3, 2))
        .scale_int(-8);
    let zeta = shifted(ai)
        .ring_mul(y1)
        .scale_int(-4)
        .ring_sub(&head.ring_mul(y_next).scale_int(4))
        .ring_add(&y1.ring_mul(z_prev).scale_int(8))
        .ring_sub(&y_next.ring_mul(z_prev).scale_int(8));
    let z = shifted(ai)
        .ring_mul(y1)
        .scale_int(4)
        .ring_add(&tail.ring_mul(z_prev).scale_int(4))
        .ring_sub(&y1.ring_mul(y_next).scale_int(8))
        .ring_add(&y_next.ring_mul(z_prev).scale_int(8));
    QuadAlgConstants {
        alpha: c(8, 1),
        gamma: c(8, 1),
        delta,
        epsilon: block(one, &a[..i]).scale_int(4),
        zeta,
        a: c(0, 1),
        d: block(one, &a[i - 1..]).scale_int(-4),
        z,
    }
}

/// Constants of the top substructure `E = Y_1`, `F = B_N`, `G = [E, F]` with
/// central `H` and `Z_{N−2}`.
pub fn top_constants<T: Ring>(a: &[T], h: &T, z_prev: &T, b: &T) -> QuadAlgConstants<T> {
    let n = a.len();
    let c = |num: i64| h.lift(&rat(num, 1));
    QuadAlgConstants {
        alpha: c(0),
        gamma: c(8),
        delta: h.scale_int(-16),
        epsilon: block(h, a).scale_int(4),
        zeta: h
            .ring_mul(z_prev)
            .scale_int(16)
            .ring_sub(&shifted(&a[n - 1]).ring_mul(h).scale_int(8)),
        a: c(0),
        d: b.scale_int(-32),
        z: b.ring_mul(z_prev).scale_int(32),
    }
}

/// `K'_ij = 4(8a_i−3) w² − 8b(8a_i−3)(8a_j−3)`.
pub fn pair_casimir_central<T: Ring>(w: &T, a_i: &T, a_j: &T, b: &T) -> T {
    let si = shifted(a_i);
    si.ring_mul(w)
        .ring_mul(w)
        .scale_int(4)
        .ring_sub(&b.ring_mul(&si).ring_mul(&shifted(a_j)).scale_int(8))
}

/// Central-element Casimir of chain link `i` (one-based).
pub fn chain_casimir_central<T: Ring>(i: usize, a: &[T], central: &ChainCentral<T>) -> T {
    let ChainCentral { y1, y_next, z_prev } = central;
    let si = shifted(&a[i - 1]);
    let head = block(y1, &a[..i - 1]);
    let tail = block(y1, &a[i..]);
    let terms = [
        si.ring_mul(y1).ring_mul(y1).scale_int(4),
        y1.ring_mul(y_next).scale_int(-64),
        head.ring_mul(y_next).ring_mul(y_next).scale_int(4),
        si.ring_mul(y1).scale_int(32),
        si.ring_mul(&head).ring_mul(y_next).scale_int(-4),
        z_prev.ring_mul(z_prev).ring_mul(y_next).scale_int(16),
        z_prev.ring_mul(y1).scale_int(-64),
        si.ring_mul(z_prev).ring_mul(y_next).scale_int(-16),
        si.ring_mul(&tail).ring_mul(z_prev).scale_int(-4),
        tail.ring_mul(z_prev).ring_mul(z_prev).scale_int(4),
        z_prev.ring_mul(y1).ring_mul(y_next).scale_int(-16),
        z_prev.ring_mul(y_next).ring_mul(y_next).scale_int(16),
        si.ring_mul(&head).ring_mul(&tail).scale_int(-1),
    ];
    terms.iter().fold(y1.zero_like(), |acc, t| acc.ring_add(t))
}

/// Central-element Casimir of the top substructure.
pub fn top_casimir_central<T: Ring>(a: &[T], h: &T, z_prev: &T, b: &T) -> T {
    let n = a.len();
    let sn = shifted(&a[n - 1]);
    let head = block(h, &a[..n - 1]);
    b.ring_mul(z_prev)
        .ring_mul(z_prev)
        .scale_int(32)
        .ring_add(&sn.ring_mul(h).ring_mul(h).scale_int(16))
        .ring_sub(&b.ring_mul(&sn).ring_mul(z_prev).scale_int(32))
        .ring_sub(&b.ring_mul(&sn).ring_mul(&head).scale_int(8))
}
