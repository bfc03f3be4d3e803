use rayon::prelude::*;

use crate::opalg::{rat, Operator, ParamPoly};

use super::SwSymError;

/// Every integral of motion of the N-dimensional model as an exact operator.
///
/// Indices are zero-based throughout; `A(i, j)` with `i == j` is undefined.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    n: usize,
    pub h: Operator,
    b: Vec<Operator>,
    /// `J_ij = x_i ∂_j − x_j ∂_i`, `n × n`, zero on the diagonal.
    j: Vec<Vec<Operator>>,
    a: Vec<Vec<Option<Operator>>>,
    c: Vec<Vec<Option<Operator>>>,
    d: Vec<Option<Operator>>,
    /// `Z_l` for `l = 1..=N−2`, stored at `l − 1`.
    z: Vec<Operator>,
    /// `Y_p` for `p = 1..=N−1`, stored at `p − 1`.
    y: Vec<Operator>,
    pub d_plus: Operator,
    pub d_minus: Operator,
}

impl GeneratorSet {
    pub fn build(n: usize) -> Result<Self, SwSymError> {
        if n < 2 {
            return Err(SwSymError::DimensionTooSmall { n, min: 2 });
        }
        let s = ParamPoly::s(n);
        let s2 = s.mul(&s);
        let b_param = ParamPoly::b(n);

        let lap_half = (0..n)
            .map(|i| Operator::d_pow(n, i, 2))
            .fold(Operator::zero(n), |acc, t| acc + t);
        let r2 = (0..n)
            .map(|i| Operator::x_pow(n, i, 2))
            .fold(Operator::zero(n), |acc, t| acc + t);
        let inv_sq = |i: usize| Operator::x_pow(n, i, -2);

        let mut h = lap_half.scale(&rat(-1, 2)) + r2.scale_poly(&b_param);
        for i in 0..n {
            h = h + inv_sq(i).scale_poly(&ParamPoly::a(n, i));
        }

        let b: Vec<Operator> = (0..n)
            .map(|i| {
                -Operator::d_pow(n, i, 2)
                    + Operator::x_pow(n, i, 2).scale_poly(&s2)
                    + inv_sq(i).scale_poly(&ParamPoly::a(n, i).scale_int(2))
            })
            .collect();

        let j: Vec<Vec<Operator>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        if i == k {
                            Operator::zero(n)
                        } else {
                            Operator::x(n, i) * Operator::d(n, k)
                                - Operator::x(n, k) * Operator::d(n, i)
                        }
                    })
                    .collect()
            })
            .collect();

        let mut a = vec![vec![None; n]; n];
        for i in 0..n {
            for k in (i + 1)..n {
                let jik = &j[i][k];
                let ratio = |p: usize, q: usize| {
                    // a_p x_q² / x_p²
                    let mut m = Operator::x_pow(n, q, 2) * Operator::x_pow(n, p, -2);
                    m = m.scale_poly(&ParamPoly::a(n, p).scale_int(2));
                    m
                };
                let op =
                    -(jik * jik) + ratio(i, k) + ratio(k, i) + Operator::constant(n, rat(1, 2));
                a[i][k] = Some(op.clone());
                a[k][i] = Some(op);
            }
        }

        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&k| k != i).map(move |k| (i, k)))
            .collect();
        let c_list: Vec<((usize, usize), Operator)> = pairs
            .par_iter()
            .map(|&(i, k)| {
                (
                    (i, k),
                    b[i].commutator(a[i][k].as_ref().expect("off-diagonal")),
                )
            })
            .collect();
        let mut c = vec![vec![None; n]; n];
        for ((i, k), op) in c_list {
            c[i][k] = Some(op);
        }

        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| i != j && j != k && i != k)
            .collect();
        let d_list: Vec<(usize, Operator)> = triples
            .par_iter()
            .map(|&(i, jj, k)| {
                let op = a[i][jj]
                    .as_ref()
                    .expect("off-diagonal")
                    .commutator(a[jj][k].as_ref().expect("off-diagonal"));
                (i * n * n + jj * n + k, op)
            })
            .collect();
        let mut d = vec![None; n * n * n];
        for (idx, op) in d_list {
            d[idx] = Some(op);
        }

        let a_sum = |lo: usize, hi: usize| {
            // Σ_{lo ≤ i < k ≤ hi} A_ik, zero-based inclusive bounds
            let mut acc = Operator::zero(n);
            for i in lo..=hi {
                for k in (i + 1)..=hi {
                    acc = acc + a[i][k].as_ref().expect("off-diagonal");
                }
            }
            acc
        };
        let z: Vec<Operator> = (1..=n.saturating_sub(2)).map(|l| a_sum(0, l)).collect();
        let y: Vec<Operator> = (1..n).map(|p| a_sum(p - 1, n - 1)).collect();

        let euler = (0..n)
            .map(|i| Operator::x(n, i) * Operator::d(n, i))
            .fold(Operator::zero(n), |acc, t| acc + t);
        let s_euler = euler.scale_poly(&s);
        let s2_r2 = r2.scale_poly(&s2);
        let shift = Operator::scalar(s.scale(&rat(n as i64, 2)));
        let d_plus = &h + &s_euler - &s2_r2 + &shift;
        let d_minus = &h - &s_euler - &s2_r2 - &shift;

        Ok(GeneratorSet {
            n,
            h,
            b,
            j,
            a,
            c,
            d,
            z,
            y,
            d_plus,
            d_minus,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn b(&self, i: usize) -> &Operator {
        &self.b[i]
    }

    pub fn j(&self, i: usize, k: usize) -> &Operator {
        &self.j[i][k]
    }

    /// Panics when `i == k`.
    pub fn a(&self, i: usize, k: usize) -> &Operator {
        self.a[i][k].as_ref().expect("A_ij needs i != j")
    }

    /// `C_ik = [B_i, A_ik]`.
    pub fn c(&self, i: usize, k: usize) -> &Operator {
        self.c[i][k].as_ref().expect("C_ij needs i != j")
    }

    /// `D_ijk = [A_ij, A_jk]`; panics unless the indices are distinct.
    pub fn d(&self, i: usize, j: usize, k: usize) -> &Operator {
        self.d[i * self.n * self.n + j * self.n + k]
            .as_ref()
            .expect("D_ijk needs distinct indices")
    }

    /// `Z_l`, one-based `l` in `0..=N−2`; `Z_0 = 0`.
    pub fn z(&self, l: usize) -> Operator {
        if l == 0 {
            Operator::zero(self.n)
        } else {
            self.z[l - 1].clone()
        }
    }

    /// `Z = Σ_{i<j} A_ij`, which coincides with `Y_1`.
    pub fn z_total(&self) -> &Operator {
        &self.y[0]
    }

    /// `Y_p`, one-based `p` in `1..=N+1`; `Y_N = Y_{N+1} = 0`.
    pub fn y(&self, p: usize) -> Operator {
        if p >= self.n {
            Operator::zero(self.n)
        } else {
            self.y[p - 1].clone()
        }
    }

    /// Test hook: replaces `B_i` (and everything derived from it in checks).
    pub fn corrupt_b(&mut self, i: usize, extra: &Operator) {
        self.b[i] = &self.b[i] + extra;
    }

    /// Test hook: replaces `A_ij = A_ji`.
    pub fn corrupt_a(&mut self, i: usize, k: usize, extra: &Operator) {
        let op = self.a(i, k) + extra;
        self.a[i][k] = Some(op.clone());
        self.a[k][i] = Some(op);
    }

    /// `2H − Σ_{k ≠ i,j} B_k` as an operator.
    pub fn pair_central(&self, i: usize, j: usize) -> Operator {
        let mut w = self.h.scale_int(2);
        for k in (0..self.n).filter(|&k| k != i && k != j) {
            w = w - &self.b[k];
        }
        w
    }
}
