//! The commutation relations of the full symmetry algebra, instantiated over
//! tuples of pairwise-distinct indices.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::opalg::{Operator, ParamPoly};

use super::GeneratorSet;

/// Outcome of one exact identity check.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    /// One-based indices as they appear in the relation name.
    pub indices: Vec<usize>,
    pub lhs_minus_rhs: Operator,
    pub passed: bool,
    pub term_count: usize,
    pub elapsed: Duration,
}

impl RelationCheck {
    pub fn from_residual(
        name: impl Into<String>,
        indices: &[usize],
        residual: Operator,
        elapsed: Duration,
    ) -> Self {
        RelationCheck {
            name: name.into(),
            indices: indices.iter().map(|i| i + 1).collect(),
            passed: residual.is_zero(),
            term_count: residual.term_count(),
            lhs_minus_rhs: residual,
            elapsed,
        }
    }

    /// Times `f` and wraps its residual.
    pub fn run(name: &str, indices: &[usize], f: impl FnOnce() -> Operator) -> Self {
        let start = Instant::now();
        let residual = f();
        Self::from_residual(name, indices, residual, start.elapsed())
    }
}

/// Relation families of the symmetry algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SwRelation {
    /// `2H − Σ B_i = 0`.
    HalfSumOfB,
    /// `[H, B_i] = 0`.
    HCommutesB,
    /// `[H, A_ij] = 0`.
    HCommutesA,
    /// `[B_i, B_j] = 0`.
    BCommuteB,
    /// `[A_ij, B_k] = 0`, `k ∉ {i, j}`.
    ACommutesOtherB,
    /// `[C_ij, H] = 0`.
    HCommutesC,
    /// `[D_ijk, H] = 0`.
    HCommutesD,
    /// `C_ij = [A_ij, B_j]`, i.e. `[B_i, A_ij] + [B_j, A_ij] = 0`.
    CFromEitherB,
    /// `[A_ij, A_ki] = [A_ik, A_jk]`.
    DCyclic,
    /// `[A_ik, A_jk] = [A_jk, A_ij]`.
    DCyclicTail,
    /// `[A_jk, D_ijk] = 4{A_ik,A_jk} − 4{A_jk,A_ij} + 4(8a_j−3)A_ik − 4(8a_k−3)A_ij`.
    AjkDijk,
    /// `[A_kl, D_ijk] = 4{A_ik,A_jl} − 4{A_jk,A_il}`.
    AklDijk,
    /// `[D_ijk, D_jkl] = 4{D_jkl,A_ij} − 4{D_ikl,A_jk} − 4{D_ijk,A_jl} − 4(8a_j−3)D_ikl`.
    DijkDjkl,
    /// `[D_ijk, D_klm] = 4{D_ilm,A_jk} − 4{D_jlm,A_ik}`.
    DijkDklm,
    /// `[C_ik, C_kl] = 4{C_li, B_k}`.
    CikCkl,
    /// `[B_i, D_ijk] = 4{B_k,A_ij} − 4{B_j,A_ik}`.
    BiDijk,
    /// `[B_i, C_ij] = −4{B_i,B_j} + 32b A_ij`.
    BiCij,
    /// `[C_ij, D_jkl] = 4{C_il,A_jk} − 4{C_ik,A_jl}`.
    CijDjkl,
    /// `[C_ij, D_ijk] = −4{C_ik,A_ij} − 4{C_jk,A_ij}`.
    CijDijk,
    /// `[A_ij, C_ij] = 4{A_ij,B_j} − 4{A_ij,B_i} − 4(8a_j−3)B_i + 4(8a_i−3)B_j`.
    AijCij,
    /// `[A_ij, C_ki] = 4{A_kj,B_i} − 4{A_ik,B_j}`.
    AijCki,
}

impl SwRelation {
    pub const ALL: [SwRelation; 21] = [
        SwRelation::HalfSumOfB,
        SwRelation::HCommutesB,
        SwRelation::HCommutesA,
        SwRelation::BCommuteB,
        SwRelation::ACommutesOtherB,
        SwRelation::HCommutesC,
        SwRelation::HCommutesD,
        SwRelation::CFromEitherB,
        SwRelation::DCyclic,
        SwRelation::DCyclicTail,
        SwRelation::AjkDijk,
        SwRelation::AklDijk,
        SwRelation::DijkDjkl,
        SwRelation::DijkDklm,
        SwRelation::CikCkl,
        SwRelation::BiDijk,
        SwRelation::BiCij,
        SwRelation::CijDjkl,
        SwRelation::CijDijk,
        SwRelation::AijCij,
        SwRelation::AijCki,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SwRelation::HalfSumOfB => "2H-sum(B)",
            SwRelation::HCommutesB => "[H,B_i]",
            SwRelation::HCommutesA => "[H,A_ij]",
            SwRelation::BCommuteB => "[B_i,B_j]",
            SwRelation::ACommutesOtherB => "[A_ij,B_k]",
            SwRelation::HCommutesC => "[C_ij,H]",
            SwRelation::HCommutesD => "[D_ijk,H]",
            SwRelation::CFromEitherB => "C_ij=[A_ij,B_j]",
            SwRelation::DCyclic => "[A_ij,A_ki]=[A_ik,A_jk]",
            SwRelation::DCyclicTail => "[A_ik,A_jk]=[A_jk,A_ij]",
            SwRelation::AjkDijk => "[A_jk,D_ijk]",
            SwRelation::AklDijk => "[A_kl,D_ijk]",
            SwRelation::DijkDjkl => "[D_ijk,D_jkl]",
            SwRelation::DijkDklm => "[D_ijk,D_klm]",
            SwRelation::CikCkl => "[C_ik,C_kl]",
            SwRelation::BiDijk => "[B_i,D_ijk]",
            SwRelation::BiCij => "[B_i,C_ij]",
            SwRelation::CijDjkl => "[C_ij,D_jkl]",
            SwRelation::CijDijk => "[C_ij,D_ijk]",
            SwRelation::AijCij => "[A_ij,C_ij]",
            SwRelation::AijCki => "[A_ij,C_ki]",
        }
    }

    /// Number of distinct indices the relation is instantiated over.
    pub fn arity(self) -> usize {
        match self {
            SwRelation::HalfSumOfB => 0,
            SwRelation::HCommutesB => 1,
            SwRelation::HCommutesA
            | SwRelation::BCommuteB
            | SwRelation::HCommutesC
            | SwRelation::CFromEitherB
            | SwRelation::BiCij
            | SwRelation::AijCij => 2,
            SwRelation::ACommutesOtherB
            | SwRelation::HCommutesD
            | SwRelation::DCyclic
            | SwRelation::DCyclicTail
            | SwRelation::AjkDijk
            | SwRelation::CikCkl
            | SwRelation::BiDijk
            | SwRelation::CijDijk
            | SwRelation::AijCki => 3,
            SwRelation::AklDijk | SwRelation::DijkDjkl | SwRelation::CijDjkl => 4,
            SwRelation::DijkDklm => 5,
        }
    }

    /// Index tuples over which the relation is checked. Symmetric relations
    /// use unordered tuples; everything else uses all ordered distinct tuples.
    pub fn index_tuples(self, n: usize) -> Vec<Vec<usize>> {
        let k = self.arity();
        if k == 0 {
            return vec![vec![]];
        }
        let ordered = distinct_tuples(n, k);
        match self {
            SwRelation::HCommutesA
            | SwRelation::BCommuteB
            | SwRelation::DCyclic
            | SwRelation::DCyclicTail => ordered
                .into_iter()
                .filter(|t| t.windows(2).all(|w| w[0] < w[1]))
                .collect(),
            SwRelation::ACommutesOtherB => ordered.into_iter().filter(|t| t[0] < t[1]).collect(),
            _ => ordered,
        }
    }

    /// `lhs − rhs` for one index tuple (zero-based indices).
    pub fn residual(self, g: &GeneratorSet, t: &[usize]) -> Operator {
        let n = g.dimension();
        let four = |x: Operator| x.scale_int(4);
        let ac = |x: &Operator, y: &Operator| x.anticommutator(y);
        // 8a_p − 3
        let shifted = |p: usize| {
            ParamPoly::a(n, p)
                .scale_int(8)
                .sub(&ParamPoly::from_int(n, 3))
        };
        match self {
            SwRelation::HalfSumOfB => (0..n).fold(g.h.scale_int(2), |acc, i| acc - g.b(i)),
            SwRelation::HCommutesB => g.h.commutator(g.b(t[0])),
            SwRelation::HCommutesA => g.h.commutator(g.a(t[0], t[1])),
            SwRelation::BCommuteB => g.b(t[0]).commutator(g.b(t[1])),
            SwRelation::ACommutesOtherB => g.a(t[0], t[1]).commutator(g.b(t[2])),
            SwRelation::HCommutesC => g.c(t[0], t[1]).commutator(&g.h),
            SwRelation::HCommutesD => g.d(t[0], t[1], t[2]).commutator(&g.h),
            SwRelation::CFromEitherB => {
                let (i, j) = (t[0], t[1]);
                g.c(i, j) - g.a(i, j).commutator(g.b(j))
            }
            SwRelation::DCyclic => {
                let (i, j, k) = (t[0], t[1], t[2]);
                g.a(i, j).commutator(g.a(k, i)) - g.a(i, k).commutator(g.a(j, k))
            }
            SwRelation::DCyclicTail => {
                let (i, j, k) = (t[0], t[1], t[2]);
                g.a(i, k).commutator(g.a(j, k)) - g.a(j, k).commutator(g.a(i, j))
            }
            SwRelation::AjkDijk => {
                let (i, j, k) = (t[0], t[1], t[2]);
                let lhs = g.a(j, k).commutator(g.d(i, j, k));
                let rhs = four(ac(g.a(i, k), g.a(j, k))) - four(ac(g.a(j, k), g.a(i, j)))
                    + four(g.a(i, k).scale_poly(&shifted(j)))
                    - four(g.a(i, j).scale_poly(&shifted(k)));
                lhs - rhs
            }
            SwRelation::AklDijk => {
                let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
                let lhs = g.a(k, l).commutator(g.d(i, j, k));
                let rhs = four(ac(g.a(i, k), g.a(j, l))) - four(ac(g.a(j, k), g.a(i, l)));
                lhs - rhs
            }
            SwRelation::DijkDjkl => {
                let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
                let lhs = g.d(i, j, k).commutator(g.d(j, k, l));
                let rhs = four(ac(g.d(j, k, l), g.a(i, j)))
                    - four(ac(g.d(i, k, l), g.a(j, k)))
                    - four(ac(g.d(i, j, k), g.a(j, l)))
                    - four(g.d(i, k, l).scale_poly(&shifted(j)));
                lhs - rhs
            }
            SwRelation::DijkDklm => {
                let (i, j, k, l, m) = (t[0], t[1], t[2], t[3], t[4]);
                let lhs = g.d(i, j, k).commutator(g.d(k, l, m));
                let rhs = four(ac(g.d(i, l, m), g.a(j, k))) - four(ac(g.d(j, l, m), g.a(i, k)));
                lhs - rhs
            }
            SwRelation::CikCkl => {
                let (i, k, l) = (t[0], t[1], t[2]);
                let lhs = g.c(i, k).commutator(g.c(k, l));
                let rhs = four(ac(g.c(l, i), g.b(k)));
                lhs - rhs
            }
            SwRelation::BiDijk => {
                let (i, j, k) = (t[0], t[1], t[2]);
                let lhs = g.b(i).commutator(g.d(i, j, k));
                let rhs = four(ac(g.b(k), g.a(i, j))) - four(ac(g.b(j), g.a(i, k)));
                lhs - rhs
            }
            SwRelation::BiCij => {
                let (i, j) = (t[0], t[1]);
                let lhs = g.b(i).commutator(g.c(i, j));
                let rhs = -four(ac(g.b(i), g.b(j)))
                    + g.a(i, j).scale_poly(&ParamPoly::b(n).scale_int(32));
                lhs - rhs
            }
            SwRelation::CijDjkl => {
                let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
                let lhs = g.c(i, j).commutator(g.d(j, k, l));
                let rhs = four(ac(g.c(i, l), g.a(j, k))) - four(ac(g.c(i, k), g.a(j, l)));
                lhs - rhs
            }
            SwRelation::CijDijk => {
                let (i, j, k) = (t[0], t[1], t[2]);
                let lhs = g.c(i, j).commutator(g.d(i, j, k));
                let rhs = -four(ac(g.c(i, k), g.a(i, j))) - four(ac(g.c(j, k), g.a(i, j)));
                lhs - rhs
            }
            SwRelation::AijCij => {
                let (i, j) = (t[0], t[1]);
                let lhs = g.a(i, j).commutator(g.c(i, j));
                let rhs = four(ac(g.a(i, j), g.b(j)))
                    - four(ac(g.a(i, j), g.b(i)))
                    - four(g.b(i).scale_poly(&shifted(j)))
                    + four(g.b(j).scale_poly(&shifted(i)));
                lhs - rhs
            }
            SwRelation::AijCki => {
                let (i, j, k) = (t[0], t[1], t[2]);
                let lhs = g.a(i, j).commutator(g.c(k, i));
                let rhs = four(ac(g.a(k, j), g.b(i))) - four(ac(g.a(i, k), g.b(j)));
                lhs - rhs
            }
        }
    }
}

/// `C_ij − [B_j, A_ij]`, the second form of `C_ij` with the opposite sign.
/// Since `A_ij` commutes with `B_i + B_j` this equals `2C_ij`, never zero.
pub fn printed_c_second_form(g: &GeneratorSet, i: usize, j: usize) -> RelationCheck {
    RelationCheck::run("C_ij=[B_j,A_ij]", &[i, j], || {
        g.c(i, j) - g.b(j).commutator(g.a(i, j))
    })
}

/// All ordered `k`-tuples of pairwise-distinct indices in `0..n`.
pub fn distinct_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// How many index tuples to instantiate per relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    AllTuples,
    /// First admissible tuple only.
    Spot,
}

/// Checks every relation family admissible at this dimension.
pub fn verify_sw_relations(g: &GeneratorSet, coverage: Coverage) -> Vec<RelationCheck> {
    verify_selected(g, &SwRelation::ALL, coverage)
}

pub fn verify_selected(
    g: &GeneratorSet,
    relations: &[SwRelation],
    coverage: Coverage,
) -> Vec<RelationCheck> {
    let jobs: Vec<(SwRelation, Vec<usize>)> = relations
        .iter()
        .flat_map(|&rel| {
            let mut tuples = rel.index_tuples(g.dimension());
            if coverage == Coverage::Spot {
                tuples.truncate(1);
            }
            tuples.into_iter().map(move |t| (rel, t))
        })
        .collect();
    jobs.par_iter()
        .map(|(rel, t)| RelationCheck::run(rel.name(), t, || rel.residual(g, t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration() {
        assert_eq!(distinct_tuples(3, 2).len(), 6);
        assert_eq!(distinct_tuples(4, 3).len(), 24);
        assert_eq!(distinct_tuples(2, 3).len(), 0);
        assert_eq!(SwRelation::DCyclic.index_tuples(3), vec![vec![0, 1, 2]]);
        assert_eq!(SwRelation::ACommutesOtherB.index_tuples(3).len(), 3);
    }

    #[test]
    fn n2_only_instantiates_low_arity() {
        let g = GeneratorSet::build(2).unwrap();
        let checks = verify_sw_relations(&g, Coverage::AllTuples);
        assert!(checks.iter().all(|c| c.indices.len() <= 2));
        assert!(checks.iter().any(|c| c.name == "[B_i,C_ij]"));
    }
}
