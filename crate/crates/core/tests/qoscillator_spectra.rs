use swalg_core::opalg::{rat, Rational, Ring, Scalar};
use swalg_core::qoscillator::*;
use swalg_core::spectral::degeneracy_count;

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn zero_constants() -> QuadAlgConstants<Rational> {
    let z = q(0, 1);
    QuadAlgConstants {
        alpha: z.clone(),
        gamma: z.clone(),
        delta: z.clone(),
        epsilon: z.clone(),
        zeta: z.clone(),
        a: z.clone(),
        d: z.clone(),
        z,
    }
}

#[test]
fn gamma0_pure_epsilon_pattern() {
    let mut c = zero_constants();
    c.epsilon = q(1, 1);
    let phi = structure_function_gamma0(&c, &q(3, 1), &q(1, 1)).unwrap();
    // only the −K/(4ε) constant survives
    assert_eq!(phi.coeffs(), &[q(-3, 4)]);
    c.epsilon = q(0, 1);
    assert!(structure_function_gamma0(&c, &q(3, 1), &q(1, 1)).is_err());
}

#[test]
fn gamma_nonzero_rejects_gamma_zero() {
    let c = zero_constants();
    for v in [GammaNonzeroVariant::Printed, GammaNonzeroVariant::Corrected] {
        assert!(structure_function_gamma_nonzero(&c, &q(1, 1), v).is_err());
    }
}

#[test]
fn pair_structure_function_is_sixteen_times_bracket() {
    let pc = pair_crosscheck(&q(1, 1), &q(3, 1), &q(1, 1), (1, 1), 3, 5).unwrap();
    assert_eq!(pc.vs_bracket.constant(), Some(16.0));
    assert_eq!(pc.vs_bracket.spread, 0.0);
    assert!(pc.vs_product.is_constant(1e-10));
    assert!(!pc.vs_printed_product.is_constant(1e-3));
    assert_eq!(pc.zero_residuals, (0.0, 0.0));
    assert!(pc.printed_constraint_residual > 1.0);
    // ν_1 = 3/2
    assert_eq!(pc.u, 1.25);

    let pf = pair_crosscheck(&1.3f64, &0.2, &0.7, (1, -1), 2, 5).unwrap();
    assert!(pf.vs_bracket.is_constant(1e-10), "{pf:?}");
}

#[test]
fn pair_constraints_recover_u_and_w() {
    // a = (1, 1, 1), b = 1/2: ν = 3/2, s = 1
    let fam = pair_family(&q(3, 2), &q(3, 2), &q(1, 1));
    for p in 0..4u32 {
        let sols = solve_constraints_at(&fam, p, 1e-12);
        let sol = sols.iter().find(|s| s.branch_signs == [1, 1]).unwrap();
        assert_eq!(sol.u, q(5, 4));
        // w = 2s(2p + 2 + ν_i + ν_j)
        assert_eq!(sol.central, q(2 * (2 * i64::from(p) + 2) + 6, 1));
        assert!(sol.positivity_ok);
        assert!(sol.phi_values.iter().all(|v| *v > q(0, 1)));
    }
}

#[test]
fn top_constraint_gives_energy() {
    let s = q(3, 2);
    let (z, nu) = (q(9, 1), q(5, 2));
    let fam = top_family(&s, &z, &nu);
    for p in 0..3u32 {
        let sols = solve_constraints_at(&fam, p, 1e-12);
        for (e1, e2) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            // e(H) = √(b/2)(4p + 4 + ε₁z + 2ε₂ν) with √(b/2) = s/2
            let expect = s.clone() / q(2, 1)
                * (q(4 * i64::from(p) + 4, 1) + z.scale_int(e1) + nu.scale_int(2 * e2));
            let u = (q(2, 1) + z.scale_int(e1) + nu.scale_int(2 * e2)) / q(4, 1);
            assert!(
                sols.iter()
                    .any(|x| x.energies == vec![expect.clone()] && x.u == u),
                "p {p} signs {e1} {e2}"
            );
        }
    }
}

#[test]
fn equal_slopes_give_no_solution() {
    let fam = RootFamily {
        name: "flat",
        scale: q(1, 1),
        roots: vec![
            AffineRoot {
                constant: q(0, 1),
                slope: q(0, 1),
                signs: vec![1],
            },
            AffineRoot {
                constant: q(1, 3),
                slope: q(0, 1),
                signs: vec![1],
            },
        ],
        energy_map: None,
    };
    assert!(solve_constraints(&fam, 5, 1e-12).is_empty());
}

#[test]
fn chain_and_top_proportionality() {
    let a = vec![q(1, 1), q(3, 1), q(0, 1), q(6, 1)];
    for i in 2..4 {
        let c = chain_crosscheck(&a, i, &q(37, 3), &q(5, 2), &q(7, 1), 9).unwrap();
        assert_eq!(c.corrected.constant(), Some(824_633_720_832.0));
        assert_eq!(c.corrected.spread, 0.0);
        assert!(!c.printed.is_constant(1e-8));
    }
    let s = q(3, 2);
    let t = top_crosscheck(&a, &s, &q(41, 5), &q(9, 1), 9).unwrap();
    assert_eq!(t.corrected.constant(), Some(-3.0 * 2f64.powi(38) * 2.25));
    assert_eq!(t.corrected.spread, 0.0);
    assert!(!t.printed.is_constant(1e-8));
}

#[test]
fn number_operator_laws() {
    let lin = NumberOperatorLaw::Linear {
        sqrt_epsilon: q(4, 1),
        u: q(5, 4),
    };
    assert_eq!(lin.eval(2), q(13, 1));
    let quad = NumberOperatorLaw::Quadratic {
        gamma: q(8, 1),
        epsilon: q(16, 1),
        u: q(1, 2),
    };
    // 4((1/2)² − 1/4 − 1/4)
    assert_eq!(quad.eval(0), q(-1, 1));
}

#[test]
fn branch_policy() {
    assert_eq!(admissible_branches(&[q(1, 1), q(3, 1)]), vec![vec![1, 1]]);
    assert_eq!(
        admissible_branches(&[q(0, 1), q(1, 1)]),
        vec![vec![1, 1], vec![-1, 1]]
    );
    assert_eq!(admissible_branches(&[q(3, 8)]), vec![vec![1]]);
    assert_eq!(admissible_branches(&[q(-1, 8)]), vec![vec![1]]);
    assert!(SwParams::from_b(vec![q(1, 1)], q(0, 1), vec![1]).is_err());
    assert!(SwParams::from_b(vec![q(1, 1)], q(1, 2), vec![2]).is_err());
}

#[test]
fn cartesian_examples() {
    let p = SwParams::from_b(vec![q(1, 1), q(1, 1)], q(1, 2), vec![1, 1]).unwrap();
    assert_eq!(cartesian_energy(&p, &[0, 0]).unwrap(), q(5, 1));
    let p3 = SwParams::from_b(vec![q(1, 1); 3], q(1, 2), vec![1; 3]).unwrap();
    let levels = spectrum_cartesian(&p3, 4).unwrap();
    for (n, lvl) in levels.iter().enumerate() {
        assert_eq!(lvl.multiplicity as u128, degeneracy_count(3, n as u32));
    }
    assert_eq!(levels[2].multiplicity, 6);
}

#[test]
fn harmonic_limit_unions_both_branches() {
    // N = 1, a = 0: the two branches interleave into s(m + ½)
    let mut energies = Vec::new();
    for br in admissible_branches(&[q(0, 1)]) {
        let p = SwParams::new(vec![q(0, 1)], q(1, 1), br).unwrap();
        energies.extend(
            spectrum_cartesian(&p, 5)
                .unwrap()
                .into_iter()
                .map(|l| l.energy),
        );
    }
    energies.sort();
    let expect: Vec<Rational> = (0..12).map(|m| q(2 * m + 1, 2)).collect();
    assert_eq!(energies, expect);
}

#[test]
fn hyperspherical_examples() {
    let p = SwParams::from_b(vec![q(1, 1); 3], q(1, 2), vec![1; 3]).unwrap();
    assert_eq!(
        hyperspherical_level(&p, 1, &[0, 0]).unwrap().energy,
        q(19, 2)
    );
    assert_eq!(
        hyperspherical_level(&p, 0, &[0, 0]).unwrap().energy,
        q(15, 2)
    );
    assert!(hyperspherical_level(&p, 0, &[0]).is_err());
    let lvl = hyperspherical_level(&p, 0, &[1, 2]).unwrap();
    // k_{N−1} = (2τ_{N−1} + 1 + ν_N + ν_{N−1})²
    assert_eq!(lvl.k[1], q(8, 1) * q(8, 1));
}

#[test]
fn racah_examples() {
    let p = SwParams::from_b(
        vec![q(1, 1), q(3, 1), q(0, 1), q(6, 1)],
        q(9, 8),
        vec![1; 4],
    )
    .unwrap();
    let s = p.s().clone();
    let nu_sum = p.nu().iter().fold(q(0, 1), |acc, v| acc + v);
    let lvl = racah_spectrum(&p, &[1, 0, 2], 1).unwrap();
    // z_{N−2} = 4Σ_{i≤N−2} q_i + 2Σ_{i≤N−1} ν_i + 2(N−2)
    let nu3: Rational = p.nu()[..3].iter().fold(q(0, 1), |acc, v| acc + v);
    assert_eq!(lvl.z[2], q(4, 1) + nu3.scale_int(2) + q(4, 1));
    assert_eq!(lvl.e_h, s.clone() * (q(2 + 6 + 4, 1) + nu_sum.clone()));
    assert_eq!(lvl.e_z, total_angular_eigenvalue(&p, &[1, 0, 2]));
    let hyp = hyperspherical_level(&p, 1, &[1, 0, 2]).unwrap();
    assert_eq!(hyp.energy, lvl.e_h);

    let p2 = SwParams::from_b(vec![q(1, 1), q(3, 1)], q(1, 2), vec![1, 1]).unwrap();
    let l2 = racah_spectrum(&p2, &[2], 3).unwrap();
    assert_eq!(l2.e_h, q(2 * 3 + 2 * 2 + 2, 1) + q(3, 2) + q(5, 2));
    assert!(l2.top.positivity_ok);
}

#[test]
fn four_derivations_agree() {
    let exact: Vec<(Vec<Rational>, Rational)> = vec![
        (vec![q(1, 1), q(3, 1)], q(1, 1)),
        (vec![q(1, 1); 3], q(1, 1)),
        (vec![q(0, 1), q(1, 1), q(3, 1), q(6, 1)], q(2, 3)),
    ];
    for (a, s) in exact {
        for br in admissible_branches(&a) {
            let p = SwParams::new(a.clone(), s.clone(), br).unwrap();
            let c = spectrum_cartesian(&p, 6).unwrap();
            assert_eq!(c, spectrum_hyperspherical(&p, 6).unwrap());
            assert_eq!(c, spectrum_substructure(&p, 6).unwrap());
            assert_eq!(c, spectrum_racah(&p, 6).unwrap());
        }
    }
    let p = SwParams::new(vec![0.1, 2.0, 0.3], 0.8, vec![-1, 1, 1]).unwrap();
    let c = spectrum_cartesian(&p, 6).unwrap();
    assert!(same_levels(
        &c,
        &spectrum_hyperspherical(&p, 6).unwrap(),
        1e-12
    ));
    assert!(same_levels(
        &c,
        &spectrum_substructure(&p, 6).unwrap(),
        1e-12
    ));
    assert!(same_levels(&c, &spectrum_racah(&p, 6).unwrap(), 1e-12));
    assert!(c[0].energy.to_f64() > 0.0);
}
