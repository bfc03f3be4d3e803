//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use swalg_core::opalg::{rat, Rational, Scalar};
use swalg_core::qoscillator::{
    admissible_branches, chain_crosscheck, pair_crosscheck, racah_spectrum, spectrum_cartesian,
    spectrum_hyperspherical, spectrum_racah, spectrum_substructure, top_crosscheck, Level,
    SwParams,
};
use swalg_core::spectral::{
    angular_residual, angular_samples, b_eigenvalue_exact, b_eigenvalue_full_line,
    cartesian_residual, cartesian_samples, convergence_ratios, degeneracy_bruteforce,
    degeneracy_count, fd_eigen_richardson, radial_residual, radial_samples, AngularForm, Grid1D,
    RadialForm, SeparatedSolution,
};
use swalg_core::swsym::{
    verify_racah_chain, verify_su11, verify_substructure_qij, verify_sw_relations, Coverage,
    GeneratorSet, RelationCheck,
};

type Outcome = Result<String, String>;

fn failures(checks: &[RelationCheck]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}{:?}", c.name, c.indices))
        .collect()
}

fn all_pass(label: &str, checks: &[RelationCheck]) -> Result<usize, String> {
    let bad = failures(checks);
    if bad.is_empty() {
        Ok(checks.len())
    } else {
        Err(format!("{label}: {} failing, first {}", bad.len(), bad[0]))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for (n, cov) in [
        (3, Coverage::AllTuples),
        (4, Coverage::AllTuples),
        (5, Coverage::Spot),
    ] {
        let g = GeneratorSet::build(n).map_err(|e| e.to_string())?;
        let k = all_pass(&format!("N={n}"), &verify_sw_relations(&g, cov))?;
        counts.push(format!("N={n}: {k}"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(300) {
        return Err(format!(
            "runtime {:.1}s exceeds 5 minutes",
            elapsed.as_secs_f64()
        ));
    }
    Ok(format!(
        "{} relations with zero residual in {:.1}s",
        counts.join(", "),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    let mut casimir = 0;
    for n in [3, 4] {
        let g = GeneratorSet::build(n).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let checks = verify_substructure_qij(&g, i, j).map_err(|e| e.to_string())?;
                total += all_pass(&format!("N={n} ({},{})", i + 1, j + 1), &checks)?;
                let k: Vec<&str> = checks
                    .iter()
                    .filter(|c| c.name.contains('K'))
                    .map(|c| c.name.as_str())
                    .collect();
                for needed in [
                    "K_ij=K'_ij",
                    "K_ij commutes B_i",
                    "K_ij commutes A_ij",
                    "K_ij commutes C_ij",
                ] {
                    if !k.contains(&needed) {
                        return Err(format!("missing {needed}"));
                    }
                }
                casimir += k.len();
            }
        }
    }
    Ok(format!(
        "{total} exact checks over all ordered pairs, N=3,4 ({casimir} Casimir checks)"
    ))
}

fn criterion_3() -> Outcome {
    let mut chain = 0;
    let mut su = 0;
    for n in [2, 3, 4] {
        let g = GeneratorSet::build(n).map_err(|e| e.to_string())?;
        if n >= 3 {
            chain += all_pass(&format!("chain N={n}"), &verify_racah_chain(&g))?;
        }
        let su11 = verify_su11(&g);
        if !su11.iter().any(|c| c.name.starts_with("Z=")) {
            return Err("Z identity not checked".into());
        }
        su += all_pass(&format!("su(1,1) N={n}"), &su11)?;
    }
    Ok(format!(
        "{chain} chain checks (N=3,4), {su} su(1,1) and Z checks (N=2,3,4)"
    ))
}

fn pair_sets() -> (Vec<(Vec<Rational>, Rational)>, Vec<(Vec<f64>, f64)>) {
    (
        vec![
            (vec![rat(1, 1), rat(3, 1), rat(0, 1)], rat(1, 1)),
            (vec![rat(6, 1), rat(10, 1)], rat(2, 3)),
        ],
        vec![(vec![2.0, 0.25, 5.0], 2f64.sqrt()), (vec![0.1, 0.7], 1.3)],
    )
}

fn pair_block<T: Scalar>(a: &[T], s: &T, constants: &mut Vec<f64>) -> Result<usize, String> {
    let mut cases = 0;
    for signs in admissible_branches(a) {
        for i in 0..a.len() {
            for j in (i + 1)..a.len() {
                for p in 0..=4 {
                    let x = pair_crosscheck(&a[i], &a[j], s, (signs[i], signs[j]), p, 9)
                        .map_err(|e| e.to_string())?;
                    let ratio = x.vs_product.constant().ok_or("no samples")?;
                    let zero = x.zero_residuals.0.max(x.zero_residuals.1)
                        / (ratio.abs() * f64::from(p + 1).powi(4) * 100.0);
                    if x.vs_product.samples.len() < 5
                        || !x.vs_product.is_constant(1e-10)
                        || zero > 1e-10
                    {
                        return Err(format!(
                            "pair ({},{}) p={p}: spread {:e}, root residual {zero:e}",
                            i + 1,
                            j + 1,
                            x.vs_product.spread
                        ));
                    }
                    if !constants
                        .iter()
                        .any(|c| (c - ratio).abs() <= 1e-10 * ratio.abs())
                    {
                        constants.push(ratio);
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

fn chain_top_block<T: Scalar>(a: Vec<T>, s: T, printed_spread: &mut f64) -> Result<usize, String> {
    let n = a.len();
    let mut cases = 0;
    for q in [
        vec![0; n - 1],
        vec![1; n - 1],
        (0..n as u32 - 1).collect::<Vec<_>>(),
    ] {
        let p = SwParams::new(a.clone(), s.clone(), vec![1; n]).map_err(|e| e.to_string())?;
        let lvl = racah_spectrum(&p, &q, 1).map_err(|e| e.to_string())?;
        for i in 2..n {
            let tail = (i..n).fold(T::from_int(2 * (n - i - 1) as i64), |acc, k| {
                acc.ring_add(&p.nu()[k].scale_int(2))
            });
            let c = chain_crosscheck(&a, i, &lvl.y1, &tail, &lvl.z[i - 2], 9)
                .map_err(|e| e.to_string())?;
            if c.corrected.samples.len() < 9 || !c.corrected.is_constant(1e-8) {
                return Err(format!("chain link {i}: spread {:e}", c.corrected.spread));
            }
            *printed_spread = printed_spread.min(c.printed.spread);
            cases += 1;
        }
        let t = top_crosscheck(&a, &s, &lvl.e_h, &lvl.z[n - 2], 9).map_err(|e| e.to_string())?;
        if t.corrected.samples.len() < 9 || !t.corrected.is_constant(1e-8) {
            return Err(format!("top: spread {:e}", t.corrected.spread));
        }
        *printed_spread = printed_spread.min(t.printed.spread);
        cases += 1;
    }
    Ok(cases)
}

fn criterion_4() -> Outcome {
    let (exact, float) = pair_sets();
    let mut constants = Vec::new();
    let mut pairs = 0;
    for (a, s) in &exact {
        pairs += pair_block(a, s, &mut constants)?;
    }
    for (a, s) in &float {
        pairs += pair_block(a, s, &mut constants)?;
    }
    let mut printed = f64::INFINITY;
    let mut links = chain_top_block(
        vec![rat(1, 1), rat(3, 1), rat(0, 1), rat(6, 1)],
        rat(3, 2),
        &mut printed,
    )?;
    links += chain_top_block(vec![2.0, 0.25, 5.0, 0.1], 1.1, &mut printed)?;
    links += chain_top_block(
        vec![rat(3, 1), rat(1, 1), rat(10, 1)],
        rat(1, 2),
        &mut printed,
    )?;
    Ok(format!(
        "pair: {pairs} cases at 9 points, spread <= 1e-10, constant(s) {constants:?}; \
         chain/top: {links} cases constant to 1e-8 with the corrected exponent; \
         printed gamma!=0 form reported as a finding (smallest spread {printed:.3})"
    ))
}

fn compare<T: Scalar>(x: &[Level<T>], y: &[Level<T>]) -> Result<f64, String> {
    if x.len() != y.len() {
        return Err(format!("{} levels vs {}", x.len(), y.len()));
    }
    let mut worst = 0.0f64;
    for (l, r) in x.iter().zip(y) {
        if l.multiplicity != r.multiplicity {
            return Err("multiplicity mismatch".into());
        }
        let d = l.energy.ring_sub(&r.energy).to_f64().abs();
        worst = worst.max(d / r.energy.to_f64().abs());
    }
    Ok(worst)
}

fn spectra_block<T: Scalar>(a: Vec<T>, s: T) -> Result<(usize, f64), String> {
    let mut worst = 0.0f64;
    let mut sets = 0;
    for branches in admissible_branches(&a) {
        let p = SwParams::new(a.clone(), s.clone(), branches.clone()).map_err(|e| e.to_string())?;
        let cart = spectrum_cartesian(&p, 8).map_err(|e| e.to_string())?;
        let routes = [
            ("hyperspherical", spectrum_hyperspherical(&p, 8)),
            ("substructure", spectrum_substructure(&p, 8)),
            ("racah", spectrum_racah(&p, 8)),
        ];
        for (name, levels) in routes {
            let levels = levels.map_err(|e| format!("{name} {branches:?}: {e}"))?;
            let w = compare(&levels, &cart).map_err(|e| format!("{name} {branches:?}: {e}"))?;
            if w > 1e-12 {
                return Err(format!("{name} {branches:?}: relative deviation {w:e}"));
            }
            worst = worst.max(w);
        }
        sets += 1;
    }
    Ok((sets, worst))
}

fn criterion_5() -> Outcome {
    let mut runs = Vec::new();
    let exact: Vec<(Vec<Rational>, Rational)> = vec![
        (vec![rat(1, 1), rat(3, 1)], rat(1, 1)),
        (vec![rat(1, 1), rat(3, 1), rat(0, 1)], rat(1, 1)),
        (vec![rat(0, 1), rat(1, 1), rat(3, 1), rat(6, 1)], rat(2, 3)),
    ];
    for (a, s) in exact {
        let n = a.len();
        let (sets, w) = spectra_block(a, s)?;
        runs.push(format!(
            "N={n} rational nu: {sets} branch sets, max dev {w:e}"
        ));
    }
    let float: Vec<(Vec<f64>, f64)> = vec![
        (vec![0.3, 7.0], 0.9),
        (vec![2.0, 0.25, 5.0], 2f64.sqrt()),
        (vec![0.5, 0.1, 2.0, 0.25], 1.7),
    ];
    for (a, s) in float {
        let n = a.len();
        let (sets, w) = spectra_block(a, s)?;
        runs.push(format!(
            "N={n} irrational nu: {sets} branch sets, max dev {w:.1e}"
        ));
    }
    Ok(format!("n_max = 8; {}", runs.join("; ")))
}

fn criterion_6() -> Outcome {
    let mut worst_eig = 0.0f64;
    let mut ratio_range = (f64::INFINITY, 0.0f64);
    for b in [0.5, 1.0, 2.0] {
        for a in [0.0, 1.0, 3.0, 6.0] {
            let grid = Grid1D::reference(b, 4000).map_err(|e| e.to_string())?;
            let eig = fd_eigen_richardson(a, b, &grid, 5).map_err(|e| e.to_string())?;
            let ratios = convergence_ratios(a, b, &grid, 5).map_err(|e| e.to_string())?;
            for q in 0..5u32 {
                let exact = if a == 0.0 {
                    b_eigenvalue_full_line(b, q)
                } else {
                    b_eigenvalue_exact(a, b, q)
                };
                let err = (eig.extrapolated[q as usize] - exact).abs() / exact;
                let r = ratios[q as usize];
                if err > 1e-3 || !(3.5..=4.5).contains(&r) {
                    return Err(format!("a={a} b={b} level {q}: rel err {err:e}, ratio {r}"));
                }
                worst_eig = worst_eig.max(err);
                ratio_range = (ratio_range.0.min(r), ratio_range.1.max(r));
            }
        }
    }

    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    let mut cases = 0;
    let sets: Vec<(Vec<f64>, f64)> = vec![
        (vec![1.0, 3.0], 1.0),
        (vec![0.5, 2.0, 0.25], 0.5),
        (vec![0.0, 1.0, 3.0, 6.0], 1.0),
    ];
    for (a, b) in sets {
        let n = a.len();
        for branches in admissible_branches(&a) {
            let p = SwParams::from_b(a.clone(), b, branches).map_err(|e| e.to_string())?;
            let s = *p.s();
            let cart_pts = cartesian_samples(n, s, 20);
            let ang_pts = angular_samples(20);
            let rad_pts = radial_samples(s, 20);
            if cart_pts.len() < 20 || ang_pts.len() < 20 || rad_pts.len() < 20 {
                return Err("fewer than 20 samples".into());
            }
            for t in swalg_core::qoscillator::bounded_tuples(n, 2) {
                let c = cartesian_residual(&p, &t, &cart_pts)
                    .map_err(|e| e.to_string())?
                    .max_residual;
                let sol = SeparatedSolution::hyperspherical(&p, t[0], &t[1..])
                    .map_err(|e| e.to_string())?;
                let r = radial_residual(&sol.radial, RadialForm::Corrected, &rad_pts)
                    .map_err(|e| e.to_string())?
                    .max_residual;
                let mut ang: f64 = 0.0;
                for lvl in &sol.angular {
                    ang = ang.max(
                        angular_residual(lvl, AngularForm::Corrected, &ang_pts)
                            .map_err(|e| e.to_string())?
                            .max_residual,
                    );
                }
                if c >= 1e-7 || ang >= 1e-7 || r >= 1e-7 {
                    return Err(format!(
                        "{t:?}: cartesian {c:e}, angular {ang:e}, radial {r:e}"
                    ));
                }
                worst = (worst.0.max(c), worst.1.max(ang), worst.2.max(r));
                cases += 1;
            }
        }
    }
    Ok(format!(
        "FD a in {{0,1,3,6}}, b in {{1/2,1,2}}: max rel err {worst_eig:.1e}, ratios in [{:.3}, {:.3}]; \
         {cases} states at 20 samples: cartesian {:.1e}, angular {:.1e}, radial {:.1e}",
        ratio_range.0, ratio_range.1, worst.0, worst.1, worst.2
    ))
}

fn criterion_7() -> Outcome {
    for n in 1..=6u32 {
        for level in 0..=10u32 {
            let (f, e) = (degeneracy_count(n, level), degeneracy_bruteforce(n, level));
            if f != e {
                return Err(format!("N={n} n={level}: binomial {f}, enumerated {e}"));
            }
        }
    }
    Ok("binomial equals enumeration for N <= 6, n <= 10".into())
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "n = 3\na = [1, 3, \"1/4\"]\nb = \"1/2\"\n[grid]\nintervals = 4000\n",
    )
    .map_err(|e| e.to_string())?;
    let run = |cmd: &str, fmt: &str, threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_swalg"))
            .args([cmd, "--config", cfg.to_str().unwrap(), "--format", fmt])
            .env("SWALG_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())?;
        match out.status.code() {
            Some(0) | Some(1) => Ok(out.stdout),
            other => Err(format!("{cmd} exited with {other:?}")),
        }
    };
    let mut compared = 0;
    for cmd in ["verify", "derive", "numcheck"] {
        for fmt in ["json", "md"] {
            let first = run(cmd, fmt, "1")?;
            for threads in ["1", "4"] {
                if run(cmd, fmt, threads)? != first {
                    return Err(format!(
                        "{cmd} --format {fmt} differs with {threads} threads"
                    ));
                }
            }
            compared += 2;
        }
    }
    Ok(format!(
        "{compared} repeated runs byte-identical across verify/derive/numcheck, json and md"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("symbolic relation suite", criterion_1),
        ("substructures and Casimirs", criterion_2),
        ("Racah chain and su(1,1)", criterion_3),
        ("structure-function cross-check", criterion_4),
        ("spectrum equivalence", criterion_5),
        ("numerical oracle", criterion_6),
        ("degeneracy", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
