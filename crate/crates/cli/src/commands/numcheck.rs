//! Finite-difference and residual checks of the separated solutions.

use serde_json::{json, Value};
use swalg_core::qoscillator::{bounded_tuples, cartesian_energy, SwParams};
use swalg_core::spectral::{
    angular_residual, angular_samples, b_eigenvalue_exact, b_eigenvalue_full_line,
    cartesian_residual, cartesian_samples, convergence_ratios, degeneracy_bruteforce,
    degeneracy_count, fd_eigen_richardson, radial_residual, radial_samples, AngularForm, Grid1D,
    RadialForm, RichardsonEigen, SeparatedSolution,
};

use crate::config::{RunConfig, Suite};
use crate::report::{num, CheckRecord, Finding, Report, Status, Table};

/// States with `Σ n ≤ STATE_CUTOFF` get residual checks.
const STATE_CUTOFF: u32 = 2;
const DEGENERACY_MAX_N: u32 = 6;
const DEGENERACY_MAX_LEVEL: u32 = 10;

fn check(
    name: &str,
    indices: Vec<usize>,
    ok: bool,
    measure: Value,
    tolerance: Value,
    detail: String,
) -> CheckRecord {
    CheckRecord {
        suite: Suite::Numeric.name().to_string(),
        name: name.to_string(),
        indices,
        status: Status::from_bool(ok),
        measure,
        tolerance: Some(tolerance),
        detail: Some(detail),
    }
}

fn signs_text(b: &[i8]) -> String {
    let s: Vec<&str> = b.iter().map(|e| if *e > 0 { "+" } else { "-" }).collect();
    format!("[{}]", s.join(""))
}

fn rel(x: f64, exact: f64) -> f64 {
    (x - exact).abs() / exact.abs()
}

/// Per-coordinate FD results for one distinct value of `a`.
struct Oscillator {
    a: f64,
    eig: RichardsonEigen,
}

impl Oscillator {
    /// FD estimate of `e(B)` for quantum number `n` on branch `eps`.
    fn level(&self, n: u32, eps: i8) -> Option<f64> {
        let idx = match (self.a == 0.0, eps > 0) {
            (false, true) => n,
            (false, false) => return None,
            (true, true) => 2 * n + 1,
            (true, false) => 2 * n,
        };
        self.eig.extrapolated.get(idx as usize).copied()
    }
}

pub fn run(cfg: &RunConfig, report: &mut Report) {
    let b = cfg.b.as_ref().expect("validated").value;
    let s = cfg.s.as_ref().expect("validated").value;
    let a = cfg.a_f64();
    let unit = (2.0 * b).powf(-0.25);

    let mut oscillators = Vec::new();
    match Grid1D::new(
        cfg.grid.x_min_factor * unit,
        cfg.grid.x_max_factor * unit,
        cfg.grid.intervals,
    ) {
        Err(e) => report.checks.push(check(
            "fd:grid",
            vec![],
            false,
            Value::Null,
            Value::Null,
            e.to_string(),
        )),
        Ok(grid) => {
            let mut distinct: Vec<f64> = a.clone();
            distinct.sort_by(f64::total_cmp);
            distinct.dedup();
            for &ai in &distinct {
                if ai < 0.0 {
                    report
                        .notes
                        .push(format!("a = {ai} < 0: finite-difference check skipped"));
                    continue;
                }
                if let Some(o) = fd_block(cfg, ai, b, &grid, report) {
                    oscillators.push(o);
                }
            }
        }
    }

    let params: Vec<SwParams<f64>> = cfg
        .branch_sets()
        .into_iter()
        .filter_map(|bs| SwParams::new(a.clone(), s, bs).ok())
        .collect();

    for p in &params {
        fd_vs_cartesian(cfg, p, &oscillators, report);
        residuals(cfg, p, report);
    }
    if let Some(p) = params.first() {
        printed_forms(cfg, p, report);
    }

    let mut worst = 0u128;
    let mut rows = Vec::new();
    for n in 1..=DEGENERACY_MAX_N {
        for level in 0..=DEGENERACY_MAX_LEVEL {
            let (f, e) = (degeneracy_count(n, level), degeneracy_bruteforce(n, level));
            worst = worst.max(f.abs_diff(e));
            if level == DEGENERACY_MAX_LEVEL {
                rows.push(vec![
                    Value::from(n),
                    Value::from(level),
                    Value::from(f.to_string()),
                    Value::from(e.to_string()),
                ]);
            }
        }
    }
    report.checks.push(check(
        "degeneracy:binomial=enumeration",
        vec![],
        worst == 0,
        Value::from(worst.to_string()),
        Value::from(0),
        format!("N <= {DEGENERACY_MAX_N}, n <= {DEGENERACY_MAX_LEVEL}"),
    ));
    report.tables.push(Table {
        name: format!("degeneracy at n = {DEGENERACY_MAX_LEVEL}"),
        columns: ["N", "n", "binomial", "enumerated"]
            .map(String::from)
            .to_vec(),
        rows,
    });
}

fn fd_block(
    cfg: &RunConfig,
    ai: f64,
    b: f64,
    grid: &Grid1D,
    report: &mut Report,
) -> Option<Oscillator> {
    let t = &cfg.tolerances;
    let levels = cfg.levels;
    let eig = match fd_eigen_richardson(ai, b, grid, levels) {
        Ok(e) => e,
        Err(e) => {
            report.checks.push(check(
                "fd:e(B)",
                vec![],
                false,
                Value::Null,
                num(t.eigen_rel),
                format!("a = {ai}: {e}"),
            ));
            return None;
        }
    };
    let ratios = convergence_ratios(ai, b, grid, levels).unwrap_or_default();
    let mut rows = Vec::new();
    for k in 0..levels {
        let exact = if ai == 0.0 {
            b_eigenvalue_full_line(b, k as u32)
        } else {
            b_eigenvalue_exact(ai, b, k as u32)
        };
        let err = rel(eig.extrapolated[k], exact);
        report.checks.push(check(
            "fd:e(B) level",
            vec![k],
            err <= t.eigen_rel,
            num(err),
            num(t.eigen_rel),
            format!("a = {ai}"),
        ));
        let ratio = ratios.get(k).copied().unwrap_or(f64::NAN);
        report.checks.push(check(
            "fd:convergence ratio",
            vec![k],
            ratio >= t.ratio_min && ratio <= t.ratio_max,
            num(ratio),
            json!([num(t.ratio_min), num(t.ratio_max)]),
            format!("a = {ai}, nu = {}", num(0.5 * (1.0 + 8.0 * ai).sqrt())),
        ));
        rows.push(vec![
            Value::from(k),
            num(exact),
            num(eig.coarse[k]),
            num(eig.fine[k]),
            num(eig.extrapolated[k]),
            num(err),
            num(ratio),
        ]);
    }
    report.tables.push(Table {
        name: format!(
            "B eigenvalues, a = {ai}{}",
            if ai == 0.0 { " (full line)" } else { "" }
        ),
        columns: [
            "level",
            "exact",
            "h",
            "h/2",
            "extrapolated",
            "rel err",
            "ratio",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    });
    Some(Oscillator { a: ai, eig })
}

fn fd_vs_cartesian(cfg: &RunConfig, p: &SwParams<f64>, osc: &[Oscillator], report: &mut Report) {
    let tol = cfg.tolerances.eigen_rel;
    let label = signs_text(p.branches());
    let find = |ai: f64| osc.iter().find(|o| o.a == ai);
    let mut worst = 0.0f64;
    let mut states = 0usize;
    'tuples: for t in bounded_tuples(p.dimension(), STATE_CUTOFF) {
        let mut sum = 0.0;
        for (i, &ni) in t.iter().enumerate() {
            match find(p.a()[i]).and_then(|o| o.level(ni, p.branches()[i])) {
                Some(e) => sum += e,
                None => continue 'tuples,
            }
        }
        let exact = cartesian_energy(p, &t).expect("tuple length matches");
        worst = worst.max(rel(0.5 * sum, exact));
        states += 1;
    }
    if states == 0 {
        report.notes.push(format!(
            "branches {label}: no finite-difference reference for these branch signs"
        ));
        return;
    }
    report.checks.push(check(
        "fd:energy=cartesian",
        vec![],
        worst <= tol,
        num(worst),
        num(tol),
        format!("branches {label}, {states} states"),
    ));
}

#[derive(Default)]
struct Worst {
    value: f64,
    error: Option<String>,
    cases: usize,
}

impl Worst {
    fn add(&mut self, r: Result<f64, String>) {
        match r {
            Ok(v) => {
                self.value = self.value.max(v);
                self.cases += 1;
            }
            Err(e) => {
                self.error.get_or_insert(e);
            }
        }
    }

    fn record(&self, name: &str, tol: f64, label: &str, samples: usize) -> CheckRecord {
        match &self.error {
            Some(e) => check(
                name,
                vec![],
                false,
                Value::Null,
                num(tol),
                format!("branches {label}: {e}"),
            ),
            None => check(
                name,
                vec![],
                self.value <= tol,
                num(self.value),
                num(tol),
                format!(
                    "branches {label}, {} cases, {samples} samples each",
                    self.cases
                ),
            ),
        }
    }
}

fn residuals(cfg: &RunConfig, p: &SwParams<f64>, report: &mut Report) {
    let t = &cfg.tolerances;
    let n = p.dimension();
    let s = *p.s();
    let label = signs_text(p.branches());
    let cart_pts = cartesian_samples(n, s, cfg.samples);
    let ang_pts = angular_samples(cfg.samples);
    let rad_pts = radial_samples(s, cfg.samples);

    let mut cart = Worst::default();
    let mut ang = Worst::default();
    let mut rad = Worst::default();
    let mut ray = Worst::default();
    let mut ray_skipped = 0usize;
    for tup in bounded_tuples(n, STATE_CUTOFF) {
        cart.add(
            cartesian_residual(p, &tup, &cart_pts)
                .map(|r| r.max_residual)
                .map_err(|e| e.to_string()),
        );
        let sol = match SeparatedSolution::hyperspherical(p, tup[0], &tup[1..]) {
            Ok(sol) => sol,
            Err(e) => {
                ang.add(Err(e.to_string()));
                continue;
            }
        };
        rad.add(
            radial_residual(&sol.radial, RadialForm::Corrected, &rad_pts)
                .map(|r| r.max_residual)
                .map_err(|e| e.to_string()),
        );
        for lvl in &sol.angular {
            ang.add(
                angular_residual(lvl, AngularForm::Corrected, &ang_pts)
                    .map(|r| r.max_residual)
                    .map_err(|e| e.to_string()),
            );
            match lvl.rayleigh_quotient() {
                Ok(k) => ray.add(Ok(rel(k, lvl.k).min((k - lvl.k).abs()))),
                Err(_) => ray_skipped += 1,
            }
        }
    }
    report
        .checks
        .push(cart.record("residual:cartesian", t.residual, &label, cart_pts.len()));
    report
        .checks
        .push(ang.record("residual:angular", t.residual, &label, ang_pts.len()));
    report
        .checks
        .push(rad.record("residual:radial", t.residual, &label, rad_pts.len()));
    if ray.cases > 0 || ray.error.is_some() {
        report
            .checks
            .push(ray.record("rayleigh:k_l", t.rayleigh, &label, 0));
    }
    if ray_skipped > 0 {
        report.notes.push(format!(
            "branches {label}: Rayleigh quotient skipped for {ray_skipped} non-normalizable angular factors"
        ));
    }
}

fn printed_forms(cfg: &RunConfig, p: &SwParams<f64>, report: &mut Report) {
    let n = p.dimension();
    let s = *p.s();
    let ang_pts = angular_samples(cfg.samples);
    let tau = vec![1u32; n - 1];
    let worst_angular = |form: AngularForm| -> Value {
        match SeparatedSolution::with_form(p, 1, &tau, form) {
            Ok(sol) => {
                let per_level: Vec<Value> = sol
                    .angular
                    .iter()
                    .map(|l| match angular_residual(l, form, &ang_pts) {
                        Ok(r) => num(r.max_residual),
                        Err(e) => Value::from(e.to_string()),
                    })
                    .collect();
                Value::Array(per_level)
            }
            Err(e) => Value::from(e.to_string()),
        }
    };
    let radial = SeparatedSolution::hyperspherical(p, 1, &tau)
        .map_err(|e| e.to_string())
        .and_then(|sol| {
            radial_residual(
                &sol.radial,
                RadialForm::PrintedOdeSign,
                &radial_samples(s, cfg.samples),
            )
            .map_err(|e| e.to_string())
        });
    report.findings.push(Finding {
        name: "separated equations".into(),
        description: "the angular and radial equations hold with -k_{l+1}/sin^2 and -k_1/r^2; with the printed \
                      plus signs the residuals are of order one. The printed generic sine exponent also fails \
                      away from the bottom level, where it reduces to Lambda_{l+1} - (N-l-2)/2"
            .into(),
        data: json!({
            "state": { "tau_r": 1, "tau": tau },
            "angular_printed_sign": worst_angular(AngularForm::PrintedOdeSign),
            "angular_printed_exponent": worst_angular(AngularForm::PrintedGenericExponent),
            "radial_printed_sign": match radial {
                Ok(r) => num(r.max_residual),
                Err(e) => Value::from(e),
            },
        }),
    });
}
