//! Symbolic verification of the operator relations.

use rayon::prelude::*;
use serde_json::{json, Value};
use swalg_core::opalg::Operator;
use swalg_core::swsym::{
    printed_c_second_form, verify_racah_chain, verify_su11, verify_substructure_qij,
    verify_sw_relations, Coverage, GeneratorSet, RelationCheck,
};

use crate::config::{CoverageMode, Fault, RunConfig, Suite};
use crate::report::{CheckRecord, Finding, Report, Status};

fn record(suite: Suite, c: &RelationCheck) -> CheckRecord {
    CheckRecord {
        suite: suite.name().to_string(),
        name: c.name.clone(),
        indices: c.indices.clone(),
        status: Status::from_bool(c.passed),
        measure: Value::from(c.term_count),
        tolerance: Some(Value::from(0)),
        detail: None,
    }
}

fn is_casimir(c: &RelationCheck) -> bool {
    c.name.contains('K')
}

/// Generators with the configured fault applied.
pub fn generators(cfg: &RunConfig) -> GeneratorSet {
    let n = cfg.n;
    let mut g = GeneratorSet::build(n).expect("n >= 2 is validated");
    match cfg.fault {
        Some(Fault::B(i)) => g.corrupt_b(i, &Operator::x_pow(n, i, 2)),
        Some(Fault::A(i, j)) => {
            let extra = &Operator::x(n, i) * &Operator::x(n, j);
            g.corrupt_a(i, j, &extra)
        }
        None => {}
    }
    g
}

pub fn run(cfg: &RunConfig, report: &mut Report) {
    let g = generators(cfg);
    let n = cfg.n;
    let spot = match cfg.coverage {
        CoverageMode::All => false,
        CoverageMode::Spot => true,
        CoverageMode::Auto => n > 4,
    };
    let wants = |s: Suite| cfg.suites.contains(&s);

    if wants(Suite::SwRelations) {
        let cov = if spot {
            Coverage::Spot
        } else {
            Coverage::AllTuples
        };
        for c in verify_sw_relations(&g, cov) {
            report.checks.push(record(Suite::SwRelations, &c));
        }
        let printed = printed_c_second_form(&g, 0, 1);
        let twice_c = printed.lhs_minus_rhs == g.c(0, 1).scale_int(2);
        report.findings.push(Finding {
            name: "commutator form of C_ij".into(),
            description:
                "C_ij = [B_i,A_ij] holds, and A_ij commutes with B_i + B_j, so the second form \
                          is C_ij = [A_ij,B_j]; writing it as [B_j,A_ij] leaves a residual of 2C_ij"
                    .into(),
            data: json!({
                "indices": printed.indices,
                "residual_terms": printed.term_count,
                "residual_is_2C_ij": twice_c,
            }),
        });
    }

    let casimirs = wants(Suite::Casimirs);
    if wants(Suite::Substructures) || casimirs {
        let pairs: Vec<(usize, usize)> = if spot {
            vec![(0, 1)]
        } else {
            (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .collect()
        };
        let checks: Vec<RelationCheck> = pairs
            .par_iter()
            .flat_map_iter(|&(i, j)| {
                verify_substructure_qij(&g, i, j).expect("distinct in-range pair")
            })
            .collect();
        push_split(report, &checks, Suite::Substructures, cfg);
    }

    if wants(Suite::RacahChain) || casimirs {
        let checks = verify_racah_chain(&g);
        push_split(report, &checks, Suite::RacahChain, cfg);
    }

    if wants(Suite::Su11) {
        for c in verify_su11(&g) {
            report.checks.push(record(Suite::Su11, &c));
        }
    }
}

/// Routes Casimir checks to their own suite.
fn push_split(report: &mut Report, checks: &[RelationCheck], suite: Suite, cfg: &RunConfig) {
    for c in checks {
        let target = if is_casimir(c) {
            Suite::Casimirs
        } else {
            suite
        };
        if cfg.suites.contains(&target) {
            report.checks.push(record(target, c));
        }
    }
}
