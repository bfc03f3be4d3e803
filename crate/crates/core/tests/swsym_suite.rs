use std::path::PathBuf;

use swalg_core::opalg::{rat, Operator, ParamAssignment};
use swalg_core::swsym::{
    printed_c_second_form, verify_racah_chain, verify_su11, verify_substructure_qij,
    verify_sw_relations, Coverage, GeneratorSet, RelationCheck, SwRelation,
};

fn failures(checks: &[RelationCheck]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}{:?} ({} terms)", c.name, c.indices, c.term_count))
        .collect()
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against the stored canonical text; `SWALG_BLESS=1` rewrites it.
fn check_golden(name: &str, op: &Operator) {
    let text = op.to_canonical_string();
    let path = golden_path(name);
    if std::env::var_os("SWALG_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let stored =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, stored, "{name} drifted from its golden form");
    assert_eq!(&Operator::parse(op.dimension(), &stored).unwrap(), op);
}

#[test]
fn golden_generators_n3() {
    let g = GeneratorSet::build(3).unwrap();
    for i in 0..3 {
        check_golden(&format!("n3_b{}.txt", i + 1), g.b(i));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        check_golden(&format!("n3_a{}{}.txt", i + 1, j + 1), g.a(i, j));
    }
}

#[test]
fn full_relation_suite_n3() {
    let g = GeneratorSet::build(3).unwrap();
    let checks = verify_sw_relations(&g, Coverage::AllTuples);
    assert!(checks.len() > SwRelation::ALL.len());
    assert_eq!(failures(&checks), Vec::<String>::new());
}

#[test]
fn printed_second_form_of_c_is_off_by_sign() {
    let g = GeneratorSet::build(3).unwrap();
    let check = printed_c_second_form(&g, 0, 1);
    assert!(!check.passed);
    assert_eq!(check.lhs_minus_rhs, g.c(0, 1).scale_int(2));
}

#[test]
fn substructures_n3() {
    let g = GeneratorSet::build(3).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let checks = verify_substructure_qij(&g, i, j).unwrap();
                assert_eq!(failures(&checks), Vec::<String>::new());
            }
        }
    }
    assert!(verify_substructure_qij(&g, 1, 1).is_err());
}

#[test]
fn racah_chain_and_su11() {
    for n in 2..=3 {
        let g = GeneratorSet::build(n).unwrap();
        assert_eq!(
            failures(&verify_racah_chain(&g)),
            Vec::<String>::new(),
            "N = {n}"
        );
        assert_eq!(failures(&verify_su11(&g)), Vec::<String>::new(), "N = {n}");
    }
}

#[test]
fn relations_survive_substitution() {
    let g = GeneratorSet::build(3).unwrap();
    let values = [
        (vec![rat(1, 1), rat(-2, 3), rat(5, 7)], rat(3, 2)),
        (vec![rat(0, 1), rat(1, 8), rat(3, 1)], rat(1, 5)),
        (vec![rat(-1, 9), rat(4, 1), rat(2, 11)], rat(7, 3)),
    ];
    for (a, s) in values {
        let b = s.clone() * s.clone() / rat(2, 1);
        let v = ParamAssignment::from_values(&a, s);
        let sub = |o: &Operator| o.substitute_params(&v).unwrap();
        let (b1, b2, a12, c12) = (sub(g.b(0)), sub(g.b(1)), sub(g.a(0, 1)), sub(g.c(0, 1)));
        let rhs = -b1.anticommutator(&b2).scale_int(4) + a12.scale(&(b * rat(32, 1)));
        assert!((b1.commutator(&c12) - rhs).is_zero());
        assert_eq!(b1.commutator(&a12), c12);
        let (a13, a23) = (sub(g.a(0, 2)), sub(g.a(1, 2)));
        assert_eq!(a12.commutator(&a13), a13.commutator(&a23));
    }
}

#[test]
fn corrupted_generator_is_detected() {
    let mut g = GeneratorSet::build(3).unwrap();
    g.corrupt_b(0, &Operator::x(3, 1));
    let checks = verify_sw_relations(&g, Coverage::Spot);
    let failed = failures(&checks);
    assert!(
        failed.iter().any(|f| f.starts_with("2H-sum(B)")),
        "{failed:?}"
    );
}
