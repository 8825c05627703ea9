use super::*;
use crate::catalog::standard_catalog;
use crate::error::YdhError;
use crate::testdata::nontrivial_dim4;
use crate::ydhopf::verify_axioms;

const K_Z2: &str = "ydh 1
order 2
group Z/2
side left
dim 2
basis e0 e1
phi 0 perm 0 1
psi 0 perm 0 1
unit
  0 1
counit
  0 1
  1 1
mult
  0 0 0 1
  0 1 1 1
  1 0 1 1
  1 1 0 1
comult
  0 0 0 1
  1 1 1 1
antipode
  0 0 1
  1 1 1
end
";

fn parse_err(text: &str) -> (usize, usize, String) {
    match parse(text) {
        Err(YdhError::Parse {
            line,
            col,
            expected,
        }) => (line, col, expected),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn group_algebra_of_z2() {
    let a = parse(K_Z2).unwrap();
    assert!(verify_axioms(&a).passed());
    assert!(a.is_trivial().trivial);
    assert_eq!(render(&a), K_Z2);
}

#[test]
fn catalog_round_trips() {
    for (name, a) in standard_catalog() {
        let text = render(&a);
        let b = parse(&text).unwrap();
        assert_eq!(render(&b), text, "{name}");
        assert_eq!(b.comult(), a.comult());
        assert_eq!(b.antipode(), a.antipode());
    }
}

#[test]
fn nontrivial_round_trip_and_matrix_actions() {
    let a = nontrivial_dim4(false);
    let text = render(&a);
    assert!(text.contains("1/2 + 1/2*z"));
    assert_eq!(render(&parse(&text).unwrap()), text);
    // a non-permutation action renders as a matrix section
    let b = a.with_order(8).unwrap().dualize();
    let t2 = render(&b);
    assert_eq!(render(&parse(&t2).unwrap()), t2);
}

#[test]
fn zero_denominator() {
    let bad = K_Z2.replace("  1 1 0 1\n", "  1 1 0 1/0\n");
    let (line, col, _) = parse_err(&bad);
    assert_eq!(line, 18);
    assert_eq!(col, 11);
}

#[test]
fn structural_errors() {
    assert_eq!(parse_err(&K_Z2.replace("end\n", "")).0, 25);
    assert_eq!(parse_err(&K_Z2.replace("order 2", "order two")).0, 2);
    let (l, c, _) = parse_err(&K_Z2.replace("  0 1 1 1", "  0 5 1 1"));
    assert_eq!((l, c), (16, 5));
    assert_eq!(parse_err(&K_Z2.replace("side left", "side up")).0, 4);
    assert_eq!(parse_err(&K_Z2.replace("unit\n", "units\n")).0, 9);
    assert_eq!(parse_err(&K_Z2.replace("  1 1 1 1\n", "  1 1 1 1\n  1 1 1 1\n")).0, 22);
    assert!(matches!(
        parse(&K_Z2.replace("basis e0 e1", "basis e0")),
        Err(YdhError::DimensionMismatch { .. })
    ));
    assert!(matches!(
        parse(&K_Z2.replace("phi 0 perm 0 1", "phi 0 perm 0 1 2")),
        Err(YdhError::DimensionMismatch { .. })
    ));
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = format!("# K[Z/2]\n\n{}", K_Z2.replace("mult\n", "mult\n\n# table\n"));
    let a = parse(&text).unwrap();
    assert_eq!(render(&a), K_Z2);
}

#[test]
fn report_is_deterministic() {
    let a = nontrivial_dim4(false);
    let r1 = build_report(&a, &ReportOptions::default()).unwrap();
    let r2 = build_report(&a, &ReportOptions::default()).unwrap();
    assert_eq!(canonical_json(&r1), canonical_json(&r2));
    assert!(r1.passed, "{:?} {:?}", r1.axiom_failures, r1.theorem_failures);
    assert!(!r1.trivial);
    assert_eq!(r1.gcd_dim_group, 2);
    assert!(r1.analysis.is_some());
    let v: serde_json::Value = serde_json::from_str(&render_json(&r1, &Timing::default())).unwrap();
    assert_eq!(v["canonical"]["schema_version"], SCHEMA_VERSION);
}

#[test]
fn report_flags_axiom_failures() {
    let bad = K_Z2.replace("  1 1 1 1\n", "  1 1 1 2\n");
    let a = parse(&bad).unwrap();
    let r = build_report(&a, &ReportOptions::default()).unwrap();
    assert!(!r.passed);
    assert!(!r.axiom_failures.is_empty());
    assert!(r.analysis.is_none());
}
