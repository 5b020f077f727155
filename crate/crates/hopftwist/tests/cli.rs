use std::path::PathBuf;
use std::process::{Command, Output};

fn hopftwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopftwist")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopftwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const JORDAN_ABELIAN: &str = include_str!("../catalog/jordan4-abelian.hopf");

#[test]
fn catalog_lists_the_six_examples() {
    let o = hopftwist(&["catalog"]);
    assert!(o.status.success());
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert_eq!(ids, ["heisenberg3", "u3", "jordan4-abelian", "jordan4-minimal", "u4-ex5", "u4-ex6"]);
}

#[test]
fn validate_passes_on_u4_ex5() {
    let o = hopftwist(&["validate", "--example", "u4-ex5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn unknown_example_is_a_usage_error() {
    let o = hopftwist(&["report", "--example", "u5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown example u5"));
}

#[test]
fn non_antisymmetric_rmatrix_fails_validation() {
    let f = scratch("badr.hopf", "[group]\nname = bad\ngenerators = X, V\n\n[rmatrix]\nX V 1\nV X 1\n\n[twist]\nsource = exponential\n");
    let o = hopftwist(&["validate", "--group", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL antisymmetric"), "{}", stdout(&o));
}

#[test]
fn corrupted_coproduct_fails_at_coassociativity() {
    let broken = JORDAN_ABELIAN.replace("W = V (x) Y + 1/2*X (x) Y^2", "W = V (x) Y");
    assert_ne!(broken, JORDAN_ABELIAN);
    let f = scratch("badq.hopf", &broken);
    let o = hopftwist(&["validate", "--group", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let first = out.lines().find(|l| l.starts_with("FAIL")).unwrap();
    assert!(first.starts_with("FAIL coassociativity on W"), "{first}");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let f = scratch("badp.hopf", "[group]\nname = p\ngenerators = X\n[coproduct]\nX = Y (x) 1\n");
    let o = hopftwist(&["validate", "--group", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn present_lists_relations() {
    let o = hopftwist(&["present", "--example", "heisenberg3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("## relations\ncommutative\n"));
    let o = hopftwist(&["present", "--example", "jordan4-minimal"]);
    let out = stdout(&o);
    assert!(out.contains("[W,X] = Y\n[W,V] = 1/2*Y^2 + X\n"), "{out}");
}

#[test]
fn strata_accepts_inline_points() {
    let o = hopftwist(&["strata", "--example", "u4-ex5", "--subgroup", "T", "--point", "F23=a"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("ideal: <F23 - a, F24*F13 - a*F14>"), "{out}");
    assert!(out.contains("structure: Weyl algebra A_2"), "{out}");
}

#[test]
fn gamma_and_c0_agree_on_u4_ex6() {
    let o = hopftwist(&["gamma", "--example", "u4-ex6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("commutator ideal: <F23, F34, F24 - F12>"), "{out}");
    assert!(out.contains("PASS C0 locus equals Gamma locus"), "{out}");
    let o = hopftwist(&["c0", "--example", "u4-ex6", "--max-degree", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("C0 ideal at bound 3: <F23, F34, F24 - F12>"), "{}", stdout(&o));
}

#[test]
fn rform_check_passes() {
    let o = hopftwist(&["rform-check", "--example", "jordan4-abelian"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn gb_and_eliminate() {
    let o = hopftwist(&["gb", "--vars", "x,y,z", "x - y^2", "y*z - 1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "y^2 - x\nz*x - y\nz*y - 1\n");
    let o = hopftwist(&["eliminate", "--vars", "x,y,s", "--drop", "s", "x - s^2", "y - s^3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "x^3 - y^2\n");
    let o = hopftwist(&["gb", "--vars", "x", "x +"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_match_and_are_deterministic() {
    for id in ["heisenberg3", "jordan4-abelian", "u4-ex5"] {
        let a = hopftwist(&["report", "--example", id]);
        let b = hopftwist(&["report", "--example", id]);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert!(stdout(&a).ends_with("matches the expected report\n"));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn exported_examples_reproduce_their_reports() {
    for id in ["u3", "u4-ex6"] {
        let exported = stdout(&hopftwist(&["export", "--example", id]));
        let f = scratch(&format!("{id}.hopf"), &exported);
        let from_file = hopftwist(&["report", "--group", f.to_str().unwrap()]);
        assert_eq!(from_file.status.code(), Some(0));
        let built_in = stdout(&hopftwist(&["report", "--example", id]));
        let built_in = built_in.strip_suffix("\nmatches the expected report\n").unwrap();
        assert_eq!(stdout(&from_file), built_in);
        let again = stdout(&hopftwist(&["export", "--group", f.to_str().unwrap()]));
        assert_eq!(again, exported);
    }
}

#[test]
fn scaling_r_scales_the_relations() {
    let src = include_str!("../catalog/u4-ex5.hopf");
    let f = scratch("u4-ex5-scaled.hopf", &src.replace("F12 F34 1", "F12 F34 2"));
    let o = hopftwist(&["present", "--group", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[F24,F12] = -2*F23"), "{}", stdout(&o));
}
