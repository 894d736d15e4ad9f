use std::process::{Command, Output};

use serde_json::Value;

fn muext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muext")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn json_lines(args: &[&str]) -> Vec<Value> {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    stdout(&muext(&a)).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

#[test]
fn ext_golden_values() {
    let o = muext(&["ext", "--p", "2", "--K", "1", "--S", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dim = 0"));

    let o = muext(&["ext", "--p", "2", "--K", "1", "--S", "7"]);
    let out = stdout(&o);
    assert!(out.contains("dim = 1"), "{out}");
    assert!(out.contains("generator = -7"), "{out}");
    assert!(out.contains("generically isomorphic to the extension T(-7)"));
}

#[test]
fn ext_two_primes_with_audit() {
    let recs = json_lines(&["ext", "--p", "2", "--K", "1", "--S", "3", "--S", "7", "--audit"]);
    let r = &recs[0];
    assert_eq!(r["schema"], "muext/1");
    assert_eq!(r["audit"]["paths_agree"], true);
    assert_eq!(r["audit"]["soundness_verified"], true);
    let dim = r["dimension"].as_u64().unwrap();
    assert_eq!(dim as usize, r["generators"].as_array().unwrap().len());
    // of the odd units +-1, +-3, +-7, +-21 only 1 and -7 are 1 mod 8
    assert_eq!(dim, 1);
}

#[test]
fn local_membership() {
    let out = stdout(&muext(&["local", "--p", "3", "--test", "10"]));
    assert!(out.contains("10 is a cube in Q_3: true"), "{out}");
    assert!(out.contains("same subgroup as {3, 4}: true"));
    let out = stdout(&muext(&["local", "--p", "2", "--test", "1", "--test", "-7", "--test", "15"]));
    assert!(out.contains("1 is a square in Q_2: true"));
    assert!(out.contains("-7 is a square in Q_2: true"));
    assert!(out.contains("15 is a square in Q_2: false"));
    assert!(out.contains("same subgroup as {2, 3, 5}: true"));
}

#[test]
fn hopf_reports_axioms() {
    let o = muext(&["hopf", "--variant", "identity-antipode"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all axioms verified"));

    let o = muext(&["hopf"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("left antipode"));

    let o = muext(&["hopf", "--variant", "mutated"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tscheme_table() {
    let o = muext(&["tscheme", "--p", "2", "--r", "-7", "--over", "F9"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("4 points"));
    assert_eq!(out.lines().filter(|l| l.starts_with("  [")).count(), 4);
    let recs = json_lines(&["tscheme", "--p", "2", "--r", "-7", "--over", "F9"]);
    assert_eq!(recs[0]["report"]["order"], 4);
    assert_eq!(recs[0]["extension"], true);

    let o = muext(&["tscheme", "--p", "3", "--r", "2", "--over", "F7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cohomology_sweep() {
    let o = muext(&["cohomology", "--sweep"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("twist isomorphism verified on "), "{out}");
    assert_eq!(muext(&["cohomology"]).status.code(), Some(4));
}

#[test]
fn exit_codes() {
    assert_eq!(muext(&["ext", "--p", "2", "--S", "2"]).status.code(), Some(2));
    let o = muext(&["ext", "--p", "2", "--K", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("splits"));
    assert_eq!(muext(&["ext", "--p", "2", "--S", "3", "--precision", "2"]).status.code(), Some(4));
    assert_eq!(muext(&["ext", "--p", "4"]).status.code(), Some(4));
    assert_eq!(muext(&["ext"]).status.code(), Some(4));
    assert_eq!(muext(&["local", "--p", "2", "--test", "x"]).status.code(), Some(4));
    assert_eq!(muext(&["--help"]).status.code(), Some(0));
    assert_eq!(muext(&["--version"]).status.code(), Some(0));
}

#[test]
fn precision_override() {
    let recs = json_lines(&["ext", "--p", "2", "--S", "3", "--precision", "30", "--audit"]);
    assert_eq!(recs[0]["audit"]["local_field"]["precision"], 30);
    assert_eq!(recs[0]["dimension"], 0);
}

#[test]
fn byte_identical_runs() {
    for args in [
        vec!["ext", "--p", "3", "--K", "4", "--S", "2", "--audit", "--format", "json"],
        vec!["local", "--p", "5", "--test", "6", "--format", "json"],
        vec!["cohomology", "--sweep", "--format", "json"],
    ] {
        assert_eq!(muext(&args).stdout, muext(&args).stdout);
    }
}

#[test]
fn json_records_carry_schema() {
    for args in [vec!["hopf"], vec!["local", "--p", "2"], vec!["cohomology", "--sweep"]] {
        for r in json_lines(&args) {
            assert_eq!(r["schema"], "muext/1");
            assert!(r["command"].is_string());
        }
    }
}
