use std::path::{Path, PathBuf};

use alcbc::cli::run_with_env;
use tempfile::TempDir;

const MODEL: &str = r#"{ "domain": ["m","d","a"],
  "concepts": { "P": ["m"], "C": ["d","a"] },
  "roles": { "teaches": [["m","d"]] },
  "individuals": { "Mary": "m", "DL": "d", "AI": "a" } }"#;

const KB2: &str = "P(Mary) /\\ C(DL) /\\ C(AI) /\\ ((teaches(Mary,DL) /\\ !teaches(Mary,AI)) \\/ (!teaches(Mary,DL) /\\ teaches(Mary,AI)))\n";
const KB3: &str = "P(Mary) /\\ C(DL) /\\ C(AI) /\\ teaches(Mary,AI) /\\ !teaches(Mary,DL)\n";
const M_LITS: &str = "!teaches(Mary,AI) /\\ C(AI) /\\ C(DL) /\\ P(Mary) /\\ teaches(Mary,DL)";

struct Fixtures {
    dir: TempDir,
}

impl Fixtures {
    fn new() -> Self {
        let f = Fixtures {
            dir: tempfile::tempdir().unwrap(),
        };
        f.write("m.json", MODEL);
        f.write("kb2.alc", KB2);
        f.write("kb3.alc", KB3);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }

    fn run(&self, args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("alcbc".to_string())
            .chain(args.iter().map(|a| {
                if Path::new(a).extension().is_some() && !a.starts_with('-') {
                    self.path(a)
                } else {
                    a.to_string()
                }
            }))
            .collect();
        run_with_env(argv, None)
    }
}

#[test]
fn fast_contraction_prints_example_formula() {
    let fx = Fixtures::new();
    let (code, out, err) = fx.run(&["contract", "--model", "m.json", "--method", "fast", "kb2.alc"]);
    assert_eq!(code, 0, "{err}");
    let expected = format!(
        "P(Mary) /\\ C(DL) /\\ C(AI) /\\ (teaches(Mary,DL) /\\ !teaches(Mary,AI) \\/ !teaches(Mary,DL) /\\ teaches(Mary,AI)) /\\ !({M_LITS})\n"
    );
    assert_eq!(out, expected);
}

#[test]
fn full_contraction_keeps_the_other_cell() {
    let fx = Fixtures::new();
    let (code, out, _) = fx.run(&["contract", "--model", "m.json", "--explain", "kb2.alc"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("!teaches(Mary,DL) /\\ C(AI) /\\ C(DL) /\\ P(Mary) /\\ teaches(Mary,AI)")
    );
    assert_eq!(lines.next(), Some(format!("removed cell: {M_LITS}").as_str()));
}

#[test]
fn expansion_prints_example_formula() {
    let fx = Fixtures::new();
    let (code, out, _) = fx.run(&["expand", "--model", "m.json", "kb3.alc"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("{} \\/ {M_LITS}\n", KB3.trim_end()));
}

#[test]
fn contracting_a_non_model_is_vacuous() {
    let fx = Fixtures::new();
    let (code, out, _) = fx.run(&["contract", "--model", "m.json", "--explain", "kb3.alc"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("{}\nremoved cell: none (vacuous)\n", KB3.trim_end()));
}

#[test]
fn sat_and_unsat() {
    let fx = Fixtures::new();
    fx.write("unsat.alc", "P(m) /\\ !P(m)\n");
    assert_eq!(fx.run(&["sat", "unsat.alc"]), (0, "unsat\n".into(), String::new()));
    assert_eq!(fx.run(&["sat", "kb2.alc"]), (0, "sat\n".into(), String::new()));
}

#[test]
fn check_evaluates_the_model() {
    let fx = Fixtures::new();
    assert_eq!(fx.run(&["check", "--model", "m.json", "kb2.alc"]).1, "true\n");
    assert_eq!(fx.run(&["check", "--model", "m.json", "kb3.alc"]).1, "false\n");
}

#[test]
fn dnf_depends_on_candidate_mode() {
    let fx = Fixtures::new();
    fx.write("app.alc", "[C == top] /\\ !(C(a) /\\ !r(a,b))\n");
    let (_, strict, _) = fx.run(&["dnf", "app.alc"]);
    assert_eq!(strict, "| C(a) /\\ [C == top] /\\ r(a,b)\n");
    let (_, paper, _) = fx.run(&["--candidate-mode", "paper", "dnf", "app.alc"]);
    assert_eq!(paper.lines().count(), 3);
    assert!(paper.contains("| !C(a) /\\ !r(a,b) /\\ [C == top]\n"));
}

#[test]
fn postulates_pass_for_the_constructions() {
    let fx = Fixtures::new();
    for args in [
        ["postulates", "--op", "contract", "--model", "m.json", "kb2.alc"],
        ["postulates", "--op", "expand", "--model", "m.json", "kb3.alc"],
    ] {
        let (code, out, _) = fx.run(&args);
        assert_eq!(code, 0, "{out}");
        assert!(!out.contains("FAIL"));
        assert!(out.contains("digest: sha256:"));
    }
}

#[test]
fn qm_outputs_json() {
    let fx = Fixtures::new();
    let (code, out, _) = fx.run(&["qm", "--model", "m.json", "kb3.alc"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["assignment"]["Mary"].is_u64());
    assert!(v["ftype"].as_array().unwrap().iter().any(|x| x == "teaches(Mary,DL)"));
    let (code, out, _) = fx.run(&["qm", "kb3.alc"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn prop_subcommand() {
    let fx = Fixtures::new();
    let (code, out, _) = fx.run(&["prop", "expand", "p /\\ q", "--model", "p=0,q=1", "--sig", "p,q"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q /\\ !p \\/ p /\\ q\n");
    let (code, _, err) = fx.run(&["prop", "contract", "p", "--model", "p=2", "--sig", "p"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn oracle_subcommands() {
    let fx = Fixtures::new();
    fx.write("f.alc", "P(m)\n");
    fx.write("g.alc", "P(m) /\\ (Q(m) \\/ !Q(m))\n");
    fx.write("h.alc", "Q(m)\n");
    let (code, out, _) = fx.run(&["oracle", "equiv", "f.alc", "g.alc"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("equivalent\n"));
    let (_, out, _) = fx.run(&["oracle", "equiv", "f.alc", "h.alc"]);
    assert!(out.starts_with("not equivalent\ncounterexample: {"));
    let (_, out, _) = fx.run(&["--domain-bound", "2", "oracle", "models", "f.alc"]);
    // one element: 1 model; two elements: P on m's element, free elsewhere
    assert!(out.starts_with("5 models with at most 2 elements\n"), "{out}");
}

#[test]
fn malformed_input_exits_2_with_a_position() {
    let fx = Fixtures::new();
    fx.write("bad.alc", "P(m) /\\ (\n");
    fx.write("bad.json", "{\n  \"domain\": [\"m\",]\n}");
    let (code, _, err) = fx.run(&["sat", "bad.alc"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 1"), "{err}");
    let (code, _, err) = fx.run(&["check", "--model", "bad.json", "kb2.alc"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column"), "{err}");
    let (code, _, _) = fx.run(&["contract", "--model", "m.json", "--method", "slow", "kb2.alc"]);
    assert_eq!(code, 2);
    let (code, _, _) = fx.run(&["sat", "missing.alc"]);
    assert_eq!(code, 2);
}

#[test]
fn resource_limit_exits_3() {
    let fx = Fixtures::new();
    let (code, _, err) = fx.run(&["--max-atoms", "2", "sat", "kb2.alc"]);
    assert_eq!(code, 3, "{err}");
    let argv = ["alcbc", "sat", &fx.path("kb2.alc")];
    assert_eq!(run_with_env(argv, Some("2")).0, 3);
    assert_eq!(run_with_env(argv, Some("two")).0, 2);
    let argv = ["alcbc", "--max-atoms", "12", "sat", &fx.path("kb2.alc")];
    assert_eq!(run_with_env(argv, Some("2")).0, 0);
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = run_with_env(["alcbc", "--help"], None);
    assert_eq!(code, 0);
    assert!(out.contains("contract"));
    assert_eq!(run_with_env(["alcbc", "--version"], None).0, 0);
    assert_eq!(run_with_env(["alcbc"], None).0, 2);
}

#[test]
fn output_is_stable_across_runs() {
    let fx = Fixtures::new();
    let a = fx.run(&["postulates", "--op", "contract", "--model", "m.json", "kb2.alc"]);
    let b = fx.run(&["postulates", "--op", "contract", "--model", "m.json", "kb2.alc"]);
    assert_eq!(a, b);
}
