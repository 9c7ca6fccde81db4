use std::process::{Command, Output};

fn theta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta"))
        .args(args)
        .env_remove("THETA_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn hom_counts() {
    for (s, t, n) in [("[0]", "[1]([0])", 2), ("[1]([0])", "[0]", 1), ("[0]", "[0]", 1)] {
        let o = theta(&["hom", s, t]);
        assert!(o.status.success());
        let out = stdout(&o);
        assert!(out.starts_with(&format!("|Hom({s}, {t})| = {n}\n")), "{out}");
        assert_eq!(out.lines().count(), n + 1);
    }
}

#[test]
fn hom_parse_error() {
    let o = theta(&["hom", "[2]([0])", "[0]"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = theta(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn oversized_window_is_refused_with_estimate() {
    let o = theta(&["verify", "covers", "--max-height", "3", "--max-width", "3"]);
    assert_eq!(o.status.code(), Some(64));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("621436 objects"), "{err}");
    let o = theta(&["verify", "q-posets", "--max-terminus", "9"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn q_posets_pass_as_json() {
    let o = theta(&["verify", "q-posets", "--max-terminus", "5", "--json", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one report per line"))
        .collect();
    assert_eq!(lines.len(), 3);
    for r in &lines {
        assert_eq!(r["status"], "pass");
        assert_eq!(r["max_terminus"], 5);
        for key in ["check_id", "certifies", "window", "summary", "wall_time_ms"] {
            assert!(r.get(key).is_some(), "{key} missing from {r}");
        }
    }
}

#[test]
fn counterexample_passes() {
    let o = theta(&["verify", "counterexample", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let search = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .find(|r| r["check_id"] == "counterexample.search")
        .expect("search reported");
    assert_eq!(search["status"], "pass");
}

#[test]
fn small_window_counterexample_is_inconclusive() {
    let o = theta(&["verify", "counterexample", "--max-height", "1", "--max-width", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("INCONCLUSIVE"));
}

#[test]
fn window_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_theta"))
        .args(["verify", "shuffles", "--json"])
        .env("THETA_WINDOW", "1,2")
        .output()
        .unwrap();
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(r["window"]["max_height"], 1);
    assert_eq!(r["window"]["max_width"], 2);

    let o = Command::new(env!("CARGO_BIN_EXE_theta"))
        .args(["verify", "shuffles"])
        .env("THETA_WINDOW", "two")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(theta(&["verify", "gamma", "--max-height", "x"]).status.code(), Some(64));
    assert_eq!(theta(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(theta(&["--help"]).status.code(), Some(0));
}
