use std::collections::BTreeSet;

use serde_json::Value;

use kstab_cli::report::{flatten_section, Report};
use kstab_cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERDICT};

fn args(line: &str) -> Vec<String> {
    shell_words::split(line).unwrap()
}

fn ok(line: &str) -> String {
    let (out, code) = run(&args(line));
    assert_eq!(code, EXIT_OK, "{line}: {out}");
    out
}

fn json(line: &str) -> Value {
    serde_json::from_str(&ok(&format!("{line} --format json"))).unwrap()
}

const COMMANDS: &[&str] = &[
    "catalog list",
    "catalog show P(1,1,2)",
    "catalog show dP7-line",
    "catalog show Bl1P2 --file",
    "intersect --surface dP7 L12 E1",
    "zariski --surface Bl2P2 3H-2E1-2E2",
    "zariski --surface Bl1P2 -K-5/2E1",
    "volfn --surface Bl2P2 --divisor-spec L12",
    "volfn --surface P2 --divisor-spec exceptional:pt",
    "beta --surface P2 --divisor-spec exceptional:pt",
    "beta --surface P(1,1,2) --boundary Q=1/4 --divisor-spec exceptional",
    "beta --surface Bl2P2 --divisor-spec '2H - E1'",
    "delta-flag --flag cubic-anticanonical",
    "delta-flag --flag dP7-line --point 'L12∩E1'",
    "semistable --surface P(1,1,2) --boundary Q=1/2",
    "semistable --surface Bl1P2",
    "discrep --cone 3",
    "classify --cone 1 --genus 1",
    "classify --chain 3 --through 1/2@1",
    "lct --poly 'y^2 - x^3'",
    "lct --poly '(x + y)^2' --allow-degenerate",
    "nvol --sing 1/5(1,2)",
    "nvol --monomial 2,3",
    "budget --degree 3",
    "local-global --surface P(1,1,2)",
    "local-global --volume 8 --sing A1 --sing A2",
    "markov --depth 2",
    "wps-vol 1 4 25",
    "git-weight --poly 'x^3 + y^3 + z^3' --weights 1,1,1,-3",
    "git-destab --poly 'x*y*z - w^3'",
    "git-destab --poly 'x*y*z - w^3' --matrix '1,1,0,0;0,1,0,0;0,0,1,0;0,0,0,1'",
    "git-destab --normal-forms",
    "reproduce-paper --section git",
];

#[test]
fn spec_examples() {
    let b = json("beta --surface P2 --divisor-spec exceptional:pt");
    assert_eq!(b["results"]["A"], "2");
    assert_eq!(b["results"]["S"], "2");
    assert_eq!(b["results"]["beta"], "0");

    let m = json("markov --depth 2");
    assert_eq!(m["results"]["triples"], serde_json::json!([[1, 1, 1], [1, 1, 2], [1, 2, 5]]));

    assert_eq!(json("lct --poly 'y^2 - x^3'")["results"]["lct"], "5/6");
}

#[test]
fn echoed_command_reproduces_the_report() {
    for line in COMMANDS {
        for format in ["json", "table"] {
            let first = ok(&format!("{line} --format {format}"));
            let echoed: Vec<String> = if format == "json" {
                let v: Value = serde_json::from_str(&first).unwrap();
                Report::from_json(&v).unwrap().command
            } else {
                let cmd = first.lines().next().unwrap().strip_prefix("command").unwrap().trim();
                args(cmd)
            };
            let (again, code) = run(&echoed);
            assert_eq!(code, EXIT_OK);
            assert_eq!(again, first, "{line} ({format})");
        }
    }
}

/// Every `key value` line of the table is the flattened JSON value.
#[test]
fn table_and_json_agree() {
    for line in COMMANDS {
        let v = json(line);
        let report = Report::from_json(&v).unwrap();
        let mut want: BTreeSet<(String, String)> = flatten_section("inputs", &report.inputs).into_iter().collect();
        want.extend(flatten_section("results", &report.results));
        if let Some(p) = report.verdict {
            want.insert(("verdict".into(), if p { "pass" } else { "fail" }.into()));
        }
        for (i, n) in report.notes.iter().enumerate() {
            want.insert((format!("notes[{i}]"), n.clone()));
        }
        let table = ok(&format!("{line} --format table"));
        let got: BTreeSet<(String, String)> = table
            .lines()
            .skip(1)
            .map(|l| {
                let (k, v) = l.split_once(' ').unwrap_or((l, ""));
                (k.to_string(), v.trim_start().to_string())
            })
            .collect();
        assert_eq!(got, want, "{line}");
        assert_eq!(table.lines().count(), want.len() + 1, "{line}");
    }
}

#[test]
fn output_is_deterministic() {
    for line in COMMANDS {
        assert_eq!(ok(line), ok(line), "{line}");
    }
}

#[test]
fn rationals_render_exactly() {
    let t = ok("volfn --surface Bl2P2 --divisor-spec L12");
    assert!(t.contains("25/3") && !t.contains("8.33"));
    let d = ok("volfn --surface Bl2P2 --divisor-spec L12 --decimal");
    assert!(d.contains("approx (non-authoritative)") && d.contains("8.333333"));
    let j = json("beta --surface Bl2P2 --divisor-spec L12 --decimal");
    assert_eq!(j["results"]["beta"], "-4/21");
    assert_eq!(j["approx_non_authoritative"]["results.beta"], "-0.190476");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&args("beta --surface Bl1P2 --divisor-spec E1")).1, EXIT_OK);
    assert_eq!(run(&args("--strict beta --surface Bl1P2 --divisor-spec E1")).1, EXIT_VERDICT);
    assert_eq!(run(&args("--strict beta --surface P2 --divisor-spec exceptional:pt")).1, EXIT_OK);
    assert_eq!(run(&args("--strict local-global --surface P(1,1,2)")).1, EXIT_VERDICT);
    assert_eq!(run(&args("--strict git-destab --poly 'x^3 + y^3 + z^3'")).1, EXIT_VERDICT);
    for bad in [
        "frobnicate",
        "beta --surface Nowhere --divisor-spec E1",
        "beta --surface P2 --divisor-spec Z9",
        "lct --poly 'y^2 - x^'",
        "git-weight --poly 'x^3' --weights 1,1,1",
        "reproduce-paper --section 4",
        "nvol",
    ] {
        let (out, code) = run(&args(bad));
        assert_eq!(code, EXIT_USAGE, "{bad}: {out}");
    }
    let (out, _) = run(&args("lct --poly 'y^2 - x^'"));
    assert!(out.contains("1:9"), "{out}");
    assert_eq!(run(&args("--help")).1, EXIT_OK);
}

#[test]
fn external_catalog_file() {
    let dir = std::env::temp_dir().join(format!("kstab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // P2 under another name, with no extractions.
    let model = r#"{"name": "Plane", "basis": ["L"], "gram": ["1"], "canonical": ["-3"],
                    "extra_generators": [{"label": "line", "class": ["1"]}]}"#;
    let path = dir.join("plane.json");
    std::fs::write(&path, model).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&format!("--catalog {p} beta --surface Plane --divisor-spec line"));
    assert_eq!((v["results"]["A"].as_str(), v["results"]["S"].as_str()), (Some("1"), Some("1")));
    let (out, code) = run(&args(&format!("--catalog {p}/missing.json catalog list")));
    assert_eq!(code, EXIT_USAGE, "{out}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fault_injection_fails_the_signature_row() {
    let v = json("reproduce-paper --section lattice --corrupt-gram dP7");
    assert_eq!(v["verdict"], "fail");
    let first = &v["results"]["rows"][0];
    assert_eq!(first["pass"], false);
    assert!(first["got"].as_str().unwrap().contains("signature"), "{first}");
    let (_, code) = run(&args("--strict reproduce-paper --section lattice --corrupt-gram dP7"));
    assert_eq!(code, EXIT_VERDICT);
}

#[test]
fn section_filter() {
    let v = json("reproduce-paper --section adjunction");
    let rows = v["results"]["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["section"] == "adjunction" && r["pass"] == true));
}
