use std::path::Path;
use std::process::{Command, Output};

use icpi::{CheckOutput, InfoReport, VerifyOutput};
use icpi_core::theorems::CampaignReport;

fn icpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icpi"))
        .args(args)
        .env_remove("ICPI_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn evaluations(o: &Output) -> usize {
    let err = stderr(o);
    let line = err
        .lines()
        .find(|l| l.starts_with("engine evaluations:"))
        .expect("evaluation count on stderr");
    line["engine evaluations:".len()..]
        .split(',')
        .next()
        .unwrap()
        .trim()
        .parse()
        .unwrap()
}

/// Parses structured output into `T` and checks that re-serializing it gives
/// back exactly the same bytes.
fn round_trip<T>(text: &str) -> T
where
    T: serde::de::DeserializeOwned + serde::Serialize,
{
    let v: T = serde_json::from_str(text).expect("typed parse");
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, text);
    v
}

#[test]
fn info_on_sym4() {
    let o = icpi(&["info", "--group", "Sym(4)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("order 24"), "{out}");
    assert!(
        out.contains("chief pairs 3: (1,V4) (V4,A4) (A4,S4)"),
        "{out}"
    );
    assert!(out.contains("Z_U = 1"), "{out}");
    assert!(out.contains("F = V4"), "{out}");
}

#[test]
fn diagonal_subgroup_separates_pi_from_ic_pi() {
    let h = "(1,2,3,4,5)(6,7,8,9,10)";
    let ic = icpi(&[
        "check",
        "--group",
        "Alt(5)xCyc(5)",
        "--property",
        "ic-pi",
        "--subgroup",
        h,
    ]);
    assert!(ic.status.success());
    let text = stdout(&ic);
    assert!(text.contains("verdict holds"), "{text}");
    assert!(text.contains("D-order 1"), "{text}");

    let pi = icpi(&[
        "check",
        "--group",
        "Alt(5)xCyc(5)",
        "--property",
        "pi",
        "--subgroup",
        h,
    ]);
    assert!(pi.status.success());
    let text = stdout(&pi);
    assert!(text.contains("verdict fails"), "{text}");
    assert!(text.contains("witness chief pair"), "{text}");
}

#[test]
fn campaign_up_to_order_24_is_clean() {
    let o = icpi(&["campaign", "--corpus-max-order", "24", "--theorems", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("counterexamples 0"), "{out}");
    assert!(out.contains("counterexamples: none"), "{out}");
}

#[test]
fn structured_outputs_round_trip() {
    let o = icpi(&["--format", "structured", "info", "--group", "Sym(4)xCyc(2)"]);
    assert!(o.status.success());
    let info: InfoReport = round_trip(&stdout(&o));
    assert_eq!(info.order, 48);
    assert_eq!(info.primes, vec![2, 3]);

    let o = icpi(&[
        "--format",
        "structured",
        "check",
        "--group",
        "Alt(5)xCyc(5)",
        "--property",
        "ic-pi",
        "--subgroup",
        "(1,2,3,4,5)(6,7,8,9,10)",
    ]);
    let check: CheckOutput = round_trip(&stdout(&o));
    assert!(check.report.holds);

    let o = icpi(&[
        "--format",
        "structured",
        "verify",
        "--group",
        "Sym(4)",
        "--theorem",
        "thm_C_minimal",
        "--param",
        "N=(1,2)(3,4);(1,3)(2,4)",
        "--p",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let verify: VerifyOutput = round_trip(&stdout(&o));
    assert_eq!(verify.report.instance.group, "Sym(4)");

    let o = icpi(&[
        "--format",
        "structured",
        "campaign",
        "--corpus-max-order",
        "8",
        "--theorems",
        "thm_A,lem_over",
    ]);
    assert!(o.status.success());
    let report: CampaignReport = round_trip(&stdout(&o));
    assert!(report.is_clean());
    assert_eq!(report.per_theorem.len(), 2);
}

#[test]
fn warm_cache_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |out: &Path| {
        icpi(&[
            "--format",
            "structured",
            "--cache-dir",
            cache.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
            "campaign",
            "--corpus-max-order",
            "12",
        ])
    };
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let cold = run(&a);
    let warm = run(&b);
    assert!(cold.status.success() && warm.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(evaluations(&warm) < evaluations(&cold));
    assert!(stderr(&warm).contains("cache hits: 1"));

    let i1 = icpi(&[
        "--cache-dir",
        cache.to_str().unwrap(),
        "info",
        "--group",
        "Alt(4)",
    ]);
    let i2 = icpi(&[
        "--cache-dir",
        cache.to_str().unwrap(),
        "info",
        "--group",
        "Alt(4)",
    ]);
    assert_eq!(stdout(&i1), stdout(&i2));
    assert_eq!(evaluations(&i2), 0);
}

#[test]
fn usage_errors_exit_2() {
    let o = icpi(&[
        "check",
        "--group",
        "Sym(4)",
        "--property",
        "bogus",
        "--subgroup",
        "(1,2)",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bogus"));

    let o = icpi(&[
        "verify",
        "--group",
        "Sym(4)",
        "--theorem",
        "thm_Z",
        "--p",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let o = icpi(&["info", "--group", "Nope(3)"]);
    assert_eq!(o.status.code(), Some(2));

    let o = icpi(&[
        "verify",
        "--group",
        "Sym(4)",
        "--theorem",
        "thm_C_minimal",
        "--p",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2), "missing N must be rejected");
}

#[test]
fn capacity_diagnostics_name_the_bound() {
    let o = icpi(&[
        "--subgroup-bound",
        "5",
        "verify",
        "--group",
        "Sym(4)",
        "--theorem",
        "lem_necessity",
        "--p",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--subgroup-bound"), "{}", stderr(&o));

    let o = icpi(&[
        "--enumeration-bound",
        "5",
        "check",
        "--group",
        "Sym(4)",
        "--property",
        "pi",
        "--subgroup",
        "(1,2)",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--enumeration-bound"), "{}", stderr(&o));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("info.txt");
    let o = icpi(&[
        "--output",
        path.to_str().unwrap(),
        "info",
        "--group",
        "Dih(8)",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("order 8"), "{text}");
}

#[test]
fn group_file_entries_are_addressable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("groups.json");
    std::fs::write(
        &path,
        r#"[{"name": "Q8", "degree": 8, "generators": ["(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"]},
            {"name": "C6", "degree": 6, "generators": ["(1,2,3,4,5,6)"]}]"#,
    )
    .unwrap();
    let file = path.to_str().unwrap();
    let o = icpi(&["info", "--group-file", file, "--group", "Q8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("group Q8"));
    assert!(stdout(&o).contains("Z_U = Q8"), "{}", stdout(&o));

    let o = icpi(&["campaign", "--group-file", file, "--theorems", "lem_over"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("campaign: 2 groups"), "{}", stdout(&o));
}

#[test]
fn corpus_list_respects_order() {
    let o = icpi(&["corpus-list", "--corpus-max-order", "6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("Sym(3)"), "{out}");
    assert!(!out.contains("Sym(4)"), "{out}");
}
