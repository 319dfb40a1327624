use std::path::{Path, PathBuf};
use std::process::Command;

use cesaro::corpus;
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn cesaro(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cesaro")).args(args).current_dir(root()).output().unwrap();
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn split(args: &str) -> Vec<&str> {
    args.split_whitespace().collect()
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("docs/run_report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(report: &Value) {
    let v = validator();
    let errors: Vec<String> = v.iter_errors(report).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}\n{report:#}");
    let has_value = report["verdict"]["value"].is_number()
        || report["system"]["output_average"].is_number()
        || report["product"]["value"].is_number();
    let has_oracle = report["oracle"]["final_estimate"].is_number();
    assert_eq!(report.get("agreement").is_some(), has_value && has_oracle, "{report:#}");
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cesaro-cli-{}-{name}", std::process::id()))
}

/// (golden name, arguments, exit code)
const GOLDEN: &[(&str, &str, i32)] = &[
    ("average_unit_step", "average --z --num 1,0 --den -1,1", 0),
    ("average_cosine_oracle", "average --z --spec specs/cosine_w0_1p047.json --oracle 100000", 0),
    ("average_growth", "average --z --num 1,0 --den -2,1", 2),
    ("average_ramp", "average --z --spec specs/ramp.json", 3),
    ("average_offset_cosine", "average --s --spec specs/offset_cos_3t.json --oracle", 0),
    ("system_first_order", "system --z --num 1 --den -0.5,1 --xavg 1", 0),
    ("system_continuous", "system --s --num 1 --den 1,1 --xavg 0", 0),
    ("system_unstable", "system --z --num 1 --den -2,1 --xavg 1", 4),
    ("system_filtered", "system --z --num 0,1 --den -0.5,1 --xspec specs/alternating.json --oracle", 0),
    ("product_alternating_squared", "product --f-num 0,1 --f-den 1,1 --g-num 0,1 --g-den 1,1", 0),
    ("product_step_squared", "product --f-num 0,1 --f-den -1,1 --g-num 0,1 --g-den -1,1", 0),
    ("product_alternating_step", "product --f-num 0,1 --f-den 1,1 --g-num 0,1 --g-den -1,1", 0),
];

fn masked(mut report: Value) -> Value {
    report["timing_ms"] = Value::Object(Default::default());
    report
}

fn close(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0)
        }
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(a, b)| close(a, b)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| close(v, w)))
        }
        _ => a == b,
    }
}

/// Set `CESARO_BLESS=1` to rewrite the golden files from the current output.
#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("CESARO_BLESS").is_some();
    for &(name, args, code) in GOLDEN {
        let run = cesaro(&split(args));
        assert_eq!(run.code, code, "{name}: {}", run.stderr);
        let report = run.json();
        assert_valid(&report);
        let path = root().join("crates/cli/tests/golden").join(format!("{name}.json"));
        let got = masked(report);
        if bless {
            std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(close(&got, &want), "{name}:\n{got:#}\nexpected\n{want:#}");
    }
}

#[test]
fn unit_step_from_coefficients() {
    let r = cesaro(&split("average --z --num 0,1 --den -1,1")).json();
    assert_eq!(r["verdict"]["applicability"], "Applicable");
    assert_eq!(r["verdict"]["value"], 1.0);
    assert!(r.get("oracle").is_none() && r.get("agreement").is_none());
}

#[test]
fn cosine_agrees_with_its_oracle() {
    let r = cesaro(&split("average --z --spec specs/cosine_w0_1p047.json --oracle 100000")).json();
    assert!(r["verdict"]["value"].as_f64().unwrap().abs() < 1e-9);
    assert!(r["agreement"]["difference"].as_f64().unwrap() < 1e-3);
    assert_eq!(r["agreement"]["within_tolerance"], true);
    assert_eq!(r["oracle"]["horizon"], 100000);
}

#[test]
fn growth_and_ramp_never_exit_zero() {
    let growth = cesaro(&split("average --z --num 1,0 --den -2,1 --oracle 5000"));
    assert_eq!(growth.code, 2);
    let r = growth.json();
    assert!(r["verdict"]["value"].is_null());
    assert_eq!(r["oracle"]["converged"], false);
    assert!(r.get("agreement").is_none());
    assert_valid(&r);
    assert_eq!(cesaro(&split("average --z --spec specs/ramp.json --oracle 5000")).code, 3);
    assert_eq!(cesaro(&split("average --s --num 1 --den 0,0,1")).code, 3);
}

#[test]
fn continuous_oracle_needs_a_spec() {
    let run = cesaro(&split("average --s --num 1 --den 0,1 --oracle"));
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("--spec"));
}

#[test]
fn under_resolved_step_is_rejected() {
    let run = cesaro(&split("average --s --spec specs/offset_cos_3t.json --oracle --dt 0.5"));
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("resolve"), "{}", run.stderr);
}

#[test]
fn first_order_system_doubles_its_input() {
    let r = cesaro(&split("system --z --num 1 --den -0.5,1 --xavg 1")).json();
    assert!((r["system"]["output_average"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(r["system"]["stability"], "Stable");
    // same system written with a delay-free numerator: z / (z - 0.5)
    let r = cesaro(&split("system --z --num 0,1 --den -0.5,1 --xavg 1")).json();
    assert!((r["system"]["output_average"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn unstable_system_lists_its_pole() {
    let run = cesaro(&split("system --z --num 1 --den -2,1 --xavg 1"));
    assert_eq!(run.code, 4);
    assert!(run.stderr.contains("2+0i"), "{}", run.stderr);
    let r = run.json();
    assert_eq!(r["system"]["poles"][0]["re"], 2.0);
    assert!(r["system"]["output_average"].is_null());
    // z^{-1}-style denominator 1 - 0.5 z puts the pole at 2
    assert_eq!(cesaro(&split("system --z --num 1 --den 1,-0.5 --xavg 1")).code, 4);
}

#[test]
fn marginal_and_integrating_systems_exit_four() {
    assert_eq!(cesaro(&split("system --z --num 1 --den -1,1 --xavg 1")).code, 4);
    assert_eq!(cesaro(&split("system --z --num 1 --den 1,0,1 --xavg 1")).code, 4);
    assert_eq!(cesaro(&split("system --s --num 1 --den 0,1 --xavg 1")).code, 4);
}

#[test]
fn system_input_spec_is_averaged_first() {
    let r = cesaro(&split("system --z --num 0.5 --den -0.5,1 --xspec specs/unit_step.json --oracle 20000")).json();
    assert_eq!(r["verdict"]["value"], 1.0);
    assert!((r["system"]["output_average"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(r["agreement"]["within_tolerance"], true);
    let growth = cesaro(&split("system --z --num 1 --den 0,1 --xspec specs/growth_2pow.json"));
    assert_eq!(growth.code, 2);
}

#[test]
fn system_needs_exactly_one_input() {
    assert_eq!(cesaro(&split("system --z --num 1 --den 0,1")).code, 1);
    let both = cesaro(&split("system --z --num 1 --den 0,1 --xavg 1 --xspec specs/unit_step.json"));
    assert_ne!(both.code, 0);
}

fn csv_rows(path: &Path) -> Vec<(f64, f64)> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,running_average"));
    lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

#[test]
fn alternating_trace_ends_near_zero() {
    let out = temp_path("alternating.csv");
    let run = cesaro(&["trace", "--spec", "specs/alternating.json", "--horizon", "1000", "--out", out.to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("converged=true"), "{}", run.stdout);
    let rows = csv_rows(&out);
    assert_eq!(rows.last().unwrap().0, 999.0);
    assert!(rows.last().unwrap().1.abs() < 1e-3);
    std::fs::remove_file(out).ok();
}

#[test]
fn constant_trace_is_flat() {
    let out = temp_path("constant.csv");
    let run = cesaro(&["trace", "--spec", "specs/constant.json", "--horizon", "3333", "--out", out.to_str().unwrap()]);
    assert_eq!(run.code, 0);
    let rows = csv_rows(&out);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|&(_, v)| (v - 2.5).abs() <= 4.0 * f64::EPSILON * 2.5));
    std::fs::remove_file(out).ok();
}

#[test]
fn geometric_trace_decays() {
    let out = temp_path("geometric.csv");
    let run = cesaro(&["trace", "--spec", "specs/geometric_0p9.json", "--horizon", "10000", "--out", out.to_str().unwrap()]);
    assert_eq!(run.code, 0);
    assert!(csv_rows(&out).last().unwrap().1.abs() < 1e-2);
    std::fs::remove_file(out).ok();
}

#[test]
fn continuous_trace_uses_time() {
    let out = temp_path("cos.csv");
    let run = cesaro(&["trace", "--spec", "specs/cos_t.json", "--t-max", "200", "--dt", "0.01", "--out", out.to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let rows = csv_rows(&out);
    assert!((rows.last().unwrap().0 - 200.0).abs() < 1e-9);
    assert!(rows.last().unwrap().1.abs() < 1e-2);
    std::fs::remove_file(out).ok();
}

#[test]
fn trace_rejects_short_horizons_and_bad_paths() {
    let out = temp_path("short.csv");
    let short = cesaro(&["trace", "--spec", "specs/alternating.json", "--horizon", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(short.code, 1);
    let unwritable = cesaro(&split("trace --spec specs/alternating.json --out /nonexistent/dir/x.csv"));
    assert_eq!(unwritable.code, 1);
    assert!(unwritable.stderr.contains("cannot write"));
}

#[test]
fn product_examples() {
    for (args, want) in [
        ("product --f-num 0,1 --f-den 1,1 --g-num 0,1 --g-den 1,1", 1.0),
        ("product --f-num 0,1 --f-den -1,1 --g-num 0,1 --g-den -1,1", 1.0),
        ("product --f-num 0,1 --f-den 1,1 --g-num 0,1 --g-den -1,1", 0.0),
        ("product --f-spec specs/geometric_0p9.json --g-spec specs/unit_step.json", 0.0),
    ] {
        let r = cesaro(&split(args)).json();
        let value = r["product"]["value"].as_f64().unwrap();
        let oracle = r["oracle"]["final_estimate"].as_f64().unwrap();
        assert!((value - want).abs() <= 1e-3, "{args}: {value}");
        assert!((oracle - want).abs() <= 1e-3, "{args}: {oracle}");
        assert_eq!(r["agreement"]["within_tolerance"], true);
    }
}

#[test]
fn product_contour_errors_exit_five() {
    let run = cesaro(&split("product --f-num 0,1 --f-den 1,1 --g-num 0,1 --g-den -1,1 --radius 5"));
    assert_eq!(run.code, 5);
    assert!(run.stderr.contains("contour"));
    let ramp = cesaro(&split("product --f-num 0,1 --f-den 1,-2,1 --g-num 0,1 --g-den 1,-2,1"));
    assert_eq!(ramp.code, 5, "{}", ramp.stderr);
}

#[test]
fn corpus_passes() {
    let run = cesaro(&["corpus"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let rows = run.stdout.lines().filter(|l| l.ends_with("PASS")).count();
    assert_eq!(rows, corpus::cases().len());
    assert!(run.stdout.contains(&format!("{0} of {0} cases passed", rows)));
}

#[test]
fn parse_errors_carry_positions() {
    let bad = temp_path("bad.json");
    std::fs::write(&bad, "{\n  \"domain\": \"discrete\",\n  \"terms\": [ 1 ]\n}\n").unwrap();
    let run = cesaro(&["average", "--z", "--spec", bad.to_str().unwrap()]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("line 3 column"), "{}", run.stderr);
    std::fs::remove_file(bad).ok();
}

#[test]
fn domain_mismatch_is_a_usage_error() {
    let run = cesaro(&split("average --s --spec specs/alternating.json"));
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("discrete"), "{}", run.stderr);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        "average --num 0,1 --den -1,1",
        "average --z --s --num 0,1 --den -1,1",
        "average --z --num 0,1",
        "average --z --num a,b --den 1",
        "average --z --num 1 --den 0",
        "average --z --num 0,1 --den -1,1 --spec specs/unit_step.json",
        "average --z --spec specs/missing.json",
    ] {
        let run = cesaro(&split(args));
        assert_eq!(run.code, 1, "{args}: {}", run.stderr);
        assert!(run.stdout.is_empty(), "{args}");
    }
}

#[test]
fn config_file_overrides_tolerances() {
    let cfg = temp_path("tol.toml");
    // with a huge boundary band the pole at 0.9 counts as on the unit circle
    std::fs::write(&cfg, "unit_circle = 0.2\n").unwrap();
    let loose = cesaro(&["--config", cfg.to_str().unwrap(), "system", "--z", "--num", "1", "--den", "-0.9,1", "--xavg", "1"]);
    assert_eq!(loose.code, 4, "{}", loose.stderr);
    assert_eq!(cesaro(&split("system --z --num 1 --den -0.9,1 --xavg 1")).code, 0);

    std::fs::write(&cfg, "unit_circel = 0.2\n").unwrap();
    let typo = cesaro(&["--config", cfg.to_str().unwrap(), "average", "--z", "--num", "1", "--den", "1"]);
    assert_eq!(typo.code, 1);
    assert!(typo.stderr.contains("unit_circel"), "{}", typo.stderr);
    std::fs::remove_file(cfg).ok();
}

#[test]
fn spec_and_coefficient_forms_agree() {
    let list = |v: &Value| v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap().to_string()).collect::<Vec<_>>().join(",");
    for (i, case) in corpus::cases().iter().enumerate() {
        let flag = if case.transform.domain() == cesaro::Domain::Z { "--z" } else { "--s" };
        let path = temp_path(&format!("case{i}.json"));
        std::fs::write(&path, case.spec.to_json()).unwrap();
        let from_spec = cesaro(&["average", flag, "--spec", path.to_str().unwrap()]);
        let r = from_spec.json();
        let (num, den) = (list(&r["input_echo"]["numerator"]), list(&r["input_echo"]["denominator"]));
        let from_coeffs = cesaro(&["average", flag, "--num", &num, "--den", &den]);
        assert_eq!(from_spec.code, from_coeffs.code, "{}", case.name);
        let (a, b) = (&r["verdict"], &from_coeffs.json()["verdict"]);
        assert_eq!(a["applicability"], b["applicability"], "{}", case.name);
        match (a["value"].as_f64(), b["value"].as_f64()) {
            (Some(x), Some(y)) => assert!((x - y).abs() <= 1e-9, "{}: {x} vs {y}", case.name),
            (None, None) => {}
            other => panic!("{}: {other:?}", case.name),
        }
        std::fs::remove_file(path).ok();
    }
}

#[test]
fn shipped_specs_parse() {
    for entry in std::fs::read_dir(root().join("specs")).unwrap() {
        let path = entry.unwrap().path();
        let spec = cesaro::catalog::SignalSpec::from_json(&std::fs::read_to_string(&path).unwrap());
        assert!(spec.is_ok(), "{}: {:?}", path.display(), spec.err());
    }
}
