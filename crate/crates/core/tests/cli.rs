use std::path::PathBuf;
use std::process::Command;

use pq_oscillator::cli::Document;

fn osc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_osc"))
        .args(args)
        .output()
        .expect("osc runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const FIXTURE: [&str; 10] = [
    "--p", "2", "--q", "3", "--alpha", "1", "--beta", "0", "--l", "1",
];

fn with_fixture<'a>(cmd: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(FIXTURE);
    v.extend(extra);
    v
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("osc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn spectrum_csv_fixture() {
    let (code, out, _) = osc(&with_fixture(
        "spectrum",
        &["--n-max", "2", "--format", "csv"],
    ));
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,lambda,p_form,q_form");
    for (line, (n, lambda)) in lines[1..4]
        .iter()
        .zip([(0.0, 1.0), (1.0, 4.5), (2.0, 14.25)])
    {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v[0], n);
        for x in &v[1..] {
            assert!((x - lambda).abs() <= 1e-12 * lambda, "{line}");
        }
    }
    assert_eq!(lines[4], "");
    assert_eq!(lines[5], "label,residual,tol,pass");
}

#[test]
fn hopf_solve_without_real_gamma_exits_3() {
    let (code, out, err) = osc(&[
        "hopf-solve",
        "--p",
        "2",
        "--q",
        "2",
        "--beta1",
        "1",
        "--beta2",
        "0",
        "--alpha",
        "1",
        "--l",
        "1",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("GammaUndefined"), "{err}");
    assert!(out.is_empty());
}

#[test]
fn literal_mode_at_alpha_two_exits_1_with_report() {
    let (code, out, _) = osc(&[
        "rep-check",
        "--p",
        "2",
        "--q",
        "3",
        "--alpha",
        "2",
        "--beta",
        "0",
        "--l",
        "1",
        "--mode",
        "literal",
    ]);
    assert_eq!(code, 1);
    let doc: Document = serde_json::from_str(&out).unwrap();
    assert!(!doc.passed());
    assert_eq!(doc.results.len(), 4);
}

#[test]
fn passing_commands_exit_0() {
    for cmd in ["numbers", "spectrum", "rep-check", "calculus-check"] {
        let (code, out, err) = osc(&with_fixture(cmd, &[]));
        assert_eq!(code, 0, "{cmd}: {err}");
        let doc: Document = serde_json::from_str(&out).unwrap();
        assert_eq!(doc.command, cmd);
        assert!(doc.metadata.unwrap().timestamp.is_some());
    }
    let hopf = [
        "--p", "2", "--q", "3", "--alpha", "1", "--l", "1", "--beta1", "0.7", "--beta2", "0.7",
    ];
    let (code, out, _) = osc(&[&["hopf-solve"][..], &hopf].concat());
    assert_eq!(code, 0);
    let doc: Document = serde_json::from_str(&out).unwrap();
    assert!((doc.coefficients.unwrap().gamma - 0.7).abs() < 1e-14);
    // beta1 = beta2 skips the homomorphism with a note; the rest holds
    let (code, out, _) = osc(&[&["hopf-check", "--dim", "6"][..], &hopf].concat());
    assert_eq!(code, 0);
    let doc: Document = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.notes.len(), 1);
    assert_eq!(doc.diagnostics.len(), 4);
}

#[test]
fn numbers_checks_the_sum_oracle_at_unit_parameters() {
    let (code, out, _) = osc(&with_fixture(
        "numbers",
        &["--n-max", "4", "--no-timestamp"],
    ));
    assert_eq!(code, 0);
    let doc: Document = serde_json::from_str(&out).unwrap();
    let table = doc.table.unwrap();
    let f: Vec<f64> = table.rows.iter().map(|r| r[1]).collect();
    for (a, b) in f.iter().zip([0.0, 1.0, 3.5, 10.75, 32.375]) {
        assert!((a - b).abs() <= 1e-12 * b.max(1.0));
    }
    assert_eq!(doc.results.len(), 1);
}

#[test]
fn invalid_input_exits_2() {
    let cases: [&[&str]; 6] = [
        &[
            "rep-check",
            "--p",
            "2",
            "--q",
            "0.5",
            "--alpha",
            "1",
            "--beta",
            "0",
            "--l",
            "1",
        ],
        &[
            "rep-check",
            "--p",
            "-1",
            "--q",
            "3",
            "--alpha",
            "1",
            "--beta",
            "0",
            "--l",
            "1",
        ],
        &[
            "rep-check",
            "--q",
            "3",
            "--alpha",
            "1",
            "--beta",
            "0",
            "--l",
            "1",
        ],
        &[
            "rep-check",
            "--p",
            "2",
            "--q",
            "3",
            "--alpha",
            "1",
            "--beta",
            "0",
            "--l",
            "1",
            "--dim",
            "3",
        ],
        &[
            "hopf-check",
            "--p",
            "2",
            "--q",
            "3",
            "--alpha",
            "1",
            "--l",
            "1",
            "--beta1",
            "1",
            "--beta2",
            "0",
            "--dim",
            "17",
        ],
        &["frobnicate"],
    ];
    for args in cases {
        let (code, _, err) = osc(args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
    let (code, _, err) = osc(&[
        "calculus-check",
        "--p",
        "2",
        "--q",
        "3",
        "--alpha",
        "0",
        "--beta",
        "0",
        "--l",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("ZeroAlpha"));
}

#[test]
fn overflow_exits_3() {
    let (code, _, err) = osc(&with_fixture("numbers", &["--n-max", "2000"]));
    assert_eq!(code, 3);
    assert!(err.contains("Overflow"), "{err}");
}

#[test]
fn config_file_with_flag_override() {
    let path = scratch("fixture.conf");
    std::fs::write(
        &path,
        "# fixture\np = 2\nq = 5\nalpha = 1\nbeta = 0\nl = 1\nn_max = 2\nformat = csv\n",
    )
    .unwrap();
    let (code, out, _) = osc(&["spectrum", "--config", path.to_str().unwrap(), "--q", "3"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(2).unwrap().starts_with("1,4.5"));

    std::fs::write(&path, "p = 2\nbogus = 7\n").unwrap();
    let (code, _, err) = osc(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(
        err.contains("ParseError") && err.contains("line 2"),
        "{err}"
    );
}

#[test]
fn output_is_deterministic_without_timestamp() {
    let args = with_fixture("rep-check", &["--no-timestamp", "--dim", "8"]);
    let (_, a, _) = osc(&args);
    let (_, b, _) = osc(&args);
    assert_eq!(a, b);
    assert!(!a.contains("timestamp"));
}

#[test]
fn out_flag_writes_file_and_round_trips() {
    let path = scratch("report.json");
    let (code, out, _) = osc(&with_fixture(
        "spectrum",
        &["--out", path.to_str().unwrap(), "--no-timestamp"],
    ));
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: Document = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.to_json(), text);
}

#[test]
fn sweep_is_ordered_and_reports_invalid_points() {
    let (code, out, _) = osc(&[
        "sweep",
        "--p",
        "2,0.5",
        "--q",
        "3,2",
        "--alpha",
        "1",
        "--beta",
        "0",
        "--l",
        "1",
        "--dim",
        "6",
        "--no-timestamp",
    ]);
    // (0.5, 2) is degenerate, so the sweep as a whole fails
    assert_eq!(code, 1);
    let doc: Document = serde_json::from_str(&out).unwrap();
    let order: Vec<(f64, f64)> = doc
        .points
        .iter()
        .map(|d| {
            let e = d.params.unwrap();
            (e.p, e.q)
        })
        .collect();
    assert_eq!(order, vec![(0.5, 2.0), (0.5, 3.0), (2.0, 2.0), (2.0, 3.0)]);
    assert!(doc.points[0]
        .error
        .as_ref()
        .unwrap()
        .starts_with("DegenerateDenominator"));
    assert!(doc.points[1..].iter().all(Document::passed));

    let (code, out, _) = osc(&[
        "sweep",
        "--p",
        "0.5,1.5,2",
        "--q",
        "3",
        "--alpha",
        "1",
        "--beta",
        "0",
        "--l",
        "1",
        "--dim",
        "6",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("p,q,alpha,beta,l,beta1,beta2,label,residual,tol,pass,error\n"));
}
