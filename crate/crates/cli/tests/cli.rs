use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_fading-stats");

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_cmd(cmd: &str, config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut a = vec![
        cmd,
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    a.extend_from_slice(extra);
    run(&a)
}

fn table(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().skip(1);
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn product_density_csv_contract() {
    let dir = tempfile::tempdir().unwrap();
    let (pdf, cdf) = (dir.path().join("pdf.csv"), dir.path().join("cdf.csv"));
    let cfg = configs().join("product.toml");
    assert_eq!(
        run_cmd("pdf-product", &cfg, &pdf, &[]).status.code(),
        Some(0)
    );
    assert_eq!(
        run_cmd("cdf-product", &cfg, &cdf, &[]).status.code(),
        Some(0)
    );

    let text = fs::read_to_string(&pdf).unwrap();
    let first = text.lines().next().unwrap();
    assert!(
        first.starts_with("# fading-stats v0.1.0, pdf-product, "),
        "{first}"
    );
    let hash = first.rsplit(", ").next().unwrap();
    assert_eq!(hash.len(), 64);
    assert!(!text.contains('\r'));

    let (header, rows) = table(&pdf);
    assert_eq!(header, ["y", "pdf", "abs_err_est"]);
    assert_eq!(rows.len(), 200);
    for cell in text.lines().nth(2).unwrap().split(',') {
        let mantissa = cell.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.len(), 13, "12 significant digits in {cell}");
    }
    // trapezoid mass on the grid plus the exact mass outside it
    let trap: f64 = rows
        .windows(2)
        .map(|w| 0.5 * (w[0][1] + w[1][1]) * (w[1][0] - w[0][0]))
        .sum();
    let (_, c) = table(&cdf);
    let total = trap + c[0][1] + (1.0 - c[c.len() - 1][1]);
    assert!((total - 1.0).abs() < 1e-3, "{total}");
}

#[test]
fn output_is_byte_identical_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("product.toml");
    let outs: Vec<Vec<u8>> = [("a", "1"), ("b", "3"), ("c", "1")]
        .iter()
        .map(|(name, jobs)| {
            let p = dir.path().join(name);
            let o = run_cmd(
                "validate",
                &cfg,
                &p,
                &["--what", "product", "--jobs", jobs, "--seed", "11"],
            );
            assert_eq!(
                o.status.code(),
                Some(0),
                "{}",
                String::from_utf8_lossy(&o.stderr)
            );
            fs::read(&p).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);

    let (a, b) = (dir.path().join("x"), dir.path().join("y"));
    run_cmd("cdf-ratio", &cfg, &a, &["--jobs", "1"]);
    run_cmd("cdf-ratio", &cfg, &b, &["--jobs", "4"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn validate_ratio_reports_ks_below_gate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = run_cmd(
        "validate",
        &configs().join("product.toml"),
        &out,
        &["--what", "ratio"],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (header, rows) = table(&out);
    assert_eq!(header, ["x", "ecdf", "cdf", "ks"]);
    assert!(rows[0][3] < 0.0017);
    assert!(rows.iter().all(|r| (r[1] - r[2]).abs() <= r[3] + 1e-12));
}

#[test]
fn summary_line_reports_rows_and_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_cmd(
        "op-cascade",
        &configs().join("cascade.toml"),
        &dir.path().join("o.csv"),
        &[],
    );
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(s.lines().count(), 1);
    assert!(
        s.contains("wrote 11 rows") && s.contains("max abs_err_est"),
        "{s}"
    );
}

#[test]
fn every_command_runs() {
    let dir = tempfile::tempdir().unwrap();
    let c = configs();
    let cases = [
        ("pdf-ratio", "product.toml", 200),
        ("approx-fit", "product.toml", 1),
        ("af", "product.toml", 1),
        ("moments", "moments.toml", 8),
        ("sop", "secrecy.toml", 9),
        ("spsc", "secrecy.toml", 9),
        ("irs-op", "irs.toml", 5),
    ];
    for (cmd, cfg, n) in cases {
        let out = dir.path().join(format!("{cmd}.csv"));
        let o = run_cmd(cmd, &c.join(cfg), &out, &[]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{cmd}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert_eq!(table(&out).1.len(), n, "{cmd}");
    }
    let (_, m) = table(&dir.path().join("moments.csv"));
    assert!(
        m[7][2].is_nan(),
        "ratio moment of order 4 diverges for mu2 = 3, alpha2 = 2.5"
    );
    let (_, sop) = table(&dir.path().join("sop.csv"));
    assert!(sop.windows(2).all(|w| w[1][1] > w[0][1]));
}

fn assert_no_output(o: &Output, code: i32, out: &Path) {
    assert_eq!(
        o.status.code(),
        Some(code),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(!out.exists(), "no file may be written on failure");
    let leftovers: Vec<_> = fs::read_dir(out.parent().unwrap())
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .file_name()
                .to_string_lossy()
                .starts_with('.')
        })
        .collect();
    assert!(leftovers.is_empty(), "temporary files left behind");
}

#[test]
fn failure_injection_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let product = configs().join("product.toml");

    let o = run_cmd("pdf-product", &product, &out, &["--bogus"]);
    assert_no_output(&o, 2, &out);

    let o = run(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));

    let bad = dir.path().join("cfg");
    fs::create_dir(&bad).unwrap();
    let write_cfg = |name: &str, text: &str| {
        let p = bad.join(name);
        fs::write(&p, text).unwrap();
        p
    };
    let base = fs::read_to_string(&product).unwrap();

    let negative_alpha = write_cfg("a.toml", &base.replacen("alpha = 1.5", "alpha = -1.5", 1));
    let o = run_cmd("pdf-product", &negative_alpha, &out, &[]);
    assert_no_output(&o, 2, &out);
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));

    let decreasing = write_cfg("g.toml", &base.replace("stop = 10.0", "stop = 0.001"));
    let o = run_cmd("cdf-product", &decreasing, &out, &[]);
    assert_no_output(&o, 2, &out);
    assert!(String::from_utf8_lossy(&o.stderr).contains("increasing"));

    let typo = write_cfg("t.toml", &base.replace("kappa = 5.0", "kapa = 5.0"));
    assert_no_output(&run_cmd("pdf-product", &typo, &out, &[]), 2, &out);

    assert_no_output(
        &run_cmd("pdf-product", &product, &out, &["--tol", "2"]),
        2,
        &out,
    );
    assert_no_output(
        &run_cmd("pdf-product", &product, &out, &["--jobs", "0"]),
        2,
        &out,
    );
    assert_no_output(
        &run_cmd("validate", &product, &out, &["--trials", "10"]),
        2,
        &out,
    );

    // 10³ samples cannot meet the KS gate set for 10⁶
    let o = run_cmd(
        "validate",
        &product,
        &out,
        &["--what", "product", "--trials", "1000"],
    );
    assert_no_output(&o, 3, &out);

    let o = run_cmd("pdf-product", &dir.path().join("missing.toml"), &out, &[]);
    assert_no_output(&o, 1, &out);
    let o = run_cmd(
        "pdf-product",
        &product,
        &dir.path().join("nodir").join("o.csv"),
        &[],
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn failed_run_keeps_previous_output_intact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("keep.csv");
    fs::write(&out, "previous\n").unwrap();
    let o = run_cmd(
        "validate",
        &configs().join("product.toml"),
        &out,
        &["--trials", "1000"],
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(fs::read_to_string(&out).unwrap(), "previous\n");
}
