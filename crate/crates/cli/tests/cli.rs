use std::path::Path;
use std::process::{Command, Output};

fn icrates(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icrates"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = icrates(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn first_number(s: &str) -> f64 {
    s.split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn classify_two_user_and_k_user() {
    assert!(
        stdout(&["classify", "--snr-db", "0", "--isr", "0.5"]).starts_with("Noisy (a ≤ 0.61803")
    );
    assert!(stdout(&["classify", "--snr", "100", "--isr", "0.5"]).starts_with("Weak"));
    assert!(stdout(&["classify", "--snr", "100", "--isr", "50"]).starts_with("Strong"));
    assert!(stdout(&["classify", "--snr", "100", "--isr", "200"]).starts_with("VeryStrong"));
    assert!(stdout(&["classify", "--k", "3", "--snr", "10", "--isr", "0.2"]).starts_with("Noisy"));
    assert!(
        stdout(&["classify", "--snr1", "1", "--snr2", "1", "--isr1", "0.3", "--isr2", "0.3"])
            .starts_with("Noisy")
    );
}

#[test]
fn snr_db_matches_linear_snr() {
    let db = stdout(&["rate", "--snr-db", "20", "--isr", "0.5", "--scheme", "etw"]);
    let lin = stdout(&["rate", "--snr", "100", "--isr", "0.5", "--scheme", "etw"]);
    assert_eq!(db, lin);
}

#[test]
fn rate_values() {
    let etw = stdout(&["rate", "--snr", "100", "--isr", "0.5", "--scheme", "etw"]);
    assert!(
        (first_number(&etw) - 0.5 * 151f64.log2()).abs() < 1e-10,
        "{etw}"
    );
    assert!(etw.contains("bound=ETW-common-sum"));
    let p2p = stdout(&["rate", "--snr", "100", "--isr", "0.5", "--scheme", "p2p"]);
    assert!((first_number(&p2p) - 0.5 * 201f64.log2()).abs() < 1e-10);
    let k3 = stdout(&[
        "rate", "--users", "3", "--snr", "10", "--isr", "0.5", "--scheme", "etw",
    ]);
    assert!((first_number(&k3) - 1.426221405793071).abs() < 1e-10);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify", "--snr", "1", "--isr", "-1"][..],
        &["rate", "--snr", "100", "--isr", "2", "--scheme", "etw"],
        &["rate", "--snr", "100", "--isr", "0.5", "--scheme", "nosuch"],
        &["verify", "nosuch"],
        &["classify", "--snr", "1"],
        &["sweep", "--config", "/nonexistent/sweep.toml"],
    ] {
        assert_eq!(icrates(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn invalid_thread_count_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_icrates"))
        .args(["verify", "roots"])
        .env("ICRATES_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn roots_output() {
    let out = stdout(&["roots", "--snr", "4"]);
    assert!(out.contains("0.25"), "{out}");
    let v = stdout(&["verify", "roots"]);
    assert!(v.starts_with("roots PASS"));
    assert!(v.contains("P' = ") && v.contains("(> 100)"));
    assert!(v.contains("P'' = ") && v.contains("(> 1000)"));
}

#[test]
fn verify_csv_has_a_row_per_suite() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.csv");
    stdout(&["verify", "all", "--csv", path.to_str().unwrap()]);
    let out = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 10, "{out}");
    assert!(lines[1..].iter().all(|l| l.contains(",true,")), "{out}");
}

#[test]
fn region_corners_and_plot() {
    let out = stdout(&["region", "--snr", "1", "--isr", "1", "--which", "C1"]);
    assert!(out.starts_with("C1: (0, 0) (1, 0) (1, 0.58496"), "{out}");
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("regions.gp");
    stdout(&[
        "region",
        "--snr",
        "10",
        "--isr",
        "0.5",
        "--plot",
        plot.to_str().unwrap(),
    ]);
    let script = std::fs::read_to_string(&plot).unwrap();
    assert!(script.contains("plot"));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn sweep_to_stdout_and_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.toml",
        "model = \"two-sym\"\nP = 100.0\nsweep = \"a\"\nrange = [0.1, 1.0]\npoints = 5\nschemes = [\"p2p\"]\n",
    );
    let csv = stdout(&["sweep", "--config", &good]);
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.starts_with("model,K,P,a,"));

    for (name, text) in [
        ("unknown.toml", "model = \"two-sym\"\nP = 1.0\nsweep = \"a\"\nrange = [0.1, 1.0]\npoints = 5\nschemes = [\"p2p\"]\ncolour = 1\n"),
        ("range.toml", "model = \"two-sym\"\nP = 1.0\nsweep = \"a\"\nrange = [1.0, 0.1]\npoints = 5\nschemes = [\"p2p\"]\n"),
        ("scheme.toml", "model = \"two-asym\"\nP1 = 1.0\nP2 = 1.0\na1 = 0.3\nsweep = \"a2\"\nrange = [0.1, 0.5]\npoints = 3\nschemes = [\"etw\"]\n"),
        ("syntax.toml", "model = \n"),
    ] {
        let path = write(dir.path(), name, text);
        assert_eq!(icrates(&["sweep", "--config", &path]).status.code(), Some(2), "{name}");
    }
}

#[test]
fn shipped_configs_run() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for entry in std::fs::read_dir(configs).unwrap() {
        let path = entry.unwrap().path();
        let csv = stdout(&["sweep", "--config", path.to_str().unwrap()]);
        assert!(csv.lines().count() > 2, "{}", path.display());
    }
}
