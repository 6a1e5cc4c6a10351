use icrates::channel::Channel2Sym;
use icrates::rates2::{rate_sym_etw, rate_sym_p2p, rate_sym_tdma2};
use icrates::sweep::{run, write_csv, SweepSpec};
use icrates::Exec;

fn csv(spec: &SweepSpec, exec: Exec) -> String {
    let rows = run(spec, exec).unwrap();
    let mut out = Vec::new();
    write_csv(spec, &rows, &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

fn column(header: &str, name: &str) -> usize {
    header.split(',').position(|c| c == name).unwrap()
}

const ISR_SWEEP: &str = r#"
model = "two-sym"
P = 100.0
sweep = "a"
range = [0.01, 1.0]
points = 100
schemes = ["p2p", "etw", "ian", "tdma"]
"#;

#[test]
fn columns_round_trip_to_library_values() {
    let spec = SweepSpec::from_toml_str(ISR_SWEEP).unwrap();
    let text = csv(&spec, Exec::Parallel);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "model,K,P,a,P1,P2,a1,a2,regime,rate_p2p,bound_p2p,rate_etw,bound_etw,rate_ian,bound_ian,rate_tdma,bound_tdma"
    );
    let (ia, ip2p, ietw) = (
        column(header, "a"),
        column(header, "rate_p2p"),
        column(header, "rate_etw"),
    );
    let mut n = 0;
    let mut saw_half = false;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], "two-sym");
        assert_eq!(cells[1], "");
        assert!(cells[4..8].iter().all(|c| c.is_empty()));
        let a: f64 = cells[ia].parse().unwrap();
        let ch = Channel2Sym::new(100.0, a).unwrap();
        let p2p: f64 = cells[ip2p].parse().unwrap();
        let etw: f64 = cells[ietw].parse().unwrap();
        assert!((p2p - rate_sym_p2p(&ch).value).abs() <= 1e-12);
        assert!((etw - rate_sym_etw(&ch).unwrap().value).abs() <= 1e-12);
        if (a - 0.5).abs() < 1e-12 {
            saw_half = true;
            assert!((p2p - 3.825_525_845_589_464).abs() < 1e-9);
            assert!((etw - 3.619_202_369_662_539).abs() < 1e-9);
        }
        n += 1;
    }
    assert_eq!(n, 100);
    assert!(saw_half);
}

#[test]
fn output_is_identical_across_execution_modes() {
    let spec = SweepSpec::from_toml_str(
        r#"
model = "k-sym"
K = 4
P = 50.0
sweep = "a"
range = [0.001, 100.0]
points = 500
spacing = "log"
schemes = ["ian", "tdma", "p2p", "etw", "approx-etw", "approx-tdma"]
"#,
    )
    .unwrap();
    let a = csv(&spec, Exec::Sequential);
    let b = csv(&spec, Exec::Parallel);
    assert_eq!(a, b);
    assert_eq!(a, csv(&spec, Exec::Parallel));
}

#[test]
fn etw_at_unit_isr_follows_tdma_minus_a_constant() {
    let spec = SweepSpec::from_toml_str(
        r#"
model = "two-sym"
a = 1.0
sweep = "P"
range = [1.0, 1000.0]
points = 30
spacing = "log"
schemes = ["etw"]
"#,
    )
    .unwrap();
    for row in run(&spec, Exec::Parallel).unwrap() {
        let p = row.params[0].unwrap();
        let etw = row.rates[0].unwrap().0;
        let expected = rate_sym_tdma2(p).unwrap().value + 0.5 * 0.75f64.log2();
        assert!((etw - expected).abs() < 1e-12, "P={p}");
    }
}

#[test]
fn asymmetric_sweep_leaves_symmetric_cells_empty() {
    let spec = SweepSpec::from_toml_str(
        r#"
model = "two-asym"
P1 = 1.0
P2 = 1.0
a1 = 0.3
sweep = "a2"
range = [0.1, 0.5]
points = 3
schemes = ["p2p"]
"#,
    )
    .unwrap();
    let text = csv(&spec, Exec::Sequential);
    let row = text.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(&cells[..4], &["two-asym", "", "", ""]);
    let nums: Vec<f64> = cells[4..8].iter().map(|c| c.parse().unwrap()).collect();
    assert_eq!(nums, vec![1.0, 1.0, 0.3, 0.1]);
    assert_eq!(cells[8], "Noisy");
}
