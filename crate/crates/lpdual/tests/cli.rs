use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lpdual::{read_fixture_dir, serialize_alist};
use lpdual_core::ParityCheckMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn lpdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpdual")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(report: &'a str, name: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(name))
        .map(str::trim)
        .unwrap_or_else(|| panic!("no {name} in {report}"))
}

fn write_code(dir: &Path, name: &str, h: &ParityCheckMatrix) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serialize_alist(h)).unwrap();
    path
}

fn regular(n: usize, seed: u64) -> ParityCheckMatrix {
    ParityCheckMatrix::random_regular(n, 3, 6, false, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

#[test]
fn decode_positive_llrs_certifies_zero_word() {
    let dir = TempDir::new().unwrap();
    let code = write_code(dir.path(), "c.alist", &regular(24, 1));
    let ones = vec!["1"; 24].join(",");
    let report = stdout(&lpdual(&["decode", "--code", code.to_str().unwrap(), "--lambda", &ones]));
    assert_eq!(field(&report, "decision"), "0".repeat(24));
    assert_eq!(field(&report, "certificate"), "yes");
    assert_eq!(field(&report, "objective").parse::<f64>().unwrap(), 0.0);
}

#[test]
fn decode_zero_llrs_erases_everything() {
    let dir = TempDir::new().unwrap();
    let code = write_code(dir.path(), "c.alist", &regular(12, 2));
    let llr = dir.path().join("zero.txt");
    std::fs::write(&llr, "0\n".repeat(12)).unwrap();
    let report = stdout(&lpdual(&[
        "decode",
        "--code",
        code.to_str().unwrap(),
        "--llr",
        llr.to_str().unwrap(),
    ]));
    assert_eq!(field(&report, "decision"), "?".repeat(12));
    assert_eq!(field(&report, "certificate"), "no");
}

#[test]
fn decode_fractional_fixture() {
    let fixtures = read_fixture_dir(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap();
    let f = fixtures.iter().find(|f| !f.integral).unwrap();
    let dir = TempDir::new().unwrap();
    let code = write_code(dir.path(), "f.alist", &f.code);
    let llr = dir.path().join("f.llr");
    std::fs::write(&llr, lpdual::io::format_llr(&f.llr)).unwrap();
    let ladder = (0..=10).map(|k| 4u64.pow(k).to_string()).collect::<Vec<_>>().join(",");
    let report = stdout(&lpdual(&[
        "decode",
        "--code",
        code.to_str().unwrap(),
        "--llr",
        llr.to_str().unwrap(),
        "--decoder",
        "ca-hard",
        "--ladder",
        &ladder,
        "--max-sweeps",
        "5000",
        "--decision-tol",
        "1e-5",
    ]));
    assert!(field(&report, "decision").contains('?'));
    assert_eq!(field(&report, "certificate"), "no");
    let objective: f64 = field(&report, "objective").parse().unwrap();
    assert!((objective - f.lp_value).abs() < 1e-4);
}

#[test]
fn sweep_is_reproducible_across_runs_and_thread_counts() {
    let dir = TempDir::new().unwrap();
    let code = write_code(dir.path(), "c.alist", &regular(48, 3));
    let run = |threads: &str, out: &str| {
        let path = dir.path().join(out);
        let status = Command::new(env!("CARGO_BIN_EXE_lpdual"))
            .env("RAYON_NUM_THREADS", threads)
            .args([
                "sweep",
                "--code",
                code.to_str().unwrap(),
                "--decoder",
                "ca-hard",
                "--snr",
                "1,2.5",
                "--frames",
                "600",
                "--target-errors",
                "40",
                "--seed",
                "11",
                "--out",
                path.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let a = run("1", "a.csv");
    assert_eq!(a, run("1", "b.csv"));
    assert_eq!(a, run("3", "c.csv"));
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with(
        "ebn0_db,frames,word_errors,bit_errors,undetected_errors,avg_iterations,avg_runtime_per_frame\n"
    ));
    // The 1 dB point stops at exactly the target error count.
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[2], "40");
}

fn min_distance(h: &ParityCheckMatrix) -> usize {
    let basis = h.codeword_basis();
    (1u32..1 << basis.len())
        .map(|mask| {
            let mut w = vec![0u8; h.n()];
            for (k, row) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    w.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
                }
            }
            w.iter().filter(|&&b| b == 1).count()
        })
        .min()
        .unwrap()
}

#[test]
fn high_snr_min_sum_sweep_is_error_free_and_counts_frames() {
    let dir = TempDir::new().unwrap();
    let h = regular(24, 1);
    assert_eq!(min_distance(&h), 4);
    let code = write_code(dir.path(), "c.alist", &h);
    let csv = stdout(&lpdual(&[
        "sweep",
        "--code",
        code.to_str().unwrap(),
        "--decoder",
        "min-sum",
        "--snr",
        "8,9",
        "--frames",
        "1000",
        "--target-errors",
        "0",
    ]));
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(row[1], "1000");
        assert_eq!(row[2], "0");
    }
}

#[test]
fn certify_adds_certificate_rate() {
    let dir = TempDir::new().unwrap();
    let code = write_code(dir.path(), "c.alist", &regular(24, 5));
    let csv = stdout(&lpdual(&[
        "certify",
        "--code",
        code.to_str().unwrap(),
        "--decoder",
        "ca-hard",
        "--snr",
        "6",
        "--frames",
        "200",
    ]));
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().ends_with(",certificate_rate"));
    let rate: f64 = lines.next().unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!(rate > 0.9);
}

#[test]
fn demo_shows_hard_stall_and_soft_progress() {
    let csv = stdout(&lpdual(&["demo-a5", "--a", "0.5", "--kappa", "1", "--sweeps", "100"]));
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|r| r[3] == 0.0));
    let soft: Vec<f64> = rows.iter().map(|r| r[6]).collect();
    assert!(soft.windows(2).all(|w| w[1] >= w[0]));
    assert!(soft[1] > soft[0]);
    assert!(*soft.last().unwrap() > 0.0);
}

#[test]
fn malformed_code_reports_line_and_fails() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.alist");
    std::fs::write(&path, "3 1\n1 3\n1 1 1\n3\n5\n1\n1\n1 2 3\n").unwrap();
    let out = lpdual(&["decode", "--code", path.to_str().unwrap(), "--lambda", "1,1,1"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5") && err.contains("out-of-range index"), "{err}");
}

#[test]
fn unknown_decoder_is_rejected() {
    let out = lpdual(&["decode", "--code", "x", "--decoder", "magic", "--lambda", "1"]);
    assert!(!out.status.success());
}

#[test]
fn low_weight_rows_warn_on_stderr() {
    let dir = TempDir::new().unwrap();
    let h = ParityCheckMatrix::from_rows(4, &[vec![0, 1], vec![1, 2, 3]]).unwrap();
    let code = write_code(dir.path(), "w.alist", &h);
    let out = lpdual(&["decode", "--code", code.to_str().unwrap(), "--lambda", "1,-0.5,0.25,2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
