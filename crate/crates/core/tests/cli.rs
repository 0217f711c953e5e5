use std::path::Path;

use rft_doppler::cli::{run, EXIT_DATA, EXIT_OK, EXIT_USAGE};
use rft_doppler::ingest::{read_iq, read_moments, read_spectrum};
use rft_doppler::{Method, SpectrumKind};

fn rft_doppler(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("rft-doppler").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn simulate(path: &Path, extra: &[&str]) {
    let p = path.to_str().unwrap();
    let mut args = vec![
        "simulate", "--velocity", "10", "--width", "1", "--power", "1", "--snr", "20", "--pulses", "64", "--seed", "7",
        "--wavelength", "0.1", "--prt", "1e-3", "--out", p,
    ];
    args.extend_from_slice(extra);
    let (code, out, err) = rft_doppler(&args);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("velocity 10"), "{out}");
}

#[test]
fn simulate_writes_file_and_echoes_truth() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.iq");
    let b = dir.path().join("b.iq");
    simulate(&a, &[]);
    simulate(&b, &[]);
    let file = read_iq(&a).unwrap();
    assert_eq!(file.series.len(), 64);
    assert_eq!(file.meta("rng"), Some("chacha8"));
    assert_eq!(file.meta("seed"), Some("7"));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn simulate_rejects_velocity_beyond_nyquist() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.iq");
    let (code, _, err) = rft_doppler(&["simulate", "--velocity", "30", "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("Nyquist"), "{err}");
    assert!(!out.exists());
}

#[test]
fn estimate_all_methods_writes_three_rows() {
    let dir = tempfile::tempdir().unwrap();
    let iq = dir.path().join("cell.iq");
    let csv = dir.path().join("moments.csv");
    simulate(&iq, &[]);
    let (code, out, err) = rft_doppler(&[
        "estimate", "--input", iq.to_str().unwrap(), "--method", "all", "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 4, "{out}");
    let rows = read_moments(&csv).unwrap();
    assert_eq!(rows.iter().map(|r| r.method).collect::<Vec<_>>(), Method::ALL.to_vec());
    for r in &rows {
        assert!((r.velocity_mps - 10.0).abs() < 2.5, "{r:?}");
    }
}

#[test]
fn estimate_near_tone_file() {
    let dir = tempfile::tempdir().unwrap();
    let iq = dir.path().join("tone.iq");
    // 6.25 m/s is an exact grid frequency of the 64-pulse simulator.
    let (code, _, err) = rft_doppler(&[
        "simulate", "--velocity", "6.25", "--width", "0.0025", "--snr", "60", "--out", iq.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, out, _) = rft_doppler(&["--json", "estimate", "--input", iq.to_str().unwrap(), "--method", "pp"]);
    assert_eq!(code, EXIT_OK);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    let v = rows[0]["velocity_mps"].as_f64().unwrap();
    assert!((v - 6.25).abs() < 1e-3 * 25.0, "{v}");
}

#[test]
fn estimate_writes_spectra() {
    let dir = tempfile::tempdir().unwrap();
    let iq = dir.path().join("cell.iq");
    simulate(&iq, &[]);
    let input = iq.to_str().unwrap();

    let single = dir.path().join("rft.csv");
    let (code, _, err) = rft_doppler(&["estimate", "--input", input, "--method", "rft", "--spectrum", single.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let s = read_spectrum(&single).unwrap();
    assert_eq!(s.kind, SpectrumKind::RftOrder);
    assert_eq!(s.len(), 32);

    let base = dir.path().join("spec.csv");
    let (code, _, _) = rft_doppler(&[
        "estimate", "--input", input, "--method", "all", "--spectrum", base.to_str().unwrap(), "--fft-size", "128",
        "--rft-max-q", "16", "--moment-convention", "conventional", "--filter", "default",
    ]);
    assert_eq!(code, EXIT_OK);
    let fft = read_spectrum(dir.path().join("spec.fft.csv")).unwrap();
    assert_eq!((fft.kind, fft.len()), (SpectrumKind::DftPeriodogram, 128));
    assert_eq!(read_spectrum(dir.path().join("spec.rft.csv")).unwrap().len(), 16);
}

#[test]
fn estimate_error_paths() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.iq");
    let (code, _, err) = rft_doppler(&["estimate", "--input", missing.to_str().unwrap()]);
    assert_eq!(code, EXIT_DATA, "{err}");

    let zeros = dir.path().join("zeros.iq");
    std::fs::write(&zeros, "# wavelength_m = 0.1\n# prt_s = 0.001\n# noise_power = 0\nindex,i,q\n0,0,0\n1,0,0\n2,0,0\n").unwrap();
    let (code, _, err) = rft_doppler(&["estimate", "--input", zeros.to_str().unwrap(), "--method", "pp"]);
    assert_eq!(code, EXIT_DATA, "{err}");

    let iq = dir.path().join("cell.iq");
    simulate(&iq, &[]);
    let input = iq.to_str().unwrap();
    for bad in [
        vec!["--method", "burg"],
        vec!["--moment-convention", "odd"],
        vec!["--rft-max-q", "0"],
        vec!["--filter", dir.path().join("nofilter.txt").to_str().unwrap()],
    ] {
        let mut args = vec!["estimate", "--input", input];
        args.extend(bad.iter().copied());
        let (code, _, _) = rft_doppler(&args);
        assert_eq!(code, EXIT_USAGE, "{bad:?}");
    }
    let (code, _, _) = rft_doppler(&["estimate", "--input", input, "--method", "fft", "--fft-size", "100"]);
    assert_ne!(code, EXIT_OK);
}

#[test]
fn bench_reports_rows() {
    let (code, out, err) = rft_doppler(&["--json", "bench", "--trials", "5", "--pulses", "64"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["elapsed_ms"].as_f64().unwrap() > 0.0 && r["cell_id"] == "sim"));

    let dir = tempfile::tempdir().unwrap();
    let iq = dir.path().join("cell.iq");
    simulate(&iq, &["--cell-id", "north"]);
    let (code, out, _) = rft_doppler(&["bench", "--input", iq.to_str().unwrap(), "--method", "pp", "--trials", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("north") && out.contains("pp") && !out.contains("fft"), "{out}");

    let (code, _, _) = rft_doppler(&["bench", "--trials", "0"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = rft_doppler(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("estimate") && out.contains("bench"));
    assert_eq!(rft_doppler(&["--version"]).0, EXIT_OK);
    assert_eq!(rft_doppler(&[]).0, EXIT_USAGE);
}
