use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use vms_core::csv::parse_csv;
use vms_core::harness::{find_preset, PRESETS};
use vms_core::{build_mesh, solve_stationary, SolverMode, StationaryProblem};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectral-vms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = Vec::new();
    for entry in walk(dir) {
        let rel = entry.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
        out.push((rel, fs::read(&entry).unwrap()));
    }
    out.sort();
    out
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn list_presets_names_every_preset() {
    let o = bin(&["list-presets"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    for p in PRESETS {
        assert!(text.contains(p.name));
    }
    assert_eq!(PRESETS.len(), 11);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&[]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    let o = bin(&["preset", "no-such-preset"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no-such-preset"));
    let o = bin(&["run", "/nonexistent/config.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_errors_exit_2_with_line_or_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.conf",
        "kind = stationary-adr\n# comment\ngamma 1\n",
    );
    let o = bin(&["run", &bad, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let zero_mu = write(
        dir.path(),
        "mu.conf",
        "kind = stationary-adr\ngamma = 1\nc = 1\nmu = 0\nn_elements = 10\nmode = galerkin\n",
    );
    let o = bin(&["run", &zero_mu]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`mu`"), "{}", stderr(&o));
}

#[test]
fn numeric_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "num.conf",
        "kind = evolutive-ad\nc = 1e9\nmu = 1e-6\nn_elements = 4\nk = 1\nsteps = 2\ncurves = spectral:3\n",
    );
    let o = bin(&["run", &cfg, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("step 1"), "{}", stderr(&o));
}

#[test]
fn minimal_config_writes_solution() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "min.conf",
        "kind = stationary-adr\ngamma = 1\nc = 1\nmu = 1\nn_elements = 10\nmode = galerkin\n",
    );
    let out = dir.path().join("out");
    let o = bin(&["run", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(out.join("solution.csv")).unwrap();
    let parsed = parse_csv(&text).unwrap();
    assert_eq!(parsed.columns, ["x", "galerkin"]);
    assert_eq!(parsed.rows.len(), 11);
}

#[test]
fn preset_and_equivalent_config_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["fig-rcd1b", "conv-m-stationary", "fig-hauke"] {
        let a = dir.path().join(format!("{name}-preset"));
        let b = dir.path().join(format!("{name}-config"));
        let o = bin(&["preset", name, "--out", a.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        // Same values, different layout, comments and number spelling.
        let text: String = find_preset(name)
            .unwrap()
            .config
            .lines()
            .map(|l| match l.split_once('=') {
                Some((k, v)) => format!("  {} =   {}   # rewritten\n", k.trim(), v.trim()),
                None => format!("{l}\n"),
            })
            .collect();
        let text = text.replace("mu =   1 ", "mu =   1.0e0 ");
        let cfg = write(dir.path(), &format!("{name}.conf"), &format!("# copy of {name}\n{text}"));
        let o = bin(&["run", &cfg, "--out", b.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let fa = files(&a);
        assert!(!fa.is_empty());
        assert_eq!(fa, files(&b), "{name}");
    }
}

#[test]
fn csv_format_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rcd");
    let o = bin(&["preset", "fig-rcd1a", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(out.join("solution.csv")).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.starts_with("# spectral-vms "));
    assert!(text.contains("# name = fig-rcd1a\n"));
    let parsed = parse_csv(&text).unwrap();

    let mesh = build_mesh(40).unwrap();
    let p = StationaryProblem::new(1.0, 400.0, 1.0);
    for (label, mode) in [
        ("galerkin", SolverMode::Galerkin),
        ("spectral:15", SolverMode::SpectralVms { modes: 15 }),
    ] {
        let u = solve_stationary(&p, &mesh, mode).unwrap();
        let back = parsed.column(label).unwrap();
        let a: Vec<u64> = u.iter().map(|v| v.to_bits()).collect();
        let b: Vec<u64> = back.iter().map(|v| v.to_bits()).collect();
        assert_eq!(a, b, "{label}");
    }
    // Every numeric data cell uses 17 significant digits.
    let x_line = text.lines().find(|l| l.starts_with("2.5000000000000001e-2")).unwrap();
    for cell in x_line.split(',') {
        let mantissa = cell.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.len(), 18, "{cell}");
    }
}

#[test]
fn multi_case_presets_write_subdirectories() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["preset", "conv-m-stationary", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for case in ["advection-dominated", "reaction-dominated"] {
        assert!(dir.path().join(case).join("slopes.csv").exists());
        assert!(dir.path().join(case).join("convergence.csv").exists());
    }
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("[reaction-dominated] slope nodal_max"));
}
