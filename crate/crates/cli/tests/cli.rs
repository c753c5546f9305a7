use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cv-tradeoff"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn table(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn error_free_default_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["--scenario", "error-free", "--svg"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = table(&dir.path().join("error_free.csv"));
    assert_eq!(
        header.join(","),
        "theta_deg,eps_a,eps_b,sigma_a,sigma_b,c_ab,lhs_heisenberg,lhs_ozawa,lhs_branciard"
    );
    let theta = column(&header, &rows, "theta_deg");
    let eps_b = column(&header, &rows, "eps_b");
    let heis = column(&header, &rows, "lhs_heisenberg");
    assert_eq!(theta[0], 0.0);
    assert_eq!(heis[0], 0.0);
    let max_i = (0..eps_b.len()).max_by(|&a, &b| eps_b[a].total_cmp(&eps_b[b])).unwrap();
    assert_eq!(theta[max_i], 180.0);
    let svg = fs::read_to_string(dir.path().join("error_free.svg")).unwrap();
    assert!(svg.contains(r#"data-value="0.25""#));
    assert!(dir.path().join("error_free.manifest.json").exists());
}

#[test]
fn nonzero_and_mixed_contracts() {
    let dir = tempfile::tempdir().unwrap();
    assert!(cli(&["--scenario", "nonzero"], dir.path()).status.success());
    assert!(cli(&["--scenario", "mixed"], dir.path()).status.success());
    assert!(cli(&["--scenario", "error-free"], dir.path()).status.success());

    let (_, er) = table(&dir.path().join("error_free.csv"));
    let (nh, nr) = table(&dir.path().join("nonzero_error.csv"));
    let (mh, mr) = table(&dir.path().join("mixed_state.csv"));
    assert_eq!(nh[0], "t");

    // T = 1 rows reproduce the θ = 0 row
    assert_eq!(nr.last().unwrap()[1..], er[0][1..]);
    assert_eq!(mr.last().unwrap()[1..], er[0][1..]);

    let eps_b = column(&nh, &nr, "eps_b");
    assert!(eps_b.iter().all(|v| *v == eps_b[0]));
    let t = column(&nh, &nr, "t");
    let heis = column(&nh, &nr, "lhs_heisenberg");
    for (t, h) in t.iter().zip(&heis) {
        assert_eq!(*h >= 0.25, *t <= 0.3, "T = {t}: {h}");
    }

    let oz = column(&mh, &mr, "lhs_ozawa");
    let br = column(&mh, &mr, "lhs_branciard");
    assert!(oz.iter().zip(&br).all(|(o, b)| (o - b).abs() <= 1e-12));
    let min_i = (0..oz.len()).min_by(|&a, &b| oz[a].total_cmp(&oz[b])).unwrap();
    assert_eq!(min_i, oz.len() - 1);
}

#[test]
fn bounds_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["--scenario", "bounds", "--svg", "--r", "0.5"], dir.path());
    assert!(out.status.success());
    let (h, rows) = table(&dir.path().join("bounds_curves.csv"));
    assert_eq!(h.join(","), "variant,relation,sigma_a,sigma_b,eps_a,eps_b");
    let pick = |rel: &str| -> Vec<(f64, f64)> {
        rows.iter()
            .filter(|r| r[1] == rel)
            .map(|r| (r[4].parse().unwrap(), r[5].parse().unwrap()))
            .collect()
    };
    assert!(pick("heisenberg").iter().all(|(a, _)| *a > 0.0));
    let (oz, br) = (pick("ozawa"), pick("branciard"));
    let sigma_a: f64 = rows[0][2].parse().unwrap();
    assert!((oz[0].1 - 0.25 / sigma_a).abs() < 1e-8);
    assert!((br[0].1 - 0.25 / sigma_a).abs() < 1e-8);
    for (o, b) in oz.iter().zip(&br) {
        assert_eq!(o.0, b.0);
        assert!(b.1 >= o.1 - 1e-8);
    }
    assert!(dir.path().join("bounds_points.csv").exists());
    assert!(dir.path().join("bounds.svg").exists());
}

#[test]
fn byte_identical_and_manifest_replay() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();
    let args = [
        "--scenario", "mixed", "--mode", "both", "--shots", "4000", "--repeats", "3", "--seed", "17",
        "--t-grid", "0.2,0.6,1",
    ];
    assert!(cli(&args, a.path()).status.success());
    assert!(cli(&args, b.path()).status.success());
    let csv_a = fs::read(a.path().join("mixed_state.csv")).unwrap();
    assert_eq!(csv_a, fs::read(b.path().join("mixed_state.csv")).unwrap());
    let header = String::from_utf8_lossy(&csv_a).lines().next().unwrap().to_string();
    assert!(header.contains("mc_eps_b,mc_spread_eps_b"));

    let manifest = a.path().join("mixed_state.manifest.json");
    let replay = cli(&["--from-manifest", manifest.to_str().unwrap()], c.path());
    assert!(replay.status.success(), "{}", String::from_utf8_lossy(&replay.stderr));
    assert_eq!(csv_a, fs::read(c.path().join("mixed_state.csv")).unwrap());
}

#[test]
fn errors_are_one_line_and_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--scenario", "nonzero", "--t-grid", "0,1.5"][..],
        &["--scenario", "mixed", "--squeezing-db", "-5", "--antisqueezing-db", "3"][..],
        &["--scenario", "error-free", "--theta-grid", "0:0:10"][..],
        &["--scenario", "mixed", "--mode", "mc", "--repeats", "0"][..],
    ] {
        let out = cli(args, dir.path());
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.starts_with("error: "), "{err}");
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
    let blocked = dir.path().join("file");
    fs::write(&blocked, "x").unwrap();
    let out = cli(&["--scenario", "mixed"], &blocked);
    assert!(!out.status.success());
}
