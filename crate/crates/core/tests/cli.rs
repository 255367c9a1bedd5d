use polycell::io::{read_off, write_off, SurfaceFile};
use polycell_testkit::models::{self, Mesh};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn file(m: &Mesh) -> SurfaceFile {
    SurfaceFile {
        vertices: m.vertices.clone(),
        faces: m.triangles.iter().map(|t| t.to_vec()).collect(),
    }
}

fn put(dir: &Path, name: &str, m: &Mesh) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, write_off(&file(m))).unwrap();
    p
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycell")).args(args.iter().map(|a| a.as_ref())).output().unwrap()
}

fn volume(p: &Path) -> f64 {
    let f = read_off(&std::fs::read_to_string(p).unwrap()).unwrap();
    let s = f.to_soup();
    s.triangles
        .iter()
        .map(|t| {
            let [a, b, c] = t.map(|i| s.vertices[i as usize]);
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
        })
        .sum::<f64>()
        / 6.0
}

#[test]
fn disjoint_union_and_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let a = put(d.path(), "a.off", &models::unit_cube());
    let b = put(d.path(), "b.off", &models::unit_cube().translated([2.0, 0.0, 0.0]));
    let u = d.path().join("u.off");
    let out = run(&[&"bool", &"union", &a, &b, &"-o", &u]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(volume(&u), 2.0);

    let missing = d.path().join("nope.off");
    assert_eq!(run(&[&"repair", &missing, &"-o", &u]).status.code(), Some(1));
    let bad = d.path().join("bad.off");
    std::fs::write(&bad, "OFF\n3 1 0\n0 0 nan\n1 0 0\n0 1 0\n3 0 1 2\n").unwrap();
    assert_eq!(run(&[&"repair", &bad, &"-o", &u]).status.code(), Some(1));
    assert_eq!(run(&[&"repair", &a, &"-o", &d.path().join("x.ply")]).status.code(), Some(1));
    assert_eq!(run(&[&"frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&[&"--help"]).status.code(), Some(0));
}

#[test]
fn repair_open_pyramid() {
    let d = tempfile::tempdir().unwrap();
    let p = put(d.path(), "p.off", &models::open_pyramid(1.0));
    let o = d.path().join("out.off");
    let out = run(&[&"repair", &p, &"-o", &o]);
    assert_eq!(out.status.code(), Some(0));
    assert!((volume(&o) - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn check_reports_and_pvol_output() {
    let d = tempfile::tempdir().unwrap();
    let a = put(d.path(), "a.off", &models::rotated(&models::unit_cube(), [0.9, 0.2, 0.1, 0.3], [0.5; 3]));
    let v = d.path().join("a.pvol");
    let out = run(&[&"mesh", &a, &"-o", &v]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&v).unwrap();
    assert!(text.starts_with("PVOL 1\n"));
    for input in [&a, &v] {
        let out = run(&[&"check", input, &"--samples", &"8"]);
        let s = String::from_utf8_lossy(&out.stdout).to_string();
        assert_eq!(out.status.code(), Some(0), "{s}");
        assert!(s.contains("ok   conformity"), "{s}");
    }
}

#[test]
fn stats_name_the_phases() {
    let d = tempfile::tempdir().unwrap();
    let a = put(d.path(), "a.off", &models::unit_cube());
    let out = run(&[&"--stats", &"repair", &a, &"-o", &d.path().join("o.off")]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8_lossy(&out.stderr);
    for phase in ["Delaunay", "map", "split", "color", "classify"] {
        assert!(err.lines().any(|l| l.starts_with(&format!("phase {phase}"))), "{phase} missing in\n{err}");
    }
    assert!(err.contains("peak_rss"));
}

#[test]
fn every_command_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let a = put(d.path(), "a.off", &models::unit_cube());
    let b = put(d.path(), "b.off", &models::rotated(&models::unit_cube(), [0.7, -0.3, 0.4, 0.2], [0.8, 0.6, 0.7]));
    let both = put(
        d.path(),
        "ab.off",
        &Mesh::merged(&[models::unit_cube(), models::rotated(&models::unit_cube(), [0.7, -0.3, 0.4, 0.2], [0.8, 0.6, 0.7])]),
    );
    let cases: Vec<Vec<String>> = vec![
        vec!["mesh".into(), both.display().to_string(), "-o".into(), "OUT.pvol".into()],
        vec!["repair".into(), both.display().to_string(), "-o".into(), "OUT.off".into()],
        vec!["repair".into(), both.display().to_string(), "-o".into(), "OUT.obj".into()],
        vec!["bool".into(), "union".into(), a.display().to_string(), b.display().to_string(), "-o".into(), "OUT.off".into()],
        vec!["bool".into(), "inter".into(), a.display().to_string(), b.display().to_string(), "-o".into(), "OUT.pvol".into()],
        vec!["bool".into(), "diff".into(), a.display().to_string(), b.display().to_string(), "-o".into(), "OUT.off".into()],
        vec!["resolve".into(), both.display().to_string(), "-o".into(), "OUT.off".into()],
        vec!["check".into(), both.display().to_string()],
    ];
    for (i, c) in cases.iter().enumerate() {
        let mut outputs = Vec::new();
        for k in 0..2 {
            let args: Vec<String> = c.iter().map(|s| s.replace("OUT", &d.path().join(format!("r{i}_{k}")).display().to_string())).collect();
            let out = Command::new(env!("CARGO_BIN_EXE_polycell")).args(&args).output().unwrap();
            assert_eq!(out.status.code(), Some(0), "{args:?}");
            let written = args.iter().find(|s| s.contains(&format!("r{i}_{k}"))).map(|p| std::fs::read(p).unwrap());
            outputs.push((out.stdout, written));
        }
        assert_eq!(outputs[0], outputs[1], "command {c:?}");
    }
}

#[test]
fn cascading_union_then_difference() {
    let d = tempfile::tempdir().unwrap();
    let a = put(d.path(), "a.off", &models::unit_cube());
    let b = put(d.path(), "b.off", &models::rotated(&models::unit_cube(), [0.9, 0.1, 0.3, -0.2], [1.0, 0.8, 0.5]));
    let c = put(d.path(), "c.off", &models::unit_cube().translated([0.4, -0.3, 0.35]));
    let u = d.path().join("u.off");
    let r = d.path().join("r.pvol");
    assert_eq!(run(&[&"bool", &"union", &a, &b, &"-o", &u]).status.code(), Some(0));
    assert_eq!(run(&[&"bool", &"diff", &u, &c, &"-o", &r]).status.code(), Some(0));
    let out = run(&[&"check", &r, &"--samples", &"4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn invariant_violation_exits_with_2() {
    let d = tempfile::tempdir().unwrap();
    let a = put(d.path(), "a.off", &models::unit_cube());
    let v = d.path().join("a.pvol");
    assert_eq!(run(&[&"mesh", &a, &"-o", &v]).status.code(), Some(0));
    let text = std::fs::read_to_string(&v).unwrap();
    let mut done = false;
    let broken: String = text
        .lines()
        .map(|l| {
            let mut w: Vec<&str> = l.split(' ').collect();
            if !done && w[0] == "f" && w[3] == "B" {
                w[3] = "W";
                done = true;
            }
            w.join(" ") + "\n"
        })
        .collect();
    assert!(done);
    std::fs::write(&v, broken).unwrap();
    let out = run(&[&"check", &v]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL conformity"));
}
