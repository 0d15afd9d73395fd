use std::path::Path;
use std::process::{Command, Output};

fn helistar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helistar"))
        .args(args)
        .env_remove("HELISTAR_GRID_POINTS")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn records(path: &Path, tag: &str) -> usize {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| l.split_whitespace().next() == Some(tag))
        .count()
}

#[test]
fn solve_tetrahelix() {
    let out = helistar(&["solve", "--strips", "3", "--shift", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("2.300523983"), "{text}");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn solve_five_two_lists_an_intersecting_branch() {
    let out = helistar(&["--json", "solve", "--strips", "5", "--shift", "2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["branches"].as_array().unwrap();
    assert!(rows.len() >= 2);
    assert!(rows.iter().any(|r| r["intersecting"] == true));
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(code(&helistar(&["solve", "--strips", "5", "--shift", "5"])), 2);
    assert_eq!(code(&helistar(&["solve", "--strips", "2", "--shift", "1"])), 2);
    assert_eq!(code(&helistar(&["generate", "--strips", "3", "--shift", "1"])), 2);
    assert_eq!(code(&helistar(&["enumerate", "--min", "9", "--max", "5"])), 2);
    assert_eq!(
        code(&helistar(&["solve", "--strips", "3", "--shift", "1", "--frobnicate"])),
        2
    );
}

#[test]
fn no_branch_exits_three() {
    let out = helistar(&[
        "solve",
        "--strips",
        "3",
        "--shift",
        "1",
        "--theta-min",
        "0.1",
        "--theta-max",
        "2",
    ]);
    assert_eq!(code(&out), 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.obj");
    let out = helistar(&[
        "generate",
        "--strips",
        "3",
        "--shift",
        "1",
        "--branch",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1..=1"));
}

#[test]
fn generate_faces_and_frame() {
    let dir = tempfile::tempdir().unwrap();
    let faces = dir.path().join("t.obj");
    let frame = dir.path().join("f.obj");
    let base = ["generate", "--strips", "3", "--shift", "1", "--periods", "4", "--out"];
    let mut args = base.to_vec();
    args.push(faces.to_str().unwrap());
    assert_eq!(code(&helistar(&args)), 0);
    assert_eq!((records(&faces, "v"), records(&faces, "f")), (13, 20));
    args.pop();
    args.push(frame.to_str().unwrap());
    args.push("--frame");
    assert_eq!(code(&helistar(&args)), 0);
    assert_eq!((records(&frame, "l"), records(&frame, "f")), (33, 0));
}

#[test]
fn verify_tetrahelix_passes() {
    let out = helistar(&["verify", "--strips", "3", "--shift", "1"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("FAILED"));
}

#[test]
fn net_and_modules_emit_svg() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.svg");
    let modules = dir.path().join("mod.svg");
    let out = helistar(&[
        "net",
        "--strips",
        "3",
        "--shift",
        "1",
        "--rows",
        "2",
        "--out",
        net.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(std::fs::read_to_string(&net).unwrap().contains("<svg"));
    let out = helistar(&[
        "modules",
        "--strips",
        "5",
        "--shift",
        "2",
        "--out",
        modules.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(std::fs::read_to_string(&modules).unwrap().contains("slit"));
}

#[test]
fn antiprism_tower_obj() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.obj");
    let out = helistar(&[
        "antiprism",
        "--gon",
        "4",
        "--rings",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!((records(&path, "v"), records(&path, "f")), (12, 16));
}

#[test]
fn enumerate_breakdowns() {
    let five = stdout(&helistar(&["enumerate", "--min", "5", "--max", "5"]));
    let shifts: Vec<&str> = five
        .lines()
        .skip(1)
        .take_while(|l| !l.starts_with("star"))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(shifts, ["1", "2"]);

    let six = helistar(&["--json", "enumerate", "--min", "6", "--max", "6"]);
    let v: serde_json::Value = serde_json::from_slice(&six.stdout).unwrap();
    assert_eq!(v["breakdown"]["star_total"], 1);

    let full = stdout(&helistar(&["enumerate"]));
    assert!(full.contains("reference count 64"));
}

#[test]
fn enumerate_files_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let cat = dir.path().join(format!("{tag}.json"));
        let csv = dir.path().join(format!("{tag}.csv"));
        let out = helistar(&[
            "enumerate",
            "--include-compounds",
            "--catalog",
            cat.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        (std::fs::read(cat).unwrap(), std::fs::read(csv).unwrap(), out.stdout)
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn grid_points_environment_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_helistar"))
        .args(["solve", "--strips", "3", "--shift", "1"])
        .env("HELISTAR_GRID_POINTS", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_helistar"))
        .args(["solve", "--strips", "3", "--shift", "1", "--grid-points", "5000"])
        .env("HELISTAR_GRID_POINTS", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}
