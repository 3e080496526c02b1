use std::process::{Command, Output};

use lkinv::geom::Polytope;
use lkinv::tube::{steiner_coefficients, LkVector};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn lkinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lkinv")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lk_on_square_csv() {
    let o = lkinv(&["lk", "--in", &fixture("square.json")]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "shape_id,i,lambda,method,stderr\nsquare,0,1,exact,0\nsquare,1,2,exact,0\nsquare,2,1,exact,0\n"
    );
}

#[test]
fn zeta_on_node_with_expansion() {
    let o = lkinv(&["zeta", "--in", &fixture("node.json"), "--expand", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["zeta"]["terms"].as_array().unwrap().len(), 3);
    let e = v["expansion"].as_array().unwrap();
    assert_eq!(e.len(), 4);
    assert_eq!(e[3]["class"], "3*L^-3 - 3*L^-4");
    assert_eq!(v["pole_candidates"][0]["fraction"], serde_json::json!([1, 1]));
}

#[test]
fn malformed_json_exits_one_with_error_body() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{ \"dim\": 2, ").unwrap();
    let o = lkinv(&["lk", "--in", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "validation");
}

#[test]
fn wrong_field_names_are_rejected() {
    let dir = std::fs::read_dir(format!("{}/fixtures", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let mut seen = 0;
    for entry in dir {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if !name.starts_with("bad_field_") {
            continue;
        }
        let cmd = if name.contains("resolution") { "zeta" } else { "lk" };
        let o = lkinv(&[cmd, "--in", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{name}");
        seen += 1;
    }
    assert!(seen >= 2);
}

#[test]
fn missing_input_is_an_io_error() {
    let o = lkinv(&["lk", "--in", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_flag_is_a_validation_error() {
    let o = lkinv(&["lk", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["crofton", "--in", &fixture("unit_segment.json"), "--i", "1", "--volume", "--samples", "20000", "--seed", "7"];
    let a = lkinv(&args);
    let b = lkinv(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["target"], "volume");
}

#[test]
fn tube_sweep_tracks_steiner_polynomial() {
    let o = lkinv(&["tube", "--in", &fixture("square.json"), "--samples", "200000", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    let lk: LkVector = steiner_coefficients(&Polytope::unit_cube(2).unwrap()).unwrap();
    for r in rows {
        let e = r["epsilon"].as_f64().unwrap();
        let (val, se) = (r["value"].as_f64().unwrap(), r["stderr"].as_f64().unwrap());
        assert!((val - lk.steiner_polynomial(e)).abs() <= 3.0 * se + 1e-9, "eps {e}");
    }
}

#[test]
fn tube_plot_csv_shape() {
    let o = lkinv(&["tube", "--in", &fixture("square.json"), "--eps", "0.1,0.2", "--samples", "1000"]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "epsilon,value");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0.1,"));
}

#[test]
fn out_path_honours_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lkinv"))
        .args(["lk", "--in", &fixture("cube.json"), "--out", "cube.csv"])
        .env(lkinv::io::OUT_DIR_VAR, dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let s = std::fs::read_to_string(dir.path().join("cube.csv")).unwrap();
    assert!(s.contains("cube,1,3,exact,0"));
}

#[test]
fn acampo_and_milnor_fibre_commands() {
    let o = lkinv(&["acampo", "--in", &fixture("cusp.json"), "--expand", "12"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lefschetz"][0]["lefschetz"], -1);
    assert_eq!(v["consistency"]["pass"], true);
    assert_eq!(v["period"], 6);

    let o = lkinv(&["milnor-fibre", "--in", &fixture("node.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "-L + 1");
    assert_eq!(v["chi"], 0);

    let o = lkinv(&["milnor-fibre", "--in", &fixture("node.json"), "--mode", "real", "--sign", ">"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["chi"], -2);

    let o = lkinv(&["milnor-fibre", "--in", &fixture("node.json"), "--mode", "real"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn local_commands() {
    let o = lkinv(&["local", "--in", &fixture("quarter_plane_germ.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["density"]["value"], 0.25);
    let o = lkinv(&["local", "--in", &fixture("complex_cusp.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    let o = lkinv(&["polar", "--in", &fixture("half_plane_germ.json"), "--format", "csv"]);
    assert!(stdout(&o).starts_with("i,sigma,stderr\n0,1,0\n"));
}
