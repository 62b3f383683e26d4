use std::path::PathBuf;
use std::process::{Command, Output};

fn zernike(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zernike"))
        .args(args)
        .env_remove("ZERNIKE_THREADS")
        .output()
        .expect("run zernike")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[track_caller]
fn expect_status(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn radial_table_lines() {
    let out = zernike(&["table", "radial2d", "--nmax", "4"]);
    expect_status(&out, 0);
    assert!(stdout(&out).lines().any(|l| l == "radial2d | 4,2 | -3*r^2 +4*r^4"));

    let out = zernike(&["table", "radial2d", "--nmax", "0"]);
    expect_status(&out, 0);
    assert_eq!(stdout(&out), "radial2d | 0,0 | 1\n");
}

#[test]
fn k_single_row() {
    let out = zernike(&["table", "k", "--n1", "2", "--l1", "2", "--n2", "3", "--l2", "3", "--l3", "5"]);
    expect_status(&out, 0);
    assert_eq!(stdout(&out), "k | 2,2,3,3,5 | 3/13*91^(1/2)*R_5^(5)(r)\n");
}

#[test]
fn convert_examples() {
    let out = zernike(&["convert", "zern2cart", "--dim", "2", "--noll", "6"]);
    expect_status(&out, 0);
    assert_eq!(stdout(&out), "Z_6 = 6^(1/2)*x^2 -6^(1/2)*y^2\n");

    let out = zernike(&["convert", "cart2zern", "--dim", "3", "--monomial", "0,0,1"]);
    expect_status(&out, 0);
    assert_eq!(stdout(&out), "z / Pi^(1/2) = 2/15*15^(1/2)*Z_1,1^(0)\n");

    let out = zernike(&["convert", "cart2zern", "--dim", "2", "--monomial", "0,0"]);
    expect_status(&out, 0);
    assert_eq!(stdout(&out), "1 = R_0^0(r)\n");
}

#[test]
fn verify_examples_pass() {
    let dir = fixtures();
    for args in [
        vec!["verify", "sumrules", "--dim", "2", "--jmax", "14", "-q"],
        vec!["verify", "fixtures", "--family", "g", "--fixtures", dir.to_str().unwrap(), "-q"],
        vec!["verify", "oracle", "--family", "k", "--nmax", "4", "-q"],
    ] {
        let out = zernike(&args);
        expect_status(&out, 0);
    }
}

#[test]
fn failing_check_exits_one_and_names_it() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("radial2d.txt"), "radial2d | 2,0 | -1 +2*r^2\nradial2d | 4,2 | -3*r^2 +5*r^4\n").unwrap();
    let out = zernike(&["verify", "fixtures", "--family", "radial2d", "--fixtures", tmp.path().to_str().unwrap()]);
    expect_status(&out, 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("4,2"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["table", "nosuchfamily"],
        vec!["convert", "zern2cart", "--dim", "3", "--n", "2", "--l", "1", "--m", "0"],
        vec!["convert", "zern2cart", "--dim", "2", "--noll", "0"],
        vec!["table", "k", "--n1", "3", "--l1", "2", "--n2", "0", "--l2", "0", "--l3", "2"],
        vec!["verify", "nosuchsuite"],
    ] {
        let out = zernike(&args);
        expect_status(&out, 2);
    }
}

#[test]
fn output_is_byte_identical() {
    for args in [vec!["table", "g", "--nmax", "4"], vec!["table", "k", "--nmax", "3", "--format", "json"]] {
        let a = zernike(&args);
        let b = zernike(&args);
        expect_status(&a, 0);
        assert_eq!(a.stdout, b.stdout);
        let mut seq = args.clone();
        seq.push("--sequential");
        assert_eq!(a.stdout, zernike(&seq).stdout, "{args:?} sequential");
    }
}

#[test]
fn thread_override_keeps_output() {
    let args = ["table", "z3dcart", "--nmax", "4"];
    let one = Command::new(env!("CARGO_BIN_EXE_zernike")).args(args).env("ZERNIKE_THREADS", "1").output().unwrap();
    expect_status(&one, 0);
    assert_eq!(one.stdout, zernike(&args).stdout);
}

#[test]
fn generated_tables_reload_as_fixtures() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    for family in ["radial2d", "h", "noll", "cart2z2d", "z2cart2d", "radial3d", "f", "fhat", "ylmcart", "z3dcart", "u", "k"] {
        let out = zernike(&["table", family, "--nmax", "4"]);
        expect_status(&out, 0);
        std::fs::write(tmp.path().join(format!("{family}.txt")), &out.stdout).unwrap();
        let out = zernike(&["verify", "fixtures", "--family", family, "--fixtures", dir, "-q"]);
        expect_status(&out, 0);
    }
}

#[test]
fn json_schema_fields() {
    let out = zernike(&["table", "ylmcart", "--nmax", "1", "--format", "json"]);
    expect_status(&out, 0);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        assert_eq!(row["family"], "ylmcart");
        assert!(row["key"].as_array().unwrap().iter().all(|k| k.is_i64()));
        for t in row["terms"].as_array().unwrap() {
            assert!(t["num"].is_i64() && t["den"].is_u64() && t["radicand"].is_u64() && t["imag"].is_boolean(), "{t}");
        }
    }
    // Y_1^1 has an imaginary y part
    assert!(rows.iter().flat_map(|r| r["terms"].as_array().unwrap()).any(|t| t["imag"] == true));
}
