//! End-to-end checks of the command-line interface.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thickknot"))
}

fn tempdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("thickknot-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn bundled_data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/trefoil.fourier")
}

#[test]
fn thickness_on_circle_reports_radius() {
    let dir = tempdir("circle");
    let out = bin()
        .args([
            "thickness",
            "--kind",
            "circle",
            "--radius",
            "2",
            "--n",
            "96",
            "--out-dir",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("thickness:  2.0000000"), "{text}");
    assert!(text.contains("ropelength: 6.2831853"), "{text}");
    assert!(dir.join("classification.csv").exists());
}

#[test]
fn missing_input_file_exits_2() {
    let out = bin()
        .args(["thickness", "--kind", "pt", "--input", "/no/such/file.ptc"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn unknown_export_kind_exits_2() {
    let out = bin()
        .args([
            "export",
            "--table",
            "mystery",
            "--kind",
            "circle",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn contact_on_ellipse_is_a_clean_no() {
    // convex curves carry no off-diagonal valley; this is not a failure
    let dir = tempdir("ellipse");
    let gen = bin()
        .args(["generate", "--kind", "circle", "--as", "fourier", "--out"])
        .arg(dir.join("c.fourier"))
        .output()
        .unwrap();
    assert!(gen.status.success());
    let out = bin()
        .args(["contact", "--kind", "fourier", "--n", "128", "--input"])
        .arg(dir.join("c.fourier"))
        .arg("--out-dir")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("no off-diagonal contact"), "{text}");
}

#[test]
fn generate_then_load_point_tangent() {
    let dir = tempdir("gen");
    let file = dir.join("trefoil.ptc");
    let gen = bin()
        .args(["generate", "--kind", "synthetic-trefoil", "--as", "pt", "--n", "64", "--out"])
        .arg(&file)
        .output()
        .unwrap();
    assert!(gen.status.success(), "{gen:?}");
    let out = bin()
        .args(["thickness", "--kind", "pt", "--input"])
        .arg(&file)
        .arg("--out-dir")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn bundled_data_full_pipeline() {
    let data = bundled_data();
    let dir = tempdir("bundled");
    // contact: sigma(0) printed near 0.49
    let out = bin()
        .args(["contact", "--kind", "fourier", "--input"])
        .arg(&data)
        .arg("--out-dir")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("sigma(0) = 0.4"), "{text}");
    assert!(dir.join("contact_function.txt").exists());
    assert!(dir.join("pp_surface.csv").exists());

    // cycles: single minimal nine-cycle and its chain
    let out = bin()
        .args(["cycles", "--kind", "fourier", "--n-max", "12", "--input"])
        .arg(&data)
        .arg("--out-dir")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("minimal 9-cycle"), "{text}");
    assert!(text.contains("ordering along the circle: [0, 7, 5, 3, 1, 8, 6, 4, 2]"), "{text}");

    // attractor verdict
    let out = bin()
        .args(["attractor", "--kind", "fourier", "--input"])
        .arg(&data)
        .arg("--out-dir")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("all starts converge"), "{text}");

    // symmetry residuals
    let out = bin()
        .args(["symmetry", "--kind", "fourier", "--input"])
        .arg(&data)
        .arg("--out-dir")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");

    // an export
    let out = bin()
        .args(["export", "--table", "curvature_profile", "--kind", "fourier", "--input"])
        .arg(&data)
        .arg("--out-dir")
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert!(dir.join("curvature_profile.csv").exists());
}
