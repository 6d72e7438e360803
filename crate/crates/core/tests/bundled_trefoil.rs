//! Integration tests on the bundled near-ideal trefoil reconstruction.
//!
//! The bundled coefficients were produced offline by ropelength descent over
//! a symmetric trigonometric family (see the workspace `tighten` utility);
//! tolerances here are at reconstruction quality, looser than the machine
//! scales used in the unit tests.

use std::path::PathBuf;
use std::sync::LazyLock;

use thickknot::contact::{find_seed_contact, trace_contact, Branch, ContactFunction, TraceConfig};
use thickknot::curve::{biarc_interpolate, fourier_to_poly, BiarcCurve, Curve, FourierCurve};
use thickknot::thickness::{thickness, ThicknessReport};
use thickknot::CircleParam;

fn data_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/trefoil.fourier")
}

struct Ctx {
    fc: FourierCurve,
    biarc: BiarcCurve,
    report: ThicknessReport,
    cf: ContactFunction,
}

static CTX: LazyLock<Ctx> = LazyLock::new(|| {
    let fc = thickknot::io::read_fourier(&data_path()).expect("bundled trefoil data present");
    let poly = fourier_to_poly(&fc, 333).expect("sampling");
    let biarc = biarc_interpolate(&poly).expect("biarc");
    let report = thickness(&biarc).expect("thickness");
    let cf = trace_contact(&biarc, report.delta, TraceConfig::default()).expect("trace");
    Ctx {
        fc,
        biarc,
        report,
        cf,
    }
});

#[test]
fn data_is_unit_arclength_and_thick() {
    let ctx = &CTX;
    assert!((ctx.fc.arclength() - 1.0).abs() < 1e-9);
    // reconstruction quality: within one percent of the reference scale
    assert!(
        (ctx.report.delta - 0.03054).abs() < 3e-4,
        "delta {}",
        ctx.report.delta
    );
}

#[test]
fn curvature_does_not_undercut_contact() {
    // thickness comes from the doubly-critical branch; curvature stays above
    let ctx = &CTX;
    let r_min = ctx.report.local_radius_min.unwrap();
    let dh = ctx.report.dcsd_half.unwrap();
    assert!(
        r_min >= dh * (1.0 - 1e-9),
        "r_min {r_min} vs dcsd/2 {dh}"
    );
    assert_eq!(ctx.report.delta, dh.min(r_min));
}

#[test]
fn seed_sits_at_twice_thickness() {
    let ctx = &CTX;
    let seed = find_seed_contact(&ctx.biarc, ctx.report.delta)
        .unwrap()
        .expect("valley exists");
    assert!(
        (seed.pp - 2.0 * ctx.report.delta).abs() < 1e-6,
        "seed pp {} vs {}",
        seed.pp,
        2.0 * ctx.report.delta
    );
}

#[test]
fn sigma_starts_near_half() {
    let ctx = &CTX;
    let s1 = ctx.cf.sigma(CircleParam::new(0.0)).value();
    assert!((s1 - 0.492).abs() < 0.01, "sigma(0) = {s1}");
    let t1 = ctx.cf.tau(CircleParam::new(0.0)).value();
    assert!((t1 - 0.508).abs() < 0.01, "tau(0) = {t1}");
}

#[test]
fn sigma_commutes_with_third_rotation() {
    let ctx = &CTX;
    let mut worst = 0.0f64;
    for k in 0..512 {
        let t = CircleParam::new(k as f64 / 512.0);
        let lhs = ctx.cf.sigma(t.shift(1.0 / 3.0));
        let rhs = ctx.cf.sigma(t).shift(1.0 / 3.0);
        worst = worst.max(lhs.dist(rhs));
    }
    assert!(worst < 2e-3, "shift identity residual {worst}");
}

#[test]
fn tau_branch_traces_the_mirror_valley() {
    let ctx = &CTX;
    let cf_tau = trace_contact(
        &ctx.biarc,
        ctx.report.delta,
        TraceConfig {
            branch: Branch::Tau,
            ..TraceConfig::default()
        },
    )
    .unwrap();
    let mut worst = 0.0f64;
    for k in 0..256 {
        let t = CircleParam::new(k as f64 / 256.0);
        worst = worst.max(cf_tau.sigma(t).dist(ctx.cf.tau(t)));
    }
    assert!(worst < 2e-3, "tau trace vs inverse residual {worst}");
}

#[test]
fn contact_floor_is_flat_at_twice_delta() {
    // |pp(s_i, sigma_i) - 2Δ| stays at the reconstruction scale everywhere
    let ctx = &CTX;
    let n = ctx.cf.samples();
    let mut worst = 0.0f64;
    for i in 0..n {
        let s = CircleParam::new(i as f64 / n as f64);
        let t = ctx.cf.sigma(s);
        let pp = (ctx.biarc.point(s) - ctx.biarc.point(t)).norm();
        worst = worst.max((pp - 2.0 * ctx.report.delta).abs());
    }
    assert!(worst < 1e-3, "contact floor deviation {worst}");
}

#[test]
fn window_halving_is_stable_on_near_ideal_data() {
    let ctx = &CTX;
    let cf2 = trace_contact(
        &ctx.biarc,
        ctx.report.delta,
        TraceConfig {
            window: 0.01,
            ..TraceConfig::default()
        },
    )
    .unwrap();
    let worst = ctx
        .cf
        .breakpoints()
        .iter()
        .zip(cf2.breakpoints())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(worst < 1e-6, "window sensitivity {worst}");
}

#[test]
fn chords_rotate_into_each_other() {
    // chord at s and chord at s + 1/3 are congruent under the 120° rotation
    let ctx = &CTX;
    let frame = thickknot::symmetry::detect_frame(&ctx.biarc).unwrap();
    let axis = nalgebra_axis(&frame);
    for k in 0..7 {
        let s = CircleParam::new(k as f64 * 0.131);
        let a = thickknot::contact::contact_chord(&ctx.biarc, s, &ctx.cf).unwrap();
        let b =
            thickknot::contact::contact_chord(&ctx.biarc, s.shift(1.0 / 3.0), &ctx.cf).unwrap();
        assert!((a.length - b.length).abs() < 1e-3);
        // rotate chord a's endpoints by ±120° about the detected axis and
        // compare with chord b
        let rot = best_third_rotation(&ctx.biarc, &frame, axis);
        let center = frame.center_point();
        let map = |p: [f64; 3]| {
            let v = nalgebra::Vector3::from(p) - center.coords;
            rot * v + center.coords
        };
        let d_start = (map(a.start) - nalgebra::Vector3::from(b.start)).norm();
        let d_end = (map(a.end) - nalgebra::Vector3::from(b.end)).norm();
        assert!(
            d_start < 1e-3 && d_end < 1e-3,
            "chord congruence residuals {d_start} {d_end}"
        );
    }
}

fn nalgebra_axis(frame: &thickknot::symmetry::SymmetryFrame) -> nalgebra::Unit<nalgebra::Vector3<f64>> {
    nalgebra::Unit::new_normalize(frame.c3_axis_vec())
}

fn best_third_rotation(
    curve: &BiarcCurve,
    frame: &thickknot::symmetry::SymmetryFrame,
    axis: nalgebra::Unit<nalgebra::Vector3<f64>>,
) -> nalgebra::Rotation3<f64> {
    let center = frame.center_point();
    let base = 2.0 * std::f64::consts::PI / 3.0;
    let probe = |angle: f64| {
        let rot = nalgebra::Rotation3::from_axis_angle(&axis, angle);
        (0..32)
            .map(|k| {
                let t = CircleParam::new(k as f64 / 32.0);
                let x = curve.point(t).coords - center.coords;
                let y = curve.point(t.shift(1.0 / 3.0)).coords - center.coords;
                (rot * x - y).norm()
            })
            .fold(0.0f64, f64::max)
    };
    let angle = if probe(base) <= probe(-base) { base } else { -base };
    nalgebra::Rotation3::from_axis_angle(&axis, angle)
}
