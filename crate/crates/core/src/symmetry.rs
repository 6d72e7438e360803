//! Detection and verification of the dihedral symmetry frame of a closed
//! curve, and the identities it induces on the contact functions.

use nalgebra::{Matrix3, Rotation3, Unit};
use serde::Serialize;

use crate::contact::ContactFunction;
use crate::curve::Curve;
use crate::numeric::golden_min;
use crate::{CircleParam, Error, Point3, Result, Vector3};

/// One 120° axis, three 180° axes, and the parameter whose curve point lies
/// on a 180° axis. All axes pass through the centroid.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryFrame {
    pub center: [f64; 3],
    pub c3_axis: [f64; 3],
    pub c2_axes: [[f64; 3]; 3],
    /// Parameter with γ(s*) on the first 180° axis (outer intersection).
    pub s_star: f64,
    /// RMS point residual of the fitted symmetries.
    pub residual: f64,
}

impl SymmetryFrame {
    pub fn c3_axis_vec(&self) -> Vector3 {
        Vector3::from(self.c3_axis)
    }

    pub fn c2_axis_vec(&self, i: usize) -> Vector3 {
        Vector3::from(self.c2_axes[i])
    }

    pub fn center_point(&self) -> Point3 {
        Point3::from(Vector3::from(self.center))
    }
}

const FRAME_SAMPLES: usize = 729;
/// Detection fails above this residual relative to the curve's RMS radius.
const FRAME_REL_TOL: f64 = 0.05;

/// Uniform-arclength parameter samples.
fn arc_uniform_params(curve: &dyn Curve, m: usize) -> Vec<CircleParam> {
    let total = curve.arclength();
    (0..m)
        .map(|k| {
            let target = total * k as f64 / m as f64;
            // bisection on the monotone arclength coordinate
            let mut lo = 0.0f64;
            let mut hi = 1.0f64;
            for _ in 0..52 {
                let mid = 0.5 * (lo + hi);
                if curve.arc_up_to(CircleParam::new(mid)) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            CircleParam::new(0.5 * (lo + hi))
        })
        .collect()
}

/// Best free rotation mapping `xs` onto `ys` (both centered), by the
/// quaternion-free Kabsch construction.
fn kabsch(xs: &[Vector3], ys: &[Vector3]) -> Rotation3<f64> {
    let mut h = Matrix3::zeros();
    for (x, y) in xs.iter().zip(ys) {
        h += y * x.transpose();
    }
    let svd = h.svd(true, true);
    let u = svd.u.unwrap();
    let vt = svd.v_t.unwrap();
    let d = (u * vt).determinant();
    let s = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, d.signum()));
    Rotation3::from_matrix_unchecked(u * s * vt)
}

fn rms_residual(rot: &Rotation3<f64>, xs: &[Vector3], ys: &[Vector3]) -> f64 {
    let sum: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (rot * x - y).norm_squared())
        .sum();
    (sum / xs.len() as f64).sqrt()
}

/// Detects the dihedral frame: the 120° rotation matching a parameter shift
/// of 1/3, and a 180° rotation matching a parameter reversal.
pub fn detect_frame(curve: &dyn Curve) -> Result<SymmetryFrame> {
    let params = arc_uniform_params(curve, FRAME_SAMPLES);
    let pts: Vec<Point3> = params.iter().map(|&t| curve.point(t)).collect();
    let centroid = pts.iter().fold(Vector3::zeros(), |acc, p| acc + p.coords) / pts.len() as f64;
    let xs: Vec<Vector3> = pts.iter().map(|p| p.coords - centroid).collect();
    let size = (xs.iter().map(|x| x.norm_squared()).sum::<f64>() / xs.len() as f64).sqrt();

    // C3: shift by one third of the samples
    let third = FRAME_SAMPLES / 3;
    let ys: Vec<Vector3> = (0..FRAME_SAMPLES)
        .map(|k| xs[(k + third) % FRAME_SAMPLES])
        .collect();
    let rot3 = kabsch(&xs, &ys);
    let res3 = rms_residual(&rot3, &xs, &ys);
    if res3 > FRAME_REL_TOL * size {
        return Err(Error::NoSymmetry(format!(
            "no 120-degree symmetry: residual {res3:.3e} vs size {size:.3e}"
        )));
    }
    let (c3_axis, angle3) = rot3
        .axis_angle()
        .ok_or_else(|| Error::NoSymmetry("120-degree fit degenerated to identity".into()))?;
    if (angle3 - 2.0 * std::f64::consts::PI / 3.0).abs() > 0.1 {
        return Err(Error::NoSymmetry(format!(
            "best shift rotation has angle {angle3:.4}, expected 2π/3"
        )));
    }

    // C2: reversal about a center s*; scan candidates in [0, 1/3)
    let eval_at = |curve: &dyn Curve, t: f64| curve.point(CircleParam::new(t)).coords - centroid;
    let reversal_residual = |s_star: f64| -> f64 {
        let m = 240;
        let xs: Vec<Vector3> = (0..m)
            .map(|k| eval_at(curve, s_star + k as f64 / m as f64))
            .collect();
        let ys: Vec<Vector3> = (0..m)
            .map(|k| eval_at(curve, s_star - k as f64 / m as f64))
            .collect();
        let rot = kabsch(&xs, &ys);
        rms_residual(&rot, &xs, &ys)
    };
    let scan = 240;
    let candidates: Vec<(f64, f64)> = (0..scan)
        .map(|i| {
            let s = i as f64 / scan as f64 / 3.0;
            (s, reversal_residual(s))
        })
        .collect();
    let r_min = candidates
        .iter()
        .map(|&(_, r)| r)
        .fold(f64::INFINITY, f64::min);
    // several centers tie for an exactly symmetric shape; take the smallest
    let threshold = 4.0 * r_min + 1e-12 * size;
    let best = candidates
        .iter()
        .find(|&&(_, r)| r <= threshold)
        .copied()
        .unwrap_or((0.0, f64::INFINITY));
    let step = 1.0 / (3.0 * scan as f64);
    let (s_star_raw, res2) = golden_min(reversal_residual, best.0 - step, best.0 + step, 1e-12);
    if res2 > FRAME_REL_TOL * size {
        return Err(Error::NoSymmetry(format!(
            "no 180-degree symmetry: residual {res2:.3e} vs size {size:.3e}"
        )));
    }
    // the axis contains every reversal-fixed curve point; pick the outer one
    let fixed_a = eval_at(curve, s_star_raw);
    let fixed_b = eval_at(curve, s_star_raw + 0.5);
    let (s_star, on_axis) = if fixed_a.norm() >= fixed_b.norm() {
        (CircleParam::new(s_star_raw).value(), fixed_a)
    } else {
        (CircleParam::new(s_star_raw + 0.5).value(), fixed_b)
    };
    let axis0 = on_axis
        .try_normalize(1e-12)
        .ok_or_else(|| Error::NoSymmetry("reversal-fixed point at the centroid".into()))?;

    // companions of the first C2 axis under the C3 rotation
    let rot_c3 = Rotation3::from_axis_angle(&c3_axis, angle3);
    let axis1 = rot_c3 * axis0;
    let axis2 = rot_c3 * axis1;

    Ok(SymmetryFrame {
        center: centroid.into(),
        c3_axis: c3_axis.into_inner().into(),
        c2_axes: [axis0.into(), axis1.into(), axis2.into()],
        s_star,
        residual: res3.max(res2),
    })
}

/// Residuals of the shape symmetries on a sample grid.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeSymmetryReport {
    /// max over t of |R_{2π/3} γ(t) - γ(t + 1/3)|.
    pub c3_max_residual: f64,
    /// per 180° axis: max over t of |R_π γ(s*+t) - γ(s*-t)|.
    pub c2_max_residuals: [f64; 3],
}

/// Verifies the frame against the shape on `samples` parameters.
pub fn verify_shape_symmetry(
    curve: &dyn Curve,
    frame: &SymmetryFrame,
    samples: usize,
) -> Result<ShapeSymmetryReport> {
    let center = Vector3::from(frame.center);
    let c3 = Unit::new_normalize(frame.c3_axis_vec());
    // orientation of the 1/3 shift: pick the sign with the smaller residual
    let probe = |angle: f64| -> f64 {
        let rot = Rotation3::from_axis_angle(&c3, angle);
        (0..64)
            .map(|k| {
                let t = k as f64 / 64.0;
                let x = curve.point(CircleParam::new(t)).coords - center;
                let y = curve.point(CircleParam::new(t + 1.0 / 3.0)).coords - center;
                (rot * x - y).norm()
            })
            .fold(0.0f64, f64::max)
    };
    let base = 2.0 * std::f64::consts::PI / 3.0;
    let angle = if probe(base) <= probe(-base) { base } else { -base };
    let rot3 = Rotation3::from_axis_angle(&c3, angle);

    let mut c3_max = 0.0f64;
    for k in 0..samples {
        let t = k as f64 / samples as f64;
        let x = curve.point(CircleParam::new(t)).coords - center;
        let y = curve.point(CircleParam::new(t + 1.0 / 3.0)).coords - center;
        c3_max = c3_max.max((rot3 * x - y).norm());
    }

    let mut c2_max = [0.0f64; 3];
    for (i, out) in c2_max.iter_mut().enumerate() {
        let axis = Unit::new_normalize(frame.c2_axis_vec(i));
        let rot = Rotation3::from_axis_angle(&axis, std::f64::consts::PI);
        // reversal center for the i-th axis sits a third further along
        let s_i = frame.s_star + i as f64 / 3.0;
        let mut worst = 0.0f64;
        for k in 0..samples {
            let u = k as f64 / samples as f64;
            let x = curve.point(CircleParam::new(s_i + u)).coords - center;
            let y = curve.point(CircleParam::new(s_i - u)).coords - center;
            worst = worst.max((rot * x - y).norm());
        }
        *out = worst;
    }
    Ok(ShapeSymmetryReport {
        c3_max_residual: c3_max,
        c2_max_residuals: c2_max,
    })
}

/// Residuals of the four induced identities on σ and τ, as circle distances.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SigmaSymmetryReport {
    /// max |σ(s*+t) + τ(s*-t)| mod 1.
    pub reflect_sigma: f64,
    /// max |σ(t+1/3) - σ(t) - 1/3| mod 1.
    pub shift_sigma: f64,
    /// max |τ(s*+t) + σ(s*-t)| mod 1.
    pub reflect_tau: f64,
    /// max |τ(t+1/3) - τ(t) - 1/3| mod 1.
    pub shift_tau: f64,
}

impl SigmaSymmetryReport {
    pub fn max(&self) -> f64 {
        self.reflect_sigma
            .max(self.shift_sigma)
            .max(self.reflect_tau)
            .max(self.shift_tau)
    }
}

/// Checks the contact-function identities induced by the dihedral symmetry
/// on a grid of `grid` parameters.
pub fn verify_sigma_symmetry(
    cf: &ContactFunction,
    s_star: f64,
    grid: usize,
) -> SigmaSymmetryReport {
    let mut report = SigmaSymmetryReport {
        reflect_sigma: 0.0,
        shift_sigma: 0.0,
        reflect_tau: 0.0,
        shift_tau: 0.0,
    };
    for k in 0..grid {
        let t = k as f64 / grid as f64;
        let plus = CircleParam::new(s_star + t);
        let minus = CircleParam::new(s_star - t);
        let tc = CircleParam::new(t);

        let r1 = cf
            .sigma(plus)
            .dist(CircleParam::new(-cf.tau(minus).value()));
        let r2 = cf
            .sigma(tc.shift(1.0 / 3.0))
            .dist(cf.sigma(tc).shift(1.0 / 3.0));
        let r3 = cf
            .tau(plus)
            .dist(CircleParam::new(-cf.sigma(minus).value()));
        let r4 = cf
            .tau(tc.shift(1.0 / 3.0))
            .dist(cf.tau(tc).shift(1.0 / 3.0));
        report.reflect_sigma = report.reflect_sigma.max(r1);
        report.shift_sigma = report.shift_sigma.max(r2);
        report.reflect_tau = report.reflect_tau.max(r3);
        report.shift_tau = report.shift_tau.max(r4);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::Branch;
    use crate::curve::shapes;

    #[test]
    fn standard_trefoil_frame_is_z_and_x() {
        let tre = shapes::standard_trefoil();
        let frame = detect_frame(&tre).unwrap();
        assert!(frame.residual < 1e-9, "residual {}", frame.residual);
        let c3 = frame.c3_axis_vec();
        assert!(
            c3.z.abs() > 0.999_999,
            "c3 axis should be ±z, got {c3:?}"
        );
        // s* = 0 sits on the x-axis at the outer point (3, 0, 0)
        assert!(frame.s_star < 1e-6 || frame.s_star > 1.0 - 1e-6);
        let a0 = frame.c2_axis_vec(0);
        assert!(a0.x.abs() > 0.999_999, "first c2 axis {a0:?}");
        // c2 axes orthogonal to c3 and mutually at 60/120 degrees
        for i in 0..3 {
            let ai = frame.c2_axis_vec(i);
            assert!(ai.dot(&c3).abs() < 1e-6);
            for j in (i + 1)..3 {
                let cosang = ai.dot(&frame.c2_axis_vec(j)).abs();
                assert!((cosang - 0.5).abs() < 1e-6, "axes {i},{j}: cos {cosang}");
            }
        }
    }

    #[test]
    fn shape_residuals_vanish_for_exact_symmetry() {
        let tre = shapes::standard_trefoil();
        let frame = detect_frame(&tre).unwrap();
        let rep = verify_shape_symmetry(&tre, &frame, 512).unwrap();
        assert!(rep.c3_max_residual < 1e-9, "c3 {}", rep.c3_max_residual);
        for r in rep.c2_max_residuals {
            assert!(r < 1e-9, "c2 {r}");
        }
    }

    #[test]
    fn perturbed_curve_grows_residual() {
        // bend the trefoil asymmetrically and watch the fit degrade
        let tre = shapes::standard_trefoil();
        let mut cos = tre.cos_coeffs().to_vec();
        cos[2] += Vector3::new(0.01, 0.0, 0.0);
        let bent = crate::curve::FourierCurve::new(tre.constant(), cos, tre.sin_coeffs().to_vec())
            .unwrap();
        match detect_frame(&bent) {
            Ok(frame) => {
                assert!(frame.residual > 1e-4, "residual {}", frame.residual);
                let rep = verify_shape_symmetry(&bent, &frame, 256).unwrap();
                assert!(rep.c3_max_residual > 1e-4);
            }
            Err(Error::NoSymmetry(_)) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn asymmetric_curve_detection_fails() {
        // an ellipse has no 120-degree symmetry
        let ell = shapes::ellipse(2.0, 1.0);
        assert!(matches!(detect_frame(&ell), Err(Error::NoSymmetry(_))));
    }

    #[test]
    fn rigid_rotation_map_satisfies_identities_exactly() {
        // σ(t) = t + 1/4 with s* = 0: all four identities hold exactly
        let n = 256;
        let lift: Vec<f64> = (0..=n).map(|i| 0.25 + i as f64 / n as f64).collect();
        let cf = ContactFunction::from_lift_breakpoints(lift, Branch::Sigma).unwrap();
        let rep = verify_sigma_symmetry(&cf, 0.0, 512);
        assert!(rep.max() < 1e-12, "max residual {}", rep.max());
    }

    #[test]
    fn reflect_identities_share_residuals() {
        // a generic symmetric-ish lift: the two reflection identities test
        // the same data through inverse maps, so their maxima agree
        let n = 512;
        let lift: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                0.45 + t + 0.02 * (2.0 * std::f64::consts::PI * t).sin()
                    + 0.007 * (6.0 * std::f64::consts::PI * t).cos()
            })
            .collect();
        let cf = ContactFunction::from_lift_breakpoints(lift, Branch::Sigma).unwrap();
        let rep = verify_sigma_symmetry(&cf, 0.1, 512);
        assert!(
            (rep.reflect_sigma - rep.reflect_tau).abs() < 1e-9,
            "{} vs {}",
            rep.reflect_sigma,
            rep.reflect_tau
        );
    }
}
