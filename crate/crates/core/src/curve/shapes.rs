//! Analytic test shapes as Fourier curves.

use crate::curve::FourierCurve;
use crate::Vector3;

/// Planar circle of radius `r` in the xy-plane, centered at the origin.
pub fn circle(r: f64) -> FourierCurve {
    FourierCurve::new(
        Vector3::zeros(),
        vec![Vector3::new(r, 0.0, 0.0)],
        vec![Vector3::new(0.0, r, 0.0)],
    )
    .expect("circle coefficients are valid")
}

/// Planar ellipse with semi-axes `a`, `b` in the xy-plane.
pub fn ellipse(a: f64, b: f64) -> FourierCurve {
    FourierCurve::new(
        Vector3::zeros(),
        vec![Vector3::new(a, 0.0, 0.0)],
        vec![Vector3::new(0.0, b, 0.0)],
    )
    .expect("ellipse coefficients are valid")
}

/// The standard trefoil parameterization
/// `((2+cos 3θ)cos 2θ, (2+cos 3θ)sin 2θ, sin 3θ)` with `θ = 2πt`.
pub fn standard_trefoil() -> FourierCurve {
    // (2+cos 3θ)cos 2θ = 2cos 2θ + (cos 5θ + cos θ)/2
    // (2+cos 3θ)sin 2θ = 2sin 2θ + (sin 5θ - sin θ)/2
    let mut cos = vec![Vector3::zeros(); 5];
    let mut sin = vec![Vector3::zeros(); 5];
    cos[0] = Vector3::new(0.5, 0.0, 0.0);
    sin[0] = Vector3::new(0.0, -0.5, 0.0);
    cos[1] = Vector3::new(2.0, 0.0, 0.0);
    sin[1] = Vector3::new(0.0, 2.0, 0.0);
    sin[2] = Vector3::new(0.0, 0.0, 1.0);
    cos[4] = Vector3::new(0.5, 0.0, 0.0);
    sin[4] = Vector3::new(0.0, 0.5, 0.0);
    FourierCurve::new(Vector3::zeros(), cos, sin).expect("trefoil coefficients are valid")
}

/// Planar two-harmonic curve `(cos θ + 0.3 cos 2θ, sin θ + 0.3 sin 2θ, 0)`;
/// embedded and non-convex.
pub fn two_harmonic_planar() -> FourierCurve {
    FourierCurve::new(
        Vector3::zeros(),
        vec![Vector3::new(1.0, 0.0, 0.0), Vector3::new(0.3, 0.0, 0.0)],
        vec![Vector3::new(0.0, 1.0, 0.0), Vector3::new(0.0, 0.3, 0.0)],
    )
    .expect("two-harmonic coefficients are valid")
}

/// Unit circle with a three-period vertical wave, `(cos θ, sin θ, 0.3 sin 3θ)`.
pub fn wavy_circle() -> FourierCurve {
    FourierCurve::new(
        Vector3::zeros(),
        vec![
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::zeros(),
            Vector3::zeros(),
        ],
        vec![
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::zeros(),
            Vector3::new(0.0, 0.0, 0.3),
        ],
    )
    .expect("wavy circle coefficients are valid")
}

/// Planar peanut with a single obvious waist at `x = 0`:
/// `x = 2cos θ, y = sin θ (0.2 + 0.8 cos²θ)`. The waist chord joins
/// `(0, ±0.2)` with horizontal tangents at both ends.
pub fn two_bump() -> FourierCurve {
    // y = sin θ (0.2 + 0.8cos²θ) = 0.4 sin θ + 0.2 sin 3θ
    FourierCurve::new(
        Vector3::zeros(),
        vec![
            Vector3::new(2.0, 0.0, 0.0),
            Vector3::zeros(),
            Vector3::zeros(),
        ],
        vec![
            Vector3::new(0.0, 0.4, 0.0),
            Vector3::zeros(),
            Vector3::new(0.0, 0.2, 0.0),
        ],
    )
    .expect("two-bump coefficients are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::{CircleParam, Point3};

    #[test]
    fn trefoil_matches_closed_form() {
        let tre = standard_trefoil();
        for k in 0..50 {
            let t = k as f64 / 50.0;
            let theta = 2.0 * std::f64::consts::PI * t;
            let expected = Point3::new(
                (2.0 + (3.0 * theta).cos()) * (2.0 * theta).cos(),
                (2.0 + (3.0 * theta).cos()) * (2.0 * theta).sin(),
                (3.0 * theta).sin(),
            );
            let got = tre.point(CircleParam::new(t));
            assert!((got - expected).norm() < 1e-12, "mismatch at t={t}");
        }
    }

    #[test]
    fn two_bump_has_waist_on_y_axis() {
        let tb = two_bump();
        let top = tb.point(CircleParam::new(0.25));
        let bottom = tb.point(CircleParam::new(0.75));
        assert!(top.x.abs() < 1e-12 && bottom.x.abs() < 1e-12);
        assert!((top.y - 0.2).abs() < 1e-12);
        assert!((bottom.y + 0.2).abs() < 1e-12);
        // horizontal tangents at the waist ends
        let tan = tb.tangent(CircleParam::new(0.25)).unwrap();
        assert!(tan.y.abs() < 1e-12);
    }
}
