//! Trigonometric-polynomial curves.

use crate::curve::{Curve, CurveNode, PolyCurve};
use crate::{CircleParam, Error, Point3, Result, Vector3};

const TANGENT_EPS: f64 = 1e-12;

/// A closed curve given per axis by a finite cosine/sine series,
/// `γ(t) = constant + Σ_j cos_j·cos(2πjt) + sin_j·sin(2πjt)` for `j = 1..=m`.
#[derive(Debug, Clone)]
pub struct FourierCurve {
    constant: Vector3,
    cos: Vec<Vector3>,
    sin: Vec<Vector3>,
    arclength: f64,
    /// Cumulative arclength at `i / (table_len - 1)`, Simpson-accumulated.
    arc_table: Vec<f64>,
}

impl FourierCurve {
    /// Builds a curve from a constant term and per-harmonic coefficient
    /// triples. `cos` and `sin` must both hold `m >= 1` harmonics.
    pub fn new(constant: Vector3, cos: Vec<Vector3>, sin: Vec<Vector3>) -> Result<Self> {
        if cos.is_empty() || cos.len() != sin.len() {
            return Err(Error::InvalidInput(format!(
                "need m >= 1 harmonics with matching cos/sin counts, got {} and {}",
                cos.len(),
                sin.len()
            )));
        }
        let finite = |v: &Vector3| v.iter().all(|c| c.is_finite());
        if !finite(&constant) || !cos.iter().all(finite) || !sin.iter().all(finite) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        let mut curve = FourierCurve {
            constant,
            cos,
            sin,
            arclength: 0.0,
            arc_table: Vec::new(),
        };
        curve.build_arc_table();
        Ok(curve)
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len()
    }

    pub fn constant(&self) -> Vector3 {
        self.constant
    }

    pub fn cos_coeffs(&self) -> &[Vector3] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[Vector3] {
        &self.sin
    }

    /// Copy with the leading `m` harmonics only.
    pub fn truncated(&self, m: usize) -> Result<FourierCurve> {
        let m = m.min(self.cos.len());
        FourierCurve::new(
            self.constant,
            self.cos[..m].to_vec(),
            self.sin[..m].to_vec(),
        )
    }

    /// Copy scaled by `factor` about the origin.
    pub fn scaled(&self, factor: f64) -> Result<FourierCurve> {
        FourierCurve::new(
            self.constant * factor,
            self.cos.iter().map(|c| c * factor).collect(),
            self.sin.iter().map(|c| c * factor).collect(),
        )
    }

    /// First derivative with respect to `t` (not normalized).
    pub fn derivative(&self, t: CircleParam) -> Vector3 {
        let theta = 2.0 * std::f64::consts::PI * t.value();
        let mut d = Vector3::zeros();
        for (j, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let w = 2.0 * std::f64::consts::PI * (j as f64 + 1.0);
            let (s, c) = ((j as f64 + 1.0) * theta).sin_cos();
            d += (-a * s + b * c) * w;
        }
        d
    }

    /// Second derivative with respect to `t`.
    pub fn second_derivative(&self, t: CircleParam) -> Vector3 {
        let theta = 2.0 * std::f64::consts::PI * t.value();
        let mut d = Vector3::zeros();
        for (j, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let w = 2.0 * std::f64::consts::PI * (j as f64 + 1.0);
            let (s, c) = ((j as f64 + 1.0) * theta).sin_cos();
            d += -(a * c + b * s) * w * w;
        }
        d
    }

    fn speed(&self, t: f64) -> f64 {
        self.derivative(CircleParam::new(t)).norm()
    }

    fn build_arc_table(&mut self) {
        // Simpson per cell keeps the cumulative coordinate accurate even for
        // strongly non-uniform parameterizations.
        let cells = (4096usize).max(128 * self.cos.len());
        let h = 1.0 / cells as f64;
        let mut table = Vec::with_capacity(cells + 1);
        table.push(0.0);
        let mut acc = 0.0;
        let mut f0 = self.speed(0.0);
        for i in 0..cells {
            let a = i as f64 * h;
            let fm = self.speed(a + 0.5 * h);
            let f1 = self.speed(a + h);
            acc += h / 6.0 * (f0 + 4.0 * fm + f1);
            table.push(acc);
            f0 = f1;
        }
        self.arclength = acc;
        self.arc_table = table;
    }

    /// Parameter at which the traversed arclength reaches `target`.
    pub fn param_at_arclength(&self, target: f64) -> CircleParam {
        let total = self.arclength;
        if total <= 0.0 {
            return CircleParam::new(0.0);
        }
        let target = target.clamp(0.0, total);
        let cells = self.arc_table.len() - 1;
        let h = 1.0 / cells as f64;
        let i = self
            .arc_table
            .partition_point(|&s| s <= target)
            .saturating_sub(1)
            .min(cells - 1);
        // linear seed inside the cell, then Newton on the local Simpson
        // integral so the inversion does not inherit interpolation error
        let s0 = self.arc_table[i];
        let s1 = self.arc_table[i + 1];
        let a = i as f64 * h;
        let mut u = if s1 > s0 {
            a + h * (target - s0) / (s1 - s0)
        } else {
            a
        };
        for _ in 0..3 {
            let local = crate::numeric::simpson(|x| self.speed(x), a, u, 8);
            let sp = self.speed(u);
            if sp <= 0.0 {
                break;
            }
            u -= (s0 + local - target) / sp;
            u = u.clamp(a, a + h);
        }
        CircleParam::new(u)
    }
}

impl Curve for FourierCurve {
    fn point(&self, t: CircleParam) -> Point3 {
        let theta = 2.0 * std::f64::consts::PI * t.value();
        let mut p = self.constant;
        for (j, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let (s, c) = ((j as f64 + 1.0) * theta).sin_cos();
            p += a * c + b * s;
        }
        Point3::from(p)
    }

    fn tangent(&self, t: CircleParam) -> Result<Vector3> {
        let d = self.derivative(t);
        let n = d.norm();
        if n < TANGENT_EPS {
            return Err(Error::DegenerateCurve(format!(
                "vanishing derivative at parameter {t}"
            )));
        }
        Ok(d / n)
    }

    fn arclength(&self) -> f64 {
        self.arclength
    }

    fn arc_up_to(&self, t: CircleParam) -> f64 {
        let cells = self.arc_table.len() - 1;
        let h = 1.0 / cells as f64;
        let v = t.value();
        let i = ((v / h) as usize).min(cells - 1);
        let a = i as f64 * h;
        self.arc_table[i] + crate::numeric::simpson(|x| self.speed(x), a, v.max(a), 8)
    }

    fn curvature(&self, t: CircleParam) -> f64 {
        let d1 = self.derivative(t);
        let d2 = self.second_derivative(t);
        let n1 = d1.norm();
        if n1 < TANGENT_EPS {
            return 0.0;
        }
        d1.cross(&d2).norm() / (n1 * n1 * n1)
    }
}

/// Samples a [`FourierCurve`] into `n` constant-speed nodes with exact
/// analytic tangents.
pub fn fourier_to_poly(fc: &FourierCurve, n: usize) -> Result<PolyCurve> {
    if n < 8 {
        return Err(Error::InvalidInput(format!(
            "constant-speed sampling needs n >= 8, got {n}"
        )));
    }
    let total = fc.arclength();
    if total <= 0.0 {
        return Err(Error::DegenerateCurve(
            "curve has zero arclength".into(),
        ));
    }
    let mut nodes = Vec::with_capacity(n);
    for k in 0..n {
        let t = fc.param_at_arclength(total * k as f64 / n as f64);
        nodes.push(CurveNode {
            param: CircleParam::new(k as f64 / n as f64),
            point: fc.point(t),
            tangent: fc.tangent(t)?,
        });
    }
    PolyCurve::with_arclength(nodes, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::shapes;

    #[test]
    fn single_harmonic_is_circle() {
        let c = shapes::circle(1.0);
        let p = c.point(CircleParam::new(0.25));
        assert!((p - Point3::new(0.0, 1.0, 0.0)).norm() < 1e-12);
        assert!((c.arclength() - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        for k in 0..32 {
            let t = CircleParam::new(k as f64 / 32.0);
            assert!((c.curvature(t) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn evaluation_matches_cos_sin_basis() {
        // x-axis cosine and y-axis sine in the first harmonic, plus an offset
        let fc = FourierCurve::new(
            Vector3::new(0.5, 0.0, 0.0),
            vec![Vector3::new(1.0, 0.0, 0.0)],
            vec![Vector3::new(0.0, 1.0, 0.0)],
        )
        .unwrap();
        let p0 = fc.point(CircleParam::new(0.0));
        assert!((p0 - Point3::new(1.5, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let tre = shapes::standard_trefoil();
        let t = 0.3;
        let h = 1e-6;
        let fd = (tre.point(CircleParam::new(t + h)) - tre.point(CircleParam::new(t - h)))
            / (2.0 * h);
        let an = tre.derivative(CircleParam::new(t));
        assert!(
            (fd - an).norm() / an.norm() < 1e-8,
            "fd {:?} vs analytic {:?}",
            fd,
            an
        );
        let tan = tre.tangent(CircleParam::new(t)).unwrap();
        assert!((tan.norm() - 1.0).abs() < 1e-12);
        assert!((tan - an / an.norm()).norm() < 1e-9);
    }

    #[test]
    fn curvature_matches_tangent_differencing() {
        let tre = shapes::standard_trefoil();
        for k in 0..20 {
            let t = (k as f64 + 0.37) / 20.0;
            let h = 1e-6;
            let t1 = tre.tangent(CircleParam::new(t + h)).unwrap();
            let t0 = tre.tangent(CircleParam::new(t - h)).unwrap();
            let speed = tre.derivative(CircleParam::new(t)).norm();
            // |dT/ds| via chain rule
            let fd = (t1 - t0).norm() / (2.0 * h) / speed;
            let an = tre.curvature(CircleParam::new(t));
            assert!(
                (fd - an).abs() / an.max(1e-12) < 1e-4,
                "t={t}: fd {fd} vs analytic {an}"
            );
        }
    }

    #[test]
    fn constant_only_curve_cannot_be_sampled() {
        let fc = FourierCurve::new(
            Vector3::new(1.0, 2.0, 3.0),
            vec![Vector3::zeros()],
            vec![Vector3::zeros()],
        )
        .unwrap();
        assert!(fourier_to_poly(&fc, 64).is_err());
    }

    #[test]
    fn planar_single_harmonic_sampling_matches_circle() {
        let fc = shapes::circle(1.0);
        let poly = fourier_to_poly(&fc, 128).unwrap();
        for node in poly.nodes() {
            assert!((node.point.coords.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn arclength_converges_under_harmonic_refinement() {
        // adding harmonics back one by one approaches the full arclength
        let tre = shapes::standard_trefoil();
        let full = tre.arclength();
        let mut prev_err = f64::INFINITY;
        for m in [2usize, 3, 5] {
            let part = tre.truncated(m).unwrap();
            let err = (part.arclength() - full).abs();
            assert!(
                err <= prev_err + 1e-12,
                "arclength error grew at m={m}: {err} vs {prev_err}"
            );
            prev_err = err;
        }
        assert!(prev_err < 1e-9);
    }
}
