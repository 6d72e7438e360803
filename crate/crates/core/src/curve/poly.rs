//! Closed polyline with unit tangents at the nodes.

use crate::curve::Curve;
use crate::thickness::circumradius;
use crate::{CircleParam, Error, Point3, Result, Vector3};

/// One sample of a closed curve: parameter, position and unit tangent.
#[derive(Debug, Clone, Copy)]
pub struct CurveNode {
    pub param: CircleParam,
    pub point: Point3,
    pub tangent: Vector3,
}

/// A closed curve given by point-tangent samples.
///
/// Positions interpolate linearly between nodes, tangents by normalized
/// spherical interpolation. Precision-critical queries should go through a
/// [`super::BiarcCurve`] built from the same samples.
#[derive(Debug, Clone)]
pub struct PolyCurve {
    nodes: Vec<CurveNode>,
    /// Cumulative chord length, `chord_cum[i]` up to node `i`; last entry is
    /// the full chord length of the closed polygon.
    chord_cum: Vec<f64>,
    /// Total arclength of the represented curve. Equals the chord total for
    /// curves built from raw samples; resampling keeps the source value.
    arclength: f64,
    constant_speed: bool,
}

const UNIT_TANGENT_TOL: f64 = 1e-9;
const CONSTANT_SPEED_TOL: f64 = 1e-6;

impl PolyCurve {
    /// Builds a closed polyline from validated nodes.
    ///
    /// Requires at least 3 nodes, strictly increasing parameters starting at
    /// 0, finite coordinates and unit tangents within `1e-9`.
    pub fn new(nodes: Vec<CurveNode>) -> Result<Self> {
        let chord_cum = Self::validate(&nodes)?;
        let total = *chord_cum.last().unwrap();
        if total <= 0.0 {
            return Err(Error::DegenerateCurve(
                "polyline has zero total length".into(),
            ));
        }
        let constant_speed = Self::arc_spacing_uniform(&nodes, &chord_cum);
        Ok(PolyCurve {
            nodes,
            chord_cum,
            arclength: total,
            constant_speed,
        })
    }

    /// Same as [`PolyCurve::new`] but records `arclength` of the source
    /// curve the nodes were sampled from.
    pub fn with_arclength(nodes: Vec<CurveNode>, arclength: f64) -> Result<Self> {
        let mut poly = Self::new(nodes)?;
        if !(arclength > 0.0) || !arclength.is_finite() {
            return Err(Error::InvalidInput(format!(
                "arclength must be positive and finite, got {arclength}"
            )));
        }
        poly.arclength = arclength;
        Ok(poly)
    }

    /// Builds from points and tangents, assigning parameters proportional to
    /// cumulative chord length.
    pub fn from_points_tangents(points: Vec<Point3>, tangents: Vec<Vector3>) -> Result<Self> {
        if points.len() != tangents.len() {
            return Err(Error::InvalidInput(format!(
                "{} points but {} tangents",
                points.len(),
                tangents.len()
            )));
        }
        let n = points.len();
        if n < 3 {
            return Err(Error::DegenerateCurve(format!(
                "need at least 3 nodes, got {n}"
            )));
        }
        let mut cum = vec![0.0];
        for i in 0..n {
            let c = (points[(i + 1) % n] - points[i]).norm();
            cum.push(cum[i] + c);
        }
        let total = cum[n];
        if total <= 0.0 {
            return Err(Error::DegenerateCurve(
                "polyline has zero total length".into(),
            ));
        }
        let nodes = points
            .into_iter()
            .zip(tangents)
            .enumerate()
            .map(|(i, (point, tangent))| CurveNode {
                param: CircleParam::new(cum[i] / total),
                point,
                tangent,
            })
            .collect();
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[CurveNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Whether successive chord lengths agree within `1e-6` relative.
    pub fn is_constant_speed(&self) -> bool {
        self.constant_speed
    }

    /// Curve with reversed orientation; parameters map `t -> -t` so the node
    /// at 0 stays fixed.
    pub fn reversed(&self) -> PolyCurve {
        let n = self.nodes.len();
        let mut nodes = Vec::with_capacity(n);
        for i in 0..n {
            let src = &self.nodes[(n - i) % n];
            nodes.push(CurveNode {
                param: if i == 0 {
                    CircleParam::new(0.0)
                } else {
                    CircleParam::new(1.0 - src.param.value())
                },
                point: src.point,
                tangent: -src.tangent,
            });
        }
        PolyCurve::with_arclength(nodes, self.arclength).expect("reversal preserves validity")
    }

    fn validate(nodes: &[CurveNode]) -> Result<Vec<f64>> {
        if nodes.len() < 3 {
            return Err(Error::DegenerateCurve(format!(
                "need at least 3 nodes, got {}",
                nodes.len()
            )));
        }
        if nodes[0].param.value() != 0.0 {
            return Err(Error::InvalidInput(format!(
                "first node parameter must be 0, got {}",
                nodes[0].param
            )));
        }
        let mut chord_cum = Vec::with_capacity(nodes.len() + 1);
        chord_cum.push(0.0);
        for (i, node) in nodes.iter().enumerate() {
            if !node.point.coords.iter().all(|c| c.is_finite())
                || !node.tangent.iter().all(|c| c.is_finite())
            {
                return Err(Error::InvalidInput(format!(
                    "non-finite coordinates at node {i}"
                )));
            }
            if (node.tangent.norm() - 1.0).abs() > UNIT_TANGENT_TOL {
                return Err(Error::InvalidInput(format!(
                    "tangent at node {i} has norm {}",
                    node.tangent.norm()
                )));
            }
            if i > 0 && node.param.value() <= nodes[i - 1].param.value() {
                return Err(Error::InvalidInput(format!(
                    "parameters must increase strictly, node {i}"
                )));
            }
            let next = &nodes[(i + 1) % nodes.len()];
            chord_cum.push(chord_cum[i] + (next.point - node.point).norm());
        }
        Ok(chord_cum)
    }

    /// Uniformity of the node spacing, measured by chords corrected for the
    /// curvature bias: an arc turning by θ has length `chord·(θ/2)/sin(θ/2)`,
    /// so the corrected chords estimate arc spacing to O(θ⁴).
    fn arc_spacing_uniform(nodes: &[CurveNode], chord_cum: &[f64]) -> bool {
        let n = nodes.len();
        let mut arcs = Vec::with_capacity(n);
        for i in 0..n {
            let chord = chord_cum[i + 1] - chord_cum[i];
            let dot = nodes[i]
                .tangent
                .dot(&nodes[(i + 1) % n].tangent)
                .clamp(-1.0, 1.0);
            let theta = dot.acos();
            let half = 0.5 * theta;
            let factor = if half > 1e-8 { half / half.sin() } else { 1.0 };
            arcs.push(chord * factor);
        }
        let mean = arcs.iter().sum::<f64>() / n as f64;
        if mean <= 0.0 {
            return false;
        }
        arcs.iter()
            .all(|a| (a - mean).abs() <= CONSTANT_SPEED_TOL * mean)
    }

    /// Index of the segment containing `t` and the local fraction inside it.
    fn locate(&self, t: CircleParam) -> (usize, f64) {
        let v = t.value();
        let n = self.nodes.len();
        // partition_point gives the first node with param > v
        let i = self.nodes.partition_point(|nd| nd.param.value() <= v) - 1;
        let lo = self.nodes[i].param.value();
        let hi = if i + 1 == n {
            1.0
        } else {
            self.nodes[i + 1].param.value()
        };
        let u = if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
        (i, u)
    }
}

impl Curve for PolyCurve {
    fn point(&self, t: CircleParam) -> Point3 {
        let (i, u) = self.locate(t);
        let a = self.nodes[i].point;
        let b = self.nodes[(i + 1) % self.nodes.len()].point;
        a + (b - a) * u
    }

    fn tangent(&self, t: CircleParam) -> Result<Vector3> {
        let (i, u) = self.locate(t);
        let a = self.nodes[i].tangent;
        let b = self.nodes[(i + 1) % self.nodes.len()].tangent;
        let dot = a.dot(&b).clamp(-1.0, 1.0);
        let omega = dot.acos();
        if omega.sin() < 1e-12 {
            if dot < 0.0 {
                return Err(Error::DegenerateCurve(format!(
                    "antiparallel node tangents near parameter {t}"
                )));
            }
            let v = a + (b - a) * u;
            return Ok(v / v.norm());
        }
        let v = (a * ((1.0 - u) * omega).sin() + b * (u * omega).sin()) / omega.sin();
        Ok(v / v.norm())
    }

    fn arclength(&self) -> f64 {
        self.arclength
    }

    fn arc_up_to(&self, t: CircleParam) -> f64 {
        let (i, u) = self.locate(t);
        let chord = self.chord_cum[i] + u * (self.chord_cum[i + 1] - self.chord_cum[i]);
        // Rescale so the coordinate is consistent with the stored arclength.
        chord / self.chord_cum[self.nodes.len()] * self.arclength
    }

    fn curvature(&self, t: CircleParam) -> f64 {
        // Discrete osculating circle of the three nodes around t.
        let (i, u) = self.locate(t);
        let n = self.nodes.len();
        let mid = if u < 0.5 { i } else { (i + 1) % n };
        let a = self.nodes[(mid + n - 1) % n].point;
        let b = self.nodes[mid].point;
        let c = self.nodes[(mid + 1) % n].point;
        let r = circumradius(a, b, c);
        if r.is_infinite() || r == 0.0 {
            0.0
        } else {
            1.0 / r
        }
    }
}
