//! Biarc interpolation of point-tangent data.
//!
//! Each pair of consecutive samples is joined by two circular arcs meeting
//! tangent-continuously at a matching point. The matching point is chosen on
//! the perpendicular bisector plane of the chord (equal tangent-angle split),
//! which reproduces circles exactly.

use crate::curve::{Curve, PolyCurve};
use crate::{CircleParam, Error, Point3, Result, Vector3};

/// Tangent/chord cross products below this are treated as straight pieces.
const STRAIGHT_EPS: f64 = 1e-12;

/// A single circular arc (or straight segment) with explicit endpoint frames.
#[derive(Debug, Clone)]
pub struct ArcSegment {
    start: Point3,
    end: Point3,
    start_tangent: Vector3,
    end_tangent: Vector3,
    /// Circle center; unused for straight segments.
    center: Point3,
    /// Unit rotation axis; unused for straight segments.
    axis: Vector3,
    /// Arc radius, `f64::INFINITY` for straight segments.
    radius: f64,
    /// Subtended angle, 0 for straight segments.
    angle: f64,
    length: f64,
}

impl ArcSegment {
    /// The unique arc from `start` with tangent `tangent` through `end`.
    ///
    /// Falls back to a straight segment when `end` lies on the tangent ray.
    /// Fails when `end` lies behind the tangent ray (the arc would close a
    /// full turn) or coincides with `start`.
    pub fn from_point_tangent_point(start: Point3, tangent: Vector3, end: Point3) -> Result<Self> {
        let chord = end - start;
        let h = chord.norm();
        if h == 0.0 {
            return Err(Error::DegenerateCurve(
                "arc endpoints coincide".into(),
            ));
        }
        let w = chord / h;
        let cross = tangent.cross(&w);
        let sin_phi = cross.norm();
        let cos_phi = tangent.dot(&w);
        if sin_phi < STRAIGHT_EPS {
            if cos_phi < 0.0 {
                return Err(Error::DegenerateCurve(
                    "arc endpoint behind the start tangent".into(),
                ));
            }
            return Ok(ArcSegment {
                start,
                end,
                start_tangent: tangent,
                end_tangent: tangent,
                center: start,
                axis: Vector3::zeros(),
                radius: f64::INFINITY,
                angle: 0.0,
                length: h,
            });
        }
        let phi = sin_phi.atan2(cos_phi);
        let radius = h / (2.0 * sin_phi);
        let angle = 2.0 * phi;
        // in-plane normal at `start` pointing at the center
        let toward_center = (w - tangent * cos_phi) / sin_phi;
        let center = start + toward_center * radius;
        let axis = cross / sin_phi;
        // end tangent is the start tangent reflected through the chord
        let end_tangent = w * (2.0 * cos_phi) - tangent;
        Ok(ArcSegment {
            start,
            end,
            start_tangent: tangent,
            end_tangent,
            center,
            axis,
            radius,
            angle,
            length: radius * angle,
        })
    }

    pub fn start(&self) -> Point3 {
        self.start
    }

    pub fn end(&self) -> Point3 {
        self.end
    }

    pub fn start_tangent(&self) -> Vector3 {
        self.start_tangent
    }

    pub fn end_tangent(&self) -> Vector3 {
        self.end_tangent
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_straight(&self) -> bool {
        self.radius.is_infinite()
    }

    /// Curvature of the segment (0 for straight pieces).
    pub fn curvature(&self) -> f64 {
        if self.is_straight() {
            0.0
        } else {
            1.0 / self.radius
        }
    }

    /// Point at arclength fraction `f` in `[0, 1]`.
    pub fn point_at(&self, f: f64) -> Point3 {
        if self.is_straight() {
            return self.start + (self.end - self.start) * f;
        }
        let theta = f * self.angle;
        self.center + rodrigues(self.start - self.center, self.axis, theta)
    }

    /// Unit tangent at arclength fraction `f` in `[0, 1]`.
    pub fn tangent_at(&self, f: f64) -> Vector3 {
        if self.is_straight() {
            return self.start_tangent;
        }
        let theta = f * self.angle;
        rodrigues(self.start_tangent, self.axis, theta)
    }
}

#[inline]
fn rodrigues(v: Vector3, axis: Vector3, theta: f64) -> Vector3 {
    let (s, c) = theta.sin_cos();
    v * c + axis.cross(&v) * s + axis * (axis.dot(&v) * (1.0 - c))
}

/// A closed curve of circular arcs, parameterized by arclength fraction.
#[derive(Debug, Clone)]
pub struct BiarcCurve {
    segments: Vec<ArcSegment>,
    /// Cumulative arclength, `cum[i]` up to segment `i`; last entry = total.
    cum: Vec<f64>,
    total: f64,
    /// Parameters of the original data nodes (every second junction).
    node_params: Vec<CircleParam>,
}

impl BiarcCurve {
    fn from_segments(segments: Vec<ArcSegment>, nodes_every: usize) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::DegenerateCurve("no arc segments".into()));
        }
        let mut cum = Vec::with_capacity(segments.len() + 1);
        cum.push(0.0);
        for (i, seg) in segments.iter().enumerate() {
            cum.push(cum[i] + seg.length());
        }
        let total = *cum.last().unwrap();
        if !(total > 0.0) {
            return Err(Error::DegenerateCurve("zero total arclength".into()));
        }
        let node_params = (0..segments.len())
            .step_by(nodes_every)
            .map(|i| CircleParam::new(cum[i] / total))
            .collect();
        Ok(BiarcCurve {
            segments,
            cum,
            total,
            node_params,
        })
    }

    pub fn segments(&self) -> &[ArcSegment] {
        &self.segments
    }

    /// Parameters (arclength fractions) of the interpolated data nodes.
    pub fn node_params(&self) -> &[CircleParam] {
        &self.node_params
    }

    /// Smallest arc radius over all segments.
    pub fn min_radius(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.radius())
            .fold(f64::INFINITY, f64::min)
    }

    /// Parameter at the smallest arc radius (midpoint of the tightest arc).
    pub fn min_radius_param(&self) -> CircleParam {
        let mut best = (f64::INFINITY, 0usize);
        for (i, s) in self.segments.iter().enumerate() {
            if s.radius() < best.0 {
                best = (s.radius(), i);
            }
        }
        CircleParam::new((self.cum[best.1] + 0.5 * self.segments[best.1].length()) / self.total)
    }

    /// Largest tangent mismatch angle (radians) over all junctions.
    pub fn g1_residual(&self) -> f64 {
        let n = self.segments.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            let a = self.segments[i].end_tangent();
            let b = self.segments[(i + 1) % n].start_tangent();
            let angle = a.cross(&b).norm().atan2(a.dot(&b));
            worst = worst.max(angle.abs());
        }
        worst
    }

    fn locate(&self, t: CircleParam) -> (usize, f64) {
        let s = t.value() * self.total;
        let n = self.segments.len();
        let i = (self.cum.partition_point(|&c| c <= s) - 1).min(n - 1);
        let len = self.segments[i].length();
        let f = if len > 0.0 { (s - self.cum[i]) / len } else { 0.0 };
        (i, f.clamp(0.0, 1.0))
    }
}

impl Curve for BiarcCurve {
    fn point(&self, t: CircleParam) -> Point3 {
        let (i, f) = self.locate(t);
        self.segments[i].point_at(f)
    }

    fn tangent(&self, t: CircleParam) -> Result<Vector3> {
        let (i, f) = self.locate(t);
        Ok(self.segments[i].tangent_at(f))
    }

    fn arclength(&self) -> f64 {
        self.total
    }

    fn arc_up_to(&self, t: CircleParam) -> f64 {
        t.value() * self.total
    }

    fn curvature(&self, t: CircleParam) -> f64 {
        let (i, _) = self.locate(t);
        self.segments[i].curvature()
    }
}

/// Interpolates closed point-tangent data with biarcs.
///
/// Every consecutive node pair contributes two arc segments, so `n` nodes
/// yield `2n` segments. Fails with the offending node index on coincident
/// points or tangent/chord degeneracies.
pub fn biarc_interpolate(data: &PolyCurve) -> Result<BiarcCurve> {
    let nodes = data.nodes();
    let n = nodes.len();
    let mut segments = Vec::with_capacity(2 * n);
    for i in 0..n {
        let a = &nodes[i];
        let b = &nodes[(i + 1) % n];
        let (m, tm) = matching_point(a.point, a.tangent, b.point, b.tangent)
            .map_err(|reason| Error::Biarc { node: i, reason })?;
        let arc1 = ArcSegment::from_point_tangent_point(a.point, a.tangent, m)
            .map_err(|e| Error::Biarc {
                node: i,
                reason: e.to_string(),
            })?;
        let arc2 = ArcSegment::from_point_tangent_point(m, tm, b.point).map_err(|e| {
            Error::Biarc {
                node: i,
                reason: e.to_string(),
            }
        })?;
        segments.push(arc1);
        segments.push(arc2);
    }
    BiarcCurve::from_segments(segments, 2)
}

/// Matching point and its tangent for the biarc joining `(p0, t0)` to
/// `(p1, t1)`, chosen on the perpendicular bisector plane of the chord.
///
/// The biarc family is parameterized by the tangent-segment lengths
/// `(d0, d1)` with control points `q0 = p0 + d0 t0`, `q1 = p1 - d1 t1`; the
/// junction lies on `q0 q1` with `|q0 q1| = d0 + d1`. That constraint makes
/// `d1` a rational function of `d0`, and the bisector-plane condition fixes
/// `d0` by a 1-D root find.
fn matching_point(
    p0: Point3,
    t0: Vector3,
    p1: Point3,
    t1: Vector3,
) -> std::result::Result<(Point3, Vector3), String> {
    let v = p1 - p0;
    let vv = v.norm_squared();
    if vv == 0.0 {
        return Err("coincident consecutive points".into());
    }
    let h = vv.sqrt();
    let w = v / h;
    let c00 = t0.dot(&w);
    let c11 = t1.dot(&w);
    let c01 = t0.dot(&t1);

    // Fully collinear data: a straight double segment.
    if t0.cross(&w).norm() < STRAIGHT_EPS && t1.cross(&w).norm() < STRAIGHT_EPS {
        if c00 < 0.0 || c11 < 0.0 {
            return Err("tangent antiparallel to the chord".into());
        }
        let m = p0 + v * 0.5;
        return Ok((m, t0));
    }
    if c00 <= -1.0 + 1e-9 || c11 <= -1.0 + 1e-9 {
        return Err("tangent antiparallel to the chord".into());
    }

    let d1_of = |d0: f64| -> Option<f64> {
        let denom = 2.0 * v.dot(&t1) + 2.0 * d0 * (1.0 - c01);
        if denom.abs() < 1e-300 {
            return None;
        }
        let d1 = (vv - 2.0 * d0 * v.dot(&t0)) / denom;
        (d1 > 0.0).then_some(d1)
    };
    let junction = |d0: f64, d1: f64| -> (Point3, Vector3) {
        let q0 = p0 + t0 * d0;
        let q1 = p1 - t1 * d1;
        let u = (q1 - q0) / (d0 + d1);
        (q0 + u * d0, u)
    };
    // signed distance of the junction from the bisector plane
    let g = |d0: f64, d1: f64| -> f64 {
        let (m, _) = junction(d0, d1);
        (m - p0).norm_squared() - (m - p1).norm_squared()
    };

    // Bracket the root over a generous log-spaced range of d0.
    let mut lo: Option<(f64, f64)> = None;
    let mut hi: Option<(f64, f64)> = None;
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=160 {
        let d0 = h * 10f64.powf(-4.0 + 6.0 * k as f64 / 160.0);
        let Some(d1) = d1_of(d0) else {
            prev = None;
            continue;
        };
        let val = g(d0, d1);
        if val == 0.0 {
            let (m, u) = junction(d0, d1);
            return Ok((m, u));
        }
        if let Some((pd, pv)) = prev {
            if pv < 0.0 && val > 0.0 {
                lo = Some((pd, pv));
                hi = Some((d0, val));
                break;
            }
        }
        prev = Some((d0, val));
    }
    let (Some((mut a, _)), Some((mut b, _))) = (lo, hi) else {
        return Err("no bisector-plane matching point found".into());
    };
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let Some(d1) = d1_of(mid) else {
            return Err("matching-point family degenerated during bisection".into());
        };
        let val = g(mid, d1);
        if val < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        if (b - a) <= 1e-16 * h.max(1.0) {
            break;
        }
    }
    let d0 = 0.5 * (a + b);
    let d1 = d1_of(d0).ok_or("matching-point family degenerated at the root")?;
    let (m, u) = junction(d0, d1);
    Ok((m, u))
}
