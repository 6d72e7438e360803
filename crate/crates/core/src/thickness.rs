//! Global radius of curvature, thickness, doubly-critical self-distance,
//! ropelength and the pointwise A/B/C classification.
//!
//! Thickness is computed two ways: an O(n³) triple-minimum oracle
//! ([`thickness_bruteforce`]) straight from the defining infimum, and the
//! decomposed route ([`thickness`]) as the minimum of the smallest local
//! radius of curvature and half the doubly-critical self-distance. The
//! oracle stays around to validate the fast path.

use serde::Serialize;

use crate::curve::{BiarcCurve, Curve};
use crate::numeric::{golden_min, solve2};

use crate::param::circle_dist;
use crate::{scan, CircleParam, Error, Point3, Result};

/// Sine values below this are treated as collinear in [`circumradius`].
const COLLINEAR_SIN_EPS: f64 = 1e-14;

/// Radius of the smallest circle through three points.
///
/// Uses the smaller angle between `x-y` and `y-z`:
/// `R = |x-z| / (2 sin ∠(x-y, y-z))` for non-collinear points, `+∞` for
/// collinear pairwise-distinct points, and half the diameter of the point
/// set otherwise. Total on finite inputs; see [`try_circumradius`] for the
/// checked variant.
pub fn circumradius(x: Point3, y: Point3, z: Point3) -> f64 {
    if x == y || y == z || x == z {
        let d = (x - y)
            .norm()
            .max((y - z).norm())
            .max((x - z).norm());
        return d / 2.0;
    }
    let a = x - y;
    let b = y - z;
    let na = a.norm();
    let nb = b.norm();
    let sin_angle = a.cross(&b).norm() / (na * nb);
    if sin_angle < COLLINEAR_SIN_EPS {
        return f64::INFINITY;
    }
    (x - z).norm() / (2.0 * sin_angle)
}

/// [`circumradius`] with input validation: rejects non-finite coordinates.
pub fn try_circumradius(x: Point3, y: Point3, z: Point3) -> Result<f64> {
    for p in [&x, &y, &z] {
        if !p.coords.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidInput(
                "circumradius requires finite coordinates".into(),
            ));
        }
    }
    Ok(circumradius(x, y, z))
}

/// How a thickness value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThicknessMethod {
    BruteForce,
    Decomposed,
}

/// Which mechanism achieves the thickness.
#[derive(Debug, Clone, Serialize)]
pub enum Achiever {
    /// Sample triple from the brute-force scan.
    Triple { s: f64, sigma: f64, tau: f64 },
    /// Curvature is active at this parameter.
    Curvature { s: f64 },
    /// A doubly-critical pair at this parameter pair.
    Pair { s: f64, t: f64 },
}

/// Result of a thickness computation.
#[derive(Debug, Clone, Serialize)]
pub struct ThicknessReport {
    pub delta: f64,
    pub method: ThicknessMethod,
    pub achievers: Vec<Achiever>,
    /// Smallest local radius of curvature (decomposed route only).
    pub local_radius_min: Option<f64>,
    /// Half the doubly-critical self-distance (decomposed route only).
    pub dcsd_half: Option<f64>,
}

/// A doubly-critical pair: the chord is orthogonal to the curve at both ends.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DcsdPair {
    pub distance: f64,
    pub s: f64,
    pub t: f64,
    /// `|⟨γ'(s), c⟩| / |c|` at the reported pair.
    pub residual_s: f64,
    /// `|⟨γ'(t), c⟩| / |c|` at the reported pair.
    pub residual_t: f64,
}

/// Global radius of curvature at `s`: the infimum of circumradii of
/// `γ(s)` with all pairs of other curve points, approximated on a grid and
/// refined by one level of local subdivision around the minimizer.
pub fn global_radius(curve: &dyn Curve, s: CircleParam, grid: usize) -> Result<f64> {
    if grid < 16 {
        return Err(Error::InvalidInput(format!(
            "global_radius needs grid >= 16, got {grid}"
        )));
    }
    let ps = curve.point(s);
    let step = 1.0 / grid as f64;
    let pts: Vec<Point3> = (0..grid)
        .map(|i| curve.point(CircleParam::new(i as f64 * step)))
        .collect();
    let sv = s.value();
    let excluded = |t: f64| circle_dist(t, sv) < 0.5 * step;
    let (mut best, (bi, bj)) = scan::min_over_pairs(grid, |i, j| {
        let ti = i as f64 * step;
        let tj = j as f64 * step;
        if excluded(ti) || excluded(tj) || circle_dist(ti, tj) < 0.5 * step {
            f64::INFINITY
        } else {
            circumradius(ps, pts[i], pts[j])
        }
    })
    .expect("grid >= 16 yields pairs");

    // one level of local subdivision around the minimizer
    let fine = step / 8.0;
    for a in -8..=8 {
        for b in -8..=8 {
            let ti = bi as f64 * step + a as f64 * fine;
            let tj = bj as f64 * step + b as f64 * fine;
            if excluded(ti) || excluded(tj) || circle_dist(ti, tj) < 0.25 * fine {
                continue;
            }
            let r = circumradius(
                ps,
                curve.point(CircleParam::new(ti)),
                curve.point(CircleParam::new(tj)),
            );
            best = best.min(r);
        }
    }
    Ok(best)
}

/// Brute-force thickness oracle: exact minimum of the circumradius over all
/// sample triples with pairwise-distinct indices. O(n³); guarded at
/// `n <= 512`.
pub fn thickness_bruteforce(curve: &dyn Curve, n: usize) -> Result<ThicknessReport> {
    const LIMIT: usize = 512;
    if n > LIMIT {
        return Err(Error::ScanTooLarge { n, limit: LIMIT });
    }
    if n < 8 {
        return Err(Error::InvalidInput(format!(
            "brute-force thickness needs n >= 8, got {n}"
        )));
    }
    let pts: Vec<Point3> = (0..n)
        .map(|i| curve.point(CircleParam::new(i as f64 / n as f64)))
        .collect();
    let (delta, (i, j, k)) =
        scan::min_over_triples(n, |i, j, k| circumradius(pts[i], pts[j], pts[k]))
            .expect("n >= 8 yields triples");
    Ok(ThicknessReport {
        delta,
        method: ThicknessMethod::BruteForce,
        achievers: vec![Achiever::Triple {
            s: i as f64 / n as f64,
            sigma: j as f64 / n as f64,
            tau: k as f64 / n as f64,
        }],
        local_radius_min: None,
        dcsd_half: None,
    })
}

/// Options for the doubly-critical self-distance search.
#[derive(Debug, Clone, Copy)]
pub struct DcsdConfig {
    /// Side length of the coarse pair grid.
    pub grid: usize,
    /// Keep at most this many grid local minima for polishing.
    pub max_candidates: usize,
}

impl Default for DcsdConfig {
    fn default() -> Self {
        DcsdConfig {
            grid: 1024,
            max_candidates: 64,
        }
    }
}

/// Doubly-critical self-distance: the smallest distance over pairs whose
/// connecting chord is orthogonal to the curve at both ends.
///
/// A coarse grid on the point-to-point distance proposes local minima away
/// from a diagonal band; Newton polishing drives the two orthogonality
/// residuals to zero. Returns `None` when no pair validates.
pub fn dcsd(curve: &dyn Curve) -> Result<Option<DcsdPair>> {
    dcsd_with(curve, DcsdConfig::default())
}

/// [`dcsd`] with explicit search options.
pub fn dcsd_with(curve: &dyn Curve, cfg: DcsdConfig) -> Result<Option<DcsdPair>> {
    let total = curve.arclength();
    if !(total > 0.0) {
        return Err(Error::DegenerateCurve("zero arclength".into()));
    }
    // first pass: band width from the local curvature scale
    let r_min = min_curvature_radius(curve, 2048);
    let band0 = band_width(r_min, total);
    let first = dcsd_pass(curve, band0, cfg)?;
    // iterate once with the improved thickness estimate
    let delta_est = match &first {
        Some(p) => (p.distance / 2.0).min(r_min),
        None => r_min,
    };
    let band1 = band_width(delta_est, total);
    if band1 < band0 * 0.99 {
        let second = dcsd_pass(curve, band1, cfg)?;
        Ok(match (first, second) {
            (Some(a), Some(b)) => Some(if b.distance < a.distance { b } else { a }),
            (a, b) => b.or(a),
        })
    } else {
        Ok(first)
    }
}

fn band_width(delta_est: f64, total: f64) -> f64 {
    (2.0 * delta_est / total).min(0.45)
}

fn min_curvature_radius(curve: &dyn Curve, samples: usize) -> f64 {
    (0..samples)
        .map(|i| {
            let k = curve.curvature(CircleParam::new(i as f64 / samples as f64));
            if k > 0.0 {
                1.0 / k
            } else {
                f64::INFINITY
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn dcsd_pass(curve: &dyn Curve, band: f64, cfg: DcsdConfig) -> Result<Option<DcsdPair>> {
    let g = cfg.grid;
    let step = 1.0 / g as f64;
    let pts: Vec<Point3> = (0..g)
        .map(|i| curve.point(CircleParam::new(i as f64 * step)))
        .collect();
    let mut tans = Vec::with_capacity(g);
    for i in 0..g {
        tans.push(curve.tangent(CircleParam::new(i as f64 * step))?);
    }
    // normalized orthogonality-residual norm per pair; critical pairs of any
    // type (valley floors, ridges, saddles) show up as near-zeros
    let rows: Vec<Vec<f64>> = scan::map_rows(g, |i| {
        (0..g)
            .map(|j| {
                if circle_dist(i as f64 * step, j as f64 * step) < band {
                    return f64::INFINITY;
                }
                let c = pts[j] - pts[i];
                let len2 = c.norm_squared();
                if len2 == 0.0 {
                    return f64::INFINITY;
                }
                let f1 = tans[i].dot(&c);
                let f2 = tans[j].dot(&c);
                (f1 * f1 + f2 * f2) / len2
            })
            .collect()
    });

    // grid local minima of the residual norm on the torus (ties allowed so
    // degenerate plateaus like a circle's antipodal set still propose pairs)
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..g {
        for j in (i + 1)..g {
            let v = rows[i][j];
            if !v.is_finite() {
                continue;
            }
            let mut ok = true;
            'nb: for di in [-1i64, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ni = (i as i64 + di).rem_euclid(g as i64) as usize;
                    let nj = (j as i64 + dj).rem_euclid(g as i64) as usize;
                    if rows[ni][nj] < v {
                        ok = false;
                        break 'nb;
                    }
                }
            }
            if ok {
                candidates.push(((pts[i] - pts[j]).norm(), i, j));
            }
        }
    }
    // closest pairs first: dcsd is the minimum over critical pairs
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    candidates.truncate(cfg.max_candidates);

    let mut best: Option<DcsdPair> = None;
    for (_, i, j) in candidates {
        if let Some(pair) = polish_pair(curve, i as f64 * step, j as f64 * step, step, band) {
            let better = match &best {
                None => true,
                Some(b) => pair.distance < b.distance,
            };
            if better {
                best = Some(pair);
            }
        }
    }
    Ok(best)
}

/// Orthogonality residuals `(⟨T(s), c⟩, ⟨T(t), c⟩)` of the chord `c` from
/// `γ(s)` to `γ(t)`.
fn chord_residuals(curve: &dyn Curve, s: f64, t: f64) -> Option<(f64, f64, f64)> {
    let ps = curve.point(CircleParam::new(s));
    let pt = curve.point(CircleParam::new(t));
    let c = pt - ps;
    let len = c.norm();
    if len == 0.0 {
        return None;
    }
    let ts = curve.tangent(CircleParam::new(s)).ok()?;
    let tt = curve.tangent(CircleParam::new(t)).ok()?;
    Some((ts.dot(&c), tt.dot(&c), len))
}

const DCSD_RESIDUAL_TOL: f64 = 1e-10;

/// Polishes a near-critical pair to a doubly-critical one; shared by the
/// dcsd search and the contact seed.
pub(crate) fn polish_pair(
    curve: &dyn Curve,
    s0: f64,
    t0: f64,
    step: f64,
    band: f64,
) -> Option<DcsdPair> {
    let mut s = s0;
    let mut t = t0;
    // damped Gauss-Newton on the orthogonality residuals; the damping keeps
    // the step well-defined on degenerate plateaus (singular Jacobian)
    let h = 1e-7;
    for _ in 0..80 {
        let (f1, f2, len) = chord_residuals(curve, s, t)?;
        if (f1.abs() / len).max(f2.abs() / len) < DCSD_RESIDUAL_TOL {
            break;
        }
        let (f1s, f2s, _) = chord_residuals(curve, s + h, t)?;
        let (f1t, f2t, _) = chord_residuals(curve, s, t + h)?;
        let j = [
            [(f1s - f1) / h, (f1t - f1) / h],
            [(f2s - f2) / h, (f2t - f2) / h],
        ];
        // (JᵀJ + λI) d = -Jᵀ f
        let jtj = [
            [j[0][0] * j[0][0] + j[1][0] * j[1][0], j[0][0] * j[0][1] + j[1][0] * j[1][1]],
            [j[0][1] * j[0][0] + j[1][1] * j[1][0], j[0][1] * j[0][1] + j[1][1] * j[1][1]],
        ];
        let lambda = 1e-9 * (jtj[0][0] + jtj[1][1]).max(1e-300);
        let lhs = [
            [jtj[0][0] + lambda, jtj[0][1]],
            [jtj[1][0], jtj[1][1] + lambda],
        ];
        let rhs = [
            -(j[0][0] * f1 + j[1][0] * f2),
            -(j[0][1] * f1 + j[1][1] * f2),
        ];
        let d = solve2(lhs, rhs)?;
        let clamp = 0.75 * step;
        s += d[0].clamp(-clamp, clamp);
        t += d[1].clamp(-clamp, clamp);
    }
    let (f1, f2, len) = chord_residuals(curve, s, t)?;
    let rs = f1.abs() / len;
    let rt = f2.abs() / len;
    if rs.max(rt) > 1e-8 {
        return None;
    }
    if circle_dist(s, t) < band * 0.9 {
        return None;
    }
    let (s, t) = {
        let su = CircleParam::new(s).value();
        let tu = CircleParam::new(t).value();
        if su <= tu {
            (su, tu)
        } else {
            (tu, su)
        }
    };
    Some(DcsdPair {
        distance: len,
        s,
        t,
        residual_s: rs,
        residual_t: rt,
    })
}

/// Decomposed thickness of a biarc curve: the minimum of the smallest arc
/// radius and half the doubly-critical self-distance.
pub fn thickness(curve: &BiarcCurve) -> Result<ThicknessReport> {
    let r_min = curve.min_radius();
    let r_param = curve.min_radius_param();
    let pair = dcsd(curve)?;
    let dcsd_half = pair.as_ref().map(|p| p.distance / 2.0);
    let delta = dcsd_half.unwrap_or(f64::INFINITY).min(r_min);
    if !delta.is_finite() {
        return Err(Error::DegenerateCurve(
            "no finite thickness bound found".into(),
        ));
    }
    let mut achievers = Vec::new();
    let tie = 1e-9 * delta.max(1e-300);
    if (r_min - delta).abs() <= tie {
        achievers.push(Achiever::Curvature {
            s: r_param.value(),
        });
    }
    if let Some(p) = &pair {
        if (p.distance / 2.0 - delta).abs() <= tie {
            achievers.push(Achiever::Pair { s: p.s, t: p.t });
        }
    }
    Ok(ThicknessReport {
        delta,
        method: ThicknessMethod::Decomposed,
        achievers,
        local_radius_min: Some(r_min),
        dcsd_half,
    })
}

/// Ropelength `arclength / thickness` of a biarc curve.
pub fn ropelength(curve: &BiarcCurve) -> Result<f64> {
    let report = thickness(curve)?;
    if report.delta <= 0.0 {
        return Err(Error::DegenerateCurve("zero thickness".into()));
    }
    Ok(curve.arclength() / report.delta)
}

/// Pointwise classification of a parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointClassKind {
    /// Global radius strictly above thickness (locally straight for ideal shapes).
    A,
    /// Curvature active: κ(s) ≈ 1/Δ.
    B,
    /// Global contact: a chord of length 2Δ orthogonal at both ends.
    C,
}

/// Classification of one parameter with its witness data.
#[derive(Debug, Clone, Serialize)]
pub struct PointClass {
    pub kind: PointClassKind,
    /// κ(s)·Δ at the queried parameter.
    pub kappa_delta: f64,
    /// Whether curvature is active (can hold alongside kind C).
    pub curvature_active: bool,
    /// Contact partner for class C.
    pub witness: Option<f64>,
    /// ρ_G(s) estimate used for the A test.
    pub global_radius: f64,
}

/// Classifies a parameter as A, B or C given a computed thickness.
///
/// B and C can co-occur (curvature active at a contact point); the class is
/// then C with `curvature_active` set.
pub fn classify_point(
    curve: &BiarcCurve,
    s: CircleParam,
    tol: f64,
    report: &ThicknessReport,
) -> Result<PointClass> {
    let delta = report.delta;
    if delta <= 0.0 {
        return Err(Error::DegenerateCurve("zero thickness".into()));
    }
    let rho = global_radius(curve, s, 256)?;
    let kappa = curve.curvature(s);
    let kappa_delta = kappa * delta;
    if rho > delta * (1.0 + tol) {
        return Ok(PointClass {
            kind: PointClassKind::A,
            kappa_delta,
            curvature_active: false,
            witness: None,
            global_radius: rho,
        });
    }
    let curvature_active = kappa >= (1.0 - tol) / delta;
    let witness = contact_witness(curve, s, delta);
    let kind = match (&witness, curvature_active) {
        (Some(_), _) => PointClassKind::C,
        (None, _) => PointClassKind::B,
    };
    Ok(PointClass {
        kind,
        kappa_delta,
        curvature_active,
        witness,
        global_radius: rho,
    })
}

/// Searches for a contact partner of `s`: a strict local minimum of
/// `t ↦ |γ(s)-γ(t)|` away from the diagonal band with value close to `2Δ`.
fn contact_witness(curve: &BiarcCurve, s: CircleParam, delta: f64) -> Option<f64> {
    let total = curve.arclength();
    let band = band_width(delta, total);
    let grid = 1024;
    let step = 1.0 / grid as f64;
    let sv = s.value();
    let mut best: Option<(f64, f64)> = None;
    let row: Vec<f64> = (0..grid)
        .map(|j| {
            let tv = j as f64 * step;
            if circle_dist(sv, tv) < band {
                f64::INFINITY
            } else {
                (curve.point(s) - curve.point(CircleParam::new(tv))).norm()
            }
        })
        .collect();
    for j in 0..grid {
        let v = row[j];
        if !v.is_finite() {
            continue;
        }
        let l = row[(j + grid - 1) % grid];
        let r = row[(j + 1) % grid];
        // interior local minimum: both neighbors finite and not smaller
        if l.is_finite() && r.is_finite() && v <= l && v <= r {
            if best.map_or(true, |(bv, _)| v < bv) {
                best = Some((v, j as f64 * step));
            }
        }
    }
    let (_, t0) = best?;
    let (t, d) = golden_min(
        |x| (curve.point(s) - curve.point(CircleParam::new(x))).norm(),
        t0 - step,
        t0 + step,
        1e-12,
    );
    // within 5% of a true contact chord length
    (d <= 2.0 * delta * 1.05).then(|| CircleParam::new(t).value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{biarc_interpolate, fourier_to_poly, shapes};

    fn biarc_of(fc: &crate::curve::FourierCurve, n: usize) -> BiarcCurve {
        biarc_interpolate(&fourier_to_poly(fc, n).unwrap()).unwrap()
    }

    #[test]
    fn circumradius_handles_degenerate_branches() {
        let o = Point3::new(0.0, 0.0, 0.0);
        assert_eq!(circumradius(o, o, o), 0.0);
        let a = Point3::new(1.0, 0.0, 0.0);
        let b = Point3::new(2.0, 0.0, 0.0);
        assert_eq!(circumradius(o, a, b), f64::INFINITY);
        // two coincident points: half the distance to the third
        assert_eq!(circumradius(o, o, b), 1.0);
    }

    #[test]
    fn circumradius_equilateral() {
        let a = Point3::new(0.0, 0.0, 0.0);
        let b = Point3::new(1.0, 0.0, 0.0);
        let c = Point3::new(0.5, 3f64.sqrt() / 2.0, 0.0);
        let r = circumradius(a, b, c);
        assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn circumradius_right_triangle() {
        // circumcenter of a right triangle sits at the hypotenuse midpoint
        let a = Point3::new(0.0, 0.0, 0.0);
        let b = Point3::new(1.0, 0.0, 0.0);
        let c = Point3::new(1.0, 1.0, 0.0);
        let r = circumradius(a, b, c);
        assert!((r - 2f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn try_circumradius_rejects_nan() {
        let a = Point3::new(f64::NAN, 0.0, 0.0);
        let b = Point3::new(1.0, 0.0, 0.0);
        let c = Point3::new(0.0, 1.0, 0.0);
        assert!(try_circumradius(a, b, c).is_err());
        assert!(try_circumradius(b, b, c).is_ok());
    }

    #[test]
    fn global_radius_of_circle_is_radius() {
        let circle = shapes::circle(1.0);
        for sv in [0.0, 0.31, 0.77] {
            let r = global_radius(&circle, CircleParam::new(sv), 256).unwrap();
            assert!((r - 1.0).abs() < 1e-6, "rho {r}");
        }
    }

    #[test]
    fn global_radius_matches_bruteforce_on_ellipse() {
        // at the flat end of an ellipse the infimum mixes the local
        // osculating radius and half-chord distances
        let ell = shapes::ellipse(2.0, 1.0);
        let rho = global_radius(&ell, CircleParam::new(0.0), 256).unwrap();
        // brute-force oracle on a fine grid, s fixed at 0
        let grid = 1024;
        let ps = ell.point(CircleParam::new(0.0));
        let mut best = f64::INFINITY;
        for i in 1..grid {
            for j in (i + 1)..grid {
                let ti = i as f64 / grid as f64;
                let tj = j as f64 / grid as f64;
                if circle_dist(ti, 0.0) < 0.5 / grid as f64
                    || circle_dist(tj, 0.0) < 0.5 / grid as f64
                {
                    continue;
                }
                best = best.min(circumradius(
                    ps,
                    ell.point(CircleParam::new(ti)),
                    ell.point(CircleParam::new(tj)),
                ));
            }
        }
        assert!(
            (rho - best).abs() < 2e-3,
            "rho {rho} vs brute {best}"
        );
    }

    #[test]
    fn bruteforce_circle_thickness_is_radius() {
        let circle = shapes::circle(1.0);
        let rep = thickness_bruteforce(&circle, 64).unwrap();
        assert!((rep.delta - 1.0).abs() < 1e-6, "delta {}", rep.delta);
    }

    #[test]
    fn bruteforce_guard_rail() {
        let circle = shapes::circle(1.0);
        assert!(matches!(
            thickness_bruteforce(&circle, 513),
            Err(Error::ScanTooLarge { .. })
        ));
    }

    #[test]
    fn circle_dcsd_is_diameter() {
        let circle = biarc_of(&shapes::circle(1.0), 128);
        let pair = dcsd(&circle).unwrap().expect("circle has antipodal pairs");
        assert!((pair.distance - 2.0).abs() < 1e-8, "dcsd {}", pair.distance);
        assert!(pair.residual_s < 1e-8 && pair.residual_t < 1e-8);
    }

    #[test]
    fn two_bump_waist_found() {
        let tb = biarc_of(&shapes::two_bump(), 512);
        let pair = dcsd(&tb).unwrap().expect("waist exists");
        // oracle: O(n²) scan keeping only near-orthogonal pairs
        let n = 1024;
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let s = i as f64 / n as f64;
                let t = j as f64 / n as f64;
                if circle_dist(s, t) < 0.02 {
                    continue;
                }
                if let Some((f1, f2, len)) = chord_residuals(&tb, s, t) {
                    if (f1.abs() / len).max(f2.abs() / len) < 2e-2 && len < best {
                        best = len;
                    }
                }
            }
        }
        assert!(
            (pair.distance - best).abs() < 1e-3,
            "dcsd {} vs oracle scan {}",
            pair.distance,
            best
        );
        assert!((pair.distance - 0.4).abs() < 1e-6, "waist {}", pair.distance);
    }

    #[test]
    fn circle_thickness_decomposed() {
        let circle = biarc_of(&shapes::circle(1.0), 128);
        let rep = thickness(&circle).unwrap();
        assert!((rep.delta - 1.0).abs() < 1e-9, "delta {}", rep.delta);
        // curvature and dcsd branches tie on a circle
        assert!(rep.achievers.len() == 2, "achievers {:?}", rep.achievers);
    }

    #[test]
    fn thin_ellipse_matches_oracles() {
        // axes (10, 0.5): thickness is the tip osculating radius b²/a
        let fc = shapes::ellipse(10.0, 0.5);
        let bi = biarc_of(&fc, 16384);
        let rep = thickness(&bi).unwrap();
        assert!(
            (rep.delta - 0.025).abs() < 1e-4,
            "delta {} vs analytic 0.025",
            rep.delta
        );
        // dcsd is the waist = minor axis
        assert!(
            (rep.dcsd_half.unwrap() - 0.5).abs() < 1e-6,
            "dcsd/2 {:?}",
            rep.dcsd_half
        );
        // the brute-force oracle agrees within its sampling slack
        let oracle = thickness_bruteforce(&bi, 256).unwrap();
        let slack = 2.0 * bi.arclength() / 256.0;
        assert!(rep.delta <= oracle.delta + 1e-9);
        assert!(oracle.delta <= rep.delta + slack);
    }

    #[test]
    fn circle_ropelength_is_two_pi() {
        let circle = biarc_of(&shapes::circle(1.0), 128);
        let rl = ropelength(&circle).unwrap();
        assert!((rl - 2.0 * std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn ropelength_is_scale_invariant() {
        let fc = shapes::two_harmonic_planar();
        let a = ropelength(&biarc_of(&fc, 256)).unwrap();
        let scaled = fc.scaled(7.0).unwrap();
        let b = ropelength(&biarc_of(&scaled, 256)).unwrap();
        assert!((a - b).abs() / a < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn thickness_scales_linearly_and_ignores_rigid_motion() {
        let fc = shapes::wavy_circle();
        let base = thickness(&biarc_of(&fc, 256)).unwrap().delta;
        let scaled = thickness(&biarc_of(&fc.scaled(3.0).unwrap(), 256))
            .unwrap()
            .delta;
        assert!((scaled - 3.0 * base).abs() / base < 1e-10);
    }

    #[test]
    fn circle_points_are_curvature_active() {
        let circle = biarc_of(&shapes::circle(1.0), 128);
        let rep = thickness(&circle).unwrap();
        for sv in [0.0, 0.2, 0.5, 0.9] {
            let cls = classify_point(&circle, CircleParam::new(sv), 1e-4, &rep).unwrap();
            assert_eq!(cls.kind, PointClassKind::B, "at {sv}: {cls:?}");
            assert!(cls.curvature_active);
        }
    }
}
