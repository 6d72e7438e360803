//! The point-to-point distance landscape, contact chords and the contact
//! function σ.
//!
//! On a thick knotted curve the distance function `pp(s, t) = |γ(s) - γ(t)|`
//! forms a valley away from the diagonal with two shallow floors. Tracking
//! one floor sample by sample yields a continuous, orientation-preserving
//! circle map σ sending each parameter to its contact partner; the other
//! floor is its inverse τ. The map is stored through its strictly increasing
//! degree-1 lift.

use serde::Serialize;

use crate::curve::Curve;
use crate::numeric::golden_min;
use crate::param::circle_dist;
use crate::{scan, CircleParam, Error, Point3, Result};

/// Point-to-point distance `|γ(s) - γ(t)|`.
pub fn pp(curve: &dyn Curve, s: CircleParam, t: CircleParam) -> f64 {
    (curve.point(s) - curve.point(t)).norm()
}

/// Which valley floor a contact function follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// The floor whose value at 0 is the smaller of the two partners.
    Sigma,
    /// The inverse floor.
    Tau,
}

/// A seed pair for valley tracking.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeedContact {
    pub s: f64,
    pub t: f64,
    pub pp: f64,
}

/// The contact function as a piecewise-linear strictly increasing lift on
/// uniform breakpoints `s_i = i/n`, with `lift(1) = lift(0) + 1`.
#[derive(Debug, Clone, Serialize)]
pub struct ContactFunction {
    /// `n + 1` lift values at `s_i = i/n`; strictly increasing,
    /// `lift[n] == lift[0] + 1`.
    lift: Vec<f64>,
    branch: Branch,
}

impl ContactFunction {
    /// Builds a contact function from its lift breakpoints.
    ///
    /// Requires at least 65 breakpoints (n >= 64), strict monotonicity and a
    /// closing value within `1e-9` of `lift[0] + 1` (snapped exactly).
    pub fn from_lift_breakpoints(mut lift: Vec<f64>, branch: Branch) -> Result<Self> {
        if lift.len() < 65 {
            return Err(Error::InvalidInput(format!(
                "need at least 65 breakpoints, got {}",
                lift.len()
            )));
        }
        let n = lift.len() - 1;
        let defect = lift[n] - lift[0] - 1.0;
        if defect.abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "lift must close with degree 1, defect {defect:e}"
            )));
        }
        lift[n] = lift[0] + 1.0;
        for i in 0..n {
            if lift[i + 1] <= lift[i] {
                return Err(Error::InvalidInput(format!(
                    "lift not strictly increasing at breakpoint {i}"
                )));
            }
        }
        Ok(ContactFunction { lift, branch })
    }

    /// Number of sample intervals `n`.
    pub fn samples(&self) -> usize {
        self.lift.len() - 1
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// The stored lift values at the breakpoints `i/n`.
    pub fn breakpoints(&self) -> &[f64] {
        &self.lift
    }

    /// Piecewise-linear lift evaluated at any real `x`;
    /// satisfies `lift(x + k) = lift(x) + k`.
    pub fn lift(&self, x: f64) -> f64 {
        let u = x - x.floor();
        let n = self.samples();
        let scaled = u * n as f64;
        let mut j = scaled as usize;
        if j >= n {
            j = n - 1;
        }
        let frac = scaled - j as f64;
        let v = self.lift[j] + frac * (self.lift[j + 1] - self.lift[j]);
        v + (x - u)
    }

    /// Inverse of the lift (exact per-cell linear inversion).
    pub fn lift_inverse(&self, y: f64) -> f64 {
        let n = self.samples();
        let base = self.lift[0];
        // shift y by an integer so it lands in [lift[0], lift[0] + 1)
        let k = (y - base).floor();
        let y0 = y - k;
        // cells are [lift[j], lift[j+1]); find j by binary search
        let mut lo = 0usize;
        let mut hi = n;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.lift[mid] <= y0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let j = lo;
        let den = self.lift[j + 1] - self.lift[j];
        let frac = if den > 0.0 {
            ((y0 - self.lift[j]) / den).clamp(0.0, 1.0)
        } else {
            0.0
        };
        (j as f64 + frac) / n as f64 + k
    }

    /// σ(t): the contact partner of `t`.
    pub fn sigma(&self, t: CircleParam) -> CircleParam {
        CircleParam::new(self.lift(t.value()))
    }

    /// τ(t) = σ⁻¹(t).
    pub fn tau(&self, t: CircleParam) -> CircleParam {
        CircleParam::new(self.lift_inverse(t.value()))
    }

    /// k-fold composition σᵏ(t) through the lift (winding tracked exactly).
    pub fn iterate(&self, t: CircleParam, k: usize) -> CircleParam {
        CircleParam::new(self.iterate_lift(t.value(), k))
    }

    /// k-fold composition on the lift, returning the real value.
    pub fn iterate_lift(&self, t0: f64, k: usize) -> f64 {
        let mut x = t0;
        for _ in 0..k {
            x = self.lift(x);
        }
        x
    }
}

/// Diagonal exclusion band (parameter units) at the local tube scale:
/// within arclength `πΔ` of the diagonal, short chords are ordinary local
/// geometry of a thick tube rather than contact candidates.
pub fn diagonal_band(delta: f64, arclength: f64) -> f64 {
    (std::f64::consts::PI * delta / arclength).min(0.45)
}

/// A contact valley floor sits at `2Δ`; candidate seeds above this relative
/// excess are rejected (no contact valley, as on convex curves).
const SEED_PP_EXCESS: f64 = 0.1;

/// Default slack for backward steps of the tracked minimizer: excursions
/// below this are flattened. Covers minimizer position noise and the
/// sub-resolution valley wiggles of numerically near-ideal shapes; genuine
/// valley loss shows up orders of magnitude above it.
pub const MONO_NOISE_SLACK: f64 = 1e-4;

/// Finds the seed pair for valley tracking: the best interior local minimum
/// of `pp` away from the diagonal band, at the contact length scale `2Δ`.
///
/// Returns `None` when no off-diagonal local minimum reaches down to `2Δ`
/// (circles, convex planar curves, ...). Ties break deterministically
/// toward the smallest `(s, t)`.
pub fn find_seed_contact(curve: &dyn Curve, delta: f64) -> Result<Option<SeedContact>> {
    if !(delta > 0.0) {
        return Err(Error::InvalidInput(format!(
            "need positive thickness, got {delta}"
        )));
    }
    let band = diagonal_band(delta, curve.arclength());
    let g = 1024usize;
    let step = 1.0 / g as f64;
    let pts: Vec<Point3> = (0..g)
        .map(|i| curve.point(CircleParam::new(i as f64 * step)))
        .collect();
    // pp over the torus grid, masked inside the band
    let rows: Vec<Vec<f64>> = scan::map_rows(g, |i| {
        (0..g)
            .map(|j| {
                if circle_dist(i as f64 * step, j as f64 * step) < band {
                    f64::INFINITY
                } else {
                    (pts[i] - pts[j]).norm()
                }
            })
            .collect()
    });
    // interior 2D local minima with no masked neighbor, at the 2Δ scale
    let gate = 2.0 * delta * (1.0 + SEED_PP_EXCESS);
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 0..g {
        for j in (i + 1)..g {
            let v = rows[i][j];
            if !v.is_finite() || v > gate {
                continue;
            }
            let mut interior_min = true;
            'nb: for di in [-1i64, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ni = (i as i64 + di).rem_euclid(g as i64) as usize;
                    let nj = (j as i64 + dj).rem_euclid(g as i64) as usize;
                    let w = rows[ni][nj];
                    if !w.is_finite() || w < v {
                        interior_min = false;
                        break 'nb;
                    }
                }
            }
            if interior_min {
                let cand = (v, i, j);
                let better = match best {
                    None => true,
                    Some(b) => {
                        cand.0
                            .total_cmp(&b.0)
                            .then(cand.1.cmp(&b.1))
                            .then(cand.2.cmp(&b.2))
                            .is_lt()
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        }
    }
    let Some((_, i, j)) = best else {
        return Ok(None);
    };
    // a valley minimum is a doubly-critical pair; polish it as one
    let (sv, tv) = match crate::thickness::polish_pair(
        curve,
        i as f64 * step,
        j as f64 * step,
        step,
        band,
    ) {
        Some(pair) => (pair.s, pair.t),
        None => (i as f64 * step, j as f64 * step),
    };
    // keep the orientation of the grid candidate (s row, t partner)
    let (sv, tv) = if circle_dist(sv, i as f64 * step) <= circle_dist(tv, i as f64 * step) {
        (sv, tv)
    } else {
        (tv, sv)
    };
    let d = pp(curve, CircleParam::new(sv), CircleParam::new(tv));
    Ok(Some(SeedContact {
        s: CircleParam::new(sv).value(),
        t: CircleParam::new(tv).value(),
        pp: d,
    }))
}

/// Options for valley tracking.
#[derive(Debug, Clone, Copy)]
pub struct TraceConfig {
    /// Number of uniform breakpoints.
    pub n: usize,
    /// Half-width of the tracking window around the previous minimizer.
    pub window: f64,
    /// Which valley floor to follow.
    pub branch: Branch,
    /// Backward minimizer steps up to this size are flattened instead of
    /// failing; keeps strictly increasing lifts over noise-scale dips.
    pub monotone_slack: f64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            n: 1000,
            window: 0.01,
            branch: Branch::Sigma,
            monotone_slack: MONO_NOISE_SLACK,
        }
    }
}

/// Traces the contact function by following one valley floor of `pp`.
///
/// For each breakpoint `s_i = i/n` the partner `σ_i` is the minimum of
/// `pp(s_i, ·)` restricted to a window around `σ_{i-1}`; staying close to
/// the previous minimum keeps the trace on one valley. The closure defect
/// after a full loop is distributed linearly when below `1e-2`, enforcing a
/// degree-1 lift.
pub fn trace_contact(curve: &dyn Curve, delta: f64, cfg: TraceConfig) -> Result<ContactFunction> {
    if cfg.n < 64 {
        return Err(Error::InvalidInput(format!(
            "need n >= 64 breakpoints, got {}",
            cfg.n
        )));
    }
    if !(cfg.window > 0.0 && cfg.window < 0.25) {
        return Err(Error::InvalidInput(format!(
            "window must lie in (0, 0.25), got {}",
            cfg.window
        )));
    }
    let seed = find_seed_contact(curve, delta)?.ok_or_else(|| Error::Tracking {
        index: 0,
        reason: "no off-diagonal contact valley".into(),
    })?;

    let primary = trace_valley(curve, seed.s, seed.t, cfg)?;
    // branch identity: σ is the floor with the smaller partner at 0
    let v_at_0 = CircleParam::new(primary.lift(0.0)).value();
    let v_inv_0 = CircleParam::new(primary.lift_inverse(0.0)).value();
    let primary_is_sigma = v_at_0 <= v_inv_0;
    let want_primary = match cfg.branch {
        Branch::Sigma => primary_is_sigma,
        Branch::Tau => !primary_is_sigma,
    };
    if want_primary {
        return Ok(ContactFunction {
            lift: primary.lift,
            branch: cfg.branch,
        });
    }
    // trace the mirror valley through the transposed seed
    let secondary = trace_valley(curve, seed.t, seed.s, cfg)?;
    Ok(ContactFunction {
        lift: secondary.lift,
        branch: cfg.branch,
    })
}

/// Tracks the valley through `(s0, t0)` over a full loop of breakpoints.
fn trace_valley(
    curve: &dyn Curve,
    s0: f64,
    t0: f64,
    cfg: TraceConfig,
) -> Result<ContactFunction> {
    let n = cfg.n;
    let w = cfg.window;
    let k0 = (s0 * n as f64).round() as usize % n;
    // re-anchor the seed partner at the nearest breakpoint row
    let row0 = k0 as f64 / n as f64;
    let (t_start, _) = golden_min(
        |x| (curve.point(CircleParam::new(row0)) - curve.point(CircleParam::new(x))).norm(),
        t0 - w,
        t0 + w,
        1e-12,
    );

    // lift values in traced order for rows k0, k0+1, ..., k0+n
    let mut traced = Vec::with_capacity(n + 1);
    traced.push(t_start);
    for off in 1..=n {
        let row = (k0 + off) as f64 / n as f64;
        let prev = traced[off - 1];
        let (tm, _) = golden_min(
            |x| (curve.point(CircleParam::new(row)) - curve.point(CircleParam::new(x))).norm(),
            prev - w,
            prev + w,
            1e-12,
        );
        let idx = (k0 + off) % n;
        // a minimizer pinned to the window edge means the valley was lost
        if (tm - (prev - w)).abs() < 1e-7 || (tm - (prev + w)).abs() < 1e-7 {
            return Err(Error::Tracking {
                index: idx,
                reason: "no interior minimum in the tracking window".into(),
            });
        }
        // decreases below the slack are flat stretches of the valley
        let tm = if tm <= prev && prev - tm <= cfg.monotone_slack {
            prev + f64::EPSILON * prev.abs().max(1.0)
        } else {
            tm
        };
        if tm <= prev {
            return Err(Error::Tracking {
                index: idx,
                reason: format!("monotonicity violation: {tm} after {prev}"),
            });
        }
        traced.push(tm);
    }

    // closure defect |σ_n - σ_0 - 1|, distributed linearly when small
    let defect = traced[n] - traced[0] - 1.0;
    if defect.abs() > 1e-2 {
        return Err(Error::Tracking {
            index: k0,
            reason: format!("closure defect {defect:e} too large"),
        });
    }
    for (i, v) in traced.iter_mut().enumerate() {
        *v -= defect * i as f64 / n as f64;
    }

    // re-index from traced order (rows k0..k0+n) to absolute rows 0..n
    let mut lift = vec![0.0f64; n + 1];
    for off in 0..n {
        let abs_row = (k0 + off) % n;
        let wind = if k0 + off >= n { 1.0 } else { 0.0 };
        lift[abs_row] = traced[off] - wind;
    }
    // normalize so lift[0] lands in [0, 1)
    let shift = lift[0].floor();
    for v in lift.iter_mut() {
        *v -= shift;
    }
    lift[n] = lift[0] + 1.0;
    ContactFunction::from_lift_breakpoints(lift, cfg.branch)
}

/// A chord from `γ(s)` to `γ(σ(s))` with its contact residuals.
#[derive(Debug, Clone, Serialize)]
pub struct ContactChord {
    pub s: f64,
    pub t: f64,
    pub start: [f64; 3],
    pub end: [f64; 3],
    pub length: f64,
    /// Radians from orthogonality at the `s` end.
    pub angle_residual_s: f64,
    /// Radians from orthogonality at the `t` end.
    pub angle_residual_t: f64,
    /// Set when the residuals exceed [`CHORD_WARN_RESIDUAL`].
    pub non_contact_warning: bool,
}

/// Warning threshold for chord orthogonality residuals (radians); ten times
/// the residual scale of a well-traced contact function.
pub const CHORD_WARN_RESIDUAL: f64 = 5e-2;

/// Builds the contact chord at `s` from a traced contact function.
pub fn contact_chord(
    curve: &dyn Curve,
    s: CircleParam,
    cf: &ContactFunction,
) -> Result<ContactChord> {
    let t = cf.sigma(s);
    let ps = curve.point(s);
    let pt = curve.point(t);
    let c = pt - ps;
    let length = c.norm();
    if length == 0.0 {
        return Err(Error::DegenerateCurve(
            "zero-length contact chord".into(),
        ));
    }
    let u = c / length;
    let rs = curve.tangent(s)?.dot(&u).clamp(-1.0, 1.0).asin().abs();
    let rt = curve.tangent(t)?.dot(&u).clamp(-1.0, 1.0).asin().abs();
    Ok(ContactChord {
        s: s.value(),
        t: t.value(),
        start: [ps.x, ps.y, ps.z],
        end: [pt.x, pt.y, pt.z],
        length,
        angle_residual_s: rs,
        angle_residual_t: rt,
        non_contact_warning: rs.max(rt) > CHORD_WARN_RESIDUAL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{biarc_interpolate, fourier_to_poly, shapes};

    #[test]
    fn pp_is_symmetric_and_zero_on_diagonal() {
        let tre = shapes::standard_trefoil();
        let a = CircleParam::new(0.2);
        let b = CircleParam::new(0.7);
        assert_eq!(pp(&tre, a, b), pp(&tre, b, a));
        assert_eq!(pp(&tre, a, a), 0.0);
    }

    #[test]
    fn circle_antipodal_distance() {
        let c = shapes::circle(1.0);
        let d = pp(&c, CircleParam::new(0.0), CircleParam::new(0.5));
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn circle_has_no_off_diagonal_valley() {
        let fc = shapes::circle(1.0);
        let bi = biarc_interpolate(&fourier_to_poly(&fc, 128).unwrap()).unwrap();
        let rep = crate::thickness::thickness(&bi).unwrap();
        let seed = find_seed_contact(&bi, rep.delta).unwrap();
        assert!(seed.is_none(), "got {seed:?}");
    }

    #[test]
    fn ellipse_has_no_off_diagonal_valley() {
        let fc = shapes::ellipse(2.0, 1.0);
        let bi = biarc_interpolate(&fourier_to_poly(&fc, 256).unwrap()).unwrap();
        let rep = crate::thickness::thickness(&bi).unwrap();
        let seed = find_seed_contact(&bi, rep.delta).unwrap();
        assert!(seed.is_none(), "got {seed:?}");
    }

    #[test]
    fn synthetic_lift_round_trips() {
        // a mildly nonlinear strictly increasing degree-1 lift
        let n = 128;
        let lift: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                0.4 + t + 0.05 * (2.0 * std::f64::consts::PI * t).sin()
            })
            .collect();
        let cf = ContactFunction::from_lift_breakpoints(lift, Branch::Sigma).unwrap();
        for k in 0..100 {
            let t = CircleParam::new(k as f64 / 100.0 + 0.003);
            let round = cf.tau(cf.sigma(t));
            assert!(round.dist(t) < 1e-9, "t={t} round={round}");
        }
        // degree 1 on the lift
        assert!((cf.lift(2.25) - cf.lift(0.25) - 2.0).abs() < 1e-12);
        // identity iterate
        let t = CircleParam::new(0.37);
        assert_eq!(cf.iterate(t, 0).value(), t.value());
    }

    #[test]
    fn monotone_violation_rejected() {
        let mut lift: Vec<f64> = (0..=128).map(|i| 0.3 + i as f64 / 128.0).collect();
        lift[40] = lift[41] + 1e-3;
        assert!(ContactFunction::from_lift_breakpoints(lift, Branch::Sigma).is_err());
    }

    #[test]
    fn sigma_eval_returns_breakpoints() {
        let n = 128;
        let lift: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                0.4 + t + 0.03 * (2.0 * std::f64::consts::PI * t).cos()
            })
            .collect();
        let cf = ContactFunction::from_lift_breakpoints(lift.clone(), Branch::Sigma).unwrap();
        for i in 0..n {
            let s = CircleParam::new(i as f64 / n as f64);
            let want = CircleParam::new(lift[i]);
            assert!(cf.sigma(s).dist(want) < 1e-12);
        }
    }

    #[test]
    fn standard_trefoil_seed_is_the_clasp_pair() {
        let fc = shapes::standard_trefoil();
        let bi = biarc_interpolate(&fourier_to_poly(&fc, 256).unwrap()).unwrap();
        let rep = crate::thickness::thickness(&bi).unwrap();
        let seed = find_seed_contact(&bi, rep.delta)
            .unwrap()
            .expect("knotted curve has an off-diagonal valley");
        assert!(
            (seed.pp - 2.0 * rep.delta).abs() < 2.0 * rep.delta * 1e-4,
            "seed pp {} vs 2 delta {}",
            seed.pp,
            2.0 * rep.delta
        );
    }

    #[test]
    fn far_from_ideal_curve_fails_tracking() {
        // the standard trefoil is in contact only near its three clasps, so
        // following the row minima eventually loses the valley
        let fc = shapes::standard_trefoil();
        let bi = biarc_interpolate(&fourier_to_poly(&fc, 256).unwrap()).unwrap();
        let rep = crate::thickness::thickness(&bi).unwrap();
        match trace_contact(&bi, rep.delta, TraceConfig::default()) {
            Err(Error::Tracking { .. }) => {}
            other => panic!("expected a tracking failure, got {other:?}"),
        }
    }
}
