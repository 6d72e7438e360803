//! Fixed points of σⁿ, cycle detection, the nine-arc partition and
//! attractor diagnostics.
//!
//! Fixed points of σⁿ are solutions of `liftⁿ(t) - t = k` for integer
//! windings `k`. Because an attracting cycle touches the diagonal
//! tangentially, sign-change bisection alone misses fixed points; a grazing
//! detector picks up local minima of `|liftⁿ(t) - t - k|` below a touch
//! tolerance, and nearby candidates are clustered into single fixed points.

use serde::Serialize;

use crate::contact::ContactFunction;
use crate::numeric::{bisect_root, golden_min};
use crate::param::circle_dist;
use crate::{CircleParam, Error, Result};

/// Default touch tolerance for tangential fixed points, calibrated to the
/// closure quality of a well-traced nine-cycle with a safety factor.
pub const TOUCH_TOL: f64 = 2e-3;

/// Default bisection tolerance for isolated fixed points.
pub const ROOT_TOL: f64 = 1e-10;

/// Parameters below this circle distance count as the same cycle point.
pub const DISTINCT_TOL: f64 = 1e-6;

/// Grid used for sign-change bracketing.
const SCAN_GRID: usize = 4096;

/// How a fixed point was located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FixedPointKind {
    /// The displacement changes sign: a transversal intersection.
    Crossing,
    /// The displacement only touches zero within the touch tolerance.
    Grazing,
}

/// An isolated solution of σⁿ(t) = t.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FixedPoint {
    pub t: f64,
    /// |σⁿ(t) - t| as a circle distance.
    pub residual: f64,
    pub kind: FixedPointKind,
}

/// Result of a fixed-point scan.
#[derive(Debug, Clone, Serialize)]
pub enum FixedPointScan {
    /// σⁿ is the identity up to tolerance: a continuum of fixed points.
    Degenerate,
    /// Isolated fixed points, sorted by parameter.
    Points(Vec<FixedPoint>),
}

impl FixedPointScan {
    pub fn points(&self) -> &[FixedPoint] {
        match self {
            FixedPointScan::Degenerate => &[],
            FixedPointScan::Points(p) => p,
        }
    }

    pub fn count(&self) -> usize {
        self.points().len()
    }
}

/// Integer displacement of the n-fold lift at 0, rounded down.
///
/// For the maps arising here this is the winding `k` with solutions of
/// `liftⁿ(t) = t + k`; the root scan below still checks the full integer
/// range of the displacement, so an off-by-one at a touch point is harmless.
pub fn winding_number(cf: &ContactFunction, n: usize) -> i64 {
    cf.iterate_lift(0.0, n).floor() as i64
}

/// Finds all isolated fixed points of σⁿ with default tolerances.
pub fn fixed_points(cf: &ContactFunction, n: usize, tol: f64) -> FixedPointScan {
    fixed_points_with(cf, n, tol, TOUCH_TOL)
}

/// [`fixed_points`] with an explicit touch tolerance for grazing detection.
pub fn fixed_points_with(
    cf: &ContactFunction,
    n: usize,
    tol: f64,
    touch_tol: f64,
) -> FixedPointScan {
    let g = SCAN_GRID;
    let disp: Vec<f64> = (0..=g)
        .map(|i| {
            let t = i as f64 / g as f64;
            cf.iterate_lift(t, n) - t
        })
        .collect();
    scan_displacement(&disp, |t| cf.iterate_lift(t, n) - t, tol, touch_tol)
}

/// Core scan over a periodic displacement sample; `eval` must return the
/// displacement at arbitrary parameters for refinement.
fn scan_displacement<F: Fn(f64) -> f64>(
    disp: &[f64],
    eval: F,
    tol: f64,
    touch_tol: f64,
) -> FixedPointScan {
    let g = disp.len() - 1;
    let lo = disp.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = disp.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let k_lo = (lo - touch_tol).ceil() as i64;
    let k_hi = (hi + touch_tol).floor() as i64;

    let mut raw: Vec<FixedPoint> = Vec::new();
    for k in k_lo..=k_hi {
        let kf = k as f64;
        // degenerate continuum: most of the grid already sits on the target
        let on_target = disp.iter().filter(|&&d| (d - kf).abs() < 1e-9).count();
        if on_target * 2 > g {
            return FixedPointScan::Degenerate;
        }
        for i in 0..g {
            let a = disp[i] - kf;
            let b = disp[i + 1] - kf;
            let t0 = i as f64 / g as f64;
            let t1 = (i + 1) as f64 / g as f64;
            if a == 0.0 {
                raw.push(FixedPoint {
                    t: t0,
                    residual: 0.0,
                    kind: FixedPointKind::Crossing,
                });
            } else if a * b < 0.0 {
                let root = bisect_root(|t| eval(t) - kf, t0, t1, tol);
                raw.push(FixedPoint {
                    t: root,
                    residual: (eval(root) - kf).abs(),
                    kind: FixedPointKind::Crossing,
                });
            } else if a.abs() < touch_tol
                && a.abs() <= (disp[(i + g - 1) % g] - kf).abs()
                && a.abs() <= b.abs()
            {
                // local minimum of |displacement - k|: refine and keep as a
                // grazing candidate when it stays under the touch tolerance
                let t_prev = (i as f64 - 1.0) / g as f64;
                let (tm, vm) = golden_min(|t| (eval(t) - kf).abs(), t_prev, t1, tol);
                if vm < touch_tol {
                    raw.push(FixedPoint {
                        t: CircleParam::new(tm).value(),
                        residual: vm,
                        kind: FixedPointKind::Grazing,
                    });
                }
            }
        }
    }

    // cluster candidates closer than the touch tolerance; a tangential touch
    // perturbed by noise shows up as a crossing pair plus grazing minima
    raw.sort_by(|p, q| p.t.total_cmp(&q.t));
    let mut clustered: Vec<FixedPoint> = Vec::new();
    for p in raw {
        match clustered.last_mut() {
            Some(last) if circle_dist(last.t, p.t) < touch_tol => {
                // keep the better representative; crossings beat grazings
                let replace = match (last.kind, p.kind) {
                    (FixedPointKind::Grazing, FixedPointKind::Crossing) => true,
                    (FixedPointKind::Crossing, FixedPointKind::Grazing) => false,
                    _ => p.residual < last.residual,
                };
                if replace {
                    *last = p;
                }
            }
            _ => clustered.push(p),
        }
    }
    // wrap-around cluster between the last and first point
    if clustered.len() > 1 {
        let first = clustered[0];
        let last = *clustered.last().unwrap();
        if circle_dist(first.t, last.t) < touch_tol {
            let keep_first = match (first.kind, last.kind) {
                (FixedPointKind::Crossing, FixedPointKind::Grazing) => true,
                (FixedPointKind::Grazing, FixedPointKind::Crossing) => false,
                _ => first.residual <= last.residual,
            };
            if keep_first {
                clustered.pop();
            } else {
                clustered.remove(0);
            }
        }
    }
    FixedPointScan::Points(clustered)
}

/// An n-tuple closed under σ.
#[derive(Debug, Clone, Serialize)]
pub struct Cycle {
    /// Parameters in orbit order, starting from the detected fixed point.
    pub params: Vec<f64>,
    pub n: usize,
    /// All parameters pairwise distinct.
    pub minimal: bool,
    /// max over i of the circle distance from σ(t_i) to t_{i+1}.
    pub residual: f64,
    /// Integer lift displacement of σⁿ along the cycle.
    pub winding: i64,
    /// For non-minimal cycles, the period of the underlying minimal cycle.
    pub multiple_of: Option<usize>,
}

impl Cycle {
    /// Sorts the cycle parameters along 𝕊 starting from `params[0]` and
    /// reports the visiting order as orbit indices.
    pub fn ordering(&self) -> Vec<usize> {
        let base = self.params[0];
        let mut idx: Vec<usize> = (0..self.params.len()).collect();
        idx.sort_by(|&a, &b| {
            let da = (self.params[a] - base).rem_euclid(1.0);
            let db = (self.params[b] - base).rem_euclid(1.0);
            da.total_cmp(&db)
        });
        idx
    }
}

/// Detects cycles for every period `n <= n_max` with default tolerances.
pub fn detect_cycles(cf: &ContactFunction, n_max: usize) -> Result<Vec<Cycle>> {
    detect_cycles_with(cf, n_max, ROOT_TOL, TOUCH_TOL)
}

/// [`detect_cycles`] with explicit tolerances.
///
/// Cyclic permutations are collapsed to one representative per cycle;
/// non-minimal cycles carry the period of their minimal sub-cycle.
pub fn detect_cycles_with(
    cf: &ContactFunction,
    n_max: usize,
    tol: f64,
    touch_tol: f64,
) -> Result<Vec<Cycle>> {
    const LIMIT: usize = 160;
    if n_max > LIMIT {
        return Err(Error::ScanTooLarge {
            n: n_max,
            limit: LIMIT,
        });
    }
    let g = SCAN_GRID;
    // incremental orbit table: lift values of σⁿ at the grid
    let mut cur: Vec<f64> = (0..=g).map(|i| i as f64 / g as f64).collect();
    let mut cycles: Vec<Cycle> = Vec::new();
    for n in 1..=n_max {
        for v in cur.iter_mut() {
            *v = cf.lift(*v);
        }
        let disp: Vec<f64> = cur
            .iter()
            .enumerate()
            .map(|(i, &v)| v - i as f64 / g as f64)
            .collect();
        let scan = scan_displacement(&disp, |t| cf.iterate_lift(t, n) - t, tol, touch_tol);
        let mut new_cycles: Vec<Cycle> = Vec::new();
        for fp in scan.points() {
            let cycle = build_cycle(cf, fp.t, n);
            // collapse cyclic permutations: same point set, same n
            let duplicate = new_cycles.iter().any(|c| same_point_set(c, &cycle, touch_tol));
            if !duplicate {
                new_cycles.push(cycle);
            }
        }
        cycles.extend(new_cycles);
    }
    // deterministic order
    cycles.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then_with(|| a.params[0].total_cmp(&b.params[0]))
    });
    Ok(cycles)
}

fn build_cycle(cf: &ContactFunction, t0: f64, n: usize) -> Cycle {
    let mut params = Vec::with_capacity(n);
    let mut lift_val = CircleParam::new(t0).value();
    let start = lift_val;
    for _ in 0..n {
        params.push(CircleParam::new(lift_val).value());
        lift_val = cf.lift(lift_val);
    }
    let winding = (lift_val - start).round() as i64;
    let residual = circle_dist(lift_val, start);
    let minimal = params.iter().enumerate().all(|(i, &a)| {
        params[i + 1..]
            .iter()
            .all(|&b| circle_dist(a, b) > DISTINCT_TOL)
    });
    let multiple_of = if minimal {
        None
    } else {
        // smallest divisor period that reproduces the tuple
        (1..n)
            .filter(|d| n % d == 0)
            .find(|&d| {
                (0..n).all(|j| circle_dist(params[(j + d) % n], params[j]) <= DISTINCT_TOL)
            })
    };
    Cycle {
        params,
        n,
        minimal,
        residual,
        winding,
        multiple_of,
    }
}

fn same_point_set(a: &Cycle, b: &Cycle, tol: f64) -> bool {
    if a.n != b.n {
        return false;
    }
    a.params.iter().all(|&p| {
        b.params
            .iter()
            .any(|&q| circle_dist(p, q) < tol.max(DISTINCT_TOL))
    })
}

/// Verdict of the cycle-counting inequality
/// `#fixed_points >= (#minimal n-cycles) · n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountingVerdict {
    pub n: usize,
    pub fixed_points: usize,
    pub minimal_cycles: usize,
    pub holds: bool,
    /// `fixed_points - minimal_cycles · n`.
    pub slack: i64,
}

/// Checks the counting inequality for period `n` given a fixed-point scan
/// and detected cycles from the same contact function.
pub fn counting_check(scan: &FixedPointScan, cycles: &[Cycle], n: usize) -> CountingVerdict {
    let fixed = scan.count();
    let minimal = cycles.iter().filter(|c| c.n == n && c.minimal).count();
    let slack = fixed as i64 - (minimal * n) as i64;
    CountingVerdict {
        n,
        fixed_points: fixed,
        minimal_cycles: minimal,
        holds: slack >= 0,
        slack,
    }
}

/// Labels of the nine arcs cut out by a nine-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArcLabel {
    Alpha(u8),
    Beta(u8),
    BetaTilde(u8),
}

impl std::fmt::Display for ArcLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArcLabel::Alpha(i) => write!(f, "alpha{i}"),
            ArcLabel::Beta(i) => write!(f, "beta{i}"),
            ArcLabel::BetaTilde(i) => write!(f, "beta~{i}"),
        }
    }
}

/// The nine-cycle partition: arcs between consecutive cycle parameters.
#[derive(Debug, Clone, Serialize)]
pub struct Partition {
    /// Cycle parameters s_0..s_8 in orbit order.
    pub params: [f64; 9],
    /// Arcs in circular order along 𝕊: label and closed parameter interval
    /// `[from, to)` with `to` possibly wrapping past 1.
    pub arcs: Vec<(ArcLabel, f64, f64)>,
}

/// Expected visiting order of a nine-cycle along 𝕊 (orbit indices).
pub const NINE_CYCLE_ORDER: [usize; 9] = [0, 7, 5, 3, 1, 8, 6, 4, 2];

/// Arc labels in circular order along 𝕊, aligned with [`NINE_CYCLE_ORDER`]:
/// the arc from `s_{order[i]}` to `s_{order[i+1]}`.
const ARC_LABELS: [ArcLabel; 9] = [
    ArcLabel::Beta(1),      // [s0, s7]
    ArcLabel::Alpha(2),     // [s7, s5]
    ArcLabel::BetaTilde(3), // [s5, s3]
    ArcLabel::Beta(3),      // [s3, s1]
    ArcLabel::Alpha(1),     // [s1, s8]
    ArcLabel::BetaTilde(2), // [s8, s6]
    ArcLabel::Beta(2),      // [s6, s4]
    ArcLabel::Alpha(3),     // [s4, s2]
    ArcLabel::BetaTilde(1), // [s2, s0]
];

/// Builds the nine-arc partition of a minimal nine-cycle.
///
/// Fails unless the cycle is minimal of length nine and visits 𝕊 in the
/// order `s0, s7, s5, s3, s1, s8, s6, s4, s2`.
pub fn partition(cycle: &Cycle) -> Result<Partition> {
    if cycle.n != 9 || !cycle.minimal {
        return Err(Error::CycleStructure(format!(
            "partition needs a minimal nine-cycle, got n={} minimal={}",
            cycle.n, cycle.minimal
        )));
    }
    let order = cycle.ordering();
    if order != NINE_CYCLE_ORDER {
        return Err(Error::CycleStructure(format!(
            "unexpected visiting order {order:?}"
        )));
    }
    let mut params = [0.0; 9];
    params.copy_from_slice(&cycle.params);
    let mut arcs = Vec::with_capacity(9);
    for i in 0..9 {
        let from_idx = NINE_CYCLE_ORDER[i];
        let to_idx = NINE_CYCLE_ORDER[(i + 1) % 9];
        let from = params[from_idx];
        let mut to = params[to_idx];
        if to <= from {
            to += 1.0;
        }
        arcs.push((ARC_LABELS[i], from, to));
    }
    Ok(Partition { params, arcs })
}

impl Partition {
    /// Interval of the arc with the given label.
    pub fn interval(&self, label: ArcLabel) -> Option<(f64, f64)> {
        self.arcs
            .iter()
            .find(|(l, _, _)| *l == label)
            .map(|&(_, a, b)| (a, b))
    }

    /// Lengths of all arcs (they tile 𝕊, so they sum to 1).
    pub fn arc_lengths(&self) -> Vec<(ArcLabel, f64)> {
        self.arcs.iter().map(|&(l, a, b)| (l, b - a)).collect()
    }
}

/// Verdict of the piece-to-piece check: σ maps each arc onto the next arc
/// of the contact chain.
#[derive(Debug, Clone, Serialize)]
pub struct PieceMapVerdict {
    /// Realized chain of arcs, starting at alpha1.
    pub chain: Vec<ArcLabel>,
    pub endpoint_residual_max: f64,
    pub interior_ok: bool,
    pub ok: bool,
}

/// The contact chain a nine-cycle induces, starting at alpha1.
pub const PIECE_CHAIN: [ArcLabel; 9] = [
    ArcLabel::Alpha(1),
    ArcLabel::BetaTilde(1),
    ArcLabel::Beta(3),
    ArcLabel::Alpha(3),
    ArcLabel::BetaTilde(3),
    ArcLabel::Beta(2),
    ArcLabel::Alpha(2),
    ArcLabel::BetaTilde(2),
    ArcLabel::Beta(1),
];

/// Checks that σ maps each arc's endpoints onto the successor arc's
/// endpoints (within `tol`) and sampled interiors into its interval.
pub fn piece_map_check(
    cf: &ContactFunction,
    part: &Partition,
    tol: f64,
) -> PieceMapVerdict {
    let mut chain = Vec::with_capacity(9);
    let mut worst = 0.0f64;
    let mut interior_ok = true;

    // arc index (in circular order) -> label, plus lookup by start index
    let start_of = |label: ArcLabel| part.interval(label).expect("all labels present");
    let mut current = ArcLabel::Alpha(1);
    for _ in 0..9 {
        chain.push(current);
        let (a, b) = start_of(current);
        // successor arc: the one whose endpoints are σ(a), σ(b)
        let sa = cf.sigma(CircleParam::new(a));
        let sb = cf.sigma(CircleParam::new(b));
        let mut successor = None;
        for &(label, ia, ib) in &part.arcs {
            let da = sa.dist(CircleParam::new(ia));
            let db = sb.dist(CircleParam::new(ib));
            if da < 0.5 * (ib - ia) && db < 0.5 * (ib - ia) {
                successor = Some((label, da.max(db), ia, ib));
                break;
            }
        }
        let Some((label, endpoint_res, ia, ib)) = successor else {
            return PieceMapVerdict {
                chain,
                endpoint_residual_max: f64::INFINITY,
                interior_ok: false,
                ok: false,
            };
        };
        worst = worst.max(endpoint_res);
        // interior samples land inside the successor interval
        for k in 1..=10 {
            let t = a + (b - a) * k as f64 / 11.0;
            let img = cf.sigma(CircleParam::new(t)).value();
            let img_shift = if img < ia - tol { img + 1.0 } else { img };
            if img_shift < ia - tol || img_shift > ib + tol {
                interior_ok = false;
            }
        }
        current = label;
    }
    let ok = worst <= tol && interior_ok && chain == PIECE_CHAIN;
    PieceMapVerdict {
        chain,
        endpoint_residual_max: worst,
        interior_ok,
        ok,
    }
}

/// Orbit of `t` under σ on the lift: `steps + 1` real values.
pub fn attractor_orbit(cf: &ContactFunction, t: CircleParam, steps: usize) -> Result<Vec<f64>> {
    const LIMIT: usize = 10_000;
    if steps > LIMIT {
        return Err(Error::ScanTooLarge {
            n: steps,
            limit: LIMIT,
        });
    }
    let mut orbit = Vec::with_capacity(steps + 1);
    let mut x = t.value();
    orbit.push(x);
    for _ in 0..steps {
        x = cf.lift(x);
        orbit.push(x);
    }
    Ok(orbit)
}

/// Attractor diagnostics for one start parameter.
#[derive(Debug, Clone, Serialize)]
pub struct StartReport {
    pub start: f64,
    /// Nearest cycle parameter to the orbit end.
    pub limit: f64,
    /// Whether the n-step subsequence was monotone on the lift while inside
    /// its inter-cycle interval.
    pub monotone: bool,
    /// First n-step iterate within `approach_tol` of the interval's right
    /// endpoint, if any.
    pub first_within: Option<usize>,
    /// Displacements σ^{i+n}(t) - σ^i(t) on the lift.
    pub displacements: Vec<f64>,
}

/// Attractor diagnostics over a grid of start parameters.
#[derive(Debug, Clone, Serialize)]
pub struct AttractorReport {
    pub cycle_len: usize,
    pub starts: Vec<StartReport>,
    /// Median of |σ^{i+n} - σ^i| over the grid, indexed by i.
    pub median_displacement: Vec<f64>,
    /// Supremum of |σ^{i+n} - σ^i| over the grid, indexed by i.
    pub sup_displacement: Vec<f64>,
}

/// Runs attractor diagnostics: for each grid start, iterate σ and test
/// monotone convergence toward the right endpoint of the enclosing
/// inter-cycle interval.
///
/// `cycle_points` are the parameters of the attracting cycle (any order);
/// `periods` is the number of n-step iterations; `approach_tol` is the
/// convergence tolerance at the right endpoint.
pub fn attractor_report(
    cf: &ContactFunction,
    cycle_points: &[f64],
    grid: usize,
    periods: usize,
    approach_tol: f64,
) -> Result<AttractorReport> {
    if grid < 64 {
        return Err(Error::InvalidInput(format!(
            "attractor grid must be >= 64, got {grid}"
        )));
    }
    let n = cycle_points.len();
    if n == 0 {
        return Err(Error::CycleStructure("empty cycle".into()));
    }
    let mut sorted: Vec<f64> = cycle_points.iter().map(|&p| p.rem_euclid(1.0)).collect();
    sorted.sort_by(f64::total_cmp);

    let steps = periods * n + n;
    let mut starts = Vec::with_capacity(grid);
    for gi in 0..grid {
        let t0 = (gi as f64 + 0.5) / grid as f64;
        let orbit = attractor_orbit(cf, CircleParam::new(t0), steps)?;
        // enclosing inter-cycle interval (s_l, s_r] on the circle
        let (s_l, s_r) = enclosing_interval(&sorted, t0);
        let width = (s_r - s_l).rem_euclid(1.0);
        // n-step subsequence relative to s_l, unwrapped into [0, 1)
        let sub: Vec<f64> = (0..=periods)
            .map(|j| (orbit[j * n] - s_l).rem_euclid(1.0))
            .collect();
        let mut monotone = true;
        let mut first_within = None;
        for (j, &x) in sub.iter().enumerate() {
            if circle_dist(x, width) <= approach_tol {
                first_within = Some(j);
                break;
            }
            // before reaching the right endpoint the subsequence must not
            // move backwards
            if j > 0 && x < sub[j - 1] - 1e-9 {
                monotone = false;
            }
        }
        // nearest cycle point at the orbit end
        let end = orbit[periods * n].rem_euclid(1.0);
        let limit = sorted
            .iter()
            .copied()
            .min_by(|a, b| circle_dist(*a, end).total_cmp(&circle_dist(*b, end)))
            .unwrap();
        let displacements: Vec<f64> = (0..=steps - n).map(|i| orbit[i + n] - orbit[i]).collect();
        starts.push(StartReport {
            start: t0,
            limit,
            monotone,
            first_within,
            displacements,
        });
    }

    let traces = steps - n + 1;
    let mut median_displacement = Vec::with_capacity(traces);
    let mut sup_displacement = Vec::with_capacity(traces);
    for i in 0..traces {
        let mut col: Vec<f64> = starts.iter().map(|s| s.displacements[i].abs()).collect();
        col.sort_by(f64::total_cmp);
        median_displacement.push(col[col.len() / 2]);
        sup_displacement.push(*col.last().unwrap());
    }
    Ok(AttractorReport {
        cycle_len: n,
        starts,
        median_displacement,
        sup_displacement,
    })
}

/// The inter-cycle interval `(s_l, s_r]` containing `t`, on sorted points.
fn enclosing_interval(sorted: &[f64], t: f64) -> (f64, f64) {
    let n = sorted.len();
    for i in 0..n {
        let a = sorted[i];
        let b = if i + 1 < n { sorted[i + 1] } else { sorted[0] + 1.0 };
        let tt = if t < a { t + 1.0 } else { t };
        if tt >= a && tt < b {
            return (a, b);
        }
    }
    (sorted[n - 1], sorted[0] + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::Branch;

    /// Rigid rotation by `rho` as a contact function.
    fn rotation_cf(rho: f64) -> ContactFunction {
        let n = 256;
        let lift: Vec<f64> = (0..=n).map(|i| rho + i as f64 / n as f64).collect();
        ContactFunction::from_lift_breakpoints(lift, Branch::Sigma).unwrap()
    }

    /// A degree-1 map with an attracting/repelling fixed-point pair per
    /// period cell: lift(t) = t + rho + amp·sin(2π q t).
    fn wobble_cf(rho: f64, q: f64, amp: f64) -> ContactFunction {
        let n = 1024;
        let lift: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                t + rho + amp * (2.0 * std::f64::consts::PI * q * t).sin()
            })
            .collect();
        ContactFunction::from_lift_breakpoints(lift, Branch::Sigma).unwrap()
    }

    #[test]
    fn winding_of_rotation() {
        let cf = rotation_cf(0.4);
        assert_eq!(winding_number(&cf, 0), 0);
        assert_eq!(winding_number(&cf, 5), 2);
        // rotation by p/q composed q times displaces by p
        let cf = rotation_cf(2.0 / 5.0);
        assert_eq!(winding_number(&cf, 5), 2);
    }

    #[test]
    fn rotation_by_third_is_degenerate_for_n3() {
        let cf = rotation_cf(1.0 / 3.0);
        let scan = fixed_points(&cf, 3, ROOT_TOL);
        assert!(matches!(scan, FixedPointScan::Degenerate));
    }

    #[test]
    fn wobble_map_has_two_crossings() {
        // rho = 0 with one sine period: two transversal fixed points
        let cf = wobble_cf(0.0, 1.0, 0.01);
        let scan = fixed_points(&cf, 1, ROOT_TOL);
        let pts = scan.points();
        assert_eq!(pts.len(), 2, "{pts:?}");
        assert!(pts.iter().all(|p| p.kind == FixedPointKind::Crossing));
        assert!(pts.iter().any(|p| p.t.abs() < 1e-9 || (p.t - 1.0).abs() < 1e-9));
        assert!(pts.iter().any(|p| (p.t - 0.5).abs() < 1e-9));
    }

    #[test]
    fn grazing_fixed_point_detected() {
        // displacement touches zero tangentially: lift = t + amp(1 - cos 2πt)
        let n = 1024;
        let amp = 0.02;
        let lift: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                t + amp * (1.0 - (2.0 * std::f64::consts::PI * t).cos()) + 5e-4
            })
            .collect();
        let cf = ContactFunction::from_lift_breakpoints(lift, Branch::Sigma).unwrap();
        let scan = fixed_points(&cf, 1, ROOT_TOL);
        let pts = scan.points();
        assert_eq!(pts.len(), 1, "{pts:?}");
        assert_eq!(pts[0].kind, FixedPointKind::Grazing);
        assert!(circle_dist(pts[0].t, 0.0) < 1e-2);
        assert!(pts[0].residual < TOUCH_TOL);
    }

    #[test]
    fn synthetic_two_period2_orbits_counting() {
        // rho = 1/2 with two sine periods gives 4 fixed points of σ² and two
        // distinct 2-cycles
        let cf = wobble_cf(0.5, 2.0, 0.02);
        let scan = fixed_points(&cf, 2, ROOT_TOL);
        assert_eq!(scan.count(), 4, "{:?}", scan.points());
        let cycles = detect_cycles(&cf, 2).unwrap();
        let minimal2: Vec<_> = cycles.iter().filter(|c| c.n == 2 && c.minimal).collect();
        assert_eq!(minimal2.len(), 2, "{cycles:?}");
        let verdict = counting_check(&scan, &cycles, 2);
        assert!(verdict.holds);
        assert_eq!(verdict.slack, 0);
    }

    #[test]
    fn empty_scan_counting_holds() {
        let cf = rotation_cf(0.37); // irrational-ish, no fixed points for n=1
        let scan = fixed_points(&cf, 1, ROOT_TOL);
        assert_eq!(scan.count(), 0);
        let verdict = counting_check(&scan, &[], 1);
        assert!(verdict.holds);
        assert_eq!(verdict.slack, 0);
    }

    #[test]
    fn rotation_orbit_ordering() {
        // orbit t -> t + 2/5: visiting order along the circle is 0,3,1,4,2
        let cycle = Cycle {
            params: (0..5).map(|i| (0.1 + 0.4 * i as f64).rem_euclid(1.0)).collect(),
            n: 5,
            minimal: true,
            residual: 0.0,
            winding: 2,
            multiple_of: None,
        };
        assert_eq!(cycle.ordering(), vec![0, 3, 1, 4, 2]);
    }

    #[test]
    fn one_cycle_ordering_is_trivial() {
        let cycle = Cycle {
            params: vec![0.25],
            n: 1,
            minimal: true,
            residual: 0.0,
            winding: 0,
            multiple_of: None,
        };
        assert_eq!(cycle.ordering(), vec![0]);
    }

    #[test]
    fn nine_cycle_partition_layout() {
        // exact dihedral structure: {0, a, 1/3-a, 1/3, ...} with orbit order
        // induced by position steps of +4 mod 9
        let a = 0.1587;
        let sorted = [
            0.0,
            a,
            1.0 / 3.0 - a,
            1.0 / 3.0,
            1.0 / 3.0 + a,
            2.0 / 3.0 - a,
            2.0 / 3.0,
            2.0 / 3.0 + a,
            1.0 - a,
        ];
        // orbit index i sits at position 4i mod 9
        let mut params = vec![0.0; 9];
        for i in 0..9 {
            params[i] = sorted[(4 * i) % 9];
        }
        let cycle = Cycle {
            params,
            n: 9,
            minimal: true,
            residual: 0.0,
            winding: 4,
            multiple_of: None,
        };
        assert_eq!(cycle.ordering(), NINE_CYCLE_ORDER.to_vec());
        let part = partition(&cycle).unwrap();
        // alpha2 spans [s7, s5] = [a, 1/3 - a]
        let (lo, hi) = part.interval(ArcLabel::Alpha(2)).unwrap();
        assert!((lo - a).abs() < 1e-12);
        assert!((hi - (1.0 / 3.0 - a)).abs() < 1e-12);
        // the nine arcs tile the circle
        let total: f64 = part.arc_lengths().iter().map(|(_, l)| l).sum();
        assert!((total - 1.0).abs() < 1e-9);
        // congruent pieces: |beta_i| all equal, |beta~_i| all equal
        let len = |l: ArcLabel| part.interval(l).map(|(a, b)| b - a).unwrap();
        assert!((len(ArcLabel::Beta(1)) - len(ArcLabel::Beta(2))).abs() < 1e-12);
        assert!((len(ArcLabel::BetaTilde(1)) - len(ArcLabel::BetaTilde(3))).abs() < 1e-12);
        assert!((len(ArcLabel::Beta(1)) - len(ArcLabel::BetaTilde(1))).abs() < 1e-12);
    }

    #[test]
    fn non_nine_cycle_rejected_by_partition() {
        let cycle = Cycle {
            params: vec![0.0, 0.5],
            n: 2,
            minimal: true,
            residual: 0.0,
            winding: 1,
            multiple_of: None,
        };
        assert!(partition(&cycle).is_err());
    }

    /// Map whose displacement touches zero tangentially from above at the
    /// given points, lifted off by `delta0`: the one-sided structure of an
    /// attracting contact cycle.
    fn grazing_cf(q: f64, amp: f64, delta0: f64) -> ContactFunction {
        let n = 2048;
        let lift: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                t + amp * (1.0 - (2.0 * std::f64::consts::PI * q * t).cos()) + delta0
            })
            .collect();
        ContactFunction::from_lift_breakpoints(lift, Branch::Sigma).unwrap()
    }

    #[test]
    fn attractor_orbits_drift_monotonically_to_the_right() {
        // near-touch points at 0 and 0.5; every start drifts right and
        // passes close to its interval's right endpoint
        let cf = grazing_cf(2.0, 0.01, 2e-4);
        let report = attractor_report(&cf, &[0.0, 0.5], 64, 150, 2e-3).unwrap();
        for s in &report.starts {
            assert!(s.monotone, "start {} not monotone", s.start);
            assert!(
                s.first_within.is_some(),
                "start {} never approached its right endpoint",
                s.start
            );
        }
        // orbits pile up at the bottlenecks: the median displacement decays
        let m = &report.median_displacement;
        assert!(m[100] < 0.5 * m[1], "median trace {} -> {}", m[1], m[100]);
    }

    #[test]
    fn on_cycle_start_stays_put() {
        let cf = wobble_cf(0.0, 1.0, 0.01);
        let orbit = attractor_orbit(&cf, CircleParam::new(0.5), 50).unwrap();
        for x in &orbit {
            assert!(circle_dist(*x, 0.5) < 1e-9);
        }
    }

    #[test]
    fn multiples_are_flagged() {
        // rho = 1/2 wobble: 2-cycles exist; at n = 4 they reappear as
        // non-minimal doubles
        let cf = wobble_cf(0.5, 2.0, 0.02);
        let cycles = detect_cycles(&cf, 4).unwrap();
        let four: Vec<_> = cycles.iter().filter(|c| c.n == 4).collect();
        assert!(!four.is_empty());
        for c in &four {
            assert!(!c.minimal);
            assert_eq!(c.multiple_of, Some(2), "{c:?}");
        }
    }
}
