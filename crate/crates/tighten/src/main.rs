//! Offline generator for the bundled near-ideal trefoil coefficients.
//!
//! Pipeline: shrink-on-no-overlap polygonal tightening with exact dihedral
//! symmetry projection, then projection onto a symmetric trigonometric
//! basis, then a compass-search polish of the symmetric coefficients
//! against the library's own thickness and contact-map diagnostics.
//!
//! Usage:
//!   tighten run   --out data/trefoil.fourier [--n 333] [--iters 240000]
//!                 [--m 24] [--polish-rounds 2]
//!   tighten report --input data/trefoil.fourier

use std::f64::consts::PI;
use std::path::PathBuf;

use thickknot::contact::{trace_contact, Branch, ContactFunction, TraceConfig};
use thickknot::curve::{
    biarc_interpolate, fourier_to_poly, shapes, BiarcCurve, Curve, FourierCurve,
};
use thickknot::cycles::{fixed_points_with, FixedPointScan};
use thickknot::thickness::{thickness, ThicknessReport};
use thickknot::{CircleParam, Vector3};

fn rot_z(v: Vector3, angle: f64) -> Vector3 {
    let (s, c) = angle.sin_cos();
    Vector3::new(c * v.x - s * v.y, s * v.x + c * v.y, v.z)
}

fn rot_x_pi(v: Vector3) -> Vector3 {
    Vector3::new(v.x, -v.y, -v.z)
}

/// Polygonal tightening state: N vertices around a tube of radius 1.
struct Polygon {
    p: Vec<Vector3>,
}

impl Polygon {
    fn new_standard_trefoil(n: usize) -> Polygon {
        let fc = shapes::standard_trefoil();
        let poly = fourier_to_poly(&fc, n).expect("sampling");
        let p = poly.nodes().iter().map(|nd| nd.point.coords).collect();
        let mut pg = Polygon { p };
        pg.symmetrize();
        // scale so the polygon thickness proxy starts just above the tube radius
        let delta = pg.thickness_proxy();
        pg.scale(1.02 / delta);
        pg
    }

    fn n(&self) -> usize {
        self.p.len()
    }

    fn scale(&mut self, f: f64) {
        for v in self.p.iter_mut() {
            *v *= f;
        }
    }

    fn length(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| (self.p[(i + 1) % n] - self.p[i]).norm())
            .sum()
    }

    /// Projection onto exactly D3-symmetric configurations:
    /// `p[i + n/3] = Rz(-2π/3) p[i]` and `p[-i] = Rx(π) p[i]`.
    fn symmetrize(&mut self) {
        let n = self.n();
        assert!(n % 3 == 0, "vertex count must be divisible by 3");
        let third = n / 3;
        let centroid = self.p.iter().sum::<Vector3>() / n as f64;
        for v in self.p.iter_mut() {
            *v -= centroid;
        }
        let old = self.p.clone();
        let phi = -2.0 * PI / 3.0;
        for i in 0..n {
            let a1 = rot_z(old[(i + third) % n], -phi);
            let a2 = rot_z(old[(i + 2 * third) % n], -2.0 * phi);
            let b0 = rot_x_pi(old[(n - i) % n]);
            let b1 = rot_x_pi(rot_z(old[(n + third - i) % n], -phi));
            let b2 = rot_x_pi(rot_z(old[(n + 2 * third - i) % n], -2.0 * phi));
            self.p[i] = (old[i] + a1 + a2 + b0 + b1 + b2) / 6.0;
        }
    }

    /// One curve-shortening step: each vertex moves a little toward the
    /// midpoint of its neighbors. Combined with the constraint projections
    /// this is a projected descent on length that lets the rope slide.
    fn smooth(&mut self, lambda: f64) {
        let n = self.n();
        let old = self.p.clone();
        for i in 0..n {
            let m = (old[(i + n - 1) % n] + old[(i + 1) % n]) / 2.0;
            self.p[i] += (m - old[i]) * lambda;
        }
    }

    /// A few Gauss-Seidel sweeps equalizing edge lengths.
    fn equalize_edges(&mut self, sweeps: usize) {
        let n = self.n();
        for _ in 0..sweeps {
            let target = self.length() / n as f64;
            for i in 0..n {
                let j = (i + 1) % n;
                let d = self.p[j] - self.p[i];
                let len = d.norm();
                if len == 0.0 {
                    continue;
                }
                let corr = d * (0.5 * (len - target) / len);
                self.p[i] += corr;
                self.p[j] -= corr;
            }
        }
    }

    /// Caps the per-vertex turning angle at the tube-curvature limit.
    fn cap_curvature(&mut self) {
        let n = self.n();
        let target = self.length() / n as f64;
        let theta_max = 2.0 * (0.5 * target).min(1.0).asin();
        for i in 0..n {
            let prev = self.p[(i + n - 1) % n];
            let next = self.p[(i + 1) % n];
            let e1 = self.p[i] - prev;
            let e2 = next - self.p[i];
            let cosang = (e1.dot(&e2) / (e1.norm() * e2.norm())).clamp(-1.0, 1.0);
            let theta = cosang.acos();
            if theta > theta_max {
                let m = (prev + next) / 2.0;
                let h = self.p[i] - m;
                let hn = h.norm();
                if hn > 0.0 {
                    let k = (0.5 * theta_max).sin() / (0.5 * theta).sin();
                    self.p[i] = m + h * k;
                }
            }
        }
    }

    /// Pushes apart all non-neighbor pairs closer than the tube diameter.
    /// Returns true when the final pass found nothing to fix.
    fn remove_overlaps(&mut self, passes: usize) -> bool {
        let n = self.n();
        let edge = self.length() / n as f64;
        let skip = (PI / edge).ceil() as usize;
        for _ in 0..passes {
            let mut fixed = 0usize;
            for i in 0..n {
                for j in (i + 1)..n {
                    let cyc = (j - i).min(n - (j - i));
                    if cyc <= skip {
                        continue;
                    }
                    let d = self.p[j] - self.p[i];
                    let len2 = d.norm_squared();
                    if len2 >= 4.0 {
                        continue;
                    }
                    let len = len2.sqrt();
                    if len == 0.0 {
                        continue;
                    }
                    let push = d * (0.5 * (2.0 * 1.000_005 - len) / len);
                    self.p[i] -= push;
                    self.p[j] += push;
                    fixed += 1;
                }
            }
            if fixed == 0 {
                return true;
            }
        }
        false
    }

    /// Smallest non-local pair distance over 2, floored by the polygonal
    /// curvature radius.
    fn thickness_proxy(&self) -> f64 {
        let n = self.n();
        let edge = self.length() / n as f64;
        let skip = ((PI / edge).ceil() as usize).max(2);
        let mut min_pair = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let cyc = (j - i).min(n - (j - i));
                if cyc <= skip {
                    continue;
                }
                min_pair = min_pair.min((self.p[j] - self.p[i]).norm());
            }
        }
        let mut min_rad = f64::INFINITY;
        for i in 0..n {
            let a = self.p[(i + n - 1) % n];
            let b = self.p[i];
            let c = self.p[(i + 1) % n];
            let r = thickknot::thickness::circumradius(a.into(), b.into(), c.into());
            min_rad = min_rad.min(r);
        }
        (min_pair / 2.0).min(min_rad)
    }

    fn ropelength_proxy(&self) -> f64 {
        self.length() / self.thickness_proxy()
    }
}

/// Symmetric coefficient set: `w(t) = Σ_{j ≡ 2 mod 3} c_j e^{2πijt}` with
/// real `c_j`, `z(t) = Σ_{k ≡ 0 mod 3} d_k sin(2πkt)`.
#[derive(Clone)]
struct SymmetricCoeffs {
    /// (signed harmonic j, coefficient) with j ≡ 2 (mod 3); j may be negative.
    w: Vec<(i64, f64)>,
    /// (harmonic k, coefficient) with k ≡ 0 (mod 3), k >= 3.
    z: Vec<(i64, f64)>,
}

impl SymmetricCoeffs {
    /// Extracts the symmetric degrees of freedom from a Fourier curve that
    /// already satisfies the dihedral structure.
    fn from_fourier(fc: &FourierCurve) -> SymmetricCoeffs {
        let mut w = Vec::new();
        let mut z = Vec::new();
        for (idx, (a, b)) in fc.cos_coeffs().iter().zip(fc.sin_coeffs()).enumerate() {
            let h = idx as i64 + 1;
            // x cosine and y sine carry the complex pair: +h when the signs
            // agree, -h when they differ
            if a.x != 0.0 || b.y != 0.0 {
                let same_sign = (a.x - b.y).abs() <= (a.x + b.y).abs();
                if same_sign {
                    w.push((h, 0.5 * (a.x + b.y)));
                } else {
                    w.push((-h, 0.5 * (a.x - b.y)));
                }
            }
            if b.z != 0.0 {
                z.push((h, b.z));
            }
        }
        SymmetricCoeffs { w, z }
    }

    /// Projects polygon vertices (assumed uniform in arclength) onto the
    /// symmetric basis, keeping harmonics up to `m`.
    fn from_polygon(pg: &Polygon, m: i64) -> SymmetricCoeffs {
        let n = pg.n() as f64;
        let mut w = Vec::new();
        let mut z = Vec::new();
        let mut j = -m;
        while j <= m {
            if j.rem_euclid(3) == 2 && j != 0 {
                let mut acc_re = 0.0;
                for (k, v) in pg.p.iter().enumerate() {
                    let ang = -2.0 * PI * j as f64 * k as f64 / n;
                    // Re[(x + iy) e^{i ang}] = x cos ang - y sin ang
                    acc_re += v.x * ang.cos() - v.y * ang.sin();
                }
                w.push((j, acc_re / n));
            }
            j += 1;
        }
        let mut k = 3;
        while k <= m {
            let mut acc = 0.0;
            for (i, v) in pg.p.iter().enumerate() {
                acc += v.z * (2.0 * PI * k as f64 * i as f64 / n).sin();
            }
            z.push((k, 2.0 * acc / n));
            k += 3;
        }
        SymmetricCoeffs { w, z }
    }

    /// Expands into the general Fourier representation.
    fn to_fourier(&self) -> FourierCurve {
        let m = self
            .w
            .iter()
            .map(|&(j, _)| j.unsigned_abs() as usize)
            .chain(self.z.iter().map(|&(k, _)| k as usize))
            .max()
            .unwrap_or(1)
            .max(1);
        let mut cos = vec![Vector3::zeros(); m];
        let mut sin = vec![Vector3::zeros(); m];
        for &(j, c) in &self.w {
            let idx = j.unsigned_abs() as usize - 1;
            // x picks up c·cos(2π|j|t); y picks up sign(j)·c·sin(2π|j|t)
            cos[idx].x += c;
            sin[idx].y += if j >= 0 { c } else { -c };
        }
        for &(k, d) in &self.z {
            sin[k as usize - 1].z += d;
        }
        FourierCurve::new(Vector3::zeros(), cos, sin).expect("symmetric coefficients valid")
    }

    /// Half-period shift `t -> t + 1/2` (flips odd harmonics); moves the
    /// parameter origin to the other axis intersection.
    fn half_shift(&mut self) {
        for (j, c) in self.w.iter_mut() {
            if j.rem_euclid(2) == 1 {
                *c = -*c;
            }
        }
        for (k, d) in self.z.iter_mut() {
            if k.rem_euclid(2) == 1 {
                *d = -*d;
            }
        }
    }

    /// Mirror through the xy-plane (flips chirality).
    fn mirror(&mut self) {
        for (_, d) in self.z.iter_mut() {
            *d = -*d;
        }
    }

    fn scale(&mut self, f: f64) {
        for (_, c) in self.w.iter_mut() {
            *c *= f;
        }
        for (_, d) in self.z.iter_mut() {
            *d *= f;
        }
    }

    fn dof(&self) -> Vec<f64> {
        self.w
            .iter()
            .map(|&(_, c)| c)
            .chain(self.z.iter().map(|&(_, d)| d))
            .collect()
    }

    fn set_dof(&mut self, x: &[f64]) {
        let nw = self.w.len();
        for (i, (_, c)) in self.w.iter_mut().enumerate() {
            *c = x[i];
        }
        for (i, (_, d)) in self.z.iter_mut().enumerate() {
            *d = x[nw + i];
        }
    }
}

/// One full evaluation of a candidate shape.
struct Quality {
    ropelength: f64,
    delta: f64,
    r_min: f64,
    dcsd_half: Option<f64>,
    sigma9_closure: Option<f64>,
    nine_points: Option<Vec<f64>>,
    trace_err: Option<String>,
    /// Summed depth of backward excursions of the raw valley walk.
    dips: f64,
    /// Closure defect of the raw valley walk.
    raw_defect: f64,
}

/// Tolerant valley walk: follows the row minima without failing, returning
/// the monotone envelope, the summed dip depth and the closure defect.
fn raw_walk(bi: &BiarcCurve, delta: f64, n: usize, window: f64) -> Option<(Vec<f64>, f64, f64)> {
    use thickknot::numeric::golden_min;
    let seed = thickknot::contact::find_seed_contact(bi, delta).ok()??;
    let k0 = (seed.s * n as f64).round() as usize % n;
    let row0 = k0 as f64 / n as f64;
    let (t0, _) = golden_min(
        |x| (bi.point(CircleParam::new(row0)) - bi.point(CircleParam::new(x))).norm(),
        seed.t - window,
        seed.t + window,
        1e-12,
    );
    let mut raw = Vec::with_capacity(n + 1);
    raw.push(t0);
    let mut dips = 0.0;
    let mut prev = t0;
    for off in 1..=n {
        let row = (k0 + off) as f64 / n as f64;
        let (tm, _) = golden_min(
            |x| (bi.point(CircleParam::new(row)) - bi.point(CircleParam::new(x))).norm(),
            prev - window,
            prev + window,
            1e-12,
        );
        if tm < prev {
            dips += prev - tm;
        }
        raw.push(tm);
        prev = tm;
    }
    let defect = raw[n] - raw[0] - 1.0;
    // monotone envelope re-indexed to absolute rows
    let mut env = raw.clone();
    for i in 1..env.len() {
        if env[i] <= env[i - 1] {
            env[i] = env[i - 1] + 1e-12;
        }
    }
    for (i, v) in env.iter_mut().enumerate() {
        *v -= (env_defect_helper(defect)) * i as f64 / n as f64;
    }
    let mut lift = vec![0.0; n + 1];
    for off in 0..n {
        let abs_row = (k0 + off) % n;
        let wind = if k0 + off >= n { 1.0 } else { 0.0 };
        lift[abs_row] = env[off] - wind;
    }
    let shift = lift[0].floor();
    for v in lift.iter_mut() {
        *v -= shift;
    }
    lift[n] = lift[0] + 1.0;
    Some((lift, dips, defect))
}

fn env_defect_helper(defect: f64) -> f64 {
    defect
}

fn build_biarc(fc: &FourierCurve, nodes: usize) -> Option<BiarcCurve> {
    let poly = fourier_to_poly(fc, nodes).ok()?;
    biarc_interpolate(&poly).ok()
}

fn evaluate(
    fc: &FourierCurve,
    nodes: usize,
    trace_n: usize,
) -> Option<(Quality, Option<ContactFunction>, ThicknessReport)> {
    let bi = build_biarc(fc, nodes)?;
    let rep = thickness(&bi).ok()?;
    if rep.delta <= 0.0 {
        return None;
    }
    let ropelength = bi.arclength() / rep.delta;
    let mut q = Quality {
        ropelength,
        delta: rep.delta,
        r_min: rep.local_radius_min.unwrap_or(f64::INFINITY),
        dcsd_half: rep.dcsd_half,
        sigma9_closure: None,
        nine_points: None,
        trace_err: None,
        dips: f64::INFINITY,
        raw_defect: f64::INFINITY,
    };
    if let Some((lift, dips, defect)) = raw_walk(&bi, rep.delta, trace_n, 0.01) {
        q.dips = dips;
        q.raw_defect = defect;
        if let Ok(cf) = ContactFunction::from_lift_breakpoints(lift, Branch::Sigma) {
            let l9 = cf.iterate_lift(0.0, 9);
            q.sigma9_closure = Some((l9 - l9.round()).abs());
        }
    }
    let cf = match trace_contact(
        &bi,
        rep.delta,
        TraceConfig {
            n: trace_n,
            window: 0.01,
            branch: Branch::Sigma,
            ..TraceConfig::default()
        },
    ) {
        Ok(cf) => Some(cf),
        Err(e) => {
            q.trace_err = Some(e.to_string());
            None
        }
    };
    if let Some(cf) = &cf {
        let l9 = cf.iterate_lift(0.0, 9);
        q.sigma9_closure = Some((l9 - l9.round()).abs());
        if let FixedPointScan::Points(pts) = fixed_points_with(cf, 9, 1e-10, 1e-2) {
            q.nine_points = Some(pts.iter().map(|p| p.t).collect());
        }
    }
    Some((q, cf, rep))
}

fn print_quality(tag: &str, q: &Quality) {
    print!(
        "{tag}: rl {:.6} delta {:.8} r_min/delta {:.4} ",
        q.ropelength,
        q.delta,
        q.r_min / q.delta
    );
    print!("dips {:.1e} defect {:.1e} ", q.dips, q.raw_defect);
    match (&q.sigma9_closure, &q.trace_err) {
        (Some(c), _) => print!("sigma9(0) {:.2e} ", c),
        (None, Some(e)) => print!("trace FAILED ({e}) "),
        _ => {}
    }
    if let Some(pts) = &q.nine_points {
        print!("fixed9 n={} ", pts.len());
        if pts.len() == 9 {
            print!("a~{:.4} ", pts[1]);
        }
    }
    println!();
}

/// Compass-search polish of the symmetric coefficients.
///
/// Objective: ropelength plus a penalty keeping local curvature from
/// undercutting the contact bound, plus the nine-step closure of the traced
/// contact map (steering toward the shape where the billiard closes).
fn polish(coeffs: &mut SymmetricCoeffs, rounds: usize, nodes: usize) {
    let objective = |x: &[f64], base: &SymmetricCoeffs| -> f64 {
        let mut c = base.clone();
        c.set_dof(x);
        let fc = c.to_fourier();
        match evaluate(&fc, nodes, 500) {
            Some((q, _, _)) => {
                let curv_pen = match q.dcsd_half {
                    Some(dh) => (dh - q.r_min).max(0.0) / q.delta * 300.0,
                    None => 10.0,
                };
                let closure_pen = match q.sigma9_closure {
                    Some(c) => 100.0 * c,
                    None => 5.0,
                };
                let dip_pen = if q.dips.is_finite() { 1000.0 * q.dips } else { 30.0 };
                q.ropelength + curv_pen + closure_pen + dip_pen
            }
            None => f64::INFINITY,
        }
    };

    let mut x = coeffs.dof();
    let scale: Vec<f64> = x.iter().map(|v| v.abs().max(1e-3)).collect();
    let mut step = 2e-3;
    let mut f0 = objective(&x, coeffs);
    println!("polish start: objective {f0:.6} ({} dof)", x.len());
    let mut evals = 0usize;
    for round in 0..rounds {
        let mut improved_any = false;
        while step > 1e-6 {
            let mut improved = false;
            for i in 0..x.len() {
                for dir in [1.0, -1.0] {
                    let mut xt = x.clone();
                    xt[i] += dir * step * scale[i];
                    let ft = objective(&xt, coeffs);
                    evals += 1;
                    if ft < f0 {
                        x = xt;
                        f0 = ft;
                        improved = true;
                        improved_any = true;
                        break;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
            if evals > 6000 * (round + 1) {
                break;
            }
        }
        println!("polish round {round}: objective {f0:.6} after {evals} evals (step {step:.1e})");
        step = (step * 8.0).min(2e-3);
        if !improved_any {
            break;
        }
    }
    coeffs.set_dof(&x);
}

fn normalize_conventions(coeffs: &mut SymmetricCoeffs) {
    // unit arclength
    let fc = coeffs.to_fourier();
    coeffs.scale(1.0 / fc.arclength());
    // parameter origin at the outer axis intersection
    let fc = coeffs.to_fourier();
    let p0 = fc.point(CircleParam::new(0.0)).coords.norm();
    let ph = fc.point(CircleParam::new(0.5)).coords.norm();
    if ph > p0 {
        coeffs.half_shift();
        println!("normalize: shifted parameter origin to the outer axis point");
    }
    // chirality: the traced sigma branch must start near 0.49 so the cycle
    // visits the circle in position steps of +4 out of 9
    let fc = coeffs.to_fourier();
    if let Some((_, Some(cf), _)) = evaluate(&fc, 333, 1000) {
        let v = cf.sigma(CircleParam::new(0.0)).value();
        if v > 0.5 {
            coeffs.mirror();
            println!("normalize: mirrored chirality (sigma(0) was {v:.4})");
        }
    }
}

fn report(fc: &FourierCurve) {
    println!("harmonics: {}", fc.harmonics());
    println!("arclength: {:.12}", fc.arclength());
    let Some((q, cf, rep)) = evaluate(fc, 333, 1000) else {
        println!("evaluation failed");
        return;
    };
    print_quality("quality", &q);
    println!(
        "delta {:.9}  ropelength {:.6}  r_min {:.9}  dcsd/2 {:?}",
        rep.delta,
        fc.arclength() / rep.delta,
        q.r_min,
        q.dcsd_half
    );
    let Some(cf) = cf else { return };
    println!(
        "sigma(0) = {}  tau(0) = {}",
        cf.sigma(CircleParam::new(0.0)),
        cf.tau(CircleParam::new(0.0))
    );
    if let Some(pts) = &q.nine_points {
        println!("fixed points of sigma^9 ({}):", pts.len());
        for p in pts {
            print!(" {p:.4}");
        }
        println!();
    }
    // margins of the diagonal-touch scan for excluded periods
    for n in [2usize, 7, 11, 13, 16, 18, 20, 25] {
        let mut min_marg = f64::INFINITY;
        for k in 0..2048 {
            let t = k as f64 / 2048.0;
            let l = cf.iterate_lift(t, n);
            let g = l - t;
            min_marg = min_marg.min((g - g.round()).abs());
        }
        print!("n={n}:{min_marg:.4} ");
    }
    println!("(diagonal margins)");
    let bi = build_biarc(fc, 333).unwrap();
    let mut max_kd: f64 = 0.0;
    let mut argmax = 0.0;
    for k in 0..3000 {
        let t = k as f64 / 3000.0;
        let kd = bi.curvature(CircleParam::new(t)) * rep.delta;
        if kd > max_kd {
            max_kd = kd;
            argmax = t;
        }
    }
    println!("max kappa*delta {max_kd:.4} at t={argmax:.4}");
}

struct Args {
    cmd: String,
    out: Option<PathBuf>,
    input: Option<PathBuf>,
    n: usize,
    iters: usize,
    m: i64,
    polish_rounds: usize,
    lambda: f64,
    shrink: f64,
}

fn parse_args() -> Args {
    let mut args = Args {
        cmd: String::new(),
        out: None,
        input: None,
        n: 333,
        iters: 240_000,
        m: 24,
        polish_rounds: 2,
        lambda: 5e-3,
        shrink: 3e-4,
    };
    let mut it = std::env::args().skip(1);
    args.cmd = it.next().unwrap_or_else(|| "run".into());
    while let Some(a) = it.next() {
        let mut grab = || it.next().expect("flag needs a value");
        match a.as_str() {
            "--out" => args.out = Some(PathBuf::from(grab())),
            "--input" => args.input = Some(PathBuf::from(grab())),
            "--n" => args.n = grab().parse().expect("bad --n"),
            "--iters" => args.iters = grab().parse().expect("bad --iters"),
            "--m" => args.m = grab().parse().expect("bad --m"),
            "--polish-rounds" => {
                args.polish_rounds = grab().parse().expect("bad --polish-rounds")
            }
            "--lambda" => args.lambda = grab().parse().expect("bad --lambda"),
            "--shrink" => args.shrink = grab().parse().expect("bad --shrink"),
            other => panic!("unknown flag {other}"),
        }
    }
    args
}

fn main() {
    let args = parse_args();
    match args.cmd.as_str() {
        "report" => {
            let path = args.input.expect("report needs --input");
            let fc = thickknot::io::read_fourier(&path).expect("readable coefficients");
            report(&fc);
        }
        "polish" => {
            let path = args.input.expect("polish needs --input");
            let fc = thickknot::io::read_fourier(&path).expect("readable coefficients");
            let mut coeffs = SymmetricCoeffs::from_fourier(&fc);
            polish(&mut coeffs, args.polish_rounds, 256);
            normalize_conventions(&mut coeffs);
            let fc = coeffs.to_fourier();
            if let Some((q, _, _)) = evaluate(&fc, 333, 1000) {
                print_quality("final", &q);
            }
            let out = args.out.expect("polish needs --out");
            thickknot::io::write_fourier(&out, &fc).expect("writable output");
            println!("wrote {}", out.display());
            report(&fc);
        }
        "run" => {
            let mut pg = Polygon::new_standard_trefoil(args.n);
            println!(
                "start: N={} L={:.4} ropelength proxy {:.4}",
                pg.n(),
                pg.length(),
                pg.ropelength_proxy()
            );
            // shrink only when both the pair and curvature constraints hold;
            // alternate the two projections inside each iteration and back
            // off the shrink rate when the configuration stays jammed
            let mut stuck = 0usize;
            for it in 1..=args.iters {
                let (lambda, mut shrink) = (args.lambda, args.shrink);
                if stuck > 300 {
                    shrink *= 0.5;
                }
                pg.smooth(lambda);
                pg.equalize_edges(1);
                for _ in 0..4 {
                    pg.cap_curvature();
                    if pg.remove_overlaps(20) {
                        break;
                    }
                }
                pg.symmetrize();
                let proxy = pg.thickness_proxy();
                if proxy >= 0.9995 {
                    pg.scale(1.0 - shrink);
                    stuck = 0;
                } else {
                    stuck += 1;
                }
                if it % 10000 == 0 {
                    println!(
                        "iter {it}: L {:.4} ropelength proxy {:.5} shrink {:.1e}",
                        pg.length(),
                        pg.ropelength_proxy(),
                        shrink
                    );
                }
            }
            // settle without shrinking
            for _ in 0..2000 {
                pg.equalize_edges(2);
                pg.cap_curvature();
                pg.remove_overlaps(60);
                pg.symmetrize();
            }
            println!("final polygon ropelength proxy {:.5}", pg.ropelength_proxy());

            let mut coeffs = SymmetricCoeffs::from_polygon(&pg, args.m);
            normalize_conventions(&mut coeffs);
            let fc = coeffs.to_fourier();
            if let Some((q, _, _)) = evaluate(&fc, 333, 1000) {
                print_quality("after projection", &q);
            }
            if args.polish_rounds > 0 {
                polish(&mut coeffs, args.polish_rounds, 256);
                normalize_conventions(&mut coeffs);
            }
            let fc = coeffs.to_fourier();
            if let Some((q, _, _)) = evaluate(&fc, 333, 1000) {
                print_quality("final", &q);
            }
            let out = args.out.expect("run needs --out");
            thickknot::io::write_fourier(&out, &fc).expect("writable output");
            println!("wrote {}", out.display());
            report(&fc);
        }
        other => {
            eprintln!("unknown command {other}; use run or report");
            std::process::exit(2);
        }
    }
}
