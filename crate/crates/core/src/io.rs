//! Plain-text curve formats and CSV table exports.
//!
//! All formats are UTF-8 with LF line endings and `#`-prefixed comments.
//! Numbers are written with 17 significant digits so that read-back is
//! bit-exact for f64. Writers are deterministic: identical inputs produce
//! byte-identical files.

use std::fmt::Write as FmtWrite;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::contact::{Branch, ContactFunction};
use crate::curve::{Curve, FourierCurve, PolyCurve};
use crate::cycles::{AttractorReport, FixedPointKind, FixedPointScan};
use crate::param::circle_dist;
use crate::{scan, CircleParam, Error, Point3, Result, Vector3};

const PT_TAG: &str = "ptc 1";
const FOURIER_TAG: &str = "fourier 1";
const CONTACT_TAG: &str = "contact 1";

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// A parsed curve plus non-fatal reader diagnostics.
#[derive(Debug)]
pub struct LoadedCurve<T> {
    pub curve: T,
    pub warnings: Vec<String>,
}

/// Line-oriented reader state: skips blank and `#` comment lines, tracking
/// 1-based line numbers for errors.
struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
        }
    }

    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.iter.by_ref() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Some((i + 1, trimmed));
        }
        None
    }
}

fn parse_floats(line: &str, lineno: usize, want: usize) -> Result<Vec<f64>> {
    let vals: std::result::Result<Vec<f64>, _> =
        line.split_whitespace().map(f64::from_str).collect();
    match vals {
        Ok(v) if v.len() == want => Ok(v),
        Ok(v) => Err(Error::Parse {
            line: lineno,
            reason: format!("expected {want} numbers, found {}", v.len()),
        }),
        Err(e) => Err(Error::Parse {
            line: lineno,
            reason: format!("bad number: {e}"),
        }),
    }
}

/// Serializes point-tangent data: a format tag, the node count, then one
/// record of 6 reals per node.
pub fn write_point_tangent_string(curve: &PolyCurve, name: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str(PT_TAG);
    out.push('\n');
    if let Some(name) = name {
        let _ = writeln!(out, "# name: {name}");
    }
    let _ = writeln!(out, "{}", curve.nodes().len());
    for node in curve.nodes() {
        let p = node.point;
        let t = node.tangent;
        let _ = writeln!(
            out,
            "{} {} {} {} {} {}",
            fmt_f64(p.x),
            fmt_f64(p.y),
            fmt_f64(p.z),
            fmt_f64(t.x),
            fmt_f64(t.y),
            fmt_f64(t.z)
        );
    }
    out
}

/// Writes point-tangent data to a file.
pub fn write_point_tangent(path: &Path, curve: &PolyCurve, name: Option<&str>) -> Result<()> {
    fs::write(path, write_point_tangent_string(curve, name))?;
    Ok(())
}

/// Parses point-tangent data; tangents are normalized with a warning when
/// their norm strays from 1.
pub fn parse_point_tangent(text: &str) -> Result<LoadedCurve<PolyCurve>> {
    let mut lines = Lines::new(text);
    let (lineno, tag) = lines.next_content().ok_or(Error::Parse {
        line: 1,
        reason: "empty file".into(),
    })?;
    if tag != PT_TAG {
        return Err(Error::Parse {
            line: lineno,
            reason: format!("expected format tag '{PT_TAG}', found '{tag}'"),
        });
    }
    let (lineno, count_line) = lines.next_content().ok_or(Error::Parse {
        line: lineno,
        reason: "missing node count".into(),
    })?;
    let count: usize = count_line.parse().map_err(|e| Error::Parse {
        line: lineno,
        reason: format!("bad node count: {e}"),
    })?;
    if count < 8 {
        return Err(Error::Parse {
            line: lineno,
            reason: format!("need at least 8 nodes, file declares {count}"),
        });
    }
    let mut points = Vec::with_capacity(count);
    let mut tangents = Vec::with_capacity(count);
    let mut warnings = Vec::new();
    for k in 0..count {
        let (lineno, line) = lines.next_content().ok_or(Error::Parse {
            line: lineno + k + 1,
            reason: format!("expected {count} records, found {k}"),
        })?;
        let v = parse_floats(line, lineno, 6)?;
        let tangent = Vector3::new(v[3], v[4], v[5]);
        let norm = tangent.norm();
        if norm == 0.0 {
            return Err(Error::Parse {
                line: lineno,
                reason: "zero tangent".into(),
            });
        }
        if (norm - 1.0).abs() > 1e-9 {
            warnings.push(format!(
                "line {lineno}: tangent norm {norm} normalized to 1"
            ));
            tangents.push(tangent / norm);
        } else {
            // keep unit tangents bit-exact so round-trips are lossless
            tangents.push(tangent);
        }
        points.push(Point3::new(v[0], v[1], v[2]));
    }
    Ok(LoadedCurve {
        curve: PolyCurve::from_points_tangents(points, tangents)?,
        warnings,
    })
}

/// Reads point-tangent data from a file.
pub fn read_point_tangent(path: &Path) -> Result<LoadedCurve<PolyCurve>> {
    parse_point_tangent(&fs::read_to_string(path)?)
}

/// Serializes Fourier coefficients: tag, harmonic count, the constant term,
/// then one line of 6 reals per harmonic (cosine triple, sine triple).
pub fn write_fourier_string(fc: &FourierCurve) -> String {
    let mut out = String::new();
    out.push_str(FOURIER_TAG);
    out.push('\n');
    let _ = writeln!(out, "{}", fc.harmonics());
    let c = fc.constant();
    let _ = writeln!(out, "{} {} {}", fmt_f64(c.x), fmt_f64(c.y), fmt_f64(c.z));
    for (a, b) in fc.cos_coeffs().iter().zip(fc.sin_coeffs()) {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {}",
            fmt_f64(a.x),
            fmt_f64(a.y),
            fmt_f64(a.z),
            fmt_f64(b.x),
            fmt_f64(b.y),
            fmt_f64(b.z)
        );
    }
    out
}

/// Writes Fourier coefficients to a file.
pub fn write_fourier(path: &Path, fc: &FourierCurve) -> Result<()> {
    fs::write(path, write_fourier_string(fc))?;
    Ok(())
}

/// Parses a Fourier coefficient file.
pub fn parse_fourier(text: &str) -> Result<FourierCurve> {
    let mut lines = Lines::new(text);
    let (lineno, tag) = lines.next_content().ok_or(Error::Parse {
        line: 1,
        reason: "empty file".into(),
    })?;
    if tag != FOURIER_TAG {
        return Err(Error::Parse {
            line: lineno,
            reason: format!("expected format tag '{FOURIER_TAG}', found '{tag}'"),
        });
    }
    let (lineno, m_line) = lines.next_content().ok_or(Error::Parse {
        line: lineno,
        reason: "missing harmonic count".into(),
    })?;
    let m: usize = m_line.parse().map_err(|e| Error::Parse {
        line: lineno,
        reason: format!("bad harmonic count: {e}"),
    })?;
    if m < 1 {
        return Err(Error::Parse {
            line: lineno,
            reason: "harmonic count must be >= 1".into(),
        });
    }
    let (lineno, const_line) = lines.next_content().ok_or(Error::Parse {
        line: lineno,
        reason: "missing constant term".into(),
    })?;
    let c = parse_floats(const_line, lineno, 3)?;
    let constant = Vector3::new(c[0], c[1], c[2]);
    let mut cos = Vec::with_capacity(m);
    let mut sin = Vec::with_capacity(m);
    for k in 0..m {
        let (lineno, line) = lines.next_content().ok_or(Error::Parse {
            line: lineno + k + 1,
            reason: format!("expected {m} harmonics, found {k}"),
        })?;
        let v = parse_floats(line, lineno, 6)?;
        cos.push(Vector3::new(v[0], v[1], v[2]));
        sin.push(Vector3::new(v[3], v[4], v[5]));
    }
    FourierCurve::new(constant, cos, sin)
}

/// Reads a Fourier coefficient file.
pub fn read_fourier(path: &Path) -> Result<FourierCurve> {
    parse_fourier(&fs::read_to_string(path)?)
}

/// Best-effort import of the upstream PKF point-tangent layout
/// (experimental): keeps `NODE x y z tx ty tz` records and checks the
/// component count when declared.
pub fn parse_pkf(text: &str) -> Result<LoadedCurve<PolyCurve>> {
    let mut points = Vec::new();
    let mut tangents = Vec::new();
    let mut warnings = Vec::new();
    let mut declared: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if let Some(rest) = line.strip_prefix("COMP") {
            if let Ok(n) = rest.trim().parse::<usize>() {
                declared = Some(n);
            }
        }
        if let Some(rest) = line.strip_prefix("NODE") {
            let v = parse_floats(rest.trim(), lineno, 6).or_else(|_| {
                // some writers append extra columns; keep the first six
                let all: Vec<f64> = rest
                    .split_whitespace()
                    .map_while(|t| f64::from_str(t).ok())
                    .collect();
                if all.len() >= 6 {
                    Ok(all[..6].to_vec())
                } else {
                    Err(Error::Parse {
                        line: lineno,
                        reason: "NODE record needs 6 numbers".into(),
                    })
                }
            })?;
            let t = Vector3::new(v[3], v[4], v[5]);
            let norm = t.norm();
            if norm == 0.0 {
                return Err(Error::Parse {
                    line: lineno,
                    reason: "zero tangent".into(),
                });
            }
            if (norm - 1.0).abs() > 1e-9 {
                warnings.push(format!("line {lineno}: tangent normalized"));
                tangents.push(t / norm);
            } else {
                tangents.push(t);
            }
            points.push(Point3::new(v[0], v[1], v[2]));
        }
    }
    if points.len() < 8 {
        return Err(Error::Parse {
            line: 1,
            reason: format!("found only {} NODE records", points.len()),
        });
    }
    if let Some(n) = declared {
        if n != points.len() {
            warnings.push(format!(
                "declared {n} nodes but found {} records",
                points.len()
            ));
        }
    }
    Ok(LoadedCurve {
        curve: PolyCurve::from_points_tangents(points, tangents)?,
        warnings,
    })
}

/// Reads a PKF file (experimental import).
pub fn read_pkf(path: &Path) -> Result<LoadedCurve<PolyCurve>> {
    parse_pkf(&fs::read_to_string(path)?)
}

/// Serializes a contact function: tag, branch, interval count, then the
/// lift breakpoints.
pub fn write_contact_string(cf: &ContactFunction) -> String {
    let mut out = String::new();
    out.push_str(CONTACT_TAG);
    out.push('\n');
    let _ = writeln!(
        out,
        "{}",
        match cf.branch() {
            Branch::Sigma => "sigma",
            Branch::Tau => "tau",
        }
    );
    let _ = writeln!(out, "{}", cf.samples());
    for v in cf.breakpoints() {
        let _ = writeln!(out, "{}", fmt_f64(*v));
    }
    out
}

/// Writes a contact function to a file.
pub fn write_contact(path: &Path, cf: &ContactFunction) -> Result<()> {
    fs::write(path, write_contact_string(cf))?;
    Ok(())
}

/// Parses a contact-function file.
pub fn parse_contact(text: &str) -> Result<ContactFunction> {
    let mut lines = Lines::new(text);
    let (lineno, tag) = lines.next_content().ok_or(Error::Parse {
        line: 1,
        reason: "empty file".into(),
    })?;
    if tag != CONTACT_TAG {
        return Err(Error::Parse {
            line: lineno,
            reason: format!("expected format tag '{CONTACT_TAG}', found '{tag}'"),
        });
    }
    let (lineno, branch_line) = lines.next_content().ok_or(Error::Parse {
        line: lineno,
        reason: "missing branch".into(),
    })?;
    let branch = match branch_line {
        "sigma" => Branch::Sigma,
        "tau" => Branch::Tau,
        other => {
            return Err(Error::Parse {
                line: lineno,
                reason: format!("unknown branch '{other}'"),
            })
        }
    };
    let (lineno, n_line) = lines.next_content().ok_or(Error::Parse {
        line: lineno,
        reason: "missing sample count".into(),
    })?;
    let n: usize = n_line.parse().map_err(|e| Error::Parse {
        line: lineno,
        reason: format!("bad sample count: {e}"),
    })?;
    let mut lift = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (lineno, line) = lines.next_content().ok_or(Error::Parse {
            line: lineno + k + 1,
            reason: format!("expected {} breakpoints, found {k}", n + 1),
        })?;
        let v = parse_floats(line, lineno, 1)?;
        lift.push(v[0]);
    }
    ContactFunction::from_lift_breakpoints(lift, branch)
}

/// Reads a contact-function file.
pub fn read_contact(path: &Path) -> Result<ContactFunction> {
    parse_contact(&fs::read_to_string(path)?)
}

/// The tabular export kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    SigmaNGraph,
    PpSurface,
    CurvatureProfile,
    AttractorTrace,
    FixedPoints,
}

impl FromStr for ExportKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma_n_graph" | "sigma-n-graph" => Ok(ExportKind::SigmaNGraph),
            "pp_surface" | "pp-surface" => Ok(ExportKind::PpSurface),
            "curvature_profile" | "curvature-profile" => Ok(ExportKind::CurvatureProfile),
            "attractor_trace" | "attractor-trace" => Ok(ExportKind::AttractorTrace),
            "fixed_points" | "fixed-points" => Ok(ExportKind::FixedPoints),
            other => Err(Error::UnknownExportKind(other.into())),
        }
    }
}

/// CSV of `t, σⁿ(t), distance to the diagonal` over a grid.
pub fn sigma_n_graph_csv(cf: &ContactFunction, n: usize, grid: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# sigma_n graph, n={n}, grid={grid}");
    out.push_str("t,sigma_n,dist_diag\n");
    for k in 0..grid {
        let t = k as f64 / grid as f64;
        let v = cf.iterate(CircleParam::new(t), n).value();
        let d = circle_dist(v, t);
        let _ = writeln!(out, "{},{},{}", fmt_f64(t), fmt_f64(v), fmt_f64(d));
    }
    out
}

/// CSV of the distance landscape `s,t,pp`, row-major over the grid.
pub fn pp_surface_csv(curve: &dyn Curve, grid: usize) -> String {
    let pts: Vec<Point3> = (0..grid)
        .map(|i| curve.point(CircleParam::new(i as f64 / grid as f64)))
        .collect();
    let rows: Vec<String> = scan::map_rows(grid, |i| {
        let mut row = String::with_capacity(grid * 24);
        let s = i as f64 / grid as f64;
        for j in 0..grid {
            let t = j as f64 / grid as f64;
            let d = (pts[i] - pts[j]).norm();
            let _ = writeln!(row, "{},{},{}", fmt_f64(s), fmt_f64(t), fmt_f64(d));
        }
        row
    });
    let mut out = String::new();
    let _ = writeln!(out, "# pp surface, grid={grid}");
    out.push_str("s,t,pp\n");
    for r in rows {
        out.push_str(&r);
    }
    out
}

/// CSV of the scaled curvature profile `t, κ(t)·Δ`.
pub fn curvature_profile_csv(curve: &dyn Curve, delta: f64, grid: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# curvature profile scaled by thickness, grid={grid}");
    out.push_str("t,kappa_delta\n");
    for k in 0..grid {
        let t = k as f64 / grid as f64;
        let kd = curve.curvature(CircleParam::new(t)) * delta;
        let _ = writeln!(out, "{},{}", fmt_f64(t), fmt_f64(kd));
    }
    out
}

/// CSV of attractor displacement traces, `start,i,displacement`.
pub fn attractor_trace_csv(report: &AttractorReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# attractor displacement traces, cycle_len={}",
        report.cycle_len
    );
    out.push_str("start,i,displacement\n");
    for s in &report.starts {
        for (i, d) in s.displacements.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", fmt_f64(s.start), i, fmt_f64(*d));
        }
    }
    out
}

/// CSV of fixed-point scans, `n,t,residual,type`.
pub fn fixed_points_csv(scans: &[(usize, FixedPointScan)]) -> String {
    let mut out = String::new();
    out.push_str("# fixed points of sigma^n\n");
    out.push_str("n,t,residual,type\n");
    for (n, scan) in scans {
        match scan {
            FixedPointScan::Degenerate => {
                let _ = writeln!(out, "{n},,,degenerate");
            }
            FixedPointScan::Points(pts) => {
                for p in pts {
                    let kind = match p.kind {
                        FixedPointKind::Crossing => "crossing",
                        FixedPointKind::Grazing => "grazing",
                    };
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        n,
                        fmt_f64(p.t),
                        fmt_f64(p.residual),
                        kind
                    );
                }
            }
        }
    }
    out
}

/// CSV of contact-symmetry residuals, `identity,t,residual`.
pub fn sigma_symmetry_csv(cf: &ContactFunction, s_star: f64, grid: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# contact symmetry residuals, s_star={}", fmt_f64(s_star));
    out.push_str("identity,t,residual\n");
    for k in 0..grid {
        let t = k as f64 / grid as f64;
        let plus = CircleParam::new(s_star + t);
        let minus = CircleParam::new(s_star - t);
        let tc = CircleParam::new(t);
        let rows = [
            (
                "sigma_reflect",
                cf.sigma(plus).dist(CircleParam::new(-cf.tau(minus).value())),
            ),
            (
                "sigma_shift",
                cf.sigma(tc.shift(1.0 / 3.0)).dist(cf.sigma(tc).shift(1.0 / 3.0)),
            ),
            (
                "tau_reflect",
                cf.tau(plus).dist(CircleParam::new(-cf.sigma(minus).value())),
            ),
            (
                "tau_shift",
                cf.tau(tc.shift(1.0 / 3.0)).dist(cf.tau(tc).shift(1.0 / 3.0)),
            ),
        ];
        for (name, r) in rows {
            let _ = writeln!(out, "{},{},{}", name, fmt_f64(t), fmt_f64(r));
        }
    }
    out
}
