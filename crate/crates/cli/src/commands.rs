//! Subcommand implementations.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, Context, Result};
use clap::Args;

use thickknot::contact::{
    contact_chord, find_seed_contact, trace_contact, ContactFunction, TraceConfig,
};
use thickknot::curve::Curve;
use thickknot::cycles::{
    attractor_orbit, attractor_report, counting_check, detect_cycles, fixed_points,
    partition, piece_map_check, Cycle, FixedPointScan, ROOT_TOL,
};
use thickknot::symmetry::{detect_frame, verify_shape_symmetry, verify_sigma_symmetry};
use thickknot::thickness::{classify_point, thickness, PointClassKind};
use thickknot::{io as tkio, CircleParam};

use crate::input::{self, Format, Input};
use crate::CommonOpts;

/// Marker for argument/file problems that should exit with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

/// Classifies an error chain: usage and IO problems exit 2, analysis
/// failures exit 1.
pub fn is_usage_or_io(e: &anyhow::Error) -> bool {
    for cause in e.chain() {
        if cause.is::<UsageError>() || cause.is::<std::io::Error>() {
            return true;
        }
        if let Some(tk) = cause.downcast_ref::<thickknot::Error>() {
            match tk {
                thickknot::Error::Io(_)
                | thickknot::Error::Parse { .. }
                | thickknot::Error::UnknownExportKind(_)
                | thickknot::Error::InvalidInput(_) => return true,
                _ => {}
            }
        }
    }
    false
}

fn load_input(opts: &CommonOpts) -> Result<Input> {
    input::load(opts)
}

fn write_table(opts: &CommonOpts, name: &str, contents: &str) -> Result<PathBuf> {
    let dir = input::out_dir(opts);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn trace(opts: &CommonOpts, inp: &Input, delta: f64) -> Result<ContactFunction> {
    let cfg = TraceConfig {
        n: opts.n.unwrap_or(1000).max(64),
        window: opts.window,
        branch: opts.branch.into(),
        ..TraceConfig::default()
    };
    Ok(trace_contact(&inp.biarc, delta, cfg)?)
}

/// Thickness, ropelength and classification census.
#[derive(Args)]
pub struct ThicknessCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Size of the classification census grid.
    #[arg(long, default_value_t = 60)]
    census: usize,
}

impl ThicknessCmd {
    pub fn run(&self) -> Result<()> {
        let inp = load_input(&self.common)?;
        let rep = thickness(&inp.biarc)?;
        let arclength = inp.biarc.arclength();
        println!("input: {} ({} nodes)", inp.label, inp.poly.nodes().len());
        println!("arclength:  {arclength:.9}");
        println!("thickness:  {:.9}", rep.delta);
        println!("ropelength: {:.9}", arclength / rep.delta);
        if let (Some(r), Some(d)) = (rep.local_radius_min, rep.dcsd_half) {
            println!("min local radius: {r:.9}   dcsd/2: {d:.9}");
        }
        for a in &rep.achievers {
            println!("achieved by: {a:?}");
        }
        let mut census = [0usize; 3];
        let mut rows = String::new();
        rows.push_str("t,class,kappa_delta,curvature_active\n");
        for k in 0..self.census {
            let t = CircleParam::new(k as f64 / self.census as f64);
            let cls = classify_point(&inp.biarc, t, self.common.tol, &rep)?;
            let (idx, tag) = match cls.kind {
                PointClassKind::A => (0, "A"),
                PointClassKind::B => (1, "B"),
                PointClassKind::C => (2, "C"),
            };
            census[idx] += 1;
            let _ = writeln!(
                rows,
                "{},{},{:.6},{}",
                t.value(),
                tag,
                cls.kappa_delta,
                cls.curvature_active
            );
        }
        println!(
            "classification census over {} samples: A={} B={} C={}",
            self.census, census[0], census[1], census[2]
        );
        if self.common.format == Format::Jsonl {
            let mut out = serde_json::to_string(&rep)?;
            out.push('\n');
            let path = write_table(&self.common, "thickness.jsonl", &out)?;
            println!("wrote {}", path.display());
        }
        let path = write_table(&self.common, "classification.csv", &rows)?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

/// Contact-function tracing.
#[derive(Args)]
pub struct ContactCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Grid for the pp-surface export.
    #[arg(long, default_value_t = 256)]
    grid: usize,
}

impl ContactCmd {
    pub fn run(&self) -> Result<()> {
        let inp = load_input(&self.common)?;
        let rep = thickness(&inp.biarc)?;
        let Some(seed) = find_seed_contact(&inp.biarc, rep.delta)? else {
            println!("no off-diagonal contact (no valley at the 2*thickness scale)");
            return Ok(());
        };
        println!(
            "seed: pp({:.6}, {:.6}) = {:.9} (2*thickness = {:.9})",
            seed.s,
            seed.t,
            seed.pp,
            2.0 * rep.delta
        );
        let cf = trace(&self.common, &inp, rep.delta)?;
        println!("sigma(0) = {}", cf.sigma(CircleParam::new(0.0)));
        println!("tau(0)   = {}", cf.tau(CircleParam::new(0.0)));
        let chord = contact_chord(&inp.biarc, CircleParam::new(0.0), &cf)?;
        println!(
            "chord at 0: length {:.9}, angle residuals {:.3e} / {:.3e} rad{}",
            chord.length,
            chord.angle_residual_s,
            chord.angle_residual_t,
            if chord.non_contact_warning {
                "  (warning: beyond contact residual threshold)"
            } else {
                ""
            }
        );
        let path = write_table(
            &self.common,
            "contact_function.txt",
            &tkio::write_contact_string(&cf),
        )?;
        println!("wrote {}", path.display());
        let pp = tkio::pp_surface_csv(&inp.biarc, self.grid);
        let path = write_table(&self.common, "pp_surface.csv", &pp)?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

/// Cycle detection over a period range.
#[derive(Args)]
pub struct CyclesCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Largest period to scan.
    #[arg(long, default_value_t = 30)]
    n_max: usize,
}

impl CyclesCmd {
    pub fn run(&self) -> Result<()> {
        let inp = load_input(&self.common)?;
        let rep = thickness(&inp.biarc)?;
        let cf = trace(&self.common, &inp, rep.delta)?;
        let cycles = detect_cycles(&cf, self.n_max)?;
        let mut scans = Vec::new();
        for n in 1..=self.n_max {
            let scan = fixed_points(&cf, n, ROOT_TOL);
            let verdict = counting_check(&scan, &cycles, n);
            let minimal: Vec<&Cycle> =
                cycles.iter().filter(|c| c.n == n && c.minimal).collect();
            if scan.count() > 0 || !minimal.is_empty() {
                println!(
                    "n={n}: {} fixed points, {} minimal cycles, counting {} (slack {})",
                    verdict.fixed_points,
                    verdict.minimal_cycles,
                    if verdict.holds { "ok" } else { "VIOLATED" },
                    verdict.slack
                );
            }
            scans.push((n, scan));
        }
        for c in &cycles {
            if c.minimal {
                println!(
                    "minimal {}-cycle at {:?} (residual {:.2e}, winding {})",
                    c.n,
                    c.params.iter().map(|p| (p * 1e4).round() / 1e4).collect::<Vec<_>>(),
                    c.residual,
                    c.winding
                );
                if c.n == 9 {
                    println!("ordering along the circle: {:?}", c.ordering());
                    if let Ok(part) = partition(c) {
                        let verdict = piece_map_check(&cf, &part, self.common.tol.max(2e-3));
                        print!("piece chain:");
                        for label in &verdict.chain {
                            print!(" {label}");
                        }
                        println!(
                            "  (endpoint residual {:.2e}, interiors {}, {})",
                            verdict.endpoint_residual_max,
                            if verdict.interior_ok { "ok" } else { "off" },
                            if verdict.ok { "ok" } else { "MISMATCH" }
                        );
                    }
                }
            } else if let Some(d) = c.multiple_of {
                println!("{}-cycle = repeated {}-cycle", c.n, d);
            }
        }
        let csv = tkio::fixed_points_csv(&scans);
        let path = write_table(&self.common, "fixed_points.csv", &csv)?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

/// Attractor diagnostics.
#[derive(Args)]
pub struct AttractorCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Number of start parameters.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    /// Cycle periods to iterate per start.
    #[arg(long, default_value_t = 150)]
    periods: usize,
    /// Highlighted start parameter for an orbit trace export.
    #[arg(long, default_value_t = 0.05)]
    start: f64,
}

impl AttractorCmd {
    pub fn run(&self) -> Result<()> {
        let inp = load_input(&self.common)?;
        let rep = thickness(&inp.biarc)?;
        let cf = trace(&self.common, &inp, rep.delta)?;
        let cycles = detect_cycles(&cf, 9)?;
        let nine = cycles
            .iter()
            .find(|c| c.n == 9 && c.minimal)
            .ok_or_else(|| anyhow!("no minimal nine-cycle detected"))?;
        let report = attractor_report(&cf, &nine.params, self.grid, self.periods, 2e-3)?;
        let converged = report
            .starts
            .iter()
            .filter(|s| s.first_within.is_some())
            .count();
        let monotone = report.starts.iter().filter(|s| s.monotone).count();
        println!(
            "{} of {} starts approach a cycle point within 2e-3 ({} monotone)",
            converged,
            report.starts.len(),
            monotone
        );
        if converged == report.starts.len() {
            println!("all starts converge to cycle points");
        }
        let orbit = attractor_orbit(&cf, CircleParam::new(self.start), 9 * self.periods)?;
        let mut trace_csv = String::from("# orbit trace\ni,t_lift\n");
        for (i, x) in orbit.iter().enumerate() {
            let _ = writeln!(trace_csv, "{i},{x:.12}");
        }
        let path = write_table(&self.common, "orbit_trace.csv", &trace_csv)?;
        println!("wrote {}", path.display());
        let csv = tkio::attractor_trace_csv(&report);
        let path = write_table(&self.common, "attractor_trace.csv", &csv)?;
        println!("wrote {}", path.display());
        // nearest cycle point from the highlighted start
        let end = orbit[orbit.len() - 1].rem_euclid(1.0);
        let nearest = nine
            .params
            .iter()
            .copied()
            .min_by(|a, b| {
                thickknot::param::circle_dist(*a, end)
                    .total_cmp(&thickknot::param::circle_dist(*b, end))
            })
            .unwrap();
        println!("start {} drifts toward cycle point {nearest:.4}", self.start);
        Ok(())
    }
}

/// Symmetry detection and verification.
#[derive(Args)]
pub struct SymmetryCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Verification grid size.
    #[arg(long, default_value_t = 512)]
    grid: usize,
}

impl SymmetryCmd {
    pub fn run(&self) -> Result<()> {
        let inp = load_input(&self.common)?;
        let frame = detect_frame(&inp.biarc)?;
        println!(
            "c3 axis {:?} (fit residual {:.3e})",
            frame.c3_axis, frame.residual
        );
        for (i, axis) in frame.c2_axes.iter().enumerate() {
            println!("c2 axis {i}: {axis:?}");
        }
        println!("s* = {:.9}", frame.s_star);
        let shape = verify_shape_symmetry(&inp.biarc, &frame, self.grid)?;
        println!(
            "shape residuals: c3 {:.3e}, c2 {:.3e} {:.3e} {:.3e}",
            shape.c3_max_residual,
            shape.c2_max_residuals[0],
            shape.c2_max_residuals[1],
            shape.c2_max_residuals[2]
        );
        let rep = thickness(&inp.biarc)?;
        if find_seed_contact(&inp.biarc, rep.delta)?.is_some() {
            let cf = trace(&self.common, &inp, rep.delta)?;
            let sym = verify_sigma_symmetry(&cf, frame.s_star, self.grid);
            println!(
                "contact identities: reflect sigma {:.3e}, shift sigma {:.3e}, reflect tau {:.3e}, shift tau {:.3e}",
                sym.reflect_sigma, sym.shift_sigma, sym.reflect_tau, sym.shift_tau
            );
            let csv = tkio::sigma_symmetry_csv(&cf, frame.s_star, self.grid);
            let path = write_table(&self.common, "symmetry_residuals.csv", &csv)?;
            println!("wrote {}", path.display());
        } else {
            println!("no contact valley; skipping contact identities");
        }
        Ok(())
    }
}

/// Figure-style table exports.
#[derive(Args)]
pub struct ExportCmd {
    #[command(flatten)]
    common: CommonOpts,
    /// Table kind: sigma_n_graph, pp_surface, curvature_profile,
    /// attractor_trace or fixed_points.
    #[arg(long = "table")]
    table: String,
    /// Iterate count for sigma_n_graph.
    #[arg(long, default_value_t = 9)]
    sigma_n: usize,
    /// Grid for gridded tables.
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Largest period for fixed_points.
    #[arg(long, default_value_t = 30)]
    n_max: usize,
}

impl ExportCmd {
    pub fn run(&self) -> Result<()> {
        let kind: tkio::ExportKind = self.table.parse::<tkio::ExportKind>()?;
        let inp = load_input(&self.common)?;
        let (name, contents) = match kind {
            tkio::ExportKind::PpSurface => (
                "pp_surface.csv".to_string(),
                tkio::pp_surface_csv(&inp.biarc, self.grid),
            ),
            tkio::ExportKind::CurvatureProfile => {
                let rep = thickness(&inp.biarc)?;
                (
                    "curvature_profile.csv".to_string(),
                    tkio::curvature_profile_csv(&inp.biarc, rep.delta, self.grid),
                )
            }
            tkio::ExportKind::SigmaNGraph => {
                let rep = thickness(&inp.biarc)?;
                let cf = trace(&self.common, &inp, rep.delta)?;
                (
                    format!("sigma_{}_graph.csv", self.sigma_n),
                    tkio::sigma_n_graph_csv(&cf, self.sigma_n, self.grid),
                )
            }
            tkio::ExportKind::FixedPoints => {
                let rep = thickness(&inp.biarc)?;
                let cf = trace(&self.common, &inp, rep.delta)?;
                let scans: Vec<(usize, FixedPointScan)> = (1..=self.n_max)
                    .map(|n| (n, fixed_points(&cf, n, ROOT_TOL)))
                    .collect();
                ("fixed_points.csv".to_string(), tkio::fixed_points_csv(&scans))
            }
            tkio::ExportKind::AttractorTrace => {
                let rep = thickness(&inp.biarc)?;
                let cf = trace(&self.common, &inp, rep.delta)?;
                let cycles = detect_cycles(&cf, 9)?;
                let nine = cycles
                    .iter()
                    .find(|c| c.n == 9 && c.minimal)
                    .ok_or_else(|| anyhow!("no minimal nine-cycle detected"))?;
                let report = attractor_report(&cf, &nine.params, 64, 150, 2e-3)?;
                (
                    "attractor_trace.csv".to_string(),
                    tkio::attractor_trace_csv(&report),
                )
            }
        };
        let path = write_table(&self.common, &name, &contents)?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

/// Synthetic input generation.
#[derive(Args)]
pub struct GenerateCmd {
    /// Shape to generate: synthetic-trefoil or circle.
    #[arg(long, value_enum, default_value_t = crate::input::CurveKind::SyntheticTrefoil)]
    kind: crate::input::CurveKind,
    /// Output representation: pt or fourier.
    #[arg(long = "as", value_enum, default_value_t = GenRep::Pt)]
    rep: GenRep,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
    /// Node count for point-tangent output.
    #[arg(long, default_value_t = 333)]
    n: usize,
    /// Radius for circles.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GenRep {
    Pt,
    Fourier,
}

impl GenerateCmd {
    pub fn run(&self) -> Result<()> {
        use thickknot::curve::{fourier_to_poly, shapes};
        let (fc, label) = match self.kind {
            crate::input::CurveKind::SyntheticTrefoil => {
                (shapes::standard_trefoil(), "synthetic trefoil")
            }
            crate::input::CurveKind::Circle => {
                if !(self.radius > 0.0) {
                    return Err(anyhow!(UsageError("--radius must be positive".into())));
                }
                (shapes::circle(self.radius), "circle")
            }
            _ => {
                return Err(anyhow!(UsageError(
                    "generate supports synthetic-trefoil and circle".into()
                )))
            }
        };
        match self.rep {
            GenRep::Fourier => {
                tkio::write_fourier(&self.out, &fc)?;
            }
            GenRep::Pt => {
                let poly = fourier_to_poly(&fc, self.n.max(8))?;
                tkio::write_point_tangent(&self.out, &poly, Some(label))?;
            }
        }
        println!("wrote {}", self.out.display());
        Ok(())
    }
}
