//! Input resolution: files or synthetic shapes into analysis-ready curves.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;

use thickknot::contact::Branch;
use thickknot::curve::{
    biarc_interpolate, fourier_to_poly, shapes, BiarcCurve, PolyCurve,
};

use crate::CommonOpts;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    /// Point-tangent text file.
    Pt,
    /// Fourier coefficient text file.
    Fourier,
    /// Upstream PKF point-tangent layout (experimental import).
    Pkf,
    /// The standard analytic trefoil parameterization.
    SyntheticTrefoil,
    /// A planar circle (see --radius).
    Circle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Sigma,
    Tau,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Sigma => Branch::Sigma,
            BranchArg::Tau => Branch::Tau,
        }
    }
}

/// A loaded input: the biarc working curve plus provenance.
pub struct Input {
    pub biarc: BiarcCurve,
    pub poly: PolyCurve,
    pub label: String,
}

/// Node count used when sampling analytic or Fourier inputs.
pub fn sample_nodes(opts: &CommonOpts) -> usize {
    opts.n.unwrap_or(333).max(8)
}

pub fn load(opts: &CommonOpts) -> Result<Input> {
    fn need_input(path: &Option<PathBuf>) -> Result<&Path> {
        path.as_deref().ok_or_else(|| {
            anyhow::Error::new(crate::commands::UsageError(
                "this --kind requires --input FILE".into(),
            ))
        })
    }
    let (poly, label) = match opts.kind {
        CurveKind::Pt => {
            let path = need_input(&opts.input)?;
            let loaded = thickknot::io::read_point_tangent(path)
                .with_context(|| format!("reading {}", path.display()))?;
            for w in &loaded.warnings {
                eprintln!("warning: {w}");
            }
            (loaded.curve, path.display().to_string())
        }
        CurveKind::Pkf => {
            let path = need_input(&opts.input)?;
            let loaded = thickknot::io::read_pkf(path)
                .with_context(|| format!("reading {}", path.display()))?;
            for w in &loaded.warnings {
                eprintln!("warning: {w}");
            }
            (loaded.curve, format!("{} (pkf)", path.display()))
        }
        CurveKind::Fourier => {
            let path = need_input(&opts.input)?;
            let fc = thickknot::io::read_fourier(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let poly = fourier_to_poly(&fc, sample_nodes(opts))?;
            (poly, path.display().to_string())
        }
        CurveKind::SyntheticTrefoil => {
            let fc = shapes::standard_trefoil();
            let poly = fourier_to_poly(&fc, sample_nodes(opts))?;
            (poly, "synthetic trefoil".into())
        }
        CurveKind::Circle => {
            if !(opts.radius > 0.0) {
                return Err(anyhow::Error::new(crate::commands::UsageError(
                    "--radius must be positive".into(),
                )));
            }
            let fc = shapes::circle(opts.radius);
            let poly = fourier_to_poly(&fc, sample_nodes(opts))?;
            (poly, format!("circle r={}", opts.radius))
        }
    };
    let biarc = biarc_interpolate(&poly)?;
    Ok(Input {
        biarc,
        poly,
        label,
    })
}

/// Resolves the output directory: flag, then environment, then cwd.
pub fn out_dir(opts: &CommonOpts) -> PathBuf {
    opts.out_dir
        .clone()
        .or_else(|| std::env::var_os("THICKKNOT_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}
