//! Thickness, contact chords and contact billiards of closed curves in ℝ³.
//!
//! The crate is organized around a small set of curve representations
//! ([`curve::PolyCurve`], [`curve::BiarcCurve`], [`curve::FourierCurve`]) and
//! the analyses built on top of them:
//!
//! - [`thickness`] — global radius of curvature, thickness, doubly-critical
//!   self-distance, ropelength and pointwise classification,
//! - [`contact`] — the point-to-point distance landscape, contact-chord
//!   extraction and the contact function σ traced along its valley,
//! - [`cycles`] — fixed points of σⁿ, cycle detection, the nine-cycle
//!   partition and attractor diagnostics,
//! - [`symmetry`] — detection and verification of the dihedral symmetry
//!   frame and the induced identities on σ and τ,
//! - [`io`] — plain-text curve formats and CSV table exports.
//!
//! Pair and triple scans run data-parallel through [`scan`] when the
//! `parallel` feature (default) is enabled; disabling it falls back to
//! sequential loops with bit-identical results.

pub mod contact;
pub mod curve;
pub mod cycles;
mod error;
pub mod io;
pub mod numeric;
pub mod param;
pub mod scan;
pub mod symmetry;
pub mod thickness;

pub use error::{Error, Result};
pub use param::CircleParam;

/// 3D point, f64 components.
pub type Point3 = nalgebra::Point3<f64>;
/// 3D vector, f64 components.
pub type Vector3 = nalgebra::Vector3<f64>;
