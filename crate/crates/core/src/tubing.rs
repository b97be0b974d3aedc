//! Freedman tubings.
//!
//! A tubing adds annuli on the cusp tori joining boundary components of a
//! surface. Each tube is described by the cusp it lies on, its boundary slope
//! `δ` and its wrapping number `k`; unless an exact length is supplied, its
//! length is taken to be the lattice lower bound `k·area(T)/t(δ)`. Verdicts
//! computed from that lower bound are conservative for a pass.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{Lattice, Slope};
use crate::surgery::{CertifyError, SurfaceData};
use crate::verdict::{Comparison, Criterion, Relation, Verdict};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TubingError {
    #[error("a tubing needs at least one tube")]
    NoTubes,
    #[error("tube {tube}: cusp index {index} out of range ({count} cusps)")]
    CuspOutOfRange { tube: usize, index: usize, count: usize },
    #[error("tube {tube}: explicit length {length} is below the lattice bound {bound}")]
    BelowLatticeBound { tube: usize, length: f64, bound: f64 },
    #[error("tube {tube}: explicit length must be finite and non-negative, got {length}")]
    InvalidLength { tube: usize, length: f64 },
    #[error("surface of genus {genus} with {boundary} boundary components is not hyperbolic")]
    NotHyperbolic { genus: u32, boundary: u32 },
    #[error("embedded-surface bound undefined for genus {genus}, {boundary} boundary components")]
    EmbeddedBoundUndefined { genus: u32, boundary: u32 },
    #[error(transparent)]
    Surface(#[from] CertifyError),
}

pub type Result<T> = std::result::Result<T, TubingError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TubeSpec {
    pub cusp: usize,
    pub boundary_slope: Slope,
    pub wrap: u64,
    pub explicit_length: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubingSpec {
    pub surface: SurfaceData,
    tubes: Vec<TubeSpec>,
    pub totally_geodesic: bool,
}

impl TubingSpec {
    pub fn new(surface: SurfaceData, tubes: Vec<TubeSpec>, totally_geodesic: bool) -> Result<Self> {
        if tubes.is_empty() {
            return Err(TubingError::NoTubes);
        }
        surface.validate()?;
        Ok(Self {
            surface,
            tubes,
            totally_geodesic,
        })
    }

    pub fn tubes(&self) -> &[TubeSpec] {
        &self.tubes
    }

    /// Wrapping number of the tubing: the least wrap over its tubes.
    pub fn wrap(&self) -> u64 {
        self.tubes.iter().map(|t| t.wrap).min().expect("tubing has tubes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthSource {
    Explicit,
    LatticeBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TubeLength {
    pub cusp: usize,
    pub boundary_slope: Slope,
    pub wrap: u64,
    /// `k·area(T)/t(δ)`.
    pub lattice_bound: f64,
    pub length: f64,
    pub source: LengthSource,
}

/// Length used for one tube: the explicit length when given, otherwise the
/// lattice bound `k·area(T)/t(δ)`.
pub fn tube_length_bound(lattice: &Lattice, tube: &TubeSpec) -> f64 {
    tube.explicit_length.unwrap_or_else(|| lattice_bound(lattice, tube))
}

fn lattice_bound(lattice: &Lattice, tube: &TubeSpec) -> f64 {
    tube.wrap as f64 * lattice.area() / lattice.length(tube.boundary_slope.class())
}

/// Per-tube lengths, validating explicit lengths against the lattice bound.
pub fn tube_lengths(lattices: &[Lattice], spec: &TubingSpec) -> Result<Vec<TubeLength>> {
    spec.tubes
        .iter()
        .enumerate()
        .map(|(i, tube)| {
            let lattice = lattices.get(tube.cusp).ok_or(TubingError::CuspOutOfRange {
                tube: i,
                index: tube.cusp,
                count: lattices.len(),
            })?;
            let bound = lattice_bound(lattice, tube);
            let source = match tube.explicit_length {
                Some(length) if !(length.is_finite() && length >= 0.0) => {
                    return Err(TubingError::InvalidLength { tube: i, length });
                }
                Some(length) if length < bound => {
                    return Err(TubingError::BelowLatticeBound { tube: i, length, bound });
                }
                Some(_) => LengthSource::Explicit,
                None => LengthSource::LatticeBound,
            };
            Ok(TubeLength {
                cusp: tube.cusp,
                boundary_slope: tube.boundary_slope,
                wrap: tube.wrap,
                lattice_bound: bound,
                length: tube_length_bound(lattice, tube),
                source,
            })
        })
        .collect()
}

/// `ℓ(A)`: the shortest tube.
pub fn tubing_length(lattices: &[Lattice], spec: &TubingSpec) -> Result<f64> {
    Ok(tube_lengths(lattices, spec)?
        .iter()
        .map(|t| t.length)
        .fold(f64::INFINITY, f64::min))
}

/// `2(ρ(F) + w(F) + π)`.
pub fn geometrically_finite_threshold(surface: &SurfaceData) -> f64 {
    2.0 * (surface.rho + surface.w + PI)
}

fn tube_checks(lengths: &[TubeLength], relation: Relation, threshold: f64) -> Vec<Comparison> {
    lengths
        .iter()
        .enumerate()
        .map(|(i, t)| {
            Comparison::new(
                format!(
                    "length of tube {i} (cusp {}, delta = {}, wrap {})",
                    t.cusp, t.boundary_slope, t.wrap
                ),
                t.length,
                relation,
                threshold,
            )
        })
        .collect()
}

fn bound_note(v: Verdict, lengths: &[TubeLength]) -> Verdict {
    if lengths.iter().any(|t| t.source == LengthSource::LatticeBound) {
        v.with_note("bound-based: tube lengths from the lattice lower bound k*area/t(delta)")
    } else {
        v
    }
}

/// Every tube longer than `2(ρ(F) + w(F) + π)` on a geometrically finite
/// surface: the tubed surface is π₁-injective.
pub fn check_tubing_geometrically_finite(lattices: &[Lattice], spec: &TubingSpec) -> Result<Verdict> {
    if !spec.surface.geometrically_finite {
        return Ok(Verdict::inapplicable(
            Criterion::TubingGeometricallyFinite,
            "criterion inapplicable: a geometrically infinite surface is a virtual fiber and has no essential tubing",
        ));
    }
    let lengths = tube_lengths(lattices, spec)?;
    let threshold = geometrically_finite_threshold(&spec.surface);
    let v = Verdict::from_checks(
        Criterion::TubingGeometricallyFinite,
        tube_checks(&lengths, Relation::Gt, threshold),
        "the tubed surface is pi1-injective",
    );
    Ok(bound_note(v, &lengths))
}

/// Every tube of length at least `π` on a totally geodesic surface: the
/// tubed surface is π₁-injective.
pub fn check_tubing_totally_geodesic(lattices: &[Lattice], spec: &TubingSpec) -> Result<Verdict> {
    if !spec.totally_geodesic {
        return Ok(Verdict::inapplicable(
            Criterion::TubingTotallyGeodesic,
            "criterion inapplicable: surface not asserted totally geodesic",
        ));
    }
    let lengths = tube_lengths(lattices, spec)?;
    let v = Verdict::from_checks(
        Criterion::TubingTotallyGeodesic,
        tube_checks(&lengths, Relation::Ge, PI),
        "the tubed surface is pi1-injective",
    );
    Ok(bound_note(v, &lengths))
}

/// Wrapping-number bound for inessential tubings of a totally geodesic
/// surface of genus `g` with `b` boundary components, with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WrapBound {
    /// `−χ = 2g + b − 2`.
    pub negative_euler_characteristic: u64,
    /// Area `2π(2g + b − 2)` of the complete finite-area surface.
    pub complete_area: f64,
    /// Strict upper bound `π(2g + b − 2)` on a boundary slope's length.
    pub cusp_length_bound: f64,
    /// Least area `√3/2` of a maximal cusp torus.
    pub min_torus_area: f64,
    /// `2π²(2g + b − 2)/√3`.
    pub wrap_bound: f64,
}

pub fn totally_geodesic_wrap_bound(genus: u32, boundary: u32) -> Result<WrapBound> {
    let chi = 2 * genus as i64 + boundary as i64 - 2;
    if chi <= 0 {
        return Err(TubingError::NotHyperbolic { genus, boundary });
    }
    let n = chi as f64;
    let min_torus_area = 3f64.sqrt() / 2.0;
    let cusp_length_bound = PI * n;
    Ok(WrapBound {
        negative_euler_characteristic: chi as u64,
        complete_area: 2.0 * PI * n,
        cusp_length_bound,
        min_torus_area,
        // wrap·(√3/2)/(π(2g + b − 2)) ≥ π
        wrap_bound: PI * cusp_length_bound / min_torus_area,
    })
}

/// Wrapping number `6g + 2b − 3` beyond which tubings of an embedded surface
/// are essential.
pub fn embedded_wrap_bound(genus: u32, boundary: u32) -> Result<u64> {
    let v = 6 * genus as i64 + 2 * boundary as i64 - 3;
    u64::try_from(v)
        .ok()
        .filter(|&v| v > 0)
        .ok_or(TubingError::EmbeddedBoundUndefined { genus, boundary })
}

/// Known range `[g + 1, 6g + 2b − 3]` for the optimal embedded-surface
/// constant.
pub fn embedded_bracket_note(genus: u32, boundary: u32) -> String {
    match embedded_wrap_bound(genus, boundary) {
        Ok(upper) => format!(
            "embedded surfaces: the optimal wrap constant C(g,b) satisfies {} <= C(g,b) <= {upper} (it exceeds g); \
             this does not apply to immersed surfaces",
            genus + 1
        ),
        Err(_) => "embedded surfaces: bound undefined for this (g, b)".to_owned(),
    }
}
