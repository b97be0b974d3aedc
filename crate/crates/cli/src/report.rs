//! Report documents produced by each subcommand.

use cuspcert_core::cusp_area::quadrature::QuadratureOracle;
use cuspcert_core::cusp_area::{area_r2_with_branch, R2Branch};
use cuspcert_core::lattice::intersection_number;
use cuspcert_core::surgery::{
    certify_filling, check_arc_chain, excluded_data, CertificationReport, CertifyOptions, CoannularThreshold,
};
use cuspcert_core::tubing::{
    check_tubing_geometrically_finite, check_tubing_totally_geodesic, embedded_bracket_note,
    totally_geodesic_wrap_bound, tube_lengths, TubeLength, WrapBound,
};
use cuspcert_core::{RegionKind, RegionSpec, Slope, Status, TruncationHeight, Verdict};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Manifold;
use crate::error::{ErrorCode, InputError};

/// Largest closed-form/oracle difference `areas` accepts.
pub const AREAS_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Document {
    Certify(CertifyDocument),
    Atlas(AtlasDocument),
    Areas(AreasDocument),
    TubeCheck(TubeCheckDocument),
}

impl Document {
    /// Whether everything the command was asked to certify holds.
    pub fn certified(&self) -> bool {
        match self {
            Document::Certify(d) => d.certified,
            Document::Atlas(_) => true,
            Document::Areas(d) => d.within_tolerance,
            Document::TubeCheck(d) => d.certified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillingOutcome {
    pub label: String,
    pub report: CertificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainOutcome {
    pub label: String,
    pub perpendicular: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyDocument {
    pub name: String,
    pub fillings: Vec<FillingOutcome>,
    pub arc_chains: Vec<ChainOutcome>,
    pub certified: bool,
}

fn runtime_error(path: String, e: impl std::fmt::Display) -> InputError {
    InputError::new(ErrorCode::InvalidArgument, e.to_string()).at(path)
}

pub fn run_certify(m: &Manifold, parallel: bool) -> Result<CertifyDocument, InputError> {
    let options = CertifyOptions {
        delta: m.delta.clone(),
        curves: m.curves.clone(),
    };
    let one = |(i, (label, filling)): (usize, &(String, _))| {
        certify_filling(&m.cusps, filling, &m.surface, &options)
            .map(|report| FillingOutcome {
                label: label.clone(),
                report,
            })
            .map_err(|e| runtime_error(format!("fillings[{i}]"), e))
    };
    // Both paths keep input order.
    let fillings: Vec<_> = if parallel {
        m.fillings.par_iter().enumerate().map(one).collect::<Result<_, _>>()?
    } else {
        m.fillings.iter().enumerate().map(one).collect::<Result<_, _>>()?
    };
    let lattices = m.lattices();
    let arc_chains = m
        .arc_chains
        .iter()
        .enumerate()
        .map(|(i, c)| {
            check_arc_chain(&c.chain, &lattices, c.perpendicular)
                .map(|verdict| ChainOutcome {
                    label: c.label.clone(),
                    perpendicular: c.perpendicular,
                    verdict,
                })
                .map_err(|e| runtime_error(format!("arc_chains[{i}]"), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let certified =
        fillings.iter().all(|f| f.report.is_certified()) && arc_chains.iter().all(|c| c.verdict.is_certified());
    Ok(CertifyDocument {
        name: m.name.clone(),
        fillings,
        arc_chains,
        certified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exclusion {
    /// Shorter than the threshold.
    Short,
    /// `Δ(ρ, β) < K` for some coannular `β`.
    NearCoannular,
    Admissible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtlasEntry {
    pub slope: Slope,
    pub length: f64,
    pub exclusion: Exclusion,
    /// Least `Δ(ρ, β)` over the cusp's coannular slopes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtlasDocument {
    pub name: String,
    pub cusp: usize,
    pub label: String,
    pub threshold: f64,
    pub area: f64,
    pub shortest_length: f64,
    pub short_count: usize,
    /// Every slope shorter than the threshold, by increasing length.
    pub short: Vec<AtlasEntry>,
    pub thresholds: Vec<CoannularThreshold>,
    pub k_global: Option<u64>,
    /// Half-width of the `(p, q)` window covered by `window_slopes`.
    pub window: i64,
    /// All slopes in the window, classified; near-coannular slopes form
    /// infinite strips and are only listed here.
    pub window_slopes: Vec<AtlasEntry>,
}

pub fn run_atlas(m: &Manifold, cusp: usize, threshold: f64) -> Result<AtlasDocument, InputError> {
    let data = m.cusps.get(cusp).ok_or_else(|| {
        InputError::new(
            ErrorCode::InvalidArgument,
            format!("cusp {cusp} out of range ({} cusps)", m.cusps.len()),
        )
    })?;
    if !(threshold.is_finite() && threshold >= 0.0) {
        return Err(InputError::new(
            ErrorCode::InvalidArgument,
            format!("threshold must be finite and >= 0, got {threshold}"),
        ));
    }
    let lattice = data.lattice();
    let excluded = excluded_data(&m.cusps, &m.surface).map_err(|e| runtime_error("surface".into(), e))?;
    let short_set = lattice.enumerate_short_slopes(threshold);

    let classify = |s: Slope| {
        let distance = data.coannular().iter().map(|b| intersection_number(s, b.slope)).min();
        let exclusion = if short_set.contains(&s) {
            Exclusion::Short
        } else if matches!((distance, excluded.k_global), (Some(d), Some(k)) if d < k) {
            Exclusion::NearCoannular
        } else {
            Exclusion::Admissible
        };
        AtlasEntry {
            slope: s,
            length: lattice.length(s.class()),
            exclusion,
            distance,
        }
    };

    let mut short: Vec<AtlasEntry> = short_set.iter().map(|&s| classify(s)).collect();
    short.sort_by(|a, b| a.length.total_cmp(&b.length).then(a.slope.cmp(&b.slope)));

    let reach = short_set
        .iter()
        .map(|s| s.p().abs().max(s.q().abs()))
        .max()
        .unwrap_or(0);
    let window = (reach + 2).clamp(5, 60);
    let mut window_slopes = Vec::new();
    for p in 0..=window {
        for q in -window..=window {
            if p == 0 && q != 1 {
                continue;
            }
            if let Ok(s) = Slope::new(p, q) {
                window_slopes.push(classify(s));
            }
        }
    }

    Ok(AtlasDocument {
        name: m.name.clone(),
        cusp,
        label: data.label.clone(),
        threshold,
        area: lattice.area(),
        shortest_length: lattice.shortest_length(),
        short_count: short.len(),
        short,
        thresholds: excluded.thresholds.into_iter().filter(|t| t.cusp == cusp).collect(),
        k_global: excluded.k_global,
        window,
        window_slopes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreasDocument {
    pub kind: RegionKind,
    pub a: f64,
    pub b: TruncationHeight,
    pub closed_form: f64,
    pub oracle: f64,
    pub difference: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<R2Branch>,
    pub within_tolerance: bool,
}

pub fn run_areas(kind: RegionKind, a: f64, b: TruncationHeight) -> Result<AreasDocument, InputError> {
    let region =
        RegionSpec::new(kind, a, b).map_err(|e| InputError::new(ErrorCode::InvalidArgument, e.to_string()).at("a"))?;
    let oracle = QuadratureOracle::default()
        .region_area(&region)
        .map_err(|e| InputError::new(ErrorCode::InvalidArgument, format!("quadrature failed: {e}")))?;
    let (closed_form, branch) = match kind {
        RegionKind::R1 => (region.area(), None),
        RegionKind::R2 => {
            let (v, br) = area_r2_with_branch(a, b);
            (v, Some(br))
        }
    };
    let difference = (closed_form - oracle).abs();
    Ok(AreasDocument {
        kind,
        a,
        b,
        closed_form,
        oracle,
        difference,
        branch,
        within_tolerance: difference <= AREAS_TOLERANCE,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubingOutcome {
    pub label: String,
    pub tubes: Vec<TubeLength>,
    pub wrap: u64,
    /// Shortest tube.
    pub length: f64,
    pub geometrically_finite: Verdict,
    pub totally_geodesic: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wrap_bound: Option<WrapBound>,
    pub embedded_note: String,
    /// Some applicable criterion certifies the tubed surface.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TubeCheckDocument {
    pub name: String,
    pub tubings: Vec<TubingOutcome>,
    pub certified: bool,
}

pub fn run_tube_check(m: &Manifold) -> Result<TubeCheckDocument, InputError> {
    let lattices = m.lattices();
    let mut tubings = Vec::with_capacity(m.tubings.len());
    for (i, (label, spec)) in m.tubings.iter().enumerate() {
        let path = format!("tubings[{i}]");
        let tubes = tube_lengths(&lattices, spec).map_err(|e| runtime_error(path.clone(), e))?;
        let gf = check_tubing_geometrically_finite(&lattices, spec).map_err(|e| runtime_error(path.clone(), e))?;
        let tg = check_tubing_totally_geodesic(&lattices, spec).map_err(|e| runtime_error(path.clone(), e))?;
        let wrap_bound = if spec.totally_geodesic {
            totally_geodesic_wrap_bound(spec.surface.genus, spec.surface.boundary).ok()
        } else {
            None
        };
        tubings.push(TubingOutcome {
            label: label.clone(),
            wrap: spec.wrap(),
            length: tubes.iter().map(|t| t.length).fold(f64::INFINITY, f64::min),
            tubes,
            certified: gf.is_certified() || tg.is_certified(),
            geometrically_finite: gf,
            totally_geodesic: tg,
            wrap_bound,
            embedded_note: embedded_bracket_note(spec.surface.genus, spec.surface.boundary),
        });
    }
    let certified = tubings.iter().all(|t| t.certified);
    Ok(TubeCheckDocument {
        name: m.name.clone(),
        tubings,
        certified,
    })
}

/// Overall status word used in text output.
pub fn status_word(certified: bool) -> Status {
    if certified {
        Status::Pass
    } else {
        Status::Fail
    }
}
