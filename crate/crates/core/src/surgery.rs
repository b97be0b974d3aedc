//! Length criteria for Dehn filling.
//!
//! All cusp geometry is trusted input: the checkers evaluate inequalities
//! between T-lengths and fixed constants and never decide hyperbolicity,
//! geometric finiteness or coannularity themselves.
//!
//! Constants: a filling slope must have length at least
//! [`FILLING_LENGTH_THRESHOLD`] (`12π`); cusp arcs must stay
//! [`CURVE_MARGIN`] (`5π`) shorter than the filling slope in some direction;
//! the filled cusp is truncated where the filling slope has length
//! [`TRUNCATED_SLOPE_LENGTH`] (`2π + 1`).

use std::collections::BTreeSet;
use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{
    intersection_number, multi_distance, Displacement, Distance, Lattice, LatticeError, MultipleSlope, Slope,
};
use crate::verdict::{Comparison, Criterion, Relation, Status, Verdict};

pub const FILLING_LENGTH_THRESHOLD: f64 = 12.0 * PI;
pub const CURVE_MARGIN: f64 = 5.0 * PI;
pub const TRUNCATED_SLOPE_LENGTH: f64 = 2.0 * PI + 1.0;
/// Cusp arcs of type-I chains must have T-length at least this.
pub const ARC_CHAIN_THRESHOLD: f64 = 2.0 * PI;
/// Threshold when the type-I arcs meet the torus perpendicularly.
pub const ARC_CHAIN_THRESHOLD_PERPENDICULAR: f64 = PI;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("arc decomposition is empty")]
    EmptyDecomposition,
    #[error("arc decomposition must alternate type-I arcs and cusp arcs (segment {0} breaks the pattern)")]
    BrokenAlternation(usize),
    #[error("arc decomposition does not close up: it has an odd number ({0}) of segments")]
    OpenChain(usize),
    #[error("cusp index {index} out of range ({count} cusps)")]
    CuspOutOfRange { index: usize, count: usize },
    #[error("cusp {0} carries a curve arc but is not filled")]
    UnfilledCusp(usize),
    #[error("truncation undefined: slope length {0} does not exceed 2π + 1")]
    TruncationUndefined(f64),
    #[error("length constant {0} must exceed 2π + 1")]
    ConstantTooSmall(f64),
    #[error("no candidate directions for the arc on cusp {0} (supply slopes or enable enumeration)")]
    NoDeltaCandidates(usize),
    #[error("coannular slope {slope} listed twice on cusp {cusp}")]
    DuplicateCoannular { cusp: String, slope: Slope },
    #[error("{field} must be finite and non-negative, got {value}")]
    NegativeQuantity { field: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, CertifyError>;

/// A coannular slope of the surface on a cusp, with the width of its
/// convex-core strip (reporting only).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coannular {
    pub slope: Slope,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspData {
    pub label: String,
    lattice: Lattice,
    coannular: Vec<Coannular>,
}

impl CuspData {
    pub fn new(label: impl Into<String>, lattice: Lattice, coannular: Vec<Coannular>) -> Result<Self> {
        let label = label.into();
        let mut seen = BTreeSet::new();
        for c in &coannular {
            non_negative("coannular width", c.width)?;
            if !seen.insert(c.slope) {
                return Err(CertifyError::DuplicateCoannular {
                    cusp: label,
                    slope: c.slope,
                });
            }
        }
        Ok(Self {
            label,
            lattice,
            coannular,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coannular(&self) -> &[Coannular] {
        &self.coannular
    }
}

/// Trusted data about the immersed surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceData {
    /// Width `w(F)`: the largest convex-core strip width.
    pub w: f64,
    /// Offset `ρ(F)` of the boundary from the convex-core strips.
    pub rho: f64,
    pub genus: u32,
    pub boundary: u32,
    pub geometrically_finite: bool,
}

impl SurfaceData {
    pub fn validate(&self) -> Result<()> {
        non_negative("w", self.w)?;
        non_negative("rho", self.rho)
    }
}

fn non_negative(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(CertifyError::NegativeQuantity { field, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Segment {
    /// Geodesic arc of the thick part whose ends lie near the torus.
    TypeI,
    /// Arc in a cusp, recorded by its displacement on the cusp torus.
    CuspArc { cusp: usize, displacement: Displacement },
}

/// A closed curve `α1 ∪ α2 ∪ … ∪ α2p` with odd segments of type I and even
/// segments in the cusps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcDecomposition {
    segments: Vec<Segment>,
}

impl ArcDecomposition {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(CertifyError::EmptyDecomposition);
        }
        for (i, s) in segments.iter().enumerate() {
            let want_type_i = i % 2 == 0;
            if want_type_i != matches!(s, Segment::TypeI) {
                return Err(CertifyError::BrokenAlternation(i));
            }
        }
        if segments.len() % 2 == 1 {
            return Err(CertifyError::OpenChain(segments.len()));
        }
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// The cusp arcs in order, as `(cusp, displacement)`.
    pub fn cusp_arcs(&self) -> impl Iterator<Item = (usize, Displacement)> + '_ {
        self.segments.iter().filter_map(|s| match *s {
            Segment::CuspArc { cusp, displacement } => Some((cusp, displacement)),
            Segment::TypeI => None,
        })
    }
}

fn lattice_of(lattices: &[Lattice], cusp: usize) -> Result<&Lattice> {
    lattices.get(cusp).ok_or(CertifyError::CuspOutOfRange {
        index: cusp,
        count: lattices.len(),
    })
}

/// Every cusp arc but the last must have T-length `≥ 2π` (`≥ π` when the
/// type-I arcs are perpendicular to the torus); the curve is then nontrivial.
pub fn check_arc_chain(chain: &ArcDecomposition, lattices: &[Lattice], perpendicular: bool) -> Result<Verdict> {
    let threshold = if perpendicular {
        ARC_CHAIN_THRESHOLD_PERPENDICULAR
    } else {
        ARC_CHAIN_THRESHOLD
    };
    let arcs: Vec<_> = chain.cusp_arcs().collect();
    let mut checks = Vec::with_capacity(arcs.len());
    let mut last = None;
    for (k, &(cusp, d)) in arcs.iter().enumerate() {
        let t = lattice_of(lattices, cusp)?.arc_length(d);
        if k + 1 == arcs.len() {
            last = Some((cusp, t));
        } else {
            checks.push(Comparison::new(
                format!("t(cusp arc {k}) on cusp {cusp}"),
                t,
                Relation::Ge,
                threshold,
            ));
        }
    }
    let mut v = Verdict::from_checks(
        Criterion::ArcChainNontrivial,
        checks,
        "the closed curve is nontrivial in M",
    );
    if let Some((cusp, t)) = last {
        v = v.with_note(format!("final cusp arc on cusp {cusp} is exempt: t = {t}"));
    }
    if perpendicular {
        v = v.with_note("type-I arcs meet the torus perpendicularly");
    }
    Ok(v)
}

/// Height `b = t(ρ)/(2π + 1)` at which the filling slope has length `2π + 1`.
pub fn truncation_height(lattice: &Lattice, rho: Slope) -> Result<f64> {
    let t = lattice.length(rho.class());
    if t <= TRUNCATED_SLOPE_LENGTH {
        return Err(CertifyError::TruncationUndefined(t));
    }
    Ok(t / TRUNCATED_SLOPE_LENGTH)
}

/// Area `K − (2π + 1)` that an essential-boundary disk must spend in the
/// truncated cusps once every filling slope has length at least `k`.
pub fn disk_area_bound(k: f64) -> Result<f64> {
    if k.is_nan() || k <= TRUNCATED_SLOPE_LENGTH {
        return Err(CertifyError::ConstantTooSmall(k));
    }
    Ok(k - TRUNCATED_SLOPE_LENGTH)
}

/// Apex height `√(1 + t²/4)` of a geodesic cusp arc of T-length `t`.
pub fn arc_apex_height(t: f64) -> f64 {
    (1.0 + 0.25 * t * t).sqrt()
}

/// Shortest T-length `2√(b² − 1)` of a geodesic cusp arc rising to height `b`.
pub fn min_arc_length_reaching(b: f64) -> f64 {
    2.0 * (b * b - 1.0).sqrt()
}

/// A curve `α' ∪ α''` to be tested against a filling: the components of its
/// type-I part inside the cusps. No arcs means the closed-geodesic case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillingCurve {
    pub label: String,
    pub arcs: Vec<(usize, Displacement)>,
}

/// Where the existential direction `δ` is searched.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaSearch {
    pub candidates: Vec<(usize, Slope)>,
    /// Also try every slope shorter than this on the arc's cusp.
    pub enumerate_below: Option<f64>,
}

impl Default for DeltaSearch {
    fn default() -> Self {
        Self {
            candidates: Vec::new(),
            enumerate_below: Some(FILLING_LENGTH_THRESHOLD),
        }
    }
}

impl DeltaSearch {
    fn candidates_on(&self, cusp: usize, lattice: &Lattice) -> BTreeSet<Slope> {
        let mut out: BTreeSet<Slope> = self
            .candidates
            .iter()
            .filter(|(c, _)| *c == cusp)
            .map(|(_, s)| *s)
            .collect();
        if let Some(bound) = self.enumerate_below {
            out.extend(lattice.enumerate_short_slopes(bound));
        }
        out
    }
}

fn filled_lattices<'a>(filling: &MultipleSlope, cusps: &'a [CuspData]) -> Result<Vec<(usize, Slope, &'a CuspData)>> {
    filling
        .entries()
        .iter()
        .map(|e| {
            cusps
                .get(e.cusp)
                .map(|c| (e.cusp, e.slope, c))
                .ok_or(CertifyError::CuspOutOfRange {
                    index: e.cusp,
                    count: cusps.len(),
                })
        })
        .collect()
}

fn long_filling_check(cusp: usize, rho: Slope, lattice: &Lattice) -> Comparison {
    Comparison::new(
        format!("t(rho) for rho = {rho} on cusp {cusp}"),
        lattice.length(rho.class()),
        Relation::Ge,
        FILLING_LENGTH_THRESHOLD,
    )
}

/// Every filling slope has length `≥ 12π`, and each cusp arc `β` of the curve
/// admits some `δ` with `t_δ(β) ≤ t_δ(ρ_i) − 5π`; the curve then stays
/// nontrivial in the filled manifold.
pub fn check_curve_survives_filling(
    filling: &MultipleSlope,
    cusps: &[CuspData],
    curve: &FillingCurve,
    search: &DeltaSearch,
) -> Result<Verdict> {
    let filled = filled_lattices(filling, cusps)?;
    let mut checks: Vec<Comparison> = filled
        .iter()
        .map(|&(i, rho, c)| long_filling_check(i, rho, c.lattice()))
        .collect();
    let mut notes = Vec::new();
    for (k, &(cusp, beta)) in curve.arcs.iter().enumerate() {
        let (_, rho, data) = filled
            .iter()
            .find(|(i, _, _)| *i == cusp)
            .copied()
            .ok_or(CertifyError::UnfilledCusp(cusp))?;
        let lattice = data.lattice();
        let candidates = search.candidates_on(cusp, lattice);
        // Best witness: the candidate with the most slack, first in slope order on ties.
        let best = candidates
            .iter()
            .map(|&delta| {
                let lhs = lattice.arc_relative_length(beta, delta);
                let rhs = lattice.relative_length(rho.class(), delta) - CURVE_MARGIN;
                (delta, lhs, rhs)
            })
            .min_by(|a, b| (a.1 - a.2).total_cmp(&(b.1 - b.2)))
            .ok_or(CertifyError::NoDeltaCandidates(cusp))?;
        let (delta, lhs, rhs) = best;
        let cmp = Comparison::new(
            format!("t_delta(arc {k}) on cusp {cusp}, delta = {delta}"),
            lhs,
            Relation::Le,
            rhs,
        );
        if !cmp.holds {
            notes.push(format!(
                "arc {k} on cusp {cusp}: no witness found among {} candidates",
                candidates.len()
            ));
        }
        checks.push(cmp);
    }
    let mut v = Verdict::from_checks(
        Criterion::CurveSurvivesFilling,
        checks,
        "the curve is nontrivial in the filled manifold",
    );
    if curve.arcs.is_empty() {
        v = v.with_note("closed geodesic in the thick part: no cusp arcs to test");
    }
    v.notes.extend(notes);
    Ok(v)
}

/// Checks on one filled cusp for the surface criterion.
fn surface_checks(cusp: usize, rho: Slope, data: &CuspData, surface: &SurfaceData) -> Vec<Comparison> {
    let lattice = data.lattice();
    let mut checks = vec![long_filling_check(cusp, rho, lattice)];
    for c in data.coannular() {
        checks.push(Comparison::new(
            format!("t_beta(rho) for beta = {} on cusp {cusp}", c.slope),
            lattice.relative_length(rho.class(), c.slope),
            Relation::Ge,
            surface.w + CURVE_MARGIN,
        ));
    }
    checks
}

const SURFACE_CONCLUSION: &str = "the surface is pi1-injective in the filled manifold";
const NOT_GEOMETRICALLY_FINITE: &str = "criterion inapplicable: surface not asserted geometrically finite";

/// For every filled cusp, `t(ρ_i) ≥ 12π` and `t_β(ρ_i) ≥ w(F) + 5π` for each
/// coannular slope `β` on it.
pub fn check_surface_survives_filling(
    filling: &MultipleSlope,
    cusps: &[CuspData],
    surface: &SurfaceData,
) -> Result<Verdict> {
    surface.validate()?;
    let filled = filled_lattices(filling, cusps)?;
    if !surface.geometrically_finite {
        return Ok(Verdict::inapplicable(
            Criterion::SurfaceSurvivesFilling,
            NOT_GEOMETRICALLY_FINITE,
        ));
    }
    let checks = filled
        .iter()
        .flat_map(|&(i, rho, data)| surface_checks(i, rho, data, surface))
        .collect();
    Ok(Verdict::from_checks(
        Criterion::SurfaceSurvivesFilling,
        checks,
        SURFACE_CONCLUSION,
    ))
}

/// The distance threshold attached to one coannular slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoannularThreshold {
    pub cusp: usize,
    pub slope: Slope,
    /// `u(β) = area(T)/t(β)`: relative length per unit of intersection.
    pub unit: f64,
    /// `(w(F) + 5π)/u(β)`, which `K` must strictly exceed.
    pub ratio: f64,
    pub k: u64,
}

/// Finite data excluded from filling: short slopes per cusp and the
/// coannular distance threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedData {
    pub short_slopes: Vec<BTreeSet<Slope>>,
    pub thresholds: Vec<CoannularThreshold>,
    /// Largest per-slope threshold; `None` without coannular slopes.
    pub k_global: Option<u64>,
}

impl ExcludedData {
    /// `ρ_i ∉ Λ` on every filled cusp and `Δ(ρ, β) ≥ K`.
    pub fn admits(&self, filling: &MultipleSlope, cusps: &[CuspData]) -> bool {
        let short_ok = filling
            .entries()
            .iter()
            .all(|e| self.short_slopes.get(e.cusp).is_some_and(|set| !set.contains(&e.slope)));
        short_ok && self.distance_ok(multi_distance(filling, &coannular_constraints(cusps)))
    }

    pub fn distance_ok(&self, d: Distance) -> bool {
        self.k_global.is_none_or(|k| d >= Distance::Finite(k))
    }
}

/// All coannular slopes as `(cusp, slope)` pairs.
pub fn coannular_constraints(cusps: &[CuspData]) -> Vec<(usize, Slope)> {
    cusps
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.coannular().iter().map(move |b| (i, b.slope)))
        .collect()
}

/// Least integer strictly greater than `x ≥ 0`.
fn least_integer_above(x: f64) -> u64 {
    x.floor() as u64 + 1
}

/// Short slopes (`t < 12π`) on each cusp, and for each coannular `β` the
/// least integer `K > (w(F) + 5π)/u(β)`.
pub fn excluded_data(cusps: &[CuspData], surface: &SurfaceData) -> Result<ExcludedData> {
    surface.validate()?;
    let short_slopes = cusps
        .iter()
        .map(|c| c.lattice().enumerate_short_slopes(FILLING_LENGTH_THRESHOLD))
        .collect();
    let mut thresholds = Vec::new();
    for (i, c) in cusps.iter().enumerate() {
        for b in c.coannular() {
            let unit = c.lattice().area() / c.lattice().length(b.slope.class());
            let ratio = (surface.w + CURVE_MARGIN) / unit;
            thresholds.push(CoannularThreshold {
                cusp: i,
                slope: b.slope,
                unit,
                ratio,
                k: least_integer_above(ratio),
            });
        }
    }
    let k_global = thresholds.iter().map(|t| t.k).max();
    Ok(ExcludedData {
        short_slopes,
        thresholds,
        k_global,
    })
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct CertifyOptions {
    pub delta: DeltaSearch,
    pub curves: Vec<FillingCurve>,
}

/// One verdict, tied to a filled slope when it concerns a single cusp.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEntry {
    pub cusp: Option<usize>,
    pub slope: Option<Slope>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub filling: MultipleSlope,
    pub entries: Vec<ReportEntry>,
    pub excluded: ExcludedData,
    /// `Δ(ρ, β)` over all coannular slopes on filled cusps.
    pub distance: Distance,
    pub status: Status,
    pub summary: String,
}

impl CertificationReport {
    pub fn is_certified(&self) -> bool {
        self.status.is_certified()
    }
}

/// Runs the short-slope, coannular-distance and surface criteria on each
/// filled cusp, and the curve criterion for each requested curve.
///
/// The overall status is the conjunction of all verdicts: `Pass` when every
/// verdict is certified (pass or vacuous), `Inapplicable` when nothing failed
/// but some criterion was inapplicable, `Fail` otherwise.
pub fn certify_filling(
    cusps: &[CuspData],
    filling: &MultipleSlope,
    surface: &SurfaceData,
    options: &CertifyOptions,
) -> Result<CertificationReport> {
    surface.validate()?;
    let filled = filled_lattices(filling, cusps)?;
    let excluded = excluded_data(cusps, surface)?;
    let constraints = coannular_constraints(cusps);
    let distance = multi_distance(filling, &constraints);

    let mut entries = Vec::new();
    for &(i, rho, data) in &filled {
        let lattice = data.lattice();
        let entry = |verdict| ReportEntry {
            cusp: Some(i),
            slope: Some(rho),
            verdict,
        };

        let mut short = Verdict::from_checks(
            Criterion::ShortSlopeExclusion,
            vec![long_filling_check(i, rho, lattice)],
            "slope lies outside the short-slope set",
        );
        if excluded.short_slopes[i].contains(&rho) {
            short = short.with_note(format!(
                "excluded: {rho} is one of {} short slopes on cusp {i}",
                excluded.short_slopes[i].len()
            ));
        }
        entries.push(entry(short));

        let distance_checks = match excluded.k_global {
            Some(k) => data
                .coannular()
                .iter()
                .map(|b| {
                    Comparison::new(
                        format!("Delta(rho, beta) for beta = {} on cusp {i}", b.slope),
                        intersection_number(rho, b.slope) as f64,
                        Relation::Ge,
                        k as f64,
                    )
                })
                .collect(),
            None => Vec::new(),
        };
        entries.push(entry(Verdict::from_checks(
            Criterion::CoannularDistance,
            distance_checks,
            "slope is far from every coannular slope",
        )));

        let surface_verdict = if surface.geometrically_finite {
            Verdict::from_checks(
                Criterion::SurfaceSurvivesFilling,
                surface_checks(i, rho, data, surface),
                SURFACE_CONCLUSION,
            )
        } else {
            Verdict::inapplicable(Criterion::SurfaceSurvivesFilling, NOT_GEOMETRICALLY_FINITE)
        };
        entries.push(entry(surface_verdict));
    }
    for curve in &options.curves {
        let mut v = check_curve_survives_filling(filling, cusps, curve, &options.delta)?;
        v.notes.insert(0, format!("curve: {}", curve.label));
        entries.push(ReportEntry {
            cusp: None,
            slope: None,
            verdict: v,
        });
    }

    let failed = entries.iter().filter(|e| e.verdict.status == Status::Fail).count();
    let inapplicable = entries
        .iter()
        .filter(|e| e.verdict.status == Status::Inapplicable)
        .count();
    let status = if failed > 0 {
        Status::Fail
    } else if inapplicable > 0 {
        Status::Inapplicable
    } else {
        Status::Pass
    };
    let summary = match status {
        Status::Pass | Status::Vacuous => {
            format!("certified: all {} verdicts hold; {SURFACE_CONCLUSION}", entries.len())
        }
        Status::Fail => format!("not certified: {failed} of {} verdicts fail", entries.len()),
        Status::Inapplicable => format!("not certified: {inapplicable} criteria inapplicable"),
    };
    Ok(CertificationReport {
        filling: filling.clone(),
        entries,
        excluded,
        distance,
        status,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Vec2;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn square(side: f64) -> Lattice {
        Lattice::square(side).unwrap()
    }

    fn surface(w: f64) -> SurfaceData {
        SurfaceData {
            w,
            rho: 0.0,
            genus: 1,
            boundary: 2,
            geometrically_finite: true,
        }
    }

    fn cusp(lattice: Lattice, coannular: &[Slope]) -> CuspData {
        CuspData::new(
            "c",
            lattice,
            coannular.iter().map(|&slope| Coannular { slope, width: 0.0 }).collect(),
        )
        .unwrap()
    }

    fn chain(lengths: &[f64]) -> ArcDecomposition {
        let mut segs = Vec::new();
        for &t in lengths {
            segs.push(Segment::TypeI);
            segs.push(Segment::CuspArc {
                cusp: 0,
                displacement: Displacement::new(t, 0.0),
            });
        }
        ArcDecomposition::new(segs).unwrap()
    }

    #[test]
    fn arc_chain_examples() {
        let l = [square(1.0)];
        let v = check_arc_chain(&chain(&[7.0, 7.0, 7.0]), &l, false).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.checks.len(), 2);
        assert!(v.conclusion.is_some());

        let v = check_arc_chain(&chain(&[7.0, 6.0, 7.0, 1.0]), &l, false).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.failures().collect::<Vec<_>>(), vec![1]);
        assert!(v.checks[1].quantity.contains("cusp arc 1"));

        let v = check_arc_chain(&chain(&[3.2, 3.2, 3.2]), &l, true).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert_eq!(
            check_arc_chain(&chain(&[3.2, 3.2, 3.2]), &l, false).unwrap().status,
            Status::Fail
        );

        // The last arc is exempt.
        assert_eq!(
            check_arc_chain(&chain(&[7.0, 0.1]), &l, false).unwrap().status,
            Status::Pass
        );
        assert_eq!(
            check_arc_chain(&chain(&[0.1]), &l, false).unwrap().status,
            Status::Vacuous
        );
    }

    #[test]
    fn malformed_chains() {
        let arc = Segment::CuspArc {
            cusp: 0,
            displacement: Displacement::new(1.0, 0.0),
        };
        assert_eq!(ArcDecomposition::new(vec![]), Err(CertifyError::EmptyDecomposition));
        assert_eq!(
            ArcDecomposition::new(vec![arc, Segment::TypeI]),
            Err(CertifyError::BrokenAlternation(0))
        );
        assert_eq!(
            ArcDecomposition::new(vec![Segment::TypeI, Segment::TypeI]),
            Err(CertifyError::BrokenAlternation(1))
        );
        assert_eq!(
            ArcDecomposition::new(vec![Segment::TypeI, arc, Segment::TypeI]),
            Err(CertifyError::OpenChain(3))
        );
        let far = Segment::CuspArc {
            cusp: 3,
            displacement: Displacement::new(1.0, 0.0),
        };
        let c = ArcDecomposition::new(vec![Segment::TypeI, far]).unwrap();
        assert!(matches!(
            check_arc_chain(&c, &[square(1.0)], false),
            Err(CertifyError::CuspOutOfRange { .. })
        ));
    }

    #[test]
    fn truncation_height_examples() {
        let eps = 1e-9;
        let l = square(TRUNCATED_SLOPE_LENGTH + eps);
        let b = truncation_height(&l, s(1, 0)).unwrap();
        assert!(b > 1.0 && b < 1.0 + 1e-9);
        let b = truncation_height(&square(12.0 * PI), s(1, 0)).unwrap();
        assert!((b - 12.0 * PI / (2.0 * PI + 1.0)).abs() < 1e-15 && b > 5.0);
        assert!((b - 5.1762).abs() < 1e-4);
        assert_eq!(truncation_height(&square(4.0 * PI + 2.0), s(1, 0)).unwrap(), 2.0);
        assert!(matches!(
            truncation_height(&square(7.0), s(1, 0)),
            Err(CertifyError::TruncationUndefined(_))
        ));
    }

    #[test]
    fn disk_bound_examples() {
        assert!((disk_area_bound(12.0 * PI).unwrap() - (10.0 * PI - 1.0)).abs() < 1e-12);
        assert!((disk_area_bound(2.0 * PI + 2.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((disk_area_bound(8.0 * PI).unwrap() - (6.0 * PI - 1.0)).abs() < 1e-12);
        assert!(disk_area_bound(2.0 * PI + 1.0).is_err());
        assert!(disk_area_bound(f64::NAN).is_err());
    }

    #[test]
    fn arc_geometry() {
        assert!((arc_apex_height(min_arc_length_reaching(5.0)) - 5.0).abs() < 1e-12);
        assert!((min_arc_length_reaching(5.0) - 2.0 * 24f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn curve_filling_examples() {
        // t((1,0)) = 13π; the arc runs parallel to ρ with length 6.5π.
        let cusps = [cusp(square(13.0 * PI), &[])];
        let filling = MultipleSlope::new([(0, s(1, 0))], 1).unwrap();
        let curve = FillingCurve {
            label: "a".into(),
            arcs: vec![(0, Displacement::new(0.5, 0.0))],
        };
        let search = DeltaSearch {
            candidates: vec![(0, s(0, 1)), (0, s(1, 0))],
            enumerate_below: None,
        };
        let v = check_curve_survives_filling(&filling, &cusps, &curve, &search).unwrap();
        assert_eq!(v.status, Status::Pass);
        // δ = (0,1): 6.5π ≤ 13π − 5π. δ = (1,0) would need 0 ≤ −5π.
        let arc = &v.checks[1];
        assert!(arc.quantity.ends_with("delta = (0, 1)"), "{}", arc.quantity);
        assert!((arc.value - 6.5 * PI).abs() < 1e-12 && (arc.threshold - 8.0 * PI).abs() < 1e-12);

        let short = [cusp(square(11.0 * PI), &[])];
        let geodesic = FillingCurve {
            label: "g".into(),
            arcs: vec![],
        };
        let v = check_curve_survives_filling(&filling, &short, &geodesic, &search).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert!(v.notes.iter().any(|n| n.contains("closed geodesic")));
        let v = check_curve_survives_filling(&filling, &cusps, &geodesic, &search).unwrap();
        assert_eq!(v.status, Status::Pass);
    }

    #[test]
    fn curve_filling_boundary_is_marginal() {
        // ρ = (0,1) of length 13π, δ = (1,0): threshold t_δ(ρ) − 5π = 8π,
        // and the arc has t_δ(β) = 8π.
        let l = Lattice::new(Vec2::new(PI, 0.0), Vec2::new(0.0, 13.0 * PI)).unwrap();
        let filling = MultipleSlope::new([(0, s(0, 1))], 1).unwrap();
        let curve = FillingCurve {
            label: "b".into(),
            arcs: vec![(0, Displacement::new(0.0, 8.0 / 13.0))],
        };
        let search = DeltaSearch {
            candidates: vec![(0, s(1, 0))],
            enumerate_below: None,
        };
        let v = check_curve_survives_filling(&filling, &[cusp(l, &[])], &curve, &search).unwrap();
        let arc = &v.checks[1];
        assert!((arc.value - arc.threshold).abs() < 1e-12);
        assert!(arc.marginal && v.marginal);
        assert_eq!(arc.holds, arc.value <= arc.threshold);

        // Exactly representable boundary: a 1 × 2 grid scaled so values are exact.
        let l = Lattice::new(Vec2::new(1.0, 0.0), Vec2::new(0.0, 64.0)).unwrap();
        let curve = FillingCurve {
            label: "c".into(),
            arcs: vec![(0, Displacement::new(0.0, (64.0 - CURVE_MARGIN) / 64.0))],
        };
        let v = check_curve_survives_filling(&filling, &[cusp(l, &[])], &curve, &search).unwrap();
        assert!(v.checks[1].marginal);
    }

    #[test]
    fn curve_filling_errors() {
        let cusps = [cusp(square(40.0), &[]), cusp(square(40.0), &[])];
        let filling = MultipleSlope::new([(0, s(1, 0))], 2).unwrap();
        let curve = FillingCurve {
            label: "x".into(),
            arcs: vec![(1, Displacement::new(0.1, 0.0))],
        };
        assert_eq!(
            check_curve_survives_filling(&filling, &cusps, &curve, &DeltaSearch::default()),
            Err(CertifyError::UnfilledCusp(1))
        );
        let curve = FillingCurve {
            label: "x".into(),
            arcs: vec![(0, Displacement::new(0.1, 0.0))],
        };
        let none = DeltaSearch {
            candidates: vec![],
            enumerate_below: None,
        };
        assert_eq!(
            check_curve_survives_filling(&filling, &cusps, &curve, &none),
            Err(CertifyError::NoDeltaCandidates(0))
        );
        // Default search enumerates slopes shorter than 12π: here the short
        // slopes of the 40-square are none, so again no candidate.
        assert_eq!(
            check_curve_survives_filling(&filling, &cusps, &curve, &DeltaSearch::default()),
            Err(CertifyError::NoDeltaCandidates(0))
        );
    }

    #[test]
    fn surface_filling_examples() {
        let filling = MultipleSlope::new([(0, s(1, 0))], 1).unwrap();
        let v = check_surface_survives_filling(&filling, &[cusp(square(12.0 * PI), &[])], &surface(0.0)).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert!(v.checks[0].marginal);

        // β = (1,0), ρ = (0,1).
        let rho = MultipleSlope::new([(0, s(0, 1))], 1).unwrap();
        for (side, expect) in [(5.0 * PI + 0.01, Status::Pass), (5.0 * PI - 0.01, Status::Fail)] {
            // Sheared so t(ρ) > 12π while t_β(ρ) is the height over β.
            let l = Lattice::new(Vec2::new(40.0, 0.0), Vec2::new(40.0, side)).unwrap();
            let v = check_surface_survives_filling(&rho, &[cusp(l, &[s(1, 0)])], &surface(0.0)).unwrap();
            assert_eq!(v.status, expect, "side {side}");
            assert!((v.checks[1].value - l.relative_length_via_intersection(s(0, 1), s(1, 0))).abs() < 1e-12);
        }

        let w = 1.0;
        let l = Lattice::new(Vec2::new(40.0, 0.0), Vec2::new(40.0, w + 5.0 * PI - 0.1)).unwrap();
        let v = check_surface_survives_filling(&rho, &[cusp(l, &[s(1, 0)])], &surface(w)).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert!(v.checks[0].holds && !v.checks[1].holds);
        assert!((v.checks[1].threshold - (w + 5.0 * PI)).abs() < 1e-15);

        let mut gi = surface(0.0);
        gi.geometrically_finite = false;
        let v = check_surface_survives_filling(&filling, &[cusp(square(40.0), &[])], &gi).unwrap();
        assert_eq!(v.status, Status::Inapplicable);
    }

    #[test]
    fn excluded_data_examples() {
        let data = excluded_data(&[cusp(square(1.0), &[])], &surface(0.0)).unwrap();
        let brute: BTreeSet<Slope> = (-38i64..=38)
            .flat_map(|p| (-38i64..=38).map(move |q| (p, q)))
            .filter(|&(p, q)| ((p * p + q * q) as f64).sqrt() < 12.0 * PI)
            .filter_map(|(p, q)| Slope::new(p, q).ok())
            .collect();
        assert_eq!(data.short_slopes[0], brute);
        assert_eq!(data.k_global, None);

        let data = excluded_data(&[cusp(square(40.0), &[])], &surface(0.0)).unwrap();
        assert!(data.short_slopes[0].is_empty());

        // u(β) = area/t(β) = 2 for β = (1,0) on a 1 × 2 rectangle.
        let l = Lattice::new(Vec2::new(1.0, 0.0), Vec2::new(0.0, 2.0)).unwrap();
        let data = excluded_data(&[cusp(l, &[s(1, 0)])], &surface(0.0)).unwrap();
        assert_eq!(data.thresholds[0].unit, 2.0);
        assert_eq!(data.thresholds[0].k, 8);
        assert_eq!(data.k_global, Some(8));
        // Smallest integer strictly above the ratio, by counting.
        let ratio = data.thresholds[0].ratio;
        let counted = (0u64..).find(|&k| k as f64 > ratio).unwrap();
        assert_eq!(counted, 8);
    }

    #[test]
    fn certify_report_marks_short_slopes() {
        let cusps = [cusp(square(1.0), &[s(1, 0)])];
        let filling = MultipleSlope::new([(0, s(3, 4))], 1).unwrap();
        let r = certify_filling(&cusps, &filling, &surface(0.0), &CertifyOptions::default()).unwrap();
        assert_eq!(r.status, Status::Fail);
        let short = &r.entries[0];
        assert_eq!(short.verdict.criterion, Criterion::ShortSlopeExclusion);
        assert_eq!(short.verdict.status, Status::Fail);
        assert!(short.verdict.notes[0].contains("excluded"));
        assert_eq!(short.verdict.checks[0].value, 5.0);
        assert_eq!(short.verdict.checks[0].threshold, 12.0 * PI);
        assert_eq!(r.distance, Distance::Finite(4));
    }

    #[test]
    fn certify_report_pass_and_mixed() {
        let cusps = [cusp(square(40.0), &[s(1, 0)]), cusp(square(40.0), &[])];
        let good = MultipleSlope::new([(0, s(0, 1)), (1, s(1, 0))], 2).unwrap();
        let r = certify_filling(&cusps, &good, &surface(0.0), &CertifyOptions::default()).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:#?}");
        assert!(r.summary.contains("pi1-injective"));
        assert!(r.entries.iter().all(|e| e.verdict.is_certified()));
        // Every (slope, criterion) appears once.
        assert_eq!(r.entries.len(), 6);

        let tiny = [cusp(square(40.0), &[s(1, 0)]), cusp(square(1.0), &[])];
        let r = certify_filling(&tiny, &good, &surface(0.0), &CertifyOptions::default()).unwrap();
        assert_eq!(r.status, Status::Fail);
        let cusp0: Vec<_> = r.entries.iter().filter(|e| e.cusp == Some(0)).collect();
        assert!(cusp0.iter().all(|e| e.verdict.is_certified()));
        assert!(r
            .entries
            .iter()
            .any(|e| e.cusp == Some(1) && e.verdict.status == Status::Fail));
    }

    #[test]
    fn filling_exceeding_k_passes_surface_check() {
        let l = Lattice::new(Vec2::new(1.3, 0.2), Vec2::new(-0.4, 1.1)).unwrap();
        let cusps = [cusp(l, &[s(1, 0), s(1, 1)])];
        let sf = surface(0.7);
        let ex = excluded_data(&cusps, &sf).unwrap();
        let k = ex.k_global.unwrap();
        let mut tested = 0;
        for rho in l.enumerate_short_slopes(200.0) {
            let f = MultipleSlope::new([(0, rho)], 1).unwrap();
            if ex.admits(&f, &cusps) {
                tested += 1;
                assert!(check_surface_survives_filling(&f, &cusps, &sf).unwrap().is_certified());
            }
        }
        assert!(tested > 10, "K = {k}, tested {tested}");
    }
}
