//! Verdicts built from literal threshold comparisons.
//!
//! Every criterion reduces to a list of inequalities. Each is judged exactly as
//! stated (`≥` vs `>`), with no slack; values within [`MARGINAL_TOLERANCE`]
//! (relative) of their threshold are additionally flagged as marginal.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Relative distance to a threshold below which a comparison is marginal.
pub const MARGINAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Lt => "<",
        }
    }
}

/// One inequality `value (relation) threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub quantity: String,
    pub value: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub holds: bool,
    pub marginal: bool,
}

impl Comparison {
    pub fn new(quantity: impl Into<String>, value: f64, relation: Relation, threshold: f64) -> Self {
        Self {
            quantity: quantity.into(),
            value,
            relation,
            threshold,
            holds: relation.holds(value, threshold),
            marginal: is_marginal(value, threshold),
        }
    }
}

pub fn is_marginal(value: f64, threshold: f64) -> bool {
    (value - threshold).abs() <= MARGINAL_TOLERANCE * threshold.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The criterion quantifies over an empty set.
    Vacuous,
    /// A trusted hypothesis of the criterion (geometric finiteness, total
    /// geodesicity) is not asserted by the input.
    Inapplicable,
}

impl Status {
    /// Whether the criterion's conclusion is obtained.
    pub fn is_certified(self) -> bool {
        matches!(self, Status::Pass | Status::Vacuous)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
            Status::Inapplicable => "inapplicable",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Piecewise-geodesic closed curve with long cusp arcs is nontrivial.
    ArcChainNontrivial,
    /// A curve stays nontrivial after filling along long slopes.
    CurveSurvivesFilling,
    /// A geometrically finite surface stays π₁-injective after filling.
    SurfaceSurvivesFilling,
    /// The filling slope lies outside the short-slope set.
    ShortSlopeExclusion,
    /// The filling slope is far enough from every coannular slope.
    CoannularDistance,
    /// Long tubes on a geometrically finite surface give an essential tubing.
    TubingGeometricallyFinite,
    /// Tubes of length at least π on a totally geodesic surface.
    TubingTotallyGeodesic,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::ArcChainNontrivial => "arc_chain_nontrivial",
            Criterion::CurveSurvivesFilling => "curve_survives_filling",
            Criterion::SurfaceSurvivesFilling => "surface_survives_filling",
            Criterion::ShortSlopeExclusion => "short_slope_exclusion",
            Criterion::CoannularDistance => "coannular_distance",
            Criterion::TubingGeometricallyFinite => "tubing_geometrically_finite",
            Criterion::TubingTotallyGeodesic => "tubing_totally_geodesic",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub criterion: Criterion,
    pub status: Status,
    pub marginal: bool,
    pub checks: Vec<Comparison>,
    /// What a pass certifies; `None` unless the status is certified.
    pub conclusion: Option<String>,
    pub notes: Vec<String>,
}

impl Verdict {
    /// Pass iff every check holds; vacuous when there are no checks.
    pub fn from_checks(criterion: Criterion, checks: Vec<Comparison>, conclusion: &str) -> Self {
        let status = if checks.is_empty() {
            Status::Vacuous
        } else if checks.iter().all(|c| c.holds) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            criterion,
            status,
            marginal: checks.iter().any(|c| c.marginal),
            checks,
            conclusion: status.is_certified().then(|| conclusion.to_owned()),
            notes: Vec::new(),
        }
    }

    pub fn inapplicable(criterion: Criterion, reason: impl Into<String>) -> Self {
        Self {
            criterion,
            status: Status::Inapplicable,
            marginal: false,
            checks: Vec::new(),
            conclusion: None,
            notes: vec![reason.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_certified(&self) -> bool {
        self.status.is_certified()
    }

    /// Indices of the failing checks.
    pub fn failures(&self) -> impl Iterator<Item = usize> + '_ {
        self.checks.iter().enumerate().filter(|(_, c)| !c.holds).map(|(i, _)| i)
    }
}
