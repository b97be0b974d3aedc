//! Hyperbolic areas in a truncated cusp.
//!
//! Coordinates are the upper half-space model with the cusp horoball
//! `z ≥ 1`; the vertical `yz`-plane is a copy of the hyperbolic plane with
//! area form `dy dz / z²`. Two model regions bound everything else:
//!
//! * `R1(a, b) = [0, a] × [1, b]`, a Euclidean rectangle;
//! * `R2(a, b)`, the part of the disk centred at the origin of radius
//!   `√(1 + a²/4)` lying in `1 ≤ z ≤ b` (the disk meets `z = 1` in a chord of
//!   length `a`).
//!
//! The form `ω = dy ∧ dz / z²` is closed and calibrates these regions; its
//! flux through surfaces yields the lower bounds exported here.

pub mod quadrature;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::lattice::{HomologyClass, Lattice};

pub use quadrature::{OracleError, PatchIntegrals, PlanarPatch, QuadratureOracle};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AreaError {
    #[error("truncation height must exceed 1, got {0}")]
    InvalidHeight(f64),
    #[error("region width must be positive and finite, got {0}")]
    InvalidWidth(f64),
    #[error("the null class bounds no area")]
    ZeroClass,
}

/// Horospherical height `b > 1` at which a cusp is cut off, or `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationHeight {
    Finite(f64),
    Infinite,
}

impl TruncationHeight {
    /// `+∞` maps to [`TruncationHeight::Infinite`].
    pub fn new(b: f64) -> Result<Self, AreaError> {
        if b == f64::INFINITY {
            Ok(Self::Infinite)
        } else if b.is_finite() && b > 1.0 {
            Ok(Self::Finite(b))
        } else {
            Err(AreaError::InvalidHeight(b))
        }
    }

    /// `1/b`, exactly zero at infinity.
    pub fn reciprocal(self) -> f64 {
        match self {
            Self::Finite(b) => 1.0 / b,
            Self::Infinite => 0.0,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Self::Finite(b) => b,
            Self::Infinite => f64::INFINITY,
        }
    }

    /// `1 − 1/b`.
    pub fn retained_fraction(self) -> f64 {
        1.0 - self.reciprocal()
    }
}

impl fmt::Display for TruncationHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(b) => write!(f, "{b}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for TruncationHeight {
    type Err = AreaError;
    fn from_str(s: &str) -> Result<Self, AreaError> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Self::Infinite),
            other => Self::new(other.parse().map_err(|_| AreaError::InvalidHeight(f64::NAN))?),
        }
    }
}

impl Serialize for TruncationHeight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Finite(b) => s.serialize_f64(*b),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for TruncationHeight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(b) => Self::new(b),
            Raw::Text(t) => t.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    R1,
    R2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec {
    kind: RegionKind,
    a: f64,
    b: TruncationHeight,
}

impl RegionSpec {
    pub fn new(kind: RegionKind, a: f64, b: TruncationHeight) -> Result<Self, AreaError> {
        if !(a.is_finite() && a > 0.0) {
            return Err(AreaError::InvalidWidth(a));
        }
        Ok(Self { kind, a, b })
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> TruncationHeight {
        self.b
    }

    /// Closed-form area.
    pub fn area(&self) -> f64 {
        match self.kind {
            RegionKind::R1 => area_r1(self.a, self.b),
            RegionKind::R2 => area_r2(self.a, self.b),
        }
    }
}

/// `η(x) = x − 2 arctan(x/2)`: the area of `R2(x, ∞)`.
pub fn eta(x: f64) -> f64 {
    if x.abs() < 0.5 {
        // Alternating series of x − 2 arctan(x/2); avoids cancellation.
        let u = 0.5 * x;
        let u2 = u * u;
        let mut term = u * u2;
        let mut sum = 0.0;
        for k in 1..16 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * term / (2 * k + 1) as f64;
            term *= u2;
        }
        2.0 * sum
    } else {
        x - 2.0 * (0.5 * x).atan()
    }
}

/// `area(R1(a, b)) = a(1 − 1/b)`.
pub fn area_r1(a: f64, b: TruncationHeight) -> f64 {
    a * b.retained_fraction()
}

/// Which closed form produced an `R2` area.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum R2Branch {
    /// `b² ≥ 1 + a²/4`: the cut is above the disk, area `η(a)`.
    Untruncated,
    /// `b² < 1 + a²/4`: the cap above `z = b` is removed.
    Truncated,
}

impl R2Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            R2Branch::Untruncated => "untruncated (b^2 >= 1 + a^2/4)",
            R2Branch::Truncated => "truncated (b^2 < 1 + a^2/4)",
        }
    }
}

/// `area(R2(a, b))` with the branch that fired.
///
/// The cap of the disk above `z = b` is carried by the isometry
/// `(y, z) ↦ (y/b, z/b)` onto `R2(a', ∞)`, where `a' = 2√(1 + a²/4 − b²)/b`
/// is the chord the rescaled disk cuts on `z = 1`; so the truncated area is
/// `η(a) − η(a')`.
pub fn area_r2_with_branch(a: f64, b: TruncationHeight) -> (f64, R2Branch) {
    let r2 = 1.0 + 0.25 * a * a;
    match b {
        TruncationHeight::Finite(b) if b * b < r2 => {
            let cap_chord = 2.0 * (r2 - b * b).sqrt() / b;
            (eta(a) - eta(cap_chord), R2Branch::Truncated)
        }
        _ => (eta(a), R2Branch::Untruncated),
    }
}

pub fn area_r2(a: f64, b: TruncationHeight) -> f64 {
    area_r2_with_branch(a, b).0
}

/// `∫_F ω = cos θ · area(F)` for a Euclidean-planar surface whose normal
/// makes angle `θ` with the x-axis.
pub fn planar_flux(theta: f64, area: f64) -> f64 {
    theta.cos() * area
}

/// Area of the totally geodesic annulus of a slope of length `t_rho` in the
/// cusp truncated at `b`.
pub fn annulus_area(t_rho: f64, b: TruncationHeight) -> f64 {
    area_r1(t_rho, b)
}

/// Least area of a surface in the truncated cusp whose boundary on the torus
/// represents the class `c`: `t(c)(1 − 1/b)`.
pub fn lower_bound_closed_class(lattice: &Lattice, c: HomologyClass, b: TruncationHeight) -> Result<f64, AreaError> {
    if c.is_zero() {
        return Err(AreaError::ZeroClass);
    }
    Ok(lattice.length(c) * b.retained_fraction())
}

/// Least area of a surface cobounding a geodesic cusp arc of T-length
/// `t_alpha` with a null-homologous curve on the torus.
pub fn lower_bound_arc_trivial(t_alpha: f64, b: TruncationHeight) -> f64 {
    area_r2(t_alpha, b)
}

/// `t_δ(ρ)(1 − 1/b) − t_δ(α)`. The raw value is returned even when negative
/// (the bound is then vacuous).
pub fn lower_bound_arc_nontrivial(t_delta_rho: f64, t_delta_alpha: f64, b: TruncationHeight) -> f64 {
    t_delta_rho * b.retained_fraction() - t_delta_alpha
}
