//! Flat cusp tori.
//!
//! A cusp torus is the quotient of the Euclidean plane by a rank-two
//! translation group, represented here by a [`Lattice`] basis. Closed curves
//! are integer combinations of the two translations ([`HomologyClass`]);
//! primitive classes up to sign are [`Slope`]s. Arcs homotopic into the torus
//! are represented by their real displacement in lattice coordinates
//! ([`Displacement`]).
//!
//! Homology arithmetic is exact (`i64`, with `i128` intermediates for
//! determinants); metric quantities are `f64`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("degenerate lattice: translations are linearly dependent (cross product {0:e})")]
    Degenerate(f64),
    #[error("lattice coordinates must be finite")]
    NonFinite,
    #[error("modulus must lie in the upper half-plane, got imaginary part {0}")]
    ModulusOutsideUpperHalfPlane(f64),
    #[error("lattice scale must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("non-primitive slope ({p}, {q})")]
    NonPrimitive { p: i64, q: i64 },
    #[error("the null class (0, 0) has no direction")]
    ZeroClass,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i128),
    #[error("cusp {0} appears more than once in the multiple slope")]
    DuplicateCusp(usize),
    #[error("cusp index {index} out of range ({count} cusps)")]
    CuspOutOfRange { index: usize, count: usize },
}

pub type Result<T> = std::result::Result<T, LatticeError>;

/// A vector in the Euclidean plane covering a cusp torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }

    fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

/// An integral class `p·v1 + q·v2` in `H_1(T)`. Need not be primitive; the
/// null class is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct HomologyClass {
    pub p: i64,
    pub q: i64,
}

impl HomologyClass {
    pub const ZERO: HomologyClass = HomologyClass { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub fn is_zero(self) -> bool {
        self.p == 0 && self.q == 0
    }

    pub fn times(self, k: i64) -> Self {
        Self::new(self.p * k, self.q * k)
    }

    /// Algebraic intersection `p·q' − q·p'`.
    pub fn algebraic_intersection(self, other: Self) -> i128 {
        self.p as i128 * other.q as i128 - self.q as i128 * other.p as i128
    }

    /// `|p·q' − q·p'|`; for primitive classes this is the geometric
    /// intersection number.
    pub fn intersection(self, other: Self) -> u64 {
        u64::try_from(self.algebraic_intersection(other).unsigned_abs()).unwrap_or(u64::MAX)
    }

    /// Decomposes into `k·slope` with `k ≥ 1`, or `None` for the null class.
    pub fn primitive_part(self) -> Option<(Slope, i64)> {
        if self.is_zero() {
            return None;
        }
        let g = gcd(self.p.unsigned_abs(), self.q.unsigned_abs()) as i64;
        let slope = Slope::canonical(self.p / g, self.q / g);
        Some((slope, g))
    }

    /// Coordinates of this class after the basis change `(v1, v2) ↦ (v1, v2)·U`.
    pub fn in_basis(self, u: &Unimodular) -> Self {
        u.inverse().apply(self)
    }
}

impl From<[i64; 2]> for HomologyClass {
    fn from([p, q]: [i64; 2]) -> Self {
        Self::new(p, q)
    }
}

impl From<HomologyClass> for [i64; 2] {
    fn from(c: HomologyClass) -> Self {
        [c.p, c.q]
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A primitive class up to sign, stored in canonical sign
/// (`p > 0`, or `p = 0` and `q = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(LatticeError::ZeroClass);
        }
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(LatticeError::NonPrimitive { p, q });
        }
        Ok(Self::canonical(p, q))
    }

    fn canonical(p: i64, q: i64) -> Self {
        if p < 0 || (p == 0 && q < 0) {
            Self { p: -p, q: -q }
        } else {
            Self { p, q }
        }
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    pub fn class(self) -> HomologyClass {
        HomologyClass::new(self.p, self.q)
    }

    /// The class `k·self`.
    pub fn multiple(self, k: i64) -> HomologyClass {
        self.class().times(k)
    }

    /// Same slope expressed in the basis `(v1, v2)·U`.
    pub fn in_basis(self, u: &Unimodular) -> Self {
        let c = self.class().in_basis(u);
        Self::canonical(c.p, c.q)
    }
}

impl TryFrom<[i64; 2]> for Slope {
    type Error = LatticeError;
    fn try_from([p, q]: [i64; 2]) -> Result<Self> {
        Slope::new(p, q)
    }
}

impl From<Slope> for [i64; 2] {
    fn from(s: Slope) -> Self {
        [s.p, s.q]
    }
}

impl From<Slope> for HomologyClass {
    fn from(s: Slope) -> Self {
        s.class()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Real displacement `p·v1 + q·v2` of an arc homotopic into the torus, in
/// lattice coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Displacement {
    pub p: f64,
    pub q: f64,
}

impl Displacement {
    pub const fn new(p: f64, q: f64) -> Self {
        Self { p, q }
    }

    pub fn in_basis(self, u: &Unimodular) -> Self {
        let inv = u.inverse();
        let [[a, b], [c, d]] = inv.m.map(|row| row.map(|x| x as f64));
        Self::new(a * self.p + b * self.q, c * self.p + d * self.q)
    }
}

impl From<HomologyClass> for Displacement {
    fn from(c: HomologyClass) -> Self {
        Self::new(c.p as f64, c.q as f64)
    }
}

impl From<[f64; 2]> for Displacement {
    fn from([p, q]: [f64; 2]) -> Self {
        Self::new(p, q)
    }
}

impl From<Displacement> for [f64; 2] {
    fn from(d: Displacement) -> Self {
        [d.p, d.q]
    }
}

/// An integer matrix of determinant ±1, acting on coordinate columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Unimodular {
    m: [[i64; 2]; 2],
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular { m: [[1, 0], [0, 1]] };

    /// The matrix `[[a, b], [c, d]]`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det.abs() != 1 {
            return Err(LatticeError::NotUnimodular(det));
        }
        Ok(Self { m: [[a, b], [c, d]] })
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.m
    }

    pub fn determinant(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        let det = self.determinant();
        Self {
            m: [[det * d, -det * b], [-det * c, det * a]],
        }
    }

    pub fn apply(&self, c: HomologyClass) -> HomologyClass {
        let [[a, b], [cc, d]] = self.m;
        HomologyClass::new(a * c.p + b * c.q, cc * c.p + d * c.q)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let [[a, b], [c, d]] = self.m;
        let [[e, f], [g, h]] = other.m;
        Self {
            m: [[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]],
        }
    }
}

/// The translation lattice of a cusp torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lattice {
    v1: Vec2,
    v2: Vec2,
}

impl Lattice {
    pub fn new(v1: Vec2, v2: Vec2) -> Result<Self> {
        if !v1.is_finite() || !v2.is_finite() {
            return Err(LatticeError::NonFinite);
        }
        let cross = v1.cross(v2);
        if cross == 0.0 || !cross.is_finite() {
            return Err(LatticeError::Degenerate(cross));
        }
        Ok(Self { v1, v2 })
    }

    /// `v1 = (s, 0)`, `v2 = s·(Re τ, Im τ)`.
    pub fn from_modulus(re: f64, im: f64, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(LatticeError::InvalidScale(scale));
        }
        if !re.is_finite() || !im.is_finite() {
            return Err(LatticeError::NonFinite);
        }
        if im <= 0.0 {
            return Err(LatticeError::ModulusOutsideUpperHalfPlane(im));
        }
        Self::new(Vec2::new(scale, 0.0), Vec2::new(scale * re, scale * im))
    }

    /// The square lattice of the given side length.
    pub fn square(side: f64) -> Result<Self> {
        Self::new(Vec2::new(side, 0.0), Vec2::new(0.0, side))
    }

    pub fn v1(&self) -> Vec2 {
        self.v1
    }

    pub fn v2(&self) -> Vec2 {
        self.v2
    }

    /// Area of the torus, `|v1 × v2|`.
    pub fn area(&self) -> f64 {
        self.v1.cross(self.v2).abs()
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(LatticeError::InvalidScale(s));
        }
        Self::new(self.v1.scale(s), self.v2.scale(s))
    }

    /// The same torus with basis `(v1, v2)·U`.
    pub fn change_basis(&self, u: &Unimodular) -> Self {
        let [[a, b], [c, d]] = u.m;
        let v1 = self.v1.scale(a as f64) + self.v2.scale(c as f64);
        let v2 = self.v1.scale(b as f64) + self.v2.scale(d as f64);
        Self { v1, v2 }
    }

    pub fn vector(&self, c: HomologyClass) -> Vec2 {
        self.v1.scale(c.p as f64) + self.v2.scale(c.q as f64)
    }

    pub fn displacement_vector(&self, d: Displacement) -> Vec2 {
        self.v1.scale(d.p) + self.v2.scale(d.q)
    }

    /// T-length: Euclidean length of the geodesic representative.
    pub fn length(&self, c: HomologyClass) -> f64 {
        self.vector(c).norm()
    }

    pub fn arc_length(&self, d: Displacement) -> f64 {
        self.displacement_vector(d).norm()
    }

    /// Unoriented angle in `[0, π)` between the geodesic representatives.
    pub fn angle_between(&self, a: HomologyClass, b: HomologyClass) -> Result<f64> {
        if a.is_zero() || b.is_zero() {
            return Err(LatticeError::ZeroClass);
        }
        Ok(line_angle(self.vector(a), self.vector(b)))
    }

    /// Length of `a` relative to `rho`: `t(a)·|sin θ|`, the length of the
    /// projection of `a` onto a line orthogonal to `rho`.
    pub fn relative_length(&self, a: HomologyClass, rho: Slope) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        relative(self.vector(a), self.vector(rho.class()))
    }

    pub fn arc_relative_length(&self, d: Displacement, rho: Slope) -> f64 {
        let v = self.displacement_vector(d);
        if v.norm() == 0.0 {
            return 0.0;
        }
        relative(v, self.vector(rho.class()))
    }

    /// `Δ(β, ρ)·area/t(β)`. Equal to `relative_length(ρ, β)`.
    pub fn relative_length_via_intersection(&self, rho: Slope, beta: Slope) -> f64 {
        intersection_number(rho, beta) as f64 * self.area() / self.length(beta.class())
    }

    /// A Lagrange-reduced basis of the same lattice.
    pub fn reduce(&self) -> ReducedBasis {
        let mut c1 = HomologyClass::new(1, 0);
        let mut c2 = HomologyClass::new(0, 1);
        if self.length(c1) > self.length(c2) {
            std::mem::swap(&mut c1, &mut c2);
        }
        // Each pass strictly shortens the basis; the cap only guards against
        // float pathologies.
        for _ in 0..10_000 {
            let b1 = self.vector(c1);
            let b2 = self.vector(c2);
            let mu = (b1.dot(b2) / b1.dot(b1)).round() as i64;
            if mu != 0 {
                c2 = HomologyClass::new(c2.p - mu * c1.p, c2.q - mu * c1.q);
            }
            if self.length(c2) < self.length(c1) {
                std::mem::swap(&mut c1, &mut c2);
            } else {
                break;
            }
        }
        let transform = Unimodular {
            m: [[c1.p, c2.p], [c1.q, c2.q]],
        };
        ReducedBasis {
            basis: self.change_basis(&transform),
            transform,
        }
    }

    /// Length of a shortest nonzero lattice vector.
    pub fn shortest_length(&self) -> f64 {
        self.reduce().basis.v1.norm()
    }

    /// Every slope `λ` with `t(λ) < bound`, in canonical sign.
    ///
    /// Candidates are scanned in a Lagrange-reduced basis over the ellipse
    /// containing all vectors shorter than `bound` (padded by one step on each
    /// side); membership is decided by the strict comparison of `length`
    /// computed in the original basis.
    ///
    /// # Panics
    /// If `bound` is not finite.
    pub fn enumerate_short_slopes(&self, bound: f64) -> BTreeSet<Slope> {
        assert!(bound.is_finite(), "enumeration bound must be finite");
        let mut out = BTreeSet::new();
        if bound <= 0.0 {
            return out;
        }
        let ReducedBasis { basis, transform } = self.reduce();
        let w1 = basis.v1;
        let w2 = basis.v2;
        let g11 = w1.dot(w1);
        let len1 = g11.sqrt();
        let mu = w1.dot(w2) / g11;
        let height = basis.area() / len1;
        let n_max = (bound / height).floor() as i64 + 1;
        for n in -n_max..=n_max {
            let rest = bound * bound - (n as f64 * height).powi(2);
            let half = rest.max(0.0).sqrt() / len1;
            let centre = -(n as f64) * mu;
            let lo = (centre - half).floor() as i64 - 1;
            let hi = (centre + half).ceil() as i64 + 1;
            for m in lo..=hi {
                if (m == 0 && n == 0) || gcd(m.unsigned_abs(), n.unsigned_abs()) != 1 {
                    continue;
                }
                let c = transform.apply(HomologyClass::new(m, n));
                if self.length(c) < bound {
                    out.insert(Slope::canonical(c.p, c.q));
                }
            }
        }
        out
    }
}

/// A reduced basis `basis = lattice·transform`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedBasis {
    pub basis: Lattice,
    pub transform: Unimodular,
}

fn line_angle(a: Vec2, b: Vec2) -> f64 {
    let theta = a.cross(b).abs().atan2(a.dot(b));
    if theta >= std::f64::consts::PI {
        0.0
    } else {
        theta
    }
}

// t(a)|sin θ| with θ the angle between the two directions.
fn relative(a: Vec2, dir: Vec2) -> f64 {
    a.norm() * line_angle(a, dir).sin().abs()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Minimal geometric intersection number `Δ(a, b) = |p_a q_b − q_a p_b|`.
pub fn intersection_number(a: Slope, b: Slope) -> u64 {
    a.class().intersection(b.class())
}

/// One slope per filled cusp. Cusps absent from the list are left unfilled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipleSlope {
    entries: Vec<FilledCusp>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilledCusp {
    pub cusp: usize,
    pub slope: Slope,
}

impl MultipleSlope {
    /// Entries are kept sorted by cusp index.
    pub fn new(entries: impl IntoIterator<Item = (usize, Slope)>, cusp_count: usize) -> Result<Self> {
        let mut entries: Vec<FilledCusp> = entries
            .into_iter()
            .map(|(cusp, slope)| FilledCusp { cusp, slope })
            .collect();
        entries.sort_by_key(|e| e.cusp);
        for (i, e) in entries.iter().enumerate() {
            if e.cusp >= cusp_count {
                return Err(LatticeError::CuspOutOfRange {
                    index: e.cusp,
                    count: cusp_count,
                });
            }
            if i > 0 && entries[i - 1].cusp == e.cusp {
                return Err(LatticeError::DuplicateCusp(e.cusp));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[FilledCusp] {
        &self.entries
    }

    pub fn slope_on(&self, cusp: usize) -> Option<Slope> {
        self.entries.iter().find(|e| e.cusp == cusp).map(|e| e.slope)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `Δ` between a multiple slope and a constraint set; `Unconstrained` when no
/// constraint sits on a filled cusp (the minimum over an empty set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u64),
    Unconstrained,
}

impl Distance {
    pub fn as_f64(self) -> f64 {
        match self {
            Distance::Finite(d) => d as f64,
            Distance::Unconstrained => f64::INFINITY,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unconstrained => f.write_str("+inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d),
            Distance::Unconstrained => s.serialize_str("+inf"),
        }
    }
}

/// `min Δ(ρ_i, β_j)` over pairs on the same cusp.
pub fn multi_distance(filling: &MultipleSlope, constraints: &[(usize, Slope)]) -> Distance {
    filling
        .entries()
        .iter()
        .flat_map(|e| {
            constraints
                .iter()
                .filter(move |(cusp, _)| *cusp == e.cusp)
                .map(move |(_, beta)| intersection_number(e.slope, *beta))
        })
        .min()
        .map_or(Distance::Unconstrained, Distance::Finite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn unit() -> Lattice {
        Lattice::square(1.0).unwrap()
    }

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn rejects_degenerate_lattices() {
        let err = Lattice::new(Vec2::new(1.0, 2.0), Vec2::new(2.0, 4.0)).unwrap_err();
        assert!(matches!(err, LatticeError::Degenerate(_)));
        assert!(Lattice::new(Vec2::new(f64::NAN, 0.0), Vec2::new(0.0, 1.0)).is_err());
        assert!(Lattice::from_modulus(0.5, -1.0, 1.0).is_err());
        assert!(Lattice::from_modulus(0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn modulus_convention() {
        let l = Lattice::from_modulus(0.5, 3f64.sqrt() / 2.0, 2.0).unwrap();
        assert_eq!(l.v1(), Vec2::new(2.0, 0.0));
        assert!((l.v2().x - 1.0).abs() < 1e-15);
        assert!((l.area() - 3f64.sqrt() * 2.0).abs() < 1e-12);
    }

    #[test]
    fn slope_canonical_sign() {
        assert_eq!(s(-2, 3), s(2, -3));
        assert_eq!(s(0, -1), s(0, 1));
        assert_eq!(s(-1, 0).class(), HomologyClass::new(1, 0));
        assert_eq!(Slope::new(2, 4), Err(LatticeError::NonPrimitive { p: 2, q: 4 }));
        assert_eq!(Slope::new(0, 0), Err(LatticeError::ZeroClass));
        assert!(Slope::new(0, 3).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(unit().length(HomologyClass::new(1, 0)), 1.0);
        assert_eq!(unit().length(HomologyClass::new(3, 4)), 5.0);
        assert_eq!(unit().length(HomologyClass::ZERO), 0.0);

        let l = Lattice::square(6.5).unwrap();
        let c = HomologyClass::new(6, 1);
        // Sum of the segments of a finely sampled straight representative.
        let end = Vec2::new(6.0 * 6.5, 6.5);
        let n = 10_000;
        let mut sampled = 0.0;
        for i in 0..n {
            let a = end.scale(i as f64 / n as f64);
            let b = end.scale((i + 1) as f64 / n as f64);
            sampled += (b.x - a.x).hypot(b.y - a.y);
        }
        assert!((l.length(c) - 6.5 * 37f64.sqrt()).abs() < 1e-12);
        assert!((l.length(c) - sampled).abs() < 1e-9);
        assert!((l.length(c) - 39.54).abs() < 5e-3);
    }

    #[test]
    fn angle_examples() {
        let l = unit();
        let a = HomologyClass::new(1, 0);
        assert!((l.angle_between(a, HomologyClass::new(0, 1)).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(l.angle_between(a, a).unwrap(), 0.0);
        assert_eq!(l.angle_between(a, HomologyClass::new(-2, 0)).unwrap(), 0.0);
        let expected = (1.0 / 2f64.sqrt()).acos();
        let got = l.angle_between(a, HomologyClass::new(1, 1)).unwrap();
        assert!((got - expected).abs() < 1e-15 && (got - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(l.angle_between(HomologyClass::ZERO, a), Err(LatticeError::ZeroClass));
    }

    #[test]
    fn relative_length_examples() {
        let l = unit();
        assert!((l.relative_length(HomologyClass::new(0, 5), s(1, 0)) - 5.0).abs() < 1e-15);
        assert_eq!(l.relative_length(HomologyClass::new(3, 0), s(1, 0)), 0.0);
        assert_eq!(l.relative_length(HomologyClass::ZERO, s(1, 0)), 0.0);
        let r = l.relative_length(HomologyClass::new(1, 1), s(1, 0));
        assert!((r - 2f64.sqrt() * FRAC_PI_4.sin()).abs() < 1e-15);
        assert!((r - 1.0).abs() < 1e-15);
        assert!((r - l.relative_length_via_intersection(s(1, 1), s(1, 0))).abs() < 1e-15);
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_number(s(1, 0), s(0, 1)), 1);
        assert_eq!(intersection_number(s(1, 0), s(1, 0)), 0);
        assert_eq!(intersection_number(s(2, 3), s(3, 5)), 1);
        assert_eq!(intersection_number(s(3, 5), s(2, 3)), 1);
    }

    #[test]
    fn multi_distance_examples() {
        let r = MultipleSlope::new([(0, s(1, 0))], 1).unwrap();
        assert_eq!(multi_distance(&r, &[(0, s(0, 1))]), Distance::Finite(1));
        assert_eq!(multi_distance(&r, &[]), Distance::Unconstrained);
        let r = MultipleSlope::new([(0, s(2, 3)), (1, s(1, 0))], 2).unwrap();
        assert_eq!(multi_distance(&r, &[(0, s(3, 5)), (1, s(0, 1))]), Distance::Finite(1));
        // Constraint on a cusp that is not filled is ignored.
        let r = MultipleSlope::new([(0, s(1, 0))], 2).unwrap();
        assert_eq!(multi_distance(&r, &[(1, s(0, 1))]), Distance::Unconstrained);
        assert!(Distance::Finite(u64::MAX) < Distance::Unconstrained);
    }

    #[test]
    fn multiple_slope_validation() {
        assert_eq!(
            MultipleSlope::new([(0, s(1, 0)), (0, s(0, 1))], 2),
            Err(LatticeError::DuplicateCusp(0))
        );
        assert_eq!(
            MultipleSlope::new([(2, s(1, 0))], 2),
            Err(LatticeError::CuspOutOfRange { index: 2, count: 2 })
        );
        let m = MultipleSlope::new([(1, s(1, 0)), (0, s(0, 1))], 2).unwrap();
        assert_eq!(m.entries()[0].cusp, 0);
        assert_eq!(m.slope_on(1), Some(s(1, 0)));
    }

    #[test]
    fn via_intersection_examples() {
        assert_eq!(unit().relative_length_via_intersection(s(0, 1), s(1, 0)), 1.0);
        assert_eq!(unit().relative_length_via_intersection(s(1, 0), s(1, 0)), 0.0);
        let l = Lattice::new(Vec2::new(2.0, 0.0), Vec2::new(0.5, 1.0)).unwrap();
        assert_eq!(l.relative_length_via_intersection(s(1, 2), s(1, 0)), 2.0);
        assert!((l.relative_length(s(1, 2).class(), s(1, 0)) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn enumeration_examples() {
        let got = unit().enumerate_short_slopes(1.5);
        let want: BTreeSet<_> = [s(1, 0), s(0, 1), s(1, 1), s(1, -1)].into_iter().collect();
        assert_eq!(got, want);
        assert!(unit().enumerate_short_slopes(0.5).is_empty());
        assert!(unit().enumerate_short_slopes(1.0).is_empty(), "strict inequality");
        assert!(unit().enumerate_short_slopes(-3.0).is_empty());
    }

    #[test]
    fn reduction_of_skewed_basis() {
        let l = Lattice::new(Vec2::new(1.0, 0.0), Vec2::new(1000.3, 0.7)).unwrap();
        let r = l.reduce();
        assert_eq!(r.transform.determinant().abs(), 1);
        assert!(r.basis.v1().norm() <= r.basis.v2().norm());
        assert!(2.0 * r.basis.v1().dot(r.basis.v2()).abs() <= r.basis.v1().dot(r.basis.v1()) + 1e-9);
        assert!((r.basis.area() - l.area()).abs() < 1e-9);
        assert!((l.shortest_length() - 0.7_f64.hypot(0.3)).abs() < 1e-9);
    }

    #[test]
    fn unimodular_inverse() {
        let u = Unimodular::new(2, 1, 1, 1).unwrap();
        assert_eq!(u.compose(&u.inverse()), Unimodular::IDENTITY);
        let v = Unimodular::new(0, 1, 1, 0).unwrap();
        assert_eq!(v.inverse().compose(&v), Unimodular::IDENTITY);
        assert!(Unimodular::new(2, 0, 0, 1).is_err());
    }

    #[test]
    fn types_are_thread_safe() {
        fn check<T: Send + Sync>() {}
        check::<Lattice>();
        check::<Slope>();
        check::<MultipleSlope>();
    }
}
