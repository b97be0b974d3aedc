//! Adaptive quadrature of the form `dy ∧ dz / z²` over regions of the
//! hyperbolic plane and over planar patches in upper half-space.
//!
//! Iterated integration: an outer globally-adaptive Gauss–Kronrod (7/15) rule
//! in `z`, whose integrand is itself an adaptive integral in `y` between
//! `z`-dependent bounds. Errors of the inner integrals are accumulated into the
//! outer estimate. Every integrand evaluation counts against a budget.

use std::cell::Cell;

use thiserror::Error;

use super::{RegionKind, RegionSpec, TruncationHeight};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("quadrature budget of {budget} evaluations exhausted (estimate {estimate}, error {error:e})")]
    BudgetExhausted { budget: u64, estimate: f64, error: f64 },
    #[error("invalid region: {0}")]
    InvalidRegion(String),
}

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// An integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// A parallelogram `origin + u·e1 + v·e2`, `u, v ∈ [0, 1]`, in upper
/// half-space coordinates `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPatch {
    pub origin: [f64; 3],
    pub e1: [f64; 3],
    pub e2: [f64; 3],
}

impl PlanarPatch {
    pub fn normal(&self) -> [f64; 3] {
        let [a1, a2, a3] = self.e1;
        let [b1, b2, b3] = self.e2;
        [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1]
    }

    /// Angle between the patch normal and the positive x-axis.
    pub fn normal_angle(&self) -> f64 {
        let n = self.normal();
        (n[0] / norm3(n)).clamp(-1.0, 1.0).acos()
    }

    fn height(&self, u: f64, v: f64) -> f64 {
        self.origin[2] + u * self.e1[2] + v * self.e2[2]
    }
}

/// Integrals of the pulled-back form and of the hyperbolic area element over
/// a planar patch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchIntegrals {
    pub flux: f64,
    pub area: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOracle {
    pub abs_tol: f64,
    pub max_evaluations: u64,
}

impl Default for QuadratureOracle {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            max_evaluations: 10_000_000,
        }
    }
}

/// Height at which the numerical part of an untruncated rectangle stops; the
/// remainder `∫_H^∞ z⁻² dz = 1/H` is added in closed form.
const TAIL_START: f64 = 8.0;

impl QuadratureOracle {
    pub fn new(abs_tol: f64, max_evaluations: u64) -> Self {
        Self {
            abs_tol,
            max_evaluations,
        }
    }

    /// Hyperbolic area `∬ z⁻² dy dz` of `R1(a, b)` or `R2(a, b)`.
    pub fn region_area(&self, region: &RegionSpec) -> Result<f64, OracleError> {
        let a = region.a();
        match region.kind() {
            RegionKind::R1 => {
                let (top, tail) = match region.b() {
                    TruncationHeight::Finite(b) => (b, 0.0),
                    TruncationHeight::Infinite => (TAIL_START, a / TAIL_START),
                };
                let est = self.integrate_2d((1.0, top), |_| (0.0, a), |_, z| z.powi(-2))?;
                Ok(est.value + tail)
            }
            RegionKind::R2 => {
                let r2 = 1.0 + a * a / 4.0;
                let r = r2.sqrt();
                let top = match region.b() {
                    TruncationHeight::Finite(b) => b.min(r),
                    TruncationHeight::Infinite => r,
                };
                let half = |z: f64| {
                    let w = (r2 - z * z).max(0.0).sqrt();
                    (-w, w)
                };
                let est = self.integrate_2d((1.0, top), half, |_, z| z.powi(-2))?;
                Ok(est.value)
            }
        }
    }

    pub fn patch_integrals(&self, patch: &PlanarPatch) -> Result<PatchIntegrals, OracleError> {
        for (u, v) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)] {
            if patch.height(u, v) <= 0.0 {
                return Err(OracleError::InvalidRegion("patch leaves the upper half-space".into()));
            }
        }
        let n = patch.normal();
        let nx = n[0];
        let nn = norm3(n);
        let flux = self.integrate_2d((0.0, 1.0), |_| (0.0, 1.0), |u, v| nx / patch.height(u, v).powi(2))?;
        let area = self.integrate_2d((0.0, 1.0), |_| (0.0, 1.0), |u, v| nn / patch.height(u, v).powi(2))?;
        Ok(PatchIntegrals {
            flux: flux.value,
            area: area.value,
        })
    }

    /// `∫_{z0}^{z1} ∫_{lo(z)}^{hi(z)} f(y, z) dy dz`.
    pub fn integrate_2d<B, F>(&self, (z0, z1): (f64, f64), bounds: B, f: F) -> Result<Estimate, OracleError>
    where
        B: Fn(f64) -> (f64, f64),
        F: Fn(f64, f64) -> f64,
    {
        if !(z0.is_finite() && z1.is_finite()) {
            return Err(OracleError::InvalidRegion("integration range must be finite".into()));
        }
        let evals = Cell::new(0u64);
        let failed = Cell::new(false);
        let width = (z1 - z0).abs().max(f64::MIN_POSITIVE);
        let inner_tol = 0.1 * self.abs_tol / width;
        let outer = |z: f64| -> (f64, f64) {
            let (lo, hi) = bounds(z);
            if hi <= lo {
                return (0.0, 0.0);
            }
            match adaptive(|y| f(y, z), lo, hi, inner_tol, self.max_evaluations, &evals) {
                Some(e) => (e.value, e.error),
                None => {
                    failed.set(true);
                    (0.0, 0.0)
                }
            }
        };
        let est = adaptive_with_inner_error(outer, z0, z1, self.abs_tol, self.max_evaluations, &evals);
        match est {
            Some(e) if !failed.get() => Ok(e),
            Some(e) => Err(self.exhausted(e)),
            None => Err(self.exhausted(Estimate {
                value: f64::NAN,
                error: f64::INFINITY,
            })),
        }
    }

    fn exhausted(&self, e: Estimate) -> OracleError {
        OracleError::BudgetExhausted {
            budget: self.max_evaluations,
            estimate: e.value,
            error: e.error,
        }
    }
}

fn norm3([x, y, z]: [f64; 3]) -> f64 {
    (x * x + y * y + z * z).sqrt()
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Globally adaptive bisection; `None` once the shared budget is spent.
fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, budget: u64, evals: &Cell<u64>) -> Option<Estimate> {
    adaptive_with_inner_error(|x| (f(x), 0.0), a, b, tol, budget, evals)
}

fn adaptive_with_inner_error<F>(f: F, a: f64, b: f64, tol: f64, budget: u64, evals: &Cell<u64>) -> Option<Estimate>
where
    F: Fn(f64) -> (f64, f64),
{
    let rule = |a: f64, b: f64| -> Option<Piece> {
        let (value, error) = gk15(&f, a, b);
        evals.set(evals.get() + 15);
        (evals.get() <= budget).then_some(Piece { a, b, value, error })
    };
    let mut pieces = vec![rule(a, b)?];
    loop {
        let total: f64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if error <= tol {
            return Some(Estimate { value: total, error });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one piece");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            // Interval cannot be split further in floating point.
            return Some(Estimate { value: total, error });
        }
        match (rule(p.a, mid), rule(mid, p.b)) {
            (Some(l), Some(r)) => {
                pieces.push(l);
                pieces.push(r);
            }
            _ => return None,
        }
    }
}

/// Kronrod estimate and `|K − G|` plus the inner errors carried by `f`.
fn gk15<F: Fn(f64) -> (f64, f64)>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let (fc, ec) = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut inner = WGK[7] * ec;
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, e1) = f(c - dx);
        let (f2, e2) = f(c + dx);
        kronrod += WGK[j] * (f1 + f2);
        inner += WGK[j] * (e1 + e2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let h = h.abs();
    (kronrod * (b - a) * 0.5, (kronrod - gauss).abs() * h + inner * h)
}
