//! Manifold configuration files.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "name": "example",
//!   "cusps": [
//!     {"translations": [[1.0, 0.0], [0.0, 1.0]], "coannular": [{"slope": [1, 0], "width": 0.5}]},
//!     {"modulus": [0.5, 0.866], "scale": 2.0}
//!   ],
//!   "surface": {"w": 0.5, "rho": 0.25, "genus": 1, "boundary": 2,
//!               "geometrically_finite": true, "totally_geodesic": false},
//!   "fillings": [{"label": "a", "slopes": [[1, 40], null]}],
//!   "curves": [{"label": "g", "arcs": [{"cusp": 0, "displacement": [2.0, 0.0]}]}],
//!   "arc_chains": [{"label": "c", "segments": [{"kind": "type_i"},
//!                   {"kind": "cusp_arc", "cusp": 0, "displacement": [7.0, 0.0]}]}],
//!   "tubings": [{"label": "t", "tubes": [{"cusp": 0, "boundary_slope": [0, 1], "wrap": 9}]}],
//!   "options": {"delta_candidates": [{"cusp": 0, "slope": [0, 1]}], "delta_enumerate_below": 37.7}
//! }
//! ```
//!
//! A filling lists one slope per cusp in cusp order; `null` leaves the cusp
//! unfilled. `delta_enumerate_below` defaults to `12π`; `null` disables the
//! enumeration so only the listed candidates are tried.

use std::f64::consts::PI;
use std::path::Path;

use cuspcert_core::lattice::{Displacement, LatticeError};
use cuspcert_core::surgery::{
    ArcDecomposition, CertifyError, Coannular, CuspData, DeltaSearch, FillingCurve, Segment, SurfaceData,
};
use cuspcert_core::tubing::{TubeSpec, TubingError, TubingSpec};
use cuspcert_core::{Lattice, MultipleSlope, Slope, Vec2};
use serde::{Deserialize, Serialize};

use crate::error::{ErrorCode, InputError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldConfig {
    pub schema: u32,
    #[serde(default)]
    pub name: String,
    pub cusps: Vec<CuspConfig>,
    pub surface: SurfaceConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fillings: Vec<FillingConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<CurveConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arc_chains: Vec<ArcChainConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tubings: Vec<TubingConfig>,
    #[serde(default)]
    pub options: OptionsConfig,
}

/// Either `translations` or `modulus` (with optional `scale`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translations: Option<[[f64; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coannular: Vec<CoannularConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoannularConfig {
    pub slope: [i64; 2],
    #[serde(default)]
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub w: f64,
    pub rho: f64,
    pub genus: u32,
    pub boundary: u32,
    pub geometrically_finite: bool,
    #[serde(default)]
    pub totally_geodesic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FillingConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub slopes: Vec<Option<[i64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcConfig {
    pub cusp: usize,
    pub displacement: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub arcs: Vec<ArcConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SegmentConfig {
    TypeI,
    CuspArc { cusp: usize, displacement: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcChainConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Arcs meet the type-I segments perpendicularly (threshold `π`).
    #[serde(default)]
    pub perpendicular: bool,
    pub segments: Vec<SegmentConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubeConfig {
    pub cusp: usize,
    pub boundary_slope: [i64; 2],
    pub wrap: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubingConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub tubes: Vec<TubeConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspSlopeConfig {
    pub cusp: usize,
    pub slope: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsConfig {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delta_candidates: Vec<CuspSlopeConfig>,
    #[serde(default = "default_enumerate_below")]
    pub delta_enumerate_below: Option<f64>,
}

fn default_enumerate_below() -> Option<f64> {
    Some(12.0 * PI)
}

impl Default for OptionsConfig {
    fn default() -> Self {
        Self {
            delta_candidates: Vec::new(),
            delta_enumerate_below: default_enumerate_below(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedChain {
    pub label: String,
    pub chain: ArcDecomposition,
    pub perpendicular: bool,
}

/// A validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Manifold {
    pub name: String,
    pub cusps: Vec<CuspData>,
    pub surface: SurfaceData,
    pub totally_geodesic: bool,
    pub fillings: Vec<(String, MultipleSlope)>,
    pub curves: Vec<FillingCurve>,
    pub arc_chains: Vec<NamedChain>,
    pub tubings: Vec<(String, TubingSpec)>,
    pub delta: DeltaSearch,
}

impl Manifold {
    pub fn lattices(&self) -> Vec<Lattice> {
        self.cusps.iter().map(|c| *c.lattice()).collect()
    }
}

pub fn load_config(path: &Path) -> Result<Manifold, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new(ErrorCode::Io, format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)?.validate()
}

/// Parses JSON text without semantic validation.
pub fn parse_config(text: &str) -> Result<ManifoldConfig, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: ManifoldConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let code = if inner.is_data() {
            ErrorCode::SchemaViolation
        } else {
            ErrorCode::Parse
        };
        let mut err = InputError::new(code, strip_position(&inner)).with_position(inner.line(), inner.column());
        if code == ErrorCode::SchemaViolation && path != "." {
            err = err.at(path);
        }
        err
    })?;
    if cfg.schema != SCHEMA_VERSION {
        return Err(InputError::new(
            ErrorCode::SchemaViolation,
            format!("unsupported schema version {} (expected {SCHEMA_VERSION})", cfg.schema),
        )
        .at("schema"));
    }
    Ok(cfg)
}

// serde_json appends " at line L column C"; that is reported separately.
fn strip_position(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg,
    }
}

pub fn to_json(cfg: &ManifoldConfig) -> String {
    serde_json::to_string_pretty(cfg).expect("config serializes")
}

fn schema(path: impl Into<String>, msg: impl Into<String>) -> InputError {
    InputError::new(ErrorCode::SchemaViolation, msg).at(path)
}

fn lattice_error(path: String, e: LatticeError) -> InputError {
    match e {
        LatticeError::Degenerate(_) | LatticeError::ModulusOutsideUpperHalfPlane(_) => {
            InputError::new(ErrorCode::DegenerateLattice, format!("degenerate lattice: {e}")).at(path)
        }
        LatticeError::NonPrimitive { .. } | LatticeError::ZeroClass => {
            InputError::new(ErrorCode::NonPrimitiveSlope, format!("non-primitive slope: {e}")).at(path)
        }
        _ => schema(path, e.to_string()),
    }
}

fn slope(path: String, [p, q]: [i64; 2]) -> Result<Slope, InputError> {
    Slope::new(p, q).map_err(|e| lattice_error(path, e))
}

fn cusp_index(path: String, cusp: usize, count: usize) -> Result<usize, InputError> {
    if cusp < count {
        Ok(cusp)
    } else {
        Err(schema(path, format!("cusp index {cusp} out of range ({count} cusps)")))
    }
}

fn certify_error(path: String, e: CertifyError) -> InputError {
    match e {
        CertifyError::Lattice(e) => lattice_error(path, e),
        e => schema(path, e.to_string()),
    }
}

impl CuspConfig {
    fn lattice(&self, path: &str) -> Result<Lattice, InputError> {
        let built = match (self.translations, self.modulus) {
            (Some([a, b]), None) => {
                if self.scale.is_some() {
                    return Err(schema(format!("{path}.scale"), "`scale` only applies to `modulus`"));
                }
                Lattice::new(Vec2::from(a), Vec2::from(b))
            }
            (None, Some([re, im])) => Lattice::from_modulus(re, im, self.scale.unwrap_or(1.0)),
            _ => return Err(schema(path, "a cusp needs exactly one of `translations` or `modulus`")),
        };
        built.map_err(|e| lattice_error(path.to_owned(), e))
    }
}

impl ManifoldConfig {
    pub fn validate(&self) -> Result<Manifold, InputError> {
        if self.cusps.is_empty() {
            return Err(schema("cusps", "at least one cusp is required"));
        }
        let n = self.cusps.len();

        let mut cusps = Vec::with_capacity(n);
        for (i, c) in self.cusps.iter().enumerate() {
            let path = format!("cusps[{i}]");
            let lattice = c.lattice(&path)?;
            let coannular = c
                .coannular
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    Ok(Coannular {
                        slope: slope(format!("{path}.coannular[{j}].slope"), b.slope)?,
                        width: b.width,
                    })
                })
                .collect::<Result<Vec<_>, InputError>>()?;
            let label = c.label.clone().unwrap_or_else(|| format!("cusp {i}"));
            cusps.push(
                CuspData::new(label, lattice, coannular).map_err(|e| certify_error(format!("{path}.coannular"), e))?,
            );
        }

        let s = &self.surface;
        let surface = SurfaceData {
            w: s.w,
            rho: s.rho,
            genus: s.genus,
            boundary: s.boundary,
            geometrically_finite: s.geometrically_finite,
        };
        surface.validate().map_err(|e| certify_error("surface".into(), e))?;

        let mut fillings = Vec::with_capacity(self.fillings.len());
        for (i, f) in self.fillings.iter().enumerate() {
            let path = format!("fillings[{i}]");
            if f.slopes.len() != n {
                return Err(schema(
                    format!("{path}.slopes"),
                    format!("expected one entry per cusp ({n}), got {}", f.slopes.len()),
                ));
            }
            let mut entries = Vec::new();
            for (c, s) in f.slopes.iter().enumerate() {
                if let Some(s) = s {
                    entries.push((c, slope(format!("{path}.slopes[{c}]"), *s)?));
                }
            }
            let ms = MultipleSlope::new(entries, n).map_err(|e| lattice_error(path.clone(), e))?;
            fillings.push((f.label.clone().unwrap_or(path), ms));
        }

        let mut curves = Vec::with_capacity(self.curves.len());
        for (i, c) in self.curves.iter().enumerate() {
            let path = format!("curves[{i}]");
            let mut arcs = Vec::new();
            for (j, a) in c.arcs.iter().enumerate() {
                let apath = format!("{path}.arcs[{j}].cusp");
                let cusp = cusp_index(apath.clone(), a.cusp, n)?;
                if let Some((fl, _)) = fillings.iter().find(|(_, f)| f.slope_on(cusp).is_none()) {
                    return Err(schema(
                        apath,
                        format!("cusp {cusp} carries a curve arc but is not filled in `{fl}`"),
                    ));
                }
                arcs.push((cusp, Displacement::from(a.displacement)));
            }
            curves.push(FillingCurve {
                label: c.label.clone().unwrap_or(path),
                arcs,
            });
        }

        let mut arc_chains = Vec::with_capacity(self.arc_chains.len());
        for (i, c) in self.arc_chains.iter().enumerate() {
            let path = format!("arc_chains[{i}]");
            let segments = c
                .segments
                .iter()
                .enumerate()
                .map(|(j, s)| match *s {
                    SegmentConfig::TypeI => Ok(Segment::TypeI),
                    SegmentConfig::CuspArc { cusp, displacement } => Ok(Segment::CuspArc {
                        cusp: cusp_index(format!("{path}.segments[{j}].cusp"), cusp, n)?,
                        displacement: Displacement::from(displacement),
                    }),
                })
                .collect::<Result<Vec<_>, InputError>>()?;
            let chain = ArcDecomposition::new(segments).map_err(|e| certify_error(format!("{path}.segments"), e))?;
            arc_chains.push(NamedChain {
                label: c.label.clone().unwrap_or(path),
                chain,
                perpendicular: c.perpendicular,
            });
        }

        let mut tubings = Vec::with_capacity(self.tubings.len());
        for (i, t) in self.tubings.iter().enumerate() {
            let path = format!("tubings[{i}]");
            let mut tubes = Vec::new();
            for (j, tube) in t.tubes.iter().enumerate() {
                let tpath = format!("{path}.tubes[{j}]");
                tubes.push(TubeSpec {
                    cusp: cusp_index(format!("{tpath}.cusp"), tube.cusp, n)?,
                    boundary_slope: slope(format!("{tpath}.boundary_slope"), tube.boundary_slope)?,
                    wrap: tube.wrap,
                    explicit_length: tube.length,
                });
            }
            let spec = TubingSpec::new(surface, tubes, s.totally_geodesic).map_err(|e| match e {
                TubingError::NoTubes => schema(format!("{path}.tubes"), e.to_string()),
                e => schema(path.clone(), e.to_string()),
            })?;
            tubings.push((t.label.clone().unwrap_or(path), spec));
        }

        let mut candidates = Vec::new();
        for (i, c) in self.options.delta_candidates.iter().enumerate() {
            let path = format!("options.delta_candidates[{i}]");
            candidates.push((
                cusp_index(format!("{path}.cusp"), c.cusp, n)?,
                slope(format!("{path}.slope"), c.slope)?,
            ));
        }
        if let Some(b) = self.options.delta_enumerate_below {
            if !(b.is_finite() && b >= 0.0) {
                return Err(schema(
                    "options.delta_enumerate_below",
                    format!("must be finite and non-negative, got {b}"),
                ));
            }
        }

        Ok(Manifold {
            name: self.name.clone(),
            cusps,
            surface,
            totally_geodesic: s.totally_geodesic,
            fillings,
            curves,
            arc_chains,
            tubings,
            delta: DeltaSearch {
                candidates,
                enumerate_below: self.options.delta_enumerate_below,
            },
        })
    }
}
