//! Text and JSON rendering.
//!
//! JSON numbers carry 15 significant digits, text numbers 6. Every check
//! printed in text appears as `quantity: value rel threshold -> holds|fails`
//! with both numbers in [`sig`] form, so the two renderings can be matched
//! line by line.

use std::fmt::Write as _;

use cuspcert_core::verdict::Comparison;
use cuspcert_core::{Status, Verdict};
use serde_json::Value;

use crate::report::{
    status_word, AreasDocument, AtlasDocument, CertifyDocument, Document, Exclusion, TubeCheckDocument,
};

pub const TEXT_DIGITS: usize = 6;
pub const JSON_DIGITS: usize = 15;

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// `x` to `digits` significant digits, positional unless very large or small.
pub fn sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let r = round_sig(x, digits);
    let exp = r.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        format!("{r}")
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

pub fn sig(x: f64) -> String {
    sig_digits(x, TEXT_DIGITS)
}

/// Report as JSON with every float rounded to [`JSON_DIGITS`].
pub fn to_json_value(doc: &Document) -> Value {
    let mut v = serde_json::to_value(doc).expect("documents serialize");
    round_floats(&mut v);
    v
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(&to_json_value(doc)).expect("json value serializes")
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = serde_json::Number::from_f64(round_sig(x, JSON_DIGITS)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn status(self, s: Status) -> String {
        let tag = format!("[{}]", s.as_str().to_uppercase());
        if !self.color {
            return tag;
        }
        let code = match s {
            Status::Pass | Status::Vacuous => "32",
            Status::Fail => "31",
            Status::Inapplicable => "33",
        };
        format!("\x1b[{code}m{tag}\x1b[0m")
    }
}

pub fn check_line(c: &Comparison) -> String {
    format!(
        "{}: {} {} {} -> {}",
        c.quantity,
        sig(c.value),
        c.relation.symbol(),
        sig(c.threshold),
        if c.holds { "holds" } else { "fails" }
    )
}

fn verdict(out: &mut String, style: Style, indent: &str, v: &Verdict) {
    let marginal = if v.marginal { " (marginal)" } else { "" };
    let _ = writeln!(out, "{indent}{} {}{marginal}", style.status(v.status), v.criterion);
    for c in &v.checks {
        let flag = if c.marginal { "  [marginal]" } else { "" };
        let _ = writeln!(out, "{indent}    {}{flag}", check_line(c));
    }
    for n in &v.notes {
        let _ = writeln!(out, "{indent}    note: {n}");
    }
    if let Some(c) = &v.conclusion {
        let _ = writeln!(out, "{indent}    => {c}");
    }
}

pub fn to_text(doc: &Document, style: Style) -> String {
    let mut out = String::new();
    match doc {
        Document::Certify(d) => certify_text(&mut out, style, d),
        Document::Atlas(d) => atlas_text(&mut out, d),
        Document::Areas(d) => areas_text(&mut out, d),
        Document::TubeCheck(d) => tube_text(&mut out, style, d),
    }
    out
}

fn title(out: &mut String, command: &str, name: &str) {
    if name.is_empty() {
        let _ = writeln!(out, "cuspcert {command}");
    } else {
        let _ = writeln!(out, "cuspcert {command}: {name}");
    }
}

fn certify_text(out: &mut String, style: Style, d: &CertifyDocument) {
    title(out, "certify", &d.name);
    for f in &d.fillings {
        let r = &f.report;
        let slopes: Vec<String> = r
            .filling
            .entries()
            .iter()
            .map(|e| format!("cusp {} {}", e.cusp, e.slope))
            .collect();
        let _ = writeln!(out, "\nfilling {}: {}", f.label, slopes.join(", "));
        let shorts: Vec<String> = r
            .excluded
            .short_slopes
            .iter()
            .enumerate()
            .map(|(i, s)| format!("cusp {i}: {}", s.len()))
            .collect();
        let _ = writeln!(out, "  short slopes (t < 12pi): {}", shorts.join(", "));
        match r.excluded.k_global {
            Some(k) => {
                let _ = writeln!(out, "  K = {k}, Delta(rho, beta) = {}", r.distance);
            }
            None => {
                let _ = writeln!(out, "  no coannular slopes");
            }
        }
        for e in &r.entries {
            verdict(out, style, "  ", &e.verdict);
        }
        let _ = writeln!(out, "  {} {}", style.status(r.status), r.summary);
    }
    for c in &d.arc_chains {
        let _ = writeln!(
            out,
            "\narc chain {}{}",
            c.label,
            if c.perpendicular { " (perpendicular)" } else { "" }
        );
        verdict(out, style, "  ", &c.verdict);
    }
    let total = d.fillings.len() + d.arc_chains.len();
    let passed = d.fillings.iter().filter(|f| f.report.is_certified()).count()
        + d.arc_chains.iter().filter(|c| c.verdict.is_certified()).count();
    let _ = writeln!(
        out,
        "\noverall: {} ({passed} of {total} certified)",
        style.status(status_word(d.certified))
    );
}

fn atlas_text(out: &mut String, d: &AtlasDocument) {
    title(out, "atlas", &d.name);
    let _ = writeln!(out, "cusp {} ({}), threshold {}", d.cusp, d.label, sig(d.threshold));
    let _ = writeln!(
        out,
        "area {}, shortest slope length {}",
        sig(d.area),
        sig(d.shortest_length)
    );
    let _ = writeln!(out, "short slopes: {}", d.short_count);
    for e in &d.short {
        let _ = writeln!(out, "  {:<12} t = {}", e.slope.to_string(), sig(e.length));
    }
    match d.k_global {
        Some(k) => {
            let _ = writeln!(out, "coannular wedges (slopes with Delta(rho, beta) < {k} excluded):");
            for t in &d.thresholds {
                let _ = writeln!(out, "  beta = {}: u = {}, K = {}", t.slope, sig(t.unit), t.k);
            }
        }
        None => {
            let _ = writeln!(out, "no coannular slopes");
        }
    }
    let near = d
        .window_slopes
        .iter()
        .filter(|e| e.exclusion == Exclusion::NearCoannular)
        .count();
    let _ = writeln!(
        out,
        "window |p|, |q| <= {}: {} slopes, {near} near a coannular slope",
        d.window,
        d.window_slopes.len()
    );
}

fn areas_text(out: &mut String, d: &AreasDocument) {
    let kind = match d.kind {
        cuspcert_core::RegionKind::R1 => "R1",
        cuspcert_core::RegionKind::R2 => "R2",
    };
    let _ = writeln!(out, "area of {kind}(a = {}, b = {})", sig(d.a), d.b);
    if let Some(b) = d.branch {
        let _ = writeln!(out, "branch:      {}", b.as_str());
    }
    let _ = writeln!(out, "closed form: {}", sig_digits(d.closed_form, 12));
    let _ = writeln!(out, "oracle:      {}", sig_digits(d.oracle, 12));
    let _ = writeln!(out, "difference:  {:.3e}", d.difference);
    let word = if d.within_tolerance { "agree" } else { "DISAGREE" };
    let _ = writeln!(out, "{word} within {:.0e}", crate::report::AREAS_TOLERANCE);
}

fn tube_text(out: &mut String, style: Style, d: &TubeCheckDocument) {
    title(out, "tube-check", &d.name);
    for t in &d.tubings {
        let _ = writeln!(out, "\ntubing {}: wrap {}, length {}", t.label, t.wrap, sig(t.length));
        for (i, tube) in t.tubes.iter().enumerate() {
            let src = match tube.source {
                cuspcert_core::tubing::LengthSource::Explicit => "explicit",
                cuspcert_core::tubing::LengthSource::LatticeBound => "lattice bound",
            };
            let _ = writeln!(
                out,
                "  tube {i}: cusp {}, delta = {}, wrap {}, length {} ({src}; bound {})",
                tube.cusp,
                tube.boundary_slope,
                tube.wrap,
                sig(tube.length),
                sig(tube.lattice_bound)
            );
        }
        verdict(out, style, "  ", &t.geometrically_finite);
        verdict(out, style, "  ", &t.totally_geodesic);
        if let Some(b) = &t.wrap_bound {
            let _ = writeln!(
                out,
                "  wrap bound: area {}, boundary length < {}, torus area >= {}, inessential tubings have wrap <= {}",
                sig(b.complete_area),
                sig(b.cusp_length_bound),
                sig(b.min_torus_area),
                sig(b.wrap_bound)
            );
        }
        let _ = writeln!(out, "  {}", t.embedded_note);
        let _ = writeln!(out, "  {} tubing {}", style.status(status_word(t.certified)), t.label);
    }
    let _ = writeln!(out, "\noverall: {}", style.status(status_word(d.certified)));
}
