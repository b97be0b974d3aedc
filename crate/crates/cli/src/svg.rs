//! Static SVG scatter of an atlas.
//!
//! Each slope `(p, q)` is drawn at both `±(p, q)`. Output depends only on the
//! document; coordinates are printed with two decimals.

use std::fmt::Write as _;

use crate::render::sig;
use crate::report::{AtlasDocument, Exclusion};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

fn colour(e: Exclusion) -> &'static str {
    match e {
        Exclusion::Short => "#d62728",
        Exclusion::NearCoannular => "#ff7f0e",
        Exclusion::Admissible => "#b0b0b0",
    }
}

pub fn atlas_svg(d: &AtlasDocument) -> String {
    let w = d.window as f64;
    let step = (SIZE - 2.0 * MARGIN) / (2.0 * w);
    let centre = SIZE / 2.0;
    let r = (step * 0.3).clamp(1.0, 6.0);
    let at = |p: i64, q: i64| (centre + p as f64 * step, centre - q as f64 * step);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{}" viewBox="0 0 {SIZE} {}">"#,
        SIZE + 60.0,
        SIZE + 60.0
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{centre:.2}" y="22" font-family="sans-serif" font-size="14" text-anchor="middle">cusp {} ({}): slopes shorter than {}</text>"#,
        d.cusp,
        escape(&d.label),
        sig(d.threshold)
    );
    let (x0, _) = at(-d.window, 0);
    let (x1, _) = at(d.window, 0);
    let (_, y0) = at(0, d.window);
    let (_, y1) = at(0, -d.window);
    let _ = writeln!(
        s,
        r##"<line x1="{x0:.2}" y1="{centre:.2}" x2="{x1:.2}" y2="{centre:.2}" stroke="#444" stroke-width="0.5"/>"##
    );
    let _ = writeln!(
        s,
        r##"<line x1="{centre:.2}" y1="{y0:.2}" x2="{centre:.2}" y2="{y1:.2}" stroke="#444" stroke-width="0.5"/>"##
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">p</text>"#,
        x1 + 6.0,
        centre + 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">q</text>"#,
        centre - 3.0,
        y0 - 6.0
    );

    for e in &d.window_slopes {
        let fill = colour(e.exclusion);
        for sign in [1, -1] {
            let (x, y) = at(sign * e.slope.p(), sign * e.slope.q());
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="{fill}"/>"#);
        }
    }

    let legend_y = SIZE + 20.0;
    for (i, (label, e)) in [
        ("short", Exclusion::Short),
        ("near coannular", Exclusion::NearCoannular),
        ("admissible", Exclusion::Admissible),
    ]
    .into_iter()
    .enumerate()
    {
        let x = MARGIN + 170.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{legend_y:.2}" r="5" fill="{}"/>"#,
            colour(e)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{label}</text>"#,
            x + 10.0,
            legend_y + 4.0
        );
    }
    if let Some(k) = d.k_global {
        let _ = writeln!(
            s,
            r#"<text x="{MARGIN:.2}" y="{:.2}" font-family="sans-serif" font-size="12">K = {k}</text>"#,
            legend_y + 26.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
