//! Static two-panel figure: the domain triangulation with the sources, and
//! the image triangles with the targets.
//!
//! Coordinates come from 12-digit decimal approximations and are printed
//! with fixed precision, so equal inputs give byte-identical files.

use std::fmt::Write as _;

use plext_core::json::APPROX_DIGITS;
use plext_core::{ExactNumber, Instance, MotionKind, PlMap, Point};

const PANEL: f64 = 400.0;
const MARGIN: f64 = 30.0;
const GAP: f64 = 40.0;

fn approx(x: &ExactNumber) -> f64 {
    x.to_decimal(APPROX_DIGITS).parse().expect("decimal strings parse")
}

fn approx_point(p: &Point) -> (f64, f64) {
    (approx(&p.x), approx(&p.y))
}

pub fn kind_color(kind: MotionKind) -> &'static str {
    match kind {
        MotionKind::Identity => "#d9d9d9",
        MotionKind::Translation => "#9ecae1",
        MotionKind::Rotation => "#a1d99b",
        MotionKind::Reflection => "#fdae6b",
    }
}

struct View {
    min: (f64, f64),
    scale: f64,
}

impl View {
    fn fit(points: &[(f64, f64)]) -> View {
        let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
        for &(x, y) in points {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        View {
            min: lo,
            scale: (PANEL - 2.0 * MARGIN) / span,
        }
    }

    /// Screen coordinates inside panel `k`, with y pointing up.
    fn map(&self, k: usize, (x, y): (f64, f64)) -> (f64, f64) {
        let left = k as f64 * (PANEL + GAP);
        (left + MARGIN + (x - self.min.0) * self.scale, PANEL - MARGIN - (y - self.min.1) * self.scale)
    }
}

fn polygon(out: &mut String, pts: &[(f64, f64)], fill: &str, opacity: &str) {
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="{fill}" fill-opacity="{opacity}" stroke="#333333" stroke-width="0.8"/>"##,
        coords.join(" ")
    );
}

fn label(out: &mut String, (x, y): (f64, f64), name: char, i: usize) {
    let _ = writeln!(out, r##"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#000000"/>"##);
    let _ = writeln!(
        out,
        r##"  <text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">{name}<tspan baseline-shift="sub" font-size="9">{i}</tspan></text>"##,
        x + 5.0,
        y - 5.0
    );
}

pub fn render_svg(f: &PlMap, inst: &Instance) -> String {
    let domain: Vec<(f64, f64)> = f.vertices().iter().map(approx_point).collect();
    let pieces: Vec<([(f64, f64); 3], [(f64, f64); 3], MotionKind)> = f
        .pieces()
        .map(|(t, m)| {
            let src = t.vertices().map(approx_point);
            let img = t.vertices().map(|v| approx_point(&m.apply(v)));
            (src, img, m.kind())
        })
        .collect();
    let sources: Vec<(f64, f64)> = (0..inst.len()).map(|i| approx_point(&inst.source_point(i))).collect();
    let targets: Vec<(f64, f64)> = (0..inst.len()).map(|i| approx_point(&inst.target_point(i))).collect();
    let mut all = domain.clone();
    all.extend(pieces.iter().flat_map(|(_, img, _)| img.iter().copied()));
    all.extend(&sources);
    all.extend(&targets);
    let view = View::fit(&all);

    let width = 2.0 * PANEL + GAP;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{PANEL:.0}" viewBox="0 0 {width:.0} {PANEL:.0}">"#
    );
    let _ = writeln!(out, r##"  <rect width="{width:.0}" height="{PANEL:.0}" fill="#ffffff"/>"##);
    for (k, title) in [(0, "domain"), (1, "image")] {
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="18" font-family="sans-serif" font-size="14">{title}</text>"#,
            k as f64 * (PANEL + GAP) + MARGIN
        );
    }
    for (src, _, kind) in &pieces {
        polygon(&mut out, &src.map(|p| view.map(0, p)), kind_color(*kind), "1");
    }
    for (_, img, kind) in &pieces {
        polygon(&mut out, &img.map(|p| view.map(1, p)), kind_color(*kind), "0.6");
    }
    for (i, &p) in sources.iter().enumerate() {
        label(&mut out, view.map(0, p), 'a', i);
    }
    for (i, &p) in targets.iter().enumerate() {
        label(&mut out, view.map(1, p), 'b', i);
    }
    out.push_str("</svg>\n");
    out
}
