//! Deterministic SVG rendering of body polygons.

use std::fmt::Write;

use num_traits::ToPrimitive;

use okounkov_core::rat::fmt_rat;
use okounkov_core::{BodyPolygon, Rat};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 48.0;
const OVERLAY: &[&str] = &[
    "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b",
];

fn f(r: &Rat) -> f64 {
    r.to_f64().expect("finite")
}

struct Frame {
    unit: f64,
    height: f64,
}

impl Frame {
    fn x(&self, v: &Rat) -> String {
        format!("{:.3}", MARGIN + f(v) * self.unit)
    }

    fn y(&self, v: &Rat) -> String {
        format!("{:.3}", self.height - MARGIN - f(v) * self.unit)
    }

    fn points(&self, p: &BodyPolygon) -> String {
        p.vertices()
            .iter()
            .map(|(x, y)| format!("{},{}", self.x(x), self.y(y)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Renders `body` with axes and exact vertex labels; `overlays` are drawn
/// dashed on top (e.g. the scaled simplices of a decomposition).
pub fn render(body: &BodyPolygon, overlays: &[BodyPolygon]) -> String {
    let extent = |p: &BodyPolygon| {
        p.vertices()
            .iter()
            .fold(0.0f64, |m, (x, y)| m.max(f(x)).max(f(y)))
    };
    let max = overlays
        .iter()
        .map(extent)
        .fold(extent(body), f64::max)
        .max(1.0);
    let unit = (SIZE - 2.0 * MARGIN) / max;
    let (max_x, max_y) = body
        .vertices()
        .iter()
        .chain(overlays.iter().flat_map(|o| o.vertices()))
        .fold((0.0f64, 0.0f64), |(a, b), (x, y)| {
            (a.max(f(x)), b.max(f(y)))
        });
    let width = 2.0 * MARGIN + max_x.max(1.0) * unit + 60.0;
    let height = 2.0 * MARGIN + max_y.max(1.0) * unit;
    let fr = Frame { unit, height };
    let zero = Rat::from_integer(0.into());

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (ox, oy) = (fr.x(&zero), fr.y(&zero));
    let _ = writeln!(
        out,
        r#"<line x1="{ox}" y1="{oy}" x2="{:.3}" y2="{oy}" stroke="black" stroke-width="1"/>"#,
        width - MARGIN / 2.0
    );
    let _ = writeln!(
        out,
        r#"<line x1="{ox}" y1="{oy}" x2="{ox}" y2="{:.3}" stroke="black" stroke-width="1"/>"#,
        MARGIN / 2.0
    );
    let poly_tag = |p: &BodyPolygon, style: &str| match p.vertices().len() {
        1 => {
            let (x, y) = &p.vertices()[0];
            format!(
                r#"<circle cx="{}" cy="{}" r="3" {style}/>"#,
                fr.x(x),
                fr.y(y)
            )
        }
        2 => format!(r#"<polyline points="{}" {style}/>"#, fr.points(p)),
        _ => format!(r#"<polygon points="{}" {style}/>"#, fr.points(p)),
    };
    let _ = writeln!(
        out,
        "{}",
        poly_tag(
            body,
            r##"fill="#1f77b4" fill-opacity="0.25" stroke="#1f77b4" stroke-width="2""##
        )
    );
    for (i, o) in overlays.iter().enumerate() {
        let color = OVERLAY[i % OVERLAY.len()];
        let style =
            format!(r#"fill="none" stroke="{color}" stroke-width="1.5" stroke-dasharray="5,3""#);
        let _ = writeln!(out, "{}", poly_tag(o, &style));
    }
    for (x, y) in body.vertices() {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="2.5" fill="black"/>"#,
            fr.x(x),
            fr.y(y)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="12">({}, {})</text>"#,
            MARGIN + f(x) * unit + 5.0,
            height - MARGIN - f(y) * unit - 5.0,
            fmt_rat(x),
            fmt_rat(y)
        );
    }
    out.push_str("</svg>\n");
    out
}
