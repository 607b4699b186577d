//! SVG plots of two-player regions. Coordinates are printed with six decimals
//! so equal inputs give equal bytes.

use std::fmt::Write;

use crate::efficiency::pareto_frontier_finite;
use crate::error::{Error, Result};
use crate::extremality::{Classification, ExtremalityStatus};
use crate::game::Game;
use crate::geometry::hull::planar_polygon;
use crate::geometry::{hull_vertices_of, pure_payoff_set, Hyperplane, SampleCloud};
use crate::numeric::rational;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub width: u32,
    pub height: u32,
    pub cloud: bool,
    /// Cloud points beyond this are thinned by a fixed stride.
    pub max_cloud_points: usize,
    pub hull: bool,
    pub pure_points: bool,
    pub extreme_points: bool,
    pub frontier: bool,
    pub hyperplanes: Vec<Hyperplane>,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec {
            width: 640,
            height: 640,
            cloud: true,
            max_cloud_points: 6000,
            hull: true,
            pure_points: true,
            extreme_points: true,
            frontier: true,
            hyperplanes: Vec::new(),
        }
    }
}

const PAD: f64 = 48.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (self.w - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        self.h - PAD - (y - self.y0) / (self.y1 - self.y0) * (self.h - 2.0 * PAD)
    }
}

fn status_color(s: &ExtremalityStatus) -> &'static str {
    match s {
        ExtremalityStatus::ExtremeCertified(_) => "#1f77b4",
        ExtremalityStatus::ExtremeNumeric { .. } => "#2ca02c",
        ExtremalityStatus::NotExtreme(_) => "#d62728",
    }
}

pub fn plot_svg(
    game: &Game,
    cloud: Option<&SampleCloud>,
    classifications: &[Classification],
    spec: &PlotSpec,
) -> Result<String> {
    if game.num_players() != 2 {
        return Err(Error::PlanarOnly(game.num_players()));
    }
    let set = pure_payoff_set(game);
    let hull = hull_vertices_of(&set)?;
    let polygon = planar_polygon(&hull);

    let (lo, hi) = set.bounding_box();
    let margin = |a: f64, b: f64| {
        let span = if b > a { b - a } else { 1.0 };
        (a - 0.05 * span, b + 0.05 * span)
    };
    let (x0, x1) = margin(lo[0], hi[0]);
    let (y0, y1) = margin(lo[1], hi[1]);
    let f = Frame {
        x0,
        x1,
        y0,
        y1,
        w: spec.width as f64,
        h: spec.height as f64,
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}"/></clipPath></defs>"#,
        PAD,
        PAD,
        f.w - 2.0 * PAD,
        f.h - 2.0 * PAD
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="none" stroke="#444" stroke-width="1"/>"##,
        PAD,
        PAD,
        f.w - 2.0 * PAD,
        f.h - 2.0 * PAD
    );
    for (label, x, y, anchor) in [
        (format!("{x0:.6}"), PAD, f.h - PAD + 16.0, "start"),
        (format!("{x1:.6}"), f.w - PAD, f.h - PAD + 16.0, "end"),
        (format!("{y0:.6}"), PAD - 4.0, f.h - PAD, "end"),
        (format!("{y1:.6}"), PAD - 4.0, PAD + 10.0, "end"),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{x:.6}" y="{y:.6}" font-family="sans-serif" font-size="10" text-anchor="{anchor}">{label}</text>"#
        );
    }

    if spec.cloud {
        if let Some(cloud) = cloud {
            let stride = cloud.len().div_ceil(spec.max_cloud_points.max(1)).max(1);
            let _ = writeln!(s, r##"<g id="cloud" fill="#9ecae1" fill-opacity="0.6">"##);
            for i in (0..cloud.len()).step_by(stride) {
                let p = cloud.payoff(i);
                let _ = writeln!(s, r#"<circle cx="{:.6}" cy="{:.6}" r="1.2"/>"#, f.px(p[0]), f.py(p[1]));
            }
            let _ = writeln!(s, "</g>");
        }
    }
    if spec.hull && !polygon.is_empty() {
        let pts: Vec<String> = polygon
            .iter()
            .map(|p| format!("{:.6},{:.6}", f.px(p[0]), f.py(p[1])))
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon id="hull" points="{}" fill="none" stroke="#333" stroke-width="1.5"/>"##,
            pts.join(" ")
        );
    }
    if !spec.hyperplanes.is_empty() {
        let _ = writeln!(s, r##"<g id="hyperplanes" clip-path="url(#plot)" stroke="#ff7f0e" stroke-dasharray="4 3">"##);
        for h in &spec.hyperplanes {
            let c: Vec<f64> = h.normal.iter().map(rational::to_f64).collect();
            let a = h.offset.to_f64();
            let (p, q) = if c[1].abs() >= c[0].abs() {
                ([x0, (a - c[0] * x0) / c[1]], [x1, (a - c[0] * x1) / c[1]])
            } else {
                ([(a - c[1] * y0) / c[0], y0], [(a - c[1] * y1) / c[0], y1])
            };
            let _ = writeln!(
                s,
                r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#,
                f.px(p[0]),
                f.py(p[1]),
                f.px(q[0]),
                f.py(q[1])
            );
        }
        let _ = writeln!(s, "</g>");
    }
    if spec.pure_points {
        let _ = writeln!(s, r##"<g id="pure" fill="#555">"##);
        for p in set.float_points() {
            let _ = writeln!(s, r#"<rect x="{:.6}" y="{:.6}" width="5" height="5"/>"#, f.px(p[0]) - 2.5, f.py(p[1]) - 2.5);
        }
        let _ = writeln!(s, "</g>");
    }
    if spec.frontier {
        let points: Vec<_> = set.payoffs().cloned().collect();
        let frontier = pareto_frontier_finite(&points)?;
        let _ = writeln!(s, r##"<g id="frontier" fill="none" stroke="#9467bd" stroke-width="2">"##);
        for p in &frontier.members {
            let v = p.to_f64();
            let _ = writeln!(s, r#"<circle cx="{:.6}" cy="{:.6}" r="8"/>"#, f.px(v[0]), f.py(v[1]));
        }
        let _ = writeln!(s, "</g>");
    }
    if spec.extreme_points {
        let _ = writeln!(s, r#"<g id="extreme">"#);
        for c in classifications {
            let v = c.point.to_f64();
            let _ = writeln!(
                s,
                r#"<circle cx="{:.6}" cy="{:.6}" r="5" fill="{}"><title>{} {}</title></circle>"#,
                f.px(v[0]),
                f.py(v[1]),
                status_color(&c.status),
                c.point,
                c.status.label()
            );
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}
