//! Space-time characteristic diagrams and their SVG/JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::wave_terms::Direction;

pub const SVG_WIDTH: f64 = 800.0;
pub const SVG_HEIGHT: f64 = 600.0;
const MARGIN: f64 = 40.0;

/// One straight ray piece between two interface lines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub x0: f64,
    pub t0: f64,
    pub x1: f64,
    pub t1: f64,
    pub speed: f64,
    pub direction: Direction,
    /// Amplitude the splitting engine assigns to the ray (0 when unknown).
    pub amplitude: f64,
    /// False for rays the splitting rule leaves with zero amplitude.
    pub carrying: bool,
}

impl Segment {
    /// Position at time `t` in `[t0, t1]`.
    pub fn x_at(&self, t: f64) -> f64 {
        self.x0 + self.direction.sign() * self.speed * (t - self.t0)
    }
}

/// Right-hand part of the transition layer at one interface: the strip
/// `x_inner <= |x| <= x_outer` where fewer than four characteristic
/// families arrive from below.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionRow {
    pub t: f64,
    pub x_inner: f64,
    pub x_outer: f64,
}

impl TransitionRow {
    pub fn width(&self) -> f64 {
        self.x_outer - self.x_inner
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicDiagram {
    pub segments: Vec<Segment>,
    /// Interface times drawn as horizontal dashed lines.
    pub interfaces: Vec<f64>,
    /// Extremal carrying ray on the right, as `(x, t)` vertices.
    pub edge_right: Vec<[f64; 2]>,
    pub edge_left: Vec<[f64; 2]>,
    pub transition_layer: Vec<TransitionRow>,
}

impl CharacteristicDiagram {
    pub fn carrying_segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(|s| s.carrying)
    }

    pub fn t_max(&self) -> f64 {
        self.segments.iter().map(|s| s.t1).fold(0.0, f64::max)
    }

    /// Largest `|x|` reached by any segment.
    pub fn x_extent(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.x0.abs().max(s.x1.abs()))
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    /// Fixed 800x600 canvas. The fastest speed is drawn solid and every
    /// slower one dashed; interfaces are dashed grey lines, edge rays bold.
    pub fn to_svg(&self) -> String {
        let x_ext = self.x_extent().max(1e-9);
        let t_max = self.t_max().max(1e-9);
        let sx = |x: f64| MARGIN + (x + x_ext) / (2.0 * x_ext) * (SVG_WIDTH - 2.0 * MARGIN);
        let sy = |t: f64| SVG_HEIGHT - MARGIN - t / t_max * (SVG_HEIGHT - 2.0 * MARGIN);
        let fastest = self.segments.iter().map(|s| s.speed).fold(0.0, f64::max);

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = SVG_WIDTH,
            h = SVG_HEIGHT
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for row in &self.transition_layer {
            for side in [1.0, -1.0] {
                let _ = writeln!(
                    out,
                    r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#f4a261" stroke-width="6" stroke-opacity="0.5"/>"##,
                    sx(side * row.x_inner),
                    sy(row.t),
                    sx(side * row.x_outer),
                    sy(row.t)
                );
            }
        }
        for &t in &self.interfaces {
            let _ = writeln!(
                out,
                r##"<line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="#888888" stroke-width="1" stroke-dasharray="4,4"/>"##,
                MARGIN,
                SVG_WIDTH - MARGIN,
                y = sy(t)
            );
        }
        for s in &self.segments {
            let dash = if s.speed < fastest * (1.0 - 1e-12) {
                r#" stroke-dasharray="6,3""#
            } else {
                ""
            };
            let opacity = if s.carrying { 1.0 } else { 0.25 };
            let _ = writeln!(
                out,
                r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#1d3557" stroke-width="1" stroke-opacity="{opacity}"{dash}/>"##,
                sx(s.x0),
                sy(s.t0),
                sx(s.x1),
                sy(s.t1)
            );
        }
        for edge in [&self.edge_right, &self.edge_left] {
            if edge.len() < 2 {
                continue;
            }
            let points: Vec<String> = edge
                .iter()
                .map(|p| format!("{:.3},{:.3}", sx(p[0]), sy(p[1])))
                .collect();
            let _ = writeln!(
                out,
                r##"<polyline points="{}" fill="none" stroke="#e63946" stroke-width="3"/>"##,
                points.join(" ")
            );
        }
        let _ = writeln!(
            out,
            r##"<line x1="{m}" y1="{b:.3}" x2="{r:.3}" y2="{b:.3}" stroke="black"/><line x1="{c:.3}" y1="{b:.3}" x2="{c:.3}" y2="{m}" stroke="black"/>"##,
            m = MARGIN,
            b = SVG_HEIGHT - MARGIN,
            r = SVG_WIDTH - MARGIN,
            c = sx(0.0)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" font-size="12">x</text><text x="{:.3}" y="{:.3}" font-size="12">t</text>"#,
            SVG_WIDTH - MARGIN + 8.0,
            SVG_HEIGHT - MARGIN + 4.0,
            sx(0.0) + 6.0,
            MARGIN - 8.0
        );
        out.push_str("</svg>\n");
        out
    }
}
