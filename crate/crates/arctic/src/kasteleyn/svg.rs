//! SVG rendering of domino tilings and height maps.
//!
//! Rotated lattice coordinates `(x1, x2)` map to drawing coordinates
//! `X = (x1 + x2)/2`, `Y = (x1 - x2)/2`; the four domino species get the
//! four usual colours (vertical yellow/green, horizontal blue/red).

use super::aztec::{domino_type, DominoType};
use super::{DimerConfiguration, HeightFunction, PlanarGraph};
use std::fmt::Write;

const SCALE: f64 = 10.0;

fn color(t: DominoType) -> &'static str {
    match t {
        DominoType::East => "#d94f4f",
        DominoType::West => "#4f6fd9",
        DominoType::North => "#e8c547",
        DominoType::South => "#57a773",
    }
}

fn to_xy(c: (i64, i64)) -> (f64, f64) {
    ((c.0 + c.1) as f64 / 2.0, (c.0 - c.1) as f64 / 2.0)
}

pub fn render_tiling(graph: &PlanarGraph, config: &DimerConfiguration) -> String {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut rects = Vec::new();
    for &e in config.edges() {
        let ed = &graph.edges()[e];
        let (bx, by) = to_xy(graph.black_coord(ed.black));
        let (wx, wy) = to_xy(graph.white_coord(ed.white));
        let x0 = bx.min(wx) - 0.5;
        let y0 = by.min(wy) - 0.5;
        let w = (bx - wx).abs() + 1.0;
        let h = (by - wy).abs() + 1.0;
        min_x = min_x.min(x0);
        min_y = min_y.min(y0);
        max_x = max_x.max(x0 + w);
        max_y = max_y.max(y0 + h);
        rects.push((x0, y0, w, h, color(domino_type(graph, e))));
    }
    let mut svg = String::new();
    let vb = (
        min_x * SCALE,
        min_y * SCALE,
        (max_x - min_x) * SCALE,
        (max_y - min_y) * SCALE,
    );
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.1} {:.1} {:.1} {:.1}\">",
        vb.0, vb.1, vb.2, vb.3
    )
    .unwrap();
    for (x, y, w, h, c) in rects {
        writeln!(
            svg,
            "  <rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"{}\" stroke=\"#222\" stroke-width=\"0.5\"/>",
            x * SCALE,
            y * SCALE,
            w * SCALE,
            h * SCALE,
            c
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

pub fn render_heights(graph: &PlanarGraph, heights: &HeightFunction) -> String {
    let cells: Vec<((i64, i64), i64)> = heights.cells().collect();
    let (lo, hi) = cells.iter().fold((i64::MAX, i64::MIN), |(lo, hi), &(_, h)| {
        (lo.min(h), hi.max(h))
    });
    let span = ((hi - lo) as f64).max(1.0);
    let mut svg = String::new();
    let mut body = String::new();
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let _ = graph;
    for (c, h) in cells {
        let (x, y) = to_xy(c);
        let t = (h - lo) as f64 / span;
        let r = (40.0 + 215.0 * t) as u8;
        let b = (255.0 - 215.0 * t) as u8;
        min_x = min_x.min(x - 0.5);
        min_y = min_y.min(y - 0.5);
        max_x = max_x.max(x + 0.5);
        max_y = max_y.max(y + 0.5);
        writeln!(
            body,
            "  <rect x=\"{:.1}\" y=\"{:.1}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"rgb({},80,{})\"/>",
            (x - 0.5) * SCALE,
            (y - 0.5) * SCALE,
            SCALE,
            SCALE,
            r,
            b
        )
        .unwrap();
    }
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.1} {:.1} {:.1} {:.1}\">",
        min_x * SCALE,
        min_y * SCALE,
        (max_x - min_x) * SCALE,
        (max_y - min_y) * SCALE
    )
    .unwrap();
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    svg
}
