//! Deterministic SVG rendering of chain placements.
//!
//! One panel per ordering, laid out row-major. Each panel shows the placed
//! chain: links joint-to-joint and on to the operation point, revolute
//! centers as circles, the operation point as a filled square, and the
//! centroid as a cross-hair. Coordinates are formatted with a fixed number
//! of decimals, so identical inputs produce identical bytes.

use crate::error::CliError;
use isokin::chains::Ordering;
use isokin::planar_geometry::{centroid, PointSet};
use std::fmt::Write as _;

const PANEL_SIZE: f64 = 220.0;
const PANEL_MARGIN: f64 = 24.0;
const MAX_COLUMNS: usize = 3;

pub fn render_placements(set: &PointSet, orderings: &[Ordering]) -> Result<String, CliError> {
    if orderings.is_empty() {
        return Err(CliError::validation(
            "NothingToRender",
            "no orderings selected for rendering",
        ));
    }
    let columns = orderings.len().min(MAX_COLUMNS);
    let rows = orderings.len().div_ceil(columns);
    let width = columns as f64 * PANEL_SIZE;
    let height = rows as f64 * PANEL_SIZE;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    );
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    for (index, ordering) in orderings.iter().enumerate() {
        let col = index % columns;
        let row = index / columns;
        let origin_x = col as f64 * PANEL_SIZE;
        let origin_y = row as f64 * PANEL_SIZE;
        render_panel(&mut svg, set, ordering, origin_x, origin_y)?;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn render_panel(
    svg: &mut String,
    set: &PointSet,
    ordering: &Ordering,
    origin_x: f64,
    origin_y: f64,
) -> Result<(), CliError> {
    let points: Vec<(f64, f64)> = set.points().iter().map(|p| (p.x(), p.y())).collect();
    if ordering.len() != points.len() {
        return Err(CliError::validation(
            "ArityMismatch",
            format!(
                "ordering {} does not match the {}-point set",
                ordering,
                points.len()
            ),
        ));
    }
    let centroid_point = centroid(set);
    let c = (centroid_point.x(), centroid_point.y());
    let sequence: Vec<(f64, f64)> = ordering
        .indices()
        .iter()
        .map(|&i| points[i])
        .chain(std::iter::once(c))
        .collect();

    // world-space bounding box of the drawing, centroid included
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &sequence {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let span_x = (max_x - min_x).max(1e-9);
    let span_y = (max_y - min_y).max(1e-9);
    let inner = PANEL_SIZE - 2.0 * PANEL_MARGIN;
    let scale = (inner / span_x).min(inner / span_y);
    let pad_x = (PANEL_SIZE - scale * span_x) / 2.0;
    let pad_y = (PANEL_SIZE - scale * span_y) / 2.0;

    // y grows upward in world space, downward in SVG space
    let project = |&(x, y): &(f64, f64)| -> (f64, f64) {
        (
            origin_x + pad_x + (x - min_x) * scale,
            origin_y + pad_y + (max_y - y) * scale,
        )
    };

    let diagonal = (span_x * span_x + span_y * span_y).sqrt() * scale;
    let joint_radius = 0.02 * diagonal;
    let marker = 0.025 * diagonal;

    let _ = writeln!(
        svg,
        "<g stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">"
    );
    let polyline: Vec<String> = sequence
        .iter()
        .map(|p| {
            let (x, y) = project(p);
            format!("{},{}", fmt(x), fmt(y))
        })
        .collect();
    let _ = writeln!(svg, "<polyline points=\"{}\"/>", polyline.join(" "));
    let _ = writeln!(svg, "</g>");

    // revolute centers
    let _ = writeln!(
        svg,
        "<g stroke=\"black\" stroke-width=\"1\" fill=\"white\">"
    );
    for &i in ordering.indices() {
        let (x, y) = project(&points[i]);
        let _ = writeln!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            fmt(x),
            fmt(y),
            fmt(joint_radius)
        );
    }
    let _ = writeln!(svg, "</g>");

    // operation point: filled square on the centroid
    let (px, py) = project(&c);
    let _ = writeln!(
        svg,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"black\"/>",
        fmt(px - marker / 2.0),
        fmt(py - marker / 2.0),
        fmt(marker),
        fmt(marker)
    );

    // centroid cross-hair
    let cross = marker * 1.6;
    let _ = writeln!(svg, "<g stroke=\"black\" stroke-width=\"0.8\">");
    let _ = writeln!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        fmt(px - cross),
        fmt(py),
        fmt(px + cross),
        fmt(py)
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        fmt(px),
        fmt(py - cross),
        fmt(px),
        fmt(py + cross)
    );
    let _ = writeln!(svg, "</g>");

    // panel label: the ordering
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"10\">{}</text>",
        fmt(origin_x + 6.0),
        fmt(origin_y + 14.0),
        ordering
    );
    Ok(())
}

fn fmt(v: f64) -> String {
    format!("{v:.4}")
}
