//! Static region plots for one-dimensional operators.
//!
//! The graph space of a 1-D operator is the (x, x*) plane, so polar
//! membership rasterizes to a 2-D figure. Output is SVG 1.1 plus a CSV of
//! the sampled membership (RFC 4180, CRLF line endings).

use std::fmt::Write as _;

use crate::error::Error;
use crate::operator::{OperatorGraph, Pair};
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// Raster of `{(x, x*) : (x, x*) in T^nu}`.
    Polar,
    /// Scatter of the graph pairs themselves.
    Graph,
}

#[derive(Clone, Copy, Debug)]
pub struct PlotOptions {
    pub region: Region,
    /// Plot window `[-range, range]` in both coordinates.
    pub range: f64,
    /// Raster cells per axis.
    pub cells: usize,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            region: Region::Polar,
            range: 2.5,
            cells: 120,
        }
    }
}

pub struct PlotOutput {
    pub svg: String,
    pub csv: String,
    /// Raster membership in row-major order (top row first), empty for
    /// graph scatters.
    pub raster: Vec<Vec<bool>>,
}

/// Cell-center coordinate in the same arithmetic mode as the graph; exact
/// mode keeps the raster decisions exact on rational windows.
fn cell_center(mode: &Mode, range: f64, cells: usize, index: usize) -> Result<Scalar, Error> {
    match mode {
        Mode::Exact => {
            let range = Scalar::snap_to_rational(range, 1_000_000)?;
            let cells_s = Scalar::from_int(cells as i64);
            let idx = Scalar::from_int(index as i64);
            let half = Scalar::rational(1, 2);
            let two = Scalar::from_int(2);
            // -range + (2*range) * (index + 1/2) / cells
            let frac = (idx + half) / cells_s;
            Ok(-range.clone() + (two * range) * frac)
        }
        Mode::Float { .. } => Scalar::float(-range + 2.0 * range * (index as f64 + 0.5) / cells as f64),
    }
}

pub fn render(t: &OperatorGraph, opts: &PlotOptions) -> Result<PlotOutput, Error> {
    if t.dim() != 1 {
        return Err(Error::InvalidParams(
            "region plots are defined for 1-D operators (graph space is 2d-dimensional)".into(),
        ));
    }
    match opts.region {
        Region::Polar => render_polar(t, opts),
        Region::Graph => render_graph(t, opts),
    }
}

fn render_polar(t: &OperatorGraph, opts: &PlotOptions) -> Result<PlotOutput, Error> {
    let mode = t.mode();
    let n = opts.cells;
    let mut raster = vec![vec![false; n]; n];
    let mut csv = String::from("x,xstar,member\r\n");
    for row in 0..n {
        // SVG rows run top-down; row 0 holds the largest x*.
        let xstar = cell_center(&mode, opts.range, n, n - 1 - row)?;
        for col in 0..n {
            let x = cell_center(&mode, opts.range, n, col)?;
            let member = t.polar_member(&Pair::new(vec![x.clone()], vec![xstar.clone()]))?;
            raster[row][col] = member;
            let _ = write!(
                csv,
                "{},{},{}\r\n",
                x.to_f64(),
                xstar.to_f64(),
                if member { 1 } else { 0 }
            );
        }
    }
    let svg = raster_svg(&raster, opts);
    Ok(PlotOutput { svg, csv, raster })
}

fn render_graph(t: &OperatorGraph, opts: &PlotOptions) -> Result<PlotOutput, Error> {
    let mut csv = String::from("x,xstar\r\n");
    let mut points = Vec::new();
    for p in t.pairs() {
        let x = p.x[0].to_f64();
        let xs = p.xstar[0].to_f64();
        points.push((x, xs));
        let _ = write!(csv, "{x},{xs}\r\n");
    }
    let svg = scatter_svg(&points, opts);
    Ok(PlotOutput {
        svg,
        csv,
        raster: Vec::new(),
    })
}

const SIZE: f64 = 480.0;

fn raster_svg(raster: &[Vec<bool>], opts: &PlotOptions) -> String {
    let n = raster.len();
    let cell = SIZE / n as f64;
    let mut svg = svg_header();
    // Run-length merge along rows keeps the file small.
    for (row, cells) in raster.iter().enumerate() {
        let y = row as f64 * cell;
        let mut col = 0;
        while col < n {
            if !cells[col] {
                col += 1;
                continue;
            }
            let start = col;
            while col < n && cells[col] {
                col += 1;
            }
            let x = start as f64 * cell;
            let w = (col - start) as f64 * cell;
            let _ = write!(
                svg,
                r##"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{cell:.2}" fill="#4878a8"/>"##
            );
            svg.push('\n');
        }
    }
    svg_axes(&mut svg, opts.range);
    svg.push_str("</svg>\n");
    svg
}

fn scatter_svg(points: &[(f64, f64)], opts: &PlotOptions) -> String {
    let mut svg = svg_header();
    let scale = SIZE / (2.0 * opts.range);
    for &(x, y) in points {
        let cx = (x + opts.range) * scale;
        let cy = (opts.range - y) * scale;
        if (0.0..=SIZE).contains(&cx) && (0.0..=SIZE).contains(&cy) {
            let _ = write!(
                svg,
                r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="#a83838"/>"##
            );
            svg.push('\n');
        }
    }
    svg_axes(&mut svg, opts.range);
    svg.push_str("</svg>\n");
    svg
}

fn svg_header() -> String {
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" "#,
            r#"width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
            "\n",
            r#"<rect width="{s}" height="{s}" fill="white"/>"#,
            "\n"
        ),
        s = SIZE
    )
}

fn svg_axes(svg: &mut String, range: f64) {
    let mid = SIZE / 2.0;
    let _ = write!(
        svg,
        concat!(
            r##"<line x1="0" y1="{m}" x2="{s}" y2="{m}" stroke="#303030" stroke-width="1"/>"##,
            "\n",
            r##"<line x1="{m}" y1="0" x2="{m}" y2="{s}" stroke="#303030" stroke-width="1"/>"##,
            "\n",
            r##"<text x="4" y="{ty}" font-size="12" fill="#303030">[-{r}, {r}]^2</text>"##,
            "\n"
        ),
        m = mid,
        s = SIZE,
        ty = SIZE - 6.0,
        r = range
    );
}

/// Fraction of raster cells agreeing with a closed-form membership
/// predicate evaluated at cell centers.
pub fn raster_agreement(
    raster: &[Vec<bool>],
    opts: &PlotOptions,
    reference: impl Fn(f64, f64) -> bool,
) -> f64 {
    let n = raster.len();
    let mut agree = 0usize;
    for (row, cells) in raster.iter().enumerate() {
        let xstar = -opts.range + 2.0 * opts.range * ((n - 1 - row) as f64 + 0.5) / n as f64;
        for (col, member) in cells.iter().enumerate() {
            let x = -opts.range + 2.0 * opts.range * (col as f64 + 0.5) / n as f64;
            if *member == reference(x, xstar) {
                agree += 1;
            }
        }
    }
    agree as f64 / (n * n) as f64
}
