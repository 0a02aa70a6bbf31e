//! Two-panel SVG: `F(A)` with the curve `P` on the left, `W(A)` with the
//! dual curve `Q` on the right. Output depends only on the inputs.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt::Write;

use numrange::dualcurve::dual_sample;
use numrange::geometry::{bounding_box, convex_hull, diameter, Point};
use numrange::pencil::{boundary_f, curve_samples, PencilCurve};
use numrange::rangegeom::range_hulls;
use numrange::samples::CurveSampleSet;

use crate::commands::CliError;

const PANEL: f64 = 360.0;
const MARGIN: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 40.0;
const WIDTH: f64 = 2.0 * PANEL + 3.0 * MARGIN;
const HEIGHT: f64 = TOP + PANEL + BOTTOM;

const REGION_FILL: &str = "#d3d3d3";
const P_STROKE: &str = "#1f4e9c";
const Q_STROKE: &str = "#b22222";
const AXIS_STROKE: &str = "#808080";

/// Fixed two-decimal text; never prints `-0.00`.
fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Maps a chart window onto a square panel with one scale for both axes.
struct Frame {
    view: [f64; 4],
    left: f64,
    scale: f64,
    center: Point,
}

impl Frame {
    /// The shorter side of `view` is widened to the square actually shown.
    fn new(view: [f64; 4], left: f64) -> Self {
        let side = (view[1] - view[0]).max(view[3] - view[2]);
        let center = [(view[0] + view[1]) / 2.0, (view[2] + view[3]) / 2.0];
        let h = side / 2.0;
        let view = [center[0] - h, center[0] + h, center[1] - h, center[1] + h];
        Frame { view, left, scale: PANEL / side, center }
    }

    fn px(&self, p: Point) -> Point {
        [
            self.left + PANEL / 2.0 + (p[0] - self.center[0]) * self.scale,
            TOP + PANEL / 2.0 - (p[1] - self.center[1]) * self.scale,
        ]
    }

    fn points_attr(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|&p| {
                let q = self.px(p);
                format!("{},{}", num(q[0]), num(q[1]))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Within three panel widths of the window, so clipping stays cheap and
    /// far-away samples cannot overflow the coordinates.
    fn near(&self, p: Point) -> bool {
        let [a, b, c, d] = self.view;
        let r = 3.0 * (b - a).max(d - c);
        p[0] > a - r && p[0] < b + r && p[1] > c - r && p[1] < d + r
    }

    fn corners(&self) -> Vec<Point> {
        let [a, b, c, d] = self.view;
        vec![[a, c], [b, c], [b, d], [a, d]]
    }
}

/// Bounding box plus 10% of its larger side on every edge; a point gets a
/// unit window.
fn auto_view(points: &[Point]) -> Option<[f64; 4]> {
    let [a, b, c, d] = bounding_box(points)?;
    let ext = (b - a).max(d - c);
    let pad = if ext > 1e-9 { 0.1 * ext } else { 0.5 };
    Some([a - pad, b + pad, c - pad, d + pad])
}

/// Boundary of `F(A)` plus every branch of `P` met on all rays: the closed
/// ovals around it belong in the picture, unbounded branches do not.
fn f_window_points(boundary: &CurveSampleSet, p: &CurveSampleSet, rays: usize) -> Vec<Point> {
    let mut pts = boundary.points();
    let branches = p.samples.iter().map(|s| s.root_index + 1).max().unwrap_or(0);
    for k in 1..branches {
        let branch = p.branch(k);
        if branch.len() == rays {
            pts.extend(branch);
        }
    }
    pts
}

/// Sutherland-Hodgman clip of a convex polygon to an axis-aligned box.
fn clip_to_box(poly: &[Point], view: [f64; 4]) -> Vec<Point> {
    let edges: [(usize, f64, bool); 4] = [(0, view[0], true), (0, view[1], false), (1, view[2], true), (1, view[3], false)];
    let mut out = poly.to_vec();
    for (axis, bound, lower) in edges {
        let inside = |p: &Point| if lower { p[axis] >= bound } else { p[axis] <= bound };
        let input = std::mem::take(&mut out);
        for (i, cur) in input.iter().enumerate() {
            let prev = input[(i + input.len() - 1) % input.len()];
            let cut = |a: Point, b: Point| {
                let t = (bound - a[axis]) / (b[axis] - a[axis]);
                [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
            };
            match (inside(cur), inside(&prev)) {
                (true, true) => out.push(*cur),
                (true, false) => {
                    out.push(cut(prev, *cur));
                    out.push(*cur);
                }
                (false, true) => out.push(cut(prev, *cur)),
                (false, false) => {}
            }
        }
        if out.is_empty() {
            break;
        }
    }
    out
}

/// `F(A)` inside the window: finite ray exits plus far points on the
/// unbounded rays, hulled and clipped.
fn f_region(set: &CurveSampleSet, frame: &Frame) -> Vec<Point> {
    if set.unbounded_everywhere {
        return frame.corners();
    }
    let far = 10.0 * frame.corners().iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    let pts: Vec<Point> = set
        .samples
        .iter()
        .map(|s| s.point.unwrap_or([far * s.theta.cos(), far * s.theta.sin()]))
        .collect();
    clip_to_box(&convex_hull(&pts), frame.view)
}

/// Polylines along each root index, broken at missing samples, rays that
/// skip the branch, points far outside the window and large jumps.
fn traces(set: &CurveSampleSet, frame: &Frame, rays: usize) -> Vec<Vec<Point>> {
    let step = 2.0 * PI / rays as f64;
    let branches = set.samples.iter().map(|s| s.root_index + 1).max().unwrap_or(0);
    let mut out = Vec::new();
    for k in 0..branches {
        let mut run: Vec<Point> = Vec::new();
        let mut runs: Vec<Vec<Point>> = Vec::new();
        let mut last_theta = f64::NEG_INFINITY;
        let mut full = true;
        let mut count = 0;
        for s in set.samples.iter().filter(|s| s.root_index == k) {
            count += 1;
            let keep = s.point.filter(|&p| frame.near(p));
            let joined = match (keep, run.last()) {
                (Some(p), Some(&q)) => {
                    let (a, b) = (frame.px(p), frame.px(q));
                    s.theta - last_theta < 1.5 * step && (a[0] - b[0]).hypot(a[1] - b[1]) < PANEL / 4.0
                }
                _ => false,
            };
            if !joined && !run.is_empty() {
                runs.push(std::mem::take(&mut run));
                full = false;
            }
            if keep.is_none() {
                full = false;
            }
            if let Some(p) = keep {
                run.push(p);
            }
            last_theta = s.theta;
        }
        if !run.is_empty() {
            runs.push(run);
        }
        // A branch met on every ray with no break is a closed loop.
        if full && count == rays && runs.len() == 1 {
            let first = runs[0][0];
            let a = frame.px(first);
            let b = frame.px(*runs[0].last().expect("nonempty"));
            if (a[0] - b[0]).hypot(a[1] - b[1]) < PANEL / 4.0 {
                runs[0].push(first);
            }
        }
        out.extend(runs.into_iter().filter(|r| r.len() >= 2));
    }
    out
}

fn axes(svg: &mut String, frame: &Frame) {
    let [a, b, c, d] = frame.view;
    if a <= 0.0 && 0.0 <= b {
        let (p, q) = (frame.px([0.0, c]), frame.px([0.0, d]));
        writeln!(
            svg,
            r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{AXIS_STROKE}" stroke-width="0.8"/>"#,
            num(p[0]),
            num(p[1]),
            num(q[0]),
            num(q[1])
        )
        .unwrap();
    }
    if c <= 0.0 && 0.0 <= d {
        let (p, q) = (frame.px([a, 0.0]), frame.px([b, 0.0]));
        writeln!(
            svg,
            r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{AXIS_STROKE}" stroke-width="0.8"/>"#,
            num(p[0]),
            num(p[1]),
            num(q[0]),
            num(q[1])
        )
        .unwrap();
    }
}

/// Runs that stay within half a pixel are point components and get a dot.
fn curve_lines(svg: &mut String, frame: &Frame, lines: &[Vec<Point>], stroke: &str) {
    let mut dots = BTreeSet::new();
    for l in lines {
        let a = frame.px(l[0]);
        if l.iter().all(|&p| {
            let b = frame.px(p);
            (a[0] - b[0]).hypot(a[1] - b[1]) < 0.5
        }) {
            if dots.insert((num(a[0]), num(a[1]))) {
                writeln!(svg, r#"<circle class="curve-point" cx="{}" cy="{}" r="3" fill="{stroke}"/>"#, num(a[0]), num(a[1]))
                    .unwrap();
            }
            continue;
        }
        writeln!(
            svg,
            r#"<polyline class="curve" points="{}" fill="none" stroke="{stroke}" stroke-width="1.4"/>"#,
            frame.points_attr(l)
        )
        .unwrap();
    }
}

fn panel_open(svg: &mut String, id: &str, frame: &Frame) {
    writeln!(
        svg,
        r#"<clipPath id="clip-{id}"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath>"#,
        num(frame.left),
        num(TOP),
        num(PANEL),
        num(PANEL)
    )
    .unwrap();
    writeln!(svg, r#"<g id="panel-{id}" clip-path="url(#clip-{id})">"#).unwrap();
}

fn panel_close(svg: &mut String, frame: &Frame, title: &str, vars: [&str; 2]) {
    svg.push_str("</g>\n");
    writeln!(
        svg,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        num(frame.left),
        num(TOP),
        num(PANEL),
        num(PANEL)
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="16" text-anchor="middle">{title}</text>"#,
        num(frame.left + PANEL / 2.0),
        num(TOP - 12.0)
    )
    .unwrap();
    let [a, b, c, d] = frame.view;
    writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{} in [{:.3}, {:.3}], {} in [{:.3}, {:.3}]</text>"#,
        num(frame.left + PANEL / 2.0),
        num(TOP + PANEL + 20.0),
        vars[0],
        a,
        b,
        vars[1],
        c,
        d
    )
    .unwrap();
}

pub fn render_svg(curve: &PencilCurve, grid: usize, viewport: Option<[f64; 4]>) -> Result<String, CliError> {
    let fp = curve.pencil.to_float();
    let rays = grid.max(8);
    let boundary = boundary_f(&fp, rays)?;
    let p_samples = curve_samples(&fp, rays)?;
    let unbounded = boundary.unbounded_everywhere || boundary.unbounded_count() > 0;
    let f_view = match viewport {
        Some(v) => v,
        None if unbounded => {
            return Err(CliError::Input(
                "F(A) is unbounded; pass --viewport x1min,x1max,x2min,x2max to clip it".into(),
            ))
        }
        None => auto_view(&f_window_points(&boundary, &p_samples, rays)).expect("bounded F(A) has boundary samples"),
    };
    let hulls = range_hulls(&fp, rays)?;
    let w_view = auto_view(&hulls.outer).expect("W(A) is nonempty");
    let f_frame = Frame::new(f_view, MARGIN);
    let w_frame = Frame::new(w_view, 2.0 * MARGIN + PANEL);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = WIDTH,
        h = HEIGHT
    )
    .unwrap();
    writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();

    panel_open(&mut svg, "f", &f_frame);
    let region = f_region(&boundary, &f_frame);
    if region.len() >= 3 {
        writeln!(svg, r#"<polygon class="region" points="{}" fill="{REGION_FILL}"/>"#, f_frame.points_attr(&region))
            .unwrap();
    }
    axes(&mut svg, &f_frame);
    curve_lines(&mut svg, &f_frame, &traces(&p_samples, &f_frame, rays), P_STROKE);
    panel_close(&mut svg, &f_frame, "F(A) and P", ["y1", "y2"]);

    panel_open(&mut svg, "w", &w_frame);
    if hulls.degenerate {
        let d = diameter(&hulls.outer);
        if d <= 1e-9 * (1.0 + d) {
            let c = w_frame.px(hulls.outer[0]);
            writeln!(
                svg,
                r#"<circle class="marker" cx="{}" cy="{}" r="4" fill="black"/>"#,
                num(c[0]),
                num(c[1])
            )
            .unwrap();
        } else {
            let ends = convex_hull(&hulls.outer);
            writeln!(
                svg,
                r#"<polyline class="marker" points="{}" fill="none" stroke="black" stroke-width="3"/>"#,
                w_frame.points_attr(&ends)
            )
            .unwrap();
        }
    } else {
        writeln!(svg, r#"<polygon class="region" points="{}" fill="{REGION_FILL}"/>"#, w_frame.points_attr(&hulls.outer))
            .unwrap();
    }
    axes(&mut svg, &w_frame);
    curve_lines(&mut svg, &w_frame, &traces(&dual_sample(curve, rays)?, &w_frame, rays), Q_STROKE);
    panel_close(&mut svg, &w_frame, "W(A) and Q", ["x1", "x2"]);

    svg.push_str("</svg>\n");
    Ok(svg)
}
