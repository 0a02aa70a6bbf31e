//! The numerical range `W(A)`: support function, polygonal hulls,
//! membership, the duality verifier and polytope detection.

mod duality;
mod polytope;

pub use duality::{duality_check, DualityReport};
pub use polytope::{joint_eigenpoints, polytope_detect, rationalize, ExactPolytope, PolytopeVerdict};

use rayon::prelude::*;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::{area, convex_hull, diameter, halfplane_polygon, Point};
use crate::hermitian::{eig_hermitian, FloatPencil};
use crate::pencil::angle_grid;

/// Default angle grid.
pub const DEFAULT_GRID: usize = 720;
/// Membership threshold on `min_theta h(theta) - x.u(theta)`.
pub const MEMBER_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportSample {
    pub theta: f64,
    /// `lambda_max(cos(theta)*A1 + sin(theta)*A2)`.
    pub h: f64,
    /// `(w*A1 w, w*A2 w)` for the top eigenvector `w`.
    pub witness: Point,
}

/// Support value and a touching point of `W(A)` in direction `theta`.
pub fn support(pencil: &FloatPencil, theta: f64) -> Result<SupportSample> {
    let e = eig_hermitian(&pencil.combination(theta.cos(), theta.sin()))?;
    let w = e.vectors.last().ok_or_else(|| Error::InvalidArgument("empty matrix".into()))?;
    Ok(SupportSample {
        theta,
        h: e.max(),
        witness: [pencil.a1().quadratic_form(w), pencil.a2().quadratic_form(w)],
    })
}

/// Support samples on the uniform grid of `n` angles.
pub fn support_grid(pencil: &FloatPencil, n: usize) -> Result<Vec<SupportSample>> {
    angle_grid(n).into_par_iter().map(|t| support(pencil, t)).collect()
}

/// Inner and outer polygonal approximations of `W(A)`, both counter-clockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeHulls {
    /// Convex hull of the support witnesses.
    pub inner: Vec<Point>,
    /// Intersection of the supporting half-planes.
    pub outer: Vec<Point>,
    pub n: usize,
    /// `W(A)` looks like a point or a segment at this resolution.
    pub degenerate: bool,
}

impl RangeHulls {
    pub fn from_samples(samples: &[SupportSample]) -> Self {
        let thetas: Vec<f64> = samples.iter().map(|s| s.theta).collect();
        let h: Vec<f64> = samples.iter().map(|s| s.h).collect();
        let inner = convex_hull(&samples.iter().map(|s| s.witness).collect::<Vec<_>>());
        let outer = halfplane_polygon(&thetas, &h);
        let d = diameter(&outer);
        let degenerate = outer.len() < 3 || area(&outer) <= 1e-12 * d * d;
        RangeHulls { inner, outer, n: samples.len(), degenerate }
    }

    /// `kind,vertex_index,x1,x2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,vertex_index,x1,x2\n");
        for (kind, poly) in [("inner", &self.inner), ("outer", &self.outer)] {
            for (k, p) in poly.iter().enumerate() {
                writeln!(out, "{kind},{k},{},{}", p[0], p[1]).expect("string write");
            }
        }
        out
    }
}

pub fn range_hulls(pencil: &FloatPencil, n: usize) -> Result<RangeHulls> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 angles, got {n}")));
    }
    Ok(RangeHulls::from_samples(&support_grid(pencil, n)?))
}

fn support_gap(pencil: &FloatPencil, x: Point, theta: f64) -> Result<f64> {
    let s = support(pencil, theta)?;
    Ok(s.h - x[0] * theta.cos() - x[1] * theta.sin())
}

/// `min_theta h(theta) - x.u(theta)` over the grid, refined by golden-section
/// search on the two cells around the grid minimizer.
pub fn membership_margin(pencil: &FloatPencil, x: Point, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 angles, got {n}")));
    }
    let grid = angle_grid(n);
    let gaps = grid.par_iter().map(|&t| support_gap(pencil, x, t)).collect::<Result<Vec<_>>>()?;
    let (k, &best) = gaps.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("n >= 3");
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let (mut lo, mut hi) = (grid[k] - step, grid[k] + step);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - phi * (hi - lo);
    let mut b = lo + phi * (hi - lo);
    let (mut fa, mut fb) = (support_gap(pencil, x, a)?, support_gap(pencil, x, b)?);
    let mut min = best.min(fa).min(fb);
    for _ in 0..40 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = support_gap(pencil, x, a)?;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = support_gap(pencil, x, b)?;
        }
        min = min.min(fa).min(fb);
    }
    Ok(min)
}

/// `x` lies in `W(A)` when no supporting half-plane excludes it by more than `1e-7`.
pub fn member_w(pencil: &FloatPencil, x: Point) -> Result<bool> {
    Ok(membership_margin(pencil, x, DEFAULT_GRID)? >= -MEMBER_TOL)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranslateReport {
    pub c: f64,
    /// `max |h_{A+cI}(theta) - h_A(theta) - c*cos(theta)|` over the grid.
    pub max_deviation: f64,
}

impl TranslateReport {
    pub fn passes(&self) -> bool {
        self.max_deviation <= 1e-9
    }
}

/// Compares the support function of `A + c*I` with that of `A` shifted by `c*cos(theta)`.
pub fn translate_scale_law(pencil: &FloatPencil, c: f64, thetas: &[f64]) -> Result<TranslateReport> {
    let shifted = pencil.translated(c);
    let devs = thetas
        .par_iter()
        .map(|&t| Ok((support(&shifted, t)?.h - support(pencil, t)?.h - c * t.cos()).abs()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(TranslateReport { c, max_deviation: devs.into_iter().fold(0.0, f64::max) })
}
