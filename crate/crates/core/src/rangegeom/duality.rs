use std::fmt;

use super::{range_hulls, support_grid, RangeHulls};
use crate::error::{Error, Result};
use crate::geometry::{hausdorff, Point};
use crate::hermitian::FloatPencil;
use crate::pencil::boundary_f;

/// Gaps at or below `GAP_FLOOR_ULPS * eps * n * max(1, max |x|)` are rounding
/// noise, which happens when both hulls are already exact (polygons, points,
/// segments). Adjacent supporting lines meet at angle `2*pi/n`, so their
/// intersection amplifies rounding by about `n`.
const GAP_FLOOR_ULPS: f64 = 64.0;

/// Outcome of the three checks of the pairing `1 + x.y >= 0` between
/// `W(A)` (witnesses `x`) and `F(A)` (boundary samples `y`).
#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    pub n: usize,
    pub tol: f64,
    /// Finite boundary samples of `F(A)` used.
    pub f_samples: usize,
    /// `min 1 + x.y` over all witness/boundary pairs.
    pub pairing_min: f64,
    /// `max over y of min over x of 1 + x.y`: every boundary sample should
    /// have a witness on its supporting line.
    pub complementary_max: f64,
    /// Hausdorff distance between inner and outer hull at `n` and `2n`.
    pub gap_n: f64,
    pub gap_2n: f64,
    gap_floor: f64,
}

impl DualityReport {
    pub fn pairing_ok(&self) -> bool {
        self.pairing_min >= -self.tol
    }

    pub fn complementary_ok(&self) -> bool {
        self.complementary_max <= self.tol
    }

    /// The gap must shrink when the grid doubles, unless both hulls were
    /// already exact to rounding.
    pub fn gap_ok(&self) -> bool {
        self.gap_2n < self.gap_n || self.gap_n.max(self.gap_2n) <= self.gap_floor
    }

    pub fn passes(&self) -> bool {
        self.pairing_ok() && self.complementary_ok() && self.gap_ok()
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "grid={}", self.n)?;
        writeln!(f, "tol={:e}", self.tol)?;
        writeln!(f, "f_samples={}", self.f_samples)?;
        writeln!(f, "pairing_min={:e}", self.pairing_min)?;
        writeln!(f, "pairing_ok={}", self.pairing_ok())?;
        writeln!(f, "complementary_max={:e}", self.complementary_max)?;
        writeln!(f, "complementary_ok={}", self.complementary_ok())?;
        writeln!(f, "gap_n={:e}", self.gap_n)?;
        writeln!(f, "gap_2n={:e}", self.gap_2n)?;
        writeln!(f, "gap_ok={}", self.gap_ok())?;
        write!(f, "pass={}", self.passes())
    }
}

fn radius(poly: &[Point]) -> f64 {
    poly.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max)
}

fn gap(h: &RangeHulls) -> f64 {
    hausdorff(&h.inner, &h.outer)
}

pub fn duality_check(pencil: &FloatPencil, n: usize, tol: f64) -> Result<DualityReport> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 angles, got {n}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let witnesses: Vec<Point> = support_grid(pencil, n)?.iter().map(|s| s.witness).collect();
    let boundary = boundary_f(pencil, n)?.points();
    let mut pairing_min = f64::INFINITY;
    let mut complementary_max = f64::NEG_INFINITY;
    for y in &boundary {
        let best = witnesses.iter().map(|x| 1.0 + x[0] * y[0] + x[1] * y[1]).fold(f64::INFINITY, f64::min);
        pairing_min = pairing_min.min(best);
        complementary_max = complementary_max.max(best);
    }
    if boundary.is_empty() {
        // F(A) is everything (or bounded by lines at infinity): nothing to pair.
        pairing_min = 0.0;
        complementary_max = 0.0;
    }
    let coarse = range_hulls(pencil, n)?;
    let fine = range_hulls(pencil, 2 * n)?;
    Ok(DualityReport {
        n,
        tol,
        f_samples: boundary.len(),
        pairing_min,
        complementary_max,
        gap_n: gap(&coarse),
        gap_2n: gap(&fine),
        gap_floor: GAP_FLOOR_ULPS * f64::EPSILON * (2 * n) as f64 * radius(&fine.outer).max(1.0),
    })
}
