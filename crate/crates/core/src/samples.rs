//! Ordered point samples of a boundary curve in an affine chart.

use std::fmt::Write;

/// Which affine chart the points live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `y0 = 1`: points `(y1, y2)` of the pencil plane.
    Y0,
    /// `x0 = 1`: points `(x1, x2)` of the dual plane.
    X0,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSample {
    /// Angle of the ray (or support direction) that produced the sample.
    pub theta: f64,
    /// Index of the root along the ray, starting at 0 for the nearest.
    pub root_index: usize,
    /// Chart coordinates; `None` encodes a point at infinity or an unbounded ray.
    pub point: Option<[f64; 2]>,
    /// Smallest eigenvalue of the pencil at the point, when computed.
    pub lambda_min: Option<f64>,
    /// The producing point was singular (vanishing gradient).
    pub singular: bool,
}

/// Samples ordered by `(theta, root_index)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSampleSet {
    pub chart: Chart,
    pub samples: Vec<CurveSample>,
    /// Every ray was unbounded: the set is the whole chart plane.
    pub unbounded_everywhere: bool,
}

fn num(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v}")
    }
}

impl CurveSampleSet {
    pub fn new(chart: Chart, samples: Vec<CurveSample>) -> Self {
        Self { chart, samples, unbounded_everywhere: false }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Finite points in sample order.
    pub fn points(&self) -> Vec<[f64; 2]> {
        self.samples.iter().filter_map(|s| s.point).collect()
    }

    /// Finite points that came from smooth curve points.
    pub fn smooth_points(&self) -> Vec<[f64; 2]> {
        self.samples.iter().filter(|s| !s.singular).filter_map(|s| s.point).collect()
    }

    pub fn unbounded_count(&self) -> usize {
        self.samples.iter().filter(|s| s.point.is_none()).count()
    }

    /// Samples with a given root index.
    pub fn branch(&self, root_index: usize) -> Vec<[f64; 2]> {
        self.samples.iter().filter(|s| s.root_index == root_index).filter_map(|s| s.point).collect()
    }

    /// `theta,y1,y2,lambda_min`; unbounded rays print `inf` coordinates.
    pub fn to_boundary_csv(&self) -> String {
        let mut out = String::from("theta,y1,y2,lambda_min\n");
        for s in &self.samples {
            let (a, b) = match s.point {
                Some([a, b]) => (num(a), num(b)),
                None => ("inf".into(), "inf".into()),
            };
            let l = s.lambda_min.map(num).unwrap_or_else(|| "nan".into());
            writeln!(out, "{},{a},{b},{l}", num(s.theta)).expect("string write");
        }
        out
    }

    /// `theta,root_index,x1,x2,singular_flag`.
    pub fn to_dual_csv(&self) -> String {
        let mut out = String::from("theta,root_index,x1,x2,singular_flag\n");
        for s in &self.samples {
            let (a, b) = match s.point {
                Some([a, b]) => (num(a), num(b)),
                None => ("inf".into(), "inf".into()),
            };
            writeln!(out, "{},{},{a},{b},{}", num(s.theta), s.root_index, u8::from(s.singular)).expect("string write");
        }
        out
    }
}
