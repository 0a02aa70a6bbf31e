//! The worked examples shipped under `fixtures/`, plus seeded random
//! matrix generators.
//!
//! Each fixture file is also a valid matrix input file; the extra fields
//! carry reference polynomials and vertex lists.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::exactpoly::{parse_poly, rat, GaussianRational, TriPoly, Vars};
use crate::hermitian::{matrix_from_json, GaussianRationalMatrix};

#[derive(Deserialize)]
struct Raw {
    name: String,
    description: String,
    p: String,
    q: Option<String>,
    #[serde(default)]
    extraneous: Vec<String>,
    #[serde(default)]
    factors: Vec<String>,
    #[serde(default)]
    multiplicities: Vec<u32>,
    #[serde(default)]
    dual_components: Vec<String>,
    #[serde(default)]
    w_vertices: Vec<[String; 2]>,
    #[serde(default)]
    f_vertices: Vec<[String; 2]>,
}

/// One worked example with its reference data.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub matrix: GaussianRationalMatrix,
    /// Pencil determinant `det(y0*I + y1*A1 + y2*A2)`.
    pub p: TriPoly,
    /// Irreducible dual curve, when the pencil curve is irreducible.
    pub q: Option<TriPoly>,
    /// Factors the discriminant elimination is expected to discard.
    pub extraneous: Vec<TriPoly>,
    /// Factorization of `p` as supplied by hand, with multiplicities.
    pub factors: Vec<(TriPoly, u32)>,
    /// Reference duals of the factors of degree at least two.
    pub dual_components: Vec<TriPoly>,
    pub w_vertices: Vec<[BigRational; 2]>,
    pub f_vertices: Vec<[BigRational; 2]>,
    /// The file contents, usable as a matrix input file.
    pub source: &'static str,
}

fn rational(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((a, b)) => BigRational::new(a.parse().expect("numerator"), b.parse().expect("denominator")),
        None => BigRational::from_integer(s.parse().expect("integer")),
    }
}

fn load(source: &'static str) -> Fixture {
    let raw: Raw = serde_json::from_str(source).expect("fixture JSON");
    let y = |s: &String| parse_poly(s, Vars::Y).expect("fixture polynomial");
    let x = |s: &String| parse_poly(s, Vars::X).expect("fixture polynomial");
    let verts = |v: &[[String; 2]]| v.iter().map(|[a, b]| [rational(a), rational(b)]).collect();
    let mut mults = raw.multiplicities.clone();
    mults.resize(raw.factors.len(), 1);
    Fixture {
        matrix: matrix_from_json(source).expect("fixture matrix"),
        p: y(&raw.p),
        q: raw.q.as_ref().map(x),
        extraneous: raw.extraneous.iter().map(x).collect(),
        factors: raw.factors.iter().map(y).zip(mults).collect(),
        dual_components: raw.dual_components.iter().map(x).collect(),
        w_vertices: verts(&raw.w_vertices),
        f_vertices: verts(&raw.f_vertices),
        name: raw.name,
        description: raw.description,
        source,
    }
}

/// Cubic pencil curve with a cuspidal quartic dual.
pub fn cubic_quartic() -> Fixture {
    load(include_str!("../fixtures/cubic_quartic.json"))
}

/// Quartic pencil curve and octic dual, both with two nested ovals.
pub fn nested_ovals() -> Fixture {
    load(include_str!("../fixtures/nested_ovals.json"))
}

/// Quartic cross with a degree-12 dual.
pub fn cross_star() -> Fixture {
    load(include_str!("../fixtures/cross_star.json"))
}

/// 9x9 pencil whose determinant is a cubic times a cubed conic.
pub fn factored() -> Fixture {
    load(include_str!("../fixtures/factored.json"))
}

/// Normal circulant with a quadrilateral numerical range.
pub fn polytope() -> Fixture {
    load(include_str!("../fixtures/polytope.json"))
}

/// 2x2 Jordan block; `W` is the disk of radius 1/2.
pub fn disk() -> Fixture {
    load(include_str!("../fixtures/disk.json"))
}

/// The five worked examples in order (the disk oracle is separate).
pub fn examples() -> Vec<Fixture> {
    vec![cubic_quartic(), nested_ovals(), cross_star(), factored(), polytope()]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    examples().into_iter().chain([disk()]).find(|f| f.name == name)
}

/// Random complex matrix with small Gaussian-rational entries.
///
/// Real and imaginary parts are drawn from `{-3, ..., 3} / {1, 2}`, and about
/// a third of the entries are zero so that sparse structure shows up.
pub fn random_matrix(seed: u64, n: usize) -> GaussianRationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let part = |rng: &mut ChaCha8Rng| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    let entries = (0..n * n)
        .map(|_| {
            if rng.gen_bool(0.3) {
                GaussianRational::default()
            } else {
                let re = part(&mut rng);
                GaussianRational::new(re, part(&mut rng))
            }
        })
        .collect();
    GaussianRationalMatrix::new(n, entries).expect("n*n entries")
}
