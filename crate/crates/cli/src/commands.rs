//! One function per subcommand. Each returns the text for `--out` (or
//! standard output) and, for checks, the reason the check failed.

use std::fmt::{self, Write};
use std::fs;
use std::path::{Path, PathBuf};

use numrange::craig::craig_verdict;
use numrange::dualcurve::{dual_curve_exact, dual_sample, dual_union, DualComponent};
use numrange::exactpoly::parse_poly;
use numrange::geometry::ExactRegion;
use numrange::hermitian::pencil_from_json;
use numrange::pencil::{boundary_f, pencil_det, PencilCurve};
use numrange::rangegeom::{duality_check, polytope_detect, range_hulls, PolytopeVerdict};
use numrange::{BigRational, Error, HermitianPencil, TriPoly, Vars};

use crate::render;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit code 2.
    Input(String),
    /// A check ran and failed: exit code 1.
    Check(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) | Error::NoConvergence { .. } => CliError::Check(e.to_string()),
            Error::Reducible => CliError::Input(format!("{e} (pass --factors <file>)")),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub input: PathBuf,
    pub grid: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub factors: Option<PathBuf>,
    pub viewport: Option<[f64; 4]>,
}

pub struct Output {
    pub body: String,
    pub failure: Option<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, failure: None }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

pub fn emit(job: &Job, body: &str) -> Result<(), CliError> {
    match &job.out {
        Some(path) => write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn load(job: &Job) -> Result<HermitianPencil, CliError> {
    let src = read(&job.input)?;
    pencil_from_json(&src).map_err(|e| CliError::Input(format!("{}: {e}", job.input.display())))
}

fn curve(job: &Job) -> Result<PencilCurve, CliError> {
    Ok(pencil_det(&load(job)?)?)
}

pub fn parse_viewport(s: &str) -> Result<[f64; 4], CliError> {
    let bad = || CliError::Input(format!("--viewport wants x1min,x1max,x2min,x2max, got \"{s}\""));
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let [a, b, c, d] = <[f64; 4]>::try_from(v).map_err(|_| bad())?;
    if !(a < b && c < d) || ![a, b, c, d].iter().all(|x| x.is_finite()) {
        return Err(bad());
    }
    Ok([a, b, c, d])
}

/// One polynomial per line; blank lines and `#` comments are skipped.
/// Parse errors report the line in the file.
pub fn parse_factors(src: &str) -> Result<Vec<TriPoly>, CliError> {
    let mut out = Vec::new();
    for (k, line) in src.lines().enumerate() {
        let text = line.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        match parse_poly(text, Vars::Y) {
            Ok(f) => out.push(f),
            Err(Error::Parse { column, msg, .. }) => {
                return Err(CliError::Input(format!("factors: parse error at line {}, column {column}: {msg}", k + 1)))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn decompose(job: &Job) -> Result<Output, CliError> {
    let pencil = load(job)?;
    let a = pencil.recombine();
    let mut s = String::new();
    write!(s, "A1 =\n{}A2 =\n{}", pencil.a1(), pencil.a2()).unwrap();
    writeln!(s, "hermitian={} normal={}", flag(a.is_hermitian()), flag(a.is_normal())).unwrap();
    Ok(Output::ok(s))
}

pub fn pencil(job: &Job) -> Result<Output, CliError> {
    Ok(Output::ok(format!("{}\n", curve(job)?.p)))
}

fn point_text(x: &[BigRational; 3]) -> String {
    format!("point({} : {} : {})", x[0], x[1], x[2])
}

pub fn dual(job: &Job, samples: Option<&Path>) -> Result<Output, CliError> {
    let c = curve(job)?;
    let mut s = String::new();
    match &job.factors {
        None => {
            let d = dual_curve_exact(&c.p)?;
            for (f, m) in &d.extraneous {
                eprintln!("note: discarded extraneous factor ({f})^{m}");
            }
            writeln!(s, "{}", d.q).unwrap();
        }
        Some(path) => {
            let factors = parse_factors(&read(path)?)?;
            let (fz, comps) = dual_union(&c.p, &factors)?;
            writeln!(s, "scalar={}", fz.scalar).unwrap();
            for ((f, m), comp) in fz.factors.iter().zip(&comps) {
                let dual = match comp {
                    DualComponent::Curve(d) => d.q.to_string(),
                    DualComponent::Point(x) => point_text(x),
                };
                writeln!(s, "factor={f} multiplicity={m} dual={dual}").unwrap();
            }
        }
    }
    if let Some(path) = samples {
        write(path, &dual_sample(&c, job.grid.max(8))?.to_dual_csv())?;
    }
    Ok(Output::ok(s))
}

pub fn sample_w(job: &Job) -> Result<Output, CliError> {
    let fp = load(job)?.to_float();
    Ok(Output::ok(range_hulls(&fp, job.grid)?.to_csv()))
}

pub fn sample_f(job: &Job) -> Result<Output, CliError> {
    let fp = load(job)?.to_float();
    Ok(Output::ok(boundary_f(&fp, job.grid)?.to_boundary_csv()))
}

pub fn duality(job: &Job) -> Result<Output, CliError> {
    let fp = load(job)?.to_float();
    let r = duality_check(&fp, job.grid, job.tol)?;
    let failure = (!r.passes()).then(|| "duality check failed".to_string());
    Ok(Output { body: format!("{r}\n"), failure })
}

pub fn craig(job: &Job) -> Result<Output, CliError> {
    let pencil = load(job)?;
    Ok(Output::ok(format!("{}\n", craig_verdict(pencil.a1(), pencil.a2())?)))
}

fn rat_points(v: &[[BigRational; 2]]) -> String {
    v.iter().map(|p| format!("({},{})", p[0], p[1])).collect::<Vec<_>>().join(" ")
}

fn region_lines(s: &mut String, name: &str, r: &ExactRegion) {
    writeln!(s, "{name}_bounded={}", flag(r.bounded)).unwrap();
    writeln!(s, "{name}_vertices={}", rat_points(&r.vertices)).unwrap();
}

pub fn classify(job: &Job) -> Result<Output, CliError> {
    let a = load(job)?.recombine();
    let mut s = String::new();
    match polytope_detect(&a)? {
        PolytopeVerdict::Polytope { vertices, exact } => {
            writeln!(s, "verdict=polytope").unwrap();
            writeln!(s, "exact={}", flag(exact.is_some())).unwrap();
            match exact {
                Some(e) => {
                    writeln!(s, "w_vertices={}", rat_points(&e.w_vertices)).unwrap();
                    for (f, m) in &e.factors {
                        writeln!(s, "factor={f} multiplicity={m}").unwrap();
                    }
                    region_lines(&mut s, "f", &e.f_region);
                    for (k, cell) in e.f_cells.iter().enumerate() {
                        writeln!(s, "cell{k}_vertices={}", rat_points(&cell.vertices)).unwrap();
                    }
                }
                None => {
                    let v: Vec<String> = vertices.iter().map(|p| format!("({},{})", p[0], p[1])).collect();
                    writeln!(s, "w_vertices={}", v.join(" ")).unwrap();
                }
            }
        }
        PolytopeVerdict::Smooth => writeln!(s, "verdict=smooth").unwrap(),
        PolytopeVerdict::Mixed => writeln!(s, "verdict=mixed").unwrap(),
    }
    Ok(Output::ok(s))
}

pub fn render(job: &Job) -> Result<Output, CliError> {
    let c = curve(job)?;
    Ok(Output::ok(render::render_svg(&c, job.grid, job.viewport)?))
}
