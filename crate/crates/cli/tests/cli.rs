use std::path::PathBuf;
use std::process::{Command, Output};

use numrange::exactpoly::{parse_poly, primitive};
use numrange::{fixtures, Vars};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.json"));
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numrange")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_scratch(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn decompose_prints_hermitian_parts() {
    let o = run(&["decompose", "--input", &fixture("cubic_quartic")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let f = fixtures::cubic_quartic();
    let pencil = numrange::hermitian::split(&f.matrix);
    assert_eq!(text, format!("A1 =\n{}A2 =\n{}hermitian=false normal=false\n", pencil.a1(), pencil.a2()));
}

#[test]
fn decompose_identity() {
    let id = write_scratch("id3.json", r#"{"n": 3, "entries": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    let o = run(&["decompose", "--input", &id]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "A1 =\n[ 1  0  0 ]\n[ 0  1  0 ]\n[ 0  0  1 ]\nA2 =\n[ 0  0  0 ]\n[ 0  0  0 ]\n[ 0  0  0 ]\nhermitian=true normal=true\n"
    );
}

#[test]
fn malformed_json_is_an_input_error() {
    let bad = write_scratch("bad.json", "{\"n\": 2,\n  \"entries\": [1, 2,, 3]}");
    let o = run(&["decompose", "--input", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 2") && err.contains("column"), "{err}");
}

#[test]
fn bad_arguments_exit_2() {
    let disk = fixture("disk");
    assert_eq!(run(&["pencil"]).status.code(), Some(2));
    assert_eq!(run(&["sample-w", "--input", &disk, "--grid", "2"]).status.code(), Some(2));
    assert_eq!(run(&["duality", "--input", &disk, "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--input", &disk, "--viewport", "1,0,0,1"]).status.code(), Some(2));
    assert_eq!(run(&["pencil", "--input", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn pencil_matches_fixtures() {
    for f in fixtures::examples() {
        let o = run(&["pencil", "--input", &fixture(&f.name)]);
        assert!(o.status.success(), "{}: {}", f.name, stderr(&o));
        assert_eq!(parse_poly(stdout(&o).trim(), Vars::Y).unwrap(), f.p, "{}", f.name);
    }
}

#[test]
fn pencil_to_file() {
    let out = scratch("disk_p.txt");
    let o = run(&["pencil", "--input", &fixture("disk"), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap(), "y0^2 - 1/4*y1^2 - 1/4*y2^2\n");
}

#[test]
fn dual_of_cubic_is_the_quartic() {
    let samples = scratch("cubic_q.csv");
    let o = run(&["dual", "--input", &fixture("cubic_quartic"), "--grid", "90", "--samples", samples.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let q = parse_poly(stdout(&o).trim(), Vars::X).unwrap();
    assert_eq!(q, primitive(&fixtures::cubic_quartic().q.unwrap()));
    let csv = std::fs::read_to_string(samples).unwrap();
    assert!(csv.starts_with("theta,root_index,x1,x2,singular_flag\n"));
    assert!(csv.lines().count() > 90);
}

#[test]
fn dual_of_reducible_needs_factors() {
    let o = run(&["dual", "--input", &fixture("factored")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--factors"));

    let f = fixtures::factored();
    let lines: Vec<String> = f.factors.iter().map(|(g, _)| g.to_string()).collect();
    let file = write_scratch("factored.txt", &format!("# cubic, then conic\n{}\n\n{}\n", lines[0], lines[1]));
    let o = run(&["dual", "--input", &fixture("factored"), "--factors", &file]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("scalar=1/256\n"), "{text}");
    assert!(text.contains("multiplicity=1") && text.contains("multiplicity=3"));
    assert!(text.contains("dual=x0^2 - 4*x1^2 - 4*x2^2\n"), "{text}");
}

#[test]
fn factor_file_errors() {
    let wrong = write_scratch("wrong.txt", "y0 + y1\n");
    let o = run(&["dual", "--input", &fixture("factored"), "--factors", &wrong]);
    assert_eq!(o.status.code(), Some(2));

    let garbled = write_scratch("garbled.txt", "4*y0^2 - y1^2 - y2^2\n\n4*y0^ + 1\n");
    let o = run(&["dual", "--input", &fixture("factored"), "--factors", &garbled]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn linear_factors_dualize_to_points() {
    let f = fixtures::polytope();
    let lines: Vec<String> = f.factors.iter().map(|(g, _)| g.to_string()).collect();
    let file = write_scratch("lines.txt", &lines.join("\n"));
    let o = run(&["dual", "--input", &fixture("polytope"), "--factors", &file]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.matches("dual=point(").count(), 4);
    assert!(text.contains("dual=point(1 : 5 : 0)"), "{text}");
}

#[test]
fn sample_commands_emit_csv() {
    let o = run(&["sample-w", "--input", &fixture("disk"), "--grid", "16"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("kind,vertex_index,x1,x2\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("outer,")).count(), 16);

    let o = run(&["sample-f", "--input", &fixture("disk"), "--grid", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("theta,y1,y2,lambda_min"));
    assert_eq!(text.lines().count(), 9);
    let first: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first[0], 0.0);
    assert!((first[1] - 2.0).abs() < 1e-12 && first[2].abs() < 1e-12 && first[3].abs() < 1e-12);
}

#[test]
fn duality_exit_codes() {
    let o = run(&["duality", "--input", &fixture("cubic_quartic")]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("pass=true\n"));

    // A tolerance below rounding cannot be met.
    let o = run(&["duality", "--input", &fixture("cubic_quartic"), "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("pass=false\n"));
}

#[test]
fn craig_pairs() {
    let o = run(&["craig", "--input", &fixture("craig_diag")]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "identity=true product_zero=true rectangle=0,1,0,1\n");

    let o = run(&["craig", "--input", &fixture("craig_generic")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "identity=false product_zero=false rectangle=none\n");

    // A single matrix is split into its Hermitian parts.
    let o = run(&["craig", "--input", &fixture("disk")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("identity=false product_zero=false"));
}

#[test]
fn classify_polytope_and_smooth() {
    let o = run(&["classify", "--input", &fixture("polytope")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("verdict=polytope\nexact=true\n"), "{text}");
    let w = text.lines().find(|l| l.starts_with("w_vertices=")).unwrap();
    for v in ["(5,0)", "(3,0)", "(4,1)", "(4,-1)"] {
        assert!(w.contains(v), "{w}");
    }
    assert!(text.contains("f_bounded=false\nf_vertices=(-1/5,-1/5) (-1/5,1/5)\n"), "{text}");

    let o = run(&["classify", "--input", &fixture("disk")]);
    assert_eq!(stdout(&o), "verdict=smooth\n");
}

#[test]
fn render_is_deterministic() {
    let a = run(&["render", "--input", &fixture("cubic_quartic"), "--grid", "180"]);
    let b = run(&["render", "--input", &fixture("cubic_quartic"), "--grid", "180"]);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let svg = stdout(&a);
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches(r#"class="region""#).count(), 2);
    assert!(svg.matches(r#"class="curve""#).count() >= 2);
    assert!(svg.contains(r#"class="axis""#));
}

#[test]
fn render_nested_ovals_shows_both_ovals() {
    let out = scratch("nested.svg");
    let o = run(&["render", "--input", &fixture("nested_ovals"), "--grid", "180", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = std::fs::read_to_string(out).unwrap();
    let f_panel = svg.split(r#"<g id="panel-w""#).next().unwrap();
    assert_eq!(f_panel.matches(r#"class="curve""#).count(), 2);
}

#[test]
fn render_unbounded_needs_viewport() {
    let o = run(&["render", "--input", &fixture("polytope")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--viewport"));

    let o = run(&["render", "--input", &fixture("polytope"), "--viewport", "-0.5,0.3,-0.4,0.4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).matches(r#"class="curve-point""#).count(), 4);
}

#[test]
fn render_identity_is_a_marker() {
    let id = write_scratch("id2.json", r#"{"n": 2, "entries": [[1,0],[0,1]]}"#);
    let o = run(&["render", "--input", &id, "--viewport", "-2,2,-2,2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = stdout(&o);
    let w_panel = svg.split(r#"<g id="panel-w""#).nth(1).unwrap();
    assert!(w_panel.contains(r#"<circle class="marker""#));
    assert!(!w_panel.contains(r#"class="region""#));
}
