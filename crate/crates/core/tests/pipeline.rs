use numrange::dualcurve::{dual_curve_exact, dual_sample};
use numrange::exactpoly::{parse_poly, primitive};
use numrange::fixtures;
use numrange::geometry::{distance_to_convex, is_convex};
use numrange::hermitian::{matrix_from_json, matrix_to_json, pencil_from_json, split};
use numrange::pencil::{boundary_f, curve_samples, lmi_member, pencil_det};
use numrange::rangegeom::{member_w, range_hulls};
use numrange::Vars;

fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn fixture_files_round_trip() {
    for f in fixtures::examples() {
        let a = matrix_from_json(&fixture_text(&f.name)).unwrap();
        assert_eq!(a, f.matrix);
        assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
        assert_eq!(pencil_from_json(&fixture_text(&f.name)).unwrap(), split(&a));
    }
}

#[test]
fn pair_files_load() {
    let p = pencil_from_json(&fixture_text("craig_diag")).unwrap();
    let curve = pencil_det(&p).unwrap();
    assert_eq!(curve.p, parse_poly("(y0 + y1)*(y0 + y2)", Vars::Y).unwrap());
}

/// The whole chain for every fixture with an irreducible pencil curve:
/// P samples lie on p, the boundary of F(A) is in F(A), Q samples lie on q
/// and inside the sampled W(A).
#[test]
fn primal_and_dual_samples_agree() {
    for f in [fixtures::cubic_quartic(), fixtures::nested_ovals(), fixtures::cross_star(), fixtures::disk()] {
        let curve = pencil_det(&split(&f.matrix)).unwrap();
        let fp = curve.pencil.to_float();
        let pf = curve.p.to_float();
        for s in curve_samples(&fp, 180).unwrap().samples {
            let [a, b] = s.point.unwrap();
            assert!(pf.relative_value(&[1.0, a, b]) < 1e-9, "{}: P sample off p", f.name);
        }
        for y in boundary_f(&fp, 180).unwrap().points() {
            assert!(lmi_member(&fp, y).unwrap(), "{}: boundary of F(A) outside F(A)", f.name);
        }
        let q = dual_curve_exact(&curve.p).unwrap().q;
        assert_eq!(primitive(&q), primitive(&f.q.clone().unwrap()), "{}", f.name);
        let qf = q.to_float();
        let hulls = range_hulls(&fp, 720).unwrap();
        assert!(is_convex(&hulls.outer, 1e-12));
        for s in dual_sample(&curve, 180).unwrap().samples.iter().filter(|s| !s.singular) {
            let [a, b] = s.point.unwrap();
            assert!(qf.relative_value(&[1.0, a, b]) < 1e-7, "{}: Q sample off q", f.name);
            assert!(distance_to_convex(&hulls.outer, [a, b]) < 1e-12, "{}: Q sample outside W(A)", f.name);
            assert!(member_w(&fp, [a, b]).unwrap(), "{}", f.name);
        }
    }
}

#[test]
fn identity_has_point_range() {
    let a = numrange::GaussianRationalMatrix::identity(3);
    let hulls = range_hulls(&split(&a).to_float(), 64).unwrap();
    assert!(hulls.degenerate);
    assert!(hulls.outer.iter().all(|p| (p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12));
    let curve = pencil_det(&split(&a)).unwrap();
    assert_eq!(curve.p, parse_poly("(y0 + y1)^3", Vars::Y).unwrap());
}
