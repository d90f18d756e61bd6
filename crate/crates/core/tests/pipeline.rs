//! Instance file to space to exports, across module boundaries.

use semipolar::apsg::SemipolarSpace;
use semipolar::export::{adjacency_csv, adjacency_dot, pencil_json};
use semipolar::hyperbolic::{hyperbolic_quadric_size, is_hyperbolic, HypPolarSpace, SymmetricForm};
use semipolar::suites::{Context, SuiteConfig};
use semipolar::{Budget, Field, Instance, InstanceKind, Semiform};

fn f3() -> Field {
    Field::new(3).unwrap()
}

#[test]
fn instance_file_drives_the_space() {
    let rho = Semiform::symplectic(f3(), 2).unwrap();
    let text = Instance::from_semiform(&rho, InstanceKind::Symplectic).to_json();
    let back = Instance::from_json(&text).unwrap().to_semiform().unwrap();
    let a = SemipolarSpace::new(&rho, Budget::default()).unwrap();
    let b = SemipolarSpace::new(&back, Budget::default()).unwrap();
    assert_eq!(adjacency_csv(&a), adjacency_csv(&b));
}

#[test]
fn exports_agree_with_neighbour_counts() {
    let s = SemipolarSpace::new(&Semiform::cross(f3()).unwrap(), Budget::default()).unwrap();
    let edges: usize = (0..s.size()).map(|i| s.neighbors(i).count() - 1).sum::<usize>() / 2;
    let csv = adjacency_csv(&s);
    assert_eq!(csv.lines().count() - 2, edges);
    let dot = adjacency_dot(&s);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), edges);
}

#[test]
fn pencil_export_matches_the_lines_suite() {
    let rho = Semiform::symplectic(f3(), 2).unwrap();
    let s = SemipolarSpace::new(&rho, Budget::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&pencil_json(&s.pencil_structure(&s.point(17)).unwrap())).unwrap();
    let rep = Context::new(&rho, SuiteConfig::default()).run("lines").unwrap();
    assert_eq!(rep.notes["singular_lines_through_a_point"][0], v["points"].as_array().unwrap().len());
}

#[test]
fn doubled_quadric_counts() {
    for diag in [[1, 1, 1], [1, 1, -1], [1, -1, -1]] {
        let xi = SymmetricForm::diagonal(f3(), &diag).unwrap();
        let sp = HypPolarSpace::build_double(&xi, Budget::default()).unwrap();
        assert!(is_hyperbolic(sp.zeta()));
        assert_eq!(sp.points().len() as u128, hyperbolic_quadric_size(3, 3));
        let maxis = sp.maximal_singulars();
        assert_eq!(maxis.len(), 80);
        let parity = HypPolarSpace::parity_classes(&maxis).unwrap();
        assert_eq!(parity.iter().filter(|&&c| c == 0).count(), 40);
    }
}

#[test]
fn oracle_refuses_large_spaces() {
    let rho = Semiform::symplectic(f3(), 2).unwrap();
    let err = Context::new(&rho, SuiteConfig::default()).run("oracle").unwrap_err();
    assert!(matches!(err, semipolar::Error::EnumerationTooLarge { .. }));
}
