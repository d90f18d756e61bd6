use std::sync::OnceLock;

use proptest::prelude::*;
use semipolar::apsg::{AffLine, SemipolarSpace};
use semipolar::autos::{build_symplectic_auto, compose_params, preserves_adjacency, rho_scale_factor};
use semipolar::metric::{bisector_m, bisector_t, polar_correspondence_check, sphere};
use semipolar::{Budget, Field, Instance, InstanceKind, Matrix, Point, Semiform, Vector};

const P: u32 = 5;

fn f5() -> Field {
    Field::new(P).unwrap()
}

/// Symplectic m=1 over GF(5): 125 points.
fn space() -> &'static SemipolarSpace {
    static S: OnceLock<SemipolarSpace> = OnceLock::new();
    S.get_or_init(|| SemipolarSpace::new(&Semiform::symplectic(f5(), 1).unwrap(), Budget::default()).unwrap())
}

fn point() -> impl Strategy<Value = usize> {
    0..125usize
}

fn invertible() -> impl Strategy<Value = Matrix> {
    prop::array::uniform4(0..P as i64)
        .prop_filter("invertible", |e| (e[0] * e[3] - e[1] * e[2]).rem_euclid(P as i64) != 0)
        .prop_map(|e| Matrix::from_rows(f5(), &[vec![e[0], e[1]], vec![e[2], e[3]]]).unwrap())
}

fn auto_params() -> impl Strategy<Value = (Matrix, u32, Vec<u32>)> {
    (invertible(), 0..P, prop::collection::vec(0..P, 2))
}

fn build(phi: &Matrix, b: u32, w: &[u32]) -> semipolar::autos::AffineMap {
    let eta = space().eta();
    let alpha = phi.determinant();
    let b = f5().elem(i64::from(b));
    build_symplectic_auto(eta, alpha, b, &Vector::new(f5(), w.to_vec()), phi).unwrap().1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symplectic_autos_scale_rho_by_det((phi, b, w) in auto_params()) {
        let s = space();
        let map = build(&phi, b, &w);
        prop_assert_eq!(rho_scale_factor(s, &map), Some(phi.determinant()));
        prop_assert!(preserves_adjacency(s, &map));
    }

    #[test]
    fn parameter_composition_matches_maps(a in auto_params(), c in auto_params()) {
        let s = space();
        let eta = s.eta();
        let (p1, m1) = build_symplectic_auto(eta, a.0.determinant(), f5().elem(i64::from(a.1)), &Vector::new(f5(), a.2.clone()), &a.0).unwrap();
        let (p2, m2) = build_symplectic_auto(eta, c.0.determinant(), f5().elem(i64::from(c.1)), &Vector::new(f5(), c.2.clone()), &c.0).unwrap();
        let composed = compose_params(eta, &p2, &p1).unwrap().to_map();
        prop_assert_eq!(composed.permutation(s.grid()), m2.compose(&m1).permutation(s.grid()));
    }

    #[test]
    fn autos_carry_bisectors_to_bisectors((phi, b, w) in auto_params(), i in point(), j in point()) {
        prop_assume!(i != j);
        let s = space();
        let map = build(&phi, b, &w);
        let perm = map.permutation(s.grid());
        let (p1, p2) = (s.point(i), s.point(j));
        let (q1, q2) = (map.apply(&p1), map.apply(&p2));
        for (before, after) in [
            (bisector_t(s, &p1, &p2).unwrap(), bisector_t(s, &q1, &q2).unwrap()),
            (bisector_m(s, &p1, &p2).unwrap(), bisector_m(s, &q1, &q2).unwrap()),
            (sphere(s, &p1, &p2).unwrap(), sphere(s, &q1, &q2).unwrap()),
        ] {
            let mut image: Vec<usize> = before.points.iter().map(|&x| perm[x]).collect();
            image.sort_unstable();
            prop_assert_eq!(image, after.points);
        }
    }

    #[test]
    fn bisectors_match_their_equations(i in point(), j in point()) {
        prop_assume!(i != j);
        let s = space();
        let (p1, p2) = (s.point(i), s.point(j));
        for b in [bisector_t(s, &p1, &p2).unwrap(), bisector_m(s, &p1, &p2).unwrap(), sphere(s, &p1, &p2).unwrap()] {
            prop_assert!(b.matches_equation(s));
            prop_assert!(b.points.is_empty() || b.points.len() == 25);
        }
        prop_assert!(polar_correspondence_check(s, &p1, &p2).unwrap());
    }

    #[test]
    fn singular_lines_are_pairwise_adjacent(i in point(), d in 1..125usize) {
        let s = space();
        let line = AffLine::new(s.point(i), s.point(d)).unwrap();
        prop_assert_eq!(s.line_is_singular(&line), s.line_is_singular_pairwise(&line));
    }

    #[test]
    fn adjacency_is_symmetric_and_reflexive(i in point(), j in point()) {
        let s = space();
        prop_assert!(s.adjacent_idx(i, i));
        prop_assert_eq!(s.adjacent_idx(i, j), s.adjacent_idx(j, i));
    }

    #[test]
    fn instance_json_round_trips(c in prop::collection::vec(1..3u32, 2)) {
        let text = format!(
            r#"{{"p": 3, "n": 2, "nu": 2, "gram": [[0, 1, {}, {}]], "atlas": [[1, 0], [0, 1]], "kind": "custom"}}"#,
            c[0], c[1]
        );
        let inst = Instance::from_json(&text).unwrap();
        prop_assert_eq!(inst.kind, InstanceKind::Custom);
        let rho = inst.to_semiform().unwrap();
        let again = Instance::from_semiform(&rho, InstanceKind::Custom);
        prop_assert_eq!(Instance::from_json(&again.to_json()).unwrap(), again);
    }
}

#[test]
fn origin_has_index_zero() {
    let s = space();
    assert_eq!(s.index(&Point::origin(f5(), 1, 2)), 0);
    assert_eq!(s.index(&s.point(124)), 124);
}
