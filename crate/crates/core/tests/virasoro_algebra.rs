use hodge_core::rational::ExactRational;
use hodge_core::virasoro::{
    curve_operator, general_operator, point_operator, surface_operator, CohomologyData,
    DifferentialOperator, SurfaceData,
};

const CAP: u16 = 12;
const SAFE: u16 = 7;

fn check_relation(l: impl Fn(i64) -> DifferentialOperator, what: &str) {
    for k in -1..=3 {
        for j in -1..=3 {
            let lhs = l(k).commutator(&l(j)).restrict_mult(SAFE);
            if k + j < -1 {
                assert!(lhs.is_zero(), "{what}: [L_{k}, L_{j}]:\n{lhs}");
                continue;
            }
            let rhs = l(k + j).scale(&ExactRational::from(k - j)).restrict_mult(SAFE);
            let diff = lhs.sub(&rhs);
            assert!(diff.is_zero(), "{what}: [L_{k}, L_{j}] - ({k} - {j}) L_{}:\n{diff}", k + j);
        }
    }
}

#[test]
fn point_operators_close() {
    check_relation(|k| point_operator(k, CAP).unwrap(), "point");
}

#[test]
fn projective_line_operators_close() {
    let p1 = CohomologyData::projective_space(1);
    check_relation(|k| general_operator(k, &p1, CAP).unwrap(), "P1");
}

#[test]
fn projective_plane_operators_close() {
    let p2 = CohomologyData::projective_space(2);
    check_relation(|k| general_operator(k, &p2, CAP).unwrap(), "P2");
}

#[test]
fn general_builder_specialises_to_point() {
    let pt = CohomologyData::point();
    for k in -1..=4 {
        assert_eq!(general_operator(k, &pt, CAP).unwrap(), point_operator(k, CAP).unwrap(), "k = {k}");
    }
}

#[test]
fn curve_form_matches_general_builder_for_p1() {
    let p1 = CohomologyData::projective_space(1);
    for k in 1..=4 {
        let a = curve_operator(k, 0, CAP).unwrap();
        let b = general_operator(k, &p1, CAP).unwrap();
        assert_eq!(a, b, "k = {k}\ncurve:\n{a}\ngeneral:\n{b}");
    }
}

#[test]
fn surface_form_matches_general_builder_for_p2() {
    let p2 = CohomologyData::projective_space(2);
    let s = SurfaceData::projective_plane();
    for k in 1..=4 {
        let a = surface_operator(k, &s, CAP).unwrap();
        let b = general_operator(k, &p2, CAP).unwrap();
        assert_eq!(a, b, "k = {k}\nsurface:\n{a}\ngeneral:\n{b}\ndiff:\n{}", a.sub(&b));
    }
}
