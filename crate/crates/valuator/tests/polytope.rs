mod common;

use common::*;
use num_rational::Ratio;
use proptest::prelude::*;
use valuator::matroid::bits;
use valuator::polytope::{
    all_faces, barycenter, delta, facet_sign, is_face, is_face_lp, is_internal, is_nbc_by_feasibility, maximize, member, vertex, vertices,
    OrientationData,
};
use valuator::{GroundSet, Matroid, Rat};

fn half() -> Rat {
    Ratio::new(1.into(), 2.into())
}

#[test]
fn vertex_sets() {
    assert_eq!(vertices(&u(2, 4)).len(), 6);
    assert_eq!(vertices(&Matroid::boolean(GroundSet::numbered(2))), vec![vec![1, 1]]);
    assert_eq!(vertices(&square()).len(), 4);
    for v in vertices(&u(2, 4)) {
        assert_eq!(v.iter().sum::<i64>(), 2);
    }
}

#[test]
fn membership() {
    assert!(member(&vec![half(); 4], &u(2, 4)));
    let v12: Vec<Rat> = vertex(0b0011, 4).into_iter().map(q).collect();
    assert!(!member(&v12, &square()));
    assert!(!member(&vec![q(0); 4], &u(2, 4)));
}

#[test]
fn face_maximization() {
    let face = maximize(&u(2, 4), &delta(0b0111, 4));
    assert_eq!(face, m(4, &["12", "13", "23"]));
    assert_eq!(face.loops(), 0b1000);
    assert_eq!(maximize(&n_cell(), &vec![q(0); 4]), n_cell());
    assert_eq!(maximize(&n_cell(), &delta(0b1100, 4)), square());
}

#[test]
fn face_relation() {
    assert!(is_face(&square(), &n_cell()).unwrap());
    // the square cuts through the interior of the octahedron
    assert!(!is_face(&square(), &u(2, 4)).unwrap());
    assert!(!is_face_lp(&square(), &u(2, 4)).unwrap());
    assert!(!is_face(&n_cell(), &u(2, 4)).unwrap());
    assert!(is_face(&square(), &u(2, 5)).is_err());
}

#[test]
fn internal_faces() {
    assert!(is_internal(&square(), &u(2, 4)).unwrap());
    assert!(!is_internal(&m(4, &["12"]), &u(2, 4)).unwrap());
    assert!(is_internal(&u(2, 4), &u(2, 4)).unwrap());
    assert!(is_internal(&n_cell(), &n_cell()).unwrap());
    assert!(is_internal(&n_cell(), &u(2, 4)).unwrap());
}

#[test]
fn facet_signs_of_a_segment() {
    // P(U_{1,2}) is a segment; its two endpoints get opposite signs
    let seg = u(1, 2);
    let ends = [m(2, &["1"]), m(2, &["2"])];
    let omega = OrientationData::default_for(ends.iter().chain([&seg]));
    let s: Vec<i32> = ends.iter().map(|e| facet_sign(e, &seg, &omega).unwrap()).collect();
    assert_eq!(s[0], -s[1]);
}

#[test]
fn flipping_a_facet_orientation_flips_its_sign() {
    let faces = all_faces(&u(2, 4));
    let mut omega = OrientationData::default_for(&faces);
    let oct = u(2, 4);
    let before = facet_sign(&square(), &oct, &omega);
    // the square is not a facet of the octahedron
    assert!(before.is_err());
    let facet = m(4, &["12", "13", "23"]);
    let s = facet_sign(&facet, &oct, &omega).unwrap();
    omega.flip(&facet);
    assert_eq!(facet_sign(&facet, &oct, &omega).unwrap(), -s);
}

/// Codimension-two faces of the octahedron lie in exactly two facets and
/// the sign products along the two routes cancel.
#[test]
fn sign_products_cancel_around_edges() {
    let oct = u(2, 4);
    let faces = all_faces(&oct);
    let omega = OrientationData::default_for(&faces);
    let d = oct.dimension();
    for r in faces.iter().filter(|f| f.dimension() + 2 == d) {
        let routes: Vec<i32> = faces
            .iter()
            .filter(|q| q.dimension() + 1 == d && is_face(r, q).unwrap())
            .map(|q| facet_sign(r, q, &omega).unwrap() * facet_sign(q, &oct, &omega).unwrap())
            .collect();
        assert_eq!(routes.len(), 2);
        assert_eq!(routes.iter().sum::<i32>(), 0);
    }
}

fn arb_small_matroid() -> impl Strategy<Value = Matroid> {
    arb_matroid().prop_filter("at most six elements", |m| m.n() <= 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertices_are_members(m in arb_matroid()) {
        for v in vertices(&m) {
            let x: Vec<Rat> = v.into_iter().map(q).collect();
            prop_assert!(member(&x, &m));
        }
        prop_assert!(member(&barycenter(&m), &m));
    }

    #[test]
    fn maximizing_an_indicator_splits_the_matroid((m, s) in arb_matroid_and_subset()) {
        let face = maximize(&m, &delta(s, m.n()));
        let r = m.rank_of(s);
        let expected: Vec<_> = m.bases().iter().copied().filter(|&b| bits::size(b & s) == r).collect();
        prop_assert_eq!(face.bases(), expected.as_slice());
        prop_assert_eq!(face.restriction(s), m.restriction(s));
        prop_assert_eq!(face.contraction(s), m.contraction(s));
    }

    #[test]
    fn face_tests_agree((m, s) in arb_matroid_and_subset(), t in 0u32..4096) {
        let small = maximize(&m, &delta(s, m.n()));
        prop_assert!(is_face(&small, &m).unwrap());
        prop_assert!(is_face_lp(&small, &m).unwrap());
        let picked: Vec<_> = m.bases().iter().copied().enumerate().filter(|(i, _)| t >> (i % 12) & 1 == 1).map(|(_, b)| b).collect();
        if let (true, Ok(arbitrary)) = (m.n() <= 6, Matroid::new(m.ground().clone(), picked)) {
            prop_assert_eq!(is_face(&arbitrary, &m).unwrap(), is_face_lp(&arbitrary, &m).unwrap());
        }
    }

    #[test]
    fn nbc_criteria_agree(m in arb_small_matroid()) {
        for s in 0..=m.full() {
            let by_circuits = m.is_nbc(s);
            prop_assert_eq!(by_circuits, m.is_nbc_by_independence(s));
            prop_assert_eq!(by_circuits, is_nbc_by_feasibility(&m, s).unwrap());
        }
    }
}

#[test]
fn nbc_system_of_the_octahedron() {
    assert!(is_nbc_by_feasibility(&u(2, 4), 0b0101).unwrap());
    assert!(!is_nbc_by_feasibility(&u(2, 4), 0b0110).unwrap());
}
