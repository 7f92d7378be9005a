mod common;

use common::*;
use proptest::prelude::*;
use valuator::decomp::{build_complex, relaxation_decomposition, Decomposition, MatroidComplex};
use valuator::equivariant::PermGroup;
use valuator::functors::{by_name, Functor, GrOs, Os, Tau};
use valuator::homcheck::{apply, ChainOfSpaces, HomError, Homology};
use valuator::{BiPoly, QSparse};

fn two_term(source: valuator::Matroid, target: valuator::Matroid) -> MatroidComplex {
    MatroidComplex::new(vec![vec![target], vec![source]], vec![QSparse::zeros(0, 1), QSparse::identity(1)])
}

/// `Σ_k (−1)^k` of the Hilbert series of the objects in degree `k`.
fn euler_by_objects(f: &dyn Functor, c: &MatroidComplex) -> BiPoly<i64> {
    let mut p = BiPoly::zero();
    for k in 0..=c.top() {
        let s = if k % 2 == 0 { 1 } else { -1 };
        for m in c.objects(k) {
            for (deg, &v) in f.obj(m).hilbert().terms() {
                p.add_term(deg, s * v);
            }
        }
    }
    p
}

#[test]
fn a_single_inclusion() {
    let c = two_term(n_cell(), square());
    assert!(apply(&Tau, &c).unwrap().is_exact());
    // grOS(N) has dims (1, 3, 2), grOS(N″) has (1, 2, 1), and the map is onto
    let h = apply(&GrOs, &c).unwrap().homology();
    assert_eq!(h.totals().into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
    assert_eq!(h.by_degree[&(1, 0)][&1], 1);
    assert_eq!(h.by_degree[&(2, 0)][&1], 1);
}

#[test]
fn reversed_inclusions_are_rejected() {
    let c = two_term(square(), n_cell());
    assert!(matches!(apply(&Tau, &c), Err(HomError::NotAWeakMap { .. })));
}

#[test]
fn single_spaces_and_shifts() {
    let s = Os::new().obj(&u(2, 4));
    let c = ChainOfSpaces::single(&s);
    assert_eq!(c.homology().totals().into_iter().collect::<Vec<_>>(), vec![(0, 8)]);
    assert_eq!(c.euler(), s.hilbert());
    let shifted = c.homology().shifted(2);
    assert_eq!(shifted.totals().into_iter().collect::<Vec<_>>(), vec![(2, 8)]);
    assert!(Homology::default().is_zero());
}

#[test]
fn octahedron_euler_characteristic_vanishes() {
    let c = build_complex(&Decomposition::from_cells(u(2, 4), [n_cell(), n_prime()]).unwrap()).unwrap();
    for name in ["tau", "os", "chow", "kl"] {
        let f = by_name(name).unwrap();
        let out = apply(f.as_ref(), c.complex()).unwrap();
        assert!(out.euler().is_zero(), "{name}");
        assert_eq!(out.euler(), euler_by_objects(f.as_ref(), c.complex()));
    }
}

/// Relaxing the orbit of a triangle of `K_4` under its automorphisms lands
/// on `U_{3,6}`; through the non-face weak map `U_{3,6} → K_4` the rank-two
/// Whitney maps do not compose and the image fails to be a complex.
#[test]
fn whitney_image_of_an_orbit_relaxation_is_not_a_complex() {
    let k4 = graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let g = PermGroup::automorphisms_of(&k4).unwrap();
    let d = relaxation_decomposition(&k4, 0b001011, Some(g.elements())).unwrap();
    assert_eq!(d.target(), &u(3, 6));
    let c = build_complex(&d).unwrap();
    assert!(c.complex().squares_to_zero());
    assert!(apply(&Tau, c.complex()).unwrap().is_exact());
    assert!(apply(&Os::new(), c.complex()).unwrap().is_exact());
    let w = by_name("whitney:2").unwrap();
    match apply(w.as_ref(), c.complex()) {
        Err(HomError::NotAComplex { .. }) => {}
        Ok(out) => assert!(!out.squares_to_zero()),
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_characteristic_is_additive(mat in arb_matroid()) {
        let flats: Vec<_> = mat.flats().filter(|&f| !mat.cusp(f).is_empty() && mat.is_stressed(f).unwrap_or(false)).collect();
        prop_assume!(!flats.is_empty());
        let d = relaxation_decomposition(&mat, flats[0], None).unwrap();
        let c = build_complex(&d).unwrap();
        for name in ["tau", "gros", "os", "whitney:1", "chow"] {
            let f = by_name(name).unwrap();
            let out = apply(f.as_ref(), c.complex()).unwrap();
            prop_assert_eq!(out.euler(), euler_by_objects(f.as_ref(), c.complex()));
            prop_assert!(out.euler().is_zero());
        }
    }
}
