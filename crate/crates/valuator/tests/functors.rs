mod common;

use common::*;
use proptest::prelude::*;
use valuator::decomp::{build_complex, Decomposition};
use valuator::functors::{
    bergman_signature, by_name, g_invariant, kl_oracle, psi_chain, stellahedral_cones, z_oracle, AugChow, Chow, Convolve, Functor, GrOs,
    GradedMap, GradedSpace, Kl, Os, PsiFlag, RestrictRank, Sigma, Tau, WeakMap, Whitney, WordSum, INCREMENT, STALL,
};
use valuator::homcheck::apply;
use valuator::matroid::bits::{self, Mask};
use valuator::polytope::{delta, maximize};
use valuator::{GroundSet, IntPoly, Matroid};

const ALL: &[&str] = &["tau", "tau:1", "tau:2", "gros", "os", "whitney:1", "whitney:2", "whitney:1,2", "chow", "augchow", "kl", "sigma"];

/// Functors whose morphisms never pass through a closure.
const CLOSURE_FREE: &[&str] = &["tau", "tau:1", "tau:2", "gros", "os"];

fn dims(s: &GradedSpace) -> Vec<usize> {
    let top = s.degrees().map(|d| d.0).max().unwrap_or(-1);
    (0..=top).map(|i| s.dim((i, 0))).collect()
}

fn octahedron() -> Decomposition {
    Decomposition::from_cells(u(2, 4), [n_cell(), n_prime()]).unwrap()
}

/// Degreewise dense comparison of two maps between the same spaces.
fn agree(a: &GradedMap, b: &GradedMap, src: &GradedSpace, tgt: &GradedSpace) -> bool {
    src.degrees().chain(tgt.degrees()).all(|d| a.block_or_zero(d, src, tgt).to_dense() == b.block_or_zero(d, src, tgt).to_dense())
}

#[test]
fn trivial_functor_and_its_rank_pieces() {
    assert_eq!(Tau.obj(&u(2, 4)).total_dim(), 1);
    assert_eq!(RestrictRank::new(Tau, 2).obj(&u(2, 4)).total_dim(), 1);
    assert!(RestrictRank::new(Tau, 1).obj(&u(2, 4)).is_zero());
    for k in 0..=3 {
        let free = Matroid::boolean(GroundSet::numbered(2));
        assert_eq!(RestrictRank::new(Tau, k).obj(&free).total_dim(), usize::from(k == 2));
    }
}

#[test]
fn graded_orlik_solomon() {
    let big = GrOs.obj(&u(2, 4));
    assert_eq!(dims(&big), vec![1, 4, 3]);
    let map = GrOs.mor_of(&WeakMap::inclusion(&u(2, 4), &n_cell()).unwrap());
    let small = GrOs.obj(&n_cell());
    let block = map.block_or_zero((2, 0), &big, &small);
    let image = |s: Mask| {
        let c = big.index_of((2, 0), &[s]).unwrap();
        (0..small.dim((2, 0))).find(|&r| block.get(r, c) != q(0)).map(|r| small.labels((2, 0))[r][0])
    };
    assert_eq!(image(0b0011), Some(0b0011));
    assert_eq!(image(0b0101), Some(0b0101));
    assert_eq!(image(0b1001), None);
    assert!(GrOs.obj(&m(2, &["1"])).is_zero());
}

#[test]
fn orlik_solomon() {
    let os = Os::new();
    let mut rel = os.straighten(&n_cell(), 0b0110);
    rel.sort();
    assert_eq!(rel, vec![(0b0011, -1), (0b0101, 1)]);
    let id = os.mor_of(&WeakMap::identity(&u(2, 4)));
    assert_eq!(id.traces()[&(2, 0)], q(3));
    // ranks agree degreewise with the graded version
    let f = WeakMap::inclusion(&u(2, 4), &n_cell()).unwrap();
    let (a, b) = (os.mor_of(&f), GrOs.mor_of(&f));
    let (src, tgt) = (os.obj(&u(2, 4)), os.obj(&n_cell()));
    for d in src.degrees() {
        assert_eq!(a.block_or_zero(d, &src, &tgt).rank(), b.block_or_zero(d, &src, &tgt).rank());
    }
}

#[test]
fn whitney_and_flag_functors() {
    assert_eq!(Whitney::new(vec![1]).unwrap().obj(&u(2, 4)).total_dim(), 4);
    assert_eq!(Whitney::new(vec![1, 2]).unwrap().obj(&u(2, 4)).total_dim(), 4);
    assert!(Whitney::new(vec![2, 1]).is_err());
    let psi = PsiFlag::new(vec![1], vec![0b0001]).unwrap();
    assert!(psi.obj(&square()).is_zero());
    assert_eq!(PsiFlag::new(vec![1], vec![0b0011]).unwrap().obj(&square()).total_dim(), 1);
}

#[test]
fn chow_rings() {
    assert_eq!(Chow.obj(&u(2, 4)).hilbert_t(), IntPoly::from_coeffs([1, 1]));
    assert_eq!(AugChow.obj(&u(2, 4)).hilbert_t(), IntPoly::from_coeffs([1, 5, 1]));
    assert_eq!(Chow.obj(&Matroid::boolean(GroundSet::numbered(1))).hilbert_t(), IntPoly::one());
    // Boolean matroids give the Eulerian numbers
    assert_eq!(Chow.obj(&Matroid::boolean(GroundSet::numbered(3))).hilbert_t(), IntPoly::from_coeffs([1, 4, 1]));
    assert_eq!(Chow.obj(&Matroid::boolean(GroundSet::numbered(4))).hilbert_t(), IntPoly::from_coeffs([1, 11, 11, 1]));
    assert!(Chow.obj(&m(2, &["1"])).is_zero());
}

#[test]
fn kazhdan_lusztig_examples() {
    assert_eq!(kl_oracle(&u(2, 4)), IntPoly::one());
    assert_eq!(Kl.obj(&u(2, 4)).hilbert().at_u(&-1), IntPoly::one());
    assert_eq!(kl_oracle(&u(3, 6)), IntPoly::from_coeffs([1, 9]));
    assert_eq!(Kl.obj(&u(3, 6)).hilbert().at_u(&-1), kl_oracle(&u(3, 6)));
    assert_eq!(z_oracle(&u(2, 4)), IntPoly::from_coeffs([1, 4, 1]));
    assert_eq!(Sigma.obj(&u(2, 4)).hilbert().at_u(&-1), z_oracle(&u(2, 4)));
    assert_eq!(z_oracle(&Matroid::boolean(GroundSet::numbered(1))), IntPoly::from_coeffs([1, 1]));
    assert!(Kl.obj(&m(2, &["1"])).is_zero());
}

#[test]
fn convolution_of_rank_pieces() {
    let f = Convolve::new(Box::new(RestrictRank::new(Tau, 1)), Box::new(RestrictRank::new(Tau, 1)), 0b0011);
    assert_eq!(f.obj(&square()).total_dim(), 1);
    // {1,2} has rank 2 in U_{2,4} and in N, so the first factor vanishes
    assert!(f.obj(&u(2, 4)).is_zero());
    assert!(f.obj(&n_cell()).is_zero());
    assert!(f.mor_of(&WeakMap::identity(&square())).is_identity_on(&f.obj(&square())));
    let prime = Convolve::new(Box::new(RestrictRank::new(Tau, 2)), Box::new(RestrictRank::new(Tau, 0)), 0b0011);
    assert_eq!(prime.obj(&u(2, 4)).total_dim(), 1);
    assert!(prime.mor_of(&WeakMap::inclusion(&u(2, 4), &n_cell()).unwrap()).is_identity_on(&prime.obj(&n_cell())));

    let with_empty = Convolve::new(Box::new(Os::new()), Box::new(Tau), bits::full(4));
    for mat in [u(2, 4), n_cell(), square()] {
        assert_eq!(with_empty.obj(&mat).dims(), Os::new().obj(&mat).dims());
    }
}

#[test]
fn decategorified_invariants() {
    let g = g_invariant(&u(2, 4)).unwrap();
    assert_eq!(g.total(), 24);
    assert_eq!(g.terms().len(), 1);
    let word = g.terms().keys().next().unwrap().clone();
    assert_eq!(word.chars().filter(|&c| c == INCREMENT).count(), 2);
    assert_eq!(word.chars().filter(|&c| c == STALL).count(), 2);
    assert_eq!(g.swap_letters().swap_letters(), g);
    let free = g_invariant(&Matroid::boolean(GroundSet::numbered(2))).unwrap();
    assert_eq!(free.total(), 2);
    assert_eq!(free.terms().len(), 1);

    let oct: Vec<WordSum> = [u(2, 4), n_cell(), n_prime(), square()].iter().map(|x| g_invariant(x).unwrap()).collect();
    assert!(WordSum::signed_sum([(1, &oct[0]), (-1, &oct[1]), (-1, &oct[2]), (1, &oct[3])]).is_zero());

    assert_eq!(bergman_signature(&u(1, 2)).unwrap().support().len(), 4);
    let sigs: Vec<_> = [u(2, 4), n_cell(), n_prime(), square()].iter().map(|x| bergman_signature(x).unwrap()).collect();
    let sum = valuator::functors::BergmanSignature::signed_sum([(1, &sigs[0]), (-1, &sigs[1]), (-1, &sigs[2]), (1, &sigs[3])]);
    assert!(sum.values().all(|&v| v == 0));
    let free = Matroid::boolean(GroundSet::numbered(3));
    assert_eq!(bergman_signature(&free).unwrap().support().len(), stellahedral_cones(3).unwrap().len());
}

#[test]
fn every_functor_is_valuative_on_the_octahedron() {
    let c = build_complex(&octahedron()).unwrap();
    for name in ALL {
        let f = by_name(name).unwrap();
        let h = apply(f.as_ref(), c.complex()).unwrap();
        assert!(h.squares_to_zero(), "{name}");
        assert!(h.is_exact(), "{name}");
    }
    let chain = psi_chain(0b0001, &[0b0011], 4);
    assert!(apply(&chain, c.complex()).unwrap().is_exact());
}

fn k4() -> Matroid {
    graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// The rank-2 Whitney functor does not compose along `U_{3,6} → K_4 → F`
/// where `F` is the face of `K_4` on which the triangle `{1,2,4}` is a flat
/// of full rank complement; the direct map kills the flat `{3,5}` while the
/// composite sends it to `{1,3,5,6}`.
#[test]
fn whitney_composition_fails_off_faces() {
    let (big, mid) = (u(3, 6), k4());
    let triangle = 0b001011;
    assert!(mid.is_flat(triangle) && mid.rank_of(triangle) == 2);
    let small = mid.split_at(bits::full(6) & !triangle);
    let f = WeakMap::inclusion(&big, &mid).unwrap();
    let g = WeakMap::inclusion(&mid, &small).unwrap();
    let gf = f.then(&g).unwrap();
    let w = Whitney::new(vec![2]).unwrap();
    let (src, tgt) = (w.obj(&big), w.obj(&small));
    assert!(!agree(&w.mor_of(&g).compose(&w.mor_of(&f)), &w.mor_of(&gf), &src, &tgt));
    for name in ["tau", "os", "whitney:1"] {
        let h = by_name(name).unwrap();
        let (src, tgt) = (h.obj(&big), h.obj(&small));
        assert!(agree(&h.mor_of(&g).compose(&h.mor_of(&f)), &h.mor_of(&gf), &src, &tgt), "{name}");
    }
}

/// Along the face chain `U_{2,5} → {1} ⊕ U_{1,4} → (only basis {1,3})` the
/// flat `{2}` keeps rank one in the middle, where its closure `{2,3,4,5}`
/// survives to the end, but is a loop of the last matroid, so the direct map
/// kills it. Every functor built from Whitney flag spaces inherits this.
#[test]
fn closure_maps_do_not_compose_along_faces() {
    let big = u(2, 5);
    let mid = maximize(&big, &delta(0b00001, 5));
    let small = maximize(&mid, &delta(0b00101, 5));
    assert_eq!(small.bases(), &[0b00101]);
    let f = WeakMap::inclusion(&big, &mid).unwrap();
    let g = WeakMap::inclusion(&mid, &small).unwrap();
    let gf = f.then(&g).unwrap();
    for name in ["whitney:1", "whitney:1,2", "augchow"] {
        let h = by_name(name).unwrap();
        let (src, tgt) = (h.obj(&big), h.obj(&small));
        assert!(!agree(&h.mor_of(&g).compose(&h.mor_of(&f)), &h.mor_of(&gf), &src, &tgt), "{name}");
    }
    for name in CLOSURE_FREE {
        let h = by_name(name).unwrap();
        let (src, tgt) = (h.obj(&big), h.obj(&small));
        assert!(agree(&h.mor_of(&g).compose(&h.mor_of(&f)), &h.mor_of(&gf), &src, &tgt), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn functorial_along_faces((mat, s) in arb_matroid_and_subset(), t in 0u32..4096) {
        let mid = maximize(&mat, &delta(s, mat.n()));
        let small = maximize(&mid, &delta(t & mat.full(), mat.n()));
        let f = WeakMap::inclusion(&mat, &mid).unwrap();
        let g = WeakMap::inclusion(&mid, &small).unwrap();
        let gf = f.then(&g).unwrap();
        for name in CLOSURE_FREE {
            let h = by_name(name).unwrap();
            let (src, tgt) = (h.obj(&mat), h.obj(&small));
            prop_assert!(agree(&h.mor_of(&g).compose(&h.mor_of(&f)), &h.mor_of(&gf), &src, &tgt), "{}", name);
        }
        for name in ALL {
            let h = by_name(name).unwrap();
            prop_assert!(h.mor_of(&WeakMap::identity(&mat)).is_identity_on(&h.obj(&mat)), "{}", name);
        }
    }

    #[test]
    fn kl_functor_matches_recursion(mat in arb_matroid()) {
        prop_assert_eq!(Kl.obj(&mat).hilbert().at_u(&-1), kl_oracle(&mat));
        prop_assert_eq!(Sigma.obj(&mat).hilbert().at_u(&-1), z_oracle(&mat));
    }

    #[test]
    fn z_is_palindromic(mat in arb_matroid()) {
        let z = z_oracle(&mat);
        prop_assert_eq!(z.reverse(mat.rank() as u32), z);
    }

    #[test]
    fn augmented_chow_sums_over_flats(mat in arb_matroid()) {
        let mut rhs = IntPoly::zero();
        for fl in mat.flats() {
            rhs = rhs + Chow.obj(&mat.contraction(fl)).hilbert_t().shift(mat.rank_of(fl) as u32);
        }
        prop_assert_eq!(AugChow.obj(&mat).hilbert_t(), rhs);
    }
}

#[test]
fn os_dimensions_match_graded_version() {
    for mat in [u(2, 4), n_cell(), square(), k4(), u(3, 5)] {
        assert_eq!(Os::new().obj(&mat).dims(), GrOs.obj(&mat).dims());
    }
}
