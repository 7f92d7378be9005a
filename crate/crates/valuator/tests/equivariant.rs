mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use valuator::decomp::{relaxation_decomposition, Decomposition};
use valuator::equivariant::{
    character_identity_check, det_character, equivariant_kl, equivariant_kl_consistent, kl_correction_check, mn_skew_character,
    os_exponent_report, partitions, standard_ext_character, trace, virtual_check, EqError, PermGroup, Relaxation, SkewShape,
};
use valuator::functors::{by_name, Functor, GrOs, Os, Tau, Whitney};
use valuator::matroid::bits;
use valuator::{GroundSet, Matroid, Perm, Rat};

fn perm(n: usize, cycles: &[&[usize]]) -> Perm {
    let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|&x| x - 1).collect()).collect();
    Perm::from_cycles(n, &cs).unwrap()
}

fn swap() -> Perm {
    perm(4, &[&[1, 3], &[2, 4]])
}

fn octahedron() -> Decomposition {
    Decomposition::from_cells(u(2, 4), [n_cell(), n_prime()]).unwrap()
}

fn dihedral() -> PermGroup {
    PermGroup::new(4, vec![perm(4, &[&[1, 2]]), swap()]).unwrap()
}

#[test]
fn determinant_signs() {
    assert_eq!(det_character(&square(), &swap()).unwrap(), -1);
    assert_eq!(det_character(&u(2, 4), &swap()).unwrap(), 1);
    assert_eq!(det_character(&n_cell(), &Perm::identity(4)).unwrap(), 1);
    assert!(matches!(det_character(&n_cell(), &swap()), Err(EqError::NotPreserved(_))));
}

#[test]
fn traces() {
    let phi1 = Whitney::new(vec![1]).unwrap();
    assert!(trace(&phi1, &u(2, 4), &swap()).unwrap().values().all(Zero::is_zero));
    for name in ["tau", "os", "chow", "augchow", "kl", "sigma", "whitney:1,2"] {
        let f = by_name(name).unwrap();
        let t = trace(f.as_ref(), &u(2, 4), &Perm::identity(4)).unwrap();
        for (d, n) in f.obj(&u(2, 4)).dims() {
            assert_eq!(t[&d], q(n as i64), "{name}");
        }
    }
    // u_1 and u_2 coincide in degree one, so the transposition fixes both basis vectors
    let t = trace(&Os::new(), &square(), &perm(4, &[&[1, 2]])).unwrap();
    assert_eq!(t[&(1, 0)], q(2));
    assert!(matches!(trace(&GrOs, &u(2, 4), &swap()), Err(EqError::NotEquivariant(_))));
}

#[test]
fn groups() {
    let g = PermGroup::automorphisms_of(&square()).unwrap();
    assert_eq!(g.order(), 8);
    assert_eq!(g.conjugacy_classes().len(), 5);
    assert_eq!(PermGroup::automorphisms_of(&u(2, 4)).unwrap().order(), 24);
    assert_eq!(g.orbit(0b0011), vec![0b0011, 0b1100]);
    assert_eq!(g.stabilizer(0b0001).order(), 2);
    assert!(dihedral().preserves(&square()));
}

#[test]
fn octahedron_character_identity() {
    let d = octahedron();
    let g = PermGroup::new(4, vec![swap()]).unwrap();
    let r = character_identity_check(&d, &g, &Tau).unwrap();
    assert!(r.holds());
    for name in ["tau", "os", "whitney:1", "chow", "augchow", "kl", "sigma"] {
        let f = by_name(name).unwrap();
        for sub in dihedral().subgroups() {
            assert!(character_identity_check(&d, &sub, f.as_ref()).unwrap().holds(), "{name} order {}", sub.order());
        }
    }
    let bad = PermGroup::new(4, vec![perm(4, &[&[1, 3]])]).unwrap();
    assert!(matches!(character_identity_check(&d, &bad, &Tau), Err(EqError::DecompositionNotPreserved)));
}

#[test]
fn equivariant_kl_of_small_matroids() {
    let g = PermGroup::automorphisms_of(&u(2, 4)).unwrap();
    let p = equivariant_kl(&u(2, 4), &g).unwrap();
    assert_eq!(p.len(), 1);
    assert!(p[0].iter().all(One::is_one));
    assert!(equivariant_kl_consistent(&u(3, 6)).unwrap());
}

#[test]
fn relaxing_a_parallel_class() {
    let g = PermGroup::new(4, vec![perm(4, &[&[1, 2]])]).unwrap();
    let rel = Relaxation::new(&square(), 0b0011, &g).unwrap();
    assert_eq!(rel.relaxed, n_cell());
    for name in ["os", "chow", "kl", "tau"] {
        let f = by_name(name).unwrap();
        assert!(virtual_check(&rel, &g, f.as_ref()).unwrap().holds(), "{name}");
    }
}

#[test]
fn orlik_solomon_exponent() {
    let g = PermGroup::new(4, vec![perm(4, &[&[1, 2]])]).unwrap();
    let r = os_exponent_report(&square(), 0b0011, &g).unwrap();
    assert_eq!(r.verified_exponents(), vec![1]);
    for (k, h) in [(2, 3), (3, 3), (3, 4)] {
        let (pi, _) = Matroid::pi_lambda(k - 1, k, bits::full(h), &GroundSet::numbered(h + 2)).unwrap();
        let sym = PermGroup::symmetric_on(h + 2, bits::full(h)).unwrap();
        assert_eq!(os_exponent_report(&pi, bits::full(h), &sym).unwrap().verified_exponents(), vec![k - 1]);
    }
    assert!(os_exponent_report(&u(2, 4), 0b0011, &g).is_err());
}

#[test]
fn kl_correction_terms() {
    for (k, h) in [(3, 3), (3, 4), (4, 4), (4, 5), (5, 5)] {
        let r = kl_correction_check(k, h, 2).unwrap();
        assert!(r.holds(), "k={k} h={h}: {:?}", r.failures);
    }
}

#[test]
fn skew_characters() {
    let s = SkewShape::new(&[2, 1], &[1]).unwrap();
    assert_eq!(mn_skew_character(&s, &[1, 1]).unwrap(), 2);
    assert_eq!(mn_skew_character(&s, &[2]).unwrap(), 0);
    for rho in partitions(4) {
        assert_eq!(mn_skew_character(&SkewShape::straight(&[4]).unwrap(), &rho).unwrap(), 1);
    }
    assert!(mn_skew_character(&s, &[3]).is_err());
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Hook length formula.
fn hooks(shape: &[usize]) -> u64 {
    let n: usize = shape.iter().sum();
    let mut prod = 1u64;
    for (i, &row) in shape.iter().enumerate() {
        for j in 0..row {
            let leg = shape[i + 1..].iter().filter(|&&r| r > j).count();
            prod *= (row - j + leg) as u64;
        }
    }
    factorial(n) / prod
}

/// `z_ρ = Π_i i^{m_i} m_i!`, the centralizer order of the class `ρ`.
fn centralizer(rho: &[usize]) -> u64 {
    let mut z = 1u64;
    for i in 1..=rho.iter().copied().max().unwrap_or(0) {
        let m = rho.iter().filter(|&&x| x == i).count();
        z *= (i as u64).pow(m as u32) * factorial(m);
    }
    z
}

#[test]
fn irreducible_characters_are_orthonormal() {
    for n in 1..=6 {
        let classes = partitions(n);
        for lambda in &classes {
            let shape = SkewShape::straight(lambda).unwrap();
            let chi: Vec<i64> = classes.iter().map(|rho| mn_skew_character(&shape, rho).unwrap()).collect();
            let ones = vec![1; n];
            assert_eq!(mn_skew_character(&shape, &ones).unwrap() as u64, hooks(lambda));
            let norm: Rat = classes
                .iter()
                .zip(&chi)
                .map(|(rho, &c)| Rat::new((c * c).into(), (centralizer(rho) as i64).into()))
                .fold(Rat::zero(), |a, b| a + b);
            assert!(norm.is_one(), "{lambda:?}");
        }
    }
}

#[test]
fn exterior_powers_of_the_standard_representation() {
    // ∧^e of the (h−1)-dimensional representation has dimension binomial(h−1, e)
    let id = Perm::identity(4);
    assert_eq!(standard_ext_character(&id, 0), q(1));
    assert_eq!(standard_ext_character(&id, 1), q(3));
    assert_eq!(standard_ext_character(&id, 2), q(3));
    assert_eq!(standard_ext_character(&id, 3), q(1));
    // a transposition acts on the standard representation with trace h − 3
    assert_eq!(standard_ext_character(&perm(4, &[&[1, 2]]), 1), q(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trivial_functor_identity_on_orbit_relaxations(mat in arb_matroid()) {
        let flats: Vec<_> = mat.flats().filter(|&f| !mat.cusp(f).is_empty() && mat.is_stressed(f).unwrap_or(false)).collect();
        prop_assume!(!flats.is_empty());
        let g = PermGroup::automorphisms_of(&mat).unwrap();
        prop_assume!(g.order() <= 48);
        let d = relaxation_decomposition(&mat, flats[0], Some(g.elements())).unwrap();
        let preserving: Vec<Perm> = PermGroup::automorphisms_of(d.target()).unwrap()
            .elements().iter().filter(|p| d.is_preserved_by(p)).cloned().collect();
        let group = PermGroup::new(mat.n(), preserving).unwrap();
        prop_assert!(character_identity_check(&d, &group, &Tau).unwrap().holds());
        prop_assert!(character_identity_check(&d, &group, &Os::new()).unwrap().holds());
    }

    #[test]
    fn traces_at_the_identity_are_dimensions(mat in arb_matroid()) {
        for name in ["os", "whitney:1", "chow", "kl"] {
            let f = by_name(name).unwrap();
            let t = trace(f.as_ref(), &mat, &Perm::identity(mat.n())).unwrap();
            for (d, n) in f.obj(&mat).dims() {
                prop_assert_eq!(&t[&d], &q(n as i64));
            }
        }
    }
}
