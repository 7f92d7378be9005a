//! Base-polytope geometry: vertices, membership, face maximization, face and
//! internal-face tests, orientations and facet signs.
//!
//! `P(M)` is the convex hull of the indicator vectors `v_B` of the bases. It
//! is cut out by `δ_S(x) ≤ rk(S)` for all `S` together with `δ_E(x) = rk(E)`,
//! so every face is the locus where some of these inequalities are tight.
//! That makes face questions combinatorial: they reduce to which sets `S`
//! are tight on which bases.

use crate::exactq::{feasible, ExactqError, LinSystem};
use crate::matroid::bits::{self, Mask};
use crate::{Matroid, QMatrix, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("matroids live on different ground sets")]
    GroundMismatch,
    #[error("bases of the smaller matroid are not all bases of the larger one")]
    NotContained,
    #[error("{0:?} is not a facet of {1:?}")]
    NotAFacet(String, String),
    #[error("no orientation recorded for {0}")]
    MissingOrientation(String),
    #[error(transparent)]
    Exactq(#[from] ExactqError),
}

/// A linear functional on `R^E`, one coefficient per ground element.
pub type LinFunctional = Vec<Rat>;

/// `δ_S` as a functional on a ground set of size `n`.
pub fn delta(s: Mask, n: usize) -> LinFunctional {
    (0..n).map(|e| if bits::contains(s, e) { Rat::one() } else { Rat::zero() }).collect()
}

/// The 0/1 vertex `v_B`.
pub fn vertex(b: Mask, n: usize) -> Vec<i64> {
    (0..n).map(|e| i64::from(bits::contains(b, e))).collect()
}

pub fn vertices(m: &Matroid) -> Vec<Vec<i64>> {
    m.bases().iter().map(|&b| vertex(b, m.n())).collect()
}

/// Value of `ψ` at the vertex `v_B`.
pub fn value_at(psi: &[Rat], b: Mask) -> Rat {
    bits::elements(b).fold(Rat::zero(), |acc, e| acc + &psi[e])
}

/// Exact membership in `P(M)`.
pub fn member(x: &[Rat], m: &Matroid) -> bool {
    let n = m.n();
    if x.len() != n || x.iter().any(Signed::is_negative) {
        return false;
    }
    // δ_S(x) for every S by adding one lowest element at a time
    let mut sums = vec![Rat::zero(); 1 << n];
    for s in 1..(1usize << n) {
        let low = s.trailing_zeros() as usize;
        sums[s] = sums[s & (s - 1)].clone() + &x[low];
        if sums[s] > Rat::from_integer(m.rank_of(s as Mask).into()) {
            return false;
        }
    }
    sums[(1 << n) - 1] == Rat::from_integer(m.rank().into())
}

/// The system `x ∈ P(M)` together with the open half-spaces
/// `δ_{S_e ∪ {e}}(x) > |S_e|` for every `e`, where `S_e` is the part of `S`
/// above `e`. The rank inequalities are imposed on flats only; with `x ≥ 0`
/// they imply the rest.
pub fn nbc_system(m: &Matroid, s: Mask) -> LinSystem<Rat> {
    let n = m.n();
    let mut sys = LinSystem::new(n);
    for e in 0..n {
        sys.ge(delta(1 << e, n), Rat::zero());
    }
    sys.eq(delta(m.full(), n), Rat::from_integer(m.rank().into()));
    for f in m.flats().filter(|&f| f != m.full() && f != 0) {
        sys.le(delta(f, n), Rat::from_integer(m.rank_of(f).into()));
    }
    for e in 0..n {
        let above = s & !bits::full(e + 1);
        sys.gt(delta(above | 1 << e, n), Rat::from_integer(bits::size(above).into()));
    }
    sys
}

/// Whether `S` is nbc, decided by feasibility of [`nbc_system`].
pub fn is_nbc_by_feasibility(m: &Matroid, s: Mask) -> Result<bool, PolytopeError> {
    Ok(feasible(&nbc_system(m, s))?.is_feasible())
}

/// Membership of `x / denom` for an integer vector `x` and positive `denom`.
/// This is the fast path used when sampling points with small denominators.
pub fn member_scaled(x: &[i64], denom: i64, m: &Matroid) -> bool {
    let n = m.n();
    if x.len() != n || denom <= 0 || x.iter().any(|&v| v < 0) {
        return false;
    }
    let mut sums = vec![0i64; 1 << n];
    for s in 1..(1usize << n) {
        let low = s.trailing_zeros() as usize;
        sums[s] = sums[s & (s - 1)] + x[low];
        if sums[s] > denom * m.rank_of(s as Mask) as i64 {
            return false;
        }
    }
    sums[(1 << n) - 1] == denom * m.rank() as i64
}

/// The face of `P(M)` on which `ψ` is maximal.
pub fn maximize(m: &Matroid, psi: &[Rat]) -> Matroid {
    assert_eq!(psi.len(), m.n(), "functional arity differs from the ground set");
    let vals: Vec<Rat> = m.bases().iter().map(|&b| value_at(psi, b)).collect();
    let best = vals.iter().max().expect("matroids have bases").clone();
    let face = m.with_bases(m.bases().iter().zip(&vals).filter(|(_, v)| **v == best).map(|(&b, _)| b));
    debug_assert!(face_closure(m, face.bases()) == face.bases(), "argmax set must be a face");
    face
}

/// Maximum of `ψ` over `P(M)`.
pub fn max_value(m: &Matroid, psi: &[Rat]) -> Rat {
    m.bases().iter().map(|&b| value_at(psi, b)).max().expect("matroids have bases")
}

/// Bases of the smallest face of `P(big)` containing the given bases.
pub fn face_closure(big: &Matroid, small: &[Mask]) -> Vec<Mask> {
    let tight: Vec<(Mask, usize)> =
        (0..=big.full()).map(|s| (s, big.rank_of(s))).filter(|&(s, r)| small.iter().all(|&b| bits::size(b & s) == r)).collect();
    big.bases().iter().copied().filter(|&b| tight.iter().all(|&(s, r)| bits::size(b & s) == r)).collect()
}

/// Every nonempty face of `P(M)`, including `P(M)` itself, ordered by
/// dimension and then by basis list.
///
/// Faces of faces are faces, and a face tight on several rank inequalities
/// is reached by maximizing their indicators one at a time, so a search
/// over single `δ_S` steps finds them all.
pub fn all_faces(m: &Matroid) -> Vec<Matroid> {
    let mut seen: std::collections::HashSet<Vec<Mask>> = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut queue = std::collections::VecDeque::from([m.clone()]);
    seen.insert(m.bases().to_vec());
    while let Some(f) = queue.pop_front() {
        if f.bases().len() > 1 {
            for s in 1..f.full() {
                let r = f.rank_of(s);
                let bases: Vec<Mask> = f.bases().iter().copied().filter(|&b| bits::size(b & s) == r).collect();
                if bases.len() < f.bases().len() && seen.insert(bases.clone()) {
                    queue.push_back(f.with_bases(bases));
                }
            }
        }
        out.push(f);
    }
    out.sort_by_key(|f| (f.dimension(), f.clone()));
    out
}

fn check_pair(small: &Matroid, big: &Matroid) -> Result<(), PolytopeError> {
    if small.ground() != big.ground() {
        return Err(PolytopeError::GroundMismatch);
    }
    Ok(())
}

/// Whether `P(small)` is a face of `P(big)`: the bases nest and the
/// smallest face of `P(big)` containing them has no further vertices.
pub fn is_face(small: &Matroid, big: &Matroid) -> Result<bool, PolytopeError> {
    check_pair(small, big)?;
    if !small.bases().iter().all(|&b| big.is_basis(b)) {
        return Ok(false);
    }
    Ok(face_closure(big, small.bases()) == small.bases())
}

/// The same question as [`is_face`], posed as a linear feasibility problem:
/// find `(ψ, c)` with `ψ·v_B = c` on the smaller basis set and
/// `ψ·v_B ≤ c − 1` on the remaining bases.
pub fn is_face_lp(small: &Matroid, big: &Matroid) -> Result<bool, PolytopeError> {
    check_pair(small, big)?;
    if !small.bases().iter().all(|&b| big.is_basis(b)) {
        return Ok(false);
    }
    let n = big.n();
    let mut sys = LinSystem::<Rat>::new(n + 1);
    let row = |b: Mask| -> Vec<Rat> {
        let mut r = delta(b, n);
        r.push(-Rat::one());
        r
    };
    // ψ is only defined up to adding multiples of δ_E, which is constant on P
    if n > 0 {
        let mut gauge = vec![Rat::zero(); n + 1];
        gauge[n - 1] = Rat::one();
        sys.eq(gauge, Rat::zero());
    }
    for &b in big.bases() {
        if small.is_basis(b) {
            sys.eq(row(b), Rat::zero());
        } else {
            sys.le(row(b), -Rat::one());
        }
    }
    Ok(feasible(&sys)?.is_feasible())
}

/// Vertex barycenter of `P(M)`.
pub fn barycenter(m: &Matroid) -> Vec<Rat> {
    let count = Rat::from_integer(m.bases().len().into());
    (0..m.n()).map(|e| Rat::from_integer(m.bases().iter().filter(|&&b| bits::contains(b, e)).count().into()) / &count).collect()
}

/// Whether `P(Q)` meets the relative interior of `P(M)`.
///
/// The barycenter of `P(Q)` lies on a facet inequality `δ_S ≤ rk(S)` exactly
/// when every basis of `Q` is tight on `S`, so no rational arithmetic is
/// needed.
pub fn is_internal(q: &Matroid, m: &Matroid) -> Result<bool, PolytopeError> {
    check_pair(q, m)?;
    if !q.bases().iter().all(|&b| m.is_basis(b)) {
        return Err(PolytopeError::NotContained);
    }
    for s in 1..m.full() {
        let r = m.rank_of(s);
        let constant = m.bases().iter().all(|&b| bits::size(b & s) == r);
        if !constant && q.bases().iter().all(|&b| bits::size(b & s) == r) {
            return Ok(false);
        }
    }
    let loops = m.loops();
    let covered = q.bases().iter().fold(0, |acc, &b| acc | b);
    Ok(bits::is_subset(m.full() & !loops, covered))
}

/// Canonical ordered basis of `V(M) = span{v_B − v_B'}`: the independent
/// differences `v_B − v_{B_0}` taken greedily in basis order, brought to
/// reduced row echelon form.
pub fn orientation_basis(m: &Matroid) -> Vec<Vec<Rat>> {
    let n = m.n();
    let b0 = vertex(m.bases()[0], n);
    let diffs: Vec<Vec<Rat>> =
        m.bases()[1..].iter().map(|&b| vertex(b, n).iter().zip(&b0).map(|(x, y)| Rat::from_integer((x - y).into())).collect()).collect();
    let mut chosen: Vec<Vec<Rat>> = Vec::new();
    for d in diffs {
        let mut trial = chosen.clone();
        trial.push(d);
        if QMatrix::from_rows(trial.clone(), n).rank() == trial.len() {
            chosen = trial;
        }
    }
    let k = chosen.len();
    let (red, _) = QMatrix::from_rows(chosen, n).rref();
    let basis: Vec<Vec<Rat>> = (0..k).map(|i| red.row(i).to_vec()).collect();
    debug_assert_eq!(basis.len(), m.dimension(), "V(M) must have dimension d(M)");
    basis
}

/// Pivot columns of a reduced row echelon basis.
fn pivots(basis: &[Vec<Rat>]) -> Vec<usize> {
    basis.iter().map(|r| r.iter().position(|v| !v.is_zero()).expect("basis vectors are nonzero")).collect()
}

/// Coordinates of `w ∈ V` with respect to a reduced row echelon basis of `V`.
pub(crate) fn coordinates(basis: &[Vec<Rat>], w: &[Rat]) -> Vec<Rat> {
    let coords: Vec<Rat> = pivots(basis).into_iter().map(|p| w[p].clone()).collect();
    debug_assert!(
        (0..w.len()).all(|j| basis.iter().zip(&coords).fold(Rat::zero(), |acc, (b, c)| acc + &b[j] * c) == w[j]),
        "vector is not in the span"
    );
    coords
}

/// Chosen orientation of every face: an ordered basis of `V(N)`.
#[derive(Clone, Debug, Default)]
pub struct OrientationData {
    bases: HashMap<Matroid, Vec<Vec<Rat>>>,
}

impl OrientationData {
    /// Default orientations for the given faces.
    pub fn default_for<'a>(faces: impl IntoIterator<Item = &'a Matroid>) -> Self {
        let mut bases = HashMap::new();
        for f in faces {
            bases.entry(f.clone()).or_insert_with(|| orientation_basis(f));
        }
        OrientationData { bases }
    }

    pub fn get(&self, m: &Matroid) -> Result<&[Vec<Rat>], PolytopeError> {
        self.bases.get(m).map(Vec::as_slice).ok_or_else(|| PolytopeError::MissingOrientation(format!("{m:?}")))
    }

    /// Reverses one basis vector of one face, reversing that face's orientation.
    pub fn flip(&mut self, m: &Matroid) {
        if let Some(v) = self.bases.get_mut(m).and_then(|b| b.first_mut()) {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }

    pub fn insert(&mut self, m: Matroid, basis: Vec<Vec<Rat>>) {
        self.bases.insert(m, basis);
    }
}

fn sign_of(x: &Rat) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign comparing the orientation of a facet `R` with the one induced from
/// `Q` by an outward normal: the sign of `det [n_out, basis(R)]` written in
/// `basis(Q)`.
pub fn facet_sign(r: &Matroid, q: &Matroid, omega: &OrientationData) -> Result<i32, PolytopeError> {
    check_pair(r, q)?;
    let not_facet = || PolytopeError::NotAFacet(format!("{r:?}"), format!("{q:?}"));
    if !is_face(r, q)? || r.dimension() + 1 != q.dimension() {
        return Err(not_facet());
    }
    let n = q.n();
    let x = q.bases().iter().copied().find(|&b| !r.is_basis(b)).ok_or_else(not_facet)?;
    let y = r.bases()[0];
    let n_out: Vec<Rat> = vertex(y, n).iter().zip(vertex(x, n)).map(|(a, b)| Rat::from_integer((a - b).into())).collect();
    let bq = omega.get(q)?;
    let mut cols = vec![coordinates(bq, &n_out)];
    for w in omega.get(r)? {
        cols.push(coordinates(bq, w));
    }
    let d = bq.len();
    let mut mat = QMatrix::zeros(d, d);
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            mat.set(i, j, v.clone());
        }
    }
    let s = sign_of(&mat.determinant());
    assert_ne!(s, 0, "outward normal and facet basis must span V(Q)");
    Ok(s)
}

/// Sign comparing the orientations of two faces spanning the same space.
pub fn orientation_agreement(q: &Matroid, p: &Matroid, omega: &OrientationData) -> Result<i32, PolytopeError> {
    let bp = omega.get(p)?;
    let bq = omega.get(q)?;
    let d = bp.len();
    assert_eq!(bq.len(), d, "top map relates faces of equal dimension");
    let mut mat = QMatrix::zeros(d, d);
    for (j, w) in bq.iter().enumerate() {
        for (i, v) in coordinates(bp, w).into_iter().enumerate() {
            mat.set(i, j, v);
        }
    }
    let s = sign_of(&mat.determinant());
    assert_ne!(s, 0, "faces of full dimension span the same space");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GroundSet;

    fn m(n: usize, bases: &[&str]) -> Matroid {
        let bs: Vec<Vec<String>> = bases.iter().map(|b| b.chars().map(|c| c.to_string()).collect()).collect();
        Matroid::from_labels(GroundSet::numbered(n), &bs).unwrap()
    }

    fn half() -> Rat {
        Rat::new(1.into(), 2.into())
    }

    #[test]
    fn membership_examples() {
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        assert!(member(&vec![half(); 4], &u24));
        let npp = m(4, &["13", "14", "23", "24"]);
        let v12: Vec<Rat> = vertex(0b0011, 4).into_iter().map(|v| Rat::from_integer(v.into())).collect();
        assert!(!member(&v12, &npp));
        assert!(!member(&vec![Rat::zero(); 4], &u24));
        for b in u24.bases() {
            let v: Vec<Rat> = vertex(*b, 4).into_iter().map(|v| Rat::from_integer(v.into())).collect();
            assert!(member(&v, &u24));
        }
    }

    #[test]
    fn maximize_examples() {
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        let face = maximize(&u24, &delta(0b0111, 4));
        assert_eq!(face, m(4, &["12", "13", "23"]));
        assert_eq!(maximize(&u24, &vec![Rat::zero(); 4]), u24);
        let n = m(4, &["12", "13", "14", "23", "24"]);
        assert_eq!(maximize(&n, &delta(0b1100, 4)), m(4, &["13", "14", "23", "24"]));
    }

    #[test]
    fn face_tests_agree_on_octahedron() {
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        let n = m(4, &["12", "13", "14", "23", "24"]);
        let npp = m(4, &["13", "14", "23", "24"]);
        for (s, b, want) in [(&npp, &n, true), (&npp, &u24, false), (&n, &u24, false)] {
            assert_eq!(is_face(s, b).unwrap(), want);
            assert_eq!(is_face_lp(s, b).unwrap(), want);
        }
    }

    #[test]
    fn octahedron_has_26_faces() {
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        let faces = all_faces(&u24);
        let by_dim: Vec<usize> = (0..=3).map(|d| faces.iter().filter(|f| f.dimension() == d).count()).collect();
        assert_eq!(by_dim, vec![6, 12, 8, 1]);
        assert!(faces.iter().all(|f| is_face(f, &u24).unwrap()));
    }

    #[test]
    fn scaled_membership_matches_rational() {
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        for x in [[1i64, 1, 1, 1], [2, 0, 1, 1], [2, 2, 0, 0], [3, 1, 0, 0]] {
            let q: Vec<Rat> = x.iter().map(|&v| Rat::new(v.into(), 2.into())).collect();
            assert_eq!(member_scaled(&x, 2, &u24), member(&q, &u24));
        }
    }

    #[test]
    fn internal_examples() {
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        let npp = m(4, &["13", "14", "23", "24"]);
        assert!(is_internal(&npp, &u24).unwrap());
        assert!(!is_internal(&m(4, &["12"]), &u24).unwrap());
        assert!(is_internal(&u24, &u24).unwrap());
    }

    #[test]
    fn flipping_one_vector_flips_the_sign() {
        let n = m(4, &["12", "13", "14", "23", "24"]);
        let npp = m(4, &["13", "14", "23", "24"]);
        let mut omega = OrientationData::default_for([&n, &npp]);
        let s = facet_sign(&npp, &n, &omega).unwrap();
        omega.flip(&npp);
        assert_eq!(facet_sign(&npp, &n, &omega).unwrap(), -s);
    }
}
