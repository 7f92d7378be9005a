//! Permutation symmetry: determinant characters of base polytopes, traces
//! of symmetries on functor values, and the character identities satisfied
//! by symmetric decompositions and relaxations.

mod group;
mod symmetric;

pub use group::{PermGroup, GROUP_CAP};
pub use symmetric::{kl_correction_shape, mn_skew_character, partitions, standard_tableaux, Partition, SkewShape};

use crate::decomp::Decomposition;
use crate::functors::{kl_oracle, restrict_perm, Deg, Functor, Kl, Os, WeakMap};
use crate::matroid::bits::{self, Mask};
use crate::polytope::{self, coordinates};
use crate::{IntPoly, Matroid, MatroidError, Perm, QMatrix, Rat};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EqError {
    #[error("permutation acts on {found} points, expected {expected}")]
    Degree { expected: usize, found: usize },
    #[error("group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("{0} does not preserve the matroid")]
    NotPreserved(String),
    #[error("the group does not preserve the decomposition")]
    DecompositionNotPreserved,
    #[error("functor {0} is only defined for maps fixing the ground set")]
    NotEquivariant(String),
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("{0:?} is not a stressed hyperplane")]
    NotStressedHyperplane(Mask),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Sign of the action of `g` on `V(M) = span{x − y : x, y ∈ P(M)}`.
pub fn det_character(m: &Matroid, g: &Perm) -> Result<i64, EqError> {
    if !m.is_preserved_by(g) {
        return Err(EqError::NotPreserved(format!("{g:?}")));
    }
    let basis = polytope::orientation_basis(m);
    let d = basis.len();
    let mut a = QMatrix::zeros(d, d);
    for (j, b) in basis.iter().enumerate() {
        let mut img = vec![Rat::zero(); b.len()];
        for (i, x) in b.iter().enumerate() {
            img[g.apply(i)] = x.clone();
        }
        for (i, c) in coordinates(&basis, &img).into_iter().enumerate() {
            a.set(i, j, c);
        }
    }
    let det = a.determinant();
    debug_assert!(det.abs().is_one(), "a permutation acts on V(M) with determinant ±1");
    Ok(if det.is_positive() { 1 } else { -1 })
}

/// Trace of `g` on each graded piece of `f(m)`.
pub fn trace(f: &dyn Functor, m: &Matroid, g: &Perm) -> Result<BTreeMap<Deg, Rat>, EqError> {
    if !f.equivariant() {
        return Err(EqError::NotEquivariant(f.name()));
    }
    let w = WeakMap::automorphism(m, g).map_err(|_| EqError::NotPreserved(format!("{g:?}")))?;
    let space = f.obj(m);
    let mut out: BTreeMap<Deg, Rat> = space.degrees().map(|d| (d, Rat::zero())).collect();
    out.extend(f.mor(&w, &space, &space).traces());
    Ok(out)
}

fn add_into(acc: &mut BTreeMap<Deg, Rat>, part: BTreeMap<Deg, Rat>, scale: i64) {
    for (d, v) in part {
        *acc.entry(d).or_insert_with(Rat::zero) += v * Rat::from_integer(scale.into());
    }
}

fn nonzero(m: BTreeMap<Deg, Rat>) -> BTreeMap<Deg, Rat> {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// A group element and graded degree at which a character identity fails.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityFailure {
    pub element: Perm,
    pub degree: Deg,
    pub value: Rat,
}

/// Outcome of a character identity over a group.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdentityReport {
    pub group_order: usize,
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, g: &Perm, residual: BTreeMap<Deg, Rat>, degrees: usize) {
        self.checked += degrees.max(1);
        for (degree, value) in nonzero(residual) {
            self.failures.push(IdentityFailure { element: g.clone(), degree, value });
        }
    }
}

/// `Σ_k (−1)^k Σ_{N ∈ N_k, γN = N} tr(γ | f(N)) · det(γ | V(N))` in every
/// degree, for every `γ` in the group; valuativity of `f` makes it vanish.
pub fn character_identity_check(d: &Decomposition, group: &PermGroup, f: &dyn Functor) -> Result<IdentityReport, EqError> {
    if !group.generators().iter().all(|g| d.is_preserved_by(g)) {
        return Err(EqError::DecompositionNotPreserved);
    }
    let mut report = IdentityReport { group_order: group.order(), ..Default::default() };
    for g in group.class_representatives() {
        let mut acc = BTreeMap::new();
        for k in 0..=d.dimension() + 1 {
            let s = if k % 2 == 0 { 1 } else { -1 };
            for n in d.internal(k).iter().filter(|n| n.is_preserved_by(g)) {
                add_into(&mut acc, trace(f, n, g)?, s * det_character(n, g)?);
            }
        }
        let degs = acc.len();
        report.record(g, acc, degs);
    }
    Ok(report)
}

/// Class function values aligned with [`PermGroup::elements`].
pub type Character = Vec<Rat>;

/// Coefficients of the equivariant KL polynomial: the `t^i` coefficient at
/// `γ` is `Σ_j (−1)^j tr(γ | KL^{i,j}(M))`.
pub fn equivariant_kl(m: &Matroid, group: &PermGroup) -> Result<Vec<Character>, EqError> {
    let mut by_elem: Vec<BTreeMap<i32, Rat>> = vec![BTreeMap::new(); group.order()];
    for class in group.conjugacy_classes() {
        let mut coeffs: BTreeMap<i32, Rat> = BTreeMap::new();
        for ((i, j), v) in trace(&Kl, m, &group.elements()[class[0]])? {
            let s = if j % 2 == 0 { v } else { -v };
            *coeffs.entry(i).or_insert_with(Rat::zero) += s;
        }
        for &e in &class {
            by_elem[e] = coeffs.clone();
        }
    }
    let top = by_elem.iter().flat_map(|c| c.keys().copied()).max().unwrap_or(-1);
    Ok((0..=top).map(|i| by_elem.iter().map(|c| c.get(&i).cloned().unwrap_or_else(Rat::zero)).collect()).collect())
}

/// The equivariant KL polynomial evaluated at the identity, as an integer
/// polynomial; it must agree with the recursion.
pub fn equivariant_kl_at_identity(m: &Matroid) -> Result<IntPoly, EqError> {
    let chars = equivariant_kl(m, &PermGroup::trivial(m.n()))?;
    let mut p = IntPoly::zero();
    for (i, c) in chars.iter().enumerate() {
        p.add_term(i as u32, c[0].to_integer().to_i64().expect("small coefficient"));
    }
    Ok(p)
}

/// Relaxation of every flat in `orbit`, computed from the cusps in `m`.
fn relax_orbit(m: &Matroid, orbit: &[Mask]) -> Result<Matroid, EqError> {
    let mut bases: BTreeSet<Mask> = m.bases().iter().copied().collect();
    for &g in orbit {
        if !m.is_stressed(g)? {
            return Err(MatroidError::NotStressed(m.labels_of(g)).into());
        }
        bases.extend(m.cusp(g));
    }
    Ok(Matroid::new(m.ground().clone(), bases)?)
}

/// Data of an equivariant relaxation `M ↝ M̃` along the orbit of a stressed
/// flat.
#[derive(Clone, Debug)]
pub struct Relaxation {
    pub original: Matroid,
    pub relaxed: Matroid,
    pub orbit: Vec<Mask>,
    /// `(Π_G, Λ_G)` for each `G` in the orbit.
    pub pieces: Vec<(Matroid, Matroid)>,
}

impl Relaxation {
    pub fn new(m: &Matroid, flat: Mask, group: &PermGroup) -> Result<Self, EqError> {
        if let Some(g) = group.generators().iter().find(|g| !m.is_preserved_by(g)) {
            return Err(EqError::NotPreserved(format!("{g:?}")));
        }
        let orbit = group.orbit(flat);
        let relaxed = relax_orbit(m, &orbit)?;
        let (r, k) = (m.rank_of(flat), m.rank());
        let pieces = orbit.iter().map(|&g| Matroid::pi_lambda(r, k, g, m.ground())).collect::<Result<Vec<_>, _>>()?;
        Ok(Relaxation { original: m.clone(), relaxed, orbit, pieces })
    }
}

/// `f(M̃) = f(M) + Ind f(Λ) − Ind f(Π)` as characters, the induced terms
/// evaluated as sums over orbit members fixed by `γ`.
pub fn virtual_check(rel: &Relaxation, group: &PermGroup, f: &dyn Functor) -> Result<IdentityReport, EqError> {
    let mut report = IdentityReport { group_order: group.order(), ..Default::default() };
    for g in group.class_representatives() {
        let mut acc = trace(f, &rel.relaxed, g)?;
        let degs = acc.len();
        add_into(&mut acc, trace(f, &rel.original, g)?, -1);
        for (&flat, (pi, lambda)) in rel.orbit.iter().zip(&rel.pieces) {
            if g.apply_mask(flat) == flat {
                add_into(&mut acc, trace(f, lambda, g)?, -1);
                add_into(&mut acc, trace(f, pi, g)?, 1);
            }
        }
        report.record(g, acc, degs);
    }
    Ok(report)
}

/// Character of `∧^e` of the standard representation of the symmetric
/// group of a `h`-set, at a permutation of that set.
pub fn standard_ext_character(p: &Perm, e: usize) -> Rat {
    let h = p.len();
    let mut m = QMatrix::zeros(h, h);
    for i in 0..h {
        m.set(p.apply(i), i, Rat::one());
    }
    // ∧(permutation rep) = ∧(standard) ⊗ ∧(trivial)
    (0..=e).fold(Rat::zero(), |acc, j| {
        let t = m.ext_trace(j);
        if (e - j).is_multiple_of(2) {
            acc + t
        } else {
            acc - t
        }
    })
}

/// Which exterior power makes the Orlik–Solomon relaxation identity hold
/// for a stressed hyperplane.
#[derive(Clone, Debug, PartialEq)]
pub struct OsExponentReport {
    pub rank: usize,
    pub hyperplane_size: usize,
    pub group_order: usize,
    /// Whether `∧^{k−1}` reproduces the difference in every degree.
    pub lower_holds: bool,
    /// Whether `∧^{k}` reproduces the difference in every degree.
    pub upper_holds: bool,
}

impl OsExponentReport {
    /// The exponents that satisfy the identity.
    pub fn verified_exponents(&self) -> Vec<usize> {
        let mut v = Vec::new();
        if self.lower_holds {
            v.push(self.rank - 1);
        }
        if self.upper_holds {
            v.push(self.rank);
        }
        v
    }
}

/// Compares `OS(M̃) − OS(M)` with `Ind Res ∧^e V_{[h−1,1]}` placed in degrees
/// `k − 1` and `k`, for `e = k − 1` and `e = k`.
pub fn os_exponent_report(m: &Matroid, hyperplane: Mask, group: &PermGroup) -> Result<OsExponentReport, EqError> {
    let k = m.rank();
    if !m.is_flat(hyperplane) || m.rank_of(hyperplane) + 1 != k || !m.is_stressed(hyperplane)? {
        return Err(EqError::NotStressedHyperplane(hyperplane));
    }
    let rel = Relaxation::new(m, hyperplane, group)?;
    let os = Os::new();
    let h = bits::size(hyperplane);
    let mut holds = [true, true];
    for g in group.class_representatives() {
        let mut diff = trace(&os, &rel.relaxed, g)?;
        add_into(&mut diff, trace(&os, m, g)?, -1);
        for (slot, e) in [k - 1, k].into_iter().enumerate() {
            let mut predicted = Rat::zero();
            for &flat in rel.orbit.iter().filter(|&&fl| g.apply_mask(fl) == fl) {
                let local = restrict_perm(g, flat).expect("fixed flat");
                predicted += standard_ext_character(&local, e);
            }
            let mut expect: BTreeMap<Deg, Rat> = BTreeMap::new();
            expect.insert((k as i32 - 1, 0), predicted.clone());
            expect.insert((k as i32, 0), predicted);
            let mut residual = diff.clone();
            add_into(&mut residual, expect, -1);
            if !nonzero(residual).is_empty() {
                holds[slot] = false;
            }
        }
    }
    Ok(OsExponentReport { rank: k, hyperplane_size: h, group_order: group.order(), lower_holds: holds[0], upper_holds: holds[1] })
}

/// Outcome of comparing an equivariant KL difference with skew characters.
#[derive(Clone, Debug, PartialEq)]
pub struct KlCorrectionReport {
    pub rank: usize,
    pub hyperplane_size: usize,
    pub classes: usize,
    pub failures: Vec<(Partition, usize, Rat, i64)>,
}

impl KlCorrectionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn perm_of_cycle_type(n: usize, cycles: &[usize]) -> Perm {
    let mut start = 0;
    let mut cs = Vec::new();
    for &c in cycles {
        cs.push((start..start + c).collect::<Vec<_>>());
        start += c;
    }
    Perm::from_cycles(n, &cs).expect("cycle type fits")
}

/// `P^{S_h}_Λ − P^{S_h}_Π` against the skew characters of the correction
/// term, for the hyperplane `H = {1..h}` inside a ground set with `extra`
/// further elements, one conjugacy class of `S_h` at a time.
pub fn kl_correction_check(k: usize, h: usize, extra: usize) -> Result<KlCorrectionReport, EqError> {
    let n = h + extra;
    let hyper = bits::full(h);
    let ground = crate::GroundSet::numbered(n);
    let (pi, lambda) = Matroid::pi_lambda(k - 1, k, hyper, &ground)?;
    let mut failures = Vec::new();
    let classes = partitions(h);
    for rho in &classes {
        let g = perm_of_cycle_type(n, rho);
        let group = PermGroup::new(n, vec![g.clone()])?;
        let a = equivariant_kl(&lambda, &group)?;
        let b = equivariant_kl(&pi, &group)?;
        let gi = group.index_of(&g).expect("generator in group");
        for i in 0..a.len().max(b.len()) {
            let da = a.get(i).map_or_else(Rat::zero, |c| c[gi].clone()) - b.get(i).map_or_else(Rat::zero, |c| c[gi].clone());
            let expected = if i > 0 && 2 * i < k { mn_skew_character(&kl_correction_shape(k, h, i)?, rho)? } else { 0 };
            if da != Rat::from_integer(expected.into()) {
                failures.push((rho.clone(), i, da, expected));
            }
        }
    }
    Ok(KlCorrectionReport { rank: k, hyperplane_size: h, classes: classes.len(), failures })
}

/// `P^Γ_{M̃} − P^Γ_M = Σ_i Ind Res V_{λ_i/μ_i} t^i` for the orbit of a stressed
/// hyperplane, with both sides evaluated at every element of `group`.
pub fn kl_relax_check(m: &Matroid, hyperplane: Mask, group: &PermGroup) -> Result<IdentityReport, EqError> {
    let k = m.rank();
    if !m.is_flat(hyperplane) || m.rank_of(hyperplane) + 1 != k || !m.is_stressed(hyperplane)? {
        return Err(EqError::NotStressedHyperplane(hyperplane));
    }
    let rel = Relaxation::new(m, hyperplane, group)?;
    let h = bits::size(hyperplane);
    let a = equivariant_kl(&rel.relaxed, group)?;
    let b = equivariant_kl(m, group)?;
    let mut report = IdentityReport { group_order: group.order(), ..Default::default() };
    for class in group.conjugacy_classes() {
        let (gi, g) = (class[0], &group.elements()[class[0]]);
        let mut residual: BTreeMap<Deg, Rat> = BTreeMap::new();
        for i in 0..a.len().max(b.len()).max(k) {
            let mut v = a.get(i).map_or_else(Rat::zero, |c| c[gi].clone()) - b.get(i).map_or_else(Rat::zero, |c| c[gi].clone());
            if i > 0 && 2 * i < k {
                let shape = kl_correction_shape(k, h, i)?;
                for &flat in rel.orbit.iter().filter(|&&fl| g.apply_mask(fl) == fl) {
                    let local = restrict_perm(g, flat).expect("fixed flat");
                    v -= Rat::from_integer(mn_skew_character(&shape, &local.cycle_type())?.into());
                }
            }
            residual.insert((i as i32, 0), v);
        }
        report.record(g, residual, k);
    }
    Ok(report)
}

/// Checks the equivariant KL polynomial at the identity against the
/// recursion.
pub fn equivariant_kl_consistent(m: &Matroid) -> Result<bool, EqError> {
    Ok(equivariant_kl_at_identity(m)? == kl_oracle(m))
}
