//! Categorical invariants: functors from matroids and weak maps to graded
//! rational vector spaces with explicit bases.
//!
//! Every space carries sorted basis labels in each degree, so morphisms are
//! sparse matrices between labelled bases and traces of symmetries can be
//! read off directly.

mod basic;
mod chow;
mod convolve;
mod decat;
mod kl;
mod os;

pub use basic::{GrOs, GrOsPiece, PsiFlag, PsiFlags, RestrictRank, Tau, Whitney};
pub use chow::{AugChow, Chow};
pub(crate) use convolve::restrict_perm;
pub use convolve::{psi_chain, Convolve};
pub use decat::{
    bergman_signature, g_invariant, stellahedral_cones, BergmanSignature, Cone, SizeCap, WordSum, BERGMAN_CAP, G_INVARIANT_CAP, INCREMENT,
    STALL,
};
pub use kl::{kl_oracle, z_oracle, Kl, KlOracle, Sigma};
pub use os::Os;

use crate::matroid::bits::{self, Mask};
use crate::poly::{BiPoly, IntPoly};
use crate::{Matroid, MatroidError, Perm, QSparse, Rat};
use std::collections::BTreeMap;
use std::fmt;

/// Bidegree; singly graded functors use `(i, 0)`.
pub type Deg = (i32, i32);
/// Basis label: flats, element sets and small integers packed into `u32`s.
pub type Label = Vec<u32>;

/// A graded vector space given by sorted basis labels in each degree.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GradedSpace {
    pieces: BTreeMap<Deg, Vec<Label>>,
}

impl GradedSpace {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Collects labels; duplicates within a degree are a bug in the caller.
    pub fn from_labels(items: impl IntoIterator<Item = (Deg, Label)>) -> Self {
        let mut pieces: BTreeMap<Deg, Vec<Label>> = BTreeMap::new();
        for (d, l) in items {
            pieces.entry(d).or_default().push(l);
        }
        for v in pieces.values_mut() {
            v.sort_unstable();
            let n = v.len();
            v.dedup();
            assert_eq!(n, v.len(), "basis labels must be distinct within a degree");
        }
        GradedSpace { pieces }
    }

    /// The one-dimensional space in degree `(0, 0)`.
    pub fn unit() -> Self {
        Self::from_labels([((0, 0), Vec::new())])
    }

    pub fn degrees(&self) -> impl Iterator<Item = Deg> + '_ {
        self.pieces.keys().copied()
    }

    pub fn labels(&self, d: Deg) -> &[Label] {
        self.pieces.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, d: Deg) -> usize {
        self.labels(d).len()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn index_of(&self, d: Deg, label: &[u32]) -> Option<usize> {
        self.pieces.get(&d).and_then(|v| v.binary_search_by(|x| x.as_slice().cmp(label)).ok())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Deg, &Label)> {
        self.pieces.iter().flat_map(|(&d, v)| v.iter().map(move |l| (d, l)))
    }

    /// Dimensions per degree.
    pub fn dims(&self) -> BTreeMap<Deg, usize> {
        self.pieces.iter().map(|(&d, v)| (d, v.len())).collect()
    }

    /// `Σ dim V^{i,j} t^i u^j`; degrees must be nonnegative.
    pub fn hilbert(&self) -> BiPoly<i64> {
        let mut p = BiPoly::zero();
        for (&(i, j), v) in &self.pieces {
            assert!(i >= 0 && j >= 0, "negative degree in a Hilbert series");
            p.add_term((i as u32, j as u32), v.len() as i64);
        }
        p
    }

    /// `Σ dim V^{i,*} t^i`, forgetting the second grading.
    pub fn hilbert_t(&self) -> IntPoly {
        let mut p = IntPoly::zero();
        for (&(i, _), v) in &self.pieces {
            assert!(i >= 0, "negative degree in a Hilbert series");
            p.add_term(i as u32, v.len() as i64);
        }
        p
    }

    /// Shifts every degree by `by`.
    pub fn shifted(&self, by: Deg) -> Self {
        GradedSpace { pieces: self.pieces.iter().map(|(&(i, j), v)| ((i + by.0, j + by.1), v.clone())).collect() }
    }
}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pieces.iter().map(|(d, v)| (d, v.len()))).finish()
    }
}

/// A degree-preserving linear map between graded spaces, one sparse block
/// per degree (rows index target labels, columns source labels). Missing
/// degrees are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GradedMap {
    blocks: BTreeMap<Deg, QSparse>,
}

impl GradedMap {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn block(&self, d: Deg) -> Option<&QSparse> {
        self.blocks.get(&d)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Deg, &QSparse)> {
        self.blocks.iter().map(|(&d, b)| (d, b))
    }

    pub fn insert(&mut self, d: Deg, block: QSparse) {
        if !block.is_zero() {
            self.blocks.insert(d, block);
        }
    }

    /// Block in degree `d`, materialized with the right shape.
    pub fn block_or_zero(&self, d: Deg, src: &GradedSpace, tgt: &GradedSpace) -> QSparse {
        self.blocks.get(&d).cloned().unwrap_or_else(|| QSparse::zeros(tgt.dim(d), src.dim(d)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        let mut out = GradedMap::zero();
        for (d, b) in &self.blocks {
            if let Some(a) = other.blocks.get(d) {
                out.insert(*d, b.mul(a));
            }
        }
        out
    }

    /// Trace in each degree.
    pub fn traces(&self) -> BTreeMap<Deg, Rat> {
        self.blocks.iter().map(|(&d, b)| (d, b.trace())).collect()
    }

    /// Whether every block equals the identity of the given space.
    pub fn is_identity_on(&self, space: &GradedSpace) -> bool {
        space.degrees().all(|d| self.blocks.get(&d) == Some(&QSparse::identity(space.dim(d))))
            && self.blocks.keys().all(|d| space.dim(*d) > 0)
    }

    /// Whether the two maps agree in every degree.
    pub fn same_as(&self, other: &GradedMap) -> bool {
        self.blocks == other.blocks
    }
}

/// A morphism of matroids: after relabelling by `phi`, every basis of the
/// target is a basis of the source.
///
/// `phi` maps source element indices to target element indices; `None`
/// means both matroids live on the same ground set and the map is the
/// identity on elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakMap {
    source: Matroid,
    target: Matroid,
    phi: Option<Perm>,
}

impl WeakMap {
    pub fn new(source: Matroid, target: Matroid, phi: Option<Perm>) -> Result<Self, MatroidError> {
        match &phi {
            None if source.ground() != target.ground() => return Err(MatroidError::GroundMismatch),
            Some(p) if p.len() != source.n() || p.len() != target.n() => return Err(MatroidError::GroundMismatch),
            _ => {}
        }
        let inv = phi.as_ref().map(Perm::inverse);
        let ok = target.bases().iter().all(|&b| source.is_basis(inv.as_ref().map_or(b, |p| p.apply_mask(b))));
        if !ok {
            return Err(MatroidError::ParameterRange("target bases are not bases of the source".into()));
        }
        Ok(WeakMap { source, target, phi })
    }

    /// `ι_{M,M′}` for matroids on the same ground set.
    pub fn inclusion(source: &Matroid, target: &Matroid) -> Result<Self, MatroidError> {
        Self::new(source.clone(), target.clone(), None)
    }

    /// The automorphism `g` of `m`, as an endomorphism.
    pub fn automorphism(m: &Matroid, g: &Perm) -> Result<Self, MatroidError> {
        Self::new(m.clone(), m.clone(), Some(g.clone()))
    }

    pub fn identity(m: &Matroid) -> Self {
        WeakMap { source: m.clone(), target: m.clone(), phi: None }
    }

    pub fn source(&self) -> &Matroid {
        &self.source
    }

    pub fn target(&self) -> &Matroid {
        &self.target
    }

    pub fn phi(&self) -> Option<&Perm> {
        self.phi.as_ref()
    }

    /// Image of a source subset.
    pub fn apply(&self, s: Mask) -> Mask {
        self.phi.as_ref().map_or(s, |p| p.apply_mask(s))
    }

    /// Sign of `u_S ↦ ±u_{φ(S)}` on sorted monomials.
    pub fn monomial_sign(&self, s: Mask) -> i64 {
        self.phi.as_ref().map_or(1, |p| p.monomial_sign(s))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &WeakMap) -> Result<WeakMap, MatroidError> {
        let phi = match (&self.phi, &other.phi) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(b.compose(a)),
        };
        WeakMap::new(self.source.clone(), other.target.clone(), phi)
    }

    /// Whether the element map is trivial.
    pub fn is_plain(&self) -> bool {
        self.phi.as_ref().is_none_or(Perm::is_identity)
    }
}

/// A functor from matroids and weak maps to graded vector spaces.
pub trait Functor: Send + Sync {
    fn name(&self) -> String;

    /// Whether morphisms with a nontrivial element map are supported, i.e.
    /// whether the functor is defined on the category with relabellings.
    fn equivariant(&self) -> bool;

    fn obj(&self, m: &Matroid) -> GradedSpace;

    /// The induced map; `src` and `tgt` must be `obj` of the source and
    /// target.
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap;

    fn mor_of(&self, f: &WeakMap) -> GradedMap {
        self.mor(f, &self.obj(f.source()), &self.obj(f.target()))
    }
}

impl<F: Functor + ?Sized> Functor for Box<F> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn equivariant(&self) -> bool {
        (**self).equivariant()
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        (**self).obj(m)
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        (**self).mor(f, src, tgt)
    }
}

/// Builds a map sending each source label to at most one target label with
/// a sign. Images missing from the target are dropped only when `lenient`.
pub(crate) fn map_labels(
    src: &GradedSpace,
    tgt: &GradedSpace,
    lenient: bool,
    mut image: impl FnMut(Deg, &Label) -> Option<(Label, i64)>,
) -> GradedMap {
    let mut out = GradedMap::zero();
    for d in src.degrees() {
        let mut trip = Vec::new();
        for (c, l) in src.labels(d).iter().enumerate() {
            if let Some((img, s)) = image(d, l) {
                match tgt.index_of(d, &img) {
                    Some(r) => trip.push((r, c, Rat::from_integer(s.into()))),
                    None => assert!(lenient, "image label {img:?} missing from the target in degree {d:?}"),
                }
            }
        }
        out.insert(d, QSparse::from_triplets(tgt.dim(d), src.dim(d), trip));
    }
    out
}

/// Flags of flats `F_1 ⊊ ⋯ ⊊ F_r` with `rk F_j = ranks[j]`, each flat
/// containing `floor`.
pub(crate) fn flags_above(m: &Matroid, floor: Mask, ranks: &[usize]) -> Vec<Vec<Mask>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ranks.len());
    fn go(m: &Matroid, lo: Mask, ranks: &[usize], cur: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
        let Some((&r, rest)) = ranks.split_first() else {
            out.push(cur.clone());
            return;
        };
        let Some(level) = m.flats_by_rank().get(r) else { return };
        for &f in level {
            if bits::is_subset(lo, f) {
                cur.push(f);
                go(m, f, rest, cur, out);
                cur.pop();
            }
        }
    }
    go(m, floor, ranks, &mut cur, &mut out);
    out
}

/// Flags of flats `F_1 ⊊ ⋯ ⊊ F_r` with `rk F_j = ranks[j]`.
pub fn flags(m: &Matroid, ranks: &[usize]) -> Vec<Vec<Mask>> {
    flags_above(m, 0, ranks)
}

/// Image of one flat under a weak map: its closure in the target, provided
/// the rank is unchanged.
pub(crate) fn flat_image(f: &WeakMap, flat: Mask) -> Option<Mask> {
    let img = f.apply(flat);
    (f.target().rank_of(img) == f.source().rank_of(flat)).then(|| f.target().closure(img))
}

/// Strictly increasing tuples from `lo..hi` of the given length.
pub(crate) fn increasing_tuples(lo: usize, hi: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(lo: usize, hi: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..hi {
            cur.push(v);
            go(v + 1, hi, len, cur, out);
            cur.pop();
        }
    }
    go(lo, hi, len, &mut cur, &mut out);
    out
}

/// Functors addressable by name.
pub fn by_name(name: &str) -> Option<Box<dyn Functor>> {
    let f: Box<dyn Functor> = match name {
        "tau" => Box::new(Tau),
        "gros" => Box::new(GrOs),
        "os" => Box::new(Os::new()),
        "chow" => Box::new(Chow),
        "augchow" => Box::new(AugChow),
        "kl" => Box::new(Kl),
        "sigma" => Box::new(Sigma),
        _ => {
            if let Some(rest) = name.strip_prefix("whitney:") {
                let ranks: Result<Vec<usize>, _> = rest.split(',').filter(|s| !s.is_empty()).map(str::parse).collect();
                return ranks.ok().and_then(|r| Whitney::new(r).ok()).map(|w| Box::new(w) as Box<dyn Functor>);
            }
            if let Some(rest) = name.strip_prefix("tau:") {
                return rest.parse().ok().map(|k| Box::new(RestrictRank::new(Tau, k)) as Box<dyn Functor>);
            }
            return None;
        }
    };
    Some(f)
}

/// Names accepted by [`by_name`], with the Whitney functors listed as
/// examples.
pub const FUNCTOR_NAMES: &[&str] = &["tau", "tau:<k>", "gros", "os", "whitney:<k1,k2,...>", "chow", "augchow", "kl", "sigma"];
