use super::{flags, flat_image, map_labels, Functor, GradedMap, GradedSpace, WeakMap};
use crate::matroid::bits::{self, Mask};
use crate::{Matroid, MatroidError};

/// The trivial functor: `Q` in degree 0 for every matroid, identities on
/// morphisms.
#[derive(Clone, Copy, Debug, Default)]
pub struct Tau;

impl Functor for Tau {
    fn name(&self) -> String {
        "tau".into()
    }
    fn equivariant(&self) -> bool {
        true
    }
    fn obj(&self, _: &Matroid) -> GradedSpace {
        GradedSpace::unit()
    }
    fn mor(&self, _: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        map_labels(src, tgt, false, |_, l| Some((l.clone(), 1)))
    }
}

/// `[F]_k`: agrees with `F` on matroids of rank `k` and vanishes elsewhere.
#[derive(Clone, Debug)]
pub struct RestrictRank<F> {
    inner: F,
    rank: usize,
}

impl<F: Functor> RestrictRank<F> {
    pub fn new(inner: F, rank: usize) -> Self {
        RestrictRank { inner, rank }
    }
}

impl<F: Functor> Functor for RestrictRank<F> {
    fn name(&self) -> String {
        format!("[{}]_{}", self.inner.name(), self.rank)
    }
    fn equivariant(&self) -> bool {
        self.inner.equivariant()
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        if m.rank() == self.rank {
            self.inner.obj(m)
        } else {
            GradedSpace::zero()
        }
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        if f.source().rank() == self.rank {
            self.inner.mor(f, src, tgt)
        } else {
            GradedMap::zero()
        }
    }
}

/// The Whitney functor `Φ_k`: basis the flags of flats with ranks `k`,
/// morphisms by closure of images when ranks are preserved.
#[derive(Clone, Debug)]
pub struct Whitney {
    ranks: Vec<usize>,
}

impl Whitney {
    pub fn new(ranks: Vec<usize>) -> Result<Self, MatroidError> {
        if ranks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MatroidError::ParameterRange(format!("ranks {ranks:?} are not strictly increasing")));
        }
        Ok(Whitney { ranks })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

impl Functor for Whitney {
    fn name(&self) -> String {
        let r: Vec<String> = self.ranks.iter().map(ToString::to_string).collect();
        format!("whitney:{}", r.join(","))
    }
    fn equivariant(&self) -> bool {
        true
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        GradedSpace::from_labels(flags(m, &self.ranks).into_iter().map(|fl| ((0, 0), fl)))
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        map_labels(src, tgt, false, |_, l| {
            let img: Option<Vec<Mask>> = l.iter().map(|&fl| flat_image(f, fl)).collect();
            img.map(|v| (v, 1))
        })
    }
}

/// `Ψ_{k,S}`: `Q` when each `S_j` is a flat of rank `k_j`, else zero.
#[derive(Clone, Debug)]
pub struct PsiFlag {
    ranks: Vec<usize>,
    sets: Vec<Mask>,
}

impl PsiFlag {
    pub fn new(ranks: Vec<usize>, sets: Vec<Mask>) -> Result<Self, MatroidError> {
        if ranks.len() != sets.len() || ranks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MatroidError::ParameterRange("ranks must increase and match the sets".into()));
        }
        Ok(PsiFlag { ranks, sets })
    }

    fn holds(&self, m: &Matroid) -> bool {
        self.sets.iter().zip(&self.ranks).all(|(&s, &k)| bits::is_subset(s, m.full()) && m.is_flat(s) && m.rank_of(s) == k)
    }
}

impl Functor for PsiFlag {
    fn name(&self) -> String {
        format!("psi{:?}{:?}", self.ranks, self.sets)
    }
    fn equivariant(&self) -> bool {
        false
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        if self.holds(m) {
            GradedSpace::unit()
        } else {
            GradedSpace::zero()
        }
    }
    fn mor(&self, _: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        map_labels(src, tgt, true, |_, l| Some((l.clone(), 1)))
    }
}

/// `Ψ_S = ⊕_k Ψ_{k,S}`: `Q` when every `S_j` is a flat (of any rank), with
/// nonzero maps only between matroids giving each `S_j` the same rank.
#[derive(Clone, Debug)]
pub struct PsiFlags {
    sets: Vec<Mask>,
}

impl PsiFlags {
    pub fn new(sets: Vec<Mask>) -> Self {
        PsiFlags { sets }
    }
}

impl Functor for PsiFlags {
    fn name(&self) -> String {
        format!("psi{:?}", self.sets)
    }
    fn equivariant(&self) -> bool {
        false
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        if self.sets.iter().all(|&s| bits::is_subset(s, m.full()) && m.is_flat(s)) {
            let ranks: Vec<u32> = self.sets.iter().map(|&s| m.rank_of(s) as u32).collect();
            GradedSpace::from_labels([((0, 0), ranks)])
        } else {
            GradedSpace::zero()
        }
    }
    fn mor(&self, _: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        map_labels(src, tgt, true, |_, l| Some((l.clone(), 1)))
    }
}

/// The associated graded Orlik–Solomon functor: basis the nbc sets, and a
/// morphism keeps `u_S` when `S` stays nbc and kills it otherwise.
#[derive(Clone, Copy, Debug, Default)]
pub struct GrOs;

pub(crate) fn nbc_space(m: &Matroid) -> GradedSpace {
    GradedSpace::from_labels(m.nbc_sets().into_iter().enumerate().flat_map(|(i, v)| v.into_iter().map(move |s| ((i as i32, 0), vec![s]))))
}

impl Functor for GrOs {
    fn name(&self) -> String {
        "gros".into()
    }
    fn equivariant(&self) -> bool {
        false
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        nbc_space(m)
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        map_labels(src, tgt, true, |_, l| Some((vec![f.apply(l[0])], f.monomial_sign(l[0]))))
    }
}

/// One graded piece of `grOS` singled out by its label: `Q` in degree
/// `|S|` when `S` is nbc, else zero.
#[derive(Clone, Copy, Debug)]
pub struct GrOsPiece {
    set: Mask,
}

impl GrOsPiece {
    pub fn new(set: Mask) -> Self {
        GrOsPiece { set }
    }
}

impl Functor for GrOsPiece {
    fn name(&self) -> String {
        format!("gros[{:b}]", self.set)
    }
    fn equivariant(&self) -> bool {
        false
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        if !m.has_loops() && bits::is_subset(self.set, m.full()) && m.is_independent(self.set) && m.is_nbc(self.set) {
            GradedSpace::from_labels([((bits::size(self.set) as i32, 0), vec![self.set])])
        } else {
            GradedSpace::zero()
        }
    }
    fn mor(&self, _: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        map_labels(src, tgt, true, |_, l| Some((l.clone(), 1)))
    }
}
