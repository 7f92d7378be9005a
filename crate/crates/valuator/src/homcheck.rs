//! Complexes of graded rational vector spaces obtained by applying a functor
//! to a complex of matroids, and their homology.

use crate::decomp::MatroidComplex;
use crate::functors::{Deg, Functor, GradedSpace, WeakMap};
use crate::poly::BiPoly;
use crate::{Matroid, MatroidError, QSparse, Rat};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomError {
    #[error("differential entry {from:?} → {to:?} is not a weak map: {source}")]
    NotAWeakMap { from: Vec<Vec<String>>, to: Vec<Vec<String>>, source: MatroidError },
    #[error("the image complex does not square to zero in homological degree {k}, degree {deg:?}")]
    NotAComplex { k: usize, deg: Deg },
}

/// A bounded complex of graded spaces. Homological degree `k` runs over
/// `0..=top`; each differential `C_k → C_{k−1}` is block diagonal in the
/// invariant degree.
#[derive(Clone, Debug, Default)]
pub struct ChainOfSpaces {
    dims: Vec<BTreeMap<Deg, usize>>,
    diffs: Vec<BTreeMap<Deg, QSparse>>,
}

/// Homology dimensions, per invariant degree and homological degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Homology {
    pub by_degree: BTreeMap<Deg, BTreeMap<usize, usize>>,
}

impl Homology {
    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    /// Total dimension in each homological degree.
    pub fn totals(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for m in self.by_degree.values() {
            for (&k, &h) in m {
                *out.entry(k).or_insert(0) += h;
            }
        }
        out
    }

    /// The same homology with homological degrees raised by `by`; entries
    /// pushed below zero are a caller error.
    pub fn shifted(&self, by: i64) -> Homology {
        let by_degree = self
            .by_degree
            .iter()
            .map(|(&d, m)| {
                let moved = m.iter().map(|(&k, &h)| (usize::try_from(k as i64 + by).expect("negative homological degree"), h));
                (d, moved.collect())
            })
            .collect();
        Homology { by_degree }
    }
}

impl ChainOfSpaces {
    /// The complex `0 → V → 0` with `V` in homological degree 0.
    pub fn single(space: &GradedSpace) -> Self {
        ChainOfSpaces { dims: vec![space.dims()], diffs: vec![BTreeMap::new()] }
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dim(&self, k: usize, d: Deg) -> usize {
        self.dims.get(k).and_then(|m| m.get(&d)).copied().unwrap_or(0)
    }

    /// All invariant degrees carrying a nonzero space.
    pub fn degrees(&self) -> BTreeSet<Deg> {
        self.dims.iter().flat_map(|m| m.keys().copied()).collect()
    }

    /// Block of `∂_k` in invariant degree `d`, materialized.
    pub fn differential(&self, k: usize, d: Deg) -> QSparse {
        let rows = if k == 0 { 0 } else { self.dim(k - 1, d) };
        self.diffs.get(k).and_then(|m| m.get(&d)).cloned().unwrap_or_else(|| QSparse::zeros(rows, self.dim(k, d)))
    }

    fn rank(&self, k: usize, d: Deg) -> usize {
        self.diffs.get(k).and_then(|m| m.get(&d)).map_or(0, QSparse::rank)
    }

    /// `h_k = dim C_k − rank ∂_k − rank ∂_{k+1}` in every degree, keeping
    /// only the nonzero values.
    pub fn homology(&self) -> Homology {
        let degs: Vec<Deg> = self.degrees().into_iter().collect();
        let per: Vec<(Deg, BTreeMap<usize, usize>)> = degs
            .par_iter()
            .map(|&d| {
                let ranks: Vec<usize> = (0..=self.top() + 1).map(|k| self.rank(k, d)).collect();
                let h = (0..=self.top())
                    .map(|k| (k, self.dim(k, d) - ranks[k] - ranks[k + 1]))
                    .filter(|&(_, h)| h > 0)
                    .collect::<BTreeMap<_, _>>();
                (d, h)
            })
            .collect();
        Homology { by_degree: per.into_iter().filter(|(_, h)| !h.is_empty()).collect() }
    }

    pub fn is_exact(&self) -> bool {
        self.homology().is_zero()
    }

    /// `Σ_k (−1)^k dim C_k^{i,j} t^i u^j`. Invariant degrees must be
    /// nonnegative.
    pub fn euler(&self) -> BiPoly<i64> {
        let mut p = BiPoly::zero();
        for (k, m) in self.dims.iter().enumerate() {
            let s = if k % 2 == 0 { 1 } else { -1 };
            for (&(i, j), &n) in m {
                assert!(i >= 0 && j >= 0, "negative invariant degree in an Euler characteristic");
                p.add_term((i as u32, j as u32), s * n as i64);
            }
        }
        p
    }

    /// Whether `∂_{k−1} ∘ ∂_k = 0` blockwise.
    pub fn squares_to_zero(&self) -> bool {
        (2..self.diffs.len()).all(|k| self.diffs[k].iter().all(|(d, b)| self.diffs[k - 1].get(d).is_none_or(|a| a.mul(b).is_zero())))
    }
}

/// Offsets of each object's summand inside `C_k^d`.
struct Layout {
    spaces: Vec<GradedSpace>,
    offsets: Vec<BTreeMap<Deg, usize>>,
    dims: BTreeMap<Deg, usize>,
}

impl Layout {
    fn new(spaces: Vec<GradedSpace>) -> Self {
        let mut dims: BTreeMap<Deg, usize> = BTreeMap::new();
        let mut offsets = Vec::with_capacity(spaces.len());
        for s in &spaces {
            let mut here = BTreeMap::new();
            for d in s.degrees() {
                let slot = dims.entry(d).or_insert(0);
                here.insert(d, *slot);
                *slot += s.dim(d);
            }
            offsets.push(here);
        }
        dims.retain(|_, n| *n > 0);
        Layout { spaces, offsets, dims }
    }
}

/// Applies `f` to every object and every differential entry of `c`: the
/// entry `a · ι_{Q,R}` becomes `a · f(ι_{Q,R})`.
pub fn apply(f: &dyn Functor, c: &MatroidComplex) -> Result<ChainOfSpaces, HomError> {
    let mut cache: HashMap<Matroid, GradedSpace> = HashMap::new();
    let distinct: BTreeSet<&Matroid> = (0..=c.top()).flat_map(|k| c.objects(k)).collect();
    let computed: Vec<(Matroid, GradedSpace)> = distinct.into_par_iter().map(|m| (m.clone(), f.obj(m))).collect();
    cache.extend(computed);
    let layouts: Vec<Layout> = (0..=c.top()).map(|k| Layout::new(c.objects(k).iter().map(|m| cache[m].clone()).collect())).collect();
    let mut diffs = vec![BTreeMap::new()];
    for k in 1..=c.top() {
        let (lo, hi) = (&layouts[k - 1], &layouts[k]);
        let entries: Vec<(usize, usize, Rat)> = c.differential(k).entries().map(|(r, col, v)| (r, col, v.clone())).collect();
        let maps = entries
            .par_iter()
            .map(|(r, col, v)| {
                let (src, tgt) = (&c.objects(k)[*col], &c.objects(k - 1)[*r]);
                let w = WeakMap::inclusion(src, tgt).map_err(|e| HomError::NotAWeakMap {
                    from: src.bases().iter().map(|&b| src.labels_of(b)).collect(),
                    to: tgt.bases().iter().map(|&b| tgt.labels_of(b)).collect(),
                    source: e,
                })?;
                Ok((*r, *col, v.clone(), f.mor(&w, &hi.spaces[*col], &lo.spaces[*r])))
            })
            .collect::<Result<Vec<_>, HomError>>()?;
        let mut trip: BTreeMap<Deg, Vec<(usize, usize, Rat)>> = BTreeMap::new();
        for (r, col, v, map) in maps {
            for (d, b) in map.blocks() {
                let (ro, co) = (lo.offsets[r][&d], hi.offsets[col][&d]);
                let t = trip.entry(d).or_default();
                t.extend(b.entries().map(|(i, j, x)| (ro + i, co + j, &v * x)));
            }
        }
        let blocks: BTreeMap<Deg, QSparse> = trip
            .into_iter()
            .map(|(d, t)| {
                let rows = lo.dims.get(&d).copied().unwrap_or(0);
                let cols = hi.dims.get(&d).copied().unwrap_or(0);
                (d, QSparse::from_triplets(rows, cols, t))
            })
            .filter(|(_, b)| !b.is_zero())
            .collect();
        diffs.push(blocks);
    }
    let out = ChainOfSpaces { dims: layouts.into_iter().map(|l| l.dims).collect(), diffs };
    for k in 2..out.diffs.len() {
        for (d, b) in &out.diffs[k] {
            if out.diffs[k - 1].get(d).is_some_and(|a| !a.mul(b).is_zero()) {
                return Err(HomError::NotAComplex { k, deg: *d });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{build_complex, Decomposition};
    use crate::functors::{Chow, Os, Tau};
    use crate::testutil::m;
    use crate::IntPoly;

    fn octahedron() -> Decomposition {
        let u = Matroid::uniform_numbered(2, 4).unwrap();
        Decomposition::from_cells(u, [m(4, &["12", "13", "14", "23", "24"]), m(4, &["13", "14", "23", "24", "34"])]).unwrap()
    }

    #[test]
    fn os_sequence_is_exact() {
        let c = build_complex(&octahedron()).unwrap();
        let ch = apply(&Os::new(), &c).unwrap();
        assert!(ch.is_exact());
        let top = c.top();
        assert_eq!((ch.dim(top, (2, 0)), ch.dim(top - 1, (2, 0)), ch.dim(top - 2, (2, 0))), (3, 4, 1));
        assert!(ch.euler().is_zero());
    }

    #[test]
    fn chow_sequence_is_exact() {
        let c = build_complex(&octahedron()).unwrap();
        assert!(apply(&Chow, &c).unwrap().is_exact());
    }

    #[test]
    fn single_space_has_homology() {
        let ch = ChainOfSpaces::single(&crate::functors::GradedSpace::unit());
        assert_eq!(ch.homology().totals(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn missing_square_is_detected() {
        let u = Matroid::uniform_numbered(2, 4).unwrap();
        let n = m(4, &["12", "13", "14", "23", "24"]);
        let np = m(4, &["13", "14", "23", "24", "34"]);
        // hand-built 0 → M → N ⊕ N′ → 0 without the square
        let c = MatroidComplex::new(
            vec![vec![n, np], vec![u]],
            vec![
                QSparse::zeros(0, 2),
                QSparse::from_triplets(2, 1, [(0, 0, Rat::from_integer(1.into())), (1, 0, Rat::from_integer((-1).into()))]),
            ],
        );
        let ch = apply(&Tau, &c).unwrap();
        assert!(!ch.is_exact());
        assert_eq!(ch.euler().at_u(&1), IntPoly::from_coeffs([1]));
    }
}
