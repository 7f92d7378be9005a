//! Matroid decompositions of base polytopes, their validation, the
//! relaxation construction, and the signed complexes built from them.

mod complex;
mod relax;

pub use complex::{build_complex, build_complex_with, delta_psi_complex, DecompositionComplex, FormalComplex, MatroidComplex};
pub use relax::relaxation_decomposition;

use crate::matroid::bits::{self, Mask};
use crate::polytope::{self, PolytopeError};
use crate::{Matroid, MatroidError, Perm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecompError {
    #[error("face {0} is not on the ground set of the target")]
    GroundMismatch(String),
    #[error("face {0} is not contained in the target polytope")]
    NotContained(String),
    #[error("the decomposition has no face of full dimension")]
    NoCells,
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Which validation check failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    FaceClosure,
    PairwiseIntersection,
    Covering,
    IndicatorIdentity,
    Diamond,
    FacetGraph,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::FaceClosure => "face-closure",
            Check::PairwiseIntersection => "pairwise-intersection",
            Check::Covering => "covering",
            Check::IndicatorIdentity => "indicator-identity",
            Check::Diamond => "diamond",
            Check::FacetGraph => "facet-graph",
        };
        f.write_str(s)
    }
}

/// A failed validation check with the witness that exposed it.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{check} check failed: {witness}")]
pub struct ValidationFailure {
    pub check: Check,
    pub witness: String,
}

/// What a successful validation looked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationSummary {
    pub seed: u64,
    pub sample_points: usize,
    pub cells: usize,
    pub faces: usize,
}

/// A point of `R^E` stored as an integer vector over a common denominator.
#[derive(Clone, Debug)]
struct Sample {
    num: Vec<i64>,
    denom: i64,
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.num.iter().map(|v| format!("{v}/{}", self.denom)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A decomposition of `P(target)` into matroid polytopes.
///
/// `faces` holds every face of the subdivision, boundary faces included,
/// and `internal[k]` the internal faces of dimension `k`. The target itself
/// plays the role of an extra face in degree `d + 1` when complexes are
/// built.
#[derive(Clone, Debug)]
pub struct Decomposition {
    target: Matroid,
    faces: Vec<Matroid>,
    internal: Vec<Vec<Matroid>>,
}

impl Decomposition {
    /// Takes the face list as given (it should already be closed under
    /// taking faces) and sorts out which faces are internal.
    pub fn new(target: Matroid, faces: impl IntoIterator<Item = Matroid>) -> Result<Self, DecompError> {
        let faces: Vec<Matroid> = faces.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let d = target.dimension();
        let mut internal = vec![Vec::new(); d + 1];
        for f in &faces {
            if f.ground() != target.ground() {
                return Err(DecompError::GroundMismatch(format!("{f:?}")));
            }
            if !f.bases().iter().all(|&b| target.is_basis(b)) {
                return Err(DecompError::NotContained(format!("{f:?}")));
            }
            if polytope::is_internal(f, &target)? {
                internal[f.dimension()].push(f.clone());
            }
        }
        if internal[d].is_empty() {
            return Err(DecompError::NoCells);
        }
        let mut faces = faces;
        faces.sort_by_key(|f| (f.dimension(), f.clone()));
        for level in &mut internal {
            level.sort();
        }
        Ok(Decomposition { target, faces, internal })
    }

    /// Builds from the maximal cells, adding all of their faces.
    pub fn from_cells(target: Matroid, cells: impl IntoIterator<Item = Matroid>) -> Result<Self, DecompError> {
        let mut faces = BTreeSet::new();
        for c in cells {
            faces.extend(polytope::all_faces(&c));
        }
        Self::new(target, faces)
    }

    /// The decomposition whose only cell is the whole polytope.
    pub fn trivial(m: &Matroid) -> Self {
        Self::from_cells(m.clone(), [m.clone()]).expect("a polytope decomposes itself")
    }

    pub fn target(&self) -> &Matroid {
        &self.target
    }

    /// `d(target)`.
    pub fn dimension(&self) -> usize {
        self.target.dimension()
    }

    pub fn faces(&self) -> &[Matroid] {
        &self.faces
    }

    /// Internal faces of dimension `k`; `k = d + 1` gives the target.
    pub fn internal(&self, k: usize) -> Vec<Matroid> {
        match k.cmp(&(self.dimension() + 1)) {
            std::cmp::Ordering::Less => self.internal[k].clone(),
            std::cmp::Ordering::Equal => vec![self.target.clone()],
            std::cmp::Ordering::Greater => Vec::new(),
        }
    }

    /// All internal faces of all dimensions.
    pub fn internal_faces(&self) -> impl Iterator<Item = &Matroid> {
        self.internal.iter().flatten()
    }

    /// The full-dimensional faces.
    pub fn cells(&self) -> &[Matroid] {
        &self.internal[self.dimension()]
    }

    pub fn is_trivial(&self) -> bool {
        self.cells().len() == 1
    }

    /// The induced decomposition of a face of the target: every face of the
    /// subdivision lying in it.
    pub fn restricted_to(&self, face: &Matroid) -> Result<Decomposition, DecompError> {
        let inside = self.faces.iter().filter(|f| f.bases().iter().all(|&b| face.is_basis(b))).cloned();
        Decomposition::new(face.clone(), inside)
    }

    /// Whether `g` preserves the target and permutes the internal faces.
    pub fn is_preserved_by(&self, g: &Perm) -> bool {
        if !self.target.is_preserved_by(g) {
            return false;
        }
        let set: HashSet<&Matroid> = self.internal_faces().collect();
        self.internal_faces().all(|f| set.contains(&f.permuted(g)))
    }

    /// The image of the whole decomposition under a ground-set permutation.
    pub fn permuted(&self, g: &Perm) -> Decomposition {
        Decomposition::new(self.target.permuted(g), self.faces.iter().map(|f| f.permuted(g)))
            .expect("permutations carry decompositions to decompositions")
    }

    /// Signed formal sum `Σ_k (−1)^k Σ_{N ∈ N_k} N` including the target in
    /// degree `d + 1`, as (sign, matroid) pairs.
    pub fn signed_generator(&self) -> Vec<(i64, Matroid)> {
        (0..=self.dimension() + 1)
            .flat_map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                self.internal(k).into_iter().map(move |m| (sign, m))
            })
            .collect()
    }

    /// Runs every structural check; `sample_budget` random points of
    /// `P(target)` are added to the vertices and face barycenters.
    pub fn validate(&self, sample_budget: usize, seed: u64) -> Result<ValidationSummary, ValidationFailure> {
        self.check_closure()?;
        self.check_pairwise()?;
        let samples = self.samples(sample_budget, seed);
        self.check_points(&samples)?;
        self.check_diamonds()?;
        self.check_facet_graphs()?;
        Ok(ValidationSummary { seed, sample_points: samples.len(), cells: self.cells().len(), faces: self.faces.len() })
    }

    fn check_closure(&self) -> Result<(), ValidationFailure> {
        let have: HashSet<&Matroid> = self.faces.iter().collect();
        for c in self.cells() {
            if let Some(missing) = polytope::all_faces(c).into_iter().find(|f| !have.contains(f)) {
                return Err(ValidationFailure {
                    check: Check::FaceClosure,
                    witness: format!("{missing:?} is a face of {c:?} but is not listed"),
                });
            }
        }
        if let Some(stray) = self.faces.iter().find(|f| !self.cells().iter().any(|c| bases_within(f, c))) {
            return Err(ValidationFailure { check: Check::FaceClosure, witness: format!("{stray:?} lies in no cell") });
        }
        Ok(())
    }

    fn check_pairwise(&self) -> Result<(), ValidationFailure> {
        let cells = self.cells();
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                let common: Vec<Mask> = a.bases().iter().copied().filter(|&x| b.is_basis(x)).collect();
                if common.is_empty() {
                    continue;
                }
                let ok = polytope::face_closure(a, &common) == common && polytope::face_closure(b, &common) == common;
                let dim_ok = a.with_bases(common.iter().copied()).dimension() < self.dimension();
                if !ok || !dim_ok {
                    return Err(ValidationFailure {
                        check: Check::PairwiseIntersection,
                        witness: format!("{a:?} and {b:?} meet outside a common proper face"),
                    });
                }
            }
        }
        Ok(())
    }

    fn samples(&self, budget: usize, seed: u64) -> Vec<Sample> {
        let n = self.target.n();
        let mut out: Vec<Sample> = self.target.bases().iter().map(|&b| Sample { num: polytope::vertex(b, n), denom: 1 }).collect();
        for f in &self.faces {
            let mut num = vec![0i64; n];
            for &b in f.bases() {
                for e in bits::elements(b) {
                    num[e] += 1;
                }
            }
            out.push(Sample { num, denom: f.bases().len() as i64 });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let verts = self.target.bases();
        for _ in 0..budget {
            let mut num = vec![0i64; n];
            for _ in 0..7 {
                for e in bits::elements(verts[rng.gen_range(0..verts.len())]) {
                    num[e] += 1;
                }
            }
            out.push(Sample { num, denom: 7 });
        }
        out
    }

    fn check_points(&self, samples: &[Sample]) -> Result<(), ValidationFailure> {
        let d = self.dimension();
        for x in samples {
            debug_assert!(polytope::member_scaled(&x.num, x.denom, &self.target));
            if !self.cells().iter().any(|c| polytope::member_scaled(&x.num, x.denom, c)) {
                return Err(ValidationFailure { check: Check::Covering, witness: format!("{x} lies in no cell") });
            }
            let mut total: i64 = if (d + 1).is_multiple_of(2) { 1 } else { -1 };
            for (k, level) in self.internal.iter().enumerate() {
                let hits = level.iter().filter(|f| polytope::member_scaled(&x.num, x.denom, f)).count() as i64;
                total += if k % 2 == 0 { hits } else { -hits };
            }
            if total != 0 {
                return Err(ValidationFailure {
                    check: Check::IndicatorIdentity,
                    witness: format!("signed indicator sum is {total} at {x}"),
                });
            }
        }
        Ok(())
    }

    fn check_diamonds(&self) -> Result<(), ValidationFailure> {
        let d = self.dimension();
        for k in 0..d {
            for r in &self.internal[k] {
                for s in self.internal(k + 2).iter().filter(|s| bases_within(r, s)) {
                    let between = self.internal[k + 1].iter().filter(|q| bases_within(r, q) && bases_within(q, s)).count();
                    if between != 2 {
                        return Err(ValidationFailure {
                            check: Check::Diamond,
                            witness: format!("{between} faces lie between {r:?} and {s:?}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_facet_graphs(&self) -> Result<(), ValidationFailure> {
        let d = self.dimension();
        if d == 0 {
            return Ok(());
        }
        for r in self.internal[..d].iter().flatten() {
            let cells: Vec<&Matroid> = self.cells().iter().filter(|c| bases_within(r, c)).collect();
            let walls: Vec<&Matroid> = self.internal[d - 1].iter().filter(|w| bases_within(r, w)).collect();
            let mut reached = vec![false; cells.len()];
            let mut stack = vec![0usize];
            if cells.is_empty() {
                return Err(ValidationFailure { check: Check::FacetGraph, witness: format!("no cell contains {r:?}") });
            }
            reached[0] = true;
            while let Some(i) = stack.pop() {
                for (j, c) in cells.iter().enumerate() {
                    if !reached[j] && walls.iter().any(|w| bases_within(w, cells[i]) && bases_within(w, c)) {
                        reached[j] = true;
                        stack.push(j);
                    }
                }
            }
            if reached.iter().any(|&x| !x) {
                return Err(ValidationFailure {
                    check: Check::FacetGraph,
                    witness: format!("cells around {r:?} are not connected through internal walls"),
                });
            }
        }
        Ok(())
    }
}

/// `bases(a) ⊆ bases(b)`.
pub(crate) fn bases_within(a: &Matroid, b: &Matroid) -> bool {
    a.bases().len() <= b.bases().len() && a.bases().iter().all(|&x| b.is_basis(x))
}
