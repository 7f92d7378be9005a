//! Matroids on small labelled ground sets, stored by their bases.
//!
//! Construction checks the basis-exchange axiom and tabulates the rank
//! function on all `2^n` subsets, so rank, closure and flatness queries are
//! table lookups afterwards.

pub mod bits;
mod minors;
mod perm;
mod structure;

pub use bits::{Mask, MAX_GROUND};
pub use perm::Perm;

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("ground set has {0} elements; at most {MAX_GROUND} are supported")]
    GroundTooLarge(usize),
    #[error("duplicate ground label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown ground label {0:?}")]
    UnknownLabel(String),
    #[error("a matroid needs at least one basis")]
    NoBases,
    #[error("bases have different cardinalities ({0} and {1})")]
    RankMismatch(usize, usize),
    #[error("subset {0:#b} is not contained in the ground set")]
    OutsideGround(Mask),
    #[error("basis exchange fails for {b1:?} → {b2:?} at {e:?}")]
    ExchangeViolated { b1: Vec<String>, b2: Vec<String>, e: String },
    #[error("ground sets overlap on {0:?}")]
    Overlap(Vec<String>),
    #[error("{0:?} is not a flat")]
    NotAFlat(Vec<String>),
    #[error("{0:?} is not a stressed flat")]
    NotStressed(Vec<String>),
    #[error("parameters out of range: {0}")]
    ParameterRange(String),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("permutation does not act on a ground set of size {0}")]
    BadPermutation(usize),
}

/// Ordered list of distinct element labels. The order fixes the
/// identification of the ground set with `{0,…,n−1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, MatroidError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(labels.len()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels: labels.into() })
    }

    /// Ground set labelled `"1"`, …, `"n"`.
    pub fn numbered(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string())).expect("numbered labels are valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn full(&self) -> Mask {
        bits::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MatroidError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| MatroidError::UnknownLabel(label.to_string()))
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Mask, MatroidError> {
        labels.into_iter().try_fold(0, |acc, l| Ok(acc | 1 << self.index_of(l.as_ref())?))
    }

    pub fn labels_of(&self, m: Mask) -> Vec<String> {
        bits::elements(m).map(|e| self.labels[e].clone()).collect()
    }

    /// The elements of `m`, in ground order, as a ground set of their own.
    pub fn sub(&self, m: Mask) -> GroundSet {
        GroundSet { labels: self.labels_of(m).into() }
    }

    /// Whether both ground sets carry the same labels, possibly reordered.
    pub fn same_elements(&self, other: &GroundSet) -> bool {
        let a: HashSet<&String> = self.labels.iter().collect();
        let b: HashSet<&String> = other.labels.iter().collect();
        a == b && self.len() == other.len()
    }

    /// Index map sending element `i` of `self` to the element with the same
    /// label in `other`.
    pub fn transfer_to(&self, other: &GroundSet) -> Result<Perm, MatroidError> {
        if !self.same_elements(other) {
            return Err(MatroidError::GroundMismatch);
        }
        let images = self.labels.iter().map(|l| other.index_of(l)).collect::<Result<Vec<_>, _>>()?;
        Ok(Perm::new(images).expect("label transfer is a bijection"))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

struct Inner {
    ground: GroundSet,
    bases: Vec<Mask>,
    rank: usize,
    rank_table: Vec<u8>,
    flats: OnceLock<Vec<Vec<Mask>>>,
    circuits: OnceLock<Vec<Mask>>,
}

/// A matroid on a labelled ground set. Cheap to clone.
///
/// Equality is labelled: same ground order and same basis set.
#[derive(Clone)]
pub struct Matroid(Arc<Inner>);

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.ground == other.0.ground && self.0.bases == other.0.bases)
    }
}

impl Eq for Matroid {}

impl Hash for Matroid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.ground.hash(state);
        self.0.bases.hash(state);
    }
}

/// Orders by rank, then basis list, then ground labels; used only to make
/// listings deterministic.
impl Ord for Matroid {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rank(), &self.0.bases, self.0.ground.labels()).cmp(&(other.rank(), &other.0.bases, other.0.ground.labels()))
    }
}

impl PartialOrd for Matroid {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Matroid {
    /// Validated construction where each basis is written as a word whose
    /// characters are single-character labels, e.g. `["12", "13"]`.
    pub fn from_words(ground: GroundSet, words: &[&str]) -> Result<Self, MatroidError> {
        let bases: Vec<Vec<String>> = words.iter().map(|w| w.chars().map(String::from).collect()).collect();
        Self::from_labels(ground, &bases)
    }

    /// Validated construction from basis masks.
    pub fn new(ground: GroundSet, bases: impl IntoIterator<Item = Mask>) -> Result<Self, MatroidError> {
        let mut bases: Vec<Mask> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(MatroidError::NoBases);
        };
        let full = ground.full();
        let rank = bits::size(first);
        for &b in &bases {
            if !bits::is_subset(b, full) {
                return Err(MatroidError::OutsideGround(b));
            }
            if bits::size(b) != rank {
                return Err(MatroidError::RankMismatch(rank, bits::size(b)));
            }
        }
        check_exchange(&ground, &bases)?;
        Ok(Self::from_sorted_bases(ground, bases))
    }

    /// Validated construction from label lists.
    pub fn from_labels<S: AsRef<str>>(ground: GroundSet, bases: &[Vec<S>]) -> Result<Self, MatroidError> {
        let masks = bases.iter().map(|b| ground.mask_of(b.iter().map(AsRef::as_ref))).collect::<Result<Vec<_>, _>>()?;
        Self::new(ground, masks)
    }

    /// Construction for basis families already known to form a matroid
    /// (faces, minors, relaxations of stressed flats).
    pub(crate) fn from_known_bases(ground: GroundSet, bases: impl IntoIterator<Item = Mask>) -> Self {
        let mut bases: Vec<Mask> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        assert!(!bases.is_empty(), "derived matroid with no bases");
        debug_assert!(bases.len() > 64 || check_exchange(&ground, &bases).is_ok(), "derived family is not a matroid");
        Self::from_sorted_bases(ground, bases)
    }

    fn from_sorted_bases(ground: GroundSet, bases: Vec<Mask>) -> Self {
        let n = ground.len();
        let rank = bits::size(bases[0]);
        let rank_table = rank_table(n, &bases);
        Matroid(Arc::new(Inner { ground, bases, rank, rank_table, flats: OnceLock::new(), circuits: OnceLock::new() }))
    }

    /// `U_{k,E}`: every `k`-subset is a basis.
    pub fn uniform(k: usize, ground: GroundSet) -> Result<Self, MatroidError> {
        if k > ground.len() {
            return Err(MatroidError::ParameterRange(format!("U_{{{k},{}}}", ground.len())));
        }
        Ok(Self::from_sorted_bases(ground.clone(), bits::subsets_of_size(ground.len(), k)))
    }

    /// `U_{k,n}` on labels `1..=n`.
    pub fn uniform_numbered(k: usize, n: usize) -> Result<Self, MatroidError> {
        Self::uniform(k, GroundSet::numbered(n))
    }

    /// Every element a coloop.
    pub fn boolean(ground: GroundSet) -> Self {
        let full = ground.full();
        Self::from_sorted_bases(ground, vec![full])
    }

    /// The matroid on the empty ground set.
    pub fn empty() -> Self {
        Self::boolean(GroundSet::numbered(0))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.0.ground
    }

    pub fn n(&self) -> usize {
        self.0.ground.len()
    }

    pub fn full(&self) -> Mask {
        self.0.ground.full()
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// Bases in increasing mask order.
    pub fn bases(&self) -> &[Mask] {
        &self.0.bases
    }

    pub fn is_basis(&self, b: Mask) -> bool {
        self.0.bases.binary_search(&b).is_ok()
    }

    /// `rk(S) = max |B ∩ S|`.
    pub fn rank_of(&self, s: Mask) -> usize {
        assert!(bits::is_subset(s, self.full()), "subset {s:#b} outside ground set");
        self.0.rank_table[s as usize] as usize
    }

    pub fn is_independent(&self, s: Mask) -> bool {
        self.rank_of(s) == bits::size(s)
    }

    pub fn closure(&self, s: Mask) -> Mask {
        let r = self.rank_of(s);
        (0..self.n()).filter(|&e| self.rank_of(s | 1 << e) == r).fold(s, |acc, e| acc | 1 << e)
    }

    pub fn is_flat(&self, s: Mask) -> bool {
        self.closure(s) == s
    }

    pub fn loops(&self) -> Mask {
        self.closure(0)
    }

    pub fn has_loops(&self) -> bool {
        self.loops() != 0
    }

    pub fn coloops(&self) -> Mask {
        self.0.bases.iter().fold(self.full(), |acc, b| acc & b)
    }

    /// Labels of a subset, for reporting.
    pub fn labels_of(&self, s: Mask) -> Vec<String> {
        self.0.ground.labels_of(s)
    }

    /// Same ground set, new basis family known to form a matroid.
    pub(crate) fn with_bases(&self, bases: impl IntoIterator<Item = Mask>) -> Matroid {
        Matroid::from_known_bases(self.0.ground.clone(), bases)
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bases: Vec<String> = self.0.bases.iter().map(|&b| self.labels_of(b).join("")).collect();
        write!(f, "Matroid(rk {} on {:?}; bases {})", self.rank(), self.0.ground, bases.join(" "))
    }
}

fn rank_table(n: usize, bases: &[Mask]) -> Vec<u8> {
    let size = 1usize << n;
    let mut indep = vec![false; size];
    for &b in bases {
        indep[b as usize] = true;
    }
    for s in (0..size).rev() {
        if indep[s] {
            for e in bits::elements(s as Mask) {
                indep[s & !(1 << e)] = true;
            }
        }
    }
    let mut rank = vec![0u8; size];
    for s in 1..size {
        rank[s] =
            if indep[s] { bits::size(s as Mask) as u8 } else { bits::elements(s as Mask).map(|e| rank[s & !(1 << e)]).max().unwrap_or(0) };
    }
    rank
}

fn check_exchange(ground: &GroundSet, bases: &[Mask]) -> Result<(), MatroidError> {
    let set: HashSet<Mask> = bases.iter().copied().collect();
    for &b1 in bases {
        for &b2 in bases {
            for e in bits::elements(b1 & !b2) {
                let base = b1 & !(1 << e);
                if !bits::elements(b2 & !b1).any(|f| set.contains(&(base | 1 << f))) {
                    return Err(MatroidError::ExchangeViolated {
                        b1: ground.labels_of(b1),
                        b2: ground.labels_of(b2),
                        e: ground.labels()[e].clone(),
                    });
                }
            }
        }
    }
    Ok(())
}
