use super::bits::{self, Mask};
use super::{Matroid, MatroidError};
use std::fmt;

/// A permutation of `{0,…,n−1}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self, MatroidError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(MatroidError::BadPermutation(n));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds from disjoint cycles written with 0-based indices.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, MatroidError> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(MatroidError::BadPermutation(n));
                }
                images[a] = c[(i + 1) % c.len()];
            }
        }
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, e: usize) -> usize {
        self.0[e]
    }

    pub fn apply_mask(&self, m: Mask) -> Mask {
        bits::elements(m).fold(0, |acc, e| acc | 1 << self.0[e])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles (including fixed points), each starting at its
    /// smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.0[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths of the restriction to an invariant subset, descending.
    pub fn cycle_type_on(&self, within: Mask) -> Vec<usize> {
        debug_assert_eq!(self.apply_mask(within), within, "subset is not invariant");
        let mut t: Vec<usize> = self.cycles().into_iter().filter(|c| bits::contains(within, c[0])).map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        self.cycle_type_on(bits::full(self.len()))
    }

    /// Sign of `u_{e_1}⋯u_{e_k} ↦ u_{σ(e_1)}⋯u_{σ(e_k)}` relative to the
    /// sorted monomial on `σ(S)`.
    pub fn monomial_sign(&self, s: Mask) -> i64 {
        let imgs: Vec<usize> = bits::elements(s).map(|e| self.0[e]).collect();
        let inv = (0..imgs.len()).flat_map(|i| (i + 1..imgs.len()).map(move |j| (i, j))).filter(|&(i, j)| imgs[i] > imgs[j]).count();
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        if cyc.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", cyc.join(""))
        }
    }
}

impl Matroid {
    /// The image matroid `γ·M` on the same ground set.
    pub fn permuted(&self, g: &Perm) -> Matroid {
        assert_eq!(g.len(), self.n(), "permutation size differs from ground set");
        self.with_bases(self.bases().iter().map(|&b| g.apply_mask(b)))
    }

    pub fn is_preserved_by(&self, g: &Perm) -> bool {
        g.len() == self.n() && self.bases().iter().all(|&b| self.is_basis(g.apply_mask(b)))
    }

    /// All automorphisms, by backtracking on rank-preserving partial maps.
    pub fn automorphisms(&self) -> Vec<Perm> {
        let n = self.n();
        let mut out = Vec::new();
        let mut img = vec![usize::MAX; n];
        let mut used = 0u32;
        self.extend_automorphism(0, &mut img, &mut used, &mut out);
        out
    }

    fn extend_automorphism(&self, e: usize, img: &mut Vec<usize>, used: &mut Mask, out: &mut Vec<Perm>) {
        let n = self.n();
        if e == n {
            out.push(Perm(img.clone()));
            return;
        }
        let prefix = bits::full(e);
        for f in 0..n {
            if bits::contains(*used, f) {
                continue;
            }
            img[e] = f;
            // every subset containing e among the assigned elements keeps its rank
            let ok = bits::subsets_of(prefix).all(|s| {
                let src = s | 1 << e;
                let dst = bits::elements(src).fold(0, |acc, x| acc | 1 << img[x]);
                self.rank_of(src) == self.rank_of(dst)
            });
            if ok {
                *used |= 1 << f;
                self.extend_automorphism(e + 1, img, used, out);
                *used &= !(1 << f);
            }
        }
        img[e] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_composition() {
        let g = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(g.cycle_type(), vec![2, 2]);
        assert!(g.compose(&g).is_identity());
        let h = Perm::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(h.compose(&h.inverse()), Perm::identity(4));
        assert_eq!(format!("{h:?}"), "(1 2 3)");
    }

    #[test]
    fn automorphism_group_sizes() {
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        assert_eq!(u24.automorphisms().len(), 24);
        let g = super::super::GroundSet::numbered(4);
        let npp = Matroid::from_labels(g, &[vec!["1", "3"], vec!["1", "4"], vec!["2", "3"], vec!["2", "4"]]).unwrap();
        assert_eq!(npp.automorphisms().len(), 8);
    }
}
