use super::{Deg, Functor, GradedMap, GradedSpace, Label, PsiFlags, RestrictRank, Tau, WeakMap};
use crate::matroid::bits::{self, Mask};
use crate::{Matroid, Perm, QSparse, Rat};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// `F * G` along a split `E = E_1 ⊔ E_2`: `F(M^{E_1}) ⊗ G(M_{E_1})` with
/// degrees added. A morphism `M → M′` induces the tensor product of the
/// component maps when `rk_M(E_1) = rk_{M′}(E_1)`, and zero otherwise.
///
/// Labels are `[len a, a…, b…]` for a basis vector `a ⊗ b`.
pub struct Convolve {
    first: Box<dyn Functor>,
    second: Box<dyn Functor>,
    split: Mask,
}

/// A component space with each label's degree and index.
struct Indexed {
    space: GradedSpace,
    place: HashMap<Label, (Deg, usize)>,
}

impl Indexed {
    fn new(space: GradedSpace) -> Self {
        let mut place = HashMap::new();
        for d in space.degrees() {
            for (i, l) in space.labels(d).iter().enumerate() {
                place.insert(l.clone(), (d, i));
            }
        }
        Indexed { space, place }
    }
}

/// Column-major view of a graded map: `(degree, column) ↦ [(row, value)]`.
fn columns(map: &GradedMap) -> HashMap<(Deg, usize), Vec<(usize, Rat)>> {
    let mut out: HashMap<(Deg, usize), Vec<(usize, Rat)>> = HashMap::new();
    for (d, b) in map.blocks() {
        for (r, c, v) in b.entries() {
            out.entry((d, c)).or_default().push((r, v.clone()));
        }
    }
    out
}

/// `p` restricted to a set it preserves, in the compressed indexing of that
/// set.
pub(crate) fn restrict_perm(p: &Perm, within: Mask) -> Option<Perm> {
    if p.apply_mask(within) != within {
        return None;
    }
    let images = bits::elements(within).map(|e| bits::min_element(bits::compress(1 << p.apply(e), within)).expect("image in set"));
    Perm::new(images.collect()).ok()
}

fn split_label(l: &Label) -> (Label, Label) {
    let n = l[0] as usize;
    (l[1..=n].to_vec(), l[n + 1..].to_vec())
}

fn join_label(a: &[u32], b: &[u32]) -> Label {
    let mut l = Vec::with_capacity(1 + a.len() + b.len());
    l.push(a.len() as u32);
    l.extend_from_slice(a);
    l.extend_from_slice(b);
    l
}

impl Convolve {
    pub fn new(first: Box<dyn Functor>, second: Box<dyn Functor>, split: Mask) -> Self {
        Convolve { first, second, split }
    }

    pub fn split(&self) -> Mask {
        self.split
    }

    fn rest(&self, m: &Matroid) -> Mask {
        m.full() & !self.split
    }

    fn parts(&self, m: &Matroid) -> (Matroid, Matroid) {
        assert!(bits::is_subset(self.split, m.full()), "split set is not inside the ground set");
        (m.restriction(self.split), m.contraction(self.split))
    }

    /// The component weak maps, or `None` when the rank gate closes.
    fn component_maps(&self, f: &WeakMap) -> Option<(WeakMap, WeakMap)> {
        let (s, t) = (f.source(), f.target());
        if s.rank_of(self.split) != t.rank_of(f.apply(self.split)) || f.apply(self.split) != self.split {
            return None;
        }
        let (s1, s2) = self.parts(s);
        let (t1, t2) = self.parts(t);
        let (p1, p2) = match f.phi() {
            None => (None, None),
            Some(p) => (Some(restrict_perm(p, self.split)?), Some(restrict_perm(p, self.rest(s))?)),
        };
        let a = WeakMap::new(s1, t1, p1).expect("restriction of a weak map is a weak map");
        let b = WeakMap::new(s2, t2, p2).expect("contraction of a weak map is a weak map");
        Some((a, b))
    }
}

impl Functor for Convolve {
    fn name(&self) -> String {
        format!("({})*({})@{:b}", self.first.name(), self.second.name(), self.split)
    }
    fn equivariant(&self) -> bool {
        self.first.equivariant() && self.second.equivariant()
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        let (m1, m2) = self.parts(m);
        let a = self.first.obj(&m1);
        let b = self.second.obj(&m2);
        GradedSpace::from_labels(
            a.iter().flat_map(|(da, la)| b.iter().map(move |(db, lb)| ((da.0 + db.0, da.1 + db.1), join_label(la, lb)))),
        )
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        let mut out = GradedMap::zero();
        let Some((fa, fb)) = self.component_maps(f) else { return out };
        let a_src = Indexed::new(self.first.obj(fa.source()));
        let a_tgt = self.first.obj(fa.target());
        let b_src = Indexed::new(self.second.obj(fb.source()));
        let b_tgt = self.second.obj(fb.target());
        let ca = columns(&self.first.mor(&fa, &a_src.space, &a_tgt));
        let cb = columns(&self.second.mor(&fb, &b_src.space, &b_tgt));
        for d in src.degrees() {
            let mut acc: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
            for (col, l) in src.labels(d).iter().enumerate() {
                let (la, lb) = split_label(l);
                let (Some(&pa), Some(&pb)) = (a_src.place.get(&la), b_src.place.get(&lb)) else {
                    panic!("source label {l:?} does not split into component labels");
                };
                let (Some(xa), Some(xb)) = (ca.get(&pa), cb.get(&pb)) else { continue };
                for (ra, va) in xa {
                    for (rb, vb) in xb {
                        let img = join_label(&a_tgt.labels(pa.0)[*ra], &b_tgt.labels(pb.0)[*rb]);
                        let row = tgt.index_of(d, &img).expect("tensor image lies in the target");
                        *acc.entry((row, col)).or_insert_with(Rat::zero) += va * vb;
                    }
                }
            }
            out.insert(d, QSparse::from_triplets(tgt.dim(d), src.dim(d), acc.into_iter().map(|((r, c), v)| (r, c, v))));
        }
        out
    }
}

/// `Ψ_{I ≤ S}`: `[τ]_{|I|}` on `I` convolved with the flag indicator of
/// `S_1 ∖ I ⊊ ⋯` on the complement. Nonzero exactly when `I` is
/// independent and every `S_j` is a flat.
pub fn psi_chain(indep: Mask, chain: &[Mask], n: usize) -> Convolve {
    let rest = bits::full(n) & !indep;
    let sets = chain.iter().map(|&s| bits::compress(s & !indep, rest)).collect();
    Convolve::new(Box::new(RestrictRank::new(Tau, bits::size(indep))), Box::new(PsiFlags::new(sets)), indep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{GrOs, Whitney};
    use crate::testutil::m;

    fn tau_k(k: usize) -> Box<dyn Functor> {
        Box::new(RestrictRank::new(Tau, k))
    }

    #[test]
    fn rank_gated_product() {
        let npp = m(4, &["13", "14", "23", "24"]);
        let np = m(4, &["13", "14", "23", "24", "34"]);
        let u = Matroid::uniform_numbered(2, 4).unwrap();
        let c = Convolve::new(tau_k(1), tau_k(1), 0b0011);
        assert_eq!(c.obj(&npp).total_dim(), 1);
        assert_eq!(c.obj(&np).total_dim(), 1);
        // {1,2} has rank 2 in U24, so the first factor vanishes
        assert_eq!(c.obj(&u).total_dim(), 0);
        let map = c.mor_of(&WeakMap::inclusion(&np, &npp).unwrap());
        assert!(map.is_identity_on(&c.obj(&np)));
        let gated = Convolve::new(tau_k(2), Box::new(Tau), 0b0011);
        assert_eq!(gated.obj(&u).total_dim(), 1);
        assert!(gated.mor_of(&WeakMap::inclusion(&u, &npp).unwrap()).blocks().next().is_none());
    }

    #[test]
    fn empty_split_is_the_functor() {
        let u = Matroid::uniform_numbered(2, 4).unwrap();
        let n = m(4, &["12", "13", "14", "23", "24"]);
        let c = Convolve::new(Box::new(Tau), Box::new(GrOs), 0);
        assert_eq!(c.obj(&u).dims(), GrOs.obj(&u).dims());
        let f = WeakMap::inclusion(&u, &n).unwrap();
        let a = c.mor_of(&f);
        let b = GrOs.mor_of(&f);
        for (d, blk) in b.blocks() {
            assert_eq!(a.block(d).map(QSparse::rank), Some(blk.rank()));
        }
    }

    #[test]
    fn automorphism_preserving_the_split() {
        let u = Matroid::uniform_numbered(2, 4).unwrap();
        let g = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let c = Convolve::new(Box::new(Whitney::new(vec![1]).unwrap()), Box::new(Tau), 0b0011);
        let map = c.mor_of(&WeakMap::automorphism(&u, &g).unwrap());
        // the two rank-one flats of U24|{1,2} are swapped
        assert_eq!(map.traces()[&(0, 0)], Rat::zero());
        let h = Perm::from_cycles(4, &[vec![0, 2]]).unwrap();
        assert!(c.mor_of(&WeakMap::automorphism(&u, &h).unwrap()).blocks().next().is_none());
    }

    #[test]
    fn psi_chain_support() {
        let u = Matroid::uniform_numbered(2, 4).unwrap();
        assert_eq!(psi_chain(0b0001, &[0b0001], 4).obj(&u).total_dim(), 1);
        assert_eq!(psi_chain(0b0011, &[], 4).obj(&u).total_dim(), 1);
        assert_eq!(psi_chain(0b0111, &[], 4).obj(&u).total_dim(), 0);
        assert_eq!(psi_chain(0, &[0b0011], 4).obj(&u).total_dim(), 0);
    }
}
