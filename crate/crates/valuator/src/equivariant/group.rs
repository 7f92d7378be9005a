use super::EqError;
use crate::matroid::bits::{self, Mask};
use crate::{Matroid, Perm};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Largest group that will be enumerated.
pub const GROUP_CAP: usize = 100_000;

/// A finite permutation group, stored with all of its elements.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    /// The group generated by `generators`, enumerated breadth first.
    pub fn new(n: usize, generators: Vec<Perm>) -> Result<Self, EqError> {
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(EqError::Degree { expected: n, found: g.len() });
        }
        let id = Perm::identity(n);
        let mut index = HashMap::from([(id.clone(), 0)]);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let h = g.compose(&elements[i]);
                if !index.contains_key(&h) {
                    if elements.len() == GROUP_CAP {
                        return Err(EqError::GroupTooLarge(GROUP_CAP));
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(PermGroup { n, generators, elements, index })
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("the trivial group is small")
    }

    /// The full symmetric group on the elements of `set`, fixing the rest.
    pub fn symmetric_on(n: usize, set: Mask) -> Result<Self, EqError> {
        let els: Vec<usize> = bits::elements(set).collect();
        let gens = els.windows(2).map(|w| Perm::from_cycles(n, &[vec![w[0], w[1]]]).expect("transposition in range")).collect();
        Self::new(n, gens)
    }

    /// All automorphisms of `m`.
    pub fn automorphisms_of(m: &Matroid) -> Result<Self, EqError> {
        let all = m.automorphisms();
        if all.len() > GROUP_CAP {
            return Err(EqError::GroupTooLarge(GROUP_CAP));
        }
        Ok(Self::generated_by_subset(m.n(), all.iter()))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Elements, identity first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Conjugacy classes as lists of element indices, each sorted, ordered
    /// by their smallest member. Classes are orbits under conjugation by
    /// the generators.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let inverses: Vec<Perm> = self.generators.iter().map(Perm::inverse).collect();
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for i in 0..self.order() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            let mut class = vec![i];
            let mut queue = VecDeque::from([i]);
            while let Some(j) = queue.pop_front() {
                for (s, t) in self.generators.iter().zip(&inverses) {
                    let c = self.index[&s.compose(&self.elements[j]).compose(t)];
                    if !seen[c] {
                        seen[c] = true;
                        class.push(c);
                        queue.push_back(c);
                    }
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    /// One element from each conjugacy class.
    pub fn class_representatives(&self) -> Vec<&Perm> {
        self.conjugacy_classes().iter().map(|c| &self.elements[c[0]]).collect()
    }

    /// Orbit of a subset under the group.
    pub fn orbit(&self, s: Mask) -> Vec<Mask> {
        let set: BTreeSet<Mask> = self.elements.iter().map(|g| g.apply_mask(s)).collect();
        set.into_iter().collect()
    }

    /// Elements mapping `s` to itself.
    pub fn stabilizer(&self, s: Mask) -> PermGroup {
        Self::generated_by_subset(self.n, self.elements.iter().filter(|g| g.apply_mask(s) == s))
    }

    /// The group formed by `elements`, which must be closed under
    /// composition; generators are picked greedily so there are at most
    /// `log2 |elements|` of them.
    fn generated_by_subset<'a>(n: usize, elements: impl Iterator<Item = &'a Perm>) -> PermGroup {
        let mut out = PermGroup::trivial(n);
        for g in elements {
            if !out.contains(g) {
                let mut gens = out.generators.clone();
                gens.push(g.clone());
                out = PermGroup::new(n, gens).expect("a subgroup is no larger than the group");
            }
        }
        out
    }

    /// Whether every element is an automorphism of `m`.
    pub fn preserves(&self, m: &Matroid) -> bool {
        self.generators.iter().all(|g| m.is_preserved_by(g))
    }

    /// Every subgroup, each found as the closure of a subgroup and one more
    /// element. Intended for small groups.
    pub fn subgroups(&self) -> Vec<PermGroup> {
        let key = |g: &PermGroup| -> Vec<usize> {
            let mut v: Vec<usize> = g.elements.iter().map(|x| self.index[x]).collect();
            v.sort_unstable();
            v
        };
        let start = PermGroup::trivial(self.n);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([key(&start)]);
        let mut out = vec![start];
        let mut i = 0;
        while i < out.len() {
            let h = out[i].clone();
            for g in &self.elements {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(g.clone());
                let bigger = PermGroup::new(self.n, gens).expect("a subgroup is no larger than the group");
                if seen.insert(key(&bigger)) {
                    out.push(bigger);
                }
            }
            i += 1;
        }
        out.sort_by_key(|g| (g.order(), key(g)));
        out
    }
}
