//! Decategorified invariants that are cheap to compare across a signed
//! family of matroids: the G-invariant as a sum of words, and the augmented
//! Bergman signature as a 0/1 vector over stellahedral cones.

use crate::matroid::bits::{self, Mask};
use crate::Matroid;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Largest ground set for [`g_invariant`].
pub const G_INVARIANT_CAP: usize = 8;
/// Largest ground set for [`bergman_signature`] and [`stellahedral_cones`].
pub const BERGMAN_CAP: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("ground set of size {n} exceeds the cap {cap} for {what}")]
pub struct SizeCap {
    pub n: usize,
    pub cap: usize,
    pub what: &'static str,
}

/// Letter recording that a prefix gained rank.
pub const INCREMENT: char = 'y';
/// Letter recording that a prefix kept its rank.
pub const STALL: char = 'x';

/// A `Z`-linear combination of words in two letters, all of one length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSum {
    terms: BTreeMap<String, i64>,
}

impl WordSum {
    pub fn terms(&self) -> &BTreeMap<String, i64> {
        &self.terms
    }

    pub fn coeff(&self, word: &str) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    fn add(&mut self, word: String, c: i64) {
        let e = self.terms.entry(word.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&word);
        }
    }

    /// The same sum with the two letters exchanged.
    pub fn swap_letters(&self) -> WordSum {
        let swap = |c: char| if c == INCREMENT { STALL } else { INCREMENT };
        WordSum { terms: self.terms.iter().map(|(w, &c)| (w.chars().map(swap).collect(), c)).collect() }
    }

    /// `Σ c_i · W_i`.
    pub fn signed_sum<'a>(items: impl IntoIterator<Item = (i64, &'a WordSum)>) -> WordSum {
        let mut out = WordSum::default();
        for (s, w) in items {
            for (word, &c) in &w.terms {
                out.add(word.clone(), s * c);
            }
        }
        out
    }
}

/// The G-invariant: over all orderings of the ground set, the word whose
/// `j`-th letter says whether the `j`-th prefix has larger rank than the
/// one before. Computed by dynamic programming over subsets.
pub fn g_invariant(m: &Matroid) -> Result<WordSum, SizeCap> {
    if m.n() > G_INVARIANT_CAP {
        return Err(SizeCap { n: m.n(), cap: G_INVARIANT_CAP, what: "the G-invariant" });
    }
    let size = 1usize << m.n();
    let mut table: Vec<BTreeMap<String, i64>> = vec![BTreeMap::new(); size];
    table[0].insert(String::new(), 1);
    // subsets in increasing numeric order visit every subset after its subsets
    for s in 0..size {
        if table[s].is_empty() {
            continue;
        }
        let rs = m.rank_of(s as Mask);
        let here = std::mem::take(&mut table[s]);
        for e in bits::elements(m.full() & !(s as Mask)) {
            let t = s | 1 << e;
            let letter = if m.rank_of(t as Mask) > rs { INCREMENT } else { STALL };
            for (w, &c) in &here {
                let mut w2 = w.clone();
                w2.push(letter);
                *table[t].entry(w2).or_insert(0) += c;
            }
        }
        if s == size - 1 {
            table[s] = here;
        }
    }
    Ok(WordSum { terms: std::mem::take(&mut table[size - 1]) })
}

/// A cone of the stellahedral fan: `I ⊆ S_1 ⊊ ⋯ ⊊ S_r ⊊ E`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    pub indep: Mask,
    pub chain: Vec<Mask>,
}

impl Cone {
    /// Whether the cone lies in the augmented Bergman fan of `m`.
    pub fn in_fan_of(&self, m: &Matroid) -> bool {
        m.is_independent(self.indep) && self.chain.iter().all(|&s| m.is_flat(s))
    }
}

/// Every cone of the stellahedral fan on `n` elements.
pub fn stellahedral_cones(n: usize) -> Result<Vec<Cone>, SizeCap> {
    if n > BERGMAN_CAP {
        return Err(SizeCap { n, cap: BERGMAN_CAP, what: "stellahedral cones" });
    }
    let full = bits::full(n);
    let mut out = Vec::new();
    fn chains(lo: Mask, full: Mask, cur: &mut Vec<Mask>, f: &mut dyn FnMut(&[Mask])) {
        f(cur);
        let free = full & !lo;
        for add in bits::subsets_of(free) {
            let s = lo | add;
            let strict = cur.last().is_none_or(|&l| l != s);
            if s != full && strict {
                cur.push(s);
                chains(s, full, cur, f);
                cur.pop();
            }
        }
    }
    for indep in bits::subsets_of(full) {
        chains(indep, full, &mut Vec::new(), &mut |c| out.push(Cone { indep, chain: c.to_vec() }));
    }
    out.sort();
    Ok(out)
}

/// Support of the augmented Bergman fan inside the stellahedral fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergmanSignature {
    n: usize,
    support: BTreeSet<Cone>,
}

impl BergmanSignature {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &BTreeSet<Cone> {
        &self.support
    }

    pub fn value(&self, c: &Cone) -> i64 {
        i64::from(self.support.contains(c))
    }

    /// `Σ c_i · w_i` restricted to its nonzero entries.
    pub fn signed_sum<'a>(items: impl IntoIterator<Item = (i64, &'a BergmanSignature)>) -> BTreeMap<Cone, i64> {
        let mut out: BTreeMap<Cone, i64> = BTreeMap::new();
        for (s, w) in items {
            for c in &w.support {
                *out.entry(c.clone()).or_insert(0) += s;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// The cones `I ⊆ S_1 ⊊ ⋯ ⊊ S_r ⊊ E` with `I` independent and each `S_j`
/// a flat.
pub fn bergman_signature(m: &Matroid) -> Result<BergmanSignature, SizeCap> {
    if m.n() > BERGMAN_CAP {
        return Err(SizeCap { n: m.n(), cap: BERGMAN_CAP, what: "the Bergman signature" });
    }
    let proper: Vec<Mask> = m.flats().filter(|&f| f != m.full()).collect();
    let indeps: Vec<Mask> = bits::subsets_of(m.full()).filter(|&s| m.is_independent(s)).collect();
    let mut support = BTreeSet::new();
    fn go(proper: &[Mask], indeps: &[Mask], cur: &mut Vec<Mask>, out: &mut BTreeSet<Cone>) {
        let floor = cur.first().copied();
        for &i in indeps {
            if floor.is_none_or(|f| bits::is_subset(i, f)) {
                out.insert(Cone { indep: i, chain: cur.clone() });
            }
        }
        let last = cur.last().copied();
        for &f in proper {
            if last.is_none_or(|l| l != f && bits::is_subset(l, f)) {
                cur.push(f);
                go(proper, indeps, cur, out);
                cur.pop();
            }
        }
    }
    go(&proper, &indeps, &mut Vec::new(), &mut support);
    Ok(BergmanSignature { n: m.n(), support })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::m;
    use crate::GroundSet;

    fn octahedron_family() -> [(i64, Matroid); 4] {
        [
            (1, Matroid::uniform_numbered(2, 4).unwrap()),
            (-1, m(4, &["12", "13", "14", "23", "24"])),
            (-1, m(4, &["13", "14", "23", "24", "34"])),
            (1, m(4, &["13", "14", "23", "24"])),
        ]
    }

    #[test]
    fn g_of_u24_is_one_word() {
        let g = g_invariant(&Matroid::uniform_numbered(2, 4).unwrap()).unwrap();
        assert_eq!(g.terms().len(), 1);
        assert_eq!(g.coeff("yyxx"), 24);
        assert_eq!(g.swap_letters().coeff("xxyy"), 24);
        let b = g_invariant(&Matroid::boolean(GroundSet::numbered(2))).unwrap();
        assert_eq!(b.coeff("yy"), 2);
    }

    #[test]
    fn g_kills_the_octahedron() {
        let fam = octahedron_family();
        let gs: Vec<WordSum> = fam.iter().map(|(_, x)| g_invariant(x).unwrap()).collect();
        let sum = WordSum::signed_sum(fam.iter().zip(&gs).map(|((s, _), g)| (*s, g)));
        assert!(sum.is_zero(), "{sum:?}");
    }

    #[test]
    fn g_agrees_with_brute_force_orderings() {
        let x = m(4, &["12", "13", "14", "23", "24"]);
        let mut brute: BTreeMap<String, i64> = BTreeMap::new();
        let mut perm: Vec<usize> = (0..4).collect();
        // Heap's algorithm over all 24 orderings
        fn heap(k: usize, p: &mut Vec<usize>, x: &Matroid, out: &mut BTreeMap<String, i64>) {
            if k == 1 {
                let mut s = 0;
                let mut w = String::new();
                for &e in p.iter() {
                    let r = x.rank_of(s);
                    s |= 1 << e;
                    w.push(if x.rank_of(s) > r { 'y' } else { 'x' });
                }
                *out.entry(w).or_insert(0) += 1;
                return;
            }
            for i in 0..k {
                heap(k - 1, p, x, out);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                p.swap(j, k - 1);
            }
        }
        heap(4, &mut perm, &x, &mut brute);
        assert_eq!(g_invariant(&x).unwrap().terms(), &brute);
    }

    #[test]
    fn bergman_counts() {
        let u12 = Matroid::uniform_numbered(1, 2).unwrap();
        assert_eq!(bergman_signature(&u12).unwrap().support().len(), 4);
        let b = Matroid::boolean(GroundSet::numbered(3));
        let all = stellahedral_cones(3).unwrap();
        let sig = bergman_signature(&b).unwrap();
        assert_eq!(sig.support().len(), all.len());
        assert!(all.iter().all(|c| sig.value(c) == 1 && c.in_fan_of(&b)));
    }

    #[test]
    fn bergman_kills_the_octahedron() {
        let fam = octahedron_family();
        let sigs: Vec<BergmanSignature> = fam.iter().map(|(_, x)| bergman_signature(x).unwrap()).collect();
        assert!(BergmanSignature::signed_sum(fam.iter().zip(&sigs).map(|((s, _), w)| (*s, w))).is_empty());
    }

    #[test]
    fn caps() {
        assert!(g_invariant(&Matroid::uniform_numbered(2, 9).unwrap()).is_err());
        assert!(stellahedral_cones(8).is_err());
    }
}
