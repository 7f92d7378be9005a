use super::basic::nbc_space;
use super::{Functor, GradedMap, GradedSpace, WeakMap};
use crate::matroid::bits::{self, wedge_sign, Mask};
use crate::{Matroid, QSparse, Rat};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

type Expansion = Arc<Vec<(Mask, i64)>>;

/// Straightening data for one matroid: the circuits together with a memo
/// of nbc expansions of monomials.
struct Straightener {
    m: Matroid,
    memo: Mutex<HashMap<Mask, Expansion>>,
}

impl Straightener {
    fn new(m: Matroid) -> Self {
        Straightener { m, memo: Mutex::new(HashMap::new()) }
    }

    /// Expansion of the sorted monomial `u_T` in the nbc basis.
    fn expand(&self, t: Mask) -> Expansion {
        if let Some(v) = self.memo.lock().expect("memo lock").get(&t) {
            return v.clone();
        }
        let v = Arc::new(self.compute(t));
        self.memo.lock().expect("memo lock").insert(t, v.clone());
        v
    }

    fn compute(&self, t: Mask) -> Vec<(Mask, i64)> {
        if !self.m.is_independent(t) {
            return Vec::new();
        }
        let Some(&c) = self.m.circuits().iter().find(|&&c| bits::is_subset(c & (c - 1), t)) else {
            return vec![(t, 1)];
        };
        // The circuit relation solved for the broken circuit B = C ∖ min C:
        // u_B = Σ_{i≥2} (−1)^i u_{C∖c_i}, then multiplied by u_{T∖B}.
        let low = c & c.wrapping_neg();
        let broken = c & !low;
        let rest = t & !broken;
        let eps = wedge_sign(broken, rest);
        let mut acc: HashMap<Mask, i64> = HashMap::new();
        for (pos, ci) in bits::elements(c).enumerate().skip(1) {
            let face = c & !(1 << ci);
            let sign = (if pos % 2 == 1 { 1 } else { -1 }) * eps * wedge_sign(face, rest);
            for &(u, coef) in self.expand(face | rest).iter() {
                *acc.entry(u).or_insert(0) += sign * coef;
            }
        }
        let mut out: Vec<(Mask, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        out.sort_unstable();
        out
    }
}

/// The Orlik–Solomon functor, presented on the nbc basis. Morphisms send
/// `u_e ↦ u_{φ(e)}` and are straightened in the target.
#[derive(Default)]
pub struct Os {
    cache: Mutex<HashMap<Matroid, Arc<Straightener>>>,
}

impl Os {
    pub fn new() -> Self {
        Self::default()
    }

    fn straightener(&self, m: &Matroid) -> Arc<Straightener> {
        self.cache.lock().expect("cache lock").entry(m.clone()).or_insert_with(|| Arc::new(Straightener::new(m.clone()))).clone()
    }

    /// The monomial `u_T` (elements in increasing order) written in the nbc
    /// basis of `m`.
    pub fn straighten(&self, m: &Matroid, t: Mask) -> Vec<(Mask, i64)> {
        self.straightener(m).expand(t).as_ref().clone()
    }
}

impl Functor for Os {
    fn name(&self) -> String {
        "os".into()
    }
    fn equivariant(&self) -> bool {
        true
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        nbc_space(m)
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        let mut out = GradedMap::zero();
        if tgt.is_zero() {
            return out;
        }
        let st = self.straightener(f.target());
        for d in src.degrees() {
            let mut trip = Vec::new();
            for (col, l) in src.labels(d).iter().enumerate() {
                let s = l[0];
                let sign = f.monomial_sign(s);
                for &(u, coef) in st.expand(f.apply(s)).iter() {
                    let row = tgt.index_of(d, &[u]).expect("straightening lands in the nbc basis");
                    trip.push((row, col, Rat::from_integer((sign * coef).into())));
                }
            }
            out.insert(d, QSparse::from_triplets(tgt.dim(d), src.dim(d), trip));
        }
        out
    }
}
