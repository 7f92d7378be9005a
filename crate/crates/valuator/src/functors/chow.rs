use super::{flat_image, map_labels, Deg, Functor, GradedMap, GradedSpace, Label, WeakMap};
use crate::matroid::bits::{self, Mask};
use crate::Matroid;

/// Feichtner–Yuzvinsky chains above `floor`: flats `floor ⊊ F_1 ⊊ ⋯ ⊊ F_r`
/// with exponents `0 < m_i < rk F_i − rk F_{i−1}`. Each item is
/// `(flats, exponents)`.
fn fy_chains(m: &Matroid, floor: Mask) -> Vec<(Vec<Mask>, Vec<u32>)> {
    let mut out = Vec::new();
    let mut flats = Vec::new();
    let mut exps = Vec::new();
    fn go(m: &Matroid, lo: Mask, flats: &mut Vec<Mask>, exps: &mut Vec<u32>, out: &mut Vec<(Vec<Mask>, Vec<u32>)>) {
        out.push((flats.clone(), exps.clone()));
        let r0 = m.rank_of(lo);
        for r in r0 + 2..=m.rank() {
            for &g in &m.flats_by_rank()[r] {
                if !bits::is_subset(lo, g) {
                    continue;
                }
                for e in 1..(r - r0) as u32 {
                    flats.push(g);
                    exps.push(e);
                    go(m, g, flats, exps, out);
                    flats.pop();
                    exps.pop();
                }
            }
        }
    }
    go(m, floor, &mut flats, &mut exps, &mut out);
    out
}

fn encode(head: &[u32], flats: &[Mask], exps: &[u32]) -> Label {
    let mut l = Vec::with_capacity(1 + head.len() + flats.len() + exps.len());
    l.push(flats.len() as u32);
    l.extend_from_slice(head);
    l.extend_from_slice(flats);
    l.extend_from_slice(exps);
    l
}

/// Maps every flat stored in a Chow label, leaving exponents alone.
fn map_chow_label(f: &WeakMap, l: &Label, heads: usize) -> Option<Label> {
    let r = l[0] as usize;
    let mut out = l.clone();
    for slot in out.iter_mut().skip(1).take(heads + r) {
        *slot = flat_image(f, *slot)?;
    }
    Some(out)
}

/// The Chow functor: the FY monomial basis graded by total exponent, zero on
/// matroids with loops.
#[derive(Clone, Copy, Debug, Default)]
pub struct Chow;

impl Functor for Chow {
    fn name(&self) -> String {
        "chow".into()
    }
    fn equivariant(&self) -> bool {
        true
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        if m.has_loops() {
            return GradedSpace::zero();
        }
        GradedSpace::from_labels(fy_chains(m, 0).into_iter().map(|(fl, ex)| {
            let deg: Deg = (ex.iter().sum::<u32>() as i32, 0);
            (deg, encode(&[], &fl, &ex))
        }))
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        if tgt.is_zero() {
            return GradedMap::zero();
        }
        map_labels(src, tgt, false, |_, l| map_chow_label(f, l, 0).map(|x| (x, 1)))
    }
}

/// The augmented Chow functor: monomials `y_{F_0} x_{F_1}^{m_1}⋯` graded by
/// `rk F_0 + Σ m_i`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AugChow;

impl Functor for AugChow {
    fn name(&self) -> String {
        "augchow".into()
    }
    fn equivariant(&self) -> bool {
        true
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        GradedSpace::from_labels(m.flats().flat_map(|f0| {
            let r0 = m.rank_of(f0) as u32;
            fy_chains(m, f0).into_iter().map(move |(fl, ex)| {
                let deg: Deg = ((r0 + ex.iter().sum::<u32>()) as i32, 0);
                (deg, encode(&[f0], &fl, &ex))
            })
        }))
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        map_labels(src, tgt, false, |_, l| map_chow_label(f, l, 1).map(|x| (x, 1)))
    }
}
