use super::{flags_above, flat_image, increasing_tuples, map_labels, Deg, Functor, GradedMap, GradedSpace, Label, WeakMap};
use crate::matroid::bits::Mask;
use crate::poly::IntPoly;
use crate::Matroid;
use std::collections::HashMap;
use std::sync::Mutex;

/// `s_j(R) = min(Z_{≥j} ∖ R)` with `R` a bitmask over `1..=r` (bit `m−1`
/// for `m`).
fn s_index(j: usize, r_set: u32) -> usize {
    (j..).find(|&m| m > 32 || r_set >> (m - 1) & 1 == 0).expect("unbounded search")
}

/// The bigraded flag labels of `KL(M_floor)`, with flats recorded as flats
/// of `m` containing `floor`. Returns `(degree, header, flags)` triples;
/// the header is `[i, R, r, a_1, …, a_{r−1}]`.
fn kl_pieces(m: &Matroid, floor: Mask) -> Vec<(Deg, Vec<u32>, Vec<Mask>)> {
    let base = m.rank_of(floor);
    let k = m.rank() - base;
    let mut out = vec![((0, 0), Vec::new(), Vec::new())];
    for i in 1..k {
        if 2 * i >= k {
            break;
        }
        for r in 1..=i {
            for r_set in 0u32..(1 << r) {
                for mid in increasing_tuples(1, i, r - 1) {
                    // a_0 = 0, a_1..a_{r−1} = mid, a_r = i, a_{r+1} = k − i
                    let mut a = Vec::with_capacity(r + 2);
                    a.push(0);
                    a.extend_from_slice(&mid);
                    a.push(i);
                    a.push(k - i);
                    let ranks: Vec<usize> = (1..=r).map(|j| base + k - a[s_index(r + 1 - j, r_set)] - a[r - j]).collect();
                    debug_assert!(ranks.windows(2).all(|w| w[0] < w[1]));
                    let mut header = vec![i as u32, r_set, r as u32];
                    header.extend(mid.iter().map(|&x| x as u32));
                    let deg: Deg = (i as i32, r_set.count_ones() as i32);
                    for fl in flags_above(m, floor, &ranks) {
                        out.push((deg, header.clone(), fl));
                    }
                }
            }
        }
    }
    out
}

fn header_len(l: &[u32], offset: usize) -> usize {
    // an empty tail is the τ summand; otherwise i, R, r and r − 1 chain entries
    if l.len() == offset {
        0
    } else {
        3 + l[offset + 2] as usize - 1
    }
}

/// The Kazhdan–Lusztig functor: bigraded sums of Whitney functors whose
/// alternating dimension count is `P_M(t)`; zero on matroids with loops.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kl;

impl Functor for Kl {
    fn name(&self) -> String {
        "kl".into()
    }
    fn equivariant(&self) -> bool {
        true
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        if m.has_loops() {
            return GradedSpace::zero();
        }
        GradedSpace::from_labels(kl_pieces(m, 0).into_iter().map(|(d, mut h, fl)| {
            h.extend(fl);
            (d, h)
        }))
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        if tgt.is_zero() {
            return GradedMap::zero();
        }
        map_labels(src, tgt, false, |_, l| {
            let h = header_len(l, 0);
            let mut out = l.clone();
            for slot in out.iter_mut().skip(h) {
                *slot = flat_image(f, *slot)?;
            }
            Some((out, 1))
        })
    }
}

/// The functor categorifying the Z-polynomial: for each flat `F`, a copy of
/// `KL(M_F)` shifted by `(rk F, 0)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sigma;

impl Functor for Sigma {
    fn name(&self) -> String {
        "sigma".into()
    }
    fn equivariant(&self) -> bool {
        true
    }
    fn obj(&self, m: &Matroid) -> GradedSpace {
        GradedSpace::from_labels(m.flats().flat_map(|f| {
            let rf = m.rank_of(f) as i32;
            kl_pieces(m, f).into_iter().map(move |((i, j), h, fl)| {
                let mut l: Label = vec![f];
                l.extend(h);
                l.extend(fl);
                ((i + rf, j), l)
            })
        }))
    }
    fn mor(&self, f: &WeakMap, src: &GradedSpace, tgt: &GradedSpace) -> GradedMap {
        map_labels(src, tgt, false, |_, l| {
            let flat = l[0];
            let img = flat_image(f, flat)?;
            if img != f.apply(flat) {
                return None;
            }
            let h = 1 + header_len(l, 1);
            let mut out = l.clone();
            out[0] = img;
            for slot in out.iter_mut().skip(h) {
                *slot = flat_image(f, *slot)?;
            }
            Some((out, 1))
        })
    }
}

/// Kazhdan–Lusztig and Z-polynomials from the defining recursion, memoized
/// by labelled matroid.
///
/// `t^{rk} P_M(1/t) − P_M(t) = Σ_{F ≠ ∅} χ_{M^F}(t) P_{M_F}(t)` with
/// `deg P_M < rk/2`, so each low coefficient of `P_M` is minus the
/// corresponding coefficient of the right side.
#[derive(Default)]
pub struct KlOracle {
    memo: Mutex<HashMap<Matroid, IntPoly>>,
}

impl KlOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn p(&self, m: &Matroid) -> IntPoly {
        if let Some(p) = self.memo.lock().expect("memo lock").get(m) {
            return p.clone();
        }
        let p = self.compute(m);
        self.memo.lock().expect("memo lock").insert(m.clone(), p.clone());
        p
    }

    fn compute(&self, m: &Matroid) -> IntPoly {
        if m.has_loops() {
            return IntPoly::zero();
        }
        let k = m.rank();
        if k == 0 {
            return IntPoly::one();
        }
        let mut rhs = IntPoly::zero();
        for f in m.flats().filter(|&f| f != 0) {
            rhs = rhs + m.restriction(f).char_poly() * self.p(&m.contraction(f));
        }
        let mut p = IntPoly::one();
        for i in 1..k {
            if 2 * i >= k {
                break;
            }
            p.add_term(i as u32, -rhs.coeff(i as u32));
        }
        debug_assert_eq!(p.reverse(k as u32) - p.clone(), rhs, "KL recursion is inconsistent");
        p
    }

    /// `Z_M(t) = Σ_F t^{rk F} P_{M_F}(t)`.
    pub fn z(&self, m: &Matroid) -> IntPoly {
        m.flats().fold(IntPoly::zero(), |acc, f| acc + self.p(&m.contraction(f)).shift(m.rank_of(f) as u32))
    }
}

/// `P_M(t)` from the recursion.
pub fn kl_oracle(m: &Matroid) -> IntPoly {
    KlOracle::new().p(m)
}

/// `Z_M(t)` from the recursion.
pub fn z_oracle(m: &Matroid) -> IntPoly {
    KlOracle::new().z(m)
}
