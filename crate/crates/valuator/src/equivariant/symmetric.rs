//! Characters of skew Specht modules of symmetric groups.

use super::EqError;
use std::collections::BTreeSet;

/// A partition with its parts weakly decreasing and no zero parts.
pub type Partition = Vec<usize>;

fn normalized(p: &[usize]) -> Partition {
    let mut v: Vec<usize> = p.iter().copied().filter(|&x| x > 0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// All partitions of `n`, largest first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A skew shape `λ/μ` with `μ ⊆ λ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: &[usize], inner: &[usize]) -> Result<Self, EqError> {
        let (outer, inner) = (normalized(outer), normalized(inner));
        let fits = inner.len() <= outer.len() && inner.iter().zip(&outer).all(|(a, b)| a <= b);
        if !fits {
            return Err(EqError::Shape(format!("{inner:?} is not contained in {outer:?}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(p: &[usize]) -> Result<Self, EqError> {
        Self::new(p, &[])
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.iter().sum::<usize>() - self.inner.iter().sum::<usize>()
    }
}

fn contains(big: &[usize], small: &[usize]) -> bool {
    small.len() <= big.len() && small.iter().zip(big).all(|(a, b)| a <= b)
}

/// Beta numbers `λ_i + L − i` for a fixed length `L ≥ ℓ(λ)`.
fn beta(p: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|i| p.get(i).copied().unwrap_or(0) + len - 1 - i).collect()
}

fn from_beta(b: &BTreeSet<usize>) -> Partition {
    let len = b.len();
    let v: Vec<usize> = b.iter().rev().enumerate().map(|(i, &x)| x - (len - 1 - i)).collect();
    normalized(&v)
}

/// Shapes `ν` with `λ/ν` a border strip of size `r`, each with the sign
/// `(−1)^{height}`.
fn strips(outer: &[usize], r: usize) -> Vec<(Partition, i64)> {
    let len = outer.len() + r;
    let b: BTreeSet<usize> = beta(outer, len).into_iter().collect();
    let mut out = Vec::new();
    for &x in &b {
        if x < r || b.contains(&(x - r)) {
            continue;
        }
        let between = b.range(x - r + 1..x).count();
        let mut nb = b.clone();
        nb.remove(&x);
        nb.insert(x - r);
        out.push((from_beta(&nb), if between.is_multiple_of(2) { 1 } else { -1 }));
    }
    out
}

/// `χ^{λ/μ}` at a permutation of cycle type `cycles`, by removing border
/// strips of the cycle lengths in turn.
pub fn mn_skew_character(shape: &SkewShape, cycles: &[usize]) -> Result<i64, EqError> {
    let total: usize = cycles.iter().sum();
    if total != shape.size() {
        return Err(EqError::Shape(format!("cycle type {cycles:?} has size {total}, the shape has size {}", shape.size())));
    }
    fn go(outer: &[usize], inner: &[usize], cycles: &[usize]) -> i64 {
        let Some((&r, rest)) = cycles.split_first() else {
            return i64::from(outer == inner);
        };
        strips(outer, r).into_iter().filter(|(nu, _)| contains(nu, inner)).map(|(nu, s)| s * go(&nu, inner, rest)).sum()
    }
    Ok(go(&shape.outer, &shape.inner, cycles))
}

/// Number of standard Young tableaux of the skew shape, by removing
/// outer corners one at a time.
pub fn standard_tableaux(shape: &SkewShape) -> u64 {
    fn go(outer: &mut Vec<usize>, inner: &[usize]) -> u64 {
        if outer.iter().sum::<usize>() == inner.iter().sum::<usize>() {
            return 1;
        }
        let mut total = 0;
        for i in 0..outer.len() {
            let corner = outer[i] > 0 && outer.get(i + 1).is_none_or(|&b| b < outer[i]);
            if corner && outer[i] > inner.get(i).copied().unwrap_or(0) {
                outer[i] -= 1;
                total += go(outer, inner);
                outer[i] += 1;
            }
        }
        total
    }
    go(&mut shape.outer.clone(), &shape.inner)
}

/// The skew shape `[h−2i+1, (k−2i+1)^i] / [k−2i, (k−2i−1)^{i−1}]` carrying
/// the `t^i` coefficient of the KL difference for a relaxed hyperplane.
pub fn kl_correction_shape(k: usize, h: usize, i: usize) -> Result<SkewShape, EqError> {
    if i == 0 || 2 * i >= k || h + 1 < k {
        return Err(EqError::Shape(format!("no correction term for k={k}, h={h}, i={i}")));
    }
    let mut outer = vec![h + 1 - 2 * i];
    outer.extend(std::iter::repeat_n(k + 1 - 2 * i, i));
    let mut inner = vec![k - 2 * i];
    inner.extend(std::iter::repeat_n(k - 2 * i - 1, i - 1));
    SkewShape::new(&outer, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_skew_characters() {
        let s = SkewShape::new(&[2, 1], &[1]).unwrap();
        assert_eq!(mn_skew_character(&s, &[1, 1]).unwrap(), 2);
        assert_eq!(mn_skew_character(&s, &[2]).unwrap(), 0);
        assert_eq!(standard_tableaux(&s), 2);
        for h in 1..6 {
            let triv = SkewShape::straight(&[h]).unwrap();
            for p in partitions(h) {
                assert_eq!(mn_skew_character(&triv, &p).unwrap(), 1);
            }
        }
        assert!(mn_skew_character(&s, &[3]).is_err());
    }

    #[test]
    fn sign_and_standard_characters() {
        let sign = SkewShape::straight(&[1, 1, 1]).unwrap();
        assert_eq!(mn_skew_character(&sign, &[2, 1]).unwrap(), -1);
        assert_eq!(mn_skew_character(&sign, &[3]).unwrap(), 1);
        let std = SkewShape::straight(&[3, 1]).unwrap();
        // fixed points minus one
        assert_eq!(mn_skew_character(&std, &[1, 1, 1, 1]).unwrap(), 3);
        assert_eq!(mn_skew_character(&std, &[2, 1, 1]).unwrap(), 1);
        assert_eq!(mn_skew_character(&std, &[4]).unwrap(), -1);
    }

    #[test]
    fn identity_value_counts_tableaux() {
        for n in 1..=6 {
            for outer in partitions(n) {
                for inner_size in 0..n {
                    for inner in partitions(inner_size).into_iter().chain([vec![]]) {
                        if let Ok(s) = SkewShape::new(&outer, &inner) {
                            if s.size() == 0 {
                                continue;
                            }
                            let ones = vec![1; s.size()];
                            assert_eq!(mn_skew_character(&s, &ones).unwrap(), standard_tableaux(&s) as i64, "{s:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn correction_shapes_have_size_h() {
        for k in 3..=6 {
            for h in k..=6 {
                for i in 1..k {
                    if 2 * i < k {
                        assert_eq!(kl_correction_shape(k, h, i).unwrap().size(), h);
                    }
                }
            }
        }
    }
}
