//! Subsets of a ground set `{0,…,n−1}` encoded as bit masks.

/// A subset of the ground set; bit `i` is element `i` in ground order.
pub type Mask = u32;

/// Largest supported ground-set size.
pub const MAX_GROUND: usize = 12;

pub fn full(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

pub fn size(m: Mask) -> usize {
    m.count_ones() as usize
}

pub fn contains(m: Mask, e: usize) -> bool {
    m >> e & 1 == 1
}

pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Elements of `m` in increasing order.
pub fn elements(m: Mask) -> impl Iterator<Item = usize> {
    let mut rest = m;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(e)
    })
}

/// Smallest element, if any.
pub fn min_element(m: Mask) -> Option<usize> {
    (m != 0).then(|| m.trailing_zeros() as usize)
}

/// Re-indexes `m ⊆ within` so that the elements of `within` become `0..|within|`.
pub fn compress(m: Mask, within: Mask) -> Mask {
    debug_assert!(is_subset(m, within));
    elements(within).enumerate().filter(|&(_, e)| contains(m, e)).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Inverse of [`compress`].
pub fn expand(m: Mask, within: Mask) -> Mask {
    elements(within).enumerate().filter(|&(i, _)| contains(m, i)).fold(0, |acc, (_, e)| acc | 1 << e)
}

/// All `k`-subsets of `{0,…,n−1}` in increasing numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Mask> {
    (0..=full(n)).filter(|&m| size(m) == k).collect()
}

/// All subsets of `m`, including `0` and `m`.
pub fn subsets_of(m: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some((cur.wrapping_sub(m)) & m) };
        Some(cur)
    })
}

/// Sign of `u_a · u_b = ± u_{a∪b}` in an exterior algebra; `a`, `b` disjoint.
pub fn wedge_sign(a: Mask, b: Mask) -> i64 {
    debug_assert_eq!(a & b, 0);
    let inversions: u32 = elements(b).map(|e| (a >> e >> 1).count_ones()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compress_expand_round_trip() {
        let within = 0b1011_0110;
        for m in subsets_of(within) {
            assert_eq!(expand(compress(m, within), within), m);
        }
        assert_eq!(subsets_of(within).count(), 1 << size(within));
    }

    #[test]
    fn wedge_sign_counts_inversions() {
        // u_{2} u_{1} = −u_{12}
        assert_eq!(wedge_sign(0b100, 0b010), -1);
        assert_eq!(wedge_sign(0b010, 0b100), 1);
        // u_{3} u_{1,2}: two inversions
        assert_eq!(wedge_sign(0b1000, 0b0110), 1);
        assert_eq!(wedge_sign(0, 0b111), 1);
    }
}
