#![allow(dead_code)]

use proptest::prelude::*;
use valuator::matroid::bits::{self, Mask};
use valuator::{GroundSet, Matroid, Rat};

/// Matroid on `1..=n` from bases written as digit strings.
pub fn m(n: usize, bases: &[&str]) -> Matroid {
    Matroid::from_words(GroundSet::numbered(n), bases).unwrap()
}

pub fn q(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

pub fn u(k: usize, n: usize) -> Matroid {
    Matroid::uniform_numbered(k, n).unwrap()
}

/// `N`: every pair except `{3,4}`.
pub fn n_cell() -> Matroid {
    m(4, &["12", "13", "14", "23", "24"])
}

/// `N′`: every pair except `{1,2}`.
pub fn n_prime() -> Matroid {
    m(4, &["13", "14", "23", "24", "34"])
}

/// `N″`: the square.
pub fn square() -> Matroid {
    m(4, &["13", "14", "23", "24"])
}

/// Cycle matroid of a multigraph; loops and parallel edges allowed.
pub fn graphic(v: usize, edges: &[(usize, usize)]) -> Matroid {
    let n = edges.len();
    let forest = |s: Mask| {
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        bits::elements(s).all(|e| {
            let (a, b) = (find(&mut parent, edges[e].0), find(&mut parent, edges[e].1));
            parent[a] = b;
            a != b
        })
    };
    let indep: Vec<Mask> = (0..1u32 << n).filter(|&s| forest(s)).collect();
    let r = indep.iter().map(|&s| bits::size(s)).max().unwrap_or(0);
    Matroid::new(GroundSet::numbered(n), indep.into_iter().filter(|&s| bits::size(s) == r)).unwrap()
}

/// Rank straight from the bases.
pub fn rank_oracle(m: &Matroid, s: Mask) -> usize {
    m.bases().iter().map(|&b| bits::size(b & s)).max().unwrap_or(0)
}

/// Graphic matroids on up to 5 vertices and 7 edges, and uniform matroids
/// on up to 6 elements.
pub fn arb_matroid() -> impl Strategy<Value = Matroid> {
    let graph =
        (2usize..=5).prop_flat_map(|v| (Just(v), prop::collection::vec((0..v, 0..v), 1..=7))).prop_map(|(v, edges)| graphic(v, &edges));
    let uniform = (1usize..=6).prop_flat_map(|n| (0..=n, Just(n))).prop_map(|(k, n)| u(k, n));
    prop_oneof![3 => graph, 1 => uniform]
}

/// A matroid together with a subset of its ground set.
pub fn arb_matroid_and_subset() -> impl Strategy<Value = (Matroid, Mask)> {
    arb_matroid().prop_flat_map(|m| {
        let full = m.full();
        (Just(m), (0..=full).prop_map(move |s| s & full))
    })
}
