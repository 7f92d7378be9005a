//! The named matroids every sweep runs over.

use std::collections::BTreeSet;
use valuator::decomp::{relaxation_decomposition, Decomposition};
use valuator::equivariant::PermGroup;
use valuator::matroid::bits::{self, Mask};
use valuator::{GroundSet, Matroid, MatroidError};

/// A matroid with a display name.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub matroid: Matroid,
}

/// Named matroids, distinct as basis families on their ground sets.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<Entry>,
}

/// Graphic matroid of a connected graph on vertices `0..v`; element `i`
/// is edge `i`, labelled `i + 1`.
pub fn graphic(v: usize, edges: &[(usize, usize)]) -> Result<Matroid, MatroidError> {
    let ground = GroundSet::numbered(edges.len());
    let forest = |s: Mask| {
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
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
    Matroid::new(ground, bits::subsets_of_size(edges.len(), v - 1).into_iter().filter(|&s| forest(s)))
}

/// The wheel with `n` spokes: spokes are elements `1..=n`, rim edges follow.
pub fn wheel(n: usize) -> Result<Matroid, MatroidError> {
    let mut edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    edges.extend((1..=n).map(|i| (i, i % n + 1)));
    graphic(n + 1, &edges)
}

/// The complete graph on four vertices.
pub fn k4() -> Result<Matroid, MatroidError> {
    graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Flats of `m` that are stressed and whose relaxation adds bases.
pub fn relaxable_flats(m: &Matroid) -> Vec<Mask> {
    m.flats().filter(|&f| !m.cusp(f).is_empty() && m.is_stressed(f).unwrap_or(false)).collect()
}

fn flat_name(m: &Matroid, f: Mask) -> String {
    m.labels_of(f).join("")
}

impl Catalog {
    /// Uniform matroids on at most seven elements, `K4`, the wheels `W3`
    /// and `W4`, the `Π`/`Λ` pairs on at most six elements, and every single
    /// relaxation of those at a stressed flat.
    pub fn standard() -> Self {
        let mut c = Catalog::default();
        for n in 1..=7 {
            for k in 0..=n {
                c.push(format!("U{k},{n}"), Matroid::uniform_numbered(k, n).expect("valid parameters"));
            }
        }
        c.push("K4".into(), k4().expect("K4 is connected"));
        c.push("W3".into(), wheel(3).expect("wheel"));
        c.push("W4".into(), wheel(4).expect("wheel"));
        for n in 2..=6 {
            let ground = GroundSet::numbered(n);
            for h in 1..n {
                for k in 1..n {
                    for r in 0..k.min(h + 1) {
                        if k - r > n - h {
                            continue;
                        }
                        let (pi, lambda) = Matroid::pi_lambda(r, k, bits::full(h), &ground).expect("checked range");
                        if pi != lambda {
                            c.push(format!("Pi[{r},{k},{h},{n}]"), pi);
                            c.push(format!("Lambda[{r},{k},{h},{n}]"), lambda);
                        }
                    }
                }
            }
        }
        let base: Vec<Entry> = c.entries.clone();
        for e in &base {
            for f in relaxable_flats(&e.matroid) {
                let relaxed = e.matroid.relax(f).expect("stressed flat");
                c.push(format!("{}~{}", e.name, flat_name(&e.matroid, f)), relaxed);
            }
        }
        c
    }

    /// Adds an entry unless the same matroid is already present.
    pub fn push(&mut self, name: String, matroid: Matroid) {
        if !self.entries.iter().any(|e| e.matroid == matroid) {
            self.entries.push(Entry { name, matroid });
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Matroid> {
        self.entries.iter().find(|e| e.name == name).map(|e| &e.matroid)
    }

    /// Entries with at most `n` elements.
    pub fn up_to(&self, n: usize) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(move |e| e.matroid.n() <= n)
    }

    /// Relaxation decompositions of every entry with at most `max_n`
    /// elements at each relaxable flat, once for the trivial group and once
    /// for the full automorphism group when that gives a larger orbit.
    pub fn relaxation_decompositions(&self, max_n: usize) -> Vec<(String, Decomposition)> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for e in self.up_to(max_n) {
            let flats = relaxable_flats(&e.matroid);
            if flats.is_empty() {
                continue;
            }
            let aut = PermGroup::automorphisms_of(&e.matroid).expect("small automorphism group");
            for f in flats {
                let name = format!("{}@{}", e.name, flat_name(&e.matroid, f));
                let plain = relaxation_decomposition(&e.matroid, f, None).expect("relaxable flat");
                if seen.insert(plain.faces().to_vec()) {
                    out.push((name.clone(), plain));
                }
                if aut.orbit(f).iter().filter(|&&g| !e.matroid.cusp(g).is_empty()).count() > 1 {
                    let orbit = relaxation_decomposition(&e.matroid, f, Some(aut.elements())).expect("relaxable flat");
                    if seen.insert(orbit.faces().to_vec()) {
                        out.push((format!("{name}/aut"), orbit));
                    }
                }
            }
        }
        out
    }
}

/// Every matroid on `n` elements, as basis families on `1..=n`.
pub fn all_matroids(n: usize) -> Vec<Matroid> {
    let ground = GroundSet::numbered(n);
    let mut out = Vec::new();
    for k in 0..=n {
        let sets = bits::subsets_of_size(n, k);
        for pick in 1u64..(1u64 << sets.len()) {
            let bases = (0..sets.len()).filter(|i| pick >> i & 1 == 1).map(|i| sets[i]);
            if let Ok(m) = Matroid::new(ground.clone(), bases) {
                out.push(m);
            }
        }
    }
    out
}

/// The octahedron: `U_{2,4}` cut along the square `{13,14,23,24}`.
pub fn octahedron() -> Decomposition {
    let ground = GroundSet::numbered(4);
    let n = Matroid::from_words(ground.clone(), &["12", "13", "14", "23", "24"]).expect("matroid");
    let n2 = Matroid::from_words(ground, &["13", "14", "23", "24", "34"]).expect("matroid");
    Decomposition::from_cells(Matroid::uniform_numbered(2, 4).expect("matroid"), [n, n2]).expect("decomposition")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphic_examples() {
        let k = k4().unwrap();
        assert_eq!((k.rank(), k.bases().len()), (3, 16));
        assert_eq!(wheel(3).unwrap().bases().len(), 16);
        assert_eq!(wheel(4).unwrap().bases().len(), 45);
    }

    #[test]
    fn small_matroid_counts() {
        // labelled matroids on 2, 3 and 4 elements
        assert_eq!(all_matroids(2).len(), 5);
        assert_eq!(all_matroids(3).len(), 16);
        assert_eq!(all_matroids(4).len(), 68);
    }

    #[test]
    fn catalog_has_relaxations() {
        let c = Catalog::standard();
        assert!(c.get("K4").is_some());
        assert!(c.entries().iter().any(|e| e.name.contains('~')));
        for e in c.entries() {
            assert!(Matroid::new(e.matroid.ground().clone(), e.matroid.bases().iter().copied()).is_ok());
        }
    }
}
