use super::bits::{self, Mask};
use super::Matroid;
use crate::poly::IntPoly;

impl Matroid {
    /// Flats grouped by rank, each group in increasing mask order.
    pub fn flats_by_rank(&self) -> &[Vec<Mask>] {
        self.0.flats.get_or_init(|| {
            let mut out = vec![Vec::new(); self.rank() + 1];
            for s in 0..=self.full() {
                if self.is_flat(s) {
                    out[self.rank_of(s)].push(s);
                }
            }
            out
        })
    }

    pub fn flats(&self) -> impl Iterator<Item = Mask> + '_ {
        self.flats_by_rank().iter().flatten().copied()
    }

    /// Minimal dependent sets, in increasing mask order.
    pub fn circuits(&self) -> &[Mask] {
        self.0.circuits.get_or_init(|| {
            (1..=self.full())
                .filter(|&s| !self.is_independent(s) && bits::elements(s).all(|e| self.is_independent(s & !(1 << e))))
                .collect()
        })
    }

    /// Circuits with their smallest element removed.
    pub fn broken_circuits(&self) -> Vec<Mask> {
        self.circuits().iter().map(|&c| c & (c - 1)).collect()
    }

    /// Whether `s` contains no broken circuit. A loop makes every set fail,
    /// since its broken circuit is empty.
    pub fn is_nbc(&self, s: Mask) -> bool {
        self.circuits().iter().all(|&c| !bits::is_subset(c & (c - 1), s))
    }

    /// The nbc sets graded by cardinality; index `i` holds the `i`-sets.
    pub fn nbc_sets(&self) -> Vec<Vec<Mask>> {
        let mut out = vec![Vec::new(); self.rank() + 1];
        if self.has_loops() {
            return out;
        }
        for s in 0..=self.full() {
            if self.is_nbc(s) {
                out[bits::size(s)].push(s);
            }
        }
        out
    }

    /// Second characterization of nbc sets: for every element `e`, the
    /// elements of `s` larger than `e`, together with `e`, are independent.
    pub fn is_nbc_by_independence(&self, s: Mask) -> bool {
        (0..self.n()).all(|e| {
            let above = s & !bits::full(e + 1);
            self.is_independent(above | 1 << e)
        })
    }

    /// `π_M(t) = Σ_i |nbc_i| t^i`.
    pub fn poincare(&self) -> IntPoly {
        IntPoly::from_coeffs(self.nbc_sets().iter().map(|v| v.len() as i64))
    }

    /// Connected components as masks, ordered by smallest element.
    pub fn components(&self) -> Vec<Mask> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &c in self.circuits() {
            let mut it = bits::elements(c);
            if let Some(first) = it.next() {
                for e in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, e));
                    parent[a] = b;
                }
            }
        }
        let mut comps: Vec<Mask> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for e in 0..n {
            let r = find(&mut parent, e);
            if root_of[r] == usize::MAX {
                root_of[r] = comps.len();
                comps.push(0);
            }
            comps[root_of[r]] |= 1 << e;
        }
        debug_assert_eq!(comps.iter().map(|&c| self.rank_of(c)).sum::<usize>(), self.rank(), "components must split the rank");
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Dimension of the base polytope: `|E|` minus the number of components.
    pub fn dimension(&self) -> usize {
        self.n() - self.components().len()
    }

    /// Whether every `rank`-subset is a basis.
    pub fn is_uniform(&self) -> bool {
        let total = binomial(self.n(), self.rank());
        self.bases().len() as u64 == total
    }

    /// Characteristic polynomial from the Möbius function of the lattice of
    /// flats; zero when there are loops.
    pub fn char_poly(&self) -> IntPoly {
        if self.has_loops() {
            return IntPoly::zero();
        }
        let flats: Vec<Mask> = self.flats().collect();
        let mut mu = vec![0i64; flats.len()];
        let mut p = IntPoly::zero();
        // flats are listed by rank, so every proper subflat precedes its superflat
        for (i, &f) in flats.iter().enumerate() {
            mu[i] = if f == 0 {
                1
            } else {
                -flats[..i].iter().zip(&mu).filter(|(&g, _)| g != f && bits::is_subset(g, f)).map(|(_, &m)| m).sum::<i64>()
            };
            p.add_term((self.rank() - self.rank_of(f)) as u32, mu[i]);
        }
        p
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}
