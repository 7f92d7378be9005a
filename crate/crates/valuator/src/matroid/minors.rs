use super::bits::{self, Mask};
use super::{GroundSet, Matroid, MatroidError};

impl Matroid {
    /// `M^S` on the elements of `S`: bases are the maximal intersections `B ∩ S`.
    pub fn restriction(&self, s: Mask) -> Matroid {
        let r = self.rank_of(s);
        let bases = self.bases().iter().filter(|&&b| bits::size(b & s) == r).map(|&b| bits::compress(b & s, s));
        Matroid::from_known_bases(self.ground().sub(s), bases)
    }

    /// `M_S` on the complement of `S`: bases `B ∖ S` over bases with `|B ∩ S| = rk S`.
    pub fn contraction(&self, s: Mask) -> Matroid {
        let r = self.rank_of(s);
        let rest = self.full() & !s;
        let bases: Vec<Mask> = self.bases().iter().filter(|&&b| bits::size(b & s) == r).map(|&b| bits::compress(b & rest, rest)).collect();
        let out = Matroid::from_known_bases(self.ground().sub(rest), bases);
        debug_assert_eq!(out, self.contraction_via_basis(s), "contraction depends on the chosen basis");
        out
    }

    /// Contraction computed by contracting one maximal independent subset of
    /// `S` and deleting the rest of `S`.
    fn contraction_via_basis(&self, s: Mask) -> Matroid {
        let i = bits::elements(s).fold(0, |acc, e| if self.is_independent(acc | 1 << e) { acc | 1 << e } else { acc });
        let rest = self.full() & !s;
        let bases: Vec<Mask> =
            self.bases().iter().filter(|&&b| bits::is_subset(i, b) && b & (s & !i) == 0).map(|&b| bits::compress(b & !i, rest)).collect();
        Matroid::from_known_bases(self.ground().sub(rest), bases)
    }

    /// `M^S ⊔ M_S` on the original ground set: the bases meeting `S` in a
    /// basis of `M^S`. This is the face of `P(M)` maximizing `δ_S`.
    pub fn split_at(&self, s: Mask) -> Matroid {
        let r = self.rank_of(s);
        self.with_bases(self.bases().iter().copied().filter(|&b| bits::size(b & s) == r))
    }

    /// Direct sum; the ground set is the concatenation of both ground sets.
    pub fn direct_sum(a: &Matroid, b: &Matroid) -> Result<Matroid, MatroidError> {
        let common: Vec<String> = a.ground().labels().iter().filter(|l| b.ground().labels().contains(l)).cloned().collect();
        if !common.is_empty() {
            return Err(MatroidError::Overlap(common));
        }
        let ground = GroundSet::new(a.ground().labels().iter().chain(b.ground().labels()).cloned())?;
        let shift = a.n();
        let bases: Vec<Mask> = a.bases().iter().flat_map(|&x| b.bases().iter().map(move |&y| x | y << shift)).collect();
        Ok(Matroid::from_known_bases(ground, bases))
    }

    /// The same matroid with its ground set listed in another order.
    pub fn reordered(&self, ground: &GroundSet) -> Result<Matroid, MatroidError> {
        let map = self.ground().transfer_to(ground)?;
        Ok(Matroid::from_known_bases(ground.clone(), self.bases().iter().map(|&b| map.apply_mask(b))))
    }

    /// `k`-subsets meeting `F` in `rk F + 1` elements.
    pub fn cusp(&self, f: Mask) -> Vec<Mask> {
        let r = self.rank_of(f);
        bits::subsets_of_size(self.n(), self.rank()).into_iter().filter(|&s| bits::size(s & f) == r + 1).collect()
    }

    /// Whether the flat `F` has uniform restriction and uniform contraction.
    pub fn is_stressed(&self, f: Mask) -> Result<bool, MatroidError> {
        if !self.is_flat(f) {
            return Err(MatroidError::NotAFlat(self.labels_of(f)));
        }
        Ok(self.restriction(f).is_uniform() && self.contraction(f).is_uniform())
    }

    /// Relaxation of a stressed flat: adds the cusp to the bases.
    pub fn relax(&self, f: Mask) -> Result<Matroid, MatroidError> {
        if !self.is_stressed(f)? {
            return Err(MatroidError::NotStressed(self.labels_of(f)));
        }
        let bases: Vec<Mask> = self.bases().iter().copied().chain(self.cusp(f)).collect();
        Matroid::new(self.ground().clone(), bases)
    }

    /// Relaxes several flats one at a time; each must be stressed in the
    /// matroid reached so far.
    pub fn relax_all(&self, flats: &[Mask]) -> Result<Matroid, MatroidError> {
        flats.iter().try_fold(self.clone(), |m, &f| m.relax(f))
    }

    /// `Π_{r,k,F,E} = U_{k−r, E∖F} ⊔ U_{r,F}` and its relaxation `Λ` at `F`,
    /// both on the ground set `E` in its given order.
    pub fn pi_lambda(r: usize, k: usize, f: Mask, ground: &GroundSet) -> Result<(Matroid, Matroid), MatroidError> {
        let full = ground.full();
        if !bits::is_subset(f, full) {
            return Err(MatroidError::OutsideGround(f));
        }
        let (nf, nrest) = (bits::size(f), bits::size(full & !f));
        if r > nf || r >= k || k - r > nrest {
            return Err(MatroidError::ParameterRange(format!("r={r}, k={k}, |F|={nf}, |E∖F|={nrest} (need r ≤ |F|, r < k, k−r ≤ |E∖F|)")));
        }
        let all_k = bits::subsets_of_size(ground.len(), k);
        let pi = Matroid::from_known_bases(ground.clone(), all_k.iter().copied().filter(|&b| bits::size(b & f) == r));
        let lambda = Matroid::from_known_bases(
            ground.clone(),
            all_k.iter().copied().filter(|&b| {
                let m = bits::size(b & f);
                m == r || m == r + 1
            }),
        );
        debug_assert_eq!(pi.split_at(full & !f), pi);
        debug_assert_eq!(lambda.split_at(full & !f), pi, "Π must be the δ_(E∖F)-maximal facet of Λ");
        Ok((pi, lambda))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{GroundSet, Matroid};

    fn m(n: usize, bases: &[&str]) -> Matroid {
        let bs: Vec<Vec<String>> = bases.iter().map(|b| b.chars().map(|c| c.to_string()).collect()).collect();
        Matroid::from_labels(GroundSet::numbered(n), &bs).unwrap()
    }

    #[test]
    fn minors_of_u24() {
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        let (r, c) = (u24.restriction(0b0001), u24.contraction(0b0001));
        assert_eq!(r, Matroid::uniform(1, GroundSet::new(["1"]).unwrap()).unwrap());
        assert_eq!(c, Matroid::uniform(1, GroundSet::new(["2", "3", "4"]).unwrap()).unwrap());
        let (r, c) = (u24.restriction(0b0111), u24.contraction(0b0111));
        assert_eq!(r, Matroid::uniform(2, GroundSet::new(["1", "2", "3"]).unwrap()).unwrap());
        assert_eq!(c, Matroid::uniform(0, GroundSet::new(["4"]).unwrap()).unwrap());
        assert_eq!(u24.contraction(0), u24);
        assert_eq!(u24.restriction(0), Matroid::empty());
    }

    #[test]
    fn direct_sums() {
        let a = Matroid::uniform(1, GroundSet::new(["1", "2"]).unwrap()).unwrap();
        let b = Matroid::uniform(1, GroundSet::new(["3", "4"]).unwrap()).unwrap();
        assert_eq!(Matroid::direct_sum(&a, &b).unwrap(), m(4, &["13", "14", "23", "24"]));
        assert_eq!(Matroid::direct_sum(&a, &Matroid::empty()).unwrap(), a);
        assert!(Matroid::direct_sum(&a, &a).is_err());
    }

    #[test]
    fn octahedron_relaxations() {
        let npp = m(4, &["13", "14", "23", "24"]);
        let n = m(4, &["12", "13", "14", "23", "24"]);
        assert!(npp.is_stressed(0b0011).unwrap());
        assert_eq!(npp.relax(0b0011).unwrap(), n);
        assert_eq!(n.relax(0b1100).unwrap(), Matroid::uniform_numbered(2, 4).unwrap());
        let u24 = Matroid::uniform_numbered(2, 4).unwrap();
        assert!(u24.cusp(0b0001).is_empty());
        assert_eq!(u24.relax(0b0001).unwrap(), u24);
        assert!(n.is_stressed(0b0110).is_err());
    }

    #[test]
    fn pi_lambda_examples() {
        let g = GroundSet::numbered(4);
        let (pi, lambda) = Matroid::pi_lambda(1, 2, 0b1100, &g).unwrap();
        assert_eq!(pi, m(4, &["13", "14", "23", "24"]));
        assert_eq!(lambda, m(4, &["13", "14", "23", "24", "34"]));
        let (pi, lambda) = Matroid::pi_lambda(1, 2, 0b0011, &g).unwrap();
        assert_eq!(pi, m(4, &["13", "14", "23", "24"]));
        assert_eq!(lambda, m(4, &["12", "13", "14", "23", "24"]));
        assert!(Matroid::pi_lambda(2, 2, 0b0011, &g).is_err());
    }
}
