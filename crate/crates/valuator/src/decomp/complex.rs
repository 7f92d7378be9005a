use super::{bases_within, DecompError, Decomposition};
use crate::polytope::{self, OrientationData};
use crate::{Matroid, QSparse, Rat};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::Deref;

/// A bounded chain complex whose objects are matroids and whose
/// differential entries are rational multiples of weak maps.
///
/// `diffs[k]` maps degree `k` to degree `k − 1`; rows index the objects of
/// degree `k − 1`, columns those of degree `k`. `diffs[0]` is the zero map
/// out of degree 0.
#[derive(Clone, Debug)]
pub struct MatroidComplex {
    objects: Vec<Vec<Matroid>>,
    diffs: Vec<QSparse>,
}

impl MatroidComplex {
    pub fn new(objects: Vec<Vec<Matroid>>, diffs: Vec<QSparse>) -> Self {
        assert_eq!(objects.len(), diffs.len(), "one differential per degree");
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.cols(), objects[k].len(), "differential {k} has the wrong source size");
            let rows = if k == 0 { 0 } else { objects[k - 1].len() };
            assert_eq!(d.rows(), rows, "differential {k} has the wrong target size");
        }
        MatroidComplex { objects, diffs }
    }

    /// Highest degree; the complex lives in degrees `0..=top()`.
    pub fn top(&self) -> usize {
        self.objects.len().saturating_sub(1)
    }

    pub fn objects(&self, k: usize) -> &[Matroid] {
        self.objects.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn differential(&self, k: usize) -> &QSparse {
        &self.diffs[k]
    }

    /// Whether every composite `∂_{k−1} ∘ ∂_k` vanishes.
    pub fn squares_to_zero(&self) -> bool {
        (2..self.diffs.len()).all(|k| self.diffs[k - 1].mul(&self.diffs[k]).is_zero())
    }

    /// Flips the sign of one object's basis element, i.e. negates its row
    /// and column.
    pub fn flip(&mut self, k: usize, i: usize) {
        let neg = |m: &QSparse, row: Option<usize>, col: Option<usize>| {
            QSparse::from_triplets(
                m.rows(),
                m.cols(),
                m.entries().map(|(r, c, v)| if Some(r) == row || Some(c) == col { (r, c, -v.clone()) } else { (r, c, v.clone()) }),
            )
        };
        self.diffs[k] = neg(&self.diffs[k], None, Some(i));
        if k + 1 < self.diffs.len() {
            self.diffs[k + 1] = neg(&self.diffs[k + 1], Some(i), None);
        }
    }

    /// `Σ_k (−1)^k Σ_{objects} [N]` as a formal integer combination.
    pub fn euler_class(&self) -> BTreeMap<Matroid, i64> {
        let mut out = BTreeMap::new();
        for (k, level) in self.objects.iter().enumerate() {
            let s = if k % 2 == 0 { 1 } else { -1 };
            for m in level {
                *out.entry(m.clone()).or_insert(0) += s;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// The signed complex of internal faces of a decomposition, with the target
/// in the top degree `d + 1`.
#[derive(Clone, Debug)]
pub struct DecompositionComplex {
    target: Matroid,
    complex: MatroidComplex,
    orientation: OrientationData,
}

impl DecompositionComplex {
    pub fn target(&self) -> &Matroid {
        &self.target
    }

    pub fn orientation(&self) -> &OrientationData {
        &self.orientation
    }

    pub fn complex(&self) -> &MatroidComplex {
        &self.complex
    }

    pub fn complex_mut(&mut self) -> &mut MatroidComplex {
        &mut self.complex
    }
}

impl Deref for DecompositionComplex {
    type Target = MatroidComplex;
    fn deref(&self) -> &MatroidComplex {
        &self.complex
    }
}

/// Builds the complex with default orientations.
pub fn build_complex(d: &Decomposition) -> Result<DecompositionComplex, DecompError> {
    let omega = OrientationData::default_for(d.internal_faces());
    build_complex_with(d, omega)
}

/// Builds the complex with the given orientations of the internal faces.
pub fn build_complex_with(d: &Decomposition, mut omega: OrientationData) -> Result<DecompositionComplex, DecompError> {
    let top = d.dimension() + 1;
    if omega.get(d.target()).is_err() {
        omega.insert(d.target().clone(), polytope::orientation_basis(d.target()));
    }
    let objects: Vec<Vec<Matroid>> = (0..=top).map(|k| d.internal(k)).collect();
    let mut diffs = vec![QSparse::zeros(0, objects[0].len())];
    for k in 1..=top {
        let mut triplets = Vec::new();
        for (j, q) in objects[k].iter().enumerate() {
            for (i, r) in objects[k - 1].iter().enumerate() {
                if !bases_within(r, q) {
                    continue;
                }
                let s = if k == top { polytope::orientation_agreement(r, q, &omega)? } else { polytope::facet_sign(r, q, &omega)? };
                triplets.push((i, j, Rat::from_integer(s.into())));
            }
        }
        diffs.push(QSparse::from_triplets(objects[k - 1].len(), objects[k].len(), triplets));
    }
    let complex = MatroidComplex::new(objects, diffs);
    assert!(complex.squares_to_zero(), "sign assembly produced a differential with nonzero square");
    Ok(DecompositionComplex { target: d.target().clone(), complex, orientation: omega })
}

/// Image of a complex under face maximization by `ψ`.
#[derive(Clone, Debug)]
pub struct FormalComplex {
    complex: MatroidComplex,
    levels: Vec<Vec<Rat>>,
}

impl FormalComplex {
    /// Maximum of `ψ` on the object in slot `i` of degree `k`.
    pub fn level(&self, k: usize, i: usize) -> &Rat {
        &self.levels[k][i]
    }

    /// All distinct maxima attained, in increasing order.
    pub fn levels(&self) -> BTreeSet<Rat> {
        self.levels.iter().flatten().cloned().collect()
    }

    /// Formal Euler class of the objects at one level.
    pub fn euler_class_at(&self, level: &Rat) -> BTreeMap<Matroid, i64> {
        let mut out = BTreeMap::new();
        for (k, objs) in self.complex.objects.iter().enumerate() {
            let s = if k % 2 == 0 { 1 } else { -1 };
            for (m, l) in objs.iter().zip(&self.levels[k]) {
                if l == level {
                    *out.entry(m.clone()).or_insert(0) += s;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

impl Deref for FormalComplex {
    type Target = MatroidComplex;
    fn deref(&self) -> &MatroidComplex {
        &self.complex
    }
}

/// Replaces every object by its `ψ`-maximal face. An entry of the
/// differential survives exactly when both faces reach the same maximum,
/// in which case the smaller maximal face sits inside the larger one.
pub fn delta_psi_complex(c: &MatroidComplex, psi: &[Rat]) -> FormalComplex {
    let objects: Vec<Vec<Matroid>> = c.objects.iter().map(|lv| lv.iter().map(|m| polytope::maximize(m, psi)).collect()).collect();
    let levels: Vec<Vec<Rat>> = c.objects.iter().map(|lv| lv.iter().map(|m| polytope::max_value(m, psi)).collect()).collect();
    let mut diffs = vec![c.diffs[0].clone()];
    for k in 1..c.diffs.len() {
        let kept = c.diffs[k].entries().filter(|&(r, col, _)| levels[k - 1][r] == levels[k][col]).map(|(r, col, v)| {
            debug_assert!(bases_within(&objects[k - 1][r], &objects[k][col]));
            (r, col, v.clone())
        });
        diffs.push(QSparse::from_triplets(c.diffs[k].rows(), c.diffs[k].cols(), kept));
    }
    let complex = MatroidComplex::new(objects, diffs);
    assert!(complex.squares_to_zero(), "face maximization must preserve the complex");
    FormalComplex { complex, levels }
}
