use super::{DecompError, Decomposition};
use crate::matroid::bits::Mask;
use crate::{Matroid, MatroidError, Perm};
use std::collections::BTreeSet;

/// The decomposition of the relaxation of `m` along the orbit of the
/// stressed flat `f` under `group` (all elements, or `None` for the trivial
/// group).
///
/// Each flat `G` of the orbit with a nonempty cusp contributes the cell
/// `Λ_{r,k,G,E}`, glued to `P(M)` along `Π_{r,k,G,E}`. `P(M)` is itself a
/// cell unless it is lower dimensional, which happens exactly when `M` is
/// one of the `Π`; then the `Λ` cells alone fill the relaxed polytope.
pub fn relaxation_decomposition(m: &Matroid, f: Mask, group: Option<&[Perm]>) -> Result<Decomposition, DecompError> {
    if !m.is_stressed(f)? {
        return Err(MatroidError::NotStressed(m.labels_of(f)).into());
    }
    let mut orbit = BTreeSet::from([f]);
    for g in group.unwrap_or(&[]) {
        if !m.is_preserved_by(g) {
            return Err(MatroidError::ParameterRange(format!("{g:?} does not preserve the matroid")).into());
        }
        orbit.insert(g.apply_mask(f));
    }
    let orbit: Vec<Mask> = orbit.into_iter().filter(|&g| !m.cusp(g).is_empty()).collect();
    if orbit.is_empty() {
        return Ok(Decomposition::trivial(m));
    }
    let relaxed = m.relax_all(&orbit)?;
    let (r, k) = (m.rank_of(f), m.rank());
    let mut cells = Vec::new();
    if m.dimension() == relaxed.dimension() {
        cells.push(m.clone());
    }
    for &g in &orbit {
        let (_, lambda) = Matroid::pi_lambda(r, k, g, m.ground())?;
        cells.push(lambda);
    }
    Decomposition::from_cells(relaxed, cells)
}
