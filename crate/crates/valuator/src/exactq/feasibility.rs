//! Exact feasibility of mixed strict/weak linear systems by Fourier–Motzkin
//! elimination.
//!
//! Equalities are removed first by exact Gaussian elimination; the remaining
//! inequalities are projected one variable at a time. Derived inequalities
//! carry the set of original rows they came from, and any row built from more
//! than `eliminated + 1` originals is dropped (Chernikov's rule), which keeps
//! desk-scale systems small.

use super::dense::Matrix;
use super::ExactqError;
use crate::scalar::Scalar;
use std::cmp::Ordering;

/// Largest variable count accepted by [`feasible`].
pub const MAX_VARIABLES: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `a·x = b`
    Eq,
    /// `a·x ≤ b`
    Le,
    /// `a·x < b`
    Lt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    /// Whether `x` satisfies the constraint exactly.
    pub fn holds(&self, x: &[T]) -> bool {
        let lhs = self.coeffs.iter().zip(x).fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone());
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Lt => lhs < self.rhs,
        }
    }
}

/// Equalities, weak and strict inequalities over named variables.
#[derive(Clone, Debug)]
pub struct LinSystem<T> {
    names: Vec<String>,
    constraints: Vec<Constraint<T>>,
}

impl<T: Scalar> LinSystem<T> {
    pub fn new(nvars: usize) -> Self {
        LinSystem { names: (0..nvars).map(|i| format!("x{i}")).collect(), constraints: Vec::new() }
    }

    pub fn with_names(names: Vec<String>) -> Self {
        LinSystem { names, constraints: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn push(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) {
        assert_eq!(coeffs.len(), self.nvars(), "constraint arity differs from the system");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn eq(&mut self, coeffs: Vec<T>, rhs: T) {
        self.push(coeffs, Relation::Eq, rhs);
    }

    pub fn le(&mut self, coeffs: Vec<T>, rhs: T) {
        self.push(coeffs, Relation::Le, rhs);
    }

    pub fn lt(&mut self, coeffs: Vec<T>, rhs: T) {
        self.push(coeffs, Relation::Lt, rhs);
    }

    pub fn ge(&mut self, coeffs: Vec<T>, rhs: T) {
        self.push(coeffs.into_iter().map(|c| -c).collect(), Relation::Le, -rhs);
    }

    pub fn gt(&mut self, coeffs: Vec<T>, rhs: T) {
        self.push(coeffs.into_iter().map(|c| -c).collect(), Relation::Lt, -rhs);
    }

    pub fn is_satisfied_by(&self, x: &[T]) -> bool {
        x.len() == self.nvars() && self.constraints.iter().all(|c| c.holds(x))
    }
}

/// Outcome of a feasibility query.
#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<T> {
    Feasible(Vec<T>),
    Infeasible,
}

impl<T> Feasibility<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[T]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Row<T> {
    a: Vec<T>,
    b: T,
    strict: bool,
    parents: Vec<u64>,
}

impl<T: Scalar> Row<T> {
    fn parent_count(&self) -> u32 {
        self.parents.iter().map(|w| w.count_ones()).sum()
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    /// Returns `None` for a constant row, after checking it is satisfiable.
    fn normalized(mut self) -> Result<Option<Self>, ()> {
        let Some(lead) = self.a.iter().find(|v| !v.is_zero()).map(|v| v.abs()) else {
            let ok = if self.strict { T::zero() < self.b } else { T::zero() <= self.b };
            return if ok { Ok(None) } else { Err(()) };
        };
        if lead != T::one() {
            for v in &mut self.a {
                *v = v.clone() / lead.clone();
            }
            self.b = self.b / lead;
        }
        Ok(Some(self))
    }

    /// Tighter of two rows with identical left-hand sides.
    fn tighter(self, other: Self) -> Self {
        match self.b.partial_cmp(&other.b) {
            Some(Ordering::Less) => self,
            Some(Ordering::Greater) => other,
            _ => {
                if self.strict || !other.strict {
                    self
                } else {
                    other
                }
            }
        }
    }
}

fn cmp_coeffs<T: PartialOrd>(a: &[T], b: &[T]) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

fn dedupe<T: Scalar>(mut rows: Vec<Row<T>>) -> Vec<Row<T>> {
    rows.sort_by(|x, y| cmp_coeffs(&x.a, &y.a));
    let mut out: Vec<Row<T>> = Vec::with_capacity(rows.len());
    for r in rows {
        match out.last_mut() {
            Some(last) if last.a == r.a => {
                let prev = std::mem::replace(last, r.clone());
                *last = prev.tighter(r);
            }
            _ => out.push(r),
        }
    }
    out
}

/// Decides feasibility exactly and returns a witness on success.
pub fn feasible<T: Scalar>(sys: &LinSystem<T>) -> Result<Feasibility<T>, ExactqError> {
    let n = sys.nvars();
    if n > MAX_VARIABLES {
        return Err(ExactqError::TooManyVariables { got: n, max: MAX_VARIABLES });
    }

    // Equalities: x_p = c_p − Σ_free m_pj x_j for each pivot p.
    let eqs: Vec<&Constraint<T>> = sys.constraints.iter().filter(|c| c.relation == Relation::Eq).collect();
    let mut aug = Matrix::<T>::zeros(eqs.len(), n + 1);
    for (i, c) in eqs.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, c.coeffs[j].clone());
        }
        aug.set(i, n, c.rhs.clone());
    }
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(Feasibility::Infeasible);
    }
    let mut pivot_row = vec![None; n];
    for (i, &p) in pivots.iter().enumerate() {
        pivot_row[p] = Some(i);
    }
    let free: Vec<usize> = (0..n).filter(|&j| pivot_row[j].is_none()).collect();

    let words = sys.constraints.len().div_ceil(64).max(1);
    let mut rows = Vec::new();
    for (idx, c) in sys.constraints.iter().enumerate() {
        let strict = match c.relation {
            Relation::Eq => continue,
            Relation::Le => false,
            Relation::Lt => true,
        };
        let mut a = vec![T::zero(); n];
        let mut b = c.rhs.clone();
        for j in 0..n {
            let cj = &c.coeffs[j];
            if cj.is_zero() {
                continue;
            }
            match pivot_row[j] {
                None => a[j] = a[j].clone() + cj.clone(),
                Some(i) => {
                    b = b - cj.clone() * red.get(i, n).clone();
                    for &f in &free {
                        let m = red.get(i, f);
                        if !m.is_zero() {
                            a[f] = a[f].clone() - cj.clone() * m.clone();
                        }
                    }
                }
            }
        }
        let mut parents = vec![0u64; words];
        parents[idx / 64] |= 1 << (idx % 64);
        match (Row { a, b, strict, parents }).normalized() {
            Err(()) => return Ok(Feasibility::Infeasible),
            Ok(Some(r)) => rows.push(r),
            Ok(None) => {}
        }
    }
    rows = dedupe(rows);

    // Projection, remembering the rows that bounded each eliminated variable.
    let mut remaining = free.clone();
    let mut stages: Vec<(usize, Vec<Row<T>>)> = Vec::new();
    let mut eliminated = 0u32;
    while !remaining.is_empty() {
        let (pos_idx, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = rows.iter().filter(|r| r.a[v] > T::zero()).count();
                let q = rows.iter().filter(|r| r.a[v] < T::zero()).count();
                (p * q) as isize - (p + q) as isize
            })
            .expect("nonempty");
        remaining.swap_remove(pos_idx);
        eliminated += 1;

        let (involved, mut next): (Vec<Row<T>>, Vec<Row<T>>) = rows.into_iter().partition(|r| !r.a[v].is_zero());
        let uppers: Vec<&Row<T>> = involved.iter().filter(|r| r.a[v] > T::zero()).collect();
        let lowers: Vec<&Row<T>> = involved.iter().filter(|r| r.a[v] < T::zero()).collect();
        for p in &uppers {
            for q in &lowers {
                let mut parents = p.parents.clone();
                for (w, o) in parents.iter_mut().zip(&q.parents) {
                    *w |= o;
                }
                let combo = Row { a: vec![], b: T::zero(), strict: p.strict || q.strict, parents };
                if combo.parent_count() > eliminated + 1 {
                    continue;
                }
                let fp = -q.a[v].clone();
                let fq = p.a[v].clone();
                let a: Vec<T> = p.a.iter().zip(&q.a).map(|(x, y)| x.clone() * fp.clone() + y.clone() * fq.clone()).collect();
                let b = p.b.clone() * fp + q.b.clone() * fq;
                match (Row { a, b, ..combo }).normalized() {
                    Err(()) => return Ok(Feasibility::Infeasible),
                    Ok(Some(r)) => next.push(r),
                    Ok(None) => {}
                }
            }
        }
        stages.push((v, involved));
        rows = dedupe(next);
    }

    // Back-substitution in reverse elimination order.
    let mut x = vec![T::zero(); n];
    for (v, involved) in stages.iter().rev() {
        let mut lo: Option<(T, bool)> = None;
        let mut hi: Option<(T, bool)> = None;
        for r in involved {
            let rest =
                r.a.iter()
                    .enumerate()
                    .filter(|(j, c)| j != v && !c.is_zero())
                    .fold(T::zero(), |acc, (j, c)| acc + c.clone() * x[j].clone());
            let bound = (r.b.clone() - rest) / r.a[*v].clone();
            if r.a[*v] > T::zero() {
                hi = Some(match hi {
                    None => (bound, r.strict),
                    Some((h, s)) => match bound.partial_cmp(&h) {
                        Some(Ordering::Less) => (bound, r.strict),
                        Some(Ordering::Equal) => (h, s || r.strict),
                        _ => (h, s),
                    },
                });
            } else {
                lo = Some(match lo {
                    None => (bound, r.strict),
                    Some((l, s)) => match bound.partial_cmp(&l) {
                        Some(Ordering::Greater) => (bound, r.strict),
                        Some(Ordering::Equal) => (l, s || r.strict),
                        _ => (l, s),
                    },
                });
            }
        }
        x[*v] = match (lo, hi) {
            (Some((l, _)), Some((h, _))) if l == h => l,
            (Some((l, _)), Some((h, _))) => T::midpoint(&l, &h),
            (Some((l, s)), None) => {
                if s {
                    l + T::one()
                } else {
                    l
                }
            }
            (None, Some((h, s))) => {
                if s {
                    h - T::one()
                } else {
                    h
                }
            }
            (None, None) => T::zero(),
        };
    }
    for (i, &p) in pivots.iter().enumerate() {
        let mut val = red.get(i, n).clone();
        for &f in &free {
            let m = red.get(i, f);
            if !m.is_zero() {
                val = val - m.clone() * x[f].clone();
            }
        }
        x[p] = val;
    }
    assert!(sys.is_satisfied_by(&x), "Fourier–Motzkin witness fails re-substitution");
    Ok(Feasibility::Feasible(x))
}
