use super::dense::Matrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Row-sparse matrix: each row is a list of `(column, value)` pairs sorted by
/// column with no stored zeros.
///
/// Chain differentials assembled from functor blocks are overwhelmingly
/// zero, and the elimination below only ever touches stored entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, T::one()));
        }
        m
    }

    /// Builds from triplets, summing duplicates and dropping zeros.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            let e = acc[r].entry(c).or_insert_with(T::zero);
            *e = e.clone() + v;
        }
        let data = acc.into_iter().map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense(m: &Matrix<T>) -> Self {
        let data = (0..m.rows())
            .map(|r| m.row(r).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
            .collect();
        SparseMatrix { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r].binary_search_by_key(&c, |(j, _)| *j).map(|i| self.data[r][i].1.clone()).unwrap_or_else(|_| T::zero())
    }

    /// Iterates over stored `(row, col, value)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|row| row.iter().map(|(c, v)| (*c, v.clone() * s.clone())).collect()).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let e = acc.entry(*c).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        SparseMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, va) in ra {
                    for (cb, vb) in rb {
                        row.push((ca * other.cols + cb, va.clone() * vb.clone()));
                    }
                }
                data.push(row);
            }
        }
        SparseMatrix { rows, cols, data }
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Exact rank by incremental echelon reduction on sparse rows.
    ///
    /// Rows are inserted shortest first; each is reduced against the stored
    /// pivot rows until it either vanishes or acquires a fresh leading column.
    pub fn rank(&self) -> usize {
        let mut order: Vec<usize> = (0..self.rows).filter(|&r| !self.data[r].is_empty()).collect();
        order.sort_by_key(|&r| self.data[r].len());
        let mut pivots: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
        for r in order {
            let mut row = self.data[r].clone();
            while let Some((lead, lv)) = row.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => {
                        let f = lv / p[0].1.clone();
                        row = axpy(&row, p, &f);
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// `a − f·b` for sorted sparse rows, dropping cancelled entries.
fn axpy<T: Scalar>(a: &[(usize, T)], b: &[(usize, T)], f: &T) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(f.clone() * b[j].1.clone())));
            j += 1;
        } else {
            let v = a[i].1.clone() - f.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
