//! Dense exact linear algebra over the rationals.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Overflow is a hard error (overflow checks are on in every profile).
pub type Q = Ratio<i128>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let rs: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x as i128)).collect())
            .collect();
        Mat::from_rows(&rs)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn trace(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(Q::zero(), |acc, i| acc + self[(i, i)])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = self[(r, j)];
                if !v.is_zero() {
                    self[(r, j)] = v * inv;
                }
            }
            let pivot_row: Vec<(usize, Q)> = (c..self.cols)
                .filter_map(|j| {
                    let v = self[(r, j)];
                    (!v.is_zero()).then_some((j, v))
                })
                .collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for &(j, v) in &pivot_row {
                    let cur = self[(i, j)];
                    self[(i, j)] = cur - f * v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        m.forward_eliminate()
    }

    /// Row echelon (not reduced); returns the rank.
    fn forward_eliminate(&mut self) -> usize {
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            let pivot_row: Vec<(usize, Q)> = (c..self.cols)
                .filter_map(|j| {
                    let v = self[(r, j)];
                    (!v.is_zero()).then_some((j, v))
                })
                .collect();
            for i in r + 1..self.rows {
                let f = self[(i, c)];
                if f.is_zero() {
                    continue;
                }
                let f = f * inv;
                for &(j, v) in &pivot_row {
                    let cur = self[(i, j)];
                    self[(i, j)] = cur - f * v;
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel {x : self * x = 0}, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)];
            det *= piv;
            let inv = piv.recip();
            for i in c + 1..n {
                let f = m[(i, c)];
                if f.is_zero() {
                    continue;
                }
                let f = f * inv;
                for j in c..n {
                    let v = m[(c, j)];
                    if !v.is_zero() {
                        let cur = m[(i, j)];
                        m[(i, j)] = cur - f * v;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = Q::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial det(xI - A), coefficients from constant term upward.
    /// Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<Q> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = Mat::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            coeffs[n - k] = -am.trace() / q(k as i128);
        }
        coeffs
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Incrementally maintained row-echelon basis of a subspace of Q^n.
///
/// Used for span-membership tests and greedy extraction of complements.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    dim: usize,
    // (pivot column, normalized row with 1 at pivot)
    rows: Vec<(usize, Vec<Q>)>,
}

impl EchelonSpan {
    pub fn new(dim: usize) -> Self {
        EchelonSpan { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduce `v` against the current basis.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let f = w[*p];
            if f.is_zero() {
                continue;
            }
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    w[j] -= f * x;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert `v`; returns true if the rank grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim);
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        let w: Vec<Q> = w.iter().map(|x| x * inv).collect();
        // keep existing rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            let f = row[p];
            if !f.is_zero() {
                for (j, x) in w.iter().enumerate() {
                    if !x.is_zero() {
                        row[j] -= f * x;
                    }
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Sparse row vector: strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(usize, Q)>;

/// Sparse row-echelon basis (not reduced) keyed by leading column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    pivots: std::collections::BTreeMap<usize, SparseRow>,
}

fn axpy_sparse(row: &SparseRow, f: Q, piv: &SparseRow) -> SparseRow {
    // row - f * piv
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        if j == piv.len() || (i < row.len() && row[i].0 < piv[j].0) {
            out.push(row[i]);
            i += 1;
        } else if i == row.len() || piv[j].0 < row[i].0 {
            out.push((piv[j].0, -f * piv[j].1));
            j += 1;
        } else {
            let v = row[i].1 - f * piv[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut row = row.clone();
        let mut start = 0;
        loop {
            let Some(pos) = row.iter().position(|x| x.0 >= start) else {
                return row;
            };
            let (lead, c) = row[pos];
            match self.pivots.get(&lead) {
                Some(piv) => row = axpy_sparse(&row, c, piv),
                None => start = lead + 1,
            }
        }
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.pivots.values()
    }

    /// Insert; returns true if the rank grew.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        let mut row = row.clone();
        loop {
            let Some(&(lead, c)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(piv) => row = axpy_sparse(&row, c, piv),
                None => {
                    let inv = c.recip();
                    let row: SparseRow = row.into_iter().map(|(j, v)| (j, v * inv)).collect();
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

pub fn sparse_rank(rows: &[SparseRow]) -> usize {
    let mut e = SparseEchelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn to_sparse(v: &[Q]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, *x)).collect()
}

pub fn to_dense(v: &SparseRow, n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for &(i, x) in v {
        out[i] = x;
    }
    out
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn abs_q(x: Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_agree() {
        let m = Mat::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&k[0])));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Mat::from_i64(&[vec![2, 1], vec![7, 4]]);
        assert_eq!(m.determinant(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        let s = Mat::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.determinant(), q(0));
    }

    #[test]
    fn char_poly_of_companion() {
        // x^2 - 3x + 2 = (x-1)(x-2)
        let m = Mat::from_i64(&[vec![1, 0], vec![5, 2]]);
        assert_eq!(m.char_poly(), vec![q(2), q(-3), q(1)]);
    }

    #[test]
    fn echelon_span_membership() {
        let mut s = EchelonSpan::new(3);
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(!s.insert(&[q(1), q(2), q(1)]));
        assert!(s.contains(&[q(2), q(0), q(-2)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let m = Mat::from_i64(&[vec![0, 2, 0, 1], vec![1, 0, 0, 0], vec![1, 2, 0, 1], vec![0, 0, 3, 0]]);
        let rows: Vec<SparseRow> = (0..4).map(|i| to_sparse(m.row(i))).collect();
        assert_eq!(sparse_rank(&rows), m.rank());
        let mut e = SparseEchelon::new();
        for r in &rows {
            e.insert(r);
        }
        assert!(e.contains(&to_sparse(&[q(2), q(2), q(3), q(1)])));
        assert!(!e.contains(&to_sparse(&[q(0), q(1), q(0), q(0)])));
    }
}
