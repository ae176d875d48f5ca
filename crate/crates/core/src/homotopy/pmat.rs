//! Linear combinations of basis paths and matrices of them.
//!
//! Entry (i, j) of a matrix is a map from source summand j to target summand i,
//! so it is a combination of paths from the target vertex to the source vertex.

use num_traits::{One, Zero};

use crate::algebra::{Algebra, PathId, Vertex};
use crate::linalg::{Mat, Q};

/// Sparse combination of basis paths, sorted by path id, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Elem(pub Vec<(PathId, Q)>);

impl Elem {
    pub fn zero() -> Self {
        Elem(Vec::new())
    }

    pub fn path(p: PathId) -> Self {
        Elem(vec![(p, Q::one())])
    }

    pub fn scaled_path(p: PathId, c: Q) -> Self {
        if c.is_zero() {
            Elem::zero()
        } else {
            Elem(vec![(p, c)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, p: PathId) -> Q {
        self.0
            .binary_search_by_key(&p, |x| x.0)
            .map(|i| self.0[i].1)
            .unwrap_or_else(|_| Q::zero())
    }

    fn from_unsorted(mut terms: Vec<(PathId, Q)>) -> Self {
        terms.sort_by_key(|x| x.0);
        let mut out: Vec<(PathId, Q)> = Vec::with_capacity(terms.len());
        for (p, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == p => last.1 += c,
                _ => out.push((p, c)),
            }
        }
        out.retain(|x| !x.1.is_zero());
        Elem(out)
    }

    pub fn add(&self, other: &Elem) -> Elem {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i].0 < other.0[j].0) {
                out.push(self.0[i]);
                i += 1;
            } else if i == self.0.len() || other.0[j].0 < self.0[i].0 {
                out.push(other.0[j]);
                j += 1;
            } else {
                let c = self.0[i].1 + other.0[j].1;
                if !c.is_zero() {
                    out.push((self.0[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Elem(out)
    }

    pub fn scale(&self, c: Q) -> Elem {
        if c.is_zero() {
            return Elem::zero();
        }
        Elem(self.0.iter().map(|&(p, x)| (p, x * c)).collect())
    }

    pub fn neg(&self) -> Elem {
        self.scale(-Q::one())
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    /// self.other (self first), i.e. the composite self o other.
    pub fn mul(&self, other: &Elem, alg: &Algebra) -> Elem {
        if self.is_zero() || other.is_zero() {
            return Elem::zero();
        }
        let mut terms = Vec::new();
        for &(p, a) in &self.0 {
            for &(q, b) in &other.0 {
                if let Some(r) = alg.mul(p, q) {
                    terms.push((r, a * b));
                }
            }
        }
        Elem::from_unsorted(terms)
    }

    /// Coefficient of the lazy path, i.e. the image in the semisimple top.
    pub fn top(&self, alg: &Algebra) -> Q {
        self.0
            .iter()
            .find(|(p, _)| alg.path(*p).is_lazy())
            .map(|x| x.1)
            .unwrap_or_else(Q::zero)
    }

    /// Inverse of an element of e_v.A.e_v with nonzero lazy coefficient.
    pub fn local_inverse(&self, v: Vertex, alg: &Algebra) -> Option<Elem> {
        let lam = self.coeff(alg.lazy(v));
        if lam.is_zero() {
            return None;
        }
        let inv = lam.recip();
        // self = lam (e - n), inverse = inv (e + n + n^2 + ...)
        let n = Elem::path(alg.lazy(v)).sub(&self.scale(inv));
        let mut acc = Elem::path(alg.lazy(v));
        let mut pow = Elem::path(alg.lazy(v));
        loop {
            pow = pow.mul(&n, alg);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Some(acc.scale(inv))
    }
}

/// Dense matrix of path combinations; `rows` are target summands, `cols` source summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl PMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PMat { rows, cols, data: vec![Elem::zero(); rows * cols] }
    }

    pub fn identity(vertices: &[Vertex], alg: &Algebra) -> Self {
        let mut m = PMat::zeros(vertices.len(), vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            m.set(i, i, Elem::path(alg.lazy(v)));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        self.data[i * self.cols + j] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Elem::is_zero)
    }

    pub fn add(&self, other: &PMat) -> PMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        PMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &PMat) -> PMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        PMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: Q) -> PMat {
        PMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.scale(c)).collect() }
    }

    /// Composite self o other.
    pub fn mul(&self, other: &PMat, alg: &Algebra) -> PMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in composite");
        let mut out = PMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b, alg);
                    if !prod.is_zero() {
                        let cur = out.get(i, j).add(&prod);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PMat {
        let mut m = PMat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// [self | other]
    pub fn hcat(&self, other: &PMat) -> PMat {
        assert_eq!(self.rows, other.rows);
        let mut m = PMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// [self ; other]
    pub fn vcat(&self, other: &PMat) -> PMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        PMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(blocks: &[&PMat]) -> PMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = PMat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Matrix of lazy coefficients.
    pub fn top(&self, alg: &Algebra) -> Mat {
        let mut t = Mat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(i, j)] = self.get(i, j).top(alg);
            }
        }
        t
    }

    /// Inverse of a square matrix with invertible top. `row_vertices` and
    /// `col_vertices` label the target and source summands.
    pub fn inverse(&self, row_vertices: &[Vertex], col_vertices: &[Vertex], alg: &Algebra) -> Option<PMat> {
        assert_eq!(self.rows, self.cols);
        assert_eq!((row_vertices.len(), col_vertices.len()), (self.rows, self.cols));
        let tinv = self.top(alg).inverse()?;
        // tinv maps targets back to sources: entry (i, j) joins col_vertices[i] and row_vertices[j]
        let mut tinv_p = PMat::zeros(self.cols, self.rows);
        for i in 0..self.cols {
            for j in 0..self.rows {
                let c = tinv[(i, j)];
                if !c.is_zero() {
                    if col_vertices[i] != row_vertices[j] {
                        return None;
                    }
                    tinv_p.set(i, j, Elem::scaled_path(alg.lazy(col_vertices[i]), c));
                }
            }
        }
        // tinv.self = 1 - n with n radical; invert by a terminating series
        let id = PMat::identity(col_vertices, alg);
        let n = id.sub(&tinv_p.mul(self, alg));
        let mut acc = id.clone();
        let mut pow = id;
        loop {
            pow = pow.mul(&n, alg);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Some(acc.mul(&tinv_p, alg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_lambda;
    use crate::linalg::q;

    #[test]
    fn local_inverse_with_nilpotent_part() {
        let l = make_lambda(1, 2, 0).unwrap();
        let loop1 = l.parse_path("a1.a0").unwrap();
        let x = Elem::scaled_path(l.lazy(1), q(2)).add(&Elem::scaled_path(loop1, q(3)));
        let inv = x.local_inverse(1, &l).unwrap();
        assert_eq!(x.mul(&inv, &l), Elem::path(l.lazy(1)));
        assert_eq!(inv.mul(&x, &l), Elem::path(l.lazy(1)));
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let l = make_lambda(1, 2, 0).unwrap();
        let a0 = l.parse_path("a0").unwrap();
        let vs = [0, 1];
        // entry (0,1) maps summand P(1) into P(0): paths 0 -> 1
        let mut m = PMat::identity(&vs, &l);
        m.set(0, 1, Elem::path(a0));
        let inv = m.inverse(&vs, &vs, &l).unwrap();
        assert_eq!(m.mul(&inv, &l), PMat::identity(&vs, &l));
    }
}
