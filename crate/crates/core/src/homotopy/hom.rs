//! Morphisms in the homotopy category by exact linear algebra.
//!
//! Unknowns are the path coordinates of the components f^d: X^d -> Z^d. Chain
//! maps are the kernel of the commutation equations; null-homotopic maps are
//! the image of h |-> d_Z h + h d_X.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::complex::{ChainMap, Complex};
use super::pmat::{Elem, PMat};
use crate::algebra::{Algebra, PathId};
use crate::linalg::{sparse_rank, to_sparse, Mat, SparseEchelon, SparseRow, Q};

/// (degree, target summand, source summand, path)
type Coord = (i32, usize, usize, PathId);

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub degree: i32,
    pub basis: Vec<ChainMap>,
}

impl HomSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Linear-algebra model of Hom^0(X, Z) with X, Z fixed.
pub struct HomSystem<'a> {
    alg: &'a Algebra,
    pub x: Complex,
    pub z: Complex,
    vars: Vec<Coord>,
    index: HashMap<Coord, usize>,
    equations: Vec<SparseRow>,
    homotopies: Vec<SparseRow>,
}

fn coords_between(alg: &Algebra, tgt: &[usize], src: &[usize], d: i32, out: &mut Vec<Coord>) {
    for (i, &t) in tgt.iter().enumerate() {
        for (j, &s) in src.iter().enumerate() {
            for &p in alg.paths_from_to(t, s) {
                out.push((d, i, j, p));
            }
        }
    }
}

fn push_term(acc: &mut BTreeMap<usize, Q>, key: usize, c: Q) {
    let e = acc.entry(key).or_insert_with(Q::zero);
    *e += c;
}

fn finish_row(acc: BTreeMap<usize, Q>) -> SparseRow {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl<'a> HomSystem<'a> {
    pub fn new(alg: &'a Algebra, x: &Complex, z: &Complex) -> Self {
        let mut vars = Vec::new();
        for (&d, xs) in &x.terms {
            coords_between(alg, z.term(d), xs, d, &mut vars);
        }
        let index: HashMap<Coord, usize> = vars.iter().enumerate().map(|(k, &c)| (c, k)).collect();

        // equation rows: one per coordinate of (d_Z f^d - f^{d+1} d_X)
        let mut eq_rows: BTreeMap<Coord, BTreeMap<usize, Q>> = BTreeMap::new();
        for (k, &(d, i, j, p)) in vars.iter().enumerate() {
            let pe = Elem::path(p);
            // f^d[i][j] = p feeds (d_Z^d)[r][i] p into entry (r, j)
            if let Some(dz) = z.diffs.get(&d) {
                for r in 0..dz.rows {
                    let prod = dz.get(r, i).mul(&pe, alg);
                    for &(q, c) in &prod.0 {
                        push_term(eq_rows.entry((d, r, j, q)).or_default(), k, c);
                    }
                }
            }
            // f^d[i][j] = p feeds -p (d_X^{d-1})[j][s] into entry (i, s) of degree d-1
            if let Some(dx) = x.diffs.get(&(d - 1)) {
                for s in 0..dx.cols {
                    let prod = pe.mul(dx.get(j, s), alg);
                    for &(q, c) in &prod.0 {
                        push_term(eq_rows.entry((d - 1, i, s, q)).or_default(), k, -c);
                    }
                }
            }
        }
        let equations: Vec<SparseRow> =
            eq_rows.into_values().map(finish_row).filter(|r| !r.is_empty()).collect();

        // homotopy columns: h^d: X^d -> Z^{d-1}
        let mut hvars = Vec::new();
        for (&d, xs) in &x.terms {
            coords_between(alg, z.term(d - 1), xs, d, &mut hvars);
        }
        let mut homotopies = Vec::with_capacity(hvars.len());
        for &(d, i, j, p) in &hvars {
            let pe = Elem::path(p);
            let mut acc = BTreeMap::new();
            // contributes d_Z^{d-1} h^d to f^d
            if let Some(dz) = z.diffs.get(&(d - 1)) {
                for r in 0..dz.rows {
                    let prod = dz.get(r, i).mul(&pe, alg);
                    for &(q, c) in &prod.0 {
                        push_term(&mut acc, index[&(d, r, j, q)], c);
                    }
                }
            }
            // contributes h^d d_X^{d-1} to f^{d-1}
            if let Some(dx) = x.diffs.get(&(d - 1)) {
                for s in 0..dx.cols {
                    let prod = pe.mul(dx.get(j, s), alg);
                    for &(q, c) in &prod.0 {
                        push_term(&mut acc, index[&(d - 1, i, s, q)], c);
                    }
                }
            }
            let row = finish_row(acc);
            if !row.is_empty() {
                homotopies.push(row);
            }
        }
        HomSystem { alg, x: x.clone(), z: z.clone(), vars, index, equations, homotopies }
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// dim Hom^0(X, Z) in the homotopy category.
    pub fn dimension(&self) -> usize {
        if self.vars.is_empty() {
            return 0;
        }
        self.vars.len() - sparse_rank(&self.equations) - sparse_rank(&self.homotopies)
    }

    /// Basis of all chain maps X -> Z as coordinate vectors.
    pub fn chain_map_basis(&self) -> Vec<Vec<Q>> {
        let n = self.vars.len();
        if n == 0 {
            return vec![];
        }
        if self.equations.is_empty() {
            return (0..n)
                .map(|k| {
                    let mut v = vec![Q::zero(); n];
                    v[k] = Q::from_integer(1);
                    v
                })
                .collect();
        }
        let mut m = Mat::zeros(self.equations.len(), n);
        for (r, row) in self.equations.iter().enumerate() {
            for &(c, v) in row {
                m[(r, c)] = v;
            }
        }
        m.kernel()
    }

    /// Echelon span of the null-homotopic maps.
    pub fn null_homotopic_span(&self) -> SparseEchelon {
        let mut s = SparseEchelon::new();
        for h in &self.homotopies {
            s.insert(h);
        }
        s
    }

    /// Representatives of a basis modulo null-homotopic maps, chosen greedily in
    /// kernel order so the result is deterministic.
    pub fn basis(&self) -> Vec<Vec<Q>> {
        let mut span = self.null_homotopic_span();
        self.chain_map_basis().into_iter().filter(|v| span.insert(&to_sparse(v))).collect()
    }

    pub fn to_map(&self, v: &[Q]) -> ChainMap {
        let mut comps: BTreeMap<i32, PMat> = BTreeMap::new();
        for (k, &(d, i, j, p)) in self.vars.iter().enumerate() {
            if v[k].is_zero() {
                continue;
            }
            let m = comps
                .entry(d)
                .or_insert_with(|| PMat::zeros(self.z.term(d).len(), self.x.term(d).len()));
            let cur = m.get(i, j).add(&Elem::scaled_path(p, v[k]));
            m.set(i, j, cur);
        }
        ChainMap { source: self.x.clone(), target: self.z.clone(), comps }
    }

    /// Coordinates of a map with the same source and target shapes.
    pub fn to_vec(&self, f: &ChainMap) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.vars.len()];
        for (&d, m) in &f.comps {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    for &(p, c) in &m.get(i, j).0 {
                        v[self.index[&(d, i, j, p)]] = c;
                    }
                }
            }
        }
        v
    }

    pub fn to_sparse_vec(&self, f: &ChainMap) -> SparseRow {
        to_sparse(&self.to_vec(f))
    }

    pub fn algebra(&self) -> &Algebra {
        self.alg
    }
}

/// Basis of Hom(X, Σ^i Y) modulo homotopy, as chain maps X -> Σ^i Y.
pub fn hom_basis(alg: &Algebra, x: &Complex, y: &Complex, i: i32) -> HomSpace {
    let z = y.shift(i);
    let sys = HomSystem::new(alg, x, &z);
    HomSpace { degree: i, basis: sys.basis().iter().map(|v| sys.to_map(v)).collect() }
}

/// dim Hom(X, Σ^i Y).
pub fn hom_dim(alg: &Algebra, x: &Complex, y: &Complex, i: i32) -> usize {
    if x.is_zero() || y.is_zero() {
        return 0;
    }
    let (lo, hi) = super::complex::hom_window(x, y).expect("nonzero");
    if i < lo || i > hi {
        return 0;
    }
    HomSystem::new(alg, x, &y.shift(i)).dimension()
}

/// True when f is null-homotopic.
pub fn is_null_homotopic(alg: &Algebra, f: &ChainMap) -> bool {
    let sys = HomSystem::new(alg, &f.source, &f.target);
    sys.null_homotopic_span().contains(&sys.to_sparse_vec(f))
}
