//! Krull–Schmidt decomposition of minimal complexes.
//!
//! Idempotents are found in the chain-level endomorphism algebra E of a minimal
//! complex. Sending a chain map to its degreewise lazy coefficients is an
//! algebra map onto scalar block matrices whose kernel is nilpotent, so E/rad E
//! is computed from that image, and a projector there lifts to a strict
//! idempotent by Newton iteration.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::{ChainMap, Complex};
use super::hom::HomSystem;
use super::minimal::minimalize;
use super::pmat::PMat;
use crate::algebra::Algebra;
use crate::error::{Result, SiltError};
use crate::linalg::{EchelonSpan, Mat, Q};
use crate::poly;

/// Split off connected pieces of the differential support graph.
fn split_components(x: &Complex) -> Vec<Complex> {
    let nodes: Vec<(i32, usize)> = x.terms.iter().flat_map(|(&d, vs)| (0..vs.len()).map(move |i| (d, i))).collect();
    let pos: BTreeMap<(i32, usize), usize> = nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(p: &mut [usize], a: usize) -> usize {
        let mut r = a;
        while p[r] != r {
            r = p[r];
        }
        let mut c = a;
        while p[c] != r {
            let n = p[c];
            p[c] = r;
            c = n;
        }
        r
    }
    for (&d, m) in &x.diffs {
        for i in 0..m.rows {
            for j in 0..m.cols {
                if !m.get(i, j).is_zero() {
                    let (a, b) = (find(&mut parent, pos[&(d, j)]), find(&mut parent, pos[&(d + 1, i)]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<(i32, usize)>> = BTreeMap::new();
    for (k, &n) in nodes.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(n);
    }
    if groups.len() <= 1 {
        return vec![x.clone()];
    }
    groups.into_values().map(|members| restrict(x, &members)).collect()
}

fn restrict(x: &Complex, members: &[(i32, usize)]) -> Complex {
    let mut idx: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for &(d, i) in members {
        idx.entry(d).or_default().push(i);
    }
    let terms = idx.iter().map(|(&d, is)| (d, is.iter().map(|&i| x.term(d)[i]).collect())).collect();
    let mut diffs = BTreeMap::new();
    for (&d, is) in &idx {
        if let Some(next) = idx.get(&(d + 1)) {
            diffs.insert(d, x.diff(d).select(next, is));
        }
    }
    Complex::new(terms, diffs).expect("restriction of a complex")
}

/// Degree offsets for flattening degreewise tops into one block-diagonal matrix.
struct Layout {
    offsets: BTreeMap<i32, usize>,
    size: usize,
}

impl Layout {
    fn new(x: &Complex) -> Self {
        let mut offsets = BTreeMap::new();
        let mut size = 0;
        for (&d, vs) in &x.terms {
            offsets.insert(d, size);
            size += vs.len();
        }
        Layout { offsets, size }
    }

    fn top(&self, f: &ChainMap, alg: &Algebra) -> Mat {
        let mut t = Mat::zeros(self.size, self.size);
        for (&d, m) in &f.comps {
            let o = self.offsets[&d];
            let tm = m.top(alg);
            for i in 0..tm.nrows() {
                for j in 0..tm.ncols() {
                    t[(o + i, o + j)] = tm[(i, j)];
                }
            }
        }
        t
    }
}

fn flatten(m: &Mat) -> Vec<Q> {
    (0..m.nrows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Solve sum_k c_k cols[k] = rhs; None if inconsistent.
fn solve(cols: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = rhs.len();
    let mut aug = Mat::zeros(n, cols.len() + 1);
    for (k, c) in cols.iter().enumerate() {
        for i in 0..n {
            aug[(i, k)] = c[i];
        }
    }
    for i in 0..n {
        aug[(i, cols.len())] = rhs[i];
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&cols.len()) {
        return None;
    }
    let mut sol = vec![Q::zero(); cols.len()];
    for (r, &p) in pivots.iter().enumerate() {
        sol[p] = aug[(r, cols.len())];
    }
    Some(sol)
}

/// The chain-level endomorphism algebra with its image in the semisimple top.
struct ChainEnd<'a> {
    alg: &'a Algebra,
    sys: HomSystem<'a>,
    basis: Vec<Vec<Q>>,
    tops: Vec<Mat>,
    layout: Layout,
}

impl<'a> ChainEnd<'a> {
    fn new(x: &Complex, alg: &'a Algebra) -> Self {
        let sys = HomSystem::new(alg, x, x);
        let basis = sys.chain_map_basis();
        let layout = Layout::new(x);
        let tops = basis.iter().map(|v| layout.top(&sys.to_map(v), alg)).collect();
        ChainEnd { alg, sys, basis, tops, layout }
    }

    /// dim E/rad E, by the rank of the trace form on the top image.
    fn semisimple_dim(&self) -> usize {
        let k = self.tops.len();
        let mut g = Mat::zeros(k, k);
        for a in 0..k {
            for b in a..k {
                let t = self.tops[a].mul(&self.tops[b]).trace();
                g[(a, b)] = t;
                g[(b, a)] = t;
            }
        }
        g.rank()
    }

    fn combine(&self, coeffs: &[Q]) -> (ChainMap, Mat) {
        let n = self.sys.num_vars();
        let mut v = vec![Q::zero(); n];
        let mut t = Mat::zeros(self.layout.size, self.layout.size);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, x) in self.basis[k].iter().enumerate() {
                v[i] += c * x;
            }
            t = t.add(&self.tops[k].scale(*c));
        }
        (self.sys.to_map(&v), t)
    }

    /// A projector in the top image that is neither 0 nor 1, from the spectral
    /// decomposition of `t`.
    fn projector_from(&self, t: &Mat) -> Option<Mat> {
        let cp = t.char_poly();
        let roots = poly::rational_roots(&cp)?;
        let n = t.nrows();
        let (lambda, a) = roots.into_iter().find(|&(_, a)| a < n)?;
        let lin = poly::linear_power(lambda, a);
        let (g, rem) = poly::divrem(&cp, &lin);
        debug_assert!(rem.is_empty());
        let (one, _s, tt) = poly::ext_gcd(&lin, &g);
        if one != vec![Q::one()] {
            return None;
        }
        let p = poly::eval_mat(&poly::mul(&tt, &g), t);
        let rk = p.rank();
        (rk > 0 && rk < n).then_some(p)
    }

    /// Strict idempotent chain map whose top is a nontrivial projector.
    fn find_idempotent(&self) -> Result<Option<ChainMap>> {
        let k = self.basis.len();
        let mut candidates: Vec<Vec<Q>> = Vec::new();
        let unit = |i: usize| {
            let mut c = vec![Q::zero(); k];
            c[i] = Q::one();
            c
        };
        for i in 0..k {
            candidates.push(unit(i));
        }
        for i in 0..k {
            for j in i + 1..k {
                let mut c = unit(i);
                c[j] = Q::from_integer(2);
                candidates.push(c);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..32 {
            candidates.push((0..k).map(|_| Q::from_integer(rng.gen_range(-3..=3))).collect());
        }
        let flat: Vec<Vec<Q>> = self.tops.iter().map(flatten).collect();
        let try_matrix = |t: &Mat| -> Option<Vec<Q>> {
            let p = self.projector_from(t)?;
            solve(&flat, &flatten(&p))
        };
        let mut found = None;
        for c in &candidates {
            let (_, t) = self.combine(c);
            if let Some(sol) = try_matrix(&t) {
                found = Some(sol);
                break;
            }
        }
        if found.is_none() {
            // products of basis tops reach matrix units that sums may miss
            'outer: for i in 0..k {
                for j in 0..k {
                    let t = self.tops[i].mul(&self.tops[j]);
                    if let Some(sol) = try_matrix(&t) {
                        found = Some(sol);
                        break 'outer;
                    }
                }
            }
        }
        let Some(sol) = found else {
            return Ok(None);
        };
        let (mut e, _) = self.combine(&sol);
        for _ in 0..64 {
            let e2 = e.compose(&e, self.alg);
            if e2 == e {
                return Ok(Some(e));
            }
            let e3 = e2.compose(&e, self.alg);
            e = e2.scale(Q::from_integer(3)).add(&e3.scale(Q::from_integer(-2)));
        }
        Err(SiltError::Diagnostic("idempotent lifting did not converge".into()))
    }
}

fn independent_columns(t: &Mat) -> Vec<usize> {
    let mut span = EchelonSpan::new(t.nrows());
    (0..t.ncols()).filter(|&j| span.insert(&t.col(j))).collect()
}

/// Split x along the idempotent e into (image of e, image of 1 - e).
fn split_along(x: &Complex, e: &ChainMap, alg: &Algebra) -> Result<(Complex, Complex)> {
    let mut sel: BTreeMap<i32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut basis_change: BTreeMap<i32, (PMat, Vec<usize>)> = BTreeMap::new();
    for (&d, vs) in &x.terms {
        let ed = e.comp(d);
        let fd = PMat::identity(vs, alg).sub(&ed);
        let j = independent_columns(&ed.top(alg));
        let k = independent_columns(&fd.top(alg));
        let all: Vec<usize> = (0..vs.len()).collect();
        let s = ed.select(&all, &j).hcat(&fd.select(&all, &k));
        let src: Vec<usize> = j.iter().chain(&k).map(|&c| vs[c]).collect();
        basis_change.insert(d, (s, src));
        sel.insert(d, (j, k));
    }
    let mut y_terms = BTreeMap::new();
    let mut z_terms = BTreeMap::new();
    for (&d, (j, k)) in &sel {
        y_terms.insert(d, j.iter().map(|&c| x.term(d)[c]).collect::<Vec<_>>());
        z_terms.insert(d, k.iter().map(|&c| x.term(d)[c]).collect::<Vec<_>>());
    }
    let mut y_diffs = BTreeMap::new();
    let mut z_diffs = BTreeMap::new();
    for (&d, m) in &x.diffs {
        let (s0, _) = &basis_change[&d];
        let (s1, v1) = &basis_change[&(d + 1)];
        let s1inv = s1
            .inverse(x.term(d + 1), v1, alg)
            .ok_or_else(|| SiltError::Diagnostic("idempotent split is not invertible".into()))?;
        let conj = s1inv.mul(m, alg).mul(s0, alg);
        let (j0, k0) = &sel[&d];
        let (j1, k1) = &sel[&(d + 1)];
        let r_y: Vec<usize> = (0..j1.len()).collect();
        let r_z: Vec<usize> = (j1.len()..j1.len() + k1.len()).collect();
        let c_y: Vec<usize> = (0..j0.len()).collect();
        let c_z: Vec<usize> = (j0.len()..j0.len() + k0.len()).collect();
        if !conj.select(&r_z, &c_y).is_zero() || !conj.select(&r_y, &c_z).is_zero() {
            return Err(SiltError::Diagnostic("idempotent does not split the differential".into()));
        }
        y_diffs.insert(d, conj.select(&r_y, &c_y));
        z_diffs.insert(d, conj.select(&r_z, &c_z));
    }
    Ok((Complex::new(y_terms, y_diffs)?, Complex::new(z_terms, z_diffs)?))
}

fn decompose_minimal(x: &Complex, alg: &Algebra, out: &mut Vec<Complex>) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    let parts = split_components(x);
    if parts.len() > 1 {
        for p in &parts {
            decompose_minimal(p, alg, out)?;
        }
        return Ok(());
    }
    if x.num_summands() == 1 {
        out.push(x.clone());
        return Ok(());
    }
    let end = ChainEnd::new(x, alg);
    let ss = end.semisimple_dim();
    if ss <= 1 {
        out.push(x.clone());
        return Ok(());
    }
    match end.find_idempotent()? {
        Some(e) => {
            let (y, z) = split_along(x, &e, alg)?;
            decompose_minimal(&y, alg, out)?;
            decompose_minimal(&z, alg, out)
        }
        None => Err(SiltError::Diagnostic(format!(
            "endomorphism algebra has a {ss}-dimensional semisimple quotient without a rational idempotent"
        ))),
    }
}

/// Minimal indecomposable summands with multiplicity.
pub fn decompose(x: &Complex, alg: &Algebra) -> Result<Vec<Complex>> {
    let m = minimalize(x, alg);
    let mut out = Vec::new();
    decompose_minimal(&m, alg, &mut out)?;
    Ok(out)
}

/// True when the chain-level endomorphisms of a minimal complex form a local algebra.
pub fn is_local(x: &Complex, alg: &Algebra) -> bool {
    !x.is_zero() && ChainEnd::new(x, alg).semisimple_dim() == 1
}

/// Endomorphism algebra in the homotopy category: basis representatives and
/// structure constants `mult[a][b]` = coordinates of basis[a] o basis[b].
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub basis: Vec<ChainMap>,
    pub mult: Vec<Vec<Vec<Q>>>,
}

impl EndAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// dim End/rad, from the trace form of the regular representation.
    pub fn semisimple_dim(&self) -> usize {
        let n = self.dimension();
        let left: Vec<Mat> = (0..n)
            .map(|a| {
                let mut m = Mat::zeros(n, n);
                for b in 0..n {
                    for c in 0..n {
                        m[(c, b)] = self.mult[a][b][c];
                    }
                }
                m
            })
            .collect();
        let mut g = Mat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                g[(a, b)] = left[a].mul(&left[b]).trace();
            }
        }
        g.rank()
    }
}

pub fn end_algebra(x: &Complex, alg: &Algebra) -> EndAlgebra {
    let sys = HomSystem::new(alg, x, x);
    let reps = sys.basis();
    let basis: Vec<ChainMap> = reps.iter().map(|v| sys.to_map(v)).collect();
    let null = sys.null_homotopic_span();
    // express products in the basis modulo null-homotopic maps
    let n = basis.len();
    let mut cols: Vec<Vec<Q>> = reps.clone();
    let null_vectors = null_basis_dense(&null, sys.num_vars());
    cols.extend(null_vectors);
    let mut mult = vec![vec![vec![Q::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod = basis[a].compose(&basis[b], alg);
            let coords = solve(&cols, &sys.to_vec(&prod)).expect("composite of chain maps is a chain map");
            mult[a][b] = coords[..n].to_vec();
        }
    }
    EndAlgebra { basis, mult }
}

fn null_basis_dense(span: &crate::linalg::SparseEchelon, n: usize) -> Vec<Vec<Q>> {
    span.rows().map(|r| crate::linalg::to_dense(r, n)).collect()
}
