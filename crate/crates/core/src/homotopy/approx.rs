//! Minimal add(T)-approximations.
//!
//! Start from one copy of t for every basis map between t and D, then drop a
//! copy whenever its map factors through the remaining ones (up to homotopy).
//! A copy that survives cannot factor through the others even after twisting
//! by a radical endomorphism, so the result is right (resp. left) minimal.

use std::collections::BTreeMap;

use super::complex::{ChainMap, Complex};
use super::hom::HomSystem;
use super::pmat::PMat;
use crate::algebra::Algebra;

fn reps(alg: &Algebra, x: &Complex, z: &Complex) -> Vec<ChainMap> {
    let sys = HomSystem::new(alg, x, z);
    sys.basis().iter().map(|v| sys.to_map(v)).collect()
}

/// Minimal right add(T)-approximation C -> D; T is a list of pairwise
/// non-isomorphic indecomposables. Returns the map and, per summand of C, the
/// index into T.
pub fn minimal_right_approximation(alg: &Algebra, t: &[Complex], d: &Complex) -> (ChainMap, Vec<usize>) {
    let to_d: Vec<Vec<ChainMap>> = t.iter().map(|ti| reps(alg, ti, d)).collect();
    let mut items: Vec<(usize, ChainMap)> =
        to_d.iter().enumerate().flat_map(|(i, fs)| fs.iter().cloned().map(move |f| (i, f))).collect();
    // between[j][i] = basis of Hom(t_j, t_i)
    let between: Vec<Vec<Vec<ChainMap>>> =
        t.iter().map(|tj| t.iter().map(|ti| reps(alg, tj, ti)).collect()).collect();
    let mut k = 0;
    while k < items.len() {
        let j = items[k].0;
        let sys = HomSystem::new(alg, &t[j], d);
        let mut span = sys.null_homotopic_span();
        for (other, (i, f)) in items.iter().enumerate() {
            if other == k {
                continue;
            }
            for g in &between[j][*i] {
                span.insert(&sys.to_sparse_vec(&f.compose(g, alg)));
            }
        }
        if span.contains(&sys.to_sparse_vec(&items[k].1)) {
            items.remove(k);
        } else {
            k += 1;
        }
    }
    let parts: Vec<&Complex> = items.iter().map(|(i, _)| &t[*i]).collect();
    let c = Complex::direct_sum(&parts);
    let mut comps = BTreeMap::new();
    for &deg in c.terms.keys() {
        if d.term(deg).is_empty() {
            continue;
        }
        let mut m = PMat::zeros(d.term(deg).len(), 0);
        for (_, f) in &items {
            m = m.hcat(&f.comp(deg));
        }
        if !m.is_zero() {
            comps.insert(deg, m);
        }
    }
    let idx = items.iter().map(|(i, _)| *i).collect();
    (ChainMap { source: c, target: d.clone(), comps }, idx)
}

/// Minimal left add(T)-approximation D -> C.
pub fn minimal_left_approximation(alg: &Algebra, t: &[Complex], d: &Complex) -> (ChainMap, Vec<usize>) {
    let from_d: Vec<Vec<ChainMap>> = t.iter().map(|ti| reps(alg, d, ti)).collect();
    let mut items: Vec<(usize, ChainMap)> =
        from_d.iter().enumerate().flat_map(|(i, gs)| gs.iter().cloned().map(move |g| (i, g))).collect();
    // between[i][j] = basis of Hom(t_i, t_j)
    let between: Vec<Vec<Vec<ChainMap>>> =
        t.iter().map(|ti| t.iter().map(|tj| reps(alg, ti, tj)).collect()).collect();
    let mut k = 0;
    while k < items.len() {
        let j = items[k].0;
        let sys = HomSystem::new(alg, d, &t[j]);
        let mut span = sys.null_homotopic_span();
        for (other, (i, g)) in items.iter().enumerate() {
            if other == k {
                continue;
            }
            for h in &between[*i][j] {
                span.insert(&sys.to_sparse_vec(&h.compose(g, alg)));
            }
        }
        if span.contains(&sys.to_sparse_vec(&items[k].1)) {
            items.remove(k);
        } else {
            k += 1;
        }
    }
    let parts: Vec<&Complex> = items.iter().map(|(i, _)| &t[*i]).collect();
    let c = Complex::direct_sum(&parts);
    let mut comps = BTreeMap::new();
    for &deg in c.terms.keys() {
        if d.term(deg).is_empty() {
            continue;
        }
        let mut m = PMat::zeros(0, d.term(deg).len());
        for (_, g) in &items {
            m = m.vcat(&g.comp(deg));
        }
        if !m.is_zero() {
            comps.insert(deg, m);
        }
    }
    let idx = items.iter().map(|(i, _)| *i).collect();
    (ChainMap { source: d.clone(), target: c, comps }, idx)
}

/// Surjectivity of Hom(t, C) -> Hom(t, D) modulo homotopy, for the given f: C -> D.
pub fn is_right_approximation(alg: &Algebra, t: &[Complex], f: &ChainMap) -> bool {
    t.iter().all(|ti| {
        let sys = HomSystem::new(alg, ti, &f.target);
        let mut span = sys.null_homotopic_span();
        for g in reps(alg, ti, &f.source) {
            span.insert(&sys.to_sparse_vec(&f.compose(&g, alg)));
        }
        sys.basis().iter().all(|v| span.contains(&crate::linalg::to_sparse(v)))
    })
}

/// Surjectivity of Hom(C, t) -> Hom(D, t) for the given g: D -> C.
pub fn is_left_approximation(alg: &Algebra, t: &[Complex], g: &ChainMap) -> bool {
    t.iter().all(|ti| {
        let sys = HomSystem::new(alg, &g.source, ti);
        let mut span = sys.null_homotopic_span();
        for h in reps(alg, &g.target, ti) {
            span.insert(&sys.to_sparse_vec(&h.compose(g, alg)));
        }
        sys.basis().iter().all(|v| span.contains(&crate::linalg::to_sparse(v)))
    })
}
