use std::collections::BTreeMap;

use num_traits::Zero;

use super::complex::Complex;
use super::pmat::PMat;
use crate::algebra::Algebra;

fn find_unit(x: &Complex, alg: &Algebra) -> Option<(i32, usize, usize)> {
    for (&d, m) in &x.diffs {
        for i in 0..m.rows {
            for j in 0..m.cols {
                if !m.get(i, j).top(alg).is_zero() {
                    return Some((d, i, j));
                }
            }
        }
    }
    None
}

fn without(v: &[usize], k: usize) -> Vec<usize> {
    (0..v.len()).filter(|&x| x != k).collect()
}

/// Cancel one invertible entry (i, j) of d^d; the result is homotopy equivalent.
fn cancel(x: &Complex, d: i32, i: usize, j: usize, alg: &Algebra) -> Complex {
    let src = x.term(d).to_vec();
    let tgt = x.term(d + 1).to_vec();
    let m = x.diff(d);
    let ainv = m.get(i, j).local_inverse(src[j], alg).expect("entry with nonzero lazy coefficient");
    let rows = without(&tgt, i);
    let cols = without(&src, j);
    let mut new = PMat::zeros(rows.len(), cols.len());
    for (a, &r) in rows.iter().enumerate() {
        let crj = m.get(r, j).mul(&ainv, alg);
        for (b, &s) in cols.iter().enumerate() {
            let corr = crj.mul(m.get(i, s), alg);
            new.set(a, b, m.get(r, s).sub(&corr));
        }
    }
    let mut terms = x.terms.clone();
    terms.insert(d, cols.iter().map(|&c| src[c]).collect());
    terms.insert(d + 1, rows.iter().map(|&r| tgt[r]).collect());
    let mut diffs: BTreeMap<i32, PMat> = x.diffs.clone();
    diffs.insert(d, new);
    if let Some(prev) = x.diffs.get(&(d - 1)) {
        let all: Vec<usize> = (0..prev.cols).collect();
        diffs.insert(d - 1, prev.select(&without(&src, j), &all));
    }
    if let Some(next) = x.diffs.get(&(d + 1)) {
        let all: Vec<usize> = (0..next.rows).collect();
        diffs.insert(d + 1, next.select(&all, &without(&tgt, i)));
    }
    Complex::new(terms, diffs).expect("cancellation preserves shapes")
}

/// Homotopy-equivalent complex with no invertible differential entries.
pub fn minimalize(x: &Complex, alg: &Algebra) -> Complex {
    let mut cur = x.clone();
    while let Some((d, i, j)) = find_unit(&cur, alg) {
        cur = cancel(&cur, d, i, j, alg);
    }
    cur
}

pub fn is_minimal(x: &Complex, alg: &Algebra) -> bool {
    find_unit(x, alg).is_none()
}
