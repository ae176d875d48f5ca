//! Order complexes, reduced integral homology and collapse certificates.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A finite poset on 0..size.
pub trait FinitePoset {
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn label(&self, a: usize) -> String {
        a.to_string()
    }
}

/// A poset given by an explicit relation matrix.
#[derive(Clone, Debug)]
pub struct ExplicitPoset {
    pub labels: Vec<String>,
    pub relation: Vec<Vec<bool>>,
}

impl ExplicitPoset {
    pub fn chain(n: usize) -> Self {
        ExplicitPoset {
            labels: (0..n).map(|i| i.to_string()).collect(),
            relation: (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect(),
        }
    }

    pub fn antichain(n: usize) -> Self {
        ExplicitPoset {
            labels: (0..n).map(|i| i.to_string()).collect(),
            relation: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect(),
        }
    }
}

impl FinitePoset for ExplicitPoset {
    fn size(&self) -> usize {
        self.labels.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.relation[a][b]
    }
    fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

/// A simplicial complex given by its facets over labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

/// Maximal chains of the subposet induced on `subset`.
pub fn maximal_chains<P: FinitePoset + ?Sized>(poset: &P, subset: &[usize]) -> Vec<Vec<usize>> {
    let n = subset.len();
    let lt = |a: usize, b: usize| a != b && poset.leq(subset[a], subset[b]);
    // induced covers
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                up[a].push(b);
            }
        }
    }
    let minimal: Vec<usize> = (0..n).filter(|&b| !(0..n).any(|a| lt(a, b))).collect();
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = minimal.into_iter().map(|a| vec![a]).collect();
    stack.reverse();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        if up[last].is_empty() {
            chains.push(chain.iter().map(|&i| subset[i]).collect());
            continue;
        }
        for &b in up[last].iter().rev() {
            let mut c = chain.clone();
            c.push(b);
            stack.push(c);
        }
    }
    chains
}

/// The order complex of the subposet on `subset`; vertices keep the poset labels.
pub fn order_complex<P: FinitePoset + ?Sized>(poset: &P, subset: &[usize]) -> SimplicialComplex {
    let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut facets: Vec<Vec<usize>> = maximal_chains(poset, subset)
        .into_iter()
        .map(|c| {
            let mut f: Vec<usize> = c.iter().map(|x| pos[x]).collect();
            f.sort();
            f
        })
        .collect();
    facets.sort();
    SimplicialComplex { vertices: subset.iter().map(|&x| poset.label(x)).collect(), facets }
}

impl SimplicialComplex {
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn dimension(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
    }

    /// Nonempty faces grouped by dimension, each list sorted.
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let top = (self.dimension() + 1) as usize;
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top];
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Alternating face count including the empty face in degree −1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -1i64;
        for (d, fs) in self.faces().iter().enumerate() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            chi += sign * fs.len() as i64;
        }
        chi
    }
}

/// Reduced homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: i32,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    /// degrees −1 through the dimension of the complex
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(|g| g.rank == 0 && g.torsion.is_empty())
    }

    /// Nonzero groups only.
    pub fn nonzero(&self) -> Vec<&HomologyGroup> {
        self.groups.iter().filter(|g| g.rank > 0 || !g.torsion.is_empty()).collect()
    }

    /// Reduced homology of S^d: one Z in degree d.
    pub fn is_sphere(&self, d: i32) -> bool {
        let nz = self.nonzero();
        nz.len() == 1 && nz[0].degree == d && nz[0].rank == 1 && nz[0].torsion.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|g| if g.degree.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum()
    }
}

type SparseIntRow = BTreeMap<usize, BigInt>;

/// Boundary matrix from faces of dimension d to faces of dimension d−1, as rows
/// indexed by the d-faces. Dimension 0 maps to the single empty face.
pub fn boundary_rows(faces: &[Vec<Vec<usize>>], d: usize) -> Vec<SparseIntRow> {
    if d == 0 {
        return faces[0].iter().map(|_| BTreeMap::from([(0, BigInt::one())])).collect();
    }
    let index: HashMap<&Vec<usize>, usize> = faces[d - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
    faces[d]
        .iter()
        .map(|f| {
            let mut row = BTreeMap::new();
            for skip in 0..f.len() {
                let g: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let sign = if skip % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                row.insert(index[&g], sign);
            }
            row
        })
        .collect()
}

/// Invariant factors of an integer matrix (nonzero diagonal of its Smith form).
///
/// Unit pivots are eliminated sparsely first; the remainder goes through a
/// dense reduction.
pub fn invariant_factors(rows: Vec<SparseIntRow>, ncols: usize) -> Vec<BigInt> {
    let mut rows: Vec<Option<SparseIntRow>> = rows.into_iter().map(|r| Some(r).filter(|r| !r.is_empty())).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for &c in r.keys() {
                col_rows[c].insert(i);
            }
        }
    }
    let mut units = 0usize;
    loop {
        // unit entry whose column is shortest
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for (&c, v) in r {
                if v.abs().is_one() {
                    let cost = col_rows[c].len();
                    if best.map_or(true, |(_, _, b)| cost < b) {
                        best = Some((i, c, cost));
                    }
                }
            }
            if matches!(best, Some((_, _, 1))) {
                break;
            }
        }
        let Some((pi, pc, _)) = best else { break };
        let prow = rows[pi].take().unwrap();
        for &c in prow.keys() {
            col_rows[c].remove(&pi);
        }
        let pv = prow[&pc].clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().collect();
        for i in others {
            let r = rows[i].as_mut().unwrap();
            let factor = &r[&pc] * &pv; // pv = ±1 so a/pv = a·pv
            for (&c, v) in &prow {
                let e = r.entry(c).or_insert_with(BigInt::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    r.remove(&c);
                    col_rows[c].remove(&i);
                } else {
                    col_rows[c].insert(i);
                }
            }
            if r.is_empty() {
                rows[i] = None;
            }
        }
        units += 1;
    }
    let rest: Vec<SparseIntRow> = rows.into_iter().flatten().collect();
    let mut factors = vec![BigInt::one(); units];
    if !rest.is_empty() {
        let cols: Vec<usize> = rest.iter().flat_map(|r| r.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        let cpos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = vec![vec![BigInt::zero(); cols.len()]; rest.len()];
        for (i, r) in rest.iter().enumerate() {
            for (c, v) in r {
                dense[i][cpos[c]] = v.clone();
            }
        }
        factors.extend(dense_diagonal(dense));
    }
    normalize_factors(factors)
}

/// Diagonalize by unimodular row and column operations; returns the nonzero diagonal.
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the remaining block
        let mut piv: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && piv.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            if !a[i][t].is_zero() {
                let qt = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let s = &qt * &a[t][j];
                    a[i][j] -= s;
                }
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..n {
            if !a[t][j].is_zero() {
                let qt = a[t][j].div_floor(&a[t][t]);
                for i in t..m {
                    let s = &qt * &a[i][t];
                    a[i][j] -= s;
                }
                clean &= a[t][j].is_zero();
            }
        }
        if clean {
            diag.push(a[t][t].abs());
            t += 1;
        }
    }
    diag
}

/// Turn any diagonal into invariant factors d_1 | d_2 | ….
fn normalize_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Reduced integral homology of a simplicial complex.
pub fn homology(c: &SimplicialComplex) -> HomologyProfile {
    let faces = c.faces();
    let top = faces.len();
    // ranks[d] and torsion[d] for ∂_d : C_d -> C_{d-1}, d = 0..top
    let mut ranks = vec![0usize; top + 1];
    let mut torsion: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
    for d in 0..top {
        let ncols = if d == 0 { 1 } else { faces[d - 1].len() };
        let f = invariant_factors(boundary_rows(&faces, d), ncols);
        ranks[d] = f.len();
        torsion[d] = f.into_iter().filter(|x| !x.is_one()).collect();
    }
    let count = |d: i32| if d < 0 { 1 } else { faces[d as usize].len() };
    let mut groups = Vec::new();
    for d in -1..top as i32 {
        let rank_out = if d < 0 { 0 } else { ranks[d as usize] };
        let rank_in = ranks[(d + 1) as usize];
        groups.push(HomologyGroup {
            degree: d,
            rank: count(d) - rank_out - rank_in,
            torsion: torsion[(d + 1) as usize].iter().map(|x| x.to_string()).collect(),
        });
    }
    HomologyProfile { groups }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContractibilityVerdict {
    #[serde(rename = "CONTRACTIBLE")]
    Contractible,
    #[serde(rename = "ACYCLIC")]
    Acyclic,
    #[serde(rename = "FAIL")]
    Fail,
}

/// Whether greedy elementary collapses reduce the complex to a single vertex.
pub fn collapses_to_point(c: &SimplicialComplex) -> bool {
    if c.is_empty() {
        return false;
    }
    let all: Vec<Vec<usize>> = c.faces().into_iter().flatten().collect();
    let index: HashMap<&Vec<usize>, usize> = all.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let n = all.len();
    let mut cofaces: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut facets_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, f) in all.iter().enumerate() {
        if f.len() < 2 {
            continue;
        }
        for skip in 0..f.len() {
            let g: Vec<usize> = f.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
            let gi = index[&g];
            cofaces[gi].insert(i);
            facets_of[i].push(gi);
        }
    }
    let mut alive = vec![true; n];
    let mut remaining = n;
    // free faces in lexicographic order
    let mut work: BTreeSet<(Vec<usize>, usize)> =
        (0..n).filter(|&i| cofaces[i].len() == 1).map(|i| (all[i].clone(), i)).collect();
    while let Some((_, s)) = work.pop_first() {
        if !alive[s] || cofaces[s].len() != 1 {
            continue;
        }
        let t = *cofaces[s].iter().next().unwrap();
        if !cofaces[t].is_empty() {
            continue;
        }
        for dead in [s, t] {
            alive[dead] = false;
            remaining -= 1;
            for &b in &facets_of[dead] {
                cofaces[b].remove(&dead);
                if !alive[b] {
                    continue;
                }
                if cofaces[b].len() == 1 {
                    work.insert((all[b].clone(), b));
                } else if cofaces[b].is_empty() {
                    // b became maximal, so its faces with b as sole coface are free now
                    for &c in &facets_of[b] {
                        if alive[c] && cofaces[c].len() == 1 {
                            work.insert((all[c].clone(), c));
                        }
                    }
                }
            }
        }
    }
    remaining == 1
}

/// CONTRACTIBLE via collapses, else ACYCLIC if reduced homology vanishes, else FAIL.
pub fn contractibility_check(c: &SimplicialComplex) -> (ContractibilityVerdict, HomologyProfile) {
    let h = homology(c);
    if collapses_to_point(c) {
        return (ContractibilityVerdict::Contractible, h);
    }
    if h.is_trivial() && !c.is_empty() {
        (ContractibilityVerdict::Acyclic, h)
    } else {
        (ContractibilityVerdict::Fail, h)
    }
}
