use std::collections::BTreeMap;

use num_traits::One;

use super::pmat::{Elem, PMat};
use crate::algebra::{Algebra, Vertex};
use crate::error::{Result, SiltError};
use crate::linalg::Q;

/// Bounded cochain complex of projectives. `diffs[d]` maps degree d to degree d+1.
///
/// Degrees with no summands are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Complex {
    pub terms: BTreeMap<i32, Vec<Vertex>>,
    pub diffs: BTreeMap<i32, PMat>,
}

/// Degreewise vertex multisets; equal for isomorphic minimal complexes.
pub type ShapeKey = Vec<(i32, Vec<Vertex>)>;

impl Complex {
    pub fn zero() -> Self {
        Complex::default()
    }

    pub fn stalk(vertices: Vec<Vertex>, degree: i32) -> Self {
        let mut c = Complex::zero();
        if !vertices.is_empty() {
            c.terms.insert(degree, vertices);
        }
        c
    }

    /// Build from terms and differentials, dropping empty degrees and zero-size maps.
    pub fn new(terms: BTreeMap<i32, Vec<Vertex>>, diffs: BTreeMap<i32, PMat>) -> Result<Self> {
        let terms: BTreeMap<i32, Vec<Vertex>> = terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let mut c = Complex { terms, diffs: BTreeMap::new() };
        for (d, m) in diffs {
            let (src, tgt) = (c.term(d).len(), c.term(d + 1).len());
            if m.rows != tgt || m.cols != src {
                return Err(SiltError::IncompatibleMap(format!(
                    "differential in degree {d} is {}x{}, expected {tgt}x{src}",
                    m.rows, m.cols
                )));
            }
            if src > 0 && tgt > 0 && !m.is_zero() {
                c.diffs.insert(d, m);
            }
        }
        Ok(c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, d: i32) -> &[Vertex] {
        self.terms.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Differential out of degree d (a zero matrix when none is stored).
    pub fn diff(&self, d: i32) -> PMat {
        self.diffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| PMat::zeros(self.term(d + 1).len(), self.term(d).len()))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_summands(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    /// Sorted degreewise vertex multisets.
    pub fn shape_key(&self) -> ShapeKey {
        self.terms
            .iter()
            .map(|(&d, vs)| {
                let mut v = vs.clone();
                v.sort_unstable();
                (d, v)
            })
            .collect()
    }

    /// Alternating sum of projective multiplicities in the basis {[P(v)]}.
    pub fn k0_class(&self, nv: usize) -> Vec<i64> {
        let mut k = vec![0i64; nv];
        for (&d, vs) in &self.terms {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            for &v in vs {
                k[v] += sign;
            }
        }
        k
    }

    /// True when every composite of consecutive differentials vanishes.
    pub fn d_squared_zero(&self, alg: &Algebra) -> bool {
        self.diffs.iter().all(|(&d, m)| match self.diffs.get(&(d + 1)) {
            Some(next) => next.mul(m, alg).is_zero(),
            None => true,
        })
    }

    /// Every entry is a combination of paths between the right vertices.
    pub fn entries_well_typed(&self, alg: &Algebra) -> bool {
        self.diffs.iter().all(|(&d, m)| {
            let (src, tgt) = (self.term(d), self.term(d + 1));
            (0..m.rows).all(|i| {
                (0..m.cols).all(|j| {
                    m.get(i, j).0.iter().all(|(p, _)| {
                        let path = alg.path(*p);
                        path.source == tgt[i] && path.target == src[j]
                    })
                })
            })
        })
    }

    /// Σ^k: (Σ^k X)^d = X^{d+k}, differential multiplied by (-1)^k.
    pub fn shift(&self, k: i32) -> Complex {
        let sign = if k.rem_euclid(2) == 0 { Q::one() } else { -Q::one() };
        Complex {
            terms: self.terms.iter().map(|(&d, v)| (d - k, v.clone())).collect(),
            diffs: self.diffs.iter().map(|(&d, m)| (d - k, m.scale(sign))).collect(),
        }
    }

    /// Block-diagonal sum, summands of `parts[0]` first in every degree.
    pub fn direct_sum(parts: &[&Complex]) -> Complex {
        let mut degrees: Vec<i32> = parts.iter().flat_map(|c| c.terms.keys().copied()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &d in &degrees {
            let vs: Vec<Vertex> = parts.iter().flat_map(|c| c.term(d).iter().copied()).collect();
            terms.insert(d, vs);
            let blocks: Vec<PMat> = parts.iter().map(|c| c.diff(d)).collect();
            let refs: Vec<&PMat> = blocks.iter().collect();
            let m = PMat::block_diag(&refs);
            if !m.is_zero() && m.rows > 0 && m.cols > 0 {
                diffs.insert(d, m);
            }
        }
        Complex { terms, diffs }
    }

    /// Degrees where either complex has summands.
    pub fn joint_degrees(a: &Complex, b: &Complex) -> Vec<i32> {
        let mut ds: Vec<i32> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

/// Chain map given by its degreewise components `comps[d]: source^d -> target^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    pub comps: BTreeMap<i32, PMat>,
}

impl ChainMap {
    pub fn zero(source: &Complex, target: &Complex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn identity(x: &Complex, alg: &Algebra) -> Self {
        let comps = x.terms.iter().map(|(&d, vs)| (d, PMat::identity(vs, alg))).collect();
        ChainMap { source: x.clone(), target: x.clone(), comps }
    }

    pub fn comp(&self, d: i32) -> PMat {
        self.comps
            .get(&d)
            .cloned()
            .unwrap_or_else(|| PMat::zeros(self.target.term(d).len(), self.source.term(d).len()))
    }

    pub fn is_chain_map(&self, alg: &Algebra) -> bool {
        Complex::joint_degrees(&self.source, &self.target).into_iter().all(|d| {
            let lhs = self.target.diff(d).mul(&self.comp(d), alg);
            let rhs = self.comp(d + 1).mul(&self.source.diff(d), alg);
            lhs == rhs
        })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(PMat::is_zero)
    }

    /// self o other.
    pub fn compose(&self, other: &ChainMap, alg: &Algebra) -> ChainMap {
        let mut comps = BTreeMap::new();
        for &d in other.source.terms.keys() {
            if self.target.term(d).is_empty() {
                continue;
            }
            let m = self.comp(d).mul(&other.comp(d), alg);
            if !m.is_zero() {
                comps.insert(d, m);
            }
        }
        ChainMap { source: other.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut comps = BTreeMap::new();
        for &d in self.source.terms.keys() {
            if self.target.term(d).is_empty() {
                continue;
            }
            let m = self.comp(d).add(&other.comp(d));
            if !m.is_zero() {
                comps.insert(d, m);
            }
        }
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, c: Q) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|(&d, m)| (d, m.scale(c))).filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    /// The same components viewed as a map Σ^k source -> Σ^k target, with signs
    /// so that it stays a chain map.
    pub fn shift(&self, k: i32) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            comps: self.comps.iter().map(|(&d, m)| (d - k, m.clone())).collect(),
        }
    }
}

/// Mapping cone: C^d = X^{d+1} ⊕ Y^d with differential [[-d_X, 0], [f, d_Y]].
pub fn cone(f: &ChainMap, alg: &Algebra) -> Result<Complex> {
    if !f.is_chain_map(alg) {
        return Err(SiltError::IncompatibleMap("map does not commute with differentials".into()));
    }
    let (x, y) = (&f.source, &f.target);
    let mut degrees: Vec<i32> = x.terms.keys().map(|d| d - 1).chain(y.terms.keys().copied()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut terms = BTreeMap::new();
    for &d in &degrees {
        let mut vs = x.term(d + 1).to_vec();
        vs.extend_from_slice(y.term(d));
        terms.insert(d, vs);
    }
    let mut diffs = BTreeMap::new();
    for &d in &degrees {
        let top = x.diff(d + 1).scale(-Q::one()).hcat(&PMat::zeros(x.term(d + 2).len(), y.term(d).len()));
        let bottom = f.comp(d + 1).hcat(&y.diff(d));
        diffs.insert(d, top.vcat(&bottom));
    }
    Complex::new(terms, diffs)
}

/// Complexes from stalks: convenience for a single projective in degree 0.
pub fn projective_complex(alg: &Algebra, v: &str) -> Result<Complex> {
    let v = alg.vertex(v)?;
    Ok(Complex::stalk(vec![v], 0))
}

/// Two-term complex P(src) -> P(tgt) in degrees (deg, deg+1) given by one path combination.
pub fn two_term(src: Vertex, tgt: Vertex, deg: i32, entry: Elem) -> Complex {
    let mut terms = BTreeMap::new();
    terms.insert(deg, vec![src]);
    terms.insert(deg + 1, vec![tgt]);
    let mut m = PMat::zeros(1, 1);
    m.set(0, 0, entry);
    let mut diffs = BTreeMap::new();
    diffs.insert(deg, m);
    Complex::new(terms, diffs).expect("shapes agree by construction")
}

/// Interval [lo, hi] outside which Hom(X, Σ^i Y) vanishes.
///
/// A chain map X -> Σ^i Y needs some d with X^d and Y^{d+i} both nonzero.
pub fn hom_window(x: &Complex, y: &Complex) -> Result<(i32, i32)> {
    match (x.min_degree(), x.max_degree(), y.min_degree(), y.max_degree()) {
        (Some(xmin), Some(xmax), Some(ymin), Some(ymax)) => Ok((ymin - xmax, ymax - xmin)),
        _ => Err(SiltError::ZeroObject),
    }
}
