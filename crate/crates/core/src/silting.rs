//! Silting objects and pairs: the order, mutation, Bongartz completion and
//! interval enumeration.
//!
//! Objects are sets of registry ids, so equality of silting objects is
//! equality of sorted id lists.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Family};
use crate::error::{Result, SiltError};
use crate::homotopy::{
    cone, decompose, minimal_left_approximation, minimal_right_approximation, Category, Complex, ObjId,
};
use crate::linalg::Mat;

/// A basic object given by its indecomposable summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<ObjId>", into = "Vec<ObjId>")]
pub struct SiltingObject {
    summands: Vec<ObjId>,
}

impl SiltingObject {
    pub fn new(ids: impl IntoIterator<Item = ObjId>) -> Self {
        let mut summands: Vec<ObjId> = ids.into_iter().collect();
        summands.sort();
        summands.dedup();
        SiltingObject { summands }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn summands(&self) -> &[ObjId] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn contains(&self, id: ObjId) -> bool {
        self.summands.binary_search(&id).is_ok()
    }

    pub fn is_subset(&self, other: &SiltingObject) -> bool {
        self.summands.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &SiltingObject) -> SiltingObject {
        SiltingObject::new(self.summands.iter().copied().filter(|&x| other.contains(x)))
    }

    pub fn union(&self, other: &SiltingObject) -> SiltingObject {
        SiltingObject::new(self.summands.iter().chain(&other.summands).copied())
    }

    pub fn without(&self, id: ObjId) -> SiltingObject {
        SiltingObject::new(self.summands.iter().copied().filter(|&x| x != id))
    }

    /// Sub-objects indexed by bitmask over the summand list.
    pub fn subset(&self, mask: u64) -> SiltingObject {
        SiltingObject::new(
            self.summands.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x),
        )
    }
}

impl From<Vec<ObjId>> for SiltingObject {
    fn from(ids: Vec<ObjId>) -> Self {
        SiltingObject::new(ids)
    }
}

impl From<SiltingObject> for Vec<ObjId> {
    fn from(m: SiltingObject) -> Self {
        m.summands
    }
}

impl std::fmt::Display for SiltingObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A silting object together with a subset of its summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SiltingPair {
    pub ambient: SiltingObject,
    pub sub: SiltingObject,
}

impl SiltingPair {
    pub fn new(ambient: SiltingObject, sub: SiltingObject) -> Result<Self> {
        if !sub.is_subset(&ambient) {
            return Err(SiltError::ConventionViolation("pair sub-object is not a summand set of the ambient".into()));
        }
        Ok(SiltingPair { ambient, sub })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Right,
    Left,
}

/// Whether the silting predicate is exact for this algebra rather than heuristic.
pub fn silting_predicate_exact(alg: &Algebra) -> bool {
    matches!(alg.family(), Family::Lambda { .. } | Family::LinearA { .. })
}

type MutationKey = (SiltingObject, SiltingObject, Direction);

/// Silting computations over one category, with memoized mutations.
pub struct Silting {
    cat: Arc<Category>,
    mutations: RwLock<HashMap<MutationKey, SiltingObject>>,
}

impl Silting {
    pub fn new(cat: Arc<Category>) -> Self {
        Silting { cat, mutations: RwLock::new(HashMap::new()) }
    }

    pub fn from_algebra(alg: Algebra) -> Self {
        Self::new(Arc::new(Category::new(alg)))
    }

    pub fn category(&self) -> &Category {
        &self.cat
    }

    pub fn category_arc(&self) -> Arc<Category> {
        self.cat.clone()
    }

    pub fn algebra(&self) -> &Algebra {
        self.cat.algebra()
    }

    /// The projective generator.
    pub fn standard(&self) -> SiltingObject {
        SiltingObject::new(self.cat.projectives())
    }

    /// Decompose and intern a list of complexes.
    pub fn object_of(&self, xs: &[Complex]) -> Result<SiltingObject> {
        let mut ids = Vec::new();
        for x in xs {
            ids.extend(self.cat.intern(x)?);
        }
        Ok(SiltingObject::new(ids))
    }

    pub fn complexes(&self, m: &SiltingObject) -> Vec<Complex> {
        m.summands.iter().map(|&x| (*self.cat.object(x)).clone()).collect()
    }

    /// Hom(a, Σ^i b) = 0 for all i > 0, summand by summand.
    pub fn hom_positive_vanishes(&self, a: &[ObjId], b: &[ObjId]) -> bool {
        a.iter().all(|&x| b.iter().all(|&y| self.cat.hom_vanishes(x, y, 1, i32::MAX)))
    }

    pub fn is_presilting_ids(&self, m: &SiltingObject) -> bool {
        self.hom_positive_vanishes(&m.summands, &m.summands)
    }

    pub fn is_presilting(&self, xs: &[Complex]) -> Result<bool> {
        let mut ids = Vec::new();
        for x in xs {
            ids.extend(self.cat.intern(x)?);
        }
        // repeated summands are harmless for orthogonality
        Ok(self.hom_positive_vanishes(&ids, &ids))
    }

    /// Presilting, full rank and a unimodular matrix of K₀ classes.
    pub fn is_silting_ids(&self, m: &SiltingObject) -> bool {
        let nv = self.algebra().num_vertices();
        if m.rank() != nv || !self.is_presilting_ids(m) {
            return false;
        }
        let rows: Vec<Vec<i64>> = m.summands.iter().map(|&x| self.cat.k0_class(x)).collect();
        Mat::from_i64(&rows).determinant().abs().is_one()
    }

    pub fn is_silting(&self, xs: &[Complex]) -> Result<bool> {
        // non-basic inputs are judged on their basic part
        Ok(self.is_silting_ids(&self.object_of(xs)?))
    }

    /// M ≤ N iff Hom(M, Σ^i N) = 0 for all i > 0.
    pub fn leq(&self, m: &SiltingObject, n: &SiltingObject) -> bool {
        self.hom_positive_vanishes(&m.summands, &n.summands)
    }

    pub fn shift(&self, m: &SiltingObject, k: i32) -> SiltingObject {
        SiltingObject::new(m.summands.iter().map(|&x| self.cat.shift(x, k)))
    }

    /// Indecomposable summands produced by exchanging `x` against add(sub).
    fn exchange_parts(&self, sub: &SiltingObject, x: ObjId, dir: Direction) -> Result<Vec<Complex>> {
        let alg = self.algebra();
        let t = self.complexes(sub);
        let d = (*self.cat.object(x)).clone();
        let c = match dir {
            Direction::Right => {
                let (f, _) = minimal_right_approximation(alg, &t, &d);
                cone(&f, alg)?.shift(-1)
            }
            Direction::Left => {
                let (g, _) = minimal_left_approximation(alg, &t, &d);
                cone(&g, alg)?
            }
        };
        decompose(&c, alg)
    }

    fn mutation_parts(&self, p: &SiltingPair, dir: Direction) -> Result<Vec<Complex>> {
        let mut parts = Vec::new();
        for &x in &p.ambient.summands {
            if !p.sub.contains(x) {
                parts.extend(self.exchange_parts(&p.sub, x, dir)?);
            }
        }
        Ok(parts)
    }

    fn finish_mutation(&self, p: &SiltingPair, dir: Direction, parts: Vec<Complex>) -> SiltingObject {
        let new = parts.into_iter().map(|c| self.cat.intern_indecomposable(c));
        let result = SiltingObject::new(p.sub.summands.iter().copied().chain(new));
        self.mutations.write().unwrap().insert((p.ambient.clone(), p.sub.clone(), dir), result.clone());
        result
    }

    fn cached_mutation(&self, p: &SiltingPair, dir: Direction) -> Option<SiltingObject> {
        self.mutations.read().unwrap().get(&(p.ambient.clone(), p.sub.clone(), dir)).cloned()
    }

    pub fn mutate(&self, p: &SiltingPair, dir: Direction) -> Result<SiltingObject> {
        if let Some(r) = self.cached_mutation(p, dir) {
            return Ok(r);
        }
        if !p.sub.is_subset(&p.ambient) {
            return Err(SiltError::ConventionViolation("pair sub-object is not a summand set of the ambient".into()));
        }
        if !self.is_silting_ids(&p.ambient) {
            return Err(SiltError::NotSilting);
        }
        let parts = self.mutation_parts(p, dir)?;
        Ok(self.finish_mutation(p, dir, parts))
    }

    /// Mutations of silting pairs whose exchange triangles are computed in
    /// parallel; interning stays sequential so registry ids are reproducible.
    pub fn mutate_batch(&self, pairs: &[SiltingPair], dir: Direction) -> Result<Vec<SiltingObject>> {
        let computed: Vec<Result<Option<Vec<Complex>>>> = pairs
            .par_iter()
            .map(|p| {
                if self.cached_mutation(p, dir).is_some() {
                    return Ok(None);
                }
                if !p.sub.is_subset(&p.ambient) {
                    return Err(SiltError::ConventionViolation(
                        "pair sub-object is not a summand set of the ambient".into(),
                    ));
                }
                if !self.is_silting_ids(&p.ambient) {
                    return Err(SiltError::NotSilting);
                }
                self.mutation_parts(p, dir).map(Some)
            })
            .collect();
        let mut out = Vec::with_capacity(pairs.len());
        for (p, parts) in pairs.iter().zip(computed) {
            out.push(match parts? {
                Some(parts) => match self.cached_mutation(p, dir) {
                    // a duplicate pair earlier in the batch already interned this one
                    Some(r) => r,
                    None => self.finish_mutation(p, dir, parts),
                },
                None => self.cached_mutation(p, dir).expect("cached"),
            });
        }
        Ok(out)
    }

    pub fn right_mutation(&self, p: &SiltingPair) -> Result<SiltingObject> {
        self.mutate(p, Direction::Right)
    }

    pub fn left_mutation(&self, p: &SiltingPair) -> Result<SiltingObject> {
        self.mutate(p, Direction::Left)
    }

    /// One mutation per summand, in summand order.
    pub fn irreducible_mutations(
        &self,
        m: &SiltingObject,
        dir: Direction,
    ) -> Result<Vec<(SiltingPair, SiltingObject)>> {
        m.summands
            .iter()
            .map(|&x| {
                let p = SiltingPair { ambient: m.clone(), sub: m.without(x) };
                let r = self.mutate(&p, dir)?;
                Ok((p, r))
            })
            .collect()
    }

    /// Σ^{-1}M ≤ X ≤ M for a single indecomposable X.
    pub fn object_in_two_term(&self, x: ObjId, m: &SiltingObject) -> bool {
        let lower = self.shift(m, -1);
        self.hom_positive_vanishes(&lower.summands, &[x]) && self.hom_positive_vanishes(&[x], &m.summands)
    }

    pub fn two_term_membership(&self, n: &SiltingObject, m: &SiltingObject) -> bool {
        self.leq(&self.shift(m, -1), n) && self.leq(n, m)
    }

    fn check_completable(&self, nprime: &SiltingObject, m: &SiltingObject) -> Result<()> {
        if !self.is_presilting_ids(nprime) {
            return Err(SiltError::NotTwoTerm("the partial object is not presilting".into()));
        }
        if let Some(x) = nprime.summands.iter().find(|&&x| !self.object_in_two_term(x, m)) {
            return Err(SiltError::NotTwoTerm(format!("summand {x} lies outside the two-term window")));
        }
        Ok(())
    }

    /// add(N' ∪ {B_l(M_i)}) with Σ^{-1}M_i → N'_l → B_l(M_i) a left N'-approximation triangle.
    pub fn bongartz_left(&self, nprime: &SiltingObject, m: &SiltingObject) -> Result<SiltingObject> {
        self.check_completable(nprime, m)?;
        let alg = self.algebra();
        let t = self.complexes(nprime);
        let mut ids = nprime.summands.clone();
        for &x in &m.summands {
            let d = self.cat.object(x).shift(-1);
            let (g, _) = minimal_left_approximation(alg, &t, &d);
            ids.extend(self.cat.intern(&cone(&g, alg)?)?);
        }
        Ok(SiltingObject::new(ids))
    }

    /// add(N' ∪ {B_r(M_i)}) with B_r(M_i) → N'_r → M_i a right N'-approximation triangle.
    pub fn bongartz_right(&self, nprime: &SiltingObject, m: &SiltingObject) -> Result<SiltingObject> {
        self.check_completable(nprime, m)?;
        let alg = self.algebra();
        let t = self.complexes(nprime);
        let mut ids = nprime.summands.clone();
        for &x in &m.summands {
            let d = (*self.cat.object(x)).clone();
            let (f, _) = minimal_right_approximation(alg, &t, &d);
            ids.extend(self.cat.intern(&cone(&f, alg)?.shift(-1))?);
        }
        Ok(SiltingObject::new(ids))
    }

    /// All silting N with Σ^{-k}M ≤ N ≤ M, in breadth-first discovery order.
    pub fn enumerate_interval(&self, m: &SiltingObject, k: u32, budget: usize) -> Result<Vec<SiltingObject>> {
        if !self.is_silting_ids(m) {
            return Err(SiltError::NotSilting);
        }
        let bottom = self.shift(m, -(k as i32));
        let mut seen: HashSet<SiltingObject> = HashSet::new();
        let mut order = vec![m.clone()];
        seen.insert(m.clone());
        let mut frontier = vec![m.clone()];
        while !frontier.is_empty() {
            let pairs: Vec<SiltingPair> = frontier
                .iter()
                .flat_map(|n| {
                    n.summands.iter().map(move |&x| SiltingPair { ambient: n.clone(), sub: n.without(x) })
                })
                .collect();
            let results = self.mutate_batch(&pairs, Direction::Right)?;
            let mut next = Vec::new();
            for r in results {
                if seen.contains(&r) || !self.leq(&bottom, &r) {
                    continue;
                }
                if order.len() >= budget {
                    return Err(SiltError::BudgetExceeded(budget));
                }
                seen.insert(r.clone());
                order.push(r.clone());
                next.push(r);
            }
            frontier = next;
        }
        Ok(order)
    }

    /// (N,N') ≤ (M,M') iff μ_{M'}(M) ≤ μ_{N'}(N) ≤ N ≤ M.
    pub fn pair_leq(&self, q: &SiltingPair, p: &SiltingPair) -> Result<bool> {
        let mu_p = self.right_mutation(p)?;
        let mu_q = self.right_mutation(q)?;
        Ok(self.leq(&mu_p, &mu_q) && self.leq(&mu_q, &q.ambient) && self.leq(&q.ambient, &p.ambient))
    }

    /// M' ⊆ N' ⊆ Σ^{-1}M * M and B_l(N';M) = N.
    pub fn pair_leq_bongartz(&self, q: &SiltingPair, p: &SiltingPair) -> Result<bool> {
        if !p.sub.is_subset(&q.sub) {
            return Ok(false);
        }
        if !q.sub.summands.iter().all(|&x| self.object_in_two_term(x, &p.ambient)) {
            return Ok(false);
        }
        Ok(self.bongartz_left(&q.sub, &p.ambient)? == q.ambient)
    }

    /// Summand positions j with M_j ∉ M'; these label the simples generating the torsion class.
    pub fn torsion_simple_labels(&self, p: &SiltingPair) -> BTreeSet<usize> {
        p.ambient.summands.iter().enumerate().filter(|(_, &x)| !p.sub.contains(x)).map(|(j, _)| j).collect()
    }

    /// Integers a ≤ b with Σ^a M ≤ N ≤ Σ^b M for every N.
    pub fn bounding_interval(&self, ns: &[SiltingObject], m: &SiltingObject, cap: i32) -> Result<(i32, i32)> {
        let mut a = 0;
        while !ns.iter().all(|n| self.leq(&self.shift(m, a), n)) {
            a -= 1;
            if -a > cap {
                return Err(SiltError::BudgetExceeded(cap as usize));
            }
        }
        let mut b = 0;
        while !ns.iter().all(|n| self.leq(n, &self.shift(m, b))) {
            b += 1;
            if b > cap {
                return Err(SiltError::BudgetExceeded(cap as usize));
            }
        }
        Ok((a, b))
    }

    /// Breadth-first closure of {m} under irreducible mutations in `dir`, without pruning.
    pub fn mutation_graph(&self, m: &SiltingObject, dir: Direction, budget: usize) -> Result<Vec<SiltingObject>> {
        let mut seen = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([m.clone()]);
        seen.insert(m.clone());
        while let Some(n) = queue.pop_front() {
            order.push(n.clone());
            for (_, r) in self.irreducible_mutations(&n, dir)? {
                if seen.insert(r.clone()) {
                    if seen.len() > budget {
                        return Err(SiltError::BudgetExceeded(budget));
                    }
                    queue.push_back(r);
                }
            }
        }
        Ok(order)
    }
}
