//! Interned indecomposable objects with cached morphism dimensions.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::complex::{hom_window, Complex, ShapeKey};
use super::decompose::decompose;
use super::hom::{hom_dim, HomSystem};
use super::minimal::minimalize;
use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub u32);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

fn degree_tops(f: &super::complex::ChainMap, alg: &Algebra) -> Vec<(i32, Mat)> {
    f.source.terms.keys().map(|&d| (d, f.comp(d).top(alg))).collect()
}

/// Isomorphism of minimal indecomposable complexes: equal shapes and some
/// composite a -> b -> a of basis maps that is invertible in every degree.
pub fn is_isomorphic_indecomposable(alg: &Algebra, a: &Complex, b: &Complex) -> bool {
    if a.shape_key() != b.shape_key() {
        return false;
    }
    if a.is_zero() {
        return true;
    }
    let fwd = HomSystem::new(alg, a, b);
    let bwd = HomSystem::new(alg, b, a);
    let fs: Vec<Vec<(i32, Mat)>> =
        fwd.chain_map_basis().iter().map(|v| degree_tops(&fwd.to_map(v), alg)).collect();
    let gs: Vec<Vec<(i32, Mat)>> =
        bwd.chain_map_basis().iter().map(|v| degree_tops(&bwd.to_map(v), alg)).collect();
    // a single map invertible in every degree is already an isomorphism
    if fs.iter().any(|f| f.iter().all(|(_, m)| m.nrows() == m.ncols() && !m.determinant().is_zero())) {
        return true;
    }
    fs.iter().any(|f| {
        gs.iter().any(|g| {
            f.iter().zip(g).all(|((_, mf), (_, mg))| !mg.mul(mf).determinant().is_zero())
        })
    })
}

/// Isomorphism in the homotopy category via Krull–Schmidt matching.
pub fn is_isomorphic(alg: &Algebra, x: &Complex, y: &Complex) -> Result<bool> {
    let xs = decompose(x, alg)?;
    let mut ys = decompose(y, alg)?;
    if xs.len() != ys.len() {
        return Ok(false);
    }
    for a in &xs {
        match ys.iter().position(|b| is_isomorphic_indecomposable(alg, a, b)) {
            Some(k) => {
                ys.remove(k);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Default)]
struct Registry {
    objects: Vec<Arc<Complex>>,
    by_key: HashMap<ShapeKey, Vec<ObjId>>,
}

/// The ambient category K^b(proj A) with an object registry.
///
/// Interning is serialized behind one lock so ids depend only on call order.
pub struct Category {
    alg: Arc<Algebra>,
    registry: Mutex<Registry>,
    snapshot: RwLock<Vec<Arc<Complex>>>,
    shift_cache: RwLock<HashMap<(ObjId, i32), ObjId>>,
    hom_cache: RwLock<HashMap<(ObjId, ObjId, i32), usize>>,
}

impl Category {
    pub fn new(alg: Algebra) -> Self {
        Self::from_arc(Arc::new(alg))
    }

    pub fn from_arc(alg: Arc<Algebra>) -> Self {
        Category {
            alg,
            registry: Mutex::new(Registry::default()),
            snapshot: RwLock::new(Vec::new()),
            shift_cache: RwLock::new(HashMap::new()),
            hom_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<Algebra> {
        self.alg.clone()
    }

    pub fn num_objects(&self) -> usize {
        self.snapshot.read().unwrap().len()
    }

    pub fn object(&self, id: ObjId) -> Arc<Complex> {
        self.snapshot.read().unwrap()[id.0 as usize].clone()
    }

    /// Intern a minimal indecomposable complex.
    pub fn intern_indecomposable(&self, x: Complex) -> ObjId {
        let key = x.shape_key();
        let mut reg = self.registry.lock().unwrap();
        if let Some(cands) = reg.by_key.get(&key) {
            for &c in cands {
                if is_isomorphic_indecomposable(&self.alg, &reg.objects[c.0 as usize], &x) {
                    return c;
                }
            }
        }
        let id = ObjId(reg.objects.len() as u32);
        let arc = Arc::new(x);
        reg.objects.push(arc.clone());
        reg.by_key.entry(key).or_default().push(id);
        self.snapshot.write().unwrap().push(arc);
        id
    }

    /// Decompose and intern; ids returned with multiplicity, sorted.
    pub fn intern(&self, x: &Complex) -> Result<Vec<ObjId>> {
        let mut ids: Vec<ObjId> =
            decompose(x, &self.alg)?.into_iter().map(|c| self.intern_indecomposable(c)).collect();
        ids.sort();
        Ok(ids)
    }

    pub fn projective(&self, v: usize) -> ObjId {
        self.intern_indecomposable(Complex::stalk(vec![v], 0))
    }

    pub fn projectives(&self) -> Vec<ObjId> {
        (0..self.alg.num_vertices()).map(|v| self.projective(v)).collect()
    }

    pub fn shift(&self, id: ObjId, k: i32) -> ObjId {
        if k == 0 {
            return id;
        }
        if let Some(&s) = self.shift_cache.read().unwrap().get(&(id, k)) {
            return s;
        }
        let x = self.object(id).shift(k);
        let s = self.intern_indecomposable(x);
        let mut cache = self.shift_cache.write().unwrap();
        cache.insert((id, k), s);
        cache.insert((s, -k), id);
        s
    }

    /// Interval outside which Hom(a, Σ^i b) vanishes.
    pub fn hom_window(&self, a: ObjId, b: ObjId) -> (i32, i32) {
        hom_window(&self.object(a), &self.object(b)).expect("registered objects are nonzero")
    }

    /// dim Hom(a, Σ^i b), cached.
    pub fn hom_dim(&self, a: ObjId, b: ObjId, i: i32) -> usize {
        let (lo, hi) = self.hom_window(a, b);
        if i < lo || i > hi {
            return 0;
        }
        if let Some(&d) = self.hom_cache.read().unwrap().get(&(a, b, i)) {
            return d;
        }
        let d = hom_dim(&self.alg, &self.object(a), &self.object(b), i);
        self.hom_cache.write().unwrap().insert((a, b, i), d);
        d
    }

    /// Hom(a, Σ^i b) = 0 for all i in the inclusive range.
    pub fn hom_vanishes(&self, a: ObjId, b: ObjId, from: i32, to: i32) -> bool {
        let (lo, hi) = self.hom_window(a, b);
        (from.max(lo)..=to.min(hi)).all(|i| self.hom_dim(a, b, i) == 0)
    }

    pub fn k0_class(&self, id: ObjId) -> Vec<i64> {
        self.object(id).k0_class(self.alg.num_vertices())
    }

    /// Minimal model of an arbitrary complex (not interned).
    pub fn minimal(&self, x: &Complex) -> Complex {
        minimalize(x, &self.alg)
    }
}
