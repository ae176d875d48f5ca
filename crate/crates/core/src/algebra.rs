//! Bound quiver algebras with monomial relations.
//!
//! Module convention: P(v) is spanned by the basis paths starting at v. A path
//! p from v to u gives the map P(u) -> P(v), x |-> p.x (pre-concatenation), so
//! Hom(P(u), P(v)) has basis the paths v -> u and composition f o g is the
//! concatenation (path of f).(path of g).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SiltError};

pub type Vertex = usize;
pub type PathId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// i -> i+1
    Fwd,
    /// i+1 -> i
    Bwd,
}

/// Which construction produced the algebra; used to label heuristic predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Lambda { r: usize, n: usize, m: usize },
    LinearA { orientation: Vec<Orientation> },
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: Vertex,
    pub target: Vertex,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Algebra {
    spec: QuiverSpec,
    family: Family,
    arrow_ends: Vec<(Vertex, Vertex)>,
    relations: Vec<Vec<usize>>,
    paths: Vec<Path>,
    index: HashMap<Vec<usize>, Vec<PathId>>,
    lazy: Vec<PathId>,
    // between[s][t]: basis paths from s to t
    between: Vec<Vec<Vec<PathId>>>,
    // dense table, None = zero or not composable
    mult: Vec<Option<PathId>>,
}

fn ends_with_relation(arrows: &[usize], relations: &[Vec<usize>]) -> bool {
    relations.iter().any(|r| arrows.ends_with(r))
}

impl Algebra {
    pub fn build(spec: QuiverSpec) -> Result<Algebra> {
        Self::build_with_family(spec, Family::Custom)
    }

    fn build_with_family(spec: QuiverSpec, family: Family) -> Result<Algebra> {
        let mut vindex = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(SiltError::MalformedSpec(format!("duplicate vertex `{v}`")));
            }
        }
        if spec.vertices.is_empty() {
            return Err(SiltError::MalformedSpec("no vertices".into()));
        }
        let mut aindex = HashMap::new();
        let mut arrow_ends = Vec::new();
        for (i, a) in spec.arrows.iter().enumerate() {
            let s = *vindex
                .get(&a.src)
                .ok_or_else(|| SiltError::MalformedSpec(format!("arrow `{}` has dangling source", a.id)))?;
            let t = *vindex
                .get(&a.tgt)
                .ok_or_else(|| SiltError::MalformedSpec(format!("arrow `{}` has dangling target", a.id)))?;
            if aindex.insert(a.id.clone(), i).is_some() {
                return Err(SiltError::MalformedSpec(format!("duplicate arrow `{}`", a.id)));
            }
            arrow_ends.push((s, t));
        }
        let mut relations = Vec::new();
        for rel in &spec.relations {
            if rel.len() < 2 {
                return Err(SiltError::MalformedSpec(format!("relation {rel:?} has length < 2")));
            }
            let ids: Vec<usize> = rel
                .iter()
                .map(|a| {
                    aindex
                        .get(a)
                        .copied()
                        .ok_or_else(|| SiltError::MalformedSpec(format!("relation uses unknown arrow `{a}`")))
                })
                .collect::<Result<_>>()?;
            for w in ids.windows(2) {
                if arrow_ends[w[0]].1 != arrow_ends[w[1]].0 {
                    return Err(SiltError::MalformedSpec(format!("relation {rel:?} is not composable")));
                }
            }
            relations.push(ids);
        }

        let nv = spec.vertices.len();
        let na = arrow_ends.len();
        let l = relations.iter().map(Vec::len).max().unwrap_or(0).max(2);
        // A relation-free path longer than this visits some (l-1)-suffix state twice, so it pumps.
        let bound = (na.max(1) as u128)
            .checked_pow((l - 1) as u32)
            .map(|b| b + l as u128 + 1)
            .unwrap_or(u128::MAX);

        let mut paths: Vec<Path> = Vec::new();
        let mut lazy = Vec::with_capacity(nv);
        for v in 0..nv {
            lazy.push(paths.len());
            paths.push(Path { source: v, target: v, arrows: vec![] });
        }
        let mut frontier: Vec<PathId> = lazy.clone();
        let mut out_arrows: Vec<Vec<usize>> = vec![vec![]; nv];
        for (a, &(s, _)) in arrow_ends.iter().enumerate() {
            out_arrows[s].push(a);
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for pid in frontier {
                let p = paths[pid].clone();
                for &a in &out_arrows[p.target] {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    if ends_with_relation(&arrows, &relations) {
                        continue;
                    }
                    if arrows.len() as u128 > bound {
                        let names: Vec<&str> = arrows.iter().map(|&x| spec.arrows[x].id.as_str()).collect();
                        return Err(SiltError::InfiniteDimensional(format!(
                            "relation-free path of length {} found: {}",
                            arrows.len(),
                            names.join(".")
                        )));
                    }
                    next.push(paths.len());
                    paths.push(Path { source: p.source, target: arrow_ends[a].1, arrows });
                }
            }
            frontier = next;
        }

        let mut index: HashMap<Vec<usize>, Vec<PathId>> = HashMap::new();
        let mut between = vec![vec![Vec::new(); nv]; nv];
        for (i, p) in paths.iter().enumerate() {
            if !p.is_lazy() {
                index.entry(p.arrows.clone()).or_default().push(i);
            }
            between[p.source][p.target].push(i);
        }
        let dim = paths.len();
        let mut mult = vec![None; dim * dim];
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if p.target != q.source {
                    continue;
                }
                mult[i * dim + j] = if p.is_lazy() {
                    Some(j)
                } else if q.is_lazy() {
                    Some(i)
                } else {
                    let mut arrows = p.arrows.clone();
                    arrows.extend_from_slice(&q.arrows);
                    index.get(&arrows).map(|v| v[0])
                };
            }
        }
        Ok(Algebra { spec, family, arrow_ends, relations, paths, index, lazy, between, mult })
    }

    pub fn spec(&self) -> &QuiverSpec {
        &self.spec
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn num_vertices(&self) -> usize {
        self.spec.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrow_ends.len()
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.spec.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.spec
            .vertices
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| SiltError::UnknownVertex(name.to_string()))
    }

    pub fn path(&self, id: PathId) -> &Path {
        &self.paths[id]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn lazy(&self, v: Vertex) -> PathId {
        self.lazy[v]
    }

    /// Product p.q (p first), or None when zero or not composable.
    pub fn mul(&self, p: PathId, q: PathId) -> Option<PathId> {
        self.mult[p * self.paths.len() + q]
    }

    /// Basis paths from s to t.
    pub fn paths_from_to(&self, s: Vertex, t: Vertex) -> &[PathId] {
        &self.between[s][t]
    }

    /// Basis of Hom(P(u), P(v)): the paths v -> u.
    pub fn path_basis_between(&self, u: Vertex, v: Vertex) -> &[PathId] {
        &self.between[v][u]
    }

    /// dim P(v): number of basis paths starting at v.
    pub fn projective_dim(&self, v: Vertex) -> usize {
        self.between[v].iter().map(Vec::len).sum()
    }

    /// Cartan matrix C[u][v] = dim Hom(P(u), P(v)).
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices();
        (0..n)
            .map(|u| (0..n).map(|v| self.path_basis_between(u, v).len() as i64).collect())
            .collect()
    }

    pub fn path_name(&self, id: PathId) -> String {
        let p = &self.paths[id];
        if p.is_lazy() {
            format!("e_{}", self.spec.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.spec.arrows[a].id.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    pub fn parse_path(&self, s: &str) -> Result<PathId> {
        if let Some(v) = s.strip_prefix("e_") {
            if let Ok(v) = self.vertex(v) {
                return Ok(self.lazy[v]);
            }
        }
        let arrows: Vec<usize> = s
            .split('.')
            .map(|a| {
                self.spec
                    .arrows
                    .iter()
                    .position(|x| x.id == a)
                    .ok_or_else(|| SiltError::Parse(format!("unknown arrow `{a}` in path `{s}`")))
            })
            .collect::<Result<_>>()?;
        self.index
            .get(&arrows)
            .map(|v| v[0])
            .ok_or_else(|| SiltError::Parse(format!("`{s}` is not a nonzero basis path")))
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra({} vertices, {} arrows, {} relations, dim {})",
            self.num_vertices(),
            self.num_arrows(),
            self.num_relations(),
            self.dimension()
        )
    }
}

pub fn build_bound_quiver_algebra(spec: QuiverSpec) -> Result<Algebra> {
    Algebra::build(spec)
}

/// Relation windows for Λ(r,n,m): window j is the relation a_j.a_{j+1 mod n}.
/// The default places r consecutive windows so that the last ends at vertex 0,
/// where the tail attaches.
pub fn default_lambda_windows(r: usize, n: usize) -> Vec<usize> {
    (1..=r).map(|s| (n - 1 - s) % n).collect()
}

/// Λ(r,n,m): cycle 0 -> 1 -> ... -> n-1 -> 0 with arrows a_j: j -> j+1,
/// tail -m -> ... -> -1 -> 0 with arrows b_j: -j -> -j+1, and r zero relations.
pub fn make_lambda(r: usize, n: usize, m: usize) -> Result<Algebra> {
    if r == 0 || n <= r {
        return Err(SiltError::ConventionViolation(format!("need n > r > 0, got r={r}, n={n}")));
    }
    make_lambda_with_windows(r, n, m, &default_lambda_windows(r, n))
}

pub fn make_lambda_with_windows(r: usize, n: usize, m: usize, windows: &[usize]) -> Result<Algebra> {
    if r == 0 || n <= r {
        return Err(SiltError::ConventionViolation(format!("need n > r > 0, got r={r}, n={n}")));
    }
    if windows.len() != r || windows.iter().any(|&w| w >= n) {
        return Err(SiltError::MalformedSpec(format!("need {r} windows in 0..{n}, got {windows:?}")));
    }
    let mut vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    vertices.extend((1..=m).map(|j| format!("-{j}")));
    let mut arrows: Vec<ArrowSpec> = (0..n)
        .map(|j| ArrowSpec { id: format!("a{j}"), src: j.to_string(), tgt: ((j + 1) % n).to_string() })
        .collect();
    for j in 1..=m {
        let tgt = if j == 1 { "0".to_string() } else { format!("-{}", j - 1) };
        arrows.push(ArrowSpec { id: format!("b{j}"), src: format!("-{j}"), tgt });
    }
    let relations = windows.iter().map(|&w| vec![format!("a{w}"), format!("a{}", (w + 1) % n)]).collect();
    let spec = QuiverSpec { vertices, arrows, relations };
    Algebra::build_with_family(spec, Family::Lambda { r, n, m })
}

/// Path algebra of the A_l quiver on vertices 1..l; arrow a_i joins i and i+1.
pub fn make_linear_a(l: usize, orientation: &[Orientation]) -> Result<Algebra> {
    if l == 0 {
        return Err(SiltError::MalformedSpec("A_l needs l >= 1".into()));
    }
    if orientation.len() != l - 1 {
        return Err(SiltError::MalformedSpec(format!(
            "A_{l} needs {} orientation entries, got {}",
            l - 1,
            orientation.len()
        )));
    }
    let vertices = (1..=l).map(|i| i.to_string()).collect();
    let arrows = orientation
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let (a, b) = ((k + 1).to_string(), (k + 2).to_string());
            let (src, tgt) = match o {
                Orientation::Fwd => (a, b),
                Orientation::Bwd => (b, a),
            };
            ArrowSpec { id: format!("a{}", k + 1), src, tgt }
        })
        .collect();
    let spec = QuiverSpec { vertices, arrows, relations: vec![] };
    Algebra::build_with_family(spec, Family::LinearA { orientation: orientation.to_vec() })
}

pub fn parse_orientation(s: &str) -> Result<Vec<Orientation>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| match t.trim() {
            "f" | "fwd" => Ok(Orientation::Fwd),
            "b" | "bwd" => Ok(Orientation::Bwd),
            other => Err(SiltError::Parse(format!("orientation entry `{other}`, expected f or b"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Algebra {
        make_linear_a(3, &[Orientation::Fwd, Orientation::Fwd]).unwrap()
    }

    #[test]
    fn single_vertex_is_the_field() {
        let spec = QuiverSpec { vertices: vec!["x".into()], arrows: vec![], relations: vec![] };
        assert_eq!(build_bound_quiver_algebra(spec).unwrap().dimension(), 1);
        assert_eq!(make_linear_a(1, &[]).unwrap().dimension(), 1);
    }

    #[test]
    fn a2_has_three_paths() {
        let a = make_linear_a(2, &[Orientation::Fwd]).unwrap();
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.path_basis_between(1, 0).len(), 1);
        assert_eq!(a.path_basis_between(0, 1).len(), 0);
        assert!(a.path_basis_between(0, 0).contains(&a.lazy(0)));
    }

    #[test]
    fn loop_without_relation_is_infinite() {
        let spec = QuiverSpec {
            vertices: vec!["x".into()],
            arrows: vec![ArrowSpec { id: "l".into(), src: "x".into(), tgt: "x".into() }],
            relations: vec![],
        };
        assert!(matches!(Algebra::build(spec), Err(SiltError::InfiniteDimensional(_))));
    }

    #[test]
    fn malformed_specs_rejected() {
        let dangling = QuiverSpec {
            vertices: vec!["x".into()],
            arrows: vec![ArrowSpec { id: "a".into(), src: "x".into(), tgt: "y".into() }],
            relations: vec![],
        };
        assert!(matches!(Algebra::build(dangling), Err(SiltError::MalformedSpec(_))));
        let short = QuiverSpec {
            vertices: vec!["x".into(), "y".into()],
            arrows: vec![ArrowSpec { id: "a".into(), src: "x".into(), tgt: "y".into() }],
            relations: vec![vec!["a".into()]],
        };
        assert!(matches!(Algebra::build(short), Err(SiltError::MalformedSpec(_))));
        let non_composable = QuiverSpec {
            vertices: vec!["x".into(), "y".into()],
            arrows: vec![
                ArrowSpec { id: "a".into(), src: "x".into(), tgt: "y".into() },
                ArrowSpec { id: "b".into(), src: "x".into(), tgt: "y".into() },
            ],
            relations: vec![vec!["a".into(), "b".into()]],
        };
        assert!(matches!(Algebra::build(non_composable), Err(SiltError::MalformedSpec(_))));
    }

    #[test]
    fn lambda_120() {
        let l = make_lambda(1, 2, 0).unwrap();
        assert_eq!(l.num_vertices(), 2);
        assert_eq!(l.num_arrows(), 2);
        assert_eq!(l.num_relations(), 1);
        // e0, e1, a0, a1, a1.a0
        assert_eq!(l.dimension(), 5);
        assert!(l.parse_path("a1.a0").is_ok());
        assert!(l.parse_path("a0.a1").is_err());
    }

    #[test]
    fn lambda_convention() {
        assert!(matches!(make_lambda(1, 1, 0), Err(SiltError::ConventionViolation(_))));
        assert!(matches!(make_lambda(0, 3, 0), Err(SiltError::ConventionViolation(_))));
        let l = make_lambda(2, 3, 1).unwrap();
        assert_eq!((l.num_vertices(), l.num_arrows(), l.num_relations()), (4, 4, 2));
    }

    #[test]
    fn a3_projectives() {
        let a = a3();
        assert_eq!(a.projective_dim(0), 3);
        assert_eq!(a.projective_dim(2), 1);
        assert!(a.path_basis_between(0, 2).is_empty());
        assert_eq!(a.path_basis_between(2, 0).len(), 1);
    }

    #[test]
    fn multiplication_units_and_zeros() {
        let l = make_lambda(1, 2, 0).unwrap();
        let a0 = l.parse_path("a0").unwrap();
        let a1 = l.parse_path("a1").unwrap();
        assert_eq!(l.mul(l.lazy(0), a0), Some(a0));
        assert_eq!(l.mul(a0, l.lazy(1)), Some(a0));
        assert_eq!(l.mul(a0, a1), None);
        assert_eq!(l.mul(a1, a0), l.parse_path("a1.a0").ok());
        assert_eq!(l.mul(a0, a0), None);
    }

    #[test]
    fn path_names_round_trip() {
        let l = make_lambda(2, 3, 1).unwrap();
        for id in 0..l.dimension() {
            assert_eq!(l.parse_path(&l.path_name(id)).unwrap(), id);
        }
    }
}
