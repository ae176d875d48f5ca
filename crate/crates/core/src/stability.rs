//! K₀ classes, Euler forms, simple classes of algebraic hearts and the
//! embedding of silting-pair chains into stability data.
//!
//! A central charge is stored by its values on the basis {[P(v)]}. Values are
//! Gaussian rationals; nothing here touches floating point.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex as NumComplex;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Algebra, Family, Orientation};
use crate::error::{Result, SiltError};
use crate::homotopy::{two_term, Complex, Elem, ObjId};
use crate::linalg::{q, Mat, Q};
use crate::pairsposet::{Node, PairsPoset};
use crate::silting::{Direction, Silting, SiltingObject, SiltingPair};

/// A Gaussian rational.
pub type CQ = NumComplex<Q>;

pub fn cq(re: Q, im: Q) -> CQ {
    NumComplex::new(re, im)
}

/// Strict upper half plane together with the negative real axis.
pub fn in_upper_half_plane(z: &CQ) -> bool {
    z.im.is_positive() || (z.im.is_zero() && z.re.is_negative())
}

pub fn k0_class(x: &Complex, alg: &Algebra) -> Vec<i64> {
    x.k0_class(alg.num_vertices())
}

/// ⟨x, y⟩ = xᵀ C y with C the Cartan matrix, C[u][v] = dim Hom(P(u), P(v)).
pub fn euler_pairing(alg: &Algebra, x: &[Q], y: &[Q]) -> Q {
    let c = Mat::from_i64(&alg.cartan());
    let cy = c.mul_vec(y);
    x.iter().zip(&cy).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

/// Rows are the classes [M_i] in summand order.
pub fn class_matrix(s: &Silting, m: &SiltingObject) -> Mat {
    let rows: Vec<Vec<i64>> = m.summands().iter().map(|&x| s.category().k0_class(x)).collect();
    if rows.is_empty() {
        return Mat::zeros(0, s.algebra().num_vertices());
    }
    Mat::from_i64(&rows)
}

/// E_ab = Σ_i (−1)^i dim Hom(M_a, Σ^i M_b).
pub fn euler_matrix(s: &Silting, m: &SiltingObject) -> Vec<Vec<i64>> {
    let cat = s.category();
    m.summands()
        .iter()
        .map(|&a| {
            m.summands()
                .iter()
                .map(|&b| {
                    let (lo, hi) = cat.hom_window(a, b);
                    (lo..=hi)
                        .map(|i| {
                            let d = cat.hom_dim(a, b, i) as i64;
                            if i.rem_euclid(2) == 0 {
                                d
                            } else {
                                -d
                            }
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Columns of (G C)^{-1}: the classes s_j with ⟨[M_i], s_j⟩ = δ_ij.
pub fn simple_classes(s: &Silting, m: &SiltingObject) -> Result<Vec<Vec<Q>>> {
    let n = s.algebra().num_vertices();
    if m.rank() != n {
        return Err(SiltError::SingularEuler);
    }
    let gc = class_matrix(s, m).mul(&Mat::from_i64(&s.algebra().cartan()));
    let inv = gc.inverse().ok_or(SiltError::SingularEuler)?;
    Ok((0..n).map(|j| inv.col(j)).collect())
}

/// A group homomorphism K₀ → C given by its values on the classes [P(v)].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChargeFunctional(pub Vec<CQ>);

impl ChargeFunctional {
    pub fn zero(n: usize) -> Self {
        ChargeFunctional(vec![CQ::zero(); n])
    }

    /// The functional taking value z_j on the j-th column of `classes`.
    pub fn from_values_on(classes: &[Vec<Q>], values: &[CQ]) -> Result<Self> {
        let n = classes.len();
        let cols: Vec<Vec<Q>> = classes.to_vec();
        let inv = Mat::from_cols(n, &cols).inverse().ok_or(SiltError::SingularEuler)?;
        Ok(ChargeFunctional(
            (0..n)
                .map(|v| (0..n).fold(CQ::zero(), |acc, j| acc + values[j].scale(inv.row(j)[v])))
                .collect(),
        ))
    }

    pub fn eval(&self, class: &[Q]) -> CQ {
        self.0.iter().zip(class).fold(CQ::zero(), |acc, (z, c)| acc + z.scale(*c))
    }

    pub fn eval_int(&self, class: &[i64]) -> CQ {
        self.0.iter().zip(class).fold(CQ::zero(), |acc, (z, &c)| acc + z.scale(q(c as i128)))
    }

    pub fn add(&self, other: &ChargeFunctional) -> ChargeFunctional {
        ChargeFunctional(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, t: Q) -> ChargeFunctional {
        ChargeFunctional(self.0.iter().map(|z| z.scale(t)).collect())
    }
}

fn q_str(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_q(s: &str) -> std::result::Result<Q, String> {
    s.trim().parse::<Q>().map_err(|e| format!("bad rational `{s}`: {e}"))
}

impl Serialize for ChargeFunctional {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[String; 2]> = self.0.iter().map(|z| [q_str(&z.re), q_str(&z.im)]).collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ChargeFunctional {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<[String; 2]> = Vec::deserialize(de)?;
        v.iter()
            .map(|[re, im]| Ok(cq(parse_q(re)?, parse_q(im)?)))
            .collect::<std::result::Result<Vec<CQ>, String>>()
            .map(ChargeFunctional)
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ChargeFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|z| format!("{}+{}i", q_str(&z.re), q_str(&z.im))).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A heart, named by its silting object, with a charge on K₀.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StabilityPoint {
    pub heart: SiltingObject,
    pub charge: ChargeFunctional,
}

/// A point of the order complex: a strictly ascending chain of pairs with
/// barycentric weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CwPoint {
    pub chain: Vec<SiltingPair>,
    #[serde(with = "rational_strings")]
    pub weights: Vec<Q>,
}

mod rational_strings {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Q], ser: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(q_str).collect::<Vec<_>>().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v: Vec<String> = Vec::deserialize(de)?;
        v.iter().map(|x| parse_q(x)).collect::<std::result::Result<_, _>>().map_err(serde::de::Error::custom)
    }
}

impl CwPoint {
    pub fn vertex(p: SiltingPair) -> Self {
        CwPoint { chain: vec![p], weights: vec![Q::one()] }
    }

    /// The same point with zero-weight entries dropped.
    pub fn normalized(&self) -> CwPoint {
        let (chain, weights) = self
            .chain
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| !w.is_zero())
            .map(|(p, w)| (p.clone(), *w))
            .unzip();
        CwPoint { chain, weights }
    }

    fn check_weights(&self) -> Result<()> {
        if self.weights.len() != self.chain.len() {
            return Err(SiltError::InvalidWeights(format!(
                "{} weights for a chain of length {}",
                self.weights.len(),
                self.chain.len()
            )));
        }
        if self.weights.iter().any(|w| w.is_negative()) {
            return Err(SiltError::InvalidWeights("negative weight".into()));
        }
        let total: Q = self.weights.iter().fold(Q::zero(), |a, b| a + b);
        if total != Q::one() {
            return Err(SiltError::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(())
    }
}

/// Z_{M,M'}: [S_j] ↦ i when M_j ∈ M', and ↦ −1 otherwise.
pub fn vertex_charge(s: &Silting, p: &SiltingPair) -> Result<StabilityPoint> {
    let classes = simple_classes(s, &p.ambient)?;
    let torsion = s.torsion_simple_labels(p);
    let values: Vec<CQ> = (0..p.ambient.rank())
        .map(|j| if torsion.contains(&j) { cq(q(-1), Q::zero()) } else { cq(Q::zero(), Q::one()) })
        .collect();
    Ok(StabilityPoint { heart: p.ambient.clone(), charge: ChargeFunctional::from_values_on(&classes, &values)? })
}

/// f(chain, a) = (H_{M_l}, Σ_j a_j Z_{M_j,M_j'}) with l minimal such that a_l > 0.
pub fn embed_cw_point(s: &Silting, pt: &CwPoint) -> Result<StabilityPoint> {
    if pt.chain.is_empty() {
        return Err(SiltError::InvalidChain("empty chain".into()));
    }
    pt.check_weights()?;
    for w in pt.chain.windows(2) {
        if w[0] == w[1] || !s.pair_leq(&w[0], &w[1])? {
            return Err(SiltError::InvalidChain(format!(
                "({} , {}) is not below ({} , {})",
                w[0].ambient, w[0].sub, w[1].ambient, w[1].sub
            )));
        }
    }
    let l = pt.weights.iter().position(|w| w.is_positive()).expect("weights sum to one");
    let n = s.algebra().num_vertices();
    let mut charge = ChargeFunctional::zero(n);
    for (p, w) in pt.chain.iter().zip(&pt.weights) {
        if w.is_positive() {
            charge = charge.add(&vertex_charge(s, p)?.charge.scale(*w));
        }
    }
    Ok(StabilityPoint { heart: pt.chain[l].ambient.clone(), charge })
}

/// Charge values on the simple classes of the heart.
pub fn simple_charges(s: &Silting, sp: &StabilityPoint) -> Result<Vec<CQ>> {
    Ok(simple_classes(s, &sp.heart)?.iter().map(|c| sp.charge.eval(c)).collect())
}

/// PASS iff every simple of the heart is sent into the strict upper half plane.
pub fn validate_point(s: &Silting, sp: &StabilityPoint) -> bool {
    match simple_charges(s, sp) {
        Ok(vals) => vals.iter().all(in_upper_half_plane),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct InjectivityReport {
    pub points: usize,
    /// Inputs that coincide with an earlier input after normalization.
    pub duplicate_inputs: usize,
    pub distinct_inputs: usize,
    pub collisions: Vec<(usize, usize)>,
}

/// Image equality is equality of heart ids and of charge functionals.
pub fn injectivity_probe(s: &Silting, points: &[CwPoint]) -> Result<InjectivityReport> {
    let images: Vec<StabilityPoint> =
        points.par_iter().map(|p| embed_cw_point(s, p)).collect::<Result<Vec<_>>>()?;
    let mut report = InjectivityReport { points: points.len(), ..Default::default() };
    let mut seen_inputs: HashMap<CwPoint, usize> = HashMap::new();
    let mut seen_images: HashMap<&StabilityPoint, usize> = HashMap::new();
    for (i, (p, img)) in points.iter().zip(&images).enumerate() {
        if seen_inputs.insert(p.normalized(), i).is_some() {
            report.duplicate_inputs += 1;
            continue;
        }
        report.distinct_inputs += 1;
        if let Some(&j) = seen_images.get(img) {
            report.collisions.push((j, i));
        } else {
            seen_images.insert(img, i);
        }
    }
    Ok(report)
}

/// Labels j ∈ torsion_simple_labels(lower) with Im Z_{upper}(S_j^{lower}) ≠ 0.
pub fn real_value_violations(s: &Silting, lower: &SiltingPair, upper: &SiltingPair) -> Result<Vec<usize>> {
    let z = vertex_charge(s, upper)?.charge;
    let classes = simple_classes(s, &lower.ambient)?;
    Ok(s.torsion_simple_labels(lower).into_iter().filter(|&j| !z.eval(&classes[j]).im.is_zero()).collect())
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct RealValueReport {
    pub comparable_pairs: usize,
    pub checks: usize,
    pub violations: Vec<(String, String, usize)>,
}

/// The real-value property over every comparable pair of non-bottom nodes.
pub fn real_value_report(s: &Silting, poset: &PairsPoset) -> Result<RealValueReport> {
    let pairs: Vec<Option<&SiltingPair>> =
        poset.nodes.iter().map(|n| if let Node::Pair(p) = n { Some(p) } else { None }).collect();
    let charges: Vec<Option<ChargeFunctional>> = pairs
        .par_iter()
        .map(|p| p.map(|p| vertex_charge(s, p).map(|v| v.charge)).transpose())
        .collect::<Result<_>>()?;
    let classes: Vec<Option<Vec<Vec<Q>>>> = pairs
        .par_iter()
        .map(|p| p.map(|p| simple_classes(s, &p.ambient)).transpose())
        .collect::<Result<_>>()?;
    let mut report = RealValueReport::default();
    for (lo, pl) in pairs.iter().enumerate() {
        let Some(pl) = pl else { continue };
        let labels = s.torsion_simple_labels(pl);
        let cl = classes[lo].as_ref().expect("pair node");
        for up in 0..pairs.len() {
            if pairs[up].is_none() || !(lo == up || poset.lt(lo, up)) {
                continue;
            }
            report.comparable_pairs += 1;
            let z = charges[up].as_ref().expect("pair node");
            for &j in &labels {
                report.checks += 1;
                if !z.eval(&cl[j]).im.is_zero() {
                    report.violations.push((poset.key(lo), poset.key(up), j));
                }
            }
        }
    }
    Ok(report)
}

/// Seeded random points: a random maximal chain above 0̂ with random
/// convex weights, some of them zero.
pub fn sample_cw_points(poset: &PairsPoset, count: usize, seed: u64) -> Vec<CwPoint> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            sample_one(poset, &mut rng)
        })
        .collect()
}

fn sample_one(poset: &PairsPoset, rng: &mut ChaCha8Rng) -> CwPoint {
    let bottom = poset.nodes.iter().position(|n| matches!(n, Node::Bottom)).expect("poset has 0hat");
    let mut chain = Vec::new();
    let mut cur = bottom;
    loop {
        let ups = poset.upper_covers(cur);
        if ups.is_empty() {
            break;
        }
        cur = ups[rng.gen_range(0..ups.len())];
        if let Node::Pair(p) = &poset.nodes[cur] {
            chain.push(p.clone());
        }
    }
    let mut raw: Vec<i128> =
        (0..chain.len()).map(|_| if rng.gen_bool(0.25) { 0 } else { rng.gen_range(1..=9) }).collect();
    if raw.iter().all(|&w| w == 0) {
        let k = rng.gen_range(0..raw.len());
        raw[k] = 1;
    }
    let total: i128 = raw.iter().sum();
    CwPoint { chain, weights: raw.iter().map(|&w| Q::new(w, total)).collect() }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub vertices: usize,
    pub vertex_failures: Vec<String>,
    pub samples: usize,
    pub sample_failures: Vec<usize>,
    pub injectivity: InjectivityReport,
    pub real_value: RealValueReport,
    pub pass: bool,
}

/// Every vertex charge, `samples` seeded chain points, injectivity over
/// vertices and samples, and the real-value property.
pub fn embedding_report(s: &Silting, poset: &PairsPoset, samples: usize, seed: u64) -> Result<EmbeddingReport> {
    let vertex_points: Vec<(String, CwPoint)> = poset
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| if let Node::Pair(p) = n { Some((poset.key(i), CwPoint::vertex(p.clone()))) } else { None })
        .collect();
    let vertex_failures: Vec<String> = vertex_points
        .par_iter()
        .map(|(k, p)| Ok((k, validate_point(s, &embed_cw_point(s, p)?))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(k, _)| k.clone())
        .collect();
    let pts = sample_cw_points(poset, samples, seed);
    let sample_failures: Vec<usize> = pts
        .par_iter()
        .enumerate()
        .map(|(i, p)| Ok((i, validate_point(s, &embed_cw_point(s, p)?))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(i, _)| i)
        .collect();
    let mut all: Vec<CwPoint> = vertex_points.into_iter().map(|(_, p)| p).collect();
    let vertices = all.len();
    all.extend(pts);
    let injectivity = injectivity_probe(s, &all)?;
    let real_value = real_value_report(s, poset)?;
    let pass = vertex_failures.is_empty()
        && sample_failures.is_empty()
        && injectivity.collisions.is_empty()
        && real_value.violations.is_empty();
    Ok(EmbeddingReport { vertices, vertex_failures, samples, sample_failures, injectivity, real_value, pass })
}

/// Membership tags of one object relative to the t-structure and co-t-structure of M.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectTags {
    pub in_aisle: bool,
    pub in_coaisle: bool,
    pub heart: bool,
    pub heart_simple: bool,
    pub silting_summand: bool,
    /// Window-bounded: only aisle objects in the supplied list are tested.
    pub cot_aisle_window: bool,
    /// Hom(X, Σ^{≥0}M) = 0, the left orthogonal of susp M.
    pub cot_aisle: bool,
}

pub const COT_WINDOW_CAVEAT: &str = "UNSOUND-BEYOND-WINDOW";

fn hom_all_vanish(s: &Silting, a: &[ObjId], b: &[ObjId], from: i32, to: i32) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| s.category().hom_vanishes(x, y, from, to)))
}

pub fn classify_objects(s: &Silting, m: &SiltingObject, objects: &[Complex]) -> Result<Vec<ObjectTags>> {
    let ids: Vec<Vec<ObjId>> = objects.iter().map(|x| s.category().intern(x)).collect::<Result<_>>()?;
    if ids.iter().any(|x| x.is_empty()) {
        return Err(SiltError::ZeroObject);
    }
    classify_ids(s, m, &ids)
}

/// Classification of objects given by their interned summands.
pub fn classify_ids(s: &Silting, m: &SiltingObject, objects: &[Vec<ObjId>]) -> Result<Vec<ObjectTags>> {
    let ms = m.summands();
    let mut tags: Vec<ObjectTags> = objects
        .par_iter()
        .map(|x| {
            let in_aisle = hom_all_vanish(s, ms, x, 1, i32::MAX);
            let in_coaisle = hom_all_vanish(s, ms, x, i32::MIN, 0);
            let heart = in_aisle && hom_all_vanish(s, ms, x, i32::MIN, -1);
            let total: usize = ms.iter().flat_map(|&a| x.iter().map(move |&b| (a, b)))
                .map(|(a, b)| s.category().hom_dim(a, b, 0))
                .sum();
            ObjectTags {
                in_aisle,
                in_coaisle,
                heart,
                heart_simple: heart && total == 1,
                silting_summand: x.len() == 1 && m.contains(x[0]),
                cot_aisle_window: false,
                cot_aisle: hom_all_vanish(s, x, ms, 0, i32::MAX),
            }
        })
        .collect();
    let aisle: Vec<&Vec<ObjId>> = objects.iter().zip(&tags).filter(|(_, t)| t.in_aisle).map(|(x, _)| x).collect();
    let cot: Vec<bool> = objects.par_iter().map(|x| aisle.iter().all(|y| hom_all_vanish(s, x, y, 0, 0))).collect();
    for (t, c) in tags.iter_mut().zip(cot) {
        t.cot_aisle_window = c;
    }
    Ok(tags)
}

/// Tab-separated classification table; the caveat line names the window-bounded column.
pub fn tags_to_tsv(labels: &[String], tags: &[ObjectTags]) -> String {
    let b = |x: bool| if x { "1" } else { "0" };
    let mut out = format!("# cot_aisle_window: {COT_WINDOW_CAVEAT}\n");
    out.push_str("object\tin_aisle\tin_coaisle\theart\theart_simple\tsilting_summand\tcot_aisle_window\tcot_aisle\n");
    for (l, t) in labels.iter().zip(tags) {
        out.push_str(&format!(
            "{l}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            b(t.in_aisle),
            b(t.in_coaisle),
            b(t.heart),
            b(t.heart_simple),
            b(t.silting_summand),
            b(t.cot_aisle_window),
            b(t.cot_aisle)
        ));
    }
    out
}

fn linear_forward(alg: &Algebra) -> bool {
    match alg.family() {
        Family::LinearA { orientation } => orientation.iter().all(|o| *o == Orientation::Fwd),
        _ => false,
    }
}

/// The interval module [a, b] (1-based, a ≤ b ≤ n) of kA_n with orientation
/// 1 → 2 → … → n, as its minimal projective presentation in degrees −1, 0.
pub fn interval_module(alg: &Algebra, a: usize, b: usize) -> Result<Complex> {
    let n = alg.num_vertices();
    if !linear_forward(alg) {
        return Err(SiltError::MalformedSpec("interval modules need a forward linear A_n".into()));
    }
    if a == 0 || a > b || b > n {
        return Err(SiltError::MalformedSpec(format!("no interval [{a},{b}] in A_{n}")));
    }
    if b == n {
        return Ok(Complex::stalk(vec![a - 1], 0));
    }
    let p = alg.paths_from_to(a - 1, b)[0];
    Ok(two_term(b, a - 1, -1, Elem::path(p)))
}

/// Every interval module of kA_n shifted by each k in the range.
pub fn linear_a_window(alg: &Algebra, shifts: std::ops::RangeInclusive<i32>) -> Result<Vec<(String, Complex)>> {
    let n = alg.num_vertices();
    let mut out = Vec::new();
    for k in shifts {
        for a in 1..=n {
            for b in a..=n {
                out.push((format!("S^{k}[{a},{b}]"), interval_module(alg, a, b)?.shift(k)));
            }
        }
    }
    Ok(out)
}

/// A vertex of the AR quiver of D^b(kA_3) drawn at (x2 / 2, y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArPosition {
    pub x2: i32,
    pub y: i32,
}

impl fmt::Display for ArPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x2 % 2 == 0 {
            write!(f, "({},{})", self.x2 / 2, self.y)
        } else {
            write!(f, "({}.5,{})", self.x2.div_euclid(2), self.y)
        }
    }
}

impl ArPosition {
    /// Σ(x, y) = (x + 2, 2 − y).
    pub fn suspend(self, k: i32) -> ArPosition {
        ArPosition { x2: self.x2 + 4 * k, y: if k.rem_euclid(2) == 0 { self.y } else { 2 - self.y } }
    }
}

/// Module positions: [a,b] sits at x = 6 + (3 − b) + (b − a)/2, y = b − a.
fn module_position(a: usize, b: usize) -> ArPosition {
    let y = (b - a) as i32;
    ArPosition { x2: 12 + 2 * (3 - b as i32) + y, y }
}

/// The object Σ^k[a,b] drawn at `pos`, as (k, a, b).
pub fn ar_position_object(pos: ArPosition) -> Option<(i32, usize, usize)> {
    for k in -8..=8 {
        let base = pos.suspend(-k);
        for a in 1..=3 {
            for b in a..=3 {
                if module_position(a, b) == base {
                    return Some((k, a, b));
                }
            }
        }
    }
    None
}

/// The 44 drawn vertices of the kA_3 diagrams, x ∈ [0, 14], with their objects.
pub fn appendix_a_window(alg: &Algebra) -> Result<Vec<(ArPosition, Complex)>> {
    if alg.num_vertices() != 3 || !linear_forward(alg) {
        return Err(SiltError::MalformedSpec("the drawn window is for kA_3 with 1 -> 2 -> 3".into()));
    }
    let mut out = Vec::new();
    for y in 0..3 {
        for x2 in (0..=28).filter(|x2| (x2 + y) % 2 == 0) {
            let pos = ArPosition { x2, y };
            let (k, a, b) = ar_position_object(pos).expect("every drawn vertex is a shifted module");
            out.push((pos, interval_module(alg, a, b)?.shift(k)));
        }
    }
    Ok(out)
}

/// Summands reachable from M by at most `depth` irreducible mutations in
/// either direction, with their shifts in `shifts`.
pub fn mutation_window(
    s: &Silting,
    m: &SiltingObject,
    depth: usize,
    shifts: std::ops::RangeInclusive<i32>,
) -> Result<Vec<ObjId>> {
    let mut frontier = vec![m.clone()];
    let mut seen: BTreeMap<SiltingObject, ()> = BTreeMap::from([(m.clone(), ())]);
    for _ in 0..depth {
        let mut next = Vec::new();
        for n in &frontier {
            for dir in [Direction::Right, Direction::Left] {
                for (_, r) in s.irreducible_mutations(n, dir)? {
                    if seen.insert(r.clone(), ()).is_none() {
                        next.push(r);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut ids: Vec<ObjId> = seen
        .keys()
        .flat_map(|n| n.summands().to_vec())
        .flat_map(|x| shifts.clone().map(move |k| (x, k)))
        .map(|(x, k)| s.category().shift(x, k))
        .collect();
    ids.sort();
    ids.dedup();
    Ok(ids)
}

/// Tags of every drawn kA_3 vertex relative to M.
pub fn appendix_a_table(s: &Silting, m: &SiltingObject) -> Result<Vec<(ArPosition, ObjectTags)>> {
    let window = appendix_a_window(s.algebra())?;
    let objects: Vec<Complex> = window.iter().map(|(_, x)| x.clone()).collect();
    let tags = classify_objects(s, m, &objects)?;
    Ok(window.into_iter().map(|(p, _)| p).zip(tags).collect())
}
