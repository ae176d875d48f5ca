//! The poset of silting pairs over a finite interval, with a bottom element
//! adjoined, and checks of the CW-poset criteria.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SiltError};
use crate::silting::{Direction, Silting, SiltingObject, SiltingPair};
use crate::topology::{homology, order_complex, FinitePoset, HomologyProfile};

pub const BOTTOM_KEY: &str = "0hat";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Node {
    Bottom,
    Pair(SiltingPair),
}

fn join(m: &SiltingObject) -> String {
    if m.is_empty() {
        return "-".into();
    }
    m.summands().iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")
}

impl Node {
    /// Stable textual key: `0hat` or `X0+X1/X0`, with `-` for the empty sub-object.
    pub fn key(&self) -> String {
        match self {
            Node::Bottom => BOTTOM_KEY.into(),
            Node::Pair(p) => format!("{}/{}", join(&p.ambient), join(&p.sub)),
        }
    }
}

/// Finite silting-pairs poset. Node 0 is the adjoined bottom.
#[derive(Clone, Debug)]
pub struct PairsPoset {
    pub nodes: Vec<Node>,
    /// `below[y]` holds every x with x ≤ y
    below: Vec<FixedBitSet>,
    /// `above[x]` holds every y with x ≤ y
    above: Vec<FixedBitSet>,
    pub ranks: Vec<usize>,
    pub covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl FinitePoset for PairsPoset {
    fn size(&self) -> usize {
        self.nodes.len()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }
    fn label(&self, a: usize) -> String {
        self.nodes[a].key()
    }
}

/// Nodes (N, N') with N in the interval [Σ^{-k}M, M] and Σ^{-k}M ≤ μ_{N'}(N), plus 0̂.
pub fn build_pairs_poset(s: &Silting, m: &SiltingObject, k: u32, budget: usize) -> Result<PairsPoset> {
    let objs = s.enumerate_interval(m, k, budget)?;
    let bottom = s.shift(m, -(k as i32));
    let mut cands = Vec::new();
    for n in &objs {
        for mask in 0..(1u64 << n.rank()) {
            cands.push(SiltingPair { ambient: n.clone(), sub: n.subset(mask) });
        }
    }
    let mus = s.mutate_batch(&cands, Direction::Right)?;
    let mut pairs: Vec<(SiltingPair, SiltingObject)> =
        cands.into_iter().zip(mus).filter(|(_, mu)| s.leq(&bottom, mu)).collect();
    pairs.sort();
    let n = pairs.len() + 1;
    let rel: Vec<Vec<bool>> = (0..pairs.len())
        .into_par_iter()
        .map(|j| {
            let (q, mu_q) = &pairs[j];
            pairs
                .iter()
                .map(|(p, mu_p)| s.leq(mu_p, mu_q) && s.leq(mu_q, &q.ambient) && s.leq(&q.ambient, &p.ambient))
                .collect()
        })
        .collect();
    let mut relation = vec![vec![false; n]; n];
    for x in 0..n {
        relation[0][x] = true;
    }
    for (j, row) in rel.iter().enumerate() {
        for (i, &b) in row.iter().enumerate() {
            relation[j + 1][i + 1] = b;
        }
    }
    let mut nodes = vec![Node::Bottom];
    nodes.extend(pairs.into_iter().map(|(p, _)| Node::Pair(p)));
    let poset = PairsPoset::from_relation(nodes, &relation);
    poset.check_order_axioms()?;
    Ok(poset)
}

impl PairsPoset {
    /// Build from `relation[x][y] = (x ≤ y)`; ranks use the pair formula.
    pub fn from_relation(nodes: Vec<Node>, relation: &[Vec<bool>]) -> Self {
        let n = nodes.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if relation[x][y] {
                    below[y].insert(x);
                    above[x].insert(y);
                }
            }
        }
        let ranks = nodes
            .iter()
            .map(|v| match v {
                Node::Bottom => 0,
                Node::Pair(p) => p.ambient.rank() - p.sub.rank() + 1,
            })
            .collect();
        let index = nodes.iter().enumerate().map(|(i, v)| (v.key(), i)).collect();
        let mut poset =
            PairsPoset { nodes, below, above, ranks, covers: Vec::new(), up: vec![], down: vec![], index };
        poset.compute_covers();
        poset
    }

    fn compute_covers(&mut self) {
        let n = self.nodes.len();
        let mut covers = Vec::new();
        for x in 0..n {
            for y in self.above[x].ones() {
                if x == y {
                    continue;
                }
                let mut between = self.above[x].clone();
                between.intersect_with(&self.below[y]);
                if between.count_ones(..) == 2 {
                    covers.push((x, y));
                }
            }
        }
        covers.sort();
        self.up = vec![Vec::new(); n];
        self.down = vec![Vec::new(); n];
        for &(x, y) in &covers {
            self.up[x].push(y);
            self.down[y].push(x);
        }
        self.covers = covers;
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn node_index(&self, key: &str) -> Result<usize> {
        self.index.get(key).copied().ok_or_else(|| SiltError::UnknownNode(key.into()))
    }

    pub fn key(&self, x: usize) -> String {
        self.nodes[x].key()
    }

    pub fn pair_rank(&self, key: &str) -> Result<usize> {
        Ok(self.ranks[self.node_index(key)?])
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Elements of the closed interval [x, y].
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        let mut s = self.above[x].clone();
        s.intersect_with(&self.below[y]);
        s.ones().collect()
    }

    /// Elements strictly between x and y.
    pub fn open_interval(&self, x: usize, y: usize) -> Vec<usize> {
        self.interval(x, y).into_iter().filter(|&z| z != x && z != y).collect()
    }

    /// A copy without node `x`; the order is restricted, covers recomputed.
    pub fn without_node(&self, x: usize) -> PairsPoset {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != x).collect();
        let relation: Vec<Vec<bool>> =
            keep.iter().map(|&a| keep.iter().map(|&b| self.leq(a, b)).collect()).collect();
        let nodes = keep.iter().map(|&i| self.nodes[i].clone()).collect();
        PairsPoset::from_relation(nodes, &relation)
    }

    /// Reflexivity, antisymmetry and transitivity of the relation.
    pub fn check_order_axioms(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(SiltError::Diagnostic(format!("relation not reflexive at {}", self.key(x))));
            }
            for y in self.above[x].ones() {
                if y != x && self.leq(y, x) {
                    return Err(SiltError::Diagnostic(format!(
                        "relation not antisymmetric at {} and {}",
                        self.key(x),
                        self.key(y)
                    )));
                }
                // everything above y is above x
                if !self.above[y].is_subset(&self.above[x]) {
                    return Err(SiltError::Diagnostic(format!("relation not transitive through {}", self.key(y))));
                }
            }
        }
        Ok(())
    }

    /// Length of the longest chain from each node down to node 0.
    pub fn longest_chain_ranks(&self) -> Vec<Option<usize>> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&y| self.below[y].count_ones(..));
        let mut len: Vec<Option<usize>> = vec![None; n];
        if n == 0 {
            return len;
        }
        len[0] = Some(0);
        for &y in &order {
            if y == 0 {
                continue;
            }
            len[y] = self.down[y].iter().filter_map(|&x| len[x].map(|l| l + 1)).max();
        }
        len
    }

    /// Longest chain length inside [x, y].
    pub fn interval_length(&self, x: usize, y: usize) -> usize {
        let mut elems = self.interval(x, y);
        elems.sort_by_key(|&z| self.below[z].count_ones(..));
        let mut best: HashMap<usize, usize> = HashMap::from([(x, 0)]);
        for &z in &elems {
            if z == x {
                continue;
            }
            if let Some(l) = self.down[z].iter().filter_map(|w| best.get(w).map(|l| l + 1)).max() {
                best.insert(z, l);
            }
        }
        best.get(&y).copied().unwrap_or(0)
    }

    pub fn verify_rank_formula(&self) -> RankReport {
        let longest = self.longest_chain_ranks();
        let violations = (0..self.len())
            .filter(|&x| longest[x] != Some(self.ranks[x]))
            .map(|x| RankViolation { node: self.key(x), formula: self.ranks[x], longest_chain: longest[x] })
            .collect::<Vec<_>>();
        let cover_steps = self.covers.iter().filter(|&&(x, y)| self.ranks[y] != self.ranks[x] + 1).count();
        RankReport { nodes_checked: self.len(), cover_step_violations: cover_steps, violations }
    }

    pub fn verify_length_two(&self) -> LengthTwoReport {
        let n = self.len();
        let found: Vec<(usize, Vec<IntervalViolation>)> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut checked = 0;
                let mut bad = Vec::new();
                for y in self.above[x].ones() {
                    if y == x || self.interval_length(x, y) != 2 {
                        continue;
                    }
                    checked += 1;
                    let card = self.interval(x, y).len();
                    if card != 4 {
                        bad.push(IntervalViolation { lower: self.key(x), upper: self.key(y), cardinality: card });
                    }
                }
                (checked, bad)
            })
            .collect();
        let intervals_checked = found.iter().map(|(c, _)| c).sum();
        let violations = found.into_iter().flat_map(|(_, b)| b).collect();
        LengthTwoReport { intervals_checked, violations }
    }

    /// For every top t and every a ≤ t with distinct upper covers u, v ≤ t, some
    /// z ≤ t covers both. This covers every interval [x, t], since such a z lies
    /// above x whenever a does.
    pub fn verify_total_semimodularity(&self) -> SemimodularityReport {
        let n = self.len();
        let found: Vec<(usize, Vec<SemimodularFailure>)> = (0..n)
            .into_par_iter()
            .map(|t| {
                let mut checks = 0;
                let mut bad = Vec::new();
                for a in self.below[t].ones() {
                    let ups: Vec<usize> = self.up[a].iter().copied().filter(|&u| self.leq(u, t)).collect();
                    for i in 0..ups.len() {
                        for j in i + 1..ups.len() {
                            checks += 1;
                            let (u, v) = (ups[i], ups[j]);
                            let ok = self.up[u].iter().any(|&z| self.leq(z, t) && self.up[v].contains(&z));
                            if !ok {
                                bad.push(SemimodularFailure {
                                    top: self.key(t),
                                    base: self.key(a),
                                    left: self.key(u),
                                    right: self.key(v),
                                });
                            }
                        }
                    }
                }
                (checks, bad)
            })
            .collect();
        let checks = found.iter().map(|(c, _)| c).sum();
        let failures: Vec<SemimodularFailure> = found.into_iter().flat_map(|(_, b)| b).collect();
        let failures_above_bottom = failures.iter().filter(|f| f.base != BOTTOM_KEY).count();
        SemimodularityReport { checks, failures_above_bottom, failures }
    }

    /// Homology of the open interval (0̂, x) against S^{rank(x)−2}.
    pub fn sphere_check(&self, x: usize) -> SphereVerdict {
        let open = self.open_interval(0, x);
        let h = homology(&order_complex(self, &open));
        let expected = self.ranks[x] as i32 - 2;
        SphereVerdict { node: self.key(x), rank: self.ranks[x], pass: h.is_sphere(expected), homology: h }
    }

    /// Bottom, order axioms, rank formula, length-two cardinality, semimodularity
    /// above 0̂ and a homology sphere for every (0̂, x).
    pub fn verify_cw_poset(&self) -> CwReport {
        let n = self.len();
        let bottom_ok = n > 0 && matches!(self.nodes[0], Node::Bottom) && (0..n).all(|x| self.leq(0, x));
        let order_ok = self.check_order_axioms().is_ok();
        let ranks = self.verify_rank_formula();
        let length_two = self.verify_length_two();
        let semimodularity = self.verify_total_semimodularity();
        let spheres: Vec<SphereVerdict> = (1..n).into_par_iter().map(|x| self.sphere_check(x)).collect();
        let pass = bottom_ok
            && order_ok
            && ranks.violations.is_empty()
            && ranks.cover_step_violations == 0
            && length_two.violations.is_empty()
            && semimodularity.failures_above_bottom == 0
            && spheres.iter().all(|s| s.pass);
        let totally_semimodular = semimodularity.failures.is_empty();
        CwReport {
            schema: crate::SCHEMA.into(),
            nodes: n,
            bottom_ok,
            order_ok,
            ranks,
            length_two,
            totally_semimodular,
            semimodularity,
            spheres,
            pass,
        }
    }

    /// DOT rendering of the Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for x in 0..self.len() {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", x, self.key(x)));
        }
        for &(x, y) in &self.covers {
            s.push_str(&format!("  n{} -> n{};\n", x, y));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> PosetDump {
        PosetDump {
            schema: crate::SCHEMA.into(),
            nodes: (0..self.len())
                .map(|x| NodeDump {
                    key: self.key(x),
                    rank: self.ranks[x],
                    pair: match &self.nodes[x] {
                        Node::Bottom => None,
                        Node::Pair(p) => Some(p.clone()),
                    },
                })
                .collect(),
            covers: self.covers.iter().map(|&(x, y)| (self.key(x), self.key(y))).collect(),
        }
    }

    /// Rebuild from a dump; the order is the transitive closure of the covers.
    pub fn from_json(d: &PosetDump) -> Result<PairsPoset> {
        let nodes: Vec<Node> = d
            .nodes
            .iter()
            .map(|v| match &v.pair {
                None => Node::Bottom,
                Some(p) => Node::Pair(p.clone()),
            })
            .collect();
        let index: HashMap<&str, usize> = d.nodes.iter().enumerate().map(|(i, v)| (v.key.as_str(), i)).collect();
        let n = nodes.len();
        let mut relation = vec![vec![false; n]; n];
        let mut up = vec![Vec::new(); n];
        for (a, b) in &d.covers {
            let ia = *index.get(a.as_str()).ok_or_else(|| SiltError::UnknownNode(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| SiltError::UnknownNode(b.clone()))?;
            up[ia].push(ib);
        }
        for (x, row) in relation.iter_mut().enumerate() {
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                if !row[y] {
                    row[y] = true;
                    stack.extend(&up[y]);
                }
            }
        }
        let p = PairsPoset::from_relation(nodes, &relation);
        p.check_order_axioms()?;
        Ok(p)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeDump {
    pub key: String,
    pub rank: usize,
    pub pair: Option<SiltingPair>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetDump {
    pub schema: String,
    pub nodes: Vec<NodeDump>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankViolation {
    pub node: String,
    pub formula: usize,
    pub longest_chain: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankReport {
    pub nodes_checked: usize,
    pub cover_step_violations: usize,
    pub violations: Vec<RankViolation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntervalViolation {
    pub lower: String,
    pub upper: String,
    pub cardinality: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LengthTwoReport {
    pub intervals_checked: usize,
    pub violations: Vec<IntervalViolation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemimodularFailure {
    pub top: String,
    pub base: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemimodularityReport {
    pub checks: usize,
    /// failures whose common lower cover is a silting pair rather than 0̂
    pub failures_above_bottom: usize,
    pub failures: Vec<SemimodularFailure>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SphereVerdict {
    pub node: String,
    pub rank: usize,
    pub pass: bool,
    pub homology: HomologyProfile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CwReport {
    pub schema: String,
    pub nodes: usize,
    pub bottom_ok: bool,
    pub order_ok: bool,
    pub ranks: RankReport,
    pub length_two: LengthTwoReport,
    /// the literal criterion including covers of 0̂; it fails on every 2-cell
    /// with two vertices sharing no summand
    pub totally_semimodular: bool,
    pub semimodularity: SemimodularityReport,
    pub spheres: Vec<SphereVerdict>,
    pub pass: bool,
}
