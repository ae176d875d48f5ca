//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siltlab::arcoords::ZCoord;
use siltlab::algebra::{make_lambda, make_linear_a, Algebra, Orientation};
use siltlab::homotopy::{Complex, Elem, ObjId, PMat};
use siltlab::linalg::q;
use siltlab::silting::{Silting, SiltingObject};

pub fn a_n(l: usize) -> Algebra {
    make_linear_a(l, &vec![Orientation::Fwd; l - 1]).unwrap()
}

/// The four algebras of the acceptance suite.
pub fn suite() -> Vec<(&'static str, Algebra)> {
    vec![
        ("kA2", a_n(2)),
        ("kA3", a_n(3)),
        ("Lambda(1,2,0)", make_lambda(1, 2, 0).unwrap()),
        ("Lambda(1,3,1)", make_lambda(1, 3, 1).unwrap()),
    ]
}

/// P^0 -> P^1 in degrees 0, 1 with random coefficients on every path.
pub fn generic_two_term(alg: &Algebra, src: &[usize], tgt: &[usize], rng: &mut ChaCha8Rng) -> Complex {
    let mut terms = BTreeMap::new();
    if !src.is_empty() {
        terms.insert(0, src.to_vec());
    }
    if !tgt.is_empty() {
        terms.insert(1, tgt.to_vec());
    }
    let mut diffs = BTreeMap::new();
    if !src.is_empty() && !tgt.is_empty() {
        let mut d = PMat::zeros(tgt.len(), src.len());
        for (i, &w) in tgt.iter().enumerate() {
            for (j, &u) in src.iter().enumerate() {
                let mut e = Elem::zero();
                for &p in alg.paths_from_to(w, u) {
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-9i128..=9);
                    }
                    e = e.add(&Elem::scaled_path(p, q(c)));
                }
                d.set(i, j, e);
            }
        }
        diffs.insert(0, d);
    }
    Complex::new(terms, diffs).unwrap()
}

fn expand(mult: &[usize]) -> Vec<usize> {
    mult.iter().enumerate().flat_map(|(v, &k)| std::iter::repeat(v).take(k)).collect()
}

/// Indecomposable presilting objects in degrees {0, 1}: generic presentations of
/// every shape with disjoint supports and multiplicities up to `max_mult`.
pub fn two_term_rigid_indecomposables(s: &Silting, max_mult: usize, seed: u64) -> BTreeSet<ObjId> {
    let nv = s.algebra().num_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // per vertex: (copies in degree 0, copies in degree 1)
    let mut choices = vec![(0, 0)];
    for k in 1..=max_mult {
        choices.push((k, 0));
        choices.push((0, k));
    }
    let mut found = BTreeSet::new();
    let total = choices.len().pow(nv as u32);
    for code in 1..total {
        let mut c = code;
        let mut a = vec![0; nv];
        let mut b = vec![0; nv];
        for v in 0..nv {
            let (x, y) = choices[c % choices.len()];
            a[v] = x;
            b[v] = y;
            c /= choices.len();
        }
        let x = generic_two_term(s.algebra(), &expand(&a), &expand(&b), &mut rng);
        for id in s.category().intern(&x).unwrap() {
            if s.is_presilting_ids(&SiltingObject::new([id])) {
                found.insert(id);
            }
        }
    }
    found
}

/// All maximal sets of pairwise compatible candidates (Bron–Kerbosch).
pub fn maximal_compatible_sets(s: &Silting, cands: &BTreeSet<ObjId>) -> BTreeSet<SiltingObject> {
    let v: Vec<ObjId> = cands.iter().copied().collect();
    let n = v.len();
    let compat: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || s.is_presilting_ids(&SiltingObject::new([v[i], v[j]]))).collect())
        .collect();
    let mut out = BTreeSet::new();
    fn bk(r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, compat: &[Vec<bool>], v: &[ObjId], out: &mut BTreeSet<SiltingObject>) {
        if p.is_empty() && x.is_empty() {
            out.insert(SiltingObject::new(r.iter().map(|&i| v[i])));
            return;
        }
        let (mut p, mut x) = (p, x);
        while let Some(u) = p.pop() {
            r.push(u);
            let np = p.iter().copied().filter(|&w| compat[u][w]).collect();
            let nx = x.iter().copied().filter(|&w| compat[u][w]).collect();
            bk(r, np, nx, compat, v, out);
            r.pop();
            x.push(u);
        }
    }
    bk(&mut Vec::new(), (0..n).collect(), Vec::new(), &compat, &v, &mut out);
    out
}

/// The oracle's two-term silting objects for the standard base.
pub fn oracle_two_term_silting(s: &Silting, max_mult: usize) -> BTreeSet<SiltingObject> {
    let cands = two_term_rigid_indecomposables(s, max_mult, 0x0a11ce);
    maximal_compatible_sets(s, &cands)
}

/// One drawn vertex of an appendix diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub x2: i32,
    pub y: i32,
    pub shape: String,
    pub silting: bool,
    pub simple: bool,
    pub heart: bool,
    pub gray: bool,
}

pub fn read_golden(name: &str) -> Vec<GoldenRow> {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("x\t"))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let x: f64 = f[0].parse().unwrap();
            GoldenRow {
                x2: (2.0 * x).round() as i32,
                y: f[1].parse().unwrap(),
                shape: f[2].to_string(),
                silting: f[3] == "1",
                simple: f[4] == "1",
                heart: f[5] == "1",
                gray: f[6] == "1",
            }
        })
        .collect()
}

/// Mismatches between computed tags and a golden diagram, one line each.
pub fn golden_mismatches(
    golden: &[GoldenRow],
    computed: &[(siltlab::stability::ArPosition, siltlab::stability::ObjectTags)],
) -> Vec<String> {
    let mut out = Vec::new();
    if golden.len() != computed.len() {
        out.push(format!("{} golden rows, {} computed", golden.len(), computed.len()));
    }
    for g in golden {
        let Some((pos, t)) = computed.iter().find(|(p, _)| p.x2 == g.x2 && p.y == g.y) else {
            out.push(format!("missing position x2={} y={}", g.x2, g.y));
            continue;
        };
        let shape = match (t.in_aisle, t.in_coaisle) {
            (true, false) => "circle",
            (false, true) => "square",
            (false, false) => "triangle",
            (true, true) => "both",
        };
        let checks = [
            ("shape", shape == g.shape),
            ("silting", t.silting_summand == g.silting),
            ("simple", t.heart_simple == g.simple),
            ("heart", t.heart == g.heart),
            ("gray", t.cot_aisle_window == g.gray),
        ];
        for (what, ok) in checks {
            if !ok {
                out.push(format!("{pos}: {what} differs (golden {g:?}, computed {t:?})"));
            }
        }
    }
    out
}

/// Σ Z^k_{ab}, read off the suspension formula one step at a time.
pub fn sigma_once(c: ZCoord) -> ZCoord {
    let p = c.params;
    if c.k < p.r - 1 {
        ZCoord { k: c.k + 1, ..c }
    } else {
        ZCoord { k: 0, i: c.i + p.r + p.m, j: c.j + p.r - p.n, ..c }
    }
}

/// The hammock description by search over all (a, b) near the target.
pub fn oracle_clauses(a: ZCoord, b: ZCoord) -> (bool, bool) {
    let forward = b.k == a.k && b.i >= a.i && b.j >= a.j;
    let reach = (b.i - a.i).abs() + (b.j - a.j).abs() + 20;
    let mut suspended = false;
    for x in a.i - reach..=a.i - 1 {
        for y in a.j - reach..=a.j - 1 {
            if sigma_once(ZCoord { i: x, j: y, ..a }) == b {
                suspended = true;
            }
        }
    }
    (forward, suspended)
}
