mod common;

use common::{a_n, suite};
use siltlab::algebra::make_lambda;
use siltlab::pairsposet::{build_pairs_poset, Node, PairsPoset, BOTTOM_KEY};
use siltlab::silting::{Silting, SiltingObject, SiltingPair};
use siltlab::topology::FinitePoset;
use siltlab::SiltError;

fn poset_of(s: &Silting) -> PairsPoset {
    build_pairs_poset(s, &s.standard(), 1, 10_000).unwrap()
}

fn index_of(p: &PairsPoset, pair: &SiltingPair) -> usize {
    p.node_index(&Node::Pair(pair.clone()).key()).unwrap()
}

#[test]
fn rank_one_category_is_a_closed_interval() {
    let s = Silting::from_algebra(a_n(1));
    let p = poset_of(&s);
    let m = s.standard();
    let keys: Vec<String> = (0..p.len()).map(|x| p.key(x)).collect();
    assert_eq!(p.len(), 4);
    assert!(keys.contains(&BOTTOM_KEY.to_string()));
    for pair in [
        SiltingPair::new(m.clone(), m.clone()).unwrap(),
        SiltingPair::new(s.shift(&m, -1), s.shift(&m, -1)).unwrap(),
        SiltingPair::new(m.clone(), SiltingObject::empty()).unwrap(),
    ] {
        index_of(&p, &pair);
    }
    assert!(p.verify_cw_poset().pass);
}

#[test]
fn a2_poset_is_a_pentagon_cell() {
    let s = Silting::from_algebra(a_n(2));
    let p = poset_of(&s);
    let by_rank = |r: usize| (0..p.len()).filter(|&x| p.ranks[x] == r).count();
    assert_eq!((by_rank(0), by_rank(1), by_rank(2), by_rank(3)), (1, 5, 5, 1));
    let m = s.standard();
    let top = index_of(&p, &SiltingPair::new(m.clone(), SiltingObject::empty()).unwrap());
    assert_eq!(p.ranks[top], m.rank() + 1);
    assert_eq!(p.pair_rank(&p.key(top)).unwrap(), 3);
    assert_eq!(p.pair_rank("nope"), Err(SiltError::UnknownNode("nope".into())));
    // 0̂ is covered exactly by the (N, N) nodes
    let rank_one: Vec<usize> = (1..p.len()).filter(|&x| p.ranks[x] == 1).collect();
    assert_eq!(p.upper_covers(0), rank_one.as_slice());
    for &x in &rank_one {
        let Node::Pair(pr) = &p.nodes[x] else { panic!() };
        assert_eq!(pr.ambient, pr.sub);
    }
    let r = p.verify_cw_poset();
    assert!(r.pass);
    assert_eq!(r.length_two.intervals_checked, 10);
    assert!(r.length_two.violations.is_empty());
    // non-adjacent vertices of the pentagon share no cover; all literal failures sit at 0̂
    assert_eq!(r.semimodularity.failures.len(), 5);
    assert_eq!(r.semimodularity.failures_above_bottom, 0);
    assert!(!r.totally_semimodular);
}

#[test]
fn structural_invariants_on_suite() {
    for (name, alg) in suite() {
        let s = Silting::from_algebra(alg);
        let p = poset_of(&s);
        p.check_order_axioms().unwrap();
        let n = p.len();
        for x in 1..n {
            assert!(p.lt(0, x) && !p.leq(x, 0), "{name}");
        }
        // covers step the rank by one; their transitive closure is the order
        let mut closure = vec![vec![false; n]; n];
        for x in 0..n {
            closure[x][x] = true;
        }
        for &(x, y) in &p.covers {
            assert_eq!(p.ranks[y], p.ranks[x] + 1, "{name}");
        }
        for _ in 0..n {
            let mut changed = false;
            for &(x, y) in &p.covers {
                for z in 0..n {
                    if closure[z][x] && !closure[z][y] {
                        closure[z][y] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for x in 0..n {
            for y in 0..n {
                assert_eq!(closure[x][y], p.leq(x, y), "{name}");
            }
        }
        let longest = p.longest_chain_ranks();
        for x in 0..n {
            assert_eq!(longest[x], Some(p.ranks[x]), "{name}");
        }
        // tautological chain and order reversal along inclusion of sub-objects
        for x in 1..n {
            let Node::Pair(pr) = &p.nodes[x] else { panic!() };
            let full = index_of(&p, &SiltingPair::new(pr.ambient.clone(), pr.ambient.clone()).unwrap());
            assert!(p.leq(full, x), "{name}");
            for y in 1..n {
                let Node::Pair(other) = &p.nodes[y] else { panic!() };
                if other.ambient == pr.ambient && other.sub.is_subset(&pr.sub) {
                    assert!(p.leq(x, y), "{name}");
                }
            }
        }
        // every maximal chain to the top has length rk M + 1
        let m = s.standard();
        let top = index_of(&p, &SiltingPair::new(m.clone(), SiltingObject::empty()).unwrap());
        assert_eq!(p.interval_length(0, top), m.rank() + 1, "{name}");
        for x in 0..n {
            assert!(p.leq(x, top), "{name}");
        }
    }
}

#[test]
fn relation_agrees_with_both_pair_orders() {
    let s = Silting::from_algebra(make_lambda(1, 2, 0).unwrap());
    let p = poset_of(&s);
    let pairs: Vec<(usize, SiltingPair)> = (1..p.len())
        .map(|x| match &p.nodes[x] {
            Node::Pair(pr) => (x, pr.clone()),
            Node::Bottom => unreachable!(),
        })
        .collect();
    for (x, q) in &pairs {
        for (y, pr) in &pairs {
            assert_eq!(p.leq(*x, *y), s.pair_leq(q, pr).unwrap());
            assert_eq!(p.leq(*x, *y), s.pair_leq_bongartz(q, pr).unwrap());
        }
    }
}

#[test]
fn dropped_node_is_located() {
    let s = Silting::from_algebra(a_n(2));
    let p = poset_of(&s);
    let edge = (1..p.len()).find(|&x| p.ranks[x] == 2).unwrap();
    let broken = p.without_node(edge);
    let r = broken.verify_cw_poset();
    assert!(!r.pass);
    assert!(!r.length_two.violations.is_empty());
    assert!(r.length_two.violations.iter().all(|v| v.cardinality == 3));
    let bad_spheres: Vec<_> = r.spheres.iter().filter(|v| !v.pass).collect();
    assert_eq!(bad_spheres.len(), 1);
    assert_eq!(bad_spheres[0].rank, 3);

    let headless = p.without_node(0);
    assert!(!headless.verify_cw_poset().bottom_ok);
}

#[test]
fn json_round_trip_and_dot() {
    let s = Silting::from_algebra(a_n(2));
    let p = poset_of(&s);
    let dump = p.to_json();
    assert_eq!(dump.schema, "siltlab/1");
    let text = serde_json::to_string(&dump).unwrap();
    let back = PairsPoset::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.len(), p.len());
    assert_eq!(back.covers, p.covers);
    for x in 0..p.len() {
        for y in 0..p.len() {
            assert_eq!(back.leq(x, y), p.leq(x, y));
        }
    }
    let dot = p.to_dot();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), p.covers.len());
}
