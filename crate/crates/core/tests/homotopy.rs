use std::collections::BTreeMap;

use siltlab::algebra::{make_lambda, make_linear_a, Algebra, Orientation};
use siltlab::homotopy::*;
use siltlab::linalg::q;

fn a_n(l: usize) -> Algebra {
    make_linear_a(l, &vec![Orientation::Fwd; l - 1]).unwrap()
}

fn stalk(v: usize) -> Complex {
    Complex::stalk(vec![v], 0)
}

/// P(src) -> P(tgt) in degrees -1, 0 along the unique path tgt -> src.
fn arrow_complex(alg: &Algebra, src: usize, tgt: usize) -> Complex {
    let p = alg.paths_from_to(tgt, src)[0];
    two_term(src, tgt, -1, Elem::path(p))
}

#[test]
fn shift_conventions() {
    let alg = a_n(2);
    let x = arrow_complex(&alg, 1, 0);
    assert_eq!(x.shift(0), x);
    assert_eq!(x.shift(1).shift(-1), x);
    let s = stalk(0).shift(1);
    assert_eq!(s.min_degree(), Some(-1));
    assert!(x.shift(1).d_squared_zero(&alg));
    assert_eq!(x.shift(1).diff(-2).get(0, 0), &x.diff(-1).get(0, 0).neg());
}

#[test]
fn direct_sum_basics() {
    let alg = a_n(2);
    assert!(direct_sum(&[]).is_zero());
    let x = arrow_complex(&alg, 1, 0);
    assert!(is_isomorphic(&alg, &direct_sum(&[x.clone(), Complex::zero()]), &x).unwrap());
    let parts = decompose(&direct_sum(&[x.clone(), stalk(1)]), &alg).unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(direct_sum(&[x.clone(), stalk(1)]).k0_class(2), vec![1, 0]);
}

#[test]
fn hom_window_uses_the_shift_convention() {
    let alg = a_n(2);
    assert_eq!(hom_window(&stalk(0), &stalk(1)).unwrap(), (0, 0));
    let x = arrow_complex(&alg, 1, 0);
    // chain maps X -> Σ^i Y need X^d and Y^{d+i} nonzero together
    assert_eq!(hom_window(&x, &stalk(0)).unwrap(), (0, 1));
    assert!(hom_window(&Complex::zero(), &x).is_err());
    for i in -4..=4 {
        let (lo, hi) = hom_window(&x, &stalk(0)).unwrap();
        if i < lo || i > hi {
            let sys = HomSystem::new(&alg, &x, &stalk(0).shift(i));
            assert_eq!(sys.dimension(), 0);
        }
    }
}

#[test]
fn hom_basis_examples() {
    let alg = a_n(3);
    for v in 0..3 {
        assert!(hom_basis(&alg, &stalk(v), &stalk(v), 0).dimension() >= 1);
        for u in 0..3 {
            for i in [-2, -1, 1, 2] {
                assert_eq!(hom_basis(&alg, &stalk(u), &stalk(v), i).dimension(), 0);
            }
        }
    }
    let m = direct_sum(&[stalk(0), stalk(1), stalk(2)]);
    for i in 1..4 {
        assert_eq!(hom_dim(&alg, &m, &m, i), 0);
    }
    // Hom(P(u), P(v)) counts paths v -> u
    assert_eq!(hom_dim(&alg, &stalk(2), &stalk(0), 0), 1);
    assert_eq!(hom_dim(&alg, &stalk(0), &stalk(2), 0), 0);
}

#[test]
fn hom_basis_elements_are_chain_maps_and_independent() {
    let alg = make_lambda(1, 2, 0).unwrap();
    let a0 = alg.parse_path("a0").unwrap();
    let x = two_term(1, 0, -1, Elem::path(a0));
    for i in -2..=2 {
        let hs = hom_basis(&alg, &x, &x, i);
        for f in &hs.basis {
            assert!(f.is_chain_map(&alg));
            assert!(!is_null_homotopic(&alg, f));
        }
    }
}

#[test]
fn cones() {
    let alg = a_n(2);
    let x = arrow_complex(&alg, 1, 0);
    let id = ChainMap::identity(&x, &alg);
    let c = cone(&id, &alg).unwrap();
    assert!(c.d_squared_zero(&alg));
    assert!(minimalize(&c, &alg).is_zero());

    let (p1, p2) = (stalk(0), stalk(1));
    let zero = ChainMap::zero(&p1, &p2);
    let c0 = cone(&zero, &alg).unwrap();
    assert!(is_isomorphic(&alg, &c0, &direct_sum(&[p2.clone(), p1.shift(1)])).unwrap());
    let parts = decompose(&c0, &alg).unwrap();
    assert_eq!(parts.len(), 2);

    // the nonzero map P(2) -> P(1)
    let hs = hom_basis(&alg, &p2, &p1, 0);
    assert_eq!(hs.dimension(), 1);
    let c1 = cone(&hs.basis[0], &alg).unwrap();
    let parts = decompose(&c1, &alg).unwrap();
    assert_eq!(parts.len(), 1);
    assert!(is_local(&parts[0], &alg));
    assert_eq!(c1.k0_class(2), vec![1, -1]);

    let bad = ChainMap { source: p1.clone(), target: p2.clone(), comps: BTreeMap::new() };
    assert!(cone(&bad, &alg).is_ok());
}

#[test]
fn minimalize_is_idempotent_and_removes_inflation() {
    let alg = make_lambda(1, 2, 0).unwrap();
    let a0 = alg.parse_path("a0").unwrap();
    let x = two_term(1, 0, -1, Elem::path(a0));
    assert_eq!(minimalize(&x, &alg), x);
    let inflated = inflate(&inflate(&x, 0, -1, &alg), 1, -2, &alg);
    let m = minimalize(&inflated, &alg);
    assert_eq!(m.shape_key(), x.shape_key());
    assert!(is_isomorphic(&alg, &m, &x).unwrap());
}

#[test]
fn end_algebra_dimensions() {
    let alg = a_n(2);
    assert_eq!(end_algebra(&stalk(0), &alg).dimension(), 1);
    let two = direct_sum(&[stalk(0), stalk(0)]);
    let e = end_algebra(&two, &alg);
    assert_eq!(e.dimension(), 4);
    assert_eq!(e.semisimple_dim(), 4);
    let x = arrow_complex(&alg, 1, 0);
    assert_eq!(end_algebra(&x, &alg).semisimple_dim(), 1);
}

#[test]
fn decompose_examples() {
    let alg = a_n(2);
    assert_eq!(decompose(&stalk(0), &alg).unwrap().len(), 1);
    assert_eq!(decompose(&direct_sum(&[stalk(0), stalk(1)]), &alg).unwrap().len(), 2);
}

#[test]
fn decompose_splits_a_mixed_presentation() {
    // C ⊕ C with the differential conjugated so that the support graph is connected
    let alg = a_n(2);
    let a = alg.paths_from_to(0, 1)[0];
    let mut terms = BTreeMap::new();
    terms.insert(-1, vec![1, 1]);
    terms.insert(0, vec![0, 0]);
    let mut d = PMat::zeros(2, 2);
    d.set(0, 0, Elem::path(a));
    d.set(0, 1, Elem::scaled_path(a, q(-1)));
    d.set(1, 0, Elem::path(a));
    let mut diffs = BTreeMap::new();
    diffs.insert(-1, d);
    let x = Complex::new(terms, diffs).unwrap();
    let parts = decompose(&x, &alg).unwrap();
    assert_eq!(parts.len(), 2);
    let c = arrow_complex(&alg, 1, 0);
    for p in &parts {
        assert!(is_isomorphic(&alg, p, &c).unwrap());
    }
}

#[test]
fn isomorphism_examples() {
    let alg = a_n(2);
    let x = arrow_complex(&alg, 1, 0);
    assert!(is_isomorphic(&alg, &x, &x.shift(0)).unwrap());
    assert!(!is_isomorphic(&alg, &stalk(0), &stalk(1)).unwrap());
    let inflated = inflate(&x, 1, 3, &alg);
    assert!(is_isomorphic(&alg, &inflated, &x).unwrap());
    // rescaling the differential gives an isomorphic complex
    let y = two_term(1, 0, -1, Elem::scaled_path(alg.paths_from_to(0, 1)[0], q(5)));
    assert!(is_isomorphic(&alg, &x, &y).unwrap());
}

#[test]
fn approximations() {
    let alg = a_n(3);
    let (p1, p2, p3) = (stalk(0), stalk(1), stalk(2));
    // D in add(T): identity
    let (f, idx) = minimal_right_approximation(&alg, &[p1.clone(), p2.clone()], &p2);
    assert_eq!(idx, vec![1]);
    assert!(is_isomorphic(&alg, &f.source, &p2).unwrap());
    assert!(is_right_approximation(&alg, &[p1.clone(), p2.clone()], &f));
    // Hom(T, D) = 0: zero map from zero
    let (f, idx) = minimal_right_approximation(&alg, &[p1.clone(), p2.clone()], &p3);
    assert!(idx.is_empty());
    assert!(f.source.is_zero());
    // the corresponding mutation: cocone of the zero approximation is Σ^{-1}P(3)
    let c = cone(&f, &alg).unwrap().shift(-1);
    assert!(is_isomorphic(&alg, &c, &p3.shift(-1)).unwrap());
    // left approximation of P(3) by add{P(1), P(2)} has both summands
    let (g, idx) = minimal_left_approximation(&alg, &[p1.clone(), p2.clone()], &p3);
    assert_eq!(idx, vec![1]);
    assert!(is_left_approximation(&alg, &[p1.clone(), p2.clone()], &g));
}

#[test]
fn registry_interns_up_to_isomorphism() {
    let alg = a_n(2);
    let cat = Category::new(alg.clone());
    let x = arrow_complex(&alg, 1, 0);
    let y = two_term(1, 0, -1, Elem::scaled_path(alg.paths_from_to(0, 1)[0], q(-3)));
    let ix = cat.intern(&x).unwrap();
    let iy = cat.intern(&y).unwrap();
    assert_eq!(ix, iy);
    let s = cat.shift(ix[0], 1);
    assert_eq!(cat.shift(s, -1), ix[0]);
    assert_eq!(cat.hom_dim(ix[0], ix[0], 0), 1);
}
