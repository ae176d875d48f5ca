//! Univariate polynomials over Q, coefficients from the constant term upward.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{Mat, Q};

pub type Poly = Vec<Q>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> Option<usize> {
    let p = trim(p.clone());
    (!p.is_empty()).then(|| p.len() - 1)
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default()).collect())
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).copied().unwrap_or_default() - b.get(i).copied().unwrap_or_default()).collect())
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// (quotient, remainder); panics on division by zero.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = *b.last().unwrap();
    let mut qt = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = *r.last().unwrap() / lead;
        qt[shift] = c;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= c * y;
        }
        r = trim(r);
    }
    (trim(qt), r)
}

/// (g, s, t) with s a + t b = g, g monic.
pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut s0, mut s1) = (vec![Q::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Q::one()]);
    while !r1.is_empty() {
        let (qt, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&qt, &s1));
        let t2 = sub(&t0, &mul(&qt, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if let Some(&lead) = r0.last() {
        let inv = vec![lead.recip()];
        (mul(&r0, &inv), mul(&s0, &inv), mul(&t0, &inv))
    } else {
        (r0, s0, t0)
    }
}

pub fn eval_mat(p: &Poly, m: &Mat) -> Mat {
    let n = m.nrows();
    let mut acc = Mat::zeros(n, n);
    for c in p.iter().rev() {
        acc = acc.mul(m).add(&Mat::identity(n).scale(*c));
    }
    acc
}

pub fn eval(p: &Poly, x: Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn divisors(n: i128) -> Option<Vec<i128>> {
    let n = n.abs();
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots with multiplicities, by the rational root test.
/// Returns None when coefficients are too large to factor the end terms.
pub fn rational_roots(p: &Poly) -> Option<Vec<(Q, usize)>> {
    let mut p = trim(p.clone());
    if p.is_empty() {
        return None;
    }
    let mut roots = Vec::new();
    let mut zero_mult = 0;
    while p.first().is_some_and(|c| c.is_zero()) {
        p.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Q::zero(), zero_mult));
    }
    if p.len() <= 1 {
        return Some(roots);
    }
    let l = p.iter().fold(1i128, |acc, c| acc.lcm(c.denom()));
    let ints: Vec<i128> = p.iter().map(|c| (c * Q::from_integer(l)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    let ints: Vec<i128> = ints.iter().map(|x| x / g).collect();
    let num_divs = divisors(ints[0])?;
    let den_divs = divisors(*ints.last().unwrap())?;
    let mut cands: Vec<Q> = Vec::new();
    for &a in &num_divs {
        for &b in &den_divs {
            cands.push(Q::new(a, b));
            cands.push(Q::new(-a, b));
        }
    }
    cands.sort();
    cands.dedup();
    for c in cands {
        let mut mult = 0;
        let lin = vec![-c, Q::one()];
        loop {
            let (qt, r) = divrem(&p, &lin);
            if !r.is_empty() {
                break;
            }
            p = qt;
            mult += 1;
        }
        if mult > 0 {
            roots.push((c, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Some(roots)
}

pub fn linear_power(lambda: Q, a: usize) -> Poly {
    let lin = vec![-lambda, Q::one()];
    (0..a).fold(vec![Q::one()], |acc, _| mul(&acc, &lin))
}

pub fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn abs_leading(p: &Poly) -> Q {
    trim(p.clone()).last().map(|c| c.abs()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};

    #[test]
    fn roots_of_product() {
        // (x - 1/2)^2 (x + 3) x
        let p = mul(&mul(&linear_power(qf(1, 2), 2), &linear_power(q(-3), 1)), &linear_power(q(0), 1));
        let r = rational_roots(&p).unwrap();
        assert_eq!(r, vec![(q(-3), 1), (q(0), 1), (qf(1, 2), 2)]);
    }

    #[test]
    fn bezout_identity() {
        let a = linear_power(q(1), 2);
        let b = linear_power(q(2), 1);
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(g, vec![q(1)]);
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), vec![q(1)]);
    }

    #[test]
    fn irreducible_quadratic_has_no_rational_root() {
        assert_eq!(rational_roots(&vec![q(1), q(0), q(1)]).unwrap(), vec![]);
    }
}
