//! Exact k-th roots of polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use super::poly::{Monomial, SparsePoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Root {
    Root(SparsePoly),
    NotAPower,
}

fn int_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return int_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

fn rational_root(c: &BigRational, k: u32) -> Option<BigRational> {
    Some(BigRational::new(int_root(c.numer(), k)?, int_root(c.denom(), k)?))
}

fn monomial_root(m: &Monomial, k: u32) -> Option<Monomial> {
    if m.0.iter().all(|e| e % k == 0) {
        Some(Monomial(m.0.iter().map(|e| e / k).collect()))
    } else {
        None
    }
}

/// Coefficient of the lexicographically largest monomial.
pub fn lex_leading_coeff(p: &SparsePoly) -> Option<&BigRational> {
    p.terms().max_by(|a, b| a.0 .0.cmp(&b.0 .0)).map(|(_, c)| c)
}

fn normalize(p: SparsePoly) -> SparsePoly {
    match lex_leading_coeff(&p) {
        Some(c) if c.is_negative() => -&p,
        _ => p,
    }
}

/// Returns `q` with `q^k = p`, normalized so the lexicographically leading
/// coefficient is positive. Terms of `q` are found from the top down in the
/// grevlex order by matching leading terms of `p - q^k`.
pub fn kth_root_poly(p: &SparsePoly, k: u32) -> Root {
    assert!(k >= 1, "k must be positive");
    if p.is_zero() {
        return Root::Root(p.clone());
    }
    if k == 1 {
        return Root::Root(normalize(p.clone()));
    }
    let ring = p.ring().clone();
    let (lm, lc) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let (tm, _) = p.trailing_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let (Some(m0), Some(c0), Some(tail)) = (monomial_root(&lm, k), rational_root(&lc, k), monomial_root(&tm, k))
    else {
        return Root::NotAPower;
    };
    let lead = SparsePoly::monomial(&ring, m0.clone(), c0.clone());
    // derivative of q^k along the new term: k * lead^(k-1)
    let dm = m0.pow(k - 1);
    let dc = BigRational::from_integer(k.into()) * num_traits::pow(c0, (k - 1) as usize);
    let mut q = lead;
    loop {
        let r = p - &q.pow(k);
        let Some((rm, rc)) = r.leading_term() else {
            return Root::Root(normalize(q));
        };
        let Some(tmon) = rm.div(&dm) else {
            return Root::NotAPower;
        };
        if tmon < tail {
            return Root::NotAPower;
        }
        if let Some((qt, _)) = q.trailing_term() {
            if tmon >= *qt {
                return Root::NotAPower;
            }
        }
        q.add_term(tmon, rc / &dc);
    }
}

/// Largest `k` such that `±p` is a k-th power, with the root.
pub fn perfect_power(p: &SparsePoly) -> (u32, SparsePoly) {
    if p.is_zero() || p.is_constant() {
        return (1, normalize(p.clone()));
    }
    let (lm, _) = p.leading_term().unwrap();
    let (tm, _) = p.trailing_term().unwrap();
    let mut g: u32 = 0;
    for &e in lm.0.iter().chain(tm.0.iter()) {
        g = g.gcd(&e);
    }
    let mut divisors: Vec<u32> = (2..=g).filter(|d| g % d == 0).collect();
    divisors.reverse();
    for k in divisors {
        for s in [p.clone(), -p] {
            if let Root::Root(q) = kth_root_poly(&s, k) {
                return (k, q);
            }
        }
    }
    (1, normalize(p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::poly::Ring;

    #[test]
    fn cube_root() {
        let r = Ring::new(["x", "y"]);
        let p = SparsePoly::parse(&r, "x + y").unwrap().pow(3);
        assert_eq!(kth_root_poly(&p, 3), Root::Root(SparsePoly::parse(&r, "x + y").unwrap()));
    }

    #[test]
    fn not_a_square() {
        let r = Ring::new(["x"]);
        let p = SparsePoly::parse(&r, "x^2 + 1").unwrap();
        assert_eq!(kth_root_poly(&p, 2), Root::NotAPower);
    }

    #[test]
    fn sign_normalized() {
        let r = Ring::new(["x", "y"]);
        let q = SparsePoly::parse(&r, "y - 2*x").unwrap();
        match kth_root_poly(&q.pow(2), 2) {
            Root::Root(s) => assert_eq!(s, SparsePoly::parse(&r, "2*x - y").unwrap()),
            Root::NotAPower => panic!("square not recognized"),
        }
    }

    #[test]
    fn zero_root() {
        let r = Ring::new(["x"]);
        assert_eq!(kth_root_poly(&SparsePoly::zero(&r), 4), Root::Root(SparsePoly::zero(&r)));
    }

    #[test]
    fn detects_multiplicity() {
        let r = Ring::new(["a", "b", "c"]);
        let h = SparsePoly::parse(&r, "a*b^2 - 3*a*b*c + c^3").unwrap();
        let (m, root) = perfect_power(&(-&h.pow(6)));
        assert_eq!(m, 6);
        assert_eq!(root, h);
    }
}
