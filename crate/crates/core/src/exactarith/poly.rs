//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! degree-reverse-lexicographic on the ring's variable order. Iteration is
//! therefore ascending; the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, parse_rational};
use super::ArithError;

/// An ordered list of named indeterminates.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Arc<Ring> {
        Arc::new(Ring { vars: vars.into_iter().map(Into::into).collect() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a.vars == b.vars
}

/// Exponent vector, ordered by grevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Box<[u32]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn from_exps(e: &[u32]) -> Self {
        Monomial(e.to_vec().into_boxed_slice())
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out.into_boxed_slice()))
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial over `ring` with rational coefficients.
#[derive(Clone, Debug)]
pub struct SparsePoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

impl SparsePoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        SparsePoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: BigRational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn from_int(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, BigRational::from_integer(c.into()))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Self::monomial(ring, Monomial(e.into_boxed_slice()), BigRational::one())
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Option<Self> {
        ring.index_of(name).map(|i| Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "exponent length must match variable count");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigRational> {
        self.terms
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn trailing_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.ring.nvars());
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &SparsePoly) -> Result<(), ArithError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(ArithError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly, ArithError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly, ArithError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly, ArithError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(SparsePoly::zero(&self.ring));
        }
        let mut acc: std::collections::HashMap<Monomial, BigRational> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                acc.entry(m).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(SparsePoly { ring: self.ring.clone(), terms })
    }

    pub fn add_assign_ref(&mut self, other: &SparsePoly) {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += c * x^m * other`
    pub fn add_scaled_shifted(&mut self, other: &SparsePoly, c: &BigRational, m: &Monomial) {
        for (mo, co) in &other.terms {
            self.add_term(mo.mul(m), co * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(&self.ring);
        }
        SparsePoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparsePoly {
        self.scale(&-BigRational::one())
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.ring);
        out.add_scaled_shifted(self, c, m);
        out
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut result = SparsePoly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut n = m.0.clone();
                n[var] -= 1;
                out.add_term(Monomial(n), c * BigRational::from_integer(e.into()));
            }
        }
        out
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Replaces the listed variables by rational values; the ring is kept.
    pub fn specialize(&self, values: &[(usize, BigRational)]) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = m.0.to_vec();
            let mut coef = c.clone();
            for (i, v) in values {
                if e[*i] > 0 {
                    coef *= num_traits::pow(v.clone(), e[*i] as usize);
                    e[*i] = 0;
                }
            }
            out.add_term(Monomial(e.into_boxed_slice()), coef);
        }
        out
    }

    /// Substitutes every variable of `self.ring` by a polynomial over `target`.
    pub fn substitute(&self, images: &[SparsePoly], target: &Arc<Ring>) -> Result<SparsePoly, ArithError> {
        if images.len() != self.ring.nvars() {
            return Err(ArithError::Dimension(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        if images.iter().any(|p| !same_ring(&p.ring, target)) {
            return Err(ArithError::RingMismatch);
        }
        let mut cache: Vec<Vec<SparsePoly>> = vec![Vec::new(); images.len()];
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(SparsePoly::one(target));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            out.add_assign_ref(&t);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a ring containing, by name, every
    /// variable that occurs in it.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<SparsePoly, ArithError> {
        let used = self.support_vars();
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.index_of(v)).collect();
        if let Some(&i) = used.iter().find(|&&i| map[i].is_none()) {
            return Err(ArithError::UnknownVariable(self.ring.vars[i].clone()));
        }
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[map[i].expect("occurring variables are mapped")] += x;
                }
            }
            out.add_term(Monomial(e.into_boxed_slice()), c.clone());
        }
        Ok(out)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Result<Option<SparsePoly>, ArithError> {
        self.check_ring(divisor)?;
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(ArithError::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(&self.ring);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = match rm.div(&lm) {
                Some(q) => q,
                None => return Ok(None),
            };
            let qc = rc / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Scales to integer coefficients with unit content and a positive
    /// leading coefficient. Returns the normalized polynomial and the factor
    /// that was applied.
    pub fn primitive_part(&self) -> (SparsePoly, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        let mut factor = BigRational::new(den, g);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        (self.scale(&factor), factor)
    }

    /// Parses the canonical text format over `ring`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<SparsePoly, ArithError> {
        parse_poly(ring, text)
    }

    /// Splits into `(monomial in vars[..split], coefficient polynomial in the rest)`
    /// pairs. Used to separate Cox variables from parameters.
    pub fn split_at(&self, split: usize) -> BTreeMap<Monomial, SparsePoly> {
        let mut out: BTreeMap<Monomial, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let head = Monomial(m.0[..split].to_vec().into_boxed_slice());
            let mut tail = vec![0u32; m.0.len()];
            tail[split..].copy_from_slice(&m.0[split..]);
            out.entry(head)
                .or_insert_with(|| SparsePoly::zero(&self.ring))
                .add_term(Monomial(tail.into_boxed_slice()), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<'a> std::ops::Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> std::ops::Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl std::ops::Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &Ring, m: &Monomial, mut first: bool) -> fmt::Result {
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str(" * ")?;
        }
        first = false;
        f.write_str(&ring.vars[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write_monomial(f, &self.ring, m, true)?;
            } else {
                f.write_str(&format_rational(&abs))?;
                write_monomial(f, &self.ring, m, false)?;
            }
        }
        Ok(())
    }
}

fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<SparsePoly, ArithError> {
    let err = |msg: &str| ArithError::Parse(format!("{msg} in {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut out = SparsePoly::zero(ring);
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = BigRational::one();
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let term = &s[start..pos];
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let mut coef = sign;
        let mut exps = vec![0u32; ring.nvars()];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            let first = factor.as_bytes()[0];
            if first.is_ascii_digit() {
                coef *= parse_rational(factor).ok_or_else(|| err("bad number"))?;
            } else {
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let i = ring.index_of(name).ok_or_else(|| ArithError::UnknownVariable(name.to_string()))?;
                exps[i] += e;
            }
        }
        out.add_term(Monomial(exps.into_boxed_slice()), coef);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::new(["x"]);
        let x = SparsePoly::var(&r, 0);
        let one = SparsePoly::one(&r);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn ring_axioms_with_zero() {
        let r = Ring::new(["x", "y"]);
        let p = SparsePoly::parse(&r, "3*x^2*y - 1/2*y + 7").unwrap();
        let z = SparsePoly::zero(&r);
        assert!((&p * &z).is_zero());
        assert_eq!(&p + &z, p);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = Ring::new(["x"]);
        let r2 = Ring::new(["y"]);
        let e = SparsePoly::var(&r1, 0).try_add(&SparsePoly::var(&r2, 0));
        assert!(matches!(e, Err(ArithError::RingMismatch)));
    }

    #[test]
    fn grevlex_order() {
        // x > y > z as variables; grevlex: x^2 > xy > y^2 > xz > yz > z^2
        let m = |a: u32, b: u32, c: u32| Monomial::from_exps(&[a, b, c]);
        let mut v = vec![m(0, 0, 2), m(1, 1, 0), m(0, 1, 1), m(2, 0, 0), m(1, 0, 1), m(0, 2, 0)];
        v.sort();
        assert_eq!(v, vec![m(0, 0, 2), m(0, 1, 1), m(1, 0, 1), m(0, 2, 0), m(1, 1, 0), m(2, 0, 0)]);
    }

    #[test]
    fn text_round_trip() {
        let r = Ring::new(["a1", "b2", "c3"]);
        let p = SparsePoly::parse(&r, "-2/3 * a1^2 * c3 + b2 - 5 + a1*b2*c3").unwrap();
        let s = p.to_string();
        assert_eq!(SparsePoly::parse(&r, &s).unwrap(), p);
        assert_eq!(s, "-2/3 * a1^2 * c3 + a1 * b2 * c3 + b2 - 5");
    }

    #[test]
    fn exact_division() {
        let r = Ring::new(["x", "y"]);
        let a = SparsePoly::parse(&r, "x^2 - y^2").unwrap();
        let b = SparsePoly::parse(&r, "x + y").unwrap();
        assert_eq!(a.div_exact(&b).unwrap().unwrap(), SparsePoly::parse(&r, "x - y").unwrap());
        let c = SparsePoly::parse(&r, "x + 2*y").unwrap();
        assert!(a.div_exact(&c).unwrap().is_none());
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let r = Ring::new(["x"]);
        let p = SparsePoly::parse(&r, "-2/3*x + 4/9").unwrap();
        let (pp, f) = p.primitive_part();
        assert_eq!(pp.to_string(), "3 * x - 2");
        assert_eq!(f, BigRational::new((-9).into(), 2.into()));
    }

    #[test]
    fn substitution_and_eval() {
        let r = Ring::new(["x", "y"]);
        let p = SparsePoly::parse(&r, "x^2*y + 3").unwrap();
        assert_eq!(p.eval(&[q(2), q(5)]), q(23));
        let t = Ring::new(["t"]);
        let tv = SparsePoly::var(&t, 0);
        let img = vec![&tv + &SparsePoly::one(&t), tv.clone()];
        let s = p.substitute(&img, &t).unwrap();
        assert_eq!(s.to_string(), "t^3 + 2 * t^2 + t + 3");
    }

    #[test]
    fn split_separates_variables() {
        let r = Ring::new(["x", "a", "b"]);
        let p = SparsePoly::parse(&r, "a*x^2 + b*x^2 - x*a").unwrap();
        let parts = p.split_at(1);
        assert_eq!(parts.len(), 2);
        let x2 = Monomial::from_exps(&[2]);
        assert_eq!(parts[&x2].to_string(), "a + b");
    }
}
