//! Oracles independent of the Weyman route.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use super::ResultantError;
use crate::exactarith::rational::random_int;
use crate::exactarith::{bareiss_det, PolyMatrix, SparsePoly, Q};
use crate::toric::SupportSet;

/// Values for coefficient labels.
pub type Specialization = BTreeMap<String, Q>;

/// Resultant of two univariate polynomials in variable `var` with
/// coefficients in the other variables, as the Sylvester determinant.
pub fn sylvester_resultant(f: &SparsePoly, g: &SparsePoly, var: usize) -> Result<SparsePoly, ResultantError> {
    if f.is_zero() || g.is_zero() {
        return Err(ResultantError::Invalid("zero polynomial".into()));
    }
    let ring = f.ring().clone();
    let coeffs = |p: &SparsePoly| -> Vec<SparsePoly> {
        let d = p.degree_in(var) as usize;
        let mut out = vec![SparsePoly::zero(&ring); d + 1];
        for (m, c) in p.terms() {
            let mut e = m.0.to_vec();
            let k = e[var] as usize;
            e[var] = 0;
            out[k].add_term(crate::exactarith::Monomial::from_exps(&e), c.clone());
        }
        out
    };
    let (a, b) = (coeffs(f), coeffs(g));
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 || n == 0 {
        return Err(ResultantError::Invalid("Sylvester resultant needs positive degrees".into()));
    }
    let size = m + n;
    let mut s = PolyMatrix::zeros(&ring, size, size);
    // rows 0..n carry shifted copies of f, rows n..n+m of g, highest degree first
    for i in 0..n {
        for (k, c) in a.iter().enumerate() {
            s.set(i, i + m - k, c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().enumerate() {
            s.set(n + i, i + n - k, c.clone());
        }
    }
    Ok(bareiss_det(&s)?)
}

fn nonzero_int<G: Rng>(rng: &mut G, bound: i64) -> Q {
    loop {
        let v = random_int(rng, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

fn monomial_value(z: &[Q], nu: &[i64]) -> Q {
    z.iter().zip(nu).fold(Q::from_integer(1.into()), |acc, (zi, &e)| {
        let p = num_traits::pow(zi.clone(), e.unsigned_abs() as usize);
        if e >= 0 { acc * p } else { acc / p }
    })
}

/// A point of the incidence variety: random coefficients adjusted so the
/// system has a common zero at a random rational torus point.
pub fn incidence_sample<G: Rng>(supports: &[SupportSet], rng: &mut G) -> Specialization {
    let n = supports.first().map_or(0, |a| a.dim);
    let z: Vec<Q> = (0..n).map(|_| nonzero_int(rng, 9)).collect();
    let mut out = Specialization::new();
    for a in supports {
        let vals: Vec<Q> = a.points.iter().map(|nu| monomial_value(&z, nu)).collect();
        let mut sum = Q::zero();
        let last = a.points.len() - 1;
        for (i, label) in a.labels.iter().enumerate().take(last) {
            let c = random_int(rng, 1000);
            sum += &c * &vals[i];
            out.insert(label.clone(), c);
        }
        out.insert(a.labels[last].clone(), -sum / &vals[last]);
    }
    out
}

/// Independent random integer values for every coefficient.
pub fn generic_sample<G: Rng>(supports: &[SupportSet], rng: &mut G) -> Specialization {
    supports.iter().flat_map(|a| a.labels.iter()).map(|l| (l.clone(), nonzero_int(rng, 1000))).collect()
}

/// Whether `delta` vanishes at the specialization. Every variable of
/// `delta` must be assigned.
pub fn membership_test(delta: &SparsePoly, spec: &Specialization) -> Result<bool, ResultantError> {
    let point: Vec<Q> = delta
        .ring()
        .vars()
        .iter()
        .enumerate()
        .map(|(i, v)| match spec.get(v) {
            Some(x) => Ok(x.clone()),
            None if delta.degree_in(i) == 0 => Ok(Q::zero()),
            None => Err(ResultantError::Invalid(format!("no value for {v}"))),
        })
        .collect::<Result<_, _>>()?;
    Ok(delta.eval(&point).is_zero())
}
