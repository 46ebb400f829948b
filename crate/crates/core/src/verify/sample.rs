//! Random inputs shared by the verification suite and the tests.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::complexes::koszul::koszul_from_polys;
use crate::complexes::{cox_param_ring, projective_space, FreeGradedComplex};
use crate::exactarith::rational::q;
use crate::exactarith::{Monomial, Ring, SparsePoly, Q};
use crate::toric::{hull_of_points, normal_fan, DivisorClass, ToricData};

pub fn p1xp1() -> Arc<ToricData> {
    let square = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
    Arc::new(normal_fan(&hull_of_points(&square).expect("square hull")).expect("square fan"))
}

pub fn small_varieties() -> Vec<Arc<ToricData>> {
    vec![projective_space(1), projective_space(2), p1xp1()]
}

/// Cox exponent vectors of class `c` with every exponent at most `cap`.
pub fn monomials_of_class(x: &ToricData, c: &DivisorClass, cap: u32) -> Vec<Vec<u32>> {
    let n = x.nrays();
    let Ok(target) = x.normalize_class(c) else { return Vec::new() };
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        let ei: Vec<i64> = e.iter().map(|&v| v as i64).collect();
        if x.degree_of_exponent(&ei) == target {
            out.push(e.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if e[i] < cap {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// A form of class `c` whose coefficients are random integers plus random
/// multiples of the parameters (the variables after the Cox block).
pub fn random_form<G: Rng>(ring: &Arc<Ring>, x: &ToricData, c: &DivisorClass, rng: &mut G) -> SparsePoly {
    let n = x.nrays();
    let mut f = SparsePoly::zero(ring);
    for e in monomials_of_class(x, c, 3) {
        let mut full = e.clone();
        full.resize(ring.nvars(), 0);
        f.add_term(Monomial::from_exps(&full), q(rng.gen_range(-5..=5)));
        for t in n..ring.nvars() {
            let mut mt = full.clone();
            mt[t] += 1;
            f.add_term(Monomial::from_exps(&mt), q(rng.gen_range(-3..=3)));
        }
    }
    f
}

/// A Koszul complex of random forms with one parameter `t`, twisted at random.
pub fn random_system<G: Rng>(x: &Arc<ToricData>, rng: &mut G) -> FreeGradedComplex {
    let params = vec!["t".to_string()];
    let ring = cox_param_ring(x.nrays(), &params);
    let nforms = rng.gen_range(1..=x.dim + 1);
    let classes: Vec<DivisorClass> = (0..nforms)
        .map(|_| {
            let c: Vec<i64> = (0..x.class_len()).map(|_| rng.gen_range(1..=2)).collect();
            x.normalize_class(&DivisorClass(c)).expect("free class group")
        })
        .collect();
    let polys: Vec<_> = classes.iter().map(|c| random_form(&ring, x, c, rng)).collect();
    let k = koszul_from_polys(x.clone(), params, &polys, &classes).expect("valid Koszul data");
    let twist: Vec<i64> = (0..x.class_len()).map(|_| rng.gen_range(-3..=3)).collect();
    k.twist(&DivisorClass(twist)).expect("twist of a valid complex")
}

pub fn random_point<G: Rng>(n: usize, rng: &mut G) -> Vec<Q> {
    (0..n).map(|_| q(rng.gen_range(-1000..=1000))).collect()
}

/// Drops zero entries of a homology map.
pub fn nonzero(h: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    h.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (*k, *v)).collect()
}

/// Binary form `sum c_i s^(d-i) t^i` in a ring whose first two variables are `s, t`.
pub fn binary_form(ring: &Arc<Ring>, coeffs: &[SparsePoly]) -> SparsePoly {
    let d = coeffs.len() as u32 - 1;
    let mut f = SparsePoly::zero(ring);
    for (i, c) in coeffs.iter().enumerate() {
        let mut e = vec![0u32; ring.nvars()];
        e[0] = d - i as u32;
        e[1] = i as u32;
        f = &f + &(c * &SparsePoly::monomial(ring, Monomial::from_exps(&e), q(1)));
    }
    f
}

/// Three random binary forms of degree `d` over `s, t, params`, with
/// coefficients affine in the parameters.
pub fn random_forms<G: Rng>(rng: &mut G, d: usize, params: &[String]) -> [SparsePoly; 3] {
    let names: Vec<String> = ["s", "t"].iter().map(|s| s.to_string()).chain(params.iter().cloned()).collect();
    let ring = Ring::new(names);
    let mut coeff = || {
        let mut c = SparsePoly::from_int(&ring, rng.gen_range(-9..=9));
        for p in params {
            let v = SparsePoly::var_named(&ring, p).expect("parameter in ring");
            c = &c + &(&SparsePoly::from_int(&ring, rng.gen_range(-9..=9)) * &v);
        }
        c
    };
    let mut make = || binary_form(&ring, &(0..=d).map(|_| coeff()).collect::<Vec<_>>());
    [make(), make(), make()]
}

/// Generic univariate pair with the given coefficient labels, in a ring with
/// the variable `x` last. Returns the pair and the index of `x`.
pub fn univariate_pair(la: &[String], lb: &[String]) -> (SparsePoly, SparsePoly, usize) {
    let names: Vec<String> = la.iter().chain(lb).cloned().chain(["x".to_string()]).collect();
    let ring = Ring::new(names.clone());
    let x = names.len() - 1;
    let build = |labels: &[String], offset: usize| {
        let mut f = SparsePoly::zero(&ring);
        for i in 0..labels.len() {
            let mut e = vec![0u32; names.len()];
            e[offset + i] = 1;
            e[x] = i as u32;
            f.add_term(Monomial::from_exps(&e), q(1));
        }
        f
    };
    (build(la, 0), build(lb, la.len()), x)
}

/// Coefficient names for a pair of degrees `d1, d2`, shuffled so that the
/// ring order does not follow the support order.
pub fn shuffled_labels<G: Rng>(rng: &mut G, d1: usize, d2: usize) -> (Vec<String>, Vec<String>) {
    let mut names: Vec<String> = (0..d1 + d2 + 2).map(|i| format!("c{i}")).collect();
    for i in (1..names.len()).rev() {
        names.swap(i, rng.gen_range(0..=i));
    }
    let b = names.split_off(d1 + 1);
    (names, b)
}

/// Implicit equation by elimination of `t` from the chart `s = 1` with a
/// Sylvester determinant, made primitive. The result lives in `u, v, params`.
pub fn implicit_by_sylvester(forms: &[SparsePoly; 3], params: &[String]) -> Result<SparsePoly, String> {
    let names: Vec<String> = ["t", "u", "v"].iter().map(|s| s.to_string()).chain(params.iter().cloned()).collect();
    let ring = Ring::new(names.clone());
    let mut images = vec![SparsePoly::one(&ring), SparsePoly::var(&ring, 0)];
    for p in params {
        images.push(SparsePoly::var_named(&ring, p).ok_or_else(|| format!("no parameter {p}"))?);
    }
    let f = forms
        .iter()
        .map(|p| p.substitute(&images, &ring))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let u = SparsePoly::var(&ring, 1);
    let v = SparsePoly::var(&ring, 2);
    let g1 = &(&f[0] * &u) - &f[1];
    let g2 = &(&f[0] * &v) - &f[2];
    let out_ring = Ring::new(names[1..].to_vec());
    let r = crate::resultant::sylvester_resultant(&g1, &g2, 0).map_err(|e| e.to_string())?;
    Ok(r.embed(&out_ring).map_err(|e| e.to_string())?.primitive_part().0)
}
