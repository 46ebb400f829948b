//! Hand-built complexes: projective spaces, the cotangent family and the
//! Koszul resolution mapping to the unit.

use std::sync::Arc;

use super::koszul::subsets;
use super::{ComplexError, ComplexMorphism, FreeGradedComplex};
use crate::exactarith::rational::q;
use crate::exactarith::{PolyMatrix, SparsePoly};
use crate::toric::{hull_of_points, normal_fan, DivisorClass, ToricData};

/// P^n as the toric variety of the standard simplex. Every Cox variable has
/// class 1.
pub fn projective_space(n: usize) -> Arc<ToricData> {
    let mut pts = vec![vec![0i64; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        pts.push(e);
    }
    Arc::new(normal_fan(&hull_of_points(&pts).expect("simplex hull")).expect("simplex fan"))
}

/// The complex `S` concentrated in degree 0.
pub fn one_term_complex(toric: Arc<ToricData>, params: Vec<String>) -> FreeGradedComplex {
    let mut c = FreeGradedComplex::new(toric.clone(), params);
    c.terms.insert(0, vec![toric.zero_class()]);
    c
}

fn class(k: i64) -> DivisorClass {
    DivisorClass(vec![k])
}

/// The four-term complex on P^n
/// `S[-2d] -> S[-d] ⊕ S[-d-1]^{n+1} -> S[-d] ⊕ S[-1]^{n+1} -> S`
/// whose middle homology is the module of the cotangent sheaf family of the
/// hypersurface `F = 0`. `F` must be homogeneous of degree `d` in the Cox
/// variables `x1..x(n+1)`; its remaining variables are parameters.
pub fn cotangent_family_complex(n: usize, d: i64, f: &SparsePoly) -> Result<FreeGradedComplex, ComplexError> {
    let toric = projective_space(n);
    let cox = n + 1;
    let names = f.ring().vars();
    for (i, v) in names.iter().enumerate().take(cox) {
        if *v != format!("x{}", i + 1) {
            return Err(ComplexError::Invalid(format!("expected Cox variable x{} at position {i}", i + 1)));
        }
    }
    let params: Vec<String> = names[cox..].to_vec();
    let mut c = FreeGradedComplex::new(toric, params);
    let f = f.embed(&c.ring)?;
    for (m, _) in f.terms() {
        let deg: i64 = m.0[..cox].iter().map(|&e| e as i64).sum();
        if deg != d {
            return Err(ComplexError::NotHomogeneous(format!("term of degree {deg}, expected {d}")));
        }
    }
    let x = |i: usize| SparsePoly::var(&c.ring, i);
    let grad: Vec<SparsePoly> = (0..cox).map(|i| f.derivative(i)).collect();
    let one_plus = |first: i64, rest: i64| {
        let mut v = vec![class(first)];
        v.extend(std::iter::repeat(class(rest)).take(cox));
        v
    };
    c.terms.insert(-3, vec![class(2 * d)]);
    c.terms.insert(-2, one_plus(d, d + 1));
    c.terms.insert(-1, one_plus(d, 1));
    c.terms.insert(0, vec![class(0)]);

    let mut d3 = PolyMatrix::zeros(&c.ring, cox + 1, 1);
    d3.set(0, 0, f.clone());
    for i in 0..cox {
        d3.set(i + 1, 0, -&grad[i]);
    }
    let mut d2 = PolyMatrix::zeros(&c.ring, cox + 1, cox + 1);
    d2.set(0, 0, SparsePoly::constant(&c.ring, q(-d)));
    for i in 0..cox {
        d2.set(i + 1, 0, grad[i].clone());
        d2.set(0, i + 1, -&x(i));
        d2.set(i + 1, i + 1, f.clone());
    }
    let mut d1 = PolyMatrix::zeros(&c.ring, 1, cox + 1);
    d1.set(0, 0, f.clone());
    for i in 0..cox {
        d1.set(0, i + 1, x(i));
    }
    c.differentials.insert(-3, d3);
    c.differentials.insert(-2, d2);
    c.differentials.insert(-1, d1);
    Ok(c)
}

/// The Koszul complex `∧^k S[-1]^{n+1}` (term `-(k-1)` for `k = 1..n+1`)
/// with the map `(x_0, ..., x_n)` to `S` in degree 0.
pub fn koszul_vs_unit_fixture(n: usize) -> ComplexMorphism {
    let toric = projective_space(n);
    let m = n + 1;
    let mut src = FreeGradedComplex::new(toric.clone(), Vec::new());
    let x = |i: usize| SparsePoly::var(&src.ring, i);
    let mut index = Vec::new();
    for k in 1..=m {
        let subs = subsets(m, k);
        src.terms.insert(-(k as i64 - 1), vec![class(k as i64); subs.len()]);
        index.push(subs);
    }
    for k in 2..=m {
        let (rows, cols) = (&index[k - 2], &index[k - 1]);
        let mut d = PolyMatrix::zeros(&src.ring, rows.len(), cols.len());
        for (col, s) in cols.iter().enumerate() {
            for t in 0..s.len() {
                let mut rest = s.clone();
                let j = rest.remove(t);
                let row = rows.iter().position(|r| *r == rest).unwrap();
                d.set(row, col, if t % 2 == 0 { x(j) } else { -&x(j) });
            }
        }
        src.differentials.insert(-(k as i64 - 1), d);
    }
    let tgt = one_term_complex(toric, Vec::new());
    let mut theta = PolyMatrix::zeros(&src.ring, 1, m);
    for i in 0..m {
        theta.set(0, i, x(i));
    }
    let mut maps = std::collections::BTreeMap::new();
    maps.insert(0, theta);
    ComplexMorphism { source: src, target: tgt, maps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::Ring;

    #[test]
    fn cotangent_shape_and_identity() {
        let r = Ring::new(["x1", "x2", "x3"]);
        let f = SparsePoly::var(&r, 0);
        let c = cotangent_family_complex(2, 1, &f).unwrap();
        assert_eq!((c.rank(-3), c.rank(-2), c.rank(-1), c.rank(0)), (1, 4, 4, 1));
        assert!(c.validate().is_clean(), "{:?}", c.validate());
    }

    #[test]
    fn rejects_inhomogeneous() {
        let r = Ring::new(["x1", "x2", "x3"]);
        let f = SparsePoly::parse(&r, "x1^2 + x2").unwrap();
        assert!(cotangent_family_complex(2, 2, &f).is_err());
    }

    #[test]
    fn unit_morphism_commutes() {
        for n in 1..=3 {
            let th = koszul_vs_unit_fixture(n);
            assert!(th.validate().is_clean(), "{:?}", th.validate());
            assert!(th.source.validate().is_clean());
        }
        let th = koszul_vs_unit_fixture(1);
        assert_eq!((th.source.rank(-1), th.source.rank(0)), (1, 2));
        let th = koszul_vs_unit_fixture(2);
        assert_eq!((th.source.rank(-2), th.source.rank(-1), th.source.rank(0)), (1, 3, 3));
    }
}
