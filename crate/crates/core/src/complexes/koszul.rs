//! The generic Koszul complex of a system of sparse polynomials.

use std::collections::HashMap;
use std::sync::Arc;

use super::{ComplexError, FreeGradedComplex};
use crate::exactarith::rational::q;
use crate::exactarith::{Monomial, PolyMatrix, SparsePoly};
use crate::toric::{
    codimension, divisor_class_and_homogenize, hull_and_facets, minkowski_sum, normal_fan, DivisorClass,
    LatticePolytope, SupportSet, ToricData,
};

#[derive(Clone, Debug)]
pub struct KoszulMetadata {
    pub supports: Vec<SupportSet>,
    pub hulls: Vec<LatticePolytope>,
    /// Degree of each polynomial of the system.
    pub classes: Vec<DivisorClass>,
    /// The generic polynomials `f_j` in `S_R`.
    pub polys: Vec<SparsePoly>,
    pub codimension: usize,
}

/// Subsets of `0..n` of size `i`, as sorted index lists in lexicographic order.
pub fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..=n - left {
            cur.push(s);
            rec(s + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= n {
        rec(0, n, i, &mut Vec::new(), &mut out);
    }
    out
}

/// Koszul complex of the given homogeneous polynomials: term `-i` has one
/// summand per `i`-subset `J` (lexicographic), of degree `sum_{j in J} classes[j]`,
/// and `d(e_J) = sum_t (-1)^t f_{J_t} e_{J \ J_t}`.
pub fn koszul_from_polys(
    toric: Arc<ToricData>,
    params: Vec<String>,
    polys: &[SparsePoly],
    classes: &[DivisorClass],
) -> Result<FreeGradedComplex, ComplexError> {
    let n = polys.len();
    let mut c = FreeGradedComplex::new(toric.clone(), params);
    let polys: Vec<SparsePoly> = polys.iter().map(|p| p.embed(&c.ring)).collect::<Result<_, _>>()?;
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for i in 0..=n {
        let subs = subsets(n, i);
        let degs = subs
            .iter()
            .map(|s| {
                let mut a = toric.zero_class();
                for &j in s {
                    a = a.add(&classes[j]);
                }
                toric.normalize_class(&a)
            })
            .collect::<Result<Vec<_>, _>>()?;
        c.terms.insert(-(i as i64), degs);
        index.push(subs.into_iter().enumerate().map(|(k, s)| (s, k)).collect());
    }
    for i in 1..=n {
        let mut d = PolyMatrix::zeros(&c.ring, index[i - 1].len(), index[i].len());
        for (s, &col) in &index[i] {
            for t in 0..s.len() {
                let mut rest = s.clone();
                let j = rest.remove(t);
                let row = index[i - 1][&rest];
                let f = if t % 2 == 0 { polys[j].clone() } else { -&polys[j] };
                d.set(row, col, f);
            }
        }
        c.differentials.insert(-(i as i64), d);
    }
    Ok(c)
}

/// The generic Koszul complex of the supports, on the toric variety of
/// their Minkowski sum.
pub fn generic_koszul(supports: &[SupportSet]) -> Result<(FreeGradedComplex, KoszulMetadata), ComplexError> {
    let hulls: Vec<LatticePolytope> = supports.iter().map(hull_and_facets).collect::<Result<_, _>>()?;
    let q = minkowski_sum(&hulls)?;
    let toric = Arc::new(normal_fan(&q)?);
    generic_koszul_on(toric, supports, hulls)
}

pub fn generic_koszul_on(
    toric: Arc<ToricData>,
    supports: &[SupportSet],
    hulls: Vec<LatticePolytope>,
) -> Result<(FreeGradedComplex, KoszulMetadata), ComplexError> {
    let params: Vec<String> = supports.iter().flat_map(|a| a.labels.iter().cloned()).collect();
    let mut seen = std::collections::HashSet::new();
    for p in &params {
        if !seen.insert(p) {
            return Err(ComplexError::Invalid(format!("coefficient label {p} is used twice")));
        }
    }
    let ring = super::cox_param_ring(toric.nrays(), &params);
    let r = toric.nrays();
    let mut classes = Vec::new();
    let mut polys = Vec::new();
    let mut offset = r;
    for (a, p) in supports.iter().zip(&hulls) {
        let (class, res) = divisor_class_and_homogenize(p, &toric)?;
        let mut f = SparsePoly::zero(&ring);
        for (k, nu) in a.points.iter().enumerate() {
            let mut e: Vec<u32> = res(nu)
                .into_iter()
                .map(|v| u32::try_from(v).map_err(|_| ComplexError::Invalid("negative homogenized exponent".into())))
                .collect::<Result<_, _>>()?;
            e.resize(ring.nvars(), 0);
            e[offset + k] = 1;
            f.add_term(Monomial::from_exps(&e), q(1));
        }
        offset += a.points.len();
        classes.push(class);
        polys.push(f);
    }
    let c = koszul_from_polys(toric, params, &polys, &classes)?;
    let polys = polys.iter().map(|p| p.embed(&c.ring)).collect::<Result<_, _>>()?;
    let meta = KoszulMetadata { supports: supports.to_vec(), hulls, classes, polys, codimension: codimension(supports) };
    Ok((c, meta))
}
