//! Chain-level realization of a complex on the Čech double complex: reduced
//! strands for every summand and cell-level versions of the module maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::WeymanError;
use crate::cech::{BasisVec, CechContext, Cochain, ReducedStrand};
use crate::complexes::{to_param_ring, FreeGradedComplex};
use crate::exactarith::rational::Q;
use crate::exactarith::snf::{smith_normal_form, solve_with_snf, SnfResult};
use crate::exactarith::{PolyMatrix, Ring, SparsePoly};
use crate::toric::ToricData;

/// Elements of one term of the double complex, summand by summand.
pub(crate) type Elem = BTreeMap<usize, Cochain<SparsePoly>>;

/// A module map `⊕_k S_R[-α_k] → ⊕_l S_R[-β_l]` acting on Čech cells: the
/// monomial `x^w` of an entry moves the lattice point by `s` with `B s = D_k + w - D_l`.
#[derive(Clone, Debug)]
pub(crate) struct CellMap {
    pub per_source: Vec<Vec<(usize, Vec<i64>, SparsePoly)>>,
}

pub(crate) struct RaySolver {
    snf: SnfResult,
    rays: Vec<Vec<i64>>,
    dim: usize,
}

impl RaySolver {
    pub fn new(x: &ToricData) -> Result<Self, WeymanError> {
        Ok(RaySolver { snf: smith_normal_form(&x.rays)?, rays: x.rays.clone(), dim: x.dim })
    }

    fn solve(&self, v: &[i64]) -> Option<Vec<i64>> {
        let s = solve_with_snf(&self.snf, self.dim, v)?;
        let check = self.rays.iter().map(|r| r.iter().zip(&s).map(|(a, b)| a * b).sum::<i64>());
        check.eq(v.iter().copied()).then_some(s)
    }
}

impl CellMap {
    pub fn build(
        solver: &RaySolver,
        mat: &PolyMatrix,
        src: &[Arc<ReducedStrand>],
        tgt: &[Arc<ReducedStrand>],
        ncox: usize,
        param_ring: &Arc<Ring>,
    ) -> Result<Self, WeymanError> {
        let mut per_source = vec![Vec::new(); src.len()];
        for (&(l, k), f) in mat.entries() {
            for (head, tail) in f.split_at(ncox) {
                let v: Vec<i64> = (0..ncox)
                    .map(|r| src[k].divisor[r] + head.0[r] as i64 - tgt[l].divisor[r])
                    .collect();
                let s = solver.solve(&v).ok_or_else(|| {
                    WeymanError::Invalid(format!("entry ({l}, {k}) is not homogeneous of the expected degree"))
                })?;
                per_source[k].push((l, s, to_param_ring(&tail, ncox, param_ring)));
            }
        }
        Ok(CellMap { per_source })
    }

    /// Applies the map cellwise. With `signed`, cells of odd Čech degree pick
    /// up a minus sign.
    pub fn apply(
        &self,
        elem: &Elem,
        src: &[Arc<ReducedStrand>],
        tgt: &[Arc<ReducedStrand>],
        signed: bool,
    ) -> Result<Elem, WeymanError> {
        let mut out: Elem = BTreeMap::new();
        for (&k, cochain) in elem {
            let s_k = &src[k];
            for (&(pt, c), x) in cochain {
                let m = &s_k.points[pt as usize];
                let mask = s_k.pattern_of(pt).cells[c as usize];
                let neg = signed && (mask.count_ones() - 1) % 2 == 1;
                for (l, shift, f) in &self.per_source[k] {
                    let m2: Vec<i64> = m.iter().zip(shift).map(|(a, b)| a + b).collect();
                    let cell = tgt[*l].cell(&m2, mask).ok_or_else(|| {
                        WeymanError::Window(format!("cell {mask:b} at {m2:?} lies outside the truncation"))
                    })?;
                    let mut prod = x * f;
                    if neg {
                        prod = prod.neg();
                    }
                    add_poly(out.entry(*l).or_default(), cell, prod);
                }
            }
        }
        out.retain(|_, c| !c.is_empty());
        Ok(out)
    }
}

pub(crate) fn add_poly(c: &mut Cochain<SparsePoly>, key: (u32, u32), p: SparsePoly) {
    if p.is_zero() {
        return;
    }
    match c.get_mut(&key) {
        Some(x) => {
            x.add_assign_ref(&p);
            if x.is_zero() {
                c.remove(&key);
            }
        }
        None => {
            c.insert(key, p);
        }
    }
}

/// A complex together with reduced strands for each of its summands.
pub(crate) struct Realized {
    pub cx: FreeGradedComplex,
    pub strands: BTreeMap<i64, Vec<Arc<ReducedStrand>>>,
    pub phi: BTreeMap<i64, CellMap>,
}

impl Realized {
    pub fn new(ctx: &CechContext, cx: &FreeGradedComplex, e: &[u32]) -> Result<Self, WeymanError> {
        let solver = RaySolver::new(&ctx.toric)?;
        let mut strands = BTreeMap::new();
        for (&p, classes) in &cx.terms {
            let s: Result<Vec<_>, _> = classes.iter().map(|a| ctx.strand(a, e)).collect();
            strands.insert(p, s?);
        }
        let mut phi = BTreeMap::new();
        for (&p, d) in &cx.differentials {
            let (Some(src), Some(tgt)) = (strands.get(&p), strands.get(&(p + 1))) else { continue };
            phi.insert(p, CellMap::build(&solver, d, src, tgt, cx.ncox(), &cx.param_ring)?);
        }
        Ok(Realized { cx: cx.clone(), strands, phi })
    }

    pub fn strands(&self, p: i64) -> &[Arc<ReducedStrand>] {
        self.strands.get(&p).map_or(&[], |v| v.as_slice())
    }

    /// `(-1)^q φ` from term `p` to term `p + 1`.
    pub fn delta(&self, p: i64, elem: &Elem) -> Result<Elem, WeymanError> {
        match self.phi.get(&p) {
            Some(map) => map.apply(elem, self.strands(p), self.strands(p + 1), true),
            None => Ok(Elem::new()),
        }
    }

    pub fn h(&self, p: i64, elem: &Elem) -> Elem {
        let st = self.strands(p);
        elem.iter()
            .map(|(&k, c)| (k, st[k].apply_h(c)))
            .filter(|(_, c)| !c.is_empty())
            .collect()
    }

    pub fn rho(&self, p: i64, elem: &Elem) -> BTreeMap<usize, BasisVec<SparsePoly>> {
        let st = self.strands(p);
        elem.iter()
            .map(|(&k, c)| (k, st[k].apply_rho(c)))
            .filter(|(_, b)| !b.is_empty())
            .collect()
    }

    /// `ι` of the `j`-th class of `H^q` in summand `(p, k)`.
    pub fn iota_unit(&self, p: i64, q: usize, k: usize, j: usize) -> Elem {
        let mut b = BasisVec::new();
        b.insert(j as u32, SparsePoly::one(&self.cx.param_ring));
        let mut e = Elem::new();
        let c = self.strands(p)[k].apply_iota(q, &b);
        if !c.is_empty() {
            e.insert(k, c);
        }
        e
    }
}

pub(crate) fn negate(elem: Elem) -> Elem {
    let m1 = -Q::one();
    elem.into_iter()
        .map(|(k, c)| (k, c.into_iter().map(|(key, p)| (key, p.scale(&m1))).collect()))
        .collect()
}
