//! The Weyman complex of a complex of free graded modules: first-page terms,
//! staircase differentials and the induced maps of morphisms.

pub mod json;
pub mod oracle;
mod realize;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use oracle::{total_complex_direct, TotalComplexReport, TOTAL_CELL_LIMIT};

use crate::cech::{CechContext, CechError, PivotPolicy};
use crate::complexes::{ComplexError, ComplexMorphism, FreeGradedComplex};
use crate::exactarith::{modp, ArithError, PolyMatrix, RationalMatrix, Ring, SparsePoly, Q};
use crate::toric::ToricError;
use realize::{negate, CellMap, Elem, RaySolver, Realized};

#[derive(Debug, Error)]
pub enum WeymanError {
    #[error(transparent)]
    Cech(#[from] CechError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("staircase left the truncation window: {0}")]
    Window(String),
    #[error("cohomology model mismatch: {0}")]
    Model(String),
    #[error("resource limit: {0}")]
    Resource(String),
}

#[derive(Clone, Debug, Default)]
pub struct WeymanOptions {
    pub policy: PivotPolicy,
    /// Forces this truncation for every summand instead of the computed `e_min`.
    pub e: Option<Vec<u32>>,
}

/// One summand `H^q(X, O(-α_{p,k})) ⊗ R` of a Weyman term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub p: i64,
    pub q: usize,
    pub k: usize,
    pub dim: usize,
    /// First basis index inside the term.
    pub offset: usize,
}

/// Ranks `E_1^{p,q}` of the first page.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct E1Page {
    pub entries: BTreeMap<(i64, usize), usize>,
}

impl E1Page {
    pub fn get(&self, p: i64, q: usize) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn p_range(&self) -> (i64, i64) {
        let ps = self.entries.keys().map(|k| k.0);
        (ps.clone().min().unwrap_or(0), ps.max().unwrap_or(0))
    }

    pub fn max_q(&self) -> usize {
        self.entries.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Rows from the top `q` down, each listing ranks for increasing `p`.
    pub fn rows(&self, dim: usize) -> Vec<(usize, Vec<usize>)> {
        let (lo, hi) = self.p_range();
        (0..=dim).rev().map(|q| (q, (lo..=hi).map(|p| self.get(p, q)).collect())).collect()
    }

    /// Sum along the diagonal `p + q = i`.
    pub fn diagonal(&self, i: i64) -> usize {
        self.entries.iter().filter(|((p, q), _)| p + *q as i64 == i).map(|(_, &v)| v).sum()
    }
}

impl fmt::Display for E1Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.p_range();
        for (q, row) in self.rows(self.max_q()) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{q:>3} | {}", cells.join(" "))?;
        }
        let ps: Vec<String> = (lo..=hi).map(|p| p.to_string()).collect();
        write!(f, "q/p | {}", ps.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct WeymanComplex {
    /// The parameter ring `R`.
    pub ring: Arc<Ring>,
    /// Per total degree, summands ordered by `q` descending then `k`.
    pub terms: BTreeMap<i64, Vec<Summand>>,
    /// Differential from `W^i` to `W^{i+1}`, rows indexing the target.
    pub differentials: BTreeMap<i64, PolyMatrix>,
    pub page: E1Page,
    pub e_min: BTreeMap<(i64, usize), Vec<u32>>,
    /// The truncation at which the staircase was walked.
    pub common_e: Vec<u32>,
    pub dim: usize,
}

impl WeymanComplex {
    pub fn rank(&self, i: i64) -> usize {
        self.terms.get(&i).map_or(0, |t| t.iter().map(|s| s.dim).sum())
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn differential(&self, i: i64) -> PolyMatrix {
        self.differentials
            .get(&i)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(&self.ring, self.rank(i + 1), self.rank(i)))
    }

    pub fn summand(&self, p: i64, q: usize, k: usize) -> Option<&Summand> {
        self.terms.get(&(p + q as i64))?.iter().find(|s| s.p == p && s.q == q && s.k == k)
    }

    /// The block of `φ^i` from the summand at `(p, q)` with index `k` to the
    /// one at `(p + r, q - r + 1)` with index `l`.
    pub fn block(&self, p: i64, q: usize, k: usize, r: usize, l: usize) -> Option<PolyMatrix> {
        let src = self.summand(p, q, k)?;
        let tgt = self.summand(p + r as i64, (q + 1).checked_sub(r)?, l)?;
        let rows: Vec<usize> = (tgt.offset..tgt.offset + tgt.dim).collect();
        let cols: Vec<usize> = (src.offset..src.offset + src.dim).collect();
        Some(self.differential(p + q as i64).select(&rows, &cols))
    }

    /// All nonzero blocks with `r` steps.
    pub fn blocks_with_steps(&self, r: usize) -> Vec<(Summand, Summand)> {
        let mut out = Vec::new();
        for (i, ts) in &self.terms {
            let Some(next) = self.terms.get(&(i + 1)) else { continue };
            for s in ts {
                for t in next {
                    if t.p == s.p + r as i64 && t.q + r == s.q + 1 {
                        if let Some(b) = self.block(s.p, s.q, s.k, r, t.k) {
                            if !b.is_zero() {
                                out.push((s.clone(), t.clone()));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks `d ∘ d = 0` exactly over `R`.
    pub fn is_complex(&self) -> bool {
        self.differentials.iter().all(|(i, d)| match self.differentials.get(&(i + 1)) {
            Some(next) => next.mul(d).map(|m| m.is_zero()).unwrap_or(false),
            None => true,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms.keys().map(|&i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(i) as i64).sum()
    }

    /// Homology dimensions after substituting `point` for the parameters,
    /// computed over `F_p` with `p = 2^61 - 1`.
    pub fn homology_at(&self, point: &[Q]) -> Result<BTreeMap<i64, usize>, WeymanError> {
        let mut ranks = BTreeMap::new();
        for (&i, d) in &self.differentials {
            ranks.insert(i, rank_mod_p(&d.eval(point))?);
        }
        Ok(self
            .terms
            .keys()
            .map(|&i| {
                let out = ranks.get(&i).copied().unwrap_or(0);
                let inc = ranks.get(&(i - 1)).copied().unwrap_or(0);
                (i, self.rank(i) - out - inc)
            })
            .collect())
    }
}

pub(crate) fn rank_mod_p(m: &RationalMatrix) -> Result<usize, WeymanError> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row: Option<Vec<u64>> = m.row(i).iter().map(modp::from_rational).collect();
        rows.push(row.ok_or_else(|| WeymanError::Invalid("specialization is singular modulo p".into()))?);
    }
    Ok(modp::rank(rows))
}

/// Computes `e_min` (or takes the override) for every summand and the
/// cohomology dimensions at that truncation.
fn summand_models(
    ctx: &CechContext,
    cx: &FreeGradedComplex,
    opts: &WeymanOptions,
) -> Result<BTreeMap<(i64, usize), (Vec<u32>, Vec<usize>)>, WeymanError> {
    let mut out = BTreeMap::new();
    for (&p, classes) in &cx.terms {
        for (k, a) in classes.iter().enumerate() {
            let e = match &opts.e {
                Some(e) => e.clone(),
                None => ctx.e_min(a)?,
            };
            let dims = ctx.dims(a, &e)?;
            out.insert((p, k), (e, dims));
        }
    }
    Ok(out)
}

fn componentwise_max<'a>(es: impl Iterator<Item = &'a Vec<u32>>, n: usize) -> Vec<u32> {
    es.fold(vec![0; n], |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect())
}

fn context_for(ctx: &CechContext, opts: &WeymanOptions) -> CechContext {
    ctx.clone().with_policy(opts.policy)
}

/// First-page terms of the Weyman complex.
pub fn weyman_terms(
    ctx: &CechContext,
    cx: &FreeGradedComplex,
    opts: &WeymanOptions,
) -> Result<(BTreeMap<i64, Vec<Summand>>, E1Page), WeymanError> {
    let ctx = context_for(ctx, opts);
    let models = summand_models(&ctx, cx, opts)?;
    Ok(assemble_terms(&models))
}

fn assemble_terms(models: &BTreeMap<(i64, usize), (Vec<u32>, Vec<usize>)>) -> (BTreeMap<i64, Vec<Summand>>, E1Page) {
    let mut page = E1Page::default();
    let mut terms: BTreeMap<i64, Vec<Summand>> = BTreeMap::new();
    for (&(p, k), (_, dims)) in models {
        for (q, &d) in dims.iter().enumerate() {
            if d > 0 {
                *page.entries.entry((p, q)).or_insert(0) += d;
                terms.entry(p + q as i64).or_default().push(Summand { p, q, k, dim: d, offset: 0 });
            }
        }
    }
    for ts in terms.values_mut() {
        ts.sort_by(|a, b| b.q.cmp(&a.q).then(a.k.cmp(&b.k)));
        let mut off = 0;
        for s in ts.iter_mut() {
            s.offset = off;
            off += s.dim;
        }
    }
    (terms, page)
}

/// Columns of one generator: `(target summand (p, q, l), basis index, entry)`.
type Column = Vec<((i64, usize, usize), u32, SparsePoly)>;

fn staircase_column(re: &Realized, s: &Summand, j: usize) -> Result<Column, WeymanError> {
    let mut col = Column::new();
    let mut cur: Elem = re.iota_unit(s.p, s.q, s.k, j);
    let mut p = s.p;
    let mut r = 1usize;
    while !cur.is_empty() {
        let v = re.delta(p, &cur)?;
        if v.is_empty() {
            break;
        }
        if r > s.q + 1 {
            return Err(WeymanError::Model(format!("staircase from ({}, {}) did not terminate", s.p, s.q)));
        }
        for (l, bv) in re.rho(p + 1, &v) {
            for (idx, c) in bv {
                col.push(((p + 1, s.q + 1 - r, l), idx, c));
            }
        }
        cur = negate(re.h(p + 1, &v));
        p += 1;
        r += 1;
    }
    Ok(col)
}

fn run_jobs<T: Send, F>(jobs: Vec<(Summand, usize)>, f: F) -> Result<Vec<T>, WeymanError>
where
    F: Fn(&Summand, usize) -> Result<T, WeymanError> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        jobs.par_iter().map(|(s, j)| f(s, *j)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter().map(|(s, j)| f(s, *j)).collect()
    }
}

/// Transfer matrix from the `e_min` model of a summand to the model at `e`.
fn transfer_matrix(
    ctx: &CechContext,
    alpha: &crate::toric::DivisorClass,
    e_small: &[u32],
    e_large: &[u32],
    q: usize,
) -> Result<RationalMatrix, WeymanError> {
    let small = ctx.strand(alpha, e_small)?;
    let large = ctx.strand(alpha, e_large)?;
    let cols = ctx.transfer(&small, &large, q)?;
    let mut t = RationalMatrix::zeros(large.basis[q].len(), small.basis[q].len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c {
            t[(*i as usize, j)] = v.clone();
        }
    }
    if t.rows() != t.cols() || t.rank() != t.cols() {
        return Err(WeymanError::Model(format!("transfer for degree {q} is not invertible")));
    }
    Ok(t)
}

/// Block-diagonal transfers for each Weyman term.
fn term_transfers(
    ctx: &CechContext,
    cx: &FreeGradedComplex,
    terms: &BTreeMap<i64, Vec<Summand>>,
    e_min: &BTreeMap<(i64, usize), Vec<u32>>,
    common: &[u32],
) -> Result<BTreeMap<i64, (RationalMatrix, RationalMatrix)>, WeymanError> {
    let mut out = BTreeMap::new();
    for (&i, ts) in terms {
        let n: usize = ts.iter().map(|s| s.dim).sum();
        let mut t = RationalMatrix::identity(n);
        let mut tinv = RationalMatrix::identity(n);
        for s in ts {
            let e0 = &e_min[&(s.p, s.k)];
            if e0.as_slice() == common {
                continue;
            }
            let b = transfer_matrix(ctx, &cx.terms[&s.p][s.k], e0, common, s.q)?;
            let binv = b.inverse()?;
            for a in 0..s.dim {
                for c in 0..s.dim {
                    t[(s.offset + a, s.offset + c)] = b[(a, c)].clone();
                    tinv[(s.offset + a, s.offset + c)] = binv[(a, c)].clone();
                }
            }
        }
        out.insert(i, (t, tinv));
    }
    Ok(out)
}

fn is_identity(m: &RationalMatrix) -> bool {
    *m == RationalMatrix::identity(m.rows())
}

/// Conjugates `d: W^i → W^j` from common-`e` coordinates into the per-summand
/// `e_min` models.
fn to_models(
    d: PolyMatrix,
    src: &(RationalMatrix, RationalMatrix),
    tgt: &(RationalMatrix, RationalMatrix),
) -> Result<PolyMatrix, WeymanError> {
    let ring = d.ring().clone();
    let mut out = d;
    if !is_identity(&src.0) {
        out = out.mul(&PolyMatrix::from_rational(&ring, &src.0))?;
    }
    if !is_identity(&tgt.1) {
        out = PolyMatrix::from_rational(&ring, &tgt.1).mul(&out)?;
    }
    Ok(out)
}

struct Prepared {
    models: BTreeMap<(i64, usize), (Vec<u32>, Vec<usize>)>,
    terms: BTreeMap<i64, Vec<Summand>>,
    page: E1Page,
}

fn prepare(ctx: &CechContext, cx: &FreeGradedComplex, opts: &WeymanOptions) -> Result<Prepared, WeymanError> {
    if !cx.validate().is_clean() {
        return Err(WeymanError::Invalid("input complex fails validation".into()));
    }
    let models = summand_models(ctx, cx, opts)?;
    let (terms, page) = assemble_terms(&models);
    Ok(Prepared { models, terms, page })
}

/// The Weyman complex with staircase differentials, walked at truncation
/// `common` and expressed in the per-summand `e_min` models.
fn weyman_at(
    ctx: &CechContext,
    cx: &FreeGradedComplex,
    prep: &Prepared,
    common: &[u32],
) -> Result<WeymanComplex, WeymanError> {
    let re = Realized::new(ctx, cx, common)?;
    for (&(p, k), (_, dims)) in &prep.models {
        if re.strands(p)[k].dims() != *dims {
            return Err(WeymanError::Model(format!(
                "summand ({p}, {k}) has different cohomology at the common truncation"
            )));
        }
    }
    let jobs: Vec<(Summand, usize)> =
        prep.terms.values().flatten().flat_map(|s| (0..s.dim).map(move |j| (s.clone(), j))).collect();
    let columns = run_jobs(jobs.clone(), |s, j| staircase_column(&re, s, j))?;

    let e_min: BTreeMap<(i64, usize), Vec<u32>> = prep.models.iter().map(|(k, (e, _))| (*k, e.clone())).collect();
    let mut w = WeymanComplex {
        ring: cx.param_ring.clone(),
        terms: prep.terms.clone(),
        differentials: BTreeMap::new(),
        page: prep.page.clone(),
        e_min: e_min.clone(),
        common_e: common.to_vec(),
        dim: ctx.toric.dim,
    };
    let mut raw: BTreeMap<i64, PolyMatrix> = BTreeMap::new();
    for ((s, j), col) in jobs.iter().zip(columns) {
        let i = s.p + s.q as i64;
        for ((tp, tq, tl), idx, c) in col {
            let t = w.summand(tp, tq, tl).ok_or_else(|| {
                WeymanError::Model(format!("class landed in ({tp}, {tq}, {tl}) which has no cohomology"))
            })?;
            let row = t.offset + idx as usize;
            let (rows, cols) = (w.rank(i + 1), w.rank(i));
            raw.entry(i).or_insert_with(|| PolyMatrix::zeros(&w.ring, rows, cols)).add_to(row, s.offset + j, &c);
        }
    }
    let transfers = term_transfers(ctx, cx, &w.terms, &e_min, common)?;
    let empty = |n: usize| (RationalMatrix::identity(n), RationalMatrix::identity(n));
    for (i, d) in raw {
        let src = transfers.get(&i).cloned().unwrap_or_else(|| empty(w.rank(i)));
        let tgt = transfers.get(&(i + 1)).cloned().unwrap_or_else(|| empty(w.rank(i + 1)));
        let d = to_models(d, &src, &tgt)?;
        if !d.is_zero() {
            w.differentials.insert(i, d);
        }
    }
    Ok(w)
}

/// The Weyman complex of `cx`.
pub fn weyman_differential(
    ctx: &CechContext,
    cx: &FreeGradedComplex,
    opts: &WeymanOptions,
) -> Result<WeymanComplex, WeymanError> {
    let ctx = context_for(ctx, opts);
    let prep = prepare(&ctx, cx, opts)?;
    let common = componentwise_max(prep.models.values().map(|m| &m.0), ctx.ncones());
    weyman_at(&ctx, cx, &prep, &common)
}

/// The map of Weyman complexes induced by a morphism of complexes.
#[derive(Clone, Debug)]
pub struct WeymanMorphism {
    pub source: WeymanComplex,
    pub target: WeymanComplex,
    pub maps: BTreeMap<i64, PolyMatrix>,
}

impl WeymanMorphism {
    pub fn map(&self, i: i64) -> PolyMatrix {
        self.maps.get(&i).cloned().unwrap_or_else(|| {
            PolyMatrix::zeros(&self.source.ring, self.target.rank(i), self.source.rank(i))
        })
    }

    /// Checks that every square commutes exactly over `R`.
    pub fn commutes(&self) -> bool {
        let degrees: std::collections::BTreeSet<i64> =
            self.source.terms.keys().chain(self.target.terms.keys()).copied().collect();
        degrees.iter().all(|&i| {
            let a = self.target.differential(i).mul(&self.map(i));
            let b = self.map(i + 1).mul(&self.source.differential(i));
            matches!((a, b), (Ok(a), Ok(b)) if a == b)
        })
    }
}

pub fn weyman_on_morphism(
    ctx: &CechContext,
    theta: &ComplexMorphism,
    opts: &WeymanOptions,
) -> Result<WeymanMorphism, WeymanError> {
    let ctx = context_for(ctx, opts);
    let (m, n) = (&theta.source, &theta.target);
    if !theta.validate().is_clean() {
        return Err(WeymanError::Invalid("morphism fails validation".into()));
    }
    if m.param_ring.vars() != n.param_ring.vars() {
        return Err(WeymanError::Invalid("source and target have different parameters".into()));
    }
    let pm = prepare(&ctx, m, opts)?;
    let pn = prepare(&ctx, n, opts)?;
    let common = componentwise_max(pm.models.values().chain(pn.models.values()).map(|x| &x.0), ctx.ncones());
    let wm = weyman_at(&ctx, m, &pm, &common)?;
    let wn = weyman_at(&ctx, n, &pn, &common)?;
    let rm = Realized::new(&ctx, m, &common)?;
    let rn = Realized::new(&ctx, n, &common)?;
    let solver = RaySolver::new(&ctx.toric)?;
    let mut theta_maps = BTreeMap::new();
    for (&p, mat) in &theta.maps {
        let (src, tgt) = (rm.strands(p), rn.strands(p));
        if src.is_empty() || tgt.is_empty() {
            continue;
        }
        theta_maps.insert(p, CellMap::build(&solver, mat, src, tgt, m.ncox(), &m.param_ring)?);
    }

    let jobs: Vec<(Summand, usize)> =
        wm.terms.values().flatten().flat_map(|s| (0..s.dim).map(move |j| (s.clone(), j))).collect();
    let columns = run_jobs(jobs.clone(), |s, j| {
        // perturbed inclusion into the source total complex
        let mut pieces: Vec<(i64, Elem)> = Vec::new();
        let mut x = rm.iota_unit(s.p, s.q, s.k, j);
        let mut p = s.p;
        while !x.is_empty() {
            pieces.push((p, x.clone()));
            let y = rm.delta(p, &x)?;
            x = negate(rm.h(p + 1, &y));
            p += 1;
        }
        let mut col = Column::new();
        for (p, x) in pieces {
            let Some(map) = theta_maps.get(&p) else { continue };
            let mut y = map.apply(&x, rm.strands(p), rn.strands(p), false)?;
            let mut pp = p;
            let mut q = s.q as i64 - (p - s.p);
            // perturbed projection from the target total complex
            while !y.is_empty() && q >= 0 {
                for (l, bv) in rn.rho(pp, &y) {
                    for (idx, c) in bv {
                        col.push(((pp, q as usize, l), idx, c));
                    }
                }
                let hy = rn.h(pp, &y);
                if hy.is_empty() {
                    break;
                }
                y = negate(rn.delta(pp, &hy)?);
                pp += 1;
                q -= 1;
            }
        }
        Ok(col)
    })?;

    let mut raw: BTreeMap<i64, PolyMatrix> = BTreeMap::new();
    for ((s, j), col) in jobs.iter().zip(columns) {
        let i = s.p + s.q as i64;
        for ((tp, tq, tl), idx, c) in col {
            let t = wn
                .summand(tp, tq, tl)
                .ok_or_else(|| WeymanError::Model(format!("class landed in ({tp}, {tq}, {tl}) of the target")))?;
            let (rows, cols) = (wn.rank(i), wm.rank(i));
            raw.entry(i).or_insert_with(|| PolyMatrix::zeros(&wm.ring, rows, cols)).add_to(t.offset + idx as usize, s.offset + j, &c);
        }
    }
    let tm = term_transfers(&ctx, m, &wm.terms, &wm.e_min, &common)?;
    let tn = term_transfers(&ctx, n, &wn.terms, &wn.e_min, &common)?;
    let mut maps = BTreeMap::new();
    for (i, d) in raw {
        let d = to_models(d, &tm[&i], &tn[&i])?;
        if !d.is_zero() {
            maps.insert(i, d);
        }
    }
    Ok(WeymanMorphism { source: wm, target: wn, maps })
}
