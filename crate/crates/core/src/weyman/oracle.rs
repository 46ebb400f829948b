//! Direct route: the whole truncated Čech double complex, specialized at a
//! parameter point and reduced modulo a prime. Used to cross-check the
//! Weyman complex.

use std::collections::{BTreeMap, HashMap};

use super::realize::Realized;
use super::WeymanError;
use crate::cech::{coboundary, CechContext};
use crate::complexes::FreeGradedComplex;
use crate::exactarith::{modp, Q};

/// Refuse total complexes with more cells than this.
pub const TOTAL_CELL_LIMIT: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalComplexReport {
    /// Number of cells per total degree.
    pub sizes: BTreeMap<i64, usize>,
    pub homology: BTreeMap<i64, usize>,
}

/// Homology of the total complex of the truncated Čech double complex of
/// `cx` at truncation `e`, after substituting `point` for the parameters.
pub fn total_complex_direct(
    ctx: &CechContext,
    cx: &FreeGradedComplex,
    e: &[u32],
    point: &[Q],
) -> Result<TotalComplexReport, WeymanError> {
    if point.len() != cx.params.len() {
        return Err(WeymanError::Invalid(format!("expected {} parameter values", cx.params.len())));
    }
    let re = Realized::new(ctx, cx, e)?;

    // index every cell (p, k, point, cell) by total degree
    let mut index: HashMap<(i64, usize, u32, u32), (i64, usize)> = HashMap::new();
    let mut sizes: BTreeMap<i64, usize> = BTreeMap::new();
    for (&p, strands) in &re.strands {
        for (k, s) in strands.iter().enumerate() {
            for pt in 0..s.points.len() as u32 {
                for (c, &mask) in s.pattern_of(pt).cells.iter().enumerate() {
                    let i = p + mask.count_ones() as i64 - 1;
                    let n = sizes.entry(i).or_insert(0);
                    index.insert((p, k, pt, c as u32), (i, *n));
                    *n += 1;
                }
            }
        }
    }
    let total: usize = sizes.values().sum();
    if total > TOTAL_CELL_LIMIT {
        return Err(WeymanError::Resource(format!(
            "total complex has {total} cells (limit {TOTAL_CELL_LIMIT}); use the Weyman complex instead"
        )));
    }

    let values: Vec<(usize, Q)> = point.iter().cloned().enumerate().collect();
    let mut phi_vals: BTreeMap<i64, Vec<Vec<(usize, Vec<i64>, u64)>>> = BTreeMap::new();
    for (&p, map) in &re.phi {
        let mut per = Vec::new();
        for terms in &map.per_source {
            let mut v = Vec::new();
            for (l, s, f) in terms {
                let c = f.specialize(&values).constant_term();
                let c = modp::from_rational(&c)
                    .ok_or_else(|| WeymanError::Invalid("specialization is singular modulo p".into()))?;
                if c != 0 {
                    v.push((*l, s.clone(), c));
                }
            }
            per.push(v);
        }
        phi_vals.insert(p, per);
    }

    // columns of D_i as sparse vectors, grouped by source degree
    let mut cols: BTreeMap<i64, Vec<Vec<(usize, u64)>>> = BTreeMap::new();
    for (&p, strands) in &re.strands {
        for (k, s) in strands.iter().enumerate() {
            for pt in 0..s.points.len() as u32 {
                let pat = s.pattern_of(pt);
                for (c, &mask) in pat.cells.iter().enumerate() {
                    let (i, _) = index[&(p, k, pt, c as u32)];
                    let mut col: BTreeMap<usize, u64> = BTreeMap::new();
                    for (t, neg) in coboundary(mask, pat.ncones) {
                        let tc = pat.cell_index(t).expect("allowed cells are upward closed") as u32;
                        let (_, row) = index[&(p, k, pt, tc)];
                        add(&mut col, row, if neg { modp::P - 1 } else { 1 });
                    }
                    if let Some(per) = phi_vals.get(&p) {
                        let odd = (mask.count_ones() - 1) % 2 == 1;
                        let m = &s.points[pt as usize];
                        for (l, shift, v) in &per[k] {
                            let m2: Vec<i64> = m.iter().zip(shift).map(|(a, b)| a + b).collect();
                            let tgt = &re.strands(p + 1)[*l];
                            let (tp, tc) = tgt
                                .cell(&m2, mask)
                                .ok_or_else(|| WeymanError::Window(format!("cell at {m2:?} outside truncation")))?;
                            let (_, row) = index[&(p + 1, *l, tp, tc)];
                            add(&mut col, row, if odd { modp::sub(0, *v) } else { *v });
                        }
                    }
                    cols.entry(i).or_default().push(col.into_iter().collect());
                }
            }
        }
    }
    let ranks: BTreeMap<i64, usize> = cols.into_iter().map(|(i, c)| (i, modp::sparse_rank(c))).collect();
    let homology = sizes
        .iter()
        .map(|(&i, &n)| {
            let out = ranks.get(&i).copied().unwrap_or(0);
            let inc = ranks.get(&(i - 1)).copied().unwrap_or(0);
            (i, n - out - inc)
        })
        .filter(|(_, h)| *h > 0)
        .collect();
    Ok(TotalComplexReport { sizes, homology })
}

fn add(col: &mut BTreeMap<usize, u64>, row: usize, v: u64) {
    let e = col.entry(row).or_insert(0);
    *e = modp::add(*e, v);
    if *e == 0 {
        col.remove(&row);
    }
}
