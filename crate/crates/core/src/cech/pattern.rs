//! Gauss reduction of the small complexes a truncated Čech strand splits into.
//!
//! For a fixed lattice point `m` the cells of the strand are the subsets `I`
//! of maximal cones (bitmasks) whose localization admits the monomial of `m`.
//! The allowed family only depends on the per-ray deficits of that monomial,
//! so every reduction is computed once per deficit pattern and reused.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::sparse::SparseQ;
use crate::exactarith::rational::Q;
use crate::exactarith::RationalMatrix;

/// How pivots are chosen during the reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum PivotPolicy {
    /// Prefer entries of absolute value one, then minimal fill, then (row, col).
    #[default]
    UnitMinFill,
    /// The first nonzero entry in (column, row) order.
    FirstNonzero,
}

/// Sign and target of the Čech coboundary of a cell.
pub fn coboundary(mask: u32, ncones: usize) -> impl Iterator<Item = (u32, bool)> {
    (0..ncones).filter(move |j| mask >> j & 1 == 0).map(move |j| {
        let pos = (mask & ((1u32 << j) - 1)).count_ones();
        (mask | 1 << j, pos % 2 == 1)
    })
}

fn cell_key(mask: u32) -> (u32, u32) {
    (mask.count_ones(), mask)
}

/// The Gauss reduction of one pattern complex with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternReduction {
    pub ncones: usize,
    /// Allowed cells ordered by (size, mask); cell `I` sits in Čech degree `|I| - 1`.
    pub cells: Vec<u32>,
    /// Indices of the critical cells, in cell order.
    pub critical: Vec<u32>,
    /// Homotopy on cell coordinates, lowering the degree by one.
    pub h: SparseQ,
    /// Cohomology basis: columns are cocycles on cells.
    pub iota: SparseQ,
    /// Projection from cells to critical coordinates.
    pub rho: SparseQ,
}

impl PatternReduction {
    pub fn cell_index(&self, mask: u32) -> Option<usize> {
        self.cells.binary_search_by_key(&cell_key(mask), |&c| cell_key(c)).ok()
    }

    pub fn degree_of_cell(&self, idx: usize) -> usize {
        self.cells[idx].count_ones() as usize - 1
    }

    /// Number of critical cells in each Čech degree `0..ncones`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.ncones];
        for &c in &self.critical {
            d[self.degree_of_cell(c as usize)] += 1;
        }
        d
    }

    /// The coboundary as a sparse matrix on cell coordinates.
    pub fn differential(&self) -> SparseQ {
        let mut d = SparseQ::zeros(self.cells.len(), 0);
        for &c in &self.cells {
            let col = coboundary(c, self.ncones)
                .map(|(t, neg)| {
                    let i = self.cell_index(t).expect("allowed family is upward closed");
                    (i as u32, if neg { -Q::one() } else { Q::one() })
                })
                .collect();
            d.push_col(col);
        }
        d
    }
}

/// Per ray with a positive deficit, the cones avoiding it whose exponent
/// covers the deficit. Sorted, deduplicated and with supersets of other
/// entries removed, so equal covers give equal cell sets. `None` when some
/// deficit cannot be covered at all.
pub fn cover_masks(ncones: usize, ray_masks: &[u32], e: &[u32], deficits: &[u32]) -> Option<Vec<u32>> {
    let mut needs: Vec<u32> = ray_masks
        .iter()
        .zip(deficits)
        .filter(|(_, &d)| d > 0)
        .map(|(&rm, &d)| (0..ncones).filter(|&k| rm >> k & 1 == 1 && e[k] >= d).fold(0u32, |m, k| m | (1 << k)))
        .collect();
    if needs.contains(&0) {
        return None;
    }
    needs.sort_unstable();
    needs.dedup();
    let minimal: Vec<u32> =
        needs.iter().copied().filter(|&n| !needs.iter().any(|&o| o != n && o & n == o)).collect();
    Some(minimal)
}

/// Cells meeting every mask of a cover, ordered by [`cell_key`].
pub fn cells_for_cover(ncones: usize, cover: &[u32]) -> Vec<u32> {
    assert!(ncones <= 20, "too many maximal cones for cell enumeration");
    let mut cells: Vec<u32> = (1u32..(1 << ncones)).filter(|&mask| cover.iter().all(|&n| mask & n != 0)).collect();
    cells.sort_by_key(|&c| cell_key(c));
    cells
}

/// Which cells are allowed: `I` is allowed iff for every ray `rho` with a
/// positive deficit, some cone `k` in `I` avoiding `rho` has `e_k >= deficit_rho`.
/// This is the truncation by `lcm` of the powers `f_k^{e_k}`.
pub fn allowed_cells(ncones: usize, ray_masks: &[u32], e: &[u32], deficits: &[u32]) -> Vec<u32> {
    match cover_masks(ncones, ray_masks, e, deficits) {
        Some(cover) => cells_for_cover(ncones, &cover),
        None => Vec::new(),
    }
}

fn choose_pivot(
    cols: &BTreeMap<u32, BTreeMap<u32, Q>>,
    row_index: &HashMap<u32, BTreeSet<u32>>,
    policy: PivotPolicy,
) -> Option<(u32, u32)> {
    match policy {
        PivotPolicy::FirstNonzero => cols.iter().find_map(|(&c, col)| col.keys().next().map(|&r| (r, c))),
        PivotPolicy::UnitMinFill => {
            let mut best: Option<((bool, usize, u32, u32), (u32, u32))> = None;
            for (&c, col) in cols {
                let cc = col.len();
                for (&r, v) in col {
                    let rc = row_index[&r].len();
                    let score = (!v.abs().is_one(), (rc - 1) * (cc - 1), r, c);
                    if best.as_ref().map_or(true, |(b, _)| score < *b) {
                        best = Some((score, (r, c)));
                    }
                }
            }
            best.map(|(_, p)| p)
        }
    }
}

/// Reduces the pattern complex on the given allowed cells.
pub fn reduce_pattern(ncones: usize, cells: Vec<u32>, policy: PivotPolicy) -> PatternReduction {
    let n = cells.len();
    let mut red = PatternReduction {
        ncones,
        cells,
        critical: Vec::new(),
        h: SparseQ::zeros(n, n),
        iota: SparseQ::zeros(n, 0),
        rho: SparseQ::zeros(0, n),
    };
    let d = red.differential();
    let deg: Vec<usize> = (0..n).map(|i| red.degree_of_cell(i)).collect();
    let mut is_pivot_row = vec![false; n];
    let mut is_pivot_col = vec![false; n];

    for q in 0..ncones {
        // columns: degree-q cells that are not pivot rows of the previous step
        let mut cols: BTreeMap<u32, BTreeMap<u32, Q>> = BTreeMap::new();
        let mut row_index: HashMap<u32, BTreeSet<u32>> = HashMap::new();
        for c in (0..n).filter(|&c| deg[c] == q && !is_pivot_row[c]) {
            let col: BTreeMap<u32, Q> = d.col(c).iter().cloned().collect();
            for &(r, _) in d.col(c) {
                row_index.entry(r).or_default().insert(c as u32);
            }
            if !col.is_empty() {
                cols.insert(c as u32, col);
            }
        }
        let mut pivots: Vec<(u32, u32)> = Vec::new();
        while let Some((r, c)) = choose_pivot(&cols, &row_index, policy) {
            let pcol = cols.remove(&c).unwrap();
            let pv = pcol[&r].clone();
            let others: Vec<u32> = row_index[&r].iter().copied().filter(|&x| x != c).collect();
            for oc in others {
                let col = cols.get_mut(&oc).unwrap();
                let f = &col[&r] / &pv;
                for (pr, pval) in &pcol {
                    let e = col.entry(*pr).or_insert_with(Q::zero);
                    *e -= &f * pval;
                    if e.is_zero() {
                        col.remove(pr);
                        row_index.get_mut(pr).unwrap().remove(&oc);
                    } else {
                        row_index.entry(*pr).or_default().insert(oc);
                    }
                }
                if col.is_empty() {
                    cols.remove(&oc);
                }
            }
            for pr in pcol.keys() {
                if let Some(s) = row_index.get_mut(pr) {
                    s.remove(&c);
                }
            }
            row_index.remove(&r);
            pivots.push((r, c));
        }
        if pivots.is_empty() {
            continue;
        }
        let rows_b: Vec<usize> = pivots.iter().map(|p| p.0 as usize).collect();
        let cols_a: Vec<usize> = pivots.iter().map(|p| p.1 as usize).collect();
        let mut m = RationalMatrix::zeros(rows_b.len(), cols_a.len());
        for (j, &c) in cols_a.iter().enumerate() {
            for (r, v) in d.col(c) {
                if let Some(i) = rows_b.iter().position(|&b| b == *r as usize) {
                    m[(i, j)] = v.clone();
                }
            }
        }
        let minv = m.inverse().expect("pivot block is invertible");
        for (jb, &b) in rows_b.iter().enumerate() {
            let col: Vec<(u32, Q)> = cols_a
                .iter()
                .enumerate()
                .filter(|(ia, _)| !minv[(*ia, jb)].is_zero())
                .map(|(ia, &a)| (a as u32, minv[(ia, jb)].clone()))
                .collect();
            red.h.set_col(b, col);
            is_pivot_row[b] = true;
        }
        for &a in &cols_a {
            is_pivot_col[a] = true;
        }
    }

    red.critical = (0..n as u32).filter(|&c| !is_pivot_row[c as usize] && !is_pivot_col[c as usize]).collect();
    let crit_pos: HashMap<u32, u32> = red.critical.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();

    // iota(k) = k - h(d k)
    for &k in &red.critical {
        let mut v: BTreeMap<u32, Q> = BTreeMap::new();
        v.insert(k, Q::one());
        for (t, dv) in d.col(k as usize) {
            for (a, hv) in red.h.col(*t as usize) {
                *v.entry(*a).or_insert_with(Q::zero) -= dv * hv;
            }
        }
        red.iota.push_col(v.into_iter().collect());
    }
    // rho(c) = c|_K - (d h c)|_K
    red.rho = SparseQ::zeros(red.critical.len(), 0);
    for c in 0..n {
        let mut v: BTreeMap<u32, Q> = BTreeMap::new();
        if let Some(&i) = crit_pos.get(&(c as u32)) {
            v.insert(i, Q::one());
        }
        for (a, hv) in red.h.col(c) {
            for (t, dv) in d.col(*a as usize) {
                if let Some(&i) = crit_pos.get(t) {
                    *v.entry(i).or_insert_with(Q::zero) -= hv * dv;
                }
            }
        }
        red.rho.push_col(v.into_iter().collect());
    }
    red
}

/// Checks `rho iota = 1`, `d iota = 0`, `rho d = 0` and `dh + hd = 1 - iota rho`
/// on the pattern complex. Returns a description of the first failure.
pub fn check_reduction(red: &PatternReduction) -> Result<(), String> {
    let n = red.cells.len();
    let d = red.differential();
    let kdim = red.critical.len();
    let dense_col = |m: &SparseQ, j: usize, rows: usize| {
        let mut v = vec![Q::zero(); rows];
        for (i, x) in m.col(j) {
            v[*i as usize] = x.clone();
        }
        v
    };
    for k in 0..kdim {
        let ik = dense_col(&red.iota, k, n);
        if d.apply_dense(&ik).iter().any(|x| !x.is_zero()) {
            return Err(format!("iota({k}) is not a cocycle"));
        }
        let back = red.rho.apply_dense(&ik);
        for (i, x) in back.iter().enumerate() {
            if *x != if i == k { Q::one() } else { Q::zero() } {
                return Err(format!("rho iota differs from the identity at ({i},{k})"));
            }
        }
    }
    for c in 0..n {
        let e = dense_col(&SparseQ { rows: n, cols: vec![vec![(c as u32, Q::one())]] }, 0, n);
        let rd = red.rho.apply_dense(&d.apply_dense(&e));
        if rd.iter().any(|x| !x.is_zero()) {
            return Err(format!("rho d is nonzero on cell {c}"));
        }
        let dh = d.apply_dense(&red.h.apply_dense(&e));
        let hd = red.h.apply_dense(&d.apply_dense(&e));
        let ir = red.iota.apply_dense(&red.rho.apply_dense(&e));
        for i in 0..n {
            let lhs = &dh[i] + &hd[i];
            let rhs = &e[i] - &ir[i];
            if lhs != rhs {
                return Err(format!("homotopy identity fails at ({i},{c})"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_simplex_has_one_class() {
        for s in 1..=5 {
            let cells = allowed_cells(s, &[], &vec![0; s], &[]);
            let red = reduce_pattern(s, cells, PivotPolicy::UnitMinFill);
            let mut want = vec![0; s];
            want[0] = 1;
            assert_eq!(red.cohomology_dims(), want);
            check_reduction(&red).unwrap();
        }
    }

    #[test]
    fn only_the_top_cell() {
        // three cones, ray r avoided only by cone r as on P^2
        let s = 3;
        let cells = allowed_cells(s, &[0b001, 0b010, 0b100], &[1, 1, 1], &[1, 1, 1]);
        assert_eq!(cells, vec![0b111]);
        let red = reduce_pattern(s, cells, PivotPolicy::FirstNonzero);
        assert_eq!(red.cohomology_dims(), vec![0, 0, 1]);
        check_reduction(&red).unwrap();
        assert!(allowed_cells(s, &[0b001, 0b010, 0b100], &[1, 1, 1], &[2, 0, 0]).is_empty());
    }

    #[test]
    fn policies_agree_on_dimensions() {
        let masks = [0b0011, 0b0110, 0b1100, 0b1001];
        let e = [1, 2, 1, 1];
        for d0 in 0..=3 {
            for d1 in 0..=3 {
                let defs = [d0, d1, 0, 1];
                let cells = allowed_cells(4, &masks, &e, &defs);
                if cells.is_empty() {
                    continue;
                }
                let a = reduce_pattern(4, cells.clone(), PivotPolicy::UnitMinFill);
                let b = reduce_pattern(4, cells, PivotPolicy::FirstNonzero);
                assert_eq!(a.cohomology_dims(), b.cohomology_dims());
                check_reduction(&a).unwrap();
                check_reduction(&b).unwrap();
            }
        }
    }
}
