//! Sparse matrices with polynomial entries.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::matrix::RationalMatrix;
use super::poly::{same_ring, Ring, SparsePoly};
use super::rational::Q;
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), SparsePoly>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, SparsePoly::one(ring));
        }
        m
    }

    pub fn from_dense(ring: &Arc<Ring>, rows: Vec<Vec<SparsePoly>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(ring, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(ArithError::Dimension("ragged rows".into()));
            }
            for (j, p) in row.into_iter().enumerate() {
                if !same_ring(p.ring(), ring) {
                    return Err(ArithError::RingMismatch);
                }
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    /// Constant matrix over `ring`.
    pub fn from_rational(ring: &Arc<Ring>, m: &RationalMatrix) -> Self {
        let mut out = Self::zeros(ring, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, SparsePoly::constant(ring, m[(i, j)].clone()));
            }
        }
        out
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&SparsePoly> {
        self.entries.get(&(i, j))
    }

    pub fn get_or_zero(&self, i: usize, j: usize) -> SparsePoly {
        self.get(i, j).cloned().unwrap_or_else(|| SparsePoly::zero(&self.ring))
    }

    /// Stores `p` at `(i, j)`; zero removes the entry.
    pub fn set(&mut self, i: usize, j: usize, p: SparsePoly) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        if p.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), p);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &SparsePoly) {
        if p.is_zero() {
            return;
        }
        let cur = self.get_or_zero(i, j);
        self.set(i, j, &cur + p);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &SparsePoly)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::Dimension(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(ArithError::RingMismatch);
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &SparsePoly)>> = BTreeMap::new();
        for (&(k, j), p) in &other.entries {
            by_row.entry(k).or_default().push((j, p));
        }
        let mut acc: BTreeMap<(usize, usize), SparsePoly> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let prod = a * b;
                    acc.entry((i, j))
                        .and_modify(|x| x.add_assign_ref(&prod))
                        .or_insert(prod);
                }
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: other.cols, entries: acc })
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(i, j), p)| ((j, i), p.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, self.rows, self.cols);
        for (&(i, j), p) in &self.entries {
            out.set(i, j, p.scale(c));
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                if let Some(p) = self.get(i, j) {
                    out.set(a, b, p.clone());
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<SparsePoly>> {
        let mut d = vec![vec![SparsePoly::zero(&self.ring); self.cols]; self.rows];
        for (&(i, j), p) in &self.entries {
            d[i][j] = p.clone();
        }
        d
    }

    /// Evaluates every entry at a full point of the ring.
    pub fn eval(&self, point: &[Q]) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.rows, self.cols);
        for (&(i, j), p) in &self.entries {
            out[(i, j)] = p.eval(point);
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&SparsePoly) -> SparsePoly, ring: &Arc<Ring>) -> PolyMatrix {
        let mut out = Self::zeros(ring, self.rows, self.cols);
        for (&(i, j), p) in &self.entries {
            out.set(i, j, f(p));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_shapes() {
        let r = Ring::new(["x"]);
        let a = PolyMatrix::identity(&r, 2);
        let b = PolyMatrix::zeros(&r, 3, 2);
        assert!(a.mul(&b).is_err());
        assert_eq!(b.mul(&a).unwrap().rows(), 3);
    }

    #[test]
    fn product_cancels_to_sparse_zero() {
        let r = Ring::new(["x", "y"]);
        let x = SparsePoly::var(&r, 0);
        let y = SparsePoly::var(&r, 1);
        let row = PolyMatrix::from_dense(&r, vec![vec![y.clone(), -&x]]).unwrap();
        let col = PolyMatrix::from_dense(&r, vec![vec![x], vec![y]]).unwrap();
        let p = row.mul(&col).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.nnz(), 0);
    }
}
