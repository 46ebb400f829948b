//! Column-sparse rational matrices used by the strand reductions.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactarith::rational::{format_rational, parse_rational, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseQ {
    pub rows: usize,
    /// `cols[j]` lists `(row, value)` with nonzero values, sorted by row.
    pub cols: Vec<Vec<(u32, Q)>>,
}

impl SparseQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseQ { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[(u32, Q)] {
        &self.cols[j]
    }

    pub fn push_col(&mut self, mut v: Vec<(u32, Q)>) {
        v.retain(|(_, x)| !x.is_zero());
        v.sort_by_key(|(i, _)| *i);
        self.cols.push(v);
    }

    pub fn set_col(&mut self, j: usize, mut v: Vec<(u32, Q)>) {
        v.retain(|(_, x)| !x.is_zero());
        v.sort_by_key(|(i, _)| *i);
        self.cols[j] = v;
    }

    /// `self * x` for a dense vector.
    pub fn apply_dense(&self, x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in col {
                out[*i as usize] += v * &x[j];
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct SparseJson {
    rows: usize,
    cols: Vec<Vec<(u32, String)>>,
}

impl Serialize for SparseQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SparseJson {
            rows: self.rows,
            cols: self.cols.iter().map(|c| c.iter().map(|(i, v)| (*i, format_rational(v))).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SparseJson::deserialize(d)?;
        let mut cols = Vec::with_capacity(j.cols.len());
        for c in j.cols {
            let mut col = Vec::with_capacity(c.len());
            for (i, v) in c {
                if i as usize >= j.rows {
                    return Err(serde::de::Error::custom("sparse entry out of range"));
                }
                col.push((i, parse_rational(&v).ok_or_else(|| serde::de::Error::custom("bad rational"))?));
            }
            cols.push(col);
        }
        Ok(SparseQ { rows: j.rows, cols })
    }
}
