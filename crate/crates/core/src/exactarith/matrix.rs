//! Dense matrices over the rationals.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Q};
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

/// Output of [`RationalMatrix::rref_with_certificate`].
#[derive(Clone, Debug)]
pub struct RrefCertificate {
    pub reduced: RationalMatrix,
    pub row_ops: RationalMatrix,
    pub pivot_cols: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ArithError::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
        Self::from_rows(v).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a * b;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix, ArithError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ArithError::Dimension("shape mismatch in add".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix, ArithError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ArithError::Dimension("shape mismatch in sub".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Gauss-Jordan elimination recording the row operations.
    pub fn rref_with_certificate(&self) -> RrefCertificate {
        let mut r = self.clone();
        let mut ops = Self::identity(self.rows);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(p) = (prow..self.rows).find(|&i| !r[(i, col)].is_zero()) else {
                continue;
            };
            r.swap_rows(p, prow);
            ops.swap_rows(p, prow);
            let inv = Q::one() / &r[(prow, col)];
            r.scale_row(prow, &inv);
            ops.scale_row(prow, &inv);
            for i in 0..self.rows {
                if i != prow && !r[(i, col)].is_zero() {
                    let f = r[(i, col)].clone();
                    r.add_row_multiple(i, prow, &-f.clone());
                    ops.add_row_multiple(i, prow, &-f);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        RrefCertificate { reduced: r, row_ops: ops, pivot_cols: pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref_with_certificate().pivot_cols.len()
    }

    pub fn determinant(&self) -> Result<Q, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::Dimension("determinant of a non-square matrix".into()));
        }
        let mut a = self.clone();
        let n = self.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return Ok(Q::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if !a[(i, c)].is_zero() {
                    let f = &a[(i, c)] / &piv;
                    a.add_row_multiple(i, c, &-f);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<RationalMatrix, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::Dimension("inverse of a non-square matrix".into()));
        }
        let cert = self.rref_with_certificate();
        if cert.pivot_cols.len() != self.rows {
            return Err(ArithError::Singular);
        }
        Ok(cert.row_ops)
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, f: &Q) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            if !x.is_zero() {
                *x *= f;
            }
        }
    }

    /// row[i] += f * row[src]
    fn add_row_multiple(&mut self, i: usize, src: usize, f: &Q) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[i * self.cols + j] += s * f;
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut entries = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() {
                    entries.push((i, j, format_rational(&self[(i, j)])));
                }
            }
        }
        MatrixJson { rows: self.rows, cols: self.cols, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        let mut m = RationalMatrix::zeros(j.rows, j.cols);
        for (i, c, v) in j.entries {
            if i >= j.rows || c >= j.cols {
                return Err(serde::de::Error::custom("matrix entry out of range"));
            }
            m[(i, c)] = parse_rational(&v).ok_or_else(|| serde::de::Error::custom("bad rational"))?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_zero() {
        let z = RationalMatrix::zeros(3, 4);
        let c = z.rref_with_certificate();
        assert!(c.reduced.is_zero());
        assert_eq!(c.row_ops, RationalMatrix::identity(3));
        assert!(c.pivot_cols.is_empty());
    }

    #[test]
    fn rref_of_invertible() {
        let m = RationalMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let c = m.rref_with_certificate();
        assert_eq!(c.reduced, RationalMatrix::identity(3));
        assert_eq!(c.row_ops.mul(&m).unwrap(), RationalMatrix::identity(3));
        assert_eq!(c.pivot_cols, vec![0, 1, 2]);
    }

    #[test]
    fn determinant_small() {
        let m = RationalMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant().unwrap(), Q::from_integer((-1).into()));
    }

    #[test]
    fn json_round_trip() {
        let m = RationalMatrix::from_i64(&[vec![0, 3], vec![-1, 0]]);
        let s = serde_json::to_string(&m).unwrap();
        let back: RationalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
