//! Smith normal form of small integer matrices.

use serde::{Deserialize, Serialize};

use super::ArithError;

pub type IntMatrix = Vec<Vec<i64>>;

/// `left * input * right` is diagonal with entries `diagonal`, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
}

fn ck(x: i128) -> Result<i128, ArithError> {
    if x.unsigned_abs() > (i64::MAX as u128) {
        Err(ArithError::Overflow)
    } else {
        Ok(x)
    }
}

fn ident(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

struct State {
    a: Vec<Vec<i128>>,
    l: Vec<Vec<i128>>,
    linv: Vec<Vec<i128>>,
    r: Vec<Vec<i128>>,
}

impl State {
    /// row i -= q * row t
    fn row_sub(&mut self, i: usize, t: usize, q: i128) -> Result<(), ArithError> {
        for j in 0..self.a[0].len() {
            self.a[i][j] = ck(self.a[i][j] - q * self.a[t][j])?;
        }
        for j in 0..self.l.len() {
            self.l[i][j] = ck(self.l[i][j] - q * self.l[t][j])?;
        }
        for row in self.linv.iter_mut() {
            row[t] = ck(row[t] + q * row[i])?;
        }
        Ok(())
    }

    fn col_sub(&mut self, j: usize, t: usize, q: i128) -> Result<(), ArithError> {
        for row in self.a.iter_mut() {
            row[j] = ck(row[j] - q * row[t])?;
        }
        for row in self.r.iter_mut() {
            row[j] = ck(row[j] - q * row[t])?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        self.a.swap(i, t);
        self.l.swap(i, t);
        for row in self.linv.iter_mut() {
            row.swap(i, t);
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        for row in self.a.iter_mut() {
            row.swap(j, t);
        }
        for row in self.r.iter_mut() {
            row.swap(j, t);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -*x;
        }
        for x in self.l[i].iter_mut() {
            *x = -*x;
        }
        for row in self.linv.iter_mut() {
            row[i] = -row[i];
        }
    }
}

pub fn smith_normal_form(m: &[Vec<i64>]) -> Result<SnfResult, ArithError> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(ArithError::Dimension("ragged integer matrix".into()));
    }
    let mut s = State {
        a: m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect(),
        l: ident(rows),
        linv: ident(rows),
        r: ident(cols),
    };
    let steps = rows.min(cols);
    let mut diagonal = Vec::with_capacity(steps);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = s.a[i][j];
                    if v != 0 && best.map_or(true, |(bi, bj)| v.abs() < s.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            s.swap_rows(bi, t);
            s.swap_cols(bj, t);
            let p = s.a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = s.a[i][t].div_euclid(p);
                if q != 0 {
                    s.row_sub(i, t, q)?;
                }
                clean &= s.a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = s.a[t][j].div_euclid(p);
                if q != 0 {
                    s.col_sub(j, t, q)?;
                }
                clean &= s.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| s.a[i][j] % p != 0));
            match bad {
                Some(i) => s.row_sub(t, i, -1)?,
                None => break,
            }
        }
        if s.a[t][t] < 0 {
            s.negate_row(t);
        }
        diagonal.push(s.a[t][t] as i64);
    }
    let cv = |x: Vec<Vec<i128>>| x.into_iter().map(|r| r.into_iter().map(|v| v as i64).collect()).collect();
    Ok(SnfResult { diagonal, left: cv(s.l), left_inv: cv(s.linv), right: cv(s.r) })
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
        .collect()
}

/// An integer solution of `m * s = v`, if one exists.
pub fn solve_integer(m: &[Vec<i64>], v: &[i64]) -> Result<Option<Vec<i64>>, ArithError> {
    let snf = smith_normal_form(m)?;
    Ok(solve_with_snf(&snf, m.first().map_or(0, |r| r.len()), v))
}

pub fn solve_with_snf(snf: &SnfResult, cols: usize, v: &[i64]) -> Option<Vec<i64>> {
    let y = mat_vec(&snf.left, v);
    let mut z = vec![0i64; cols];
    for (i, &yi) in y.iter().enumerate() {
        let d = snf.diagonal.get(i).copied().unwrap_or(0);
        if d == 0 {
            if yi != 0 {
                return None;
            }
        } else {
            if yi % d != 0 {
                return None;
            }
            z[i] = yi / d;
        }
    }
    Some(mat_vec(&snf.right, &z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &[Vec<i64>]) -> SnfResult {
        let s = smith_normal_form(m).unwrap();
        let d = mat_mul(&mat_mul(&s.left, m), &s.right);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j { s.diagonal[i] } else { 0 };
                assert_eq!(x, want, "entry ({i},{j})");
            }
        }
        for w in s.diagonal.windows(2) {
            assert!(w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0);
        }
        let id = mat_mul(&s.left, &s.left_inv);
        for (i, row) in id.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, (i == j) as i64);
            }
        }
        s
    }

    #[test]
    fn diag_two_three() {
        assert_eq!(check(&[vec![2, 0], vec![0, 3]]).diagonal, vec![1, 6]);
    }

    #[test]
    fn identity() {
        assert_eq!(check(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).diagonal, vec![1, 1, 1]);
    }

    #[test]
    fn torsion_example() {
        assert_eq!(check(&[vec![2, 4], vec![6, 8]]).diagonal, vec![2, 4]);
    }

    #[test]
    fn solve() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(solve_integer(&m, &[4, 9]).unwrap(), Some(vec![2, 3]));
        assert_eq!(solve_integer(&m, &[1, 0]).unwrap(), None);
    }
}
