//! Fraction-free determinants of polynomial matrices.

use super::poly::SparsePoly;
use super::polymatrix::PolyMatrix;
use super::ArithError;

/// Determinant by Bareiss elimination. The pivot at each step is the
/// remaining nonzero entry with the fewest terms.
pub fn bareiss_det(m: &PolyMatrix) -> Result<SparsePoly, ArithError> {
    if m.rows() != m.cols() {
        return Err(ArithError::Dimension(format!("determinant of a {}x{} matrix", m.rows(), m.cols())));
    }
    let ring = m.ring().clone();
    let n = m.rows();
    if n == 0 {
        return Ok(SparsePoly::one(&ring));
    }
    let mut a = m.to_dense();
    let mut negate = false;
    let mut prev = SparsePoly::one(&ring);
    for k in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                let t = a[i][j].num_terms();
                if t > 0 && best.map_or(true, |(_, _, bt)| t < bt) {
                    best = Some((i, j, t));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            return Ok(SparsePoly::zero(&ring));
        };
        if pi != k {
            a.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = &pivot * &a[i][j];
                let rhs = &a[i][k] * &a[k][j];
                let num = &lhs - &rhs;
                a[i][j] = if k == 0 {
                    num
                } else {
                    num.div_exact(&prev)?.ok_or(ArithError::InexactDivision)?
                };
            }
            a[i][k] = SparsePoly::zero(&ring);
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::poly::Ring;

    #[test]
    fn two_by_two() {
        let r = Ring::new(["a", "b", "c", "d"]);
        let v = |i| SparsePoly::var(&r, i);
        let m = PolyMatrix::from_dense(&r, vec![vec![v(0), v(1)], vec![v(2), v(3)]]).unwrap();
        assert_eq!(bareiss_det(&m).unwrap(), SparsePoly::parse(&r, "a*d - b*c").unwrap());
    }

    #[test]
    fn identity_is_one() {
        let r = Ring::new(["x"]);
        for n in 0..6 {
            assert_eq!(bareiss_det(&PolyMatrix::identity(&r, n)).unwrap(), SparsePoly::one(&r));
        }
    }

    #[test]
    fn non_square_rejected() {
        let r = Ring::new(["x"]);
        assert!(bareiss_det(&PolyMatrix::zeros(&r, 2, 3)).is_err());
    }
}
