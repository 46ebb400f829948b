//! Small integer linear-algebra helpers.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exactarith::RationalMatrix;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    RationalMatrix::from_i64(rows).rank()
}

/// Divides by the gcd of the entries and returns the primitive vector.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Primitive integer basis of the rational nullspace of `rows` (vectors `x`
/// with `rows * x = 0`), one vector per free column of the reduced form.
pub fn nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return (0..ncols).map(|i| (0..ncols).map(|j| (i == j) as i64).collect()).collect();
    }
    let cert = RationalMatrix::from_i64(rows).rref_with_certificate();
    let r = &cert.reduced;
    let pivots = &cert.pivot_cols;
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![num_rational::BigRational::zero(); ncols];
        v[free] = num_rational::BigRational::from_integer(1.into());
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, free)].clone();
        }
        let den = v.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
        let ints: Vec<i64> = v.iter().map(|x| (x.numer() * (&den / x.denom())).to_i64().expect("nullspace entry overflow")).collect();
        out.push(primitive(&ints));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_line() {
        let ns = nullspace(&[vec![2, 4]], 2);
        assert_eq!(ns, vec![vec![-2, 1]]);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
    }
}
