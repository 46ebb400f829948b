//! Linear algebra over the prime field F_p with p = 2^61 - 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rational::Q;

pub const P: u64 = (1 << 61) - 1;

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    assert!(a != 0, "inverse of zero mod p");
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().unwrap()
}

/// Image of a rational number; `None` if the denominator vanishes mod p.
pub fn from_rational(x: &Q) -> Option<u64> {
    let d = reduce_int(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(x.numer()), inv(d)))
}

/// Rank of a dense matrix over F_p (the matrix is consumed).
pub fn rank(mut a: Vec<Vec<u64>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(p, r);
        let iv = inv(a[r][c]);
        for j in c..cols {
            a[r][j] = mul(a[r][j], iv);
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            let f = row[c];
            if f != 0 {
                for j in c..cols {
                    if prow[j] != 0 {
                        row[j] = sub(row[j], mul(f, prow[j]));
                    }
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of a sparse matrix given as rows of `(col, value)` pairs.
///
/// Markowitz-style elimination: the lightest remaining row pivots on its
/// sparsest column, which is then cleared from every other row. This keeps
/// fill-in small on the block-structured matrices of Čech complexes.
pub fn sparse_rank(rows: Vec<Vec<(usize, u64)>>) -> usize {
    use std::collections::{BTreeSet, HashMap, HashSet};
    let mut rows: Vec<HashMap<usize, u64>> = rows
        .into_iter()
        .map(|r| {
            let mut m = HashMap::with_capacity(r.len());
            for (c, x) in r {
                let e = m.entry(c).or_insert(0);
                *e = add(*e, x);
            }
            m.retain(|_, x| *x != 0);
            m
        })
        .collect();
    let mut col_rows: HashMap<usize, HashSet<usize>> = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows.entry(c).or_default().insert(i);
        }
    }
    let mut queue: BTreeSet<(usize, usize)> = rows.iter().enumerate().map(|(i, r)| (r.len(), i)).collect();
    let mut rank = 0;
    while let Some((w, i)) = queue.pop_first() {
        if w == 0 {
            continue;
        }
        let pivot_row = std::mem::take(&mut rows[i]);
        let &c = pivot_row.keys().min_by_key(|&&c| (col_rows[&c].len(), c)).expect("nonempty row");
        let iv = inv(pivot_row[&c]);
        for &j in pivot_row.keys() {
            if let Some(s) = col_rows.get_mut(&j) {
                s.remove(&i);
            }
        }
        let others: Vec<usize> = col_rows.remove(&c).map(|s| s.into_iter().collect()).unwrap_or_default();
        for k in others {
            let row = &mut rows[k];
            queue.remove(&(row.len(), k));
            let f = mul(row[&c], iv);
            for (&j, &y) in &pivot_row {
                let e = row.entry(j).or_insert(0);
                let was_zero = *e == 0;
                *e = sub(*e, mul(f, y));
                if *e == 0 {
                    row.remove(&j);
                    if j != c {
                        if let Some(s) = col_rows.get_mut(&j) {
                            s.remove(&k);
                        }
                    }
                } else if was_zero {
                    col_rows.entry(j).or_default().insert(k);
                }
            }
            queue.insert((row.len(), k));
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactarith::rational::qfrac;

    #[test]
    fn inverse_round_trip() {
        for a in [1u64, 2, 12345, P - 1] {
            assert_eq!(mul(a, inv(a)), 1);
        }
        assert_eq!(mul(from_rational(&qfrac(1, 3)).unwrap(), 3), 1);
    }

    #[test]
    fn ranks_agree() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let sparse = m
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &x)| (j, x)).collect())
            .collect();
        assert_eq!(rank(m), 2);
        assert_eq!(sparse_rank(sparse), 2);
    }

    #[test]
    fn sparse_and_dense_ranks_agree_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let (n, m) = (rng.gen_range(1..12), rng.gen_range(1..12));
            let k = rng.gen_range(0..=n.min(m));
            // a product of random n x k and k x m factors has rank at most k
            let a: Vec<Vec<u64>> = (0..n).map(|_| (0..k).map(|_| rng.gen_range(0..3)).collect()).collect();
            let b: Vec<Vec<u64>> = (0..k).map(|_| (0..m).map(|_| rng.gen_range(0..3)).collect()).collect();
            let prod: Vec<Vec<u64>> = (0..n)
                .map(|i| (0..m).map(|j| (0..k).fold(0, |s, t| add(s, mul(a[i][t], b[t][j])))).collect())
                .collect();
            let sparse = prod
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect())
                .collect();
            assert_eq!(sparse_rank(sparse), rank(prod));
        }
    }
}
