//! Determinant (torsion) of a generically exact based complex of free modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ResultantError;
use crate::exactarith::rational::random_int;
use crate::exactarith::{bareiss_det, PolyMatrix, Ring, SparsePoly, Q};
use crate::weyman::WeymanComplex;

/// A complex of free modules over `R` with chosen bases: `maps[i]` sends
/// `R^{ranks[i]}` to `R^{ranks[i+1]}`.
#[derive(Clone, Debug)]
pub struct BasedComplex {
    pub ring: Arc<Ring>,
    pub ranks: BTreeMap<i64, usize>,
    pub maps: BTreeMap<i64, PolyMatrix>,
}

impl BasedComplex {
    pub fn from_weyman(w: &WeymanComplex) -> Self {
        let ranks = w.terms.keys().map(|&i| (i, w.rank(i))).filter(|(_, r)| *r > 0).collect();
        BasedComplex { ring: w.ring.clone(), ranks, maps: w.differentials.clone() }
    }

    /// A two-term complex `R^n → R^n` in degrees -1 and 0.
    pub fn single(m: PolyMatrix) -> Self {
        let ranks = BTreeMap::from([(-1, m.cols()), (0, m.rows())]);
        BasedComplex { ring: m.ring().clone(), ranks, maps: BTreeMap::from([(-1, m)]) }
    }

    pub fn rank(&self, i: i64) -> usize {
        self.ranks.get(&i).copied().unwrap_or(0)
    }

    pub fn map(&self, i: i64) -> PolyMatrix {
        self.maps.get(&i).cloned().unwrap_or_else(|| PolyMatrix::zeros(&self.ring, self.rank(i + 1), self.rank(i)))
    }

    fn span(&self) -> Option<(i64, i64)> {
        let lo = *self.ranks.iter().find(|(_, r)| **r > 0)?.0;
        let hi = *self.ranks.iter().rev().find(|(_, r)| **r > 0)?.0;
        Some((lo, hi))
    }
}

/// Row and column subsets chosen for each map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSubsets {
    pub rows: BTreeMap<i64, Vec<usize>>,
    pub cols: BTreeMap<i64, Vec<usize>>,
}

/// Chooses nested subsets by column rank profiles at `point`, from the top
/// term down.
pub fn choose_subsets(c: &BasedComplex, point: &[Q]) -> Result<IndexSubsets, ResultantError> {
    let mut out = IndexSubsets::default();
    let Some((lo, hi)) = c.span() else { return Ok(out) };
    // columns of C^{i+1} already used by the map leaving it
    let mut used: Vec<usize> = Vec::new();
    for i in (lo..hi).rev() {
        let rows: Vec<usize> = (0..c.rank(i + 1)).filter(|r| !used.contains(r)).collect();
        let m = c.map(i);
        let sub = m.eval(point).select(&rows, &(0..m.cols()).collect::<Vec<_>>());
        let pivots = sub.rref_with_certificate().pivot_cols;
        if pivots.len() != rows.len() {
            return Err(ResultantError::NotExact(format!("homology in degree {}", i + 1)));
        }
        out.rows.insert(i, rows);
        out.cols.insert(i, pivots.clone());
        used = pivots;
    }
    if used.len() != c.rank(lo) {
        return Err(ResultantError::NotExact(format!("homology in degree {lo}")));
    }
    Ok(out)
}

/// The determinant of the complex, up to sign: the alternating product of
/// the chosen minors. A map landing in an even term goes in the numerator,
/// so homology in even degrees contributes positive order.
pub fn determinant_of_complex<G: Rng>(
    c: &BasedComplex,
    rng: &mut G,
) -> Result<(SparsePoly, IndexSubsets), ResultantError> {
    let nvars = c.ring.nvars();
    let mut last_err = None;
    for _ in 0..2 {
        let point: Vec<Q> = (0..nvars).map(|_| random_int(rng, 1 << 20)).collect();
        let subsets = choose_subsets(c, &point)?;
        let mut num = SparsePoly::one(&c.ring);
        let mut den = SparsePoly::one(&c.ring);
        for (&i, rows) in &subsets.rows {
            let minor = c.map(i).select(rows, &subsets.cols[&i]);
            let d = bareiss_det(&minor)?;
            if (i + 1).rem_euclid(2) == 0 {
                num = &num * &d;
            } else {
                den = &den * &d;
            }
        }
        match num.div_exact(&den)? {
            Some(q) => return Ok((q, subsets)),
            None => last_err = Some(ResultantError::Inexact),
        }
    }
    Err(last_err.unwrap_or(ResultantError::Inexact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring() -> Arc<Ring> {
        Ring::new(["a", "b", "c", "d"])
    }

    fn matrix(r: &Arc<Ring>, rows: &[&[&str]]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(r, rows.len(), rows[0].len());
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                m.set(i, j, SparsePoly::parse(r, s).unwrap());
            }
        }
        m
    }

    #[test]
    fn two_terms_give_the_plain_determinant() {
        let r = ring();
        let m = matrix(&r, &[&["a", "b"], &["c", "d"]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (det, _) = determinant_of_complex(&BasedComplex::single(m), &mut rng).unwrap();
        assert_eq!(det, SparsePoly::parse(&r, "a * d - b * c").unwrap());
    }

    #[test]
    fn split_constant_summand_does_not_change_it() {
        // R --(1, 0)^T--> R^2 --(0, a*d - b*c)--> R
        let r = ring();
        let mut c = BasedComplex {
            ring: r.clone(),
            ranks: BTreeMap::from([(-2, 1), (-1, 2), (0, 1)]),
            maps: BTreeMap::new(),
        };
        c.maps.insert(-2, matrix(&r, &[&["1"], &["0"]]));
        c.maps.insert(-1, matrix(&r, &[&["0", "a * d - b * c"]]));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (det, subsets) = determinant_of_complex(&c, &mut rng).unwrap();
        let want = SparsePoly::parse(&r, "a * d - b * c").unwrap();
        assert!(det == want || det == -&want, "{det}");
        assert_eq!(subsets.cols[&-1], vec![1]);
    }

    #[test]
    fn homology_is_reported() {
        let r = ring();
        let c = BasedComplex::single(matrix(&r, &[&["a", "b"], &["2 * a", "2 * b"]]));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(determinant_of_complex(&c, &mut rng), Err(ResultantError::NotExact(_))));
    }
}
