//! Truncated Čech strands of the Cox ring in a fixed degree.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::pattern::{coboundary, PatternReduction};
use crate::exactarith::rational::Q;
use crate::exactarith::RationalMatrix;
use crate::toric::DivisorClass;

/// The strand of `S[-alpha]` in degree 0 (monomials of degree `-alpha`),
/// truncated at `e`, together with the reductions of all its pattern blocks.
///
/// Monomials are `x^u` with `u = divisor + B m` for lattice points `m`; the
/// strand is the direct sum over `m` of pattern complexes on cone subsets.
#[derive(Clone, Debug)]
pub struct ReducedStrand {
    pub alpha: DivisorClass,
    pub e: Vec<u32>,
    /// Representative divisor of the class `-alpha`.
    pub divisor: Vec<i64>,
    pub points: Vec<Vec<i64>>,
    /// Pattern index of every point.
    pub point_pattern: Vec<u32>,
    pub pattern_covers: Vec<Option<Vec<u32>>>,
    pub patterns: Vec<Arc<PatternReduction>>,
    /// Cohomology basis per Čech degree: `(point index, critical index)`.
    pub basis: Vec<Vec<(u32, u32)>>,
    point_lookup: HashMap<Vec<i64>, u32>,
    basis_lookup: HashMap<(u32, u32), u32>,
}

/// Serializable form of a [`ReducedStrand`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StrandJson {
    pub alpha: Vec<i64>,
    pub e: Vec<u32>,
    pub divisor: Vec<i64>,
    pub points: Vec<Vec<i64>>,
    pub point_pattern: Vec<u32>,
    pub pattern_covers: Vec<Option<Vec<u32>>>,
    pub patterns: Vec<PatternReduction>,
}

impl ReducedStrand {
    pub fn assemble(
        alpha: DivisorClass,
        e: Vec<u32>,
        divisor: Vec<i64>,
        points: Vec<Vec<i64>>,
        point_pattern: Vec<u32>,
        pattern_covers: Vec<Option<Vec<u32>>>,
        patterns: Vec<Arc<PatternReduction>>,
    ) -> Self {
        let ncones = e.len();
        let mut basis: Vec<Vec<(u32, u32)>> = vec![Vec::new(); ncones];
        for (pi, &pat) in point_pattern.iter().enumerate() {
            let p = &patterns[pat as usize];
            for (k, &c) in p.critical.iter().enumerate() {
                basis[p.degree_of_cell(c as usize)].push((pi as u32, k as u32));
            }
        }
        let point_lookup = points.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let basis_lookup = basis.iter().flat_map(|b| b.iter().enumerate().map(|(i, &x)| (x, i as u32))).collect();
        ReducedStrand {
            alpha,
            e,
            divisor,
            points,
            point_pattern,
            pattern_covers,
            patterns,
            basis,
            point_lookup,
            basis_lookup,
        }
    }

    pub fn to_json(&self) -> StrandJson {
        StrandJson {
            alpha: self.alpha.0.clone(),
            e: self.e.clone(),
            divisor: self.divisor.clone(),
            points: self.points.clone(),
            point_pattern: self.point_pattern.clone(),
            pattern_covers: self.pattern_covers.clone(),
            patterns: self.patterns.iter().map(|p| (**p).clone()).collect(),
        }
    }

    pub fn from_json(j: StrandJson) -> Self {
        Self::assemble(
            DivisorClass(j.alpha),
            j.e,
            j.divisor,
            j.points,
            j.point_pattern,
            j.pattern_covers,
            j.patterns.into_iter().map(Arc::new).collect(),
        )
    }

    pub fn ncones(&self) -> usize {
        self.e.len()
    }

    /// dim Ȟ^q for q = 0..ncones.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn point_index(&self, m: &[i64]) -> Option<u32> {
        self.point_lookup.get(m).copied()
    }

    pub fn pattern_of(&self, point: u32) -> &PatternReduction {
        &self.patterns[self.point_pattern[point as usize] as usize]
    }

    /// Position in `basis[q]` of a critical cell.
    pub fn basis_index(&self, point: u32, crit: u32) -> Option<u32> {
        self.basis_lookup.get(&(point, crit)).copied()
    }

    /// Exponent vector of the monomial at point `m`.
    pub fn monomial(&self, m: &[i64], rays: &[Vec<i64>]) -> Vec<i64> {
        self.divisor.iter().zip(rays).map(|(d, u)| d + u.iter().zip(m).map(|(a, b)| a * b).sum::<i64>()).collect()
    }

    /// Cohomology dimensions from exact ranks of the pattern coboundaries,
    /// without the reduction data. The strand splits into one pattern
    /// complex per point, so each pattern is ranked once.
    pub fn dims_by_rank(&self) -> Vec<usize> {
        let nc = self.ncones();
        let mut count = vec![0usize; self.patterns.len()];
        for &p in &self.point_pattern {
            count[p as usize] += 1;
        }
        let mut out = vec![0usize; nc];
        for (pat, &n) in self.patterns.iter().zip(&count) {
            if n == 0 || pat.cells.is_empty() {
                continue;
            }
            let by_degree: Vec<Vec<u32>> = (1..=nc)
                .map(|k| pat.cells.iter().copied().filter(|c| c.count_ones() as usize == k).collect())
                .collect();
            let ranks: Vec<usize> = (0..nc.saturating_sub(1))
                .map(|q| {
                    let index: HashMap<u32, usize> = by_degree[q + 1].iter().enumerate().map(|(i, &c)| (c, i)).collect();
                    let mut d = RationalMatrix::zeros(by_degree[q + 1].len(), by_degree[q].len());
                    for (j, &c) in by_degree[q].iter().enumerate() {
                        for (t, neg) in coboundary(c, nc) {
                            if let Some(&i) = index.get(&t) {
                                d[(i, j)] = if neg { -Q::one() } else { Q::one() };
                            }
                        }
                    }
                    d.rank()
                })
                .collect();
            for q in 0..nc {
                let inc = if q == 0 { 0 } else { ranks[q - 1] };
                let outgoing = ranks.get(q).copied().unwrap_or(0);
                out[q] += n * (by_degree[q].len() - inc - outgoing);
            }
        }
        out
    }

    /// Total number of cells in Čech degree `q`.
    pub fn cell_count(&self, q: usize) -> usize {
        self.point_pattern
            .iter()
            .map(|&p| {
                let pat = &self.patterns[p as usize];
                pat.cells.iter().filter(|c| c.count_ones() as usize == q + 1).count()
            })
            .sum()
    }
}

/// The explicit truncated Čech strand: per degree, the cells `(cone subset,
/// exponent vector)` and the coboundary matrices.
#[derive(Clone, Debug)]
pub struct StrandComplex {
    pub alpha: DivisorClass,
    pub e: Vec<u32>,
    /// `terms[q]` lists `(subset mask, point index, exponent vector)`.
    pub terms: Vec<Vec<(u32, u32, Vec<i64>)>>,
    /// `differentials[q]` maps degree `q` to degree `q+1`.
    pub differentials: Vec<RationalMatrix>,
}

impl StrandComplex {
    pub fn from_reduced(s: &ReducedStrand, rays: &[Vec<i64>]) -> Self {
        let nc = s.ncones();
        let mut terms: Vec<Vec<(u32, u32, Vec<i64>)>> = vec![Vec::new(); nc];
        for (pi, m) in s.points.iter().enumerate() {
            let pat = s.pattern_of(pi as u32);
            let u = s.monomial(m, rays);
            for &c in &pat.cells {
                terms[c.count_ones() as usize - 1].push((c, pi as u32, u.clone()));
            }
        }
        for t in terms.iter_mut() {
            t.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        }
        let index: Vec<HashMap<(u32, u32), usize>> = terms
            .iter()
            .map(|t| t.iter().enumerate().map(|(i, (c, p, _))| ((*c, *p), i)).collect())
            .collect();
        let mut differentials = Vec::new();
        for q in 0..nc.saturating_sub(1) {
            let mut d = RationalMatrix::zeros(terms[q + 1].len(), terms[q].len());
            for (j, (c, p, _)) in terms[q].iter().enumerate() {
                for (t, neg) in coboundary(*c, nc) {
                    let i = index[q + 1][&(t, *p)];
                    d[(i, j)] = if neg { -Q::one() } else { Q::one() };
                }
            }
            differentials.push(d);
        }
        StrandComplex { alpha: s.alpha.clone(), e: s.e.clone(), terms, differentials }
    }

    /// Checks that consecutive coboundaries compose to zero.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[1].mul(&w[0]).map(|m| m.is_zero()).unwrap_or(false))
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(|d| d.rank()).collect();
        (0..self.terms.len())
            .map(|q| {
                let out = ranks.get(q).copied().unwrap_or(0);
                let inc = if q == 0 { 0 } else { ranks[q - 1] };
                self.terms[q].len() - out - inc
            })
            .collect()
    }
}

