//! Complexes of free graded modules over S_R = S ⊗ R, where S is the Cox
//! ring of a toric variety and R a polynomial ring of parameters.
//!
//! Term `p` is `⊕_k S_R[-α_{p,k}]`. The differential at `p` maps term `p`
//! to term `p+1`; its matrix has one row per summand of the target and one
//! column per summand of the source, and entry `(l, k)` is homogeneous of
//! degree `α_{p,k} - α_{p+1,l}`.

pub mod families;
pub mod json;
pub mod koszul;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::exactarith::{ArithError, Monomial, PolyMatrix, Ring, SparsePoly};
use crate::toric::{DivisorClass, ToricData, ToricError};

pub use families::{cotangent_family_complex, koszul_vs_unit_fixture, one_term_complex, projective_space};
pub use koszul::{generic_koszul, KoszulMetadata};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid complex: {0}")]
    Invalid(String),
    #[error("polynomial is not homogeneous of the required degree: {0}")]
    NotHomogeneous(String),
    #[error("serialization: {0}")]
    Format(String),
}

/// Builds the ring `S_R` with Cox variables `x1..xr` followed by the parameters.
pub fn cox_param_ring(nrays: usize, params: &[String]) -> Arc<Ring> {
    Ring::new((1..=nrays).map(|i| format!("x{i}")).chain(params.iter().cloned()))
}

#[derive(Clone, Debug)]
pub struct FreeGradedComplex {
    pub toric: Arc<ToricData>,
    pub params: Vec<String>,
    /// `S_R`: Cox variables first, then parameters.
    pub ring: Arc<Ring>,
    /// `R`: the parameters alone.
    pub param_ring: Arc<Ring>,
    pub terms: BTreeMap<i64, Vec<DivisorClass>>,
    pub differentials: BTreeMap<i64, PolyMatrix>,
}

impl FreeGradedComplex {
    pub fn new(toric: Arc<ToricData>, params: Vec<String>) -> Self {
        let ring = cox_param_ring(toric.nrays(), &params);
        let param_ring = Ring::new(params.iter().cloned());
        FreeGradedComplex { toric, params, ring, param_ring, terms: BTreeMap::new(), differentials: BTreeMap::new() }
    }

    pub fn ncox(&self) -> usize {
        self.toric.nrays()
    }

    pub fn rank(&self, p: i64) -> usize {
        self.terms.get(&p).map_or(0, |t| t.len())
    }

    /// Differential from term `p` to term `p + 1`; zero if absent.
    pub fn differential(&self, p: i64) -> PolyMatrix {
        self.differentials
            .get(&p)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(&self.ring, self.rank(p + 1), self.rank(p)))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.iter().filter(|(_, t)| !t.is_empty()).map(|(&p, _)| p).collect()
    }

    /// Shifts every term degree by `-beta`, i.e. tensors with O(beta).
    pub fn twist(&self, beta: &DivisorClass) -> Result<FreeGradedComplex, ComplexError> {
        let mut out = self.clone();
        for t in out.terms.values_mut() {
            for a in t.iter_mut() {
                *a = self.toric.normalize_class(&a.sub(beta))?;
            }
        }
        Ok(out)
    }

    /// Cox degree of a monomial of `S_R`.
    pub fn cox_degree(&self, m: &Monomial) -> DivisorClass {
        let e: Vec<i64> = m.0[..self.ncox()].iter().map(|&v| v as i64).collect();
        self.toric.class_of(&e)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (&p, d) in &self.differentials {
            let (src, tgt) = (self.rank(p), self.rank(p + 1));
            if d.rows() != tgt || d.cols() != src {
                report.violations.push(Violation::Shape { p, rows: d.rows(), cols: d.cols() });
                continue;
            }
            for (&(l, k), f) in d.entries() {
                let want = self.terms[&p][k].sub(&self.terms[&(p + 1)][l]);
                let want = self.toric.normalize_class(&want).unwrap_or(want);
                for (m, _) in f.terms() {
                    if self.cox_degree(m) != want {
                        report.violations.push(Violation::Degree { p, row: l, col: k });
                        break;
                    }
                }
            }
        }
        for (&p, d) in &self.differentials {
            let Some(next) = self.differentials.get(&(p + 1)) else { continue };
            if next.cols() != d.rows() {
                continue;
            }
            if let Ok(prod) = next.mul(d) {
                for (&(row, col), _) in prod.entries() {
                    report.violations.push(Violation::NotAComplex { p, row, col });
                }
            }
        }
        report
    }

    /// Substitutes rational values for all parameters.
    pub fn specialize_params(&self, values: &[num_rational::BigRational]) -> FreeGradedComplex {
        assert_eq!(values.len(), self.params.len());
        let subs: Vec<(usize, _)> = values.iter().enumerate().map(|(i, v)| (self.ncox() + i, v.clone())).collect();
        let mut out = self.clone();
        for d in out.differentials.values_mut() {
            *d = d.map_entries(|p| p.specialize(&subs), &self.ring);
        }
        out
    }
}

/// Drops the Cox part of a polynomial in `S_R` whose Cox exponents all
/// vanish, returning a polynomial over `R`.
pub fn to_param_ring(p: &SparsePoly, ncox: usize, param_ring: &Arc<Ring>) -> SparsePoly {
    SparsePoly::from_terms(
        param_ring,
        p.terms().map(|(m, c)| {
            debug_assert!(m.0[..ncox].iter().all(|&e| e == 0));
            (Monomial::from_exps(&m.0[ncox..]), c.clone())
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape { p: i64, rows: usize, cols: usize },
    Degree { p: i64, row: usize, col: usize },
    NotAComplex { p: i64, row: usize, col: usize },
    NotCommuting { p: i64, row: usize, col: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A morphism of complexes; `maps[p]` has one row per target summand and
/// one column per source summand at degree `p`.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    pub source: FreeGradedComplex,
    pub target: FreeGradedComplex,
    pub maps: BTreeMap<i64, PolyMatrix>,
}

impl ComplexMorphism {
    pub fn map(&self, p: i64) -> PolyMatrix {
        self.maps
            .get(&p)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(&self.source.ring, self.target.rank(p), self.source.rank(p)))
    }

    pub fn identity(c: &FreeGradedComplex) -> ComplexMorphism {
        let maps = c.terms.iter().map(|(&p, t)| (p, PolyMatrix::identity(&c.ring, t.len()))).collect();
        ComplexMorphism { source: c.clone(), target: c.clone(), maps }
    }

    pub fn compose(&self, first: &ComplexMorphism) -> Result<ComplexMorphism, ComplexError> {
        let mut maps = BTreeMap::new();
        for &p in first.source.terms.keys() {
            maps.insert(p, self.map(p).mul(&first.map(p))?);
        }
        Ok(ComplexMorphism { source: first.source.clone(), target: self.target.clone(), maps })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let ps: std::collections::BTreeSet<i64> =
            self.source.terms.keys().chain(self.target.terms.keys()).copied().collect();
        for &p in &ps {
            let theta = self.map(p);
            for (&(l, k), f) in theta.entries() {
                let want = self.source.terms[&p][k].sub(&self.target.terms[&p][l]);
                let want = self.source.toric.normalize_class(&want).unwrap_or(want);
                if f.terms().any(|(m, _)| self.source.cox_degree(m) != want) {
                    report.violations.push(Violation::Degree { p, row: l, col: k });
                }
            }
            let lhs = self.target.differential(p).mul(&theta);
            let rhs = self.map(p + 1).mul(&self.source.differential(p));
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => {
                    let diff = PolyMatrix::zeros(&self.source.ring, a.rows(), a.cols());
                    let mut diff = diff;
                    for (&(i, j), x) in a.entries() {
                        diff.add_to(i, j, x);
                    }
                    for (&(i, j), x) in b.entries() {
                        diff.add_to(i, j, &-x);
                    }
                    for (&(row, col), _) in diff.entries() {
                        report.violations.push(Violation::NotCommuting { p, row, col });
                    }
                }
                _ => report.violations.push(Violation::Shape { p, rows: theta.rows(), cols: theta.cols() }),
            }
        }
        report
    }
}
