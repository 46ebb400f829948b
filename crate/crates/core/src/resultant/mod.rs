//! Sparse resultants as determinants of Weyman complexes, with independent
//! oracles and curve implicitization.

mod det;
mod implicit;
pub mod json;
mod oracles;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use det::{choose_subsets, determinant_of_complex, BasedComplex, IndexSubsets};
pub use implicit::implicitize_curve;
pub use oracles::{generic_sample, incidence_sample, membership_test, sylvester_resultant, Specialization};

use crate::cech::{CechContext, CechError, PivotPolicy};
use crate::complexes::{generic_koszul, ComplexError, FreeGradedComplex, KoszulMetadata};
use crate::exactarith::{perfect_power, ArithError, SparsePoly};
use crate::toric::{codimension, DivisorClass, SupportSet, ToricData, ToricError};
use crate::weyman::{weyman_differential, E1Page, WeymanComplex, WeymanError, WeymanOptions};

#[derive(Debug, Error)]
pub enum ResultantError {
    #[error(transparent)]
    Weyman(#[from] WeymanError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Cech(#[from] CechError),
    #[error("the resultant variety has codimension {0}, not 1 (Sturmfels' criterion); there is no resultant polynomial")]
    Codimension(usize),
    #[error("complex has nonzero generic homology: {0}")]
    NotExact(String),
    #[error("minors do not divide exactly; the index subsets are inconsistent")]
    Inexact,
    #[error("degenerate twist or support configuration: the determinant vanishes")]
    Degenerate,
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// How the Koszul complex is twisted before taking the Weyman complex.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum TwistSpec {
    /// `-2 K_X`.
    #[default]
    Default,
    /// A class in the coordinates of the toric variety.
    Class(Vec<i64>),
    /// A torus-invariant divisor, one coefficient per ray.
    Divisor(Vec<i64>),
}

impl TwistSpec {
    pub fn resolve(&self, x: &ToricData) -> Result<DivisorClass, ResultantError> {
        match self {
            TwistSpec::Default => Ok(x.anticanonical().scale(2)),
            TwistSpec::Class(c) => Ok(x.normalize_class(&DivisorClass(c.clone()))?),
            TwistSpec::Divisor(d) => {
                if d.len() != x.nrays() {
                    return Err(ResultantError::Invalid(format!(
                        "twist divisor has {} entries but the variety has {} rays",
                        d.len(),
                        x.nrays()
                    )));
                }
                Ok(x.class_of(d))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResultantProblem {
    pub supports: Vec<SupportSet>,
    pub twist: TwistSpec,
    pub e: Option<Vec<u32>>,
    pub seed: u64,
    pub policy: PivotPolicy,
}

impl ResultantProblem {
    pub fn new(supports: Vec<SupportSet>) -> Self {
        ResultantProblem { supports, twist: TwistSpec::Default, e: None, seed: 0, policy: PivotPolicy::default() }
    }

    pub fn with_twist(mut self, twist: TwistSpec) -> Self {
        self.twist = twist;
        self
    }

    pub fn labels(&self) -> Vec<String> {
        self.supports.iter().flat_map(|a| a.labels.iter().cloned()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ComplexReport {
    pub term_ranks: BTreeMap<i64, usize>,
    pub page: E1Page,
    pub subsets: IndexSubsets,
    pub twist: DivisorClass,
    pub e: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct ResultantOutput {
    /// Primitive integer polynomial with positive leading coefficient.
    pub delta: SparsePoly,
    pub multiplicity: u32,
    pub eliminant: SparsePoly,
    pub report: ComplexReport,
}

/// Normalizes a determinant: integer coefficients, unit content, positive
/// leading coefficient.
pub fn normalize(p: &SparsePoly) -> SparsePoly {
    p.primitive_part().0
}

/// The generic Koszul complex of the problem, with the codimension check.
pub fn problem_koszul(prob: &ResultantProblem) -> Result<(FreeGradedComplex, KoszulMetadata), ResultantError> {
    let n = prob.supports.first().map(|a| a.dim).unwrap_or(0);
    if prob.supports.len() != n + 1 {
        return Err(ResultantError::Invalid(format!(
            "{} support sets in dimension {n}; a resultant needs {}",
            prob.supports.len(),
            n + 1
        )));
    }
    let c = codimension(&prob.supports);
    if c != 1 {
        return Err(ResultantError::Codimension(c));
    }
    Ok(generic_koszul(&prob.supports)?)
}

/// Twists the complex and computes its Weyman complex and determinant.
pub fn resultant_of_complex(
    ctx: &CechContext,
    cx: &FreeGradedComplex,
    twist: &DivisorClass,
    opts: &WeymanOptions,
    seed: u64,
) -> Result<(SparsePoly, WeymanComplex, IndexSubsets), ResultantError> {
    let twisted = cx.twist(twist)?;
    let w = weyman_differential(ctx, &twisted, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (det, subsets) = determinant_of_complex(&BasedComplex::from_weyman(&w), &mut rng)?;
    if det.is_zero() {
        return Err(ResultantError::Degenerate);
    }
    Ok((normalize(&det), w, subsets))
}

/// The A-resultant `Δ = h^m` of the generic system with the given supports.
pub fn a_resultant(prob: &ResultantProblem) -> Result<ResultantOutput, ResultantError> {
    let (k, _) = problem_koszul(prob)?;
    a_resultant_with(&CechContext::new(k.toric), prob)
}

/// As [`a_resultant`], reusing a context (and its strand cache).
pub fn a_resultant_with(ctx: &CechContext, prob: &ResultantProblem) -> Result<ResultantOutput, ResultantError> {
    let (k, _) = problem_koszul(prob)?;
    if k.toric.rays != ctx.toric.rays || k.toric.max_cones != ctx.toric.max_cones {
        return Err(ResultantError::Invalid("context belongs to a different toric variety".into()));
    }
    let twist = prob.twist.resolve(&k.toric)?;
    let opts = WeymanOptions { policy: prob.policy, e: prob.e.clone() };
    let (delta, w, subsets) = resultant_of_complex(ctx, &k, &twist, &opts, prob.seed)?;
    let (m, root) = perfect_power(&delta);
    let eliminant = if m > 1 { normalize(&root) } else { delta.clone() };
    let term_ranks = w.terms.keys().map(|&i| (i, w.rank(i))).filter(|(_, r)| *r > 0).collect();
    Ok(ResultantOutput {
        delta,
        multiplicity: m,
        eliminant,
        report: ComplexReport { term_ranks, page: w.page.clone(), subsets, twist, e: w.common_e.clone() },
    })
}
