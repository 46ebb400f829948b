//! Problem files and result documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{IndexSubsets, ResultantError, ResultantOutput, ResultantProblem, TwistSpec};
use crate::cech::PivotPolicy;
use crate::toric::SupportSet;
use crate::weyman::json::page_entries;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum SupportJson {
    Points(Vec<Vec<i64>>),
    Labelled { points: Vec<Vec<i64>>, labels: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum TwistJson {
    /// Only `"default"` is accepted.
    Keyword(String),
    Class(Vec<i64>),
    Divisor { divisor: Vec<i64> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub supports: Vec<SupportJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<PivotPolicy>,
}

impl TwistJson {
    pub fn to_spec(&self) -> Result<TwistSpec, ResultantError> {
        match self {
            TwistJson::Keyword(k) if k == "default" => Ok(TwistSpec::Default),
            TwistJson::Keyword(k) => Err(ResultantError::Invalid(format!("unknown twist keyword {k:?}"))),
            TwistJson::Class(c) => Ok(TwistSpec::Class(c.clone())),
            TwistJson::Divisor { divisor } => Ok(TwistSpec::Divisor(divisor.clone())),
        }
    }
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<ResultantProblem, ResultantError> {
        let supports = self
            .supports
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                SupportJson::Points(p) => SupportSet::new(i, p.clone()),
                SupportJson::Labelled { points, labels } => SupportSet::with_labels(points.clone(), labels.clone()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(d) = self.dim {
            if let Some(bad) = supports.iter().position(|s| s.dim != d) {
                return Err(ResultantError::Invalid(format!("supports[{bad}] has points of dimension {} but dim is {d}", supports[bad].dim)));
            }
        }
        let mut prob = ResultantProblem::new(supports);
        if let Some(t) = &self.twist {
            prob.twist = t.to_spec()?;
        }
        prob.e = self.e.clone();
        prob.seed = self.seed.unwrap_or(0);
        prob.policy = self.policy.unwrap_or_default();
        Ok(prob)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ReportJson {
    pub term_ranks: BTreeMap<i64, usize>,
    pub e1_page: Vec<(i64, usize, usize)>,
    pub index_subsets: IndexSubsets,
    pub twist: Vec<i64>,
    pub e: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ResultantJson {
    /// Coefficient variables of `delta` and `eliminant`.
    pub ring: Vec<String>,
    pub delta: String,
    pub delta_terms: usize,
    pub multiplicity: u32,
    pub eliminant: String,
    pub report: ReportJson,
}

impl ResultantJson {
    pub fn from_output(o: &ResultantOutput) -> Self {
        ResultantJson {
            ring: o.delta.ring().vars().to_vec(),
            delta: o.delta.to_string(),
            delta_terms: o.delta.num_terms(),
            multiplicity: o.multiplicity,
            eliminant: o.eliminant.to_string(),
            report: ReportJson {
                term_ranks: o.report.term_ranks.clone(),
                e1_page: page_entries(&o.report.page),
                index_subsets: o.report.subsets.clone(),
                twist: o.report.twist.0.clone(),
                e: o.report.e.clone(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_forms() {
        let text = r#"{"dim": 1, "supports": [[[0], [1]], {"points": [[0], [2]], "labels": ["p", "q"]}], "twist": "default", "seed": 4}"#;
        let f: ProblemFile = serde_json::from_str(text).unwrap();
        let p = f.to_problem().unwrap();
        assert_eq!(p.labels(), vec!["a0_0", "a0_1", "p", "q"]);
        assert_eq!(p.seed, 4);
        let back: ProblemFile = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        let bad: ProblemFile = serde_json::from_str(r#"{"supports": [[[0]]], "twist": "stable"}"#).unwrap();
        assert!(bad.to_problem().is_err());
        assert!(serde_json::from_str::<ProblemFile>(r#"{"supports": [], "colour": 1}"#).is_err());
    }
}
