//! JSON form of Weyman complexes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{E1Page, Summand, WeymanComplex};
use crate::complexes::json::MatrixJson;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SummandJson {
    pub p: i64,
    pub q: usize,
    pub k: usize,
    pub dim: usize,
    pub offset: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct WeymanJson {
    /// Parameter variables, in the order used by the polynomial entries.
    pub params: Vec<String>,
    /// `(p, q, rank)` for every nonzero entry of the first page.
    pub e1_page: Vec<(i64, usize, usize)>,
    pub term_ranks: BTreeMap<i64, usize>,
    pub terms: BTreeMap<i64, Vec<SummandJson>>,
    pub differentials: BTreeMap<i64, MatrixJson>,
    pub common_e: Vec<u32>,
}

impl WeymanJson {
    pub fn from_complex(w: &WeymanComplex) -> Self {
        WeymanJson {
            params: w.ring.vars().to_vec(),
            e1_page: page_entries(&w.page),
            term_ranks: w.terms.keys().map(|&i| (i, w.rank(i))).collect(),
            terms: w
                .terms
                .iter()
                .map(|(&i, ss)| (i, ss.iter().map(SummandJson::from).collect()))
                .collect(),
            differentials: w.differentials.iter().map(|(&i, d)| (i, MatrixJson::from_matrix(d))).collect(),
            common_e: w.common_e.clone(),
        }
    }
}

impl From<&Summand> for SummandJson {
    fn from(s: &Summand) -> Self {
        SummandJson { p: s.p, q: s.q, k: s.k, dim: s.dim, offset: s.offset }
    }
}

pub fn page_entries(page: &E1Page) -> Vec<(i64, usize, usize)> {
    page.entries.iter().filter(|(_, &v)| v > 0).map(|(&(p, q), &v)| (p, q, v)).collect()
}

pub fn page_from_entries(entries: &[(i64, usize, usize)]) -> E1Page {
    E1Page { entries: entries.iter().map(|&(p, q, v)| ((p, q), v)).collect() }
}
