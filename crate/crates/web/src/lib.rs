//! Browser bindings: three operations on a problem file given as JSON text.
//! Each returns JSON text or throws the error message.

use serde::Serialize;
use wasm_bindgen::prelude::*;
use weyman::cech::CechContext;
use weyman::complexes::generic_koszul;
use weyman::resultant::json::{ProblemFile, ResultantJson};
use weyman::resultant::{a_resultant_with, problem_koszul, ResultantProblem};
use weyman::toric::minkowski_sum;
use weyman::weyman::json::page_entries;
use weyman::weyman::{weyman_terms, WeymanOptions};

fn parse(text: &str) -> Result<ResultantProblem, String> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| format!("problem file: {e}"))?;
    file.to_problem().map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FanJson {
    pub dim: usize,
    /// Vertices of each support's convex hull, then of their Minkowski sum.
    pub hulls: Vec<Vec<Vec<i64>>>,
    pub sum: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub class_rank: usize,
    pub torsion: Vec<i64>,
    pub codimension: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PageJson {
    pub twist: Vec<i64>,
    pub term_ranks: Vec<(i64, usize)>,
    /// `(p, q, rank)` entries.
    pub e1_page: Vec<(i64, usize, usize)>,
}

/// Newton polytopes, their Minkowski sum and its normal fan.
pub fn fan_json(text: &str) -> Result<String, String> {
    let prob = parse(text)?;
    let (k, meta) = generic_koszul(&prob.supports).map_err(|e| e.to_string())?;
    let sum = minkowski_sum(&meta.hulls).map_err(|e| e.to_string())?;
    let x = &k.toric;
    to_json(&FanJson {
        dim: x.dim,
        hulls: meta.hulls.iter().map(|h| h.vertices.clone()).collect(),
        sum: sum.vertices,
        rays: x.rays.clone(),
        max_cones: x.max_cones.clone(),
        class_rank: x.class_rank,
        torsion: x.torsion.clone(),
        codimension: meta.codimension,
    })
}

/// Terms and first page of the Weyman complex of the twisted Koszul complex.
pub fn page_json(text: &str) -> Result<String, String> {
    let prob = parse(text)?;
    let (k, _) = problem_koszul(&prob).map_err(|e| e.to_string())?;
    let twist = prob.twist.resolve(&k.toric).map_err(|e| e.to_string())?;
    let c = k.twist(&twist).map_err(|e| e.to_string())?;
    let ctx = CechContext::new(k.toric.clone());
    let opts = WeymanOptions { policy: prob.policy, e: prob.e.clone() };
    let (terms, page) = weyman_terms(&ctx, &c, &opts).map_err(|e| e.to_string())?;
    to_json(&PageJson {
        twist: twist.0,
        term_ranks: terms
            .iter()
            .map(|(&i, t)| (i, t.iter().map(|s| s.dim).sum()))
            .filter(|(_, r)| *r > 0)
            .collect(),
        e1_page: page_entries(&page),
    })
}

pub fn resultant_json(text: &str) -> Result<String, String> {
    let prob = parse(text)?;
    let (k, _) = problem_koszul(&prob).map_err(|e| e.to_string())?;
    let out = a_resultant_with(&CechContext::new(k.toric.clone()), &prob).map_err(|e| e.to_string())?;
    to_json(&ResultantJson::from_output(&out))
}

#[wasm_bindgen]
pub fn fan(problem: &str) -> Result<String, JsError> {
    fan_json(problem).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = e1Page)]
pub fn e1_page(problem: &str) -> Result<String, JsError> {
    page_json(problem).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn resultant(problem: &str) -> Result<String, JsError> {
    resultant_json(problem).map_err(|e| JsError::new(&e))
}
