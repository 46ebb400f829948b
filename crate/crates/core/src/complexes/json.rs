//! JSON form of complexes. Polynomials use the canonical text format over
//! the variables `x1..xr` followed by the parameters.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ComplexError, ComplexMorphism, FreeGradedComplex};
use crate::exactarith::{PolyMatrix, Ring, SparsePoly};
use crate::toric::{hull_of_points, normal_fan, DivisorClass, ToricData};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, polynomial)` for every nonzero entry.
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixJson {
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().map(|(&(i, j), p)| (i, j, p.to_string())).collect(),
        }
    }

    pub fn to_matrix(&self, ring: &Arc<Ring>) -> Result<PolyMatrix, ComplexError> {
        let mut m = PolyMatrix::zeros(ring, self.rows, self.cols);
        for (i, j, s) in &self.entries {
            if *i >= self.rows || *j >= self.cols {
                return Err(ComplexError::Format(format!("entry ({i},{j}) outside a {}x{} matrix", self.rows, self.cols)));
            }
            m.set(*i, *j, SparsePoly::parse(ring, s)?);
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    /// Full toric data, as written by this library.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricData>,
    /// Alternatively, the vertices of a full-dimensional polytope.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub params: Vec<String>,
    pub terms: BTreeMap<i64, Vec<Vec<i64>>>,
    #[serde(default)]
    pub differentials: BTreeMap<i64, MatrixJson>,
}

impl ComplexJson {
    pub fn from_complex(c: &FreeGradedComplex) -> Self {
        ComplexJson {
            toric: Some((*c.toric).clone()),
            polytope: None,
            params: c.params.clone(),
            terms: c.terms.iter().map(|(&p, t)| (p, t.iter().map(|a| a.0.clone()).collect())).collect(),
            differentials: c.differentials.iter().map(|(&p, m)| (p, MatrixJson::from_matrix(m))).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<FreeGradedComplex, ComplexError> {
        let toric = match (&self.toric, &self.polytope) {
            (Some(t), _) => t.clone(),
            (None, Some(v)) => normal_fan(&hull_of_points(v)?)?,
            (None, None) => return Err(ComplexError::Format("either \"toric\" or \"polytope\" is required".into())),
        };
        let toric = Arc::new(toric);
        let mut c = FreeGradedComplex::new(toric.clone(), self.params.clone());
        for (&p, t) in &self.terms {
            let classes = t
                .iter()
                .map(|a| {
                    if a.len() != toric.class_len() {
                        return Err(ComplexError::Format(format!(
                            "term {p}: class {a:?} should have {} entries",
                            toric.class_len()
                        )));
                    }
                    Ok(toric.normalize_class(&DivisorClass(a.clone()))?)
                })
                .collect::<Result<_, _>>()?;
            c.terms.insert(p, classes);
        }
        for (&p, m) in &self.differentials {
            let mat = m.to_matrix(&c.ring)?;
            if mat.rows() != c.rank(p + 1) || mat.cols() != c.rank(p) {
                return Err(ComplexError::Format(format!("differential {p} has the wrong shape")));
            }
            c.differentials.insert(p, mat);
        }
        Ok(c)
    }
}

pub fn complex_to_json(c: &FreeGradedComplex) -> String {
    serde_json::to_string_pretty(&ComplexJson::from_complex(c)).expect("complex serializes")
}

pub fn complex_from_json(s: &str) -> Result<FreeGradedComplex, ComplexError> {
    let j: ComplexJson = serde_json::from_str(s).map_err(|e| ComplexError::Format(e.to_string()))?;
    j.to_complex()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: ComplexJson,
    pub target: ComplexJson,
    pub maps: BTreeMap<i64, MatrixJson>,
}

impl MorphismJson {
    pub fn from_morphism(m: &ComplexMorphism) -> Self {
        MorphismJson {
            source: ComplexJson::from_complex(&m.source),
            target: ComplexJson::from_complex(&m.target),
            maps: m.maps.iter().map(|(&p, x)| (p, MatrixJson::from_matrix(x))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{cotangent_family_complex, projective_space};
    use crate::exactarith::Ring;

    #[test]
    fn round_trip() {
        let r = Ring::new(["x1", "x2", "x3", "a", "b"]);
        let f = SparsePoly::parse(&r, "a*x1^2 + b*x2*x3").unwrap();
        let c = cotangent_family_complex(2, 2, &f).unwrap();
        let s = complex_to_json(&c);
        let back = complex_from_json(&s).unwrap();
        assert_eq!(back.terms, c.terms);
        assert_eq!(back.differentials, c.differentials);
        assert_eq!(complex_to_json(&back), s);
    }

    #[test]
    fn polytope_input() {
        let s = r#"{"polytope": [[0,0],[1,0],[0,1]], "terms": {"0": [[0]]}}"#;
        let c = complex_from_json(s).unwrap();
        assert_eq!(*c.toric, *projective_space(2));
        assert_eq!(c.rank(0), 1);
    }
}
