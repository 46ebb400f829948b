//! Implicit equations of rational plane curves.

use std::sync::Arc;

use super::{normalize, resultant_of_complex, ResultantError};
use crate::cech::CechContext;
use crate::complexes::koszul::koszul_from_polys;
use crate::complexes::projective_space;
use crate::exactarith::{Ring, SparsePoly};
use crate::toric::DivisorClass;
use crate::weyman::WeymanOptions;

/// Implicit equation of the curve `(s:t) ↦ (f0 : f1 : f2)` in the affine
/// chart `u = f1/f0`, `v = f2/f0`.
///
/// The forms live in a ring whose first two variables are `s, t`; the
/// remaining variables are parameters. The result is over the ring
/// `u, v, params`.
pub fn implicitize_curve(forms: [&SparsePoly; 3], seed: u64) -> Result<SparsePoly, ResultantError> {
    let ring = forms[0].ring().clone();
    if ring.nvars() < 2 || forms.iter().any(|f| f.ring().vars() != ring.vars()) {
        return Err(ResultantError::Invalid("forms must share a ring starting with s, t".into()));
    }
    let d = forms[0].leading_term().map_or(0, |(m, _)| (m.0[0] + m.0[1]) as u64);
    for f in forms {
        if f.is_zero() || f.terms().any(|(m, _)| (m.0[0] + m.0[1]) as u64 != d) {
            return Err(ResultantError::Invalid("forms must be nonzero and homogeneous of one degree in s, t".into()));
        }
    }
    if d == 0 {
        return Err(ResultantError::Invalid("forms must have positive degree".into()));
    }
    let params: Vec<String> =
        ["u".to_string(), "v".to_string()].into_iter().chain(ring.vars()[2..].iter().cloned()).collect();
    let x = projective_space(1);
    let sr: Arc<Ring> = crate::complexes::cox_param_ring(2, &params);
    // s, t ↦ x1, x2 and parameters keep their names
    let images: Vec<SparsePoly> = (0..ring.nvars())
        .map(|i| if i < 2 { SparsePoly::var(&sr, i) } else { SparsePoly::var_named(&sr, &ring.vars()[i]).unwrap() })
        .collect();
    let f: Vec<SparsePoly> = forms.iter().map(|p| p.substitute(&images, &sr)).collect::<Result<_, _>>()?;
    let u = SparsePoly::var_named(&sr, "u").unwrap();
    let v = SparsePoly::var_named(&sr, "v").unwrap();
    let g1 = &(&f[0] * &u) - &f[1];
    let g2 = &(&f[0] * &v) - &f[2];
    let class = DivisorClass(vec![d as i64]);
    let k = koszul_from_polys(x.clone(), params, &[g1, g2], &[class.clone(), class])?;
    let ctx = CechContext::new(x.clone());
    let twist = x.anticanonical().scale(2);
    let (det, _, _) = resultant_of_complex(&ctx, &k, &twist, &WeymanOptions::default(), seed)?;
    Ok(normalize(&det))
}
