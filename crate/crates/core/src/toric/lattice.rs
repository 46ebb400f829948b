//! Lattice points of bounded rational polyhedra.

use num_integer::Integer;

use super::ToricError;

/// An inequality `coeffs . x + constant >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ineq {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl Ineq {
    pub fn new(coeffs: Vec<i64>, constant: i64) -> Self {
        Ineq { coeffs, constant }
    }

    fn normalized(mut self) -> Self {
        let g = self.coeffs.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g > 1 {
            for c in self.coeffs.iter_mut() {
                *c /= g;
            }
            // tighten: coeffs.x is a multiple of g
            self.constant = Integer::div_floor(&self.constant, &g);
        }
        self
    }
}

/// Bounds on the first variable implied by the system (Fourier-Motzkin).
fn first_var_bounds(ineqs: &[Ineq]) -> Result<Option<(i64, i64)>, ToricError> {
    let n = ineqs.first().map_or(0, |i| i.coeffs.len());
    let mut cur: Vec<Ineq> = ineqs.to_vec();
    for var in (1..n).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for i in cur {
            match i.coeffs[var].signum() {
                1 => pos.push(i),
                -1 => neg.push(i),
                _ => rest.push(i),
            }
        }
        for p in &pos {
            for q in &neg {
                let a = p.coeffs[var];
                let b = -q.coeffs[var];
                let coeffs: Vec<i64> = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| b * x + a * y).collect();
                let combined = Ineq { coeffs, constant: b * p.constant + a * q.constant };
                // only the rational combination is valid here, so no tightening
                let g = combined.coeffs.iter().fold(combined.constant.abs(), |g, &c| g.gcd(&c));
                let combined = if g > 1 {
                    Ineq {
                        coeffs: combined.coeffs.iter().map(|c| c / g).collect(),
                        constant: combined.constant / g,
                    }
                } else {
                    combined
                };
                rest.push(combined);
            }
        }
        rest.sort_by(|a, b| (&a.coeffs, a.constant).cmp(&(&b.coeffs, b.constant)));
        rest.dedup();
        cur = rest;
        if cur.len() > 200_000 {
            return Err(ToricError::Resource("Fourier-Motzkin elimination grew too large".into()));
        }
    }
    let (mut lo, mut hi): (Option<i64>, Option<i64>) = (None, None);
    for i in &cur {
        let c = i.coeffs[0];
        if c > 0 {
            // x >= -constant / c
            let b = Integer::div_ceil(&(-i.constant), &c);
            lo = Some(lo.map_or(b, |l| l.max(b)));
        } else if c < 0 {
            // x <= constant / -c
            let b = Integer::div_floor(&i.constant, &(-c));
            hi = Some(hi.map_or(b, |h| h.min(b)));
        } else if i.constant < 0 {
            return Ok(None);
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => Ok((l <= h).then_some((l, h))),
        _ => Err(ToricError::Unbounded),
    }
}

fn substitute_first(ineqs: &[Ineq], value: i64) -> Vec<Ineq> {
    ineqs
        .iter()
        .map(|i| Ineq { coeffs: i.coeffs[1..].to_vec(), constant: i.constant + i.coeffs[0] * value }.normalized())
        .collect()
}

fn recurse(ineqs: &[Ineq], prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>, limit: usize) -> Result<(), ToricError> {
    let n = ineqs.first().map_or(0, |i| i.coeffs.len());
    if n == 0 {
        if ineqs.iter().all(|i| i.constant >= 0) {
            out.push(prefix.clone());
            if out.len() > limit {
                return Err(ToricError::Resource(format!("more than {limit} lattice points")));
            }
        }
        return Ok(());
    }
    let Some((lo, hi)) = first_var_bounds(ineqs)? else {
        return Ok(());
    };
    for v in lo..=hi {
        prefix.push(v);
        let sub = substitute_first(ineqs, v);
        recurse(&sub, prefix, out, limit)?;
        prefix.pop();
    }
    Ok(())
}

pub const DEFAULT_POINT_LIMIT: usize = 5_000_000;

/// All integer points of `{x : coeffs.x + constant >= 0}` in lexicographic order.
pub fn lattice_points(ineqs: &[Ineq], dim: usize) -> Result<Vec<Vec<i64>>, ToricError> {
    lattice_points_limited(ineqs, dim, DEFAULT_POINT_LIMIT)
}

pub fn lattice_points_limited(ineqs: &[Ineq], dim: usize, limit: usize) -> Result<Vec<Vec<i64>>, ToricError> {
    if ineqs.iter().any(|i| i.coeffs.len() != dim) {
        return Err(ToricError::Dimension("inequality length differs from the dimension".into()));
    }
    if dim == 0 {
        return Ok(if ineqs.iter().all(|i| i.constant >= 0) { vec![vec![]] } else { vec![] });
    }
    if ineqs.is_empty() {
        return Err(ToricError::Unbounded);
    }
    let norm: Vec<Ineq> = ineqs.iter().cloned().map(Ineq::normalized).collect();
    let mut out = Vec::new();
    recurse(&norm, &mut Vec::with_capacity(dim), &mut out, limit)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square() {
        let ineqs = vec![
            Ineq::new(vec![1, 0], 0),
            Ineq::new(vec![0, 1], 0),
            Ineq::new(vec![-1, 0], 1),
            Ineq::new(vec![0, -1], 1),
        ];
        assert_eq!(lattice_points(&ineqs, 2).unwrap().len(), 4);
    }

    #[test]
    fn doubled_simplex() {
        let ineqs = vec![Ineq::new(vec![1, 0], 0), Ineq::new(vec![0, 1], 0), Ineq::new(vec![-1, -1], 2)];
        assert_eq!(lattice_points(&ineqs, 2).unwrap().len(), 6);
    }

    #[test]
    fn unbounded_is_error() {
        let ineqs = vec![Ineq::new(vec![1, 0], 0), Ineq::new(vec![0, 1], 0)];
        assert!(matches!(lattice_points(&ineqs, 2), Err(ToricError::Unbounded)));
    }

    #[test]
    fn empty_polytope() {
        let ineqs = vec![Ineq::new(vec![2], -1), Ineq::new(vec![-2], 1)];
        assert!(lattice_points(&ineqs, 1).unwrap().is_empty());
    }
}
