//! Convex hulls of lattice point sets and Minkowski sums.

use serde::{Deserialize, Serialize};

use super::linalg::{dot, nullspace, primitive, rank};
use super::ToricError;

/// A finite point set with one coefficient label per point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportSet {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    pub labels: Vec<String>,
}

/// Auto-generated coefficient name for point `nu` of support `i`, e.g.
/// `a1_m2_4_6` for support 1 and point (-2, 4, 6).
pub fn auto_label(i: usize, nu: &[i64]) -> String {
    let mut s = format!("a{i}");
    for &x in nu {
        if x < 0 {
            s.push_str(&format!("_m{}", -x));
        } else {
            s.push_str(&format!("_{x}"));
        }
    }
    s
}

impl SupportSet {
    pub fn new(index: usize, points: Vec<Vec<i64>>) -> Result<Self, ToricError> {
        let labels = points.iter().map(|p| auto_label(index, p)).collect();
        Self::with_labels(points, labels)
    }

    pub fn with_labels(points: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self, ToricError> {
        let dim = points.first().map(|p| p.len()).ok_or(ToricError::EmptySupport)?;
        if points.iter().any(|p| p.len() != dim) {
            return Err(ToricError::Dimension("support points of different lengths".into()));
        }
        if labels.len() != points.len() {
            return Err(ToricError::Dimension("one label per point is required".into()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(ToricError::DuplicatePoint(points[i].clone()));
                }
            }
        }
        Ok(SupportSet { dim, points, labels })
    }
}

/// Inner facet `<x, normal> >= -offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// A lattice polytope in V- and H-representation. Lower-dimensional
/// polytopes carry `equations` (`<x, u> = c`) that span the orthogonal
/// complement of their affine hull; `facets` are then relative facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
    pub equations: Vec<(Vec<i64>, i64)>,
}

impl LatticePolytope {
    pub fn affine_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// `-min <v, u>` over the vertices.
    pub fn support_offset(&self, u: &[i64]) -> i64 {
        -self.vertices.iter().map(|v| dot(v, u)).min().expect("polytope without vertices")
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|(u, c)| dot(x, u) == *c)
            && self.facets.iter().all(|f| dot(x, &f.normal) >= -f.offset)
    }

    pub fn translate(&self, t: &[i64]) -> LatticePolytope {
        let shift = |v: &Vec<i64>| v.iter().zip(t).map(|(a, b)| a + b).collect::<Vec<_>>();
        LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(shift).collect(),
            facets: self.facets.iter().map(|f| Facet { normal: f.normal.clone(), offset: f.offset - dot(t, &f.normal) }).collect(),
            equations: self.equations.iter().map(|(u, c)| (u.clone(), c + dot(t, u))).collect(),
        }
    }
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Convex hull of a finite point set.
pub fn hull_of_points(points: &[Vec<i64>]) -> Result<LatticePolytope, ToricError> {
    let dim = points.first().map(|p| p.len()).ok_or(ToricError::EmptySupport)?;
    let mut pts: Vec<Vec<i64>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let base = &pts[0];
    let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let k = rank(&diffs);
    let eq_normals = nullspace(&diffs, dim);
    debug_assert_eq!(eq_normals.len(), dim - k);
    let equations: Vec<(Vec<i64>, i64)> = eq_normals.iter().map(|u| (u.clone(), dot(base, u))).collect();

    let mut facets: Vec<Facet> = Vec::new();
    if k > 0 {
        // a relative facet is spanned by k affinely independent points
        combinations(pts.len(), k, |idx| {
            let p0 = &pts[idx[0]];
            let mut rows: Vec<Vec<i64>> =
                idx[1..].iter().map(|&i| pts[i].iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
            rows.extend(eq_normals.iter().cloned());
            let ns = nullspace(&rows, dim);
            if ns.len() != 1 {
                return;
            }
            let u = primitive(&ns[0]);
            let c = dot(p0, &u);
            let vals: Vec<i64> = pts.iter().map(|p| dot(p, &u)).collect();
            let (mn, mx) = (*vals.iter().min().unwrap(), *vals.iter().max().unwrap());
            if mn == c {
                facets.push(Facet { normal: u.clone(), offset: -c });
            }
            if mx == c {
                facets.push(Facet { normal: u.iter().map(|x| -x).collect(), offset: c });
            }
        });
    }
    facets.sort();
    facets.dedup();

    let vertices: Vec<Vec<i64>> = pts
        .iter()
        .filter(|p| {
            let mut rows: Vec<Vec<i64>> =
                facets.iter().filter(|f| dot(p, &f.normal) == -f.offset).map(|f| f.normal.clone()).collect();
            rows.extend(eq_normals.iter().cloned());
            rank(&rows) == dim
        })
        .cloned()
        .collect();
    Ok(LatticePolytope { dim, vertices, facets, equations })
}

pub fn hull_and_facets(a: &SupportSet) -> Result<LatticePolytope, ToricError> {
    hull_of_points(&a.points)
}

pub fn minkowski_sum(ps: &[LatticePolytope]) -> Result<LatticePolytope, ToricError> {
    let first = ps.first().ok_or(ToricError::EmptySupport)?;
    let dim = first.dim;
    if ps.iter().any(|p| p.dim != dim) {
        return Err(ToricError::Dimension("Minkowski summands of different dimensions".into()));
    }
    let mut acc: Vec<Vec<i64>> = first.vertices.clone();
    for p in &ps[1..] {
        let mut next = Vec::with_capacity(acc.len() * p.vertices.len());
        for a in &acc {
            for b in &p.vertices {
                next.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        // prune to the vertices of the partial sum
        acc = hull_of_points(&next)?.vertices;
    }
    hull_of_points(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_simplex() {
        let p = hull_of_points(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(p.facets.len(), 3);
        assert_eq!(p.vertices.len(), 3);
        assert!(p.is_full_dimensional());
    }

    #[test]
    fn segment_in_plane() {
        let p = hull_of_points(&[vec![3, 0], vec![1, 1]]).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices.len(), 2);
        assert_eq!(p.facets.len(), 2);
        assert!(p.contains(&[1, 1]) && p.contains(&[3, 0]));
        assert!(!p.contains(&[2, 0]));
    }

    #[test]
    fn single_point() {
        let p = hull_of_points(&[vec![4, -1, 2]]).unwrap();
        assert_eq!(p.affine_dim(), 0);
        assert!(p.facets.is_empty());
        assert_eq!(p.equations.len(), 3);
    }

    #[test]
    fn interior_points_are_not_vertices() {
        let p = hull_of_points(&[vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(p.vertices.len(), 3);
    }

    #[test]
    fn segments_sum_to_square() {
        let a = hull_of_points(&[vec![0, 0], vec![1, 0]]).unwrap();
        let b = hull_of_points(&[vec![0, 0], vec![0, 1]]).unwrap();
        let s = minkowski_sum(&[a, b]).unwrap();
        assert_eq!(s.vertices.len(), 4);
        assert_eq!(s.facets.len(), 4);
    }

    #[test]
    fn adding_a_point_translates() {
        let a = hull_of_points(&[vec![0, 0], vec![2, 0], vec![0, 1]]).unwrap();
        let pt = hull_of_points(&[vec![5, -3]]).unwrap();
        let s = minkowski_sum(&[a.clone(), pt]).unwrap();
        assert_eq!(s, a.translate(&[5, -3]));
    }

    #[test]
    fn labels() {
        assert_eq!(auto_label(1, &[-2, 4, 6]), "a1_m2_4_6");
    }
}
