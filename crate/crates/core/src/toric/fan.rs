//! Normal fans, Cox gradings and divisor classes.

use serde::{Deserialize, Serialize};

use super::linalg::{dot, rank};
use super::polytope::{LatticePolytope, SupportSet};
use super::ToricError;
use crate::exactarith::snf::{mat_vec, smith_normal_form};

/// Coordinates of a class in Cl(X): torsion components (reduced modulo the
/// torsion orders of the toric data) followed by free components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| k * a).collect())
    }
}

/// The toric variety of a full-dimensional lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricData {
    pub dim: usize,
    /// Primitive inner facet normals, sorted lexicographically.
    pub rays: Vec<Vec<i64>>,
    /// Ray indices of each maximal cone, one cone per polytope vertex.
    pub max_cones: Vec<Vec<usize>>,
    /// The polytope vertex of each maximal cone.
    pub cone_vertices: Vec<Vec<i64>>,
    /// Column `rho` is the class of the Cox variable `x_rho`.
    pub grading: Vec<Vec<i64>>,
    /// Orders of the torsion summands of Cl(X).
    pub torsion: Vec<i64>,
    pub class_rank: usize,
    snf_left: Vec<Vec<i64>>,
    snf_left_inv: Vec<Vec<i64>>,
    snf_diag: Vec<i64>,
}

impl ToricData {
    pub fn nrays(&self) -> usize {
        self.rays.len()
    }

    pub fn ncones(&self) -> usize {
        self.max_cones.len()
    }

    /// Number of class coordinates (torsion and free).
    pub fn class_len(&self) -> usize {
        self.torsion.len() + self.class_rank
    }

    /// Bitmask over rays of the variables in the irrelevant generator of cone `k`.
    pub fn irrelevant_mask(&self, k: usize) -> u64 {
        let mut m = 0u64;
        for rho in 0..self.nrays() {
            if !self.max_cones[k].contains(&rho) {
                m |= 1 << rho;
            }
        }
        m
    }

    /// Exponent vectors of the irrelevant generators, one per maximal cone.
    pub fn irrelevant_gens(&self) -> Vec<Vec<u32>> {
        (0..self.ncones())
            .map(|k| (0..self.nrays()).map(|rho| (!self.max_cones[k].contains(&rho)) as u32).collect())
            .collect()
    }

    /// Class of the torus-invariant divisor `sum d_rho D_rho`.
    pub fn class_of(&self, d: &[i64]) -> DivisorClass {
        assert_eq!(d.len(), self.nrays());
        let y = mat_vec(&self.snf_left, d);
        let n = self.dim;
        let mut out = Vec::with_capacity(self.class_len());
        for (i, &di) in self.snf_diag.iter().enumerate() {
            if di > 1 {
                out.push(y[i].rem_euclid(di));
            }
        }
        out.extend_from_slice(&y[n..]);
        DivisorClass(out)
    }

    /// A torus-invariant divisor in the given class.
    pub fn representative(&self, c: &DivisorClass) -> Result<Vec<i64>, ToricError> {
        if c.0.len() != self.class_len() {
            return Err(ToricError::Dimension(format!(
                "class vector has length {}, expected {}",
                c.0.len(),
                self.class_len()
            )));
        }
        let mut y = vec![0i64; self.nrays()];
        let mut t = 0;
        for (i, &di) in self.snf_diag.iter().enumerate() {
            if di > 1 {
                y[i] = c.0[t];
                t += 1;
            }
        }
        y[self.dim..].copy_from_slice(&c.0[t..]);
        Ok(mat_vec(&self.snf_left_inv, &y))
    }

    pub fn normalize_class(&self, c: &DivisorClass) -> Result<DivisorClass, ToricError> {
        Ok(self.class_of(&self.representative(c)?))
    }

    pub fn zero_class(&self) -> DivisorClass {
        DivisorClass(vec![0; self.class_len()])
    }

    /// Class of `-K_X = sum D_rho`.
    pub fn anticanonical(&self) -> DivisorClass {
        self.class_of(&vec![1; self.nrays()])
    }

    /// Degree of a Cox monomial.
    pub fn degree_of_exponent(&self, e: &[i64]) -> DivisorClass {
        self.class_of(e)
    }

    /// Maximal cones containing `v`.
    pub fn cone_containing(&self, v: &[i64]) -> Vec<usize> {
        (0..self.ncones())
            .filter(|&k| {
                // v lies in the cone of vertex w iff w minimizes <x, v> over Q
                let w = &self.cone_vertices[k];
                let val = dot(w, v);
                self.cone_vertices.iter().all(|x| dot(x, v) >= val)
            })
            .collect()
    }

    /// Ray matrix (one row per ray).
    pub fn ray_matrix(&self) -> Vec<Vec<i64>> {
        self.rays.clone()
    }
}

pub fn normal_fan(q: &LatticePolytope) -> Result<ToricData, ToricError> {
    if !q.is_full_dimensional() {
        return Err(ToricError::NotFullDimensional);
    }
    let mut rays: Vec<Vec<i64>> = q.facets.iter().map(|f| f.normal.clone()).collect();
    rays.sort();
    rays.dedup();
    let mut verts = q.vertices.clone();
    verts.sort();
    let offsets: Vec<i64> = rays.iter().map(|u| q.support_offset(u)).collect();
    let max_cones: Vec<Vec<usize>> = verts
        .iter()
        .map(|v| (0..rays.len()).filter(|&r| dot(v, &rays[r]) == -offsets[r]).collect())
        .collect();
    if rays.len() > 63 {
        return Err(ToricError::Resource("more than 63 rays".into()));
    }
    let snf = smith_normal_form(&rays).map_err(|e| ToricError::Internal(e.to_string()))?;
    let n = q.dim;
    if rank(&rays) != n {
        return Err(ToricError::Internal("ray matrix is not of full rank".into()));
    }
    let mut snf = snf;
    // orient each free class coordinate so the anticanonical class is positive
    for i in n..rays.len() {
        let row = &snf.left[i];
        let total: i64 = row.iter().sum();
        let first = row.iter().copied().find(|&v| v != 0).unwrap_or(0);
        if total < 0 || (total == 0 && first < 0) {
            for v in snf.left[i].iter_mut() {
                *v = -*v;
            }
            for r in snf.left_inv.iter_mut() {
                r[i] = -r[i];
            }
        }
    }
    let torsion: Vec<i64> = snf.diagonal.iter().copied().filter(|&d| d > 1).collect();
    let class_rank = rays.len() - n;
    let mut t = ToricData {
        dim: n,
        rays,
        max_cones,
        cone_vertices: verts,
        grading: Vec::new(),
        torsion,
        class_rank,
        snf_left: snf.left,
        snf_left_inv: snf.left_inv,
        snf_diag: snf.diagonal,
    };
    let r = t.nrays();
    let cols: Vec<DivisorClass> = (0..r)
        .map(|rho| {
            let mut e = vec![0; r];
            e[rho] = 1;
            t.class_of(&e)
        })
        .collect();
    t.grading = (0..t.class_len()).map(|i| cols.iter().map(|c| c.0[i]).collect()).collect();
    Ok(t)
}

/// The divisor `D_P = sum a_rho D_rho` of a polytope whose normal fan is
/// refined by the fan of `x`.
pub fn polytope_divisor(p: &LatticePolytope, x: &ToricData) -> Result<Vec<i64>, ToricError> {
    if p.dim != x.dim {
        return Err(ToricError::Dimension("polytope and toric variety of different dimensions".into()));
    }
    if p.is_full_dimensional() {
        for f in &p.facets {
            if !x.rays.contains(&f.normal) {
                return Err(ToricError::RayMismatch(f.normal.clone()));
            }
        }
    }
    Ok(x.rays.iter().map(|u| p.support_offset(u)).collect())
}

/// Class of `D_P` and the homogenization map `nu -> (<nu, u_rho> + a_rho)_rho`.
pub fn divisor_class_and_homogenize(
    p: &LatticePolytope,
    x: &ToricData,
) -> Result<(DivisorClass, impl Fn(&[i64]) -> Vec<i64>), ToricError> {
    let a = polytope_divisor(p, x)?;
    let class = x.class_of(&a);
    let rays = x.rays.clone();
    let res = move |nu: &[i64]| rays.iter().zip(&a).map(|(u, ar)| dot(nu, u) + ar).collect::<Vec<i64>>();
    Ok((class, res))
}

/// Codimension of the resultant variety of the given supports: the maximum
/// over nonempty subsets J of |J| - rank(sum of the difference lattices of A_j).
pub fn codimension(supports: &[SupportSet]) -> usize {
    let lattices: Vec<Vec<Vec<i64>>> = supports
        .iter()
        .map(|a| {
            let base = &a.points[0];
            a.points[1..].iter().map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect()).collect()
        })
        .collect();
    let n = supports.len();
    assert!(n < 30, "too many supports for subset enumeration");
    let mut best = 0i64;
    for mask in 1u32..(1 << n) {
        let rows: Vec<Vec<i64>> = (0..n).filter(|j| mask >> j & 1 == 1).flat_map(|j| lattices[j].clone()).collect();
        let val = mask.count_ones() as i64 - rank(&rows) as i64;
        best = best.max(val);
    }
    best as usize
}

#[cfg(test)]
mod tests {
    use super::super::polytope::hull_of_points;
    use super::*;

    fn p2() -> ToricData {
        normal_fan(&hull_of_points(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap()).unwrap()
    }

    #[test]
    fn projective_plane() {
        let t = p2();
        assert_eq!(t.rays, vec![vec![-1, -1], vec![0, 1], vec![1, 0]]);
        assert_eq!(t.class_rank, 1);
        assert!(t.torsion.is_empty());
        assert_eq!(t.grading, vec![vec![1, 1, 1]]);
        assert_eq!(t.irrelevant_gens().len(), 3);
        for e in t.irrelevant_gens() {
            assert_eq!(e.iter().sum::<u32>(), 1);
        }
    }

    #[test]
    fn grading_kills_rays() {
        let t = p2();
        for row in &t.grading {
            for j in 0..2 {
                assert_eq!((0..3).map(|r| row[r] * t.rays[r][j]).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn square_is_p1xp1() {
        let t = normal_fan(&hull_of_points(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()).unwrap();
        assert_eq!(t.nrays(), 4);
        assert_eq!(t.class_rank, 2);
        assert_eq!(t.irrelevant_gens().len(), 4);
        // opposite rays share a class
        let i = |u: Vec<i64>| t.rays.iter().position(|r| *r == u).unwrap();
        let unit = |k: usize| {
            let mut e = vec![0; 4];
            e[k] = 1;
            t.class_of(&e)
        };
        assert_eq!(unit(i(vec![1, 0])), unit(i(vec![-1, 0])));
        assert_eq!(unit(i(vec![0, 1])), unit(i(vec![0, -1])));
        assert_ne!(unit(i(vec![1, 0])), unit(i(vec![0, 1])));
    }

    #[test]
    fn segment_is_rejected() {
        let seg = hull_of_points(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(matches!(normal_fan(&seg), Err(ToricError::NotFullDimensional)));
    }

    #[test]
    fn homogenization_on_p2() {
        let t = p2();
        let d = 3;
        let p = hull_of_points(&[vec![0, 0], vec![d, 0], vec![0, d]]).unwrap();
        let (class, res) = divisor_class_and_homogenize(&p, &t).unwrap();
        assert_eq!(class, t.anticanonical());
        // rays (-1,-1), (0,1), (1,0): the origin maps to x0^3
        assert_eq!(res(&[0, 0]), vec![3, 0, 0]);
        assert_eq!(res(&[1, 2]), vec![0, 2, 1]);
    }

    #[test]
    fn representative_round_trip() {
        let t = p2();
        for k in -3..=3 {
            let c = DivisorClass(vec![k]);
            assert_eq!(t.class_of(&t.representative(&c).unwrap()), c);
        }
    }

    #[test]
    fn codimension_examples() {
        let s = |i, pts: Vec<Vec<i64>>| SupportSet::new(i, pts).unwrap();
        assert_eq!(codimension(&[s(0, vec![vec![0]]), s(1, vec![vec![0]])]), 2);
        assert_eq!(codimension(&[s(0, vec![vec![0], vec![1]]), s(1, vec![vec![0], vec![1]])]), 1);
    }
}
