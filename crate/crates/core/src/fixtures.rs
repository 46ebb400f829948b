//! Reference problems with published answers.

/// Support sets of the plane example with three supports.
pub const STURMFELS_SUPPORTS: [&[[i64; 2]]; 3] = [&[[0, 0], [2, 2], [1, 3]], &[[0, 0], [2, 0], [1, 2]], &[[3, 0], [1, 1]]];

/// Coefficient names for [`STURMFELS_SUPPORTS`], in point order.
pub const STURMFELS_LABELS: [&[&str]; 3] = [&["a1", "a2", "a3"], &["b1", "b2", "b3"], &["c1", "c2"]];

/// The published eliminant for [`STURMFELS_SUPPORTS`].
pub const STURMFELS_ELIMINANT: &str = "a1^5*b3^7*c1^6*c2 + 3*a1^4*a2*b2^2*b3^5*c1^4*c2^3 + 3*a1^3*a2^2*b2^4*b3^3*c1^2*c2^5 - 13*a1^3*a2*a3*b1^2*b2*b3^4*c1^5*c2^2 - 7*a1^3*a3^2*b1*b2^3*b3^3*c1^4*c2^3 + 6*a1^2*a2^3*b1^3*b2*b3^3*c1^4*c2^3 + a1^2*a2^3*b2^6*b3*c2^7 - a1^2*a2^2*a3*b1^2*b2^3*b3^2*c1^3*c2^4 + 5*a1^2*a2*a3^2*b1^4*b3^3*c1^6*c2 - a1^2*a2*a3^2*b1*b2^5*b3*c1^2*c2^5 + 14*a1^2*a3^3*b1^3*b2^2*b3^2*c1^5*c2^2 + a1^2*a3^3*b2^7*c1*c2^6 - 2*a1*a2^4*b1^3*b2^3*b3*c1^2*c2^5 - 5*a1*a2^3*a3*b1^5*b3^2*c1^5*c2^2 + 2*a1*a2^2*a3^2*b1^4*b2^2*b3*c1^4*c2^3 - 2*a1*a2*a3^3*b1^3*b2^4*c1^3*c2^4 - 7*a1*a3^4*b1^5*b2*b3*c1^6*c2 + a2^5*b1^6*b3*c1^4*c2^3 + a2^2*a3^3*b1^6*b2*c1^5*c2^2 + a3^5*b1^7*c1^7";

/// Rays of the toric surface for [`STURMFELS_SUPPORTS`] in the published order.
pub const STURMFELS_RAYS_PUBLISHED: [[i64; 2]; 8] =
    [[-1, -2], [-2, -1], [-1, -1], [2, -1], [3, -1], [0, 1], [-1, 1], [1, 2]];

/// Published grading of the Cox variables, one column per variable, in an
/// order that differs from [`STURMFELS_RAYS_PUBLISHED`].
pub const STURMFELS_GRADING_PUBLISHED: [[i64; 6]; 8] = [
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 1, 2, 2, 3],
    [-1, 1, 0, -1, -1, -2],
    [1, -1, 2, 2, 0, 1],
];

/// `STURMFELS_RAYS_PUBLISHED[STURMFELS_GRADING_RAY[i]]` is the ray of the
/// variable graded by `STURMFELS_GRADING_PUBLISHED[i]`.
pub const STURMFELS_GRADING_RAY: [usize; 8] = [0, 7, 4, 3, 5, 2, 1, 6];

/// Published first page for the twist `(1, ..., 1)`: rows q = 2, 1, 0 and
/// columns p = -3..0.
pub const STURMFELS_E1: [[usize; 4]; 3] = [[15, 12, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]];

/// Stable twist class in the published grading basis.
pub const STURMFELS_STABLE_TWIST: [i64; 6] = [4, 7, 16, 12, 3, 2];

/// Supports of the three-dimensional example whose resultant is a 14th power.
pub const MULTIPLICITY_SUPPORTS: [&[[i64; 3]]; 4] = [
    &[[0, 0, 0], [0, 2, 4], [-2, 5, 8]],
    &[[-2, 4, 6], [1, 0, 1], [4, -4, -4]],
    &[[3, -3, -3], [0, 1, 2]],
    &[[0, 0, 0], [2, -4, -4]],
];

/// The published eliminant of [`MULTIPLICITY_SUPPORTS`] in auto-generated labels.
pub const MULTIPLICITY_ELIMINANT: &str =
    "a1_m2_4_6 * a2_3_m3_m3^2 - a1_1_0_1 * a2_3_m3_m3 * a2_0_1_2 + a1_4_m4_m4 * a2_0_1_2^2";

/// Published first page for [`MULTIPLICITY_SUPPORTS`]: rows q = 3, 2, 1, 0 and
/// columns p = -4..0.
pub const MULTIPLICITY_E1: [[usize; 5]; 4] =
    [[19, 20, 1, 0, 0], [0, 21, 21, 1, 0], [0, 0, 2, 2, 0], [0, 0, 0, 0, 1]];

/// Term ranks of the Weyman complex of the scalable family for `k = 1`,
/// twisted by `-2 K_X`, as `(degree, rank)`. Recorded from the explicit
/// unreduced Čech strands.
pub const SCALABLE_K1_RANKS: [(i64, usize); 4] = [(-2, 3), (-1, 50), (0, 56), (1, 9)];

/// Published term ranks for `k = 8`, read from the top degree down.
pub const SCALABLE_K8_RANKS: [usize; 3] = [8, 364, 356];

/// Supports of the scalable family with parameter `k`.
pub fn scalable_supports(k: i64) -> Vec<Vec<Vec<i64>>> {
    vec![
        vec![vec![0, 0], vec![0, 3 * k], vec![3, 2 * k]],
        vec![vec![1, 1], vec![2, 2], vec![k, 2 * k]],
        vec![vec![-1, 5], vec![-2, 2], vec![3, 0]],
    ]
}

/// Converts a class written in the published grading basis of the
/// [`STURMFELS_SUPPORTS`] surface into the coordinates of `x`.
pub fn sturmfels_class(
    x: &crate::toric::ToricData,
    published: &[i64],
) -> Result<crate::toric::DivisorClass, crate::exactarith::ArithError> {
    // grading matrix with columns in the ray order of `x`
    let mut g = vec![vec![0i64; x.nrays()]; published.len()];
    for (var, &pub_ray) in STURMFELS_GRADING_RAY.iter().enumerate() {
        let ray = STURMFELS_RAYS_PUBLISHED[pub_ray].to_vec();
        let ours = x.rays.iter().position(|r| *r == ray).ok_or(crate::exactarith::ArithError::Singular)?;
        for (i, row) in g.iter_mut().enumerate() {
            row[ours] = STURMFELS_GRADING_PUBLISHED[var][i];
        }
    }
    let d = crate::exactarith::snf::solve_integer(&g, published)?.ok_or(crate::exactarith::ArithError::Singular)?;
    Ok(x.class_of(&d))
}

/// Support sets of [`STURMFELS_SUPPORTS`] labelled by [`STURMFELS_LABELS`].
pub fn sturmfels_support_sets() -> Vec<crate::toric::SupportSet> {
    STURMFELS_SUPPORTS
        .iter()
        .zip(STURMFELS_LABELS)
        .map(|(pts, labels)| {
            crate::toric::SupportSet::with_labels(
                pts.iter().map(|p| p.to_vec()).collect(),
                labels.iter().map(|s| s.to_string()).collect(),
            )
            .expect("fixture supports are valid")
        })
        .collect()
}

/// Support sets of [`MULTIPLICITY_SUPPORTS`] with auto-generated labels.
pub fn multiplicity_support_sets() -> Vec<crate::toric::SupportSet> {
    MULTIPLICITY_SUPPORTS
        .iter()
        .enumerate()
        .map(|(i, pts)| {
            crate::toric::SupportSet::new(i, pts.iter().map(|p| p.to_vec()).collect()).expect("fixture supports are valid")
        })
        .collect()
}

/// Support sets of [`scalable_supports`] with auto-generated labels.
pub fn scalable_support_sets(k: i64) -> Vec<crate::toric::SupportSet> {
    scalable_supports(k)
        .into_iter()
        .enumerate()
        .map(|(i, pts)| crate::toric::SupportSet::new(i, pts).expect("fixture supports are valid"))
        .collect()
}
