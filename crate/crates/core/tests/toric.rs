use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use weyman::exactarith::snf::solve_integer;
use weyman::fixtures;
use weyman::toric::*;

fn sturmfels_supports() -> Vec<SupportSet> {
    fixtures::STURMFELS_SUPPORTS
        .iter()
        .enumerate()
        .map(|(i, pts)| SupportSet::new(i, pts.iter().map(|p| p.to_vec()).collect()).unwrap())
        .collect()
}

fn sturmfels_variety() -> (Vec<LatticePolytope>, ToricData) {
    let hulls: Vec<LatticePolytope> = sturmfels_supports().iter().map(|a| hull_and_facets(a).unwrap()).collect();
    let q = minkowski_sum(&hulls).unwrap();
    (hulls, normal_fan(&q).unwrap())
}

#[test]
fn sturmfels_rays_are_the_published_ones() {
    let (_, x) = sturmfels_variety();
    let mut published: Vec<Vec<i64>> = fixtures::STURMFELS_RAYS_PUBLISHED.iter().map(|r| r.to_vec()).collect();
    published.sort();
    assert_eq!(x.rays, published);
    assert_eq!(x.class_rank, 6);
    assert!(x.torsion.is_empty());
}

#[test]
fn sturmfels_grading_agrees_with_published_up_to_basis_change() {
    let (_, x) = sturmfels_variety();
    // published grading columns, moved to our ray order
    let mut cols = vec![vec![0i64; 6]; 8];
    for (var, &pub_ray) in fixtures::STURMFELS_GRADING_RAY.iter().enumerate() {
        let ray = fixtures::STURMFELS_RAYS_PUBLISHED[pub_ray].to_vec();
        let ours = x.rays.iter().position(|r| *r == ray).unwrap();
        cols[ours] = fixtures::STURMFELS_GRADING_PUBLISHED[var].to_vec();
    }
    // it annihilates the rays
    for j in 0..2 {
        for i in 0..6 {
            assert_eq!((0..8).map(|r| cols[r][i] * x.rays[r][j]).sum::<i64>(), 0);
        }
    }
    // and its row lattice equals ours: each published row is an integer
    // combination of our rows and vice versa
    let ours_t: Vec<Vec<i64>> = (0..8).map(|r| x.grading.iter().map(|row| row[r]).collect()).collect();
    let pub_t: Vec<Vec<i64>> = cols.clone();
    for i in 0..6 {
        let target: Vec<i64> = (0..8).map(|r| cols[r][i]).collect();
        assert!(solve_integer(&ours_t, &target).unwrap().is_some());
        let target: Vec<i64> = (0..8).map(|r| x.grading[i][r]).collect();
        assert!(solve_integer(&pub_t, &target).unwrap().is_some());
    }
}

#[test]
fn segment_points_share_a_class() {
    let (hulls, x) = sturmfels_variety();
    let (class, res) = divisor_class_and_homogenize(&hulls[2], &x).unwrap();
    let e1 = res(&[3, 0]);
    let e2 = res(&[1, 1]);
    assert!(e1.iter().chain(&e2).all(|&v| v >= 0));
    assert_eq!(x.class_of(&e1), class);
    assert_eq!(x.class_of(&e2), class);
    assert_ne!(e1, e2);
}

#[test]
fn homogenization_is_injective_and_degree_constant() {
    let (hulls, x) = sturmfels_variety();
    for p in &hulls {
        let (class, res) = divisor_class_and_homogenize(p, &x).unwrap();
        let ineqs: Vec<Ineq> = p
            .facets
            .iter()
            .map(|f| Ineq::new(f.normal.clone(), f.offset))
            .chain(p.equations.iter().flat_map(|(u, c)| {
                [Ineq::new(u.clone(), -c), Ineq::new(u.iter().map(|v| -v).collect(), *c)]
            }))
            .collect();
        let pts = lattice_points(&ineqs, 2).unwrap();
        let imgs: Vec<Vec<i64>> = pts.iter().map(|p| res(p)).collect();
        for (i, e) in imgs.iter().enumerate() {
            assert!(e.iter().all(|&v| v >= 0));
            assert_eq!(x.class_of(e), class);
            assert!(!imgs[..i].contains(e));
        }
    }
}

#[test]
fn translation_changes_homogenization_by_a_monomial() {
    let (hulls, x) = sturmfels_variety();
    let p = &hulls[0];
    let t = [2, -5];
    let (c1, r1) = divisor_class_and_homogenize(p, &x).unwrap();
    let (c2, r2) = divisor_class_and_homogenize(&p.translate(&t), &x).unwrap();
    assert_eq!(c1, c2);
    let nu = [1, 3];
    let moved = [nu[0] + t[0], nu[1] + t[1]];
    assert_eq!(r1(&nu), r2(&moved));
}

#[test]
fn fan_is_complete() {
    let (_, x) = sturmfels_variety();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let v = [rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000)];
        if v == [0, 0] {
            continue;
        }
        let cones = x.cone_containing(&v);
        let on_ray = x.rays.iter().any(|u| u[0] * v[1] - u[1] * v[0] == 0 && u[0] * v[0] + u[1] * v[1] > 0);
        if !on_ray {
            assert_eq!(cones.len(), 1, "direction {v:?}");
        }
    }
}

#[test]
fn sturmfels_codimension_is_one() {
    assert_eq!(codimension(&sturmfels_supports()), 1);
}

fn small_support(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::btree_set(prop::collection::vec(-3i64..=3, dim), 1..=4).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_points_match_box_scan(pts in small_support(2).prop_filter("full", |p| p.len() >= 3)) {
        let p = hull_of_points(&pts).unwrap();
        prop_assume!(p.is_full_dimensional());
        let ineqs: Vec<Ineq> = p.facets.iter().map(|f| Ineq::new(f.normal.clone(), f.offset)).collect();
        let found = lattice_points(&ineqs, 2).unwrap();
        let mut scan = Vec::new();
        for a in -3..=3 {
            for b in -3..=3 {
                if p.contains(&[a, b]) {
                    scan.push(vec![a, b]);
                }
            }
        }
        prop_assert_eq!(found, scan);
    }

    #[test]
    fn codimension_is_translation_and_unimodular_invariant(
        sets in prop::collection::vec(small_support(2), 3),
        shifts in prop::collection::vec(prop::collection::vec(-5i64..=5, 2), 3),
        k in -3i64..=3,
    ) {
        let mk = |f: &dyn Fn(usize, &Vec<i64>) -> Vec<i64>| -> Vec<SupportSet> {
            sets.iter().enumerate().map(|(i, s)| SupportSet::new(i, s.iter().map(|p| f(i, p)).collect()).unwrap()).collect()
        };
        let base = codimension(&mk(&|_, p| p.clone()));
        let moved = codimension(&mk(&|i, p| vec![p[0] + shifts[i][0], p[1] + shifts[i][1]]));
        let sheared = codimension(&mk(&|_, p| vec![p[0] + k * p[1], p[1]]));
        prop_assert_eq!(base, moved);
        prop_assert_eq!(base, sheared);
    }

    #[test]
    fn grading_annihilates_rays(pts in small_support(2).prop_filter("full", |p| p.len() >= 3)) {
        let p = hull_of_points(&pts).unwrap();
        prop_assume!(p.is_full_dimensional());
        let x = normal_fan(&p).unwrap();
        for (i, row) in x.grading.iter().enumerate() {
            // torsion rows only vanish modulo their order
            let modulus = x.torsion.get(i).copied().unwrap_or(0);
            for j in 0..2 {
                let s = (0..x.nrays()).map(|r| row[r] * x.rays[r][j]).sum::<i64>();
                if modulus == 0 {
                    prop_assert_eq!(s, 0);
                } else {
                    prop_assert_eq!(s.rem_euclid(modulus), 0);
                }
            }
        }
    }
}
