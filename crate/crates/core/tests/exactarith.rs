use num_traits::Zero;
use proptest::prelude::*;
use std::sync::Arc;
use weyman::exactarith::rational::q;
use weyman::exactarith::snf::mat_mul;
use weyman::exactarith::*;
use weyman::fixtures;

fn ring3() -> Arc<Ring> {
    Ring::new(["x", "y", "z"])
}

fn poly_strategy(ring: Arc<Ring>, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::array::uniform3(0u32..3), -5i64..=5), 0..=max_terms).prop_map(move |ts| {
        SparsePoly::from_terms(&ring, ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e), q(c))))
    })
}

fn cofactor_det(m: &[Vec<SparsePoly>]) -> SparsePoly {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = SparsePoly::zero(&ring);
    for j in 0..n {
        let minor: Vec<Vec<SparsePoly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = &m[0][j] * &cofactor_det(&minor);
        total = if j % 2 == 0 { &total + &t } else { &total - &t };
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(
        a in poly_strategy(ring3(), 5),
        b in poly_strategy(ring3(), 5),
        c in poly_strategy(ring3(), 5),
    ) {
        // the strategies build separate rings with equal names
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn text_format_round_trips(a in poly_strategy(ring3(), 6)) {
        let back = SparsePoly::parse(a.ring(), &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(
        n in 1usize..=4,
        entries in prop::collection::vec(poly_strategy(ring3(), 2), 16),
    ) {
        let ring = entries[0].ring().clone();
        let rows: Vec<Vec<SparsePoly>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let m = PolyMatrix::from_dense(&ring, rows.clone()).unwrap();
        prop_assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&rows));
    }

    #[test]
    fn kth_root_inverts_power(p in poly_strategy(ring3(), 6), k in prop::sample::select(vec![2u32, 3, 5])) {
        prop_assume!(!p.is_zero());
        match kth_root_poly(&p.pow(k), k) {
            Root::Root(r) => prop_assert!(r == p || r == -&p),
            Root::NotAPower => prop_assert!(false, "power not recognized"),
        }
    }

    #[test]
    fn snf_reconstructs(m in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..=4)) {
        let s = smith_normal_form(&m).unwrap();
        let d = mat_mul(&mat_mul(&s.left, &m), &s.right);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                prop_assert_eq!(x, if i == j { s.diagonal[i] } else { 0 });
            }
        }
        for w in s.diagonal.windows(2) {
            prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        }
    }

    #[test]
    fn rref_certificate_holds(m in prop::collection::vec(prop::collection::vec(-3i64..=3, 7), 5)) {
        let rm = RationalMatrix::from_i64(&m);
        let c = rm.rref_with_certificate();
        prop_assert_eq!(c.row_ops.mul(&rm).unwrap(), c.reduced.clone());
        prop_assert!(!c.row_ops.determinant().unwrap().is_zero());
    }
}

#[test]
fn rank_three_rref() {
    // product of a 5x3 and a 3x7 integer matrix of full rank
    let a = RationalMatrix::from_i64(&[vec![1, 0, 2], vec![0, 1, 1], vec![3, -1, 0], vec![1, 1, 1], vec![2, 0, -1]]);
    let b = RationalMatrix::from_i64(&[
        vec![1, 2, 0, 1, 0, 3, -1],
        vec![0, 1, 1, 0, 2, 0, 1],
        vec![1, 0, 0, 4, 1, 1, 0],
    ]);
    let m = a.mul(&b).unwrap();
    let c = m.rref_with_certificate();
    assert_eq!(c.pivot_cols.len(), 3);
    assert_eq!(c.row_ops.mul(&m).unwrap(), c.reduced);
}

#[test]
fn published_matrix_determinant_is_the_eliminant() {
    let ring = Ring::new(["a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2"]);
    let cells: [[&str; 15]; 15] = [
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "-b1", "0", "0", "0", "a1", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "-b1", "0", "0", "0", "a1"],
    ["0", "0", "0", "c1", "0", "0", "0", "0", "0", "-b2", "0", "0", "0", "0", "0"],
    ["0", "a1*b3", "0", "c2", "0", "0", "0", "0", "0", "0", "0", "-b1", "0", "0", "0"],
    ["0", "0", "0", "0", "c1", "0", "0", "0", "0", "0", "-b2", "0", "0", "0", "0"],
    ["0", "-a2*b1", "a1*b3", "0", "c2", "0", "0", "0", "0", "0", "0", "0", "-b1", "0", "0"],
    ["-a1*b3*c1", "0", "-a2*b1", "0", "0", "c1", "0", "0", "0", "0", "0", "-b2", "0", "0", "0"],
    ["0", "-a3*b1", "0", "0", "0", "c2", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "-a2*b2", "0", "0", "0", "0", "c1", "0", "0", "0", "0", "0", "-b2", "0", "0"],
    ["-a2*b1*c2", "0", "-a3*b1", "0", "0", "0", "c2", "0", "0", "-b3", "0", "0", "0", "0", "0"],
    ["0", "0", "-a2*b2", "0", "0", "0", "0", "c1", "0", "0", "0", "0", "0", "0", "0"],
    ["a3*b1*c1", "-a3*b2", "0", "0", "0", "0", "0", "c2", "0", "0", "-b3", "0", "0", "a2", "0"],
    ["-a2*b2*c2", "0", "-a3*b2", "0", "0", "0", "0", "0", "c1", "0", "0", "0", "0", "0", "a2"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "c2", "0", "0", "-b3", "0", "a3", "0"],
    ["-a3*b2*c2", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "-b3", "0", "a3"]    ];
    let rows = cells.iter().map(|r| r.iter().map(|c| SparsePoly::parse(&ring, c).unwrap()).collect()).collect();
    let m = PolyMatrix::from_dense(&ring, rows).unwrap();
    let det = bareiss_det(&m).unwrap();
    let elim = SparsePoly::parse(&ring, fixtures::STURMFELS_ELIMINANT).unwrap();
    assert_eq!(elim.num_terms(), 20);
    assert!(det == elim || det == -&elim, "determinant {det}");
}

#[test]
fn smith_form_of_published_rays() {
    let b: Vec<Vec<i64>> = fixtures::STURMFELS_RAYS_PUBLISHED.iter().map(|r| r.to_vec()).collect();
    let s = smith_normal_form(&b).unwrap();
    assert_eq!(s.diagonal, vec![1, 1]);
    // cokernel Z^8 / image of Z^2 is free of rank 6
    assert_eq!(b.len() - s.diagonal.iter().filter(|&&d| d != 0).count(), 6);
}

#[test]
fn zero_is_its_own_root() {
    let r = ring3();
    let z = SparsePoly::zero(&r);
    assert_eq!(kth_root_poly(&z, 3), Root::Root(z));
}
