mod common;

use common::{binary_form, implicit_by_sylvester, random_forms, shuffled_labels, univariate_pair};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weyman::cech::CechContext;
use weyman::exactarith::rational::q;
use weyman::exactarith::{kth_root_poly, PolyMatrix, Ring, Root, SparsePoly, Q};
use weyman::fixtures;
use weyman::resultant::*;
use weyman::toric::SupportSet;

fn interval(index: usize, d: i64) -> SupportSet {
    SupportSet::new(index, (0..=d).map(|i| vec![i]).collect()).unwrap()
}

fn up_to_sign(a: &SparsePoly, b: &SparsePoly) -> bool {
    a == b || *a == -b
}

#[test]
fn univariate_matches_sylvester() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d1 in 1..=4i64 {
        for d2 in 1..=4i64 {
            for _ in 0..5 {
                let (la, lb) = shuffled_labels(&mut rng, d1 as usize, d2 as usize);
                let a = SupportSet::with_labels((0..=d1).map(|i| vec![i]).collect(), la.clone()).unwrap();
                let b = SupportSet::with_labels((0..=d2).map(|i| vec![i]).collect(), lb.clone()).unwrap();
                let out = a_resultant(&ResultantProblem::new(vec![a, b])).unwrap();
                let (f, g, x) = univariate_pair(&la, &lb);
                let syl = sylvester_resultant(&f, &g, x).unwrap().embed(out.delta.ring()).unwrap();
                assert!(up_to_sign(&out.delta, &syl), "d = ({d1}, {d2})");
                assert_eq!(out.multiplicity, 1);
            }
        }
    }
}

#[test]
fn two_linear_forms() {
    let out = a_resultant(&ResultantProblem::new(vec![interval(0, 1), interval(1, 1)])).unwrap();
    let want = SparsePoly::parse(out.delta.ring(), "a0_0 * a1_1 - a0_1 * a1_0").unwrap();
    assert!(up_to_sign(&out.delta, &want), "{}", out.delta);
}

#[test]
fn sylvester_examples() {
    let r = Ring::new(["x"]);
    let f = SparsePoly::parse(&r, "x^2 - 1").unwrap();
    let g = SparsePoly::parse(&r, "x - 1").unwrap();
    assert!(sylvester_resultant(&f, &g, 0).unwrap().is_zero());
    assert!(sylvester_resultant(&SparsePoly::zero(&r), &g, 0).is_err());
}

#[test]
fn three_lines_in_the_plane() {
    let simplex = |i: usize| SupportSet::new(i, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
    let out = a_resultant(&ResultantProblem::new(vec![simplex(0), simplex(1), simplex(2)])).unwrap();
    let ring = out.delta.ring().clone();
    let mut m = PolyMatrix::zeros(&ring, 3, 3);
    for i in 0..3 {
        for (j, p) in [[0, 0], [1, 0], [0, 1]].iter().enumerate() {
            let label = weyman::toric::auto_label(i, p);
            m.set(i, j, SparsePoly::var_named(&ring, &label).unwrap());
        }
    }
    let det = weyman::exactarith::bareiss_det(&m).unwrap();
    assert!(up_to_sign(&out.delta, &det));
}

#[test]
fn codimension_two_is_rejected() {
    let seg = |i: usize| SupportSet::new(i, vec![vec![0, 0], vec![1, 0]]).unwrap();
    let err = a_resultant(&ResultantProblem::new(vec![seg(0), seg(1), seg(2)])).unwrap_err();
    assert!(matches!(err, ResultantError::Codimension(2)), "{err}");
}

fn sturmfels_run(twist: TwistSpec, seed: u64) -> ResultantOutput {
    let sup = fixtures::sturmfels_support_sets();
    let mut prob = ResultantProblem::new(sup).with_twist(twist);
    prob.seed = seed;
    a_resultant(&prob).unwrap()
}

#[test]
fn sturmfels_twists_agree() {
    let (k, _) = weyman::complexes::generic_koszul(&fixtures::sturmfels_support_sets()).unwrap();
    let one = fixtures::sturmfels_class(&k.toric, &[1; 6]).unwrap();
    let stable = fixtures::sturmfels_class(&k.toric, &fixtures::STURMFELS_STABLE_TWIST).unwrap();
    let a = sturmfels_run(TwistSpec::Class(one.0), 1);
    let b = sturmfels_run(TwistSpec::Class(stable.0.clone()), 2);
    let c = sturmfels_run(TwistSpec::Default, 3);
    let want = SparsePoly::parse(a.delta.ring(), fixtures::STURMFELS_ELIMINANT).unwrap();
    assert!(up_to_sign(&a.delta, &want));
    assert!(up_to_sign(&b.delta, &want));
    assert!(up_to_sign(&c.delta, &want));
    assert_eq!(a.report.term_ranks.into_iter().collect::<Vec<_>>(), vec![(-1, 15), (0, 15)]);
    assert_eq!(b.report.term_ranks.into_iter().collect::<Vec<_>>(), vec![(-2, 4), (-1, 27), (0, 23)]);
    // a different specialization for the index subsets
    let d = sturmfels_run(TwistSpec::Class(stable.0.clone()), 99);
    assert!(up_to_sign(&d.delta, &b.delta));
}

fn assert_incidence(delta: &SparsePoly, supports: &[SupportSet], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let on = incidence_sample(supports, &mut rng);
        assert!(membership_test(delta, &on).unwrap());
        let off = generic_sample(supports, &mut rng);
        assert!(!membership_test(delta, &off).unwrap());
    }
}

#[test]
fn incidence_samples_lie_on_the_resultant() {
    let sup = fixtures::sturmfels_support_sets();
    let out = a_resultant(&ResultantProblem::new(sup.clone())).unwrap();
    assert_incidence(&out.delta, &sup, 5);
    let uni = vec![interval(0, 3), interval(1, 2)];
    let out = a_resultant(&ResultantProblem::new(uni.clone())).unwrap();
    assert_incidence(&out.delta, &uni, 6);
}

#[test]
fn incomplete_specialization_is_an_error() {
    let out = a_resultant(&ResultantProblem::new(vec![interval(0, 1), interval(1, 1)])).unwrap();
    assert!(membership_test(&out.delta, &Specialization::new()).is_err());
}

#[test]
fn multiplicity_fourteen() {
    let sup = fixtures::multiplicity_support_sets();
    let (k, _) = weyman::complexes::generic_koszul(&sup).unwrap();
    let prob = ResultantProblem::new(sup.clone()).with_twist(TwistSpec::Class(k.toric.zero_class().0));
    let ctx = CechContext::new(k.toric.clone());
    let out = a_resultant_with(&ctx, &prob).unwrap();
    let rows: Vec<Vec<usize>> = out.report.page.rows(3).into_iter().map(|(_, r)| r).collect();
    assert_eq!(rows, fixtures::MULTIPLICITY_E1.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    assert_eq!(out.delta.num_terms(), 120);
    assert_eq!(out.multiplicity, 14);
    let h = SparsePoly::parse(out.delta.ring(), fixtures::MULTIPLICITY_ELIMINANT).unwrap();
    assert!(up_to_sign(&out.eliminant, &h));
    assert!(up_to_sign(&h.pow(14), &out.delta));
    match kth_root_poly(&out.delta, 14) {
        Root::Root(r) => assert!(up_to_sign(&r, &h)),
        Root::NotAPower => panic!("no 14th root"),
    }
    assert_incidence(&h, &sup, 8);
}

#[test]
fn implicitization_matches_sylvester() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (d, params) in [(1usize, vec![]), (2, vec!["lam".to_string()]), (3, vec![])] {
        let forms = random_forms(&mut rng, d, &params);
        let ours = implicitize_curve([&forms[0], &forms[1], &forms[2]], 0).unwrap();
        let theirs = implicit_by_sylvester(&forms, &params).unwrap();
        let theirs = theirs.embed(ours.ring()).unwrap();
        assert!(up_to_sign(&ours, &theirs), "d = {d}: {ours} vs {theirs}");
        let uv_degree = ours.terms().map(|(m, _)| m.0[0] + m.0[1]).max();
        assert_eq!(uv_degree, Some(d as u32));
    }
}

#[test]
fn implicit_cubic_vanishes_on_the_curve() {
    let ring = Ring::new(["s", "t"]);
    let c = |v: &[i64]| v.iter().map(|&x| SparsePoly::from_int(&ring, x)).collect::<Vec<_>>();
    let f0 = binary_form(&ring, &c(&[1, 0, 2, 1]));
    let f1 = binary_form(&ring, &c(&[0, 3, -1, 2]));
    let f2 = binary_form(&ring, &c(&[2, -1, 0, 5]));
    let eq = implicitize_curve([&f0, &f1, &f2], 0).unwrap();
    let mut seen = 0;
    for t in -6i64..=6 {
        let pt = [q(1), q(t)];
        let w = f0.eval(&pt);
        if w == Q::from_integer(0.into()) {
            continue;
        }
        let (u, v) = (f1.eval(&pt) / &w, f2.eval(&pt) / &w);
        assert_eq!(eq.eval(&[u, v]), q(0));
        seen += 1;
    }
    assert!(seen >= 10);
}
