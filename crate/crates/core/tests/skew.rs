use std::sync::Arc;

use grograde::algebra::{
    check_m_iso, compute_epsilons, gamma_map, is_strongly_graded, object_centers, validate_grading_by_ids, AlgebraError,
    StructAlgebra,
};
use grograde::corpus::{group_algebra, morita_truncation, skew_actions};
use grograde::groupoid::one_object_group;
use grograde::skew::{build_skew_ring, skew_report};

/// `p`-adic logarithm of a set size, asserting it is an exact power.
fn log_p(n: usize, p: usize) -> usize {
    let (mut k, mut m) = (0, 1);
    while m < n {
        m *= p;
        k += 1;
    }
    assert_eq!(m, n);
    k
}

#[test]
fn corpus_is_epsilon_strong_and_strong_iff_global() {
    let mut partial = 0;
    for (name, act) in skew_actions() {
        let s = build_skew_ring(&act, None).unwrap_or_else(|e| panic!("{name}: {e}"));
        let grp = act.groupoid();
        // Global exactly when every 1_g is the unit of its component.
        let global = (0..grp.num_morphisms()).all(|g| act.image_ideal(g).len() == act.component(grp.cod(g)).len());
        let p = s.graded.alg().p() as usize;
        let dim: usize = (0..grp.num_morphisms()).map(|g| log_p(act.image_ideal(g).len(), p)).sum();
        let rep = skew_report(&act, &s);
        assert_eq!(rep.dim, dim, "{name}");
        assert_eq!(rep.global, global, "{name}");
        assert!(rep.epsilon_strong, "{name}");
        assert!(rep.epsilons_match, "{name}");
        assert_eq!(rep.strongly_graded, global, "{name}");
        assert_eq!(rep.strong_witness.is_some(), !global, "{name}");
        partial += usize::from(!global);
    }
    assert!(partial >= 4);
}

/// Products of homogeneous elements follow
/// `(a d_g)(b d_h) = theta_g(theta_{g^-1}(a) b) d_gh`.
#[test]
fn skew_products_follow_the_defining_formula() {
    for (name, act) in skew_actions() {
        let s = build_skew_ring(&act, None).unwrap();
        let grp = act.groupoid();
        let alg = s.graded.alg();
        for g in 0..grp.num_morphisms() {
            for h in 0..grp.num_morphisms() {
                let prod_deg = grp.comp(g, h);
                for &a in &act.image_ideal(g) {
                    for &b in &act.image_ideal(h) {
                        let got = alg.mul(&s.embed(g, a), &s.embed(h, b));
                        match prod_deg {
                            None => assert!(got.iter().all(|&c| c == 0), "{name}"),
                            Some(gh) => {
                                let ring = act.component(grp.dom(g));
                                let back = act.theta(grp.inv(g), a).unwrap();
                                let want = act.theta(g, ring.mul(back, b)).unwrap();
                                assert_eq!(s.extract(gh, &got), Some(want), "{name}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn multiplication_maps_are_isomorphisms() {
    let mut instances: Vec<_> = skew_actions().into_iter().map(|(n, a)| (n, build_skew_ring(&a, None).unwrap().graded)).collect();
    instances.push(("Z3 group algebra".into(), group_algebra(3, 2)));
    instances.push(("matrix truncation".into(), morita_truncation()));
    for (name, s) in instances {
        let eps = compute_epsilons(&s).unwrap();
        let grp = s.groupoid();
        for t in grp.composable_tuples(2) {
            let r = check_m_iso(&s, &eps, t[0], t[1]);
            assert!(r.passed(), "{name}: {r:?}");
        }
        let centers = object_centers(&s);
        for g in 0..grp.num_morphisms() {
            assert!(gamma_map(&s, &eps, &centers, g).unwrap().is_bijective(), "{name}");
        }
    }
}

#[test]
fn dual_numbers_are_not_epsilon_strong() {
    // F_2[x]/(x^2) with x in the nontrivial degree
    let alg = StructAlgebra::new(2, 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], vec![1, 0]).unwrap();
    let s = validate_grading_by_ids(alg, Arc::new(one_object_group(2).unwrap()), &["e".into(), "g".into()]).unwrap();
    assert!(!is_strongly_graded(&s).strong);
    assert!(matches!(compute_epsilons(&s), Err(AlgebraError::NotEpsilonStrong(..))));
}

#[test]
fn misgraded_algebra_is_rejected() {
    let alg = StructAlgebra::new(2, 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)], vec![1, 0]).unwrap();
    let res = validate_grading_by_ids(alg, Arc::new(one_object_group(2).unwrap()), &["e".into(), "g".into()]);
    assert!(res.is_err());
}

#[test]
fn matrix_truncation_is_not_strong() {
    let s = morita_truncation();
    let rep = is_strongly_graded(&s);
    assert!(!rep.strong);
    let w = rep.witness().unwrap();
    assert_eq!((w.g.as_str(), w.h.as_str(), w.product_dim, w.target_dim), ("(1,e,2)", "(2,e,1)", 0, 1));
    // the zero component at (1,g^2,1) squares onto the nonzero (1,e,1)
    assert!(rep.failures.iter().any(|f| f.g == "(1,g^2,1)" && f.h == "(1,g^2,1)"));
}
