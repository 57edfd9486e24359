use std::collections::BTreeSet;

use grograde::finalg::{check_idem_ideal_bijection, FiniteCommRing, IdealSearch, RingSpec};

fn distinct_primes(mut n: usize) -> u32 {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    count + u32::from(n > 1)
}

#[test]
fn idempotents_of_zn() {
    for n in 1..=100 {
        let r = FiniteCommRing::zmod(n);
        let brute: Vec<usize> = (0..n).filter(|x| x * x % n == *x).collect();
        let names: Vec<usize> = r.idempotents().iter().map(|&x| r.name(x).parse().unwrap()).collect();
        assert_eq!(names, brute, "Z/{n}");
        assert_eq!(brute.len(), 2usize.pow(distinct_primes(n)), "Z/{n}");
    }
}

#[test]
fn unital_ideals_by_subsets_small() {
    for n in 1..=12 {
        let r = FiniteCommRing::zmod(n);
        let report = check_idem_ideal_bijection(&r, 24);
        assert_eq!(report.search, IdealSearch::Subsets);
        assert!(report.passed(), "Z/{n}: {report:?}");
        assert_eq!(report.unital_ideals.len(), 2usize.pow(distinct_primes(n)));
    }
}

#[test]
fn principal_ideals_up_to_100() {
    for n in 13..=100 {
        let r = FiniteCommRing::zmod(n);
        let report = check_idem_ideal_bijection(&r, 12);
        assert_eq!(report.search, IdealSearch::Principal);
        assert!(report.passed(), "Z/{n}");
    }
}

#[test]
fn z6_has_four_unital_ideals() {
    let r = FiniteCommRing::zmod(6);
    let ideals = r.unital_ideals_by_subsets();
    let expected: Vec<BTreeSet<usize>> = [vec![0], vec![0, 3], vec![0, 2, 4], (0..6).collect()]
        .into_iter()
        .map(|v| v.into_iter().map(|x| r.index(&x.to_string()).unwrap()).collect())
        .collect();
    assert_eq!(ideals.len(), 4);
    for e in expected {
        assert!(ideals.contains(&e), "{e:?}");
    }
}

#[test]
fn product_rings_and_cuts() {
    let z2 = FiniteCommRing::zmod(2);
    let z3 = FiniteCommRing::zmod(3);
    let r = FiniteCommRing::product(&[&z2, &z3]);
    assert_eq!(r.len(), 6);
    assert_eq!(r.idempotents().len(), 4);
    let e = r.index("(1,0)").unwrap();
    let (cut, embed) = r.restrict(e).unwrap();
    assert_eq!(cut.len(), 2);
    assert_eq!(embed.len(), 2);
    assert_eq!(r.multiplicative().units().order(), 2);
    assert_eq!(r.characteristic(), 6);
}

#[test]
fn ring_spec_roundtrip() {
    let r = FiniteCommRing::product(&[&FiniteCommRing::zmod(2), &FiniteCommRing::zmod(2)]);
    let spec = RingSpec::from_ring(&r);
    let json = serde_json::to_string(&spec).unwrap();
    let back: RingSpec = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_ring().unwrap().names(), r.names());
}

#[test]
fn bad_tables_are_rejected() {
    let names = vec!["0".to_string(), "1".to_string()];
    let add = vec![vec![0, 1], vec![1, 0]];
    let bad_mul = vec![vec![0, 1], vec![0, 1]];
    assert!(FiniteCommRing::new(names, add, bad_mul, 0, 1).is_err());
}
