use std::collections::BTreeMap;
use std::sync::Arc;

use grograde::partialmaps::{
    associativity_trace, check_inverse_category, check_inverse_category_exhaustive, compose_pb, star_pb, FiniteSet,
    PartialBijection,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Relations as maps, composed pointwise.
fn as_map(f: &PartialBijection) -> BTreeMap<usize, usize> {
    f.pairs().into_iter().collect()
}

fn compose_maps(f: &BTreeMap<usize, usize>, g: &BTreeMap<usize, usize>) -> BTreeMap<usize, usize> {
    g.iter().filter_map(|(&y, x)| f.get(x).map(|&z| (y, z))).collect()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn count_partial_bijections(n: usize, m: usize) -> usize {
    (0..=n.min(m)).map(|k| binom(n, k) * binom(m, k) * (1..=k).product::<usize>()).sum()
}

#[test]
fn enumeration_has_the_expected_size() {
    for n in 0..4 {
        for m in 0..4 {
            let a = FiniteSet::range("A", n);
            let b = FiniteSet::range("B", m);
            let all = PartialBijection::enumerate(&a, &b);
            assert_eq!(all.len(), count_partial_bijections(n, m), "{n} -> {m}");
        }
    }
}

#[test]
fn composition_matches_relational_composition() {
    let sets: Vec<Arc<FiniteSet>> = (0..4).map(|n| FiniteSet::range(format!("S{n}"), n)).collect();
    for a in &sets {
        for b in &sets {
            for c in &sets {
                for f in PartialBijection::enumerate(b, c) {
                    for g in PartialBijection::enumerate(a, b) {
                        assert_eq!(as_map(&compose_pb(&f, &g)), compose_maps(&as_map(&f), &as_map(&g)));
                    }
                }
            }
        }
    }
}

#[test]
fn mismatched_sets_compose_to_zero() {
    let a = FiniteSet::range("A", 2);
    let b = FiniteSet::range("B", 2);
    let f = PartialBijection::identity(a.clone());
    let g = PartialBijection::identity(b.clone());
    assert!(compose_pb(&f, &g).is_zero());
}

#[test]
fn exhaustive_small_sets() {
    let sets: Vec<Arc<FiniteSet>> = (0..3).map(|n| FiniteSet::range(format!("S{n}"), n + 1)).collect();
    let mut samples = Vec::new();
    for a in &sets {
        for b in &sets {
            samples.extend(PartialBijection::enumerate(a, b));
        }
    }
    let report = check_inverse_category_exhaustive(&samples);
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.sample_trace.is_some());
}

#[test]
fn random_triples_on_six_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sets: Vec<Arc<FiniteSet>> = ["A", "B", "C"].iter().map(|id| FiniteSet::range(*id, 6)).collect();
    let samples: Vec<PartialBijection> =
        (0..60).map(|i| PartialBijection::random(&mut rng, &sets[i % 3], &sets[(i / 3) % 3])).collect();
    let report = check_inverse_category(&samples, 10_000, &mut rng);
    assert_eq!(report.triples_checked, 10_000);
    assert!(report.passed(), "{:?}", report.failures);
}

proptest! {
    #[test]
    fn star_is_the_unique_inverse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FiniteSet::range("A", 5);
        let b = FiniteSet::range("B", 4);
        let f = PartialBijection::random(&mut rng, &a, &b);
        let s = star_pb(&f);
        prop_assert_eq!(compose_pb(&compose_pb(&f, &s), &f), f.clone());
        prop_assert_eq!(s.dom(), f.img());
        prop_assert_eq!(star_pb(&s), f);
    }

    #[test]
    fn trace_sets_describe_the_composite(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<Arc<FiniteSet>> = (0..4).map(|i| FiniteSet::range(format!("S{i}"), 5)).collect();
        let alpha = PartialBijection::random(&mut rng, &s[1], &s[0]);
        let beta = PartialBijection::random(&mut rng, &s[2], &s[1]);
        let gamma = PartialBijection::random(&mut rng, &s[3], &s[2]);
        let t = associativity_trace(&alpha, &beta, &gamma);
        let whole = compose_maps(&as_map(&alpha), &compose_maps(&as_map(&beta), &as_map(&gamma)));
        prop_assert_eq!(t.x1.clone(), whole.values().copied().collect());
        prop_assert_eq!(t.y1.clone(), whole.keys().copied().collect());
        prop_assert_eq!(t.x1, t.x2);
        prop_assert_eq!(t.y1, t.y2);
    }
}
