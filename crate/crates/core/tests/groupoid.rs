use grograde::groupoid::{graph_groupoid, matrix, one_object_group, pair, FiniteGroupoid, GroupoidError, GroupoidSpec};
use grograde::leavitt::{random_acyclic_graph, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn objects(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Category axioms checked directly on the tables.
fn assert_groupoid_laws(g: &FiniteGroupoid) {
    let n = g.num_morphisms();
    for a in 0..n {
        let (c, d) = (g.cod(a), g.dom(a));
        assert_eq!(g.comp(g.identity(c), a), Some(a));
        assert_eq!(g.comp(a, g.identity(d)), Some(a));
        assert_eq!(g.comp(a, g.inv(a)), Some(g.identity(c)));
        assert_eq!(g.comp(g.inv(a), a), Some(g.identity(d)));
        for b in 0..n {
            assert_eq!(g.comp(a, b).is_some(), g.dom(a) == g.cod(b));
            let Some(ab) = g.comp(a, b) else { continue };
            assert_eq!(g.dom(ab), g.dom(b));
            assert_eq!(g.cod(ab), g.cod(a));
            for k in 0..n {
                if let Some(bk) = g.comp(b, k) {
                    assert_eq!(g.comp(ab, k), g.comp(a, bk));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn matrix_groupoids_satisfy_the_axioms(objs in 1usize..4, order in 1usize..5) {
        let g = matrix(&objects(objs), order).unwrap();
        prop_assert_eq!(g.num_morphisms(), objs * objs * order);
        prop_assert_eq!(g.count_composable_pairs(), objs * objs * objs * order * order);
        assert_groupoid_laws(&g);
    }

    #[test]
    fn spec_roundtrip(objs in 1usize..4, order in 1usize..4) {
        let g = matrix(&objects(objs), order).unwrap();
        let back = FiniteGroupoid::validate(&g.to_spec()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn composable_tuple_counts(order in 1usize..5, n in 1usize..4) {
        let g = one_object_group(order).unwrap();
        prop_assert_eq!(g.composable_tuples(n).len(), order.pow(n as u32));
    }
}

#[test]
fn pair_groupoid_is_the_square() {
    let g = pair(&objects(3)).unwrap();
    assert_eq!(g.num_morphisms(), 9);
    assert_eq!(g.composable_tuples(3).len(), 81);
    assert_groupoid_laws(&g);
}

#[test]
fn corrupted_tables_are_rejected() {
    let g = one_object_group(2).unwrap();
    let mut spec: GroupoidSpec = g.to_spec();
    let last = spec.comp.last_mut().unwrap();
    last[2] = "g".into();
    assert!(FiniteGroupoid::validate(&spec).is_err());
    let mut spec = g.to_spec();
    spec.inv[1][1] = "e".into();
    assert!(matches!(FiniteGroupoid::validate(&spec), Err(GroupoidError::BadInverse(_))));
}

/// Connected components of the underlying undirected graph, by repeated
/// relaxation of labels.
fn component_sizes(g: &Graph) -> Vec<usize> {
    let n = g.vertices().len();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for e in g.edges() {
            let m = label[e.src].min(label[e.dst]);
            for v in [e.src, e.dst] {
                if label[v] != m {
                    label[v] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut sizes = vec![0; n];
    for l in label {
        sizes[l] += 1;
    }
    sizes.into_iter().filter(|&s| s > 0).collect()
}

#[test]
fn graph_groupoid_is_a_union_of_pair_groupoids() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let graph = random_acyclic_graph(&mut rng, 5, 6);
        let g = graph_groupoid(&graph).unwrap();
        let expected: usize = component_sizes(&graph).iter().map(|s| s * s).sum();
        assert_eq!(g.num_morphisms(), expected);
        assert_eq!(g.num_objects(), graph.vertices().len());
        assert_groupoid_laws(&g);
    }
}
