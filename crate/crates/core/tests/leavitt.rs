use grograde::leavitt::{lpa_build, lpa_report, random_acyclic_graph, three_vertex_example, Graph, Lpa, Path};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `paths[u][w]`: number of paths from `u` to `w`, counted by recursion
/// down the acyclic graph.
fn path_counts(g: &Graph) -> Vec<Vec<usize>> {
    fn count(g: &Graph, u: usize, w: usize, memo: &mut Vec<Vec<Option<usize>>>) -> usize {
        if let Some(c) = memo[u][w] {
            return c;
        }
        let mut c = usize::from(u == w);
        for e in g.edges().iter().filter(|e| e.src == u) {
            c += count(g, e.dst, w, memo);
        }
        memo[u][w] = Some(c);
        c
    }
    let n = g.vertices().len();
    let mut memo = vec![vec![None; n]; n];
    (0..n).map(|u| (0..n).map(|w| count(g, u, w, &mut memo)).collect()).collect()
}

fn sinks(g: &Graph) -> Vec<usize> {
    (0..g.vertices().len()).filter(|&v| !g.edges().iter().any(|e| e.src == v)).collect()
}

fn component_dim(g: &Graph, paths: &[Vec<usize>], u: usize, v: usize) -> usize {
    sinks(g).into_iter().map(|w| paths[u][w] * paths[v][w]).sum()
}

fn is_zero(x: &[u32]) -> bool {
    x.iter().all(|&c| c == 0)
}

fn check_relations(lpa: &Lpa) {
    let g = &lpa.graph;
    let alg = lpa.alg();
    let f = alg.field();
    let n = g.vertices().len();
    let mut sum_v = alg.zero();
    for v in 0..n {
        let x = lpa.vertex(v);
        assert_eq!(alg.mul(&x, &x), x);
        for w in (0..n).filter(|&w| w != v) {
            assert!(is_zero(&alg.mul(&x, &lpa.vertex(w))));
        }
        sum_v = f.vadd(&sum_v, &x);
        if !g.is_sink(v) {
            let mut ck = alg.zero();
            for e in g.out_edges(v) {
                ck = f.vadd(&ck, &alg.mul(&lpa.edge(e), &lpa.ghost(e)));
            }
            assert_eq!(ck, x, "CK2 at {}", g.vertices()[v]);
        }
    }
    assert_eq!(&sum_v[..], alg.one());
    for (i, e) in g.edges().iter().enumerate() {
        let fe = lpa.edge(i);
        assert_eq!(alg.mul(&lpa.vertex(e.src), &fe), fe);
        assert_eq!(alg.mul(&fe, &lpa.vertex(e.dst)), fe);
        for j in 0..g.edges().len() {
            let want = if i == j { lpa.vertex(e.dst) } else { alg.zero() };
            assert_eq!(alg.mul(&lpa.ghost(i), &lpa.edge(j)), want, "CK1");
        }
    }
    // star is an involutive anti-automorphism on basis products
    let d = alg.dim();
    for i in 0..d {
        let x = alg.unit(i);
        assert_eq!(lpa.star(&lpa.star(&x)), x);
        for j in 0..d {
            let y = alg.unit(j);
            assert_eq!(lpa.star(&alg.mul(&x, &y)), alg.mul(&lpa.star(&y), &lpa.star(&x)));
        }
    }
}

#[test]
fn random_graph_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..250 {
        let g = random_acyclic_graph(&mut rng, 5, 6);
        let p = if round % 2 == 0 { 2 } else { 3 };
        let lpa = lpa_build(&g, p).unwrap();
        let paths = path_counts(&g);
        let total: usize = sinks(&g).iter().map(|&w| (0..g.vertices().len()).map(|u| paths[u][w]).sum::<usize>().pow(2)).sum();
        assert_eq!(lpa.alg().dim(), total);
        let rep = lpa_report(&lpa);
        assert!(rep.passed(), "round {round}: {rep:?}");
        let n = g.vertices().len();
        for u in 0..n {
            for v in 0..n {
                let key = format!("({},{})", g.vertices()[u], g.vertices()[v]);
                let got = rep.component_dims.get(&key).copied().unwrap_or(0);
                assert_eq!(got, component_dim(&g, &paths, u, v), "round {round} {key}");
            }
        }
        if round < 40 {
            check_relations(&lpa);
        }
    }
}

#[test]
fn three_vertex_example_values() {
    let g = three_vertex_example();
    for p in [2, 3] {
        let lpa = lpa_build(&g, p).unwrap();
        check_relations(&lpa);
        let rep = lpa_report(&lpa);
        assert!(rep.passed());
        assert_eq!(rep.dim, 8);
        assert!(!rep.strongly_graded);
        let eps = |m: &str| rep.epsilons.iter().find(|e| e.morphism == m).unwrap().epsilon.clone();
        assert_eq!(eps("(v2,v1)"), "f1f1*");
        assert_eq!(eps("(v1,v2)"), "v1");
        assert_eq!(eps("(v1,v3)"), "0");
        let w = rep.strong_witness.as_ref().unwrap();
        assert_eq!((w.g.as_str(), w.h.as_str()), ("(v1,v3)", "(v3,v1)"));
    }
}

#[test]
fn minimal_paths_are_an_antichain() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let g = random_acyclic_graph(&mut rng, 5, 6);
        let lpa = lpa_build(&g, 2).unwrap();
        let n = g.vertices().len();
        for u in 0..n {
            for v in 0..n {
                let ms: Vec<Path> = lpa.minimal_paths(u, v);
                for a in &ms {
                    for b in &ms {
                        assert!(a == b || !a.is_prefix_of(b));
                    }
                }
            }
        }
    }
}

#[test]
fn cycles_are_rejected() {
    use grograde::leavitt::{EdgeSpec, GraphSpec};
    let spec = GraphSpec {
        vertices: vec!["a".into(), "b".into()],
        edges: vec![
            EdgeSpec { id: "x".into(), src: "a".into(), dst: "b".into() },
            EdgeSpec { id: "y".into(), src: "b".into(), dst: "a".into() },
        ],
    };
    let g = Graph::new(&spec).unwrap();
    assert!(lpa_build(&g, 2).is_err());
}
