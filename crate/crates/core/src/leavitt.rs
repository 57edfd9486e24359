//! Leavitt path algebras of finite acyclic graphs over `Z/pZ`.
//!
//! For an acyclic graph every element is a combination of monomials
//! `alpha beta^*` with `alpha`, `beta` real paths ending in the same sink,
//! and these monomials multiply as matrix units. General monomials
//! `alpha beta^*` with `r(alpha) = r(beta) = u` are brought to this form by
//! expanding `u = sum_{s(f) = u} f f^*` until every path ends in a sink.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{compute_epsilons, is_strongly_graded, validate_grading, AlgebraError, GradedAlgebra, StrongFailure, StructAlgebra};
use crate::groupoid::{graph_groupoid, FiniteGroupoid, GroupoidError};
use crate::zp::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeavittError {
    #[error("graph has a directed cycle through `{0}`")]
    CyclicGraph(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate id `{0}`")]
    Duplicate(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

type Res<T> = Result<T, LeavittError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// Graph file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed graph; parallel edges and loops are representable,
/// acyclicity is checked by [`lpa_build`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(spec: &GraphSpec) -> Res<Graph> {
        let mut index = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(LeavittError::Duplicate(v.clone()));
            }
        }
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for e in &spec.edges {
            if !seen.insert(e.id.clone()) || index.contains_key(&e.id) {
                return Err(LeavittError::Duplicate(e.id.clone()));
            }
            let src = *index.get(&e.src).ok_or_else(|| LeavittError::UnknownVertex(e.src.clone()))?;
            let dst = *index.get(&e.dst).ok_or_else(|| LeavittError::UnknownVertex(e.dst.clone()))?;
            edges.push(Edge { id: e.id.clone(), src, dst });
        }
        Ok(Graph { vertices: spec.vertices.clone(), edges })
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec { id: e.id.clone(), src: self.vertices[e.src].clone(), dst: self.vertices[e.dst].clone() })
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(move |(_, e)| e.src == v).map(|(i, _)| i)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_edges(v).next().is_none()
    }

    /// Fails with a vertex on a cycle if the graph is not acyclic.
    pub fn check_acyclic(&self) -> Res<()> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = stack.pop() {
            done += 1;
            for f in self.out_edges(v).collect::<Vec<_>>() {
                let w = self.edges[f].dst;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if done < n {
            let v = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(LeavittError::CyclicGraph(self.vertices[v].clone()));
        }
        Ok(())
    }

    /// Vertices reachable from `v` by real paths, `v` included.
    pub fn reachable(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(x) = stack.pop() {
            for f in self.out_edges(x) {
                let w = self.edges[f].dst;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// A real path: a start vertex and a chain of edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { start: v, edges: Vec::new() }
    }

    pub fn end(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.start, |&f| g.edges[f].dst)
    }

    pub fn then(&self, g: &Graph, f: usize) -> Path {
        debug_assert_eq!(g.edges[f].src, self.end(g));
        let mut edges = self.edges.clone();
        edges.push(f);
        Path { start: self.start, edges }
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend(&other.edges);
        Path { start: self.start, edges }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    pub fn render(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertices[self.start].clone()
        } else {
            self.edges.iter().map(|&f| g.edges[f].id.as_str()).collect::<Vec<_>>().concat()
        }
    }
}

/// All paths from `v` that end in a sink.
fn sink_extensions(g: &Graph, v: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![Path::trivial(v)];
    while let Some(p) = stack.pop() {
        let end = p.end(g);
        let outs: Vec<usize> = g.out_edges(end).collect();
        if outs.is_empty() {
            out.push(p);
        } else {
            for f in outs.into_iter().rev() {
                stack.push(p.then(g, f));
            }
        }
    }
    out.sort();
    out
}

/// `L_K(E)` on the sink-ended monomial basis, graded by the graph groupoid.
#[derive(Clone, Debug)]
pub struct Lpa {
    pub graph: Graph,
    pub graded: GradedAlgebra,
    /// Basis monomials `(sink, alpha, beta)`.
    pub monomials: Vec<(usize, Path, Path)>,
    index: HashMap<(Path, Path), usize>,
}

pub fn lpa_build(graph: &Graph, p: u32) -> Res<Lpa> {
    graph.check_acyclic()?;
    let n = graph.vertices.len();
    let mut into_sink: BTreeMap<usize, Vec<Path>> = BTreeMap::new();
    for v in 0..n {
        for path in sink_extensions(graph, v) {
            into_sink.entry(path.end(graph)).or_default().push(path);
        }
    }
    for paths in into_sink.values_mut() {
        paths.sort();
    }
    let mut monomials = Vec::new();
    let mut index = HashMap::new();
    // (sink, position of alpha, position of beta) for the product rule.
    let mut slots = Vec::new();
    for (&w, paths) in &into_sink {
        for (a, alpha) in paths.iter().enumerate() {
            for (b, beta) in paths.iter().enumerate() {
                index.insert((alpha.clone(), beta.clone()), monomials.len());
                monomials.push((w, alpha.clone(), beta.clone()));
                slots.push((w, a, b));
            }
        }
    }
    let dim = monomials.len();
    let slot_index: HashMap<(usize, usize, usize), usize> = slots.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut sc = Vec::new();
    for (i, &(w, a, b)) in slots.iter().enumerate() {
        let paths = &into_sink[&w];
        for d in 0..paths.len() {
            let j = slot_index[&(w, b, d)];
            sc.push((i, j, slot_index[&(w, a, d)], 1));
        }
    }
    let mut one = vec![0u32; dim];
    for (i, (_, alpha, beta)) in monomials.iter().enumerate() {
        if alpha == beta {
            one[i] = 1;
        }
    }
    let labels = monomials.iter().map(|(_, a, b)| monomial_label(graph, a, b)).collect();
    let alg = StructAlgebra::new(p, dim, &sc, one)?.with_labels(labels);
    let groupoid = Arc::new(graph_groupoid(graph)?);
    let deg = monomials
        .iter()
        .map(|(_, a, b)| {
            let id = format!("({},{})", graph.vertices[a.start], graph.vertices[b.start]);
            groupoid.morphism(&id).expect("monomial degree is an arrow")
        })
        .collect();
    let graded = validate_grading(alg, groupoid, deg)?;
    Ok(Lpa { graph: graph.clone(), graded, monomials, index })
}

fn monomial_label(g: &Graph, a: &Path, b: &Path) -> String {
    match (a.edges.is_empty(), b.edges.is_empty()) {
        (true, true) => a.render(g),
        (true, false) => format!("{}*", ghost_render(g, b)),
        (false, true) => a.render(g),
        (false, false) => format!("{}{}*", a.render(g), ghost_render(g, b)),
    }
}

fn ghost_render(g: &Graph, b: &Path) -> String {
    if b.edges.len() == 1 {
        b.render(g)
    } else {
        format!("({})", b.render(g))
    }
}

impl Lpa {
    pub fn alg(&self) -> &StructAlgebra {
        self.graded.alg()
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        self.graded.groupoid()
    }

    /// Normal form of `alpha beta^*`, zero unless `r(alpha) = r(beta)`.
    pub fn monomial(&self, alpha: &Path, beta: &Path) -> Vec<u32> {
        let g = &self.graph;
        let mut v = self.alg().zero();
        let u = alpha.end(g);
        if u != beta.end(g) {
            return v;
        }
        for mu in sink_extensions(g, u) {
            let i = self.index[&(alpha.concat(&mu), beta.concat(&mu))];
            v[i] = 1;
        }
        v
    }

    pub fn vertex(&self, v: usize) -> Vec<u32> {
        self.monomial(&Path::trivial(v), &Path::trivial(v))
    }

    pub fn edge(&self, f: usize) -> Vec<u32> {
        let e = &self.graph.edges[f];
        self.monomial(&Path { start: e.src, edges: vec![f] }, &Path::trivial(e.dst))
    }

    pub fn ghost(&self, f: usize) -> Vec<u32> {
        let e = &self.graph.edges[f];
        self.monomial(&Path::trivial(e.dst), &Path { start: e.src, edges: vec![f] })
    }

    /// The involution `alpha beta^* -> beta alpha^*`.
    pub fn star(&self, x: &[u32]) -> Vec<u32> {
        let mut out = self.alg().zero();
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                let (_, a, b) = &self.monomials[i];
                out[self.index[&(b.clone(), a.clone())]] = c;
            }
        }
        out
    }

    pub fn morphism(&self, u: usize, v: usize) -> Option<usize> {
        let id = format!("({},{})", self.graph.vertices[u], self.graph.vertices[v]);
        self.groupoid().morphism(&id)
    }

    /// Minimal elements, under the initial-subpath order, of the left
    /// parts `alpha` of nonzero monomials `alpha beta^*` in `S_(u,v)`.
    pub fn minimal_paths(&self, u: usize, v: usize) -> Vec<Path> {
        let g = &self.graph;
        let reach = g.reachable(v);
        let mut out = Vec::new();
        let mut stack = vec![Path::trivial(u)];
        while let Some(p) = stack.pop() {
            let end = p.end(g);
            if reach[end] {
                out.push(p);
            } else {
                for f in g.out_edges(end) {
                    stack.push(p.then(g, f));
                }
            }
        }
        out.sort();
        out
    }

    /// `eps_(u,v)`: `u` when `u` lies in `span(S_(u,v) S_(v,u))`, otherwise
    /// `sum alpha alpha^*` over the minimal paths.
    pub fn epsilon(&self, u: usize, v: usize) -> Vec<u32> {
        let (Some(g), Some(h)) = (self.morphism(u, v), self.morphism(v, u)) else {
            return self.alg().zero();
        };
        let span = self.graded.product_span(g, h);
        let uv = self.vertex(u);
        if span.contains(&uv) {
            return uv;
        }
        let f = self.alg().field();
        let mut eps = self.alg().zero();
        for alpha in self.minimal_paths(u, v) {
            let m = self.monomial(&alpha, &alpha);
            eps = f.vadd(&eps, &m);
        }
        eps
    }

    pub fn render(&self, x: &[u32]) -> String {
        self.alg().render(x)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentProduct {
    pub g: String,
    pub h: String,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonEntry {
    pub morphism: String,
    pub epsilon: String,
    pub idempotent: bool,
    pub self_adjoint: bool,
    pub criterion: bool,
    pub matches_solved: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LpaReport {
    pub p: u32,
    pub vertices: usize,
    pub edges: usize,
    pub dim: usize,
    pub expected_dim: usize,
    pub component_dims: BTreeMap<String, usize>,
    pub products: Vec<ComponentProduct>,
    pub epsilons: Vec<EpsilonEntry>,
    pub epsilon_strong: bool,
    pub strongly_graded: bool,
    pub strong_witness: Option<StrongFailure>,
}

impl LpaReport {
    pub fn passed(&self) -> bool {
        self.epsilon_strong && self.dim == self.expected_dim && self.epsilons.iter().all(|e| e.idempotent && e.self_adjoint && e.criterion && e.matches_solved)
    }
}

/// `dim L_K(E) = sum over sinks of (#paths into the sink)^2`.
pub fn expected_dimension(g: &Graph) -> usize {
    let mut count = vec![0usize; g.vertices.len()];
    for v in 0..g.vertices.len() {
        for p in sink_extensions(g, v) {
            count[p.end(g)] += 1;
        }
    }
    count.iter().map(|c| c * c).sum()
}

fn span_labels(lpa: &Lpa, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|b| lpa.render(b)).collect()
}

pub fn lpa_report(lpa: &Lpa) -> LpaReport {
    let s = &lpa.graded;
    let grp = s.groupoid();
    let alg = s.alg();
    let solved = compute_epsilons(s);
    let mut component_dims = BTreeMap::new();
    for m in 0..grp.num_morphisms() {
        component_dims.insert(grp.id(m).to_string(), s.component_basis(m).len());
    }
    let mut products = Vec::new();
    for t in grp.composable_tuples(2) {
        let span = s.product_span(t[0], t[1]);
        products.push(ComponentProduct {
            g: grp.id(t[0]).to_string(),
            h: grp.id(t[1]).to_string(),
            dim: span.dim(),
            basis: span_labels(lpa, &span),
        });
    }
    let mut epsilons = Vec::new();
    for m in 0..grp.num_morphisms() {
        let (u, v) = (grp.cod(m), grp.dom(m));
        let e = lpa.epsilon(u, v);
        let right = lpa.epsilon(v, u);
        let criterion = s.component_basis(m).iter().all(|&i| {
            let x = alg.unit(i);
            alg.mul(&e, &x) == x && alg.mul(&x, &right) == x
        });
        epsilons.push(EpsilonEntry {
            morphism: grp.id(m).to_string(),
            epsilon: lpa.render(&e),
            idempotent: alg.mul(&e, &e) == e,
            self_adjoint: lpa.star(&e) == e,
            criterion,
            matches_solved: solved.as_ref().map(|sol| sol.get(m) == e.as_slice()).unwrap_or(false),
        });
    }
    let strong = is_strongly_graded(s);
    LpaReport {
        p: alg.p(),
        vertices: lpa.graph.vertices.len(),
        edges: lpa.graph.edges.len(),
        dim: alg.dim(),
        expected_dim: expected_dimension(&lpa.graph),
        component_dims,
        products,
        epsilons,
        epsilon_strong: solved.is_ok(),
        strongly_graded: strong.strong,
        strong_witness: strong.witness().cloned(),
    }
}

/// A random acyclic graph: edges always point from an earlier to a later
/// vertex of a random ordering; parallel edges are allowed.
pub fn random_acyclic_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let m = if n < 2 { 0 } else { rng.gen_range(0..=max_edges) };
    let mut edges = Vec::new();
    for k in 0..m {
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        edges.push(Edge { id: format!("f{}", k + 1), src: order[a], dst: order[b] });
    }
    Graph { vertices: (1..=n).map(|i| format!("v{i}")).collect(), edges }
}

/// The graph `v1 <-f1- v2 -f2-> v3`.
pub fn three_vertex_example() -> Graph {
    let spec = GraphSpec {
        vertices: vec!["v1".into(), "v2".into(), "v3".into()],
        edges: vec![
            EdgeSpec { id: "f1".into(), src: "v2".into(), dst: "v1".into() },
            EdgeSpec { id: "f2".into(), src: "v2".into(), dst: "v3".into() },
        ],
    };
    Graph::new(&spec).expect("well-formed")
}
