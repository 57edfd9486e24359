//! Finite groupoids given by explicit composition tables.
//!
//! Objects and morphisms carry string ids. After validation they are kept
//! sorted by id and addressed by index; composition `g h` (first `h`, then
//! `g`) is defined exactly when `d(g) = c(h)`, following the convention
//! `d(gh) = d(h)`, `c(gh) = c(g)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("duplicate id `{0}`")]
    Duplicate(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("composable pair ({0}, {1}) has no product")]
    MissingComposition(String, String),
    #[error("product given for non-composable pair ({0}, {1})")]
    NotComposable(String, String),
    #[error("conflicting products for ({0}, {1})")]
    ConflictingComposition(String, String),
    #[error("product {2} of ({0}, {1}) has the wrong domain or codomain")]
    DomCodMismatch(String, String, String),
    #[error("({0}{1}){2} != {0}({1}{2})")]
    NonAssociative(String, String, String),
    #[error("bad inverse for `{0}`")]
    BadInverse(String),
    #[error("bad identity at object `{0}`")]
    BadIdentity(String),
    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),
}

/// Raw, unvalidated groupoid description (the JSON file format).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidSpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub comp: Vec<[String; 3]>,
    pub inv: Vec<[String; 2]>,
    pub identities: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    comp: Vec<Option<usize>>,
    inv: Vec<usize>,
    identity: Vec<usize>,
    morphism_index: HashMap<String, usize>,
    object_index: HashMap<String, usize>,
}

/// A composable tuple `(g_1, ..., g_n)` with `d(g_i) = c(g_{i+1})`, as
/// morphism indices.
pub type ComposableTuple = Vec<usize>;

fn index_of(map: &HashMap<String, usize>, id: &str) -> Result<usize, GroupoidError> {
    map.get(id).copied().ok_or_else(|| GroupoidError::UnknownId(id.to_string()))
}

impl FiniteGroupoid {
    /// Checks every groupoid axiom exhaustively.
    pub fn validate(raw: &GroupoidSpec) -> Result<Self, GroupoidError> {
        let mut objects = raw.objects.clone();
        objects.sort();
        if let Some(w) = objects.windows(2).find(|w| w[0] == w[1]) {
            return Err(GroupoidError::Duplicate(w[0].clone()));
        }
        let object_index: HashMap<String, usize> = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();

        let mut specs = raw.morphisms.clone();
        specs.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = specs.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(GroupoidError::Duplicate(w[0].id.clone()));
        }
        let mut morphisms = Vec::with_capacity(specs.len());
        for m in &specs {
            morphisms.push(Morphism {
                id: m.id.clone(),
                dom: index_of(&object_index, &m.dom)?,
                cod: index_of(&object_index, &m.cod)?,
            });
        }
        let morphism_index: HashMap<String, usize> =
            morphisms.iter().enumerate().map(|(i, m)| (m.id.clone(), i)).collect();
        let n = morphisms.len();

        let mut comp = vec![None; n * n];
        for [g, h, gh] in &raw.comp {
            let (gi, hi, ghi) = (
                index_of(&morphism_index, g)?,
                index_of(&morphism_index, h)?,
                index_of(&morphism_index, gh)?,
            );
            if morphisms[gi].dom != morphisms[hi].cod {
                return Err(GroupoidError::NotComposable(g.clone(), h.clone()));
            }
            if morphisms[ghi].dom != morphisms[hi].dom || morphisms[ghi].cod != morphisms[gi].cod {
                return Err(GroupoidError::DomCodMismatch(g.clone(), h.clone(), gh.clone()));
            }
            match comp[gi * n + hi] {
                Some(prev) if prev != ghi => return Err(GroupoidError::ConflictingComposition(g.clone(), h.clone())),
                _ => comp[gi * n + hi] = Some(ghi),
            }
        }
        for g in 0..n {
            for h in 0..n {
                if morphisms[g].dom == morphisms[h].cod && comp[g * n + h].is_none() {
                    return Err(GroupoidError::MissingComposition(
                        morphisms[g].id.clone(),
                        morphisms[h].id.clone(),
                    ));
                }
            }
        }

        let mut identity = vec![usize::MAX; objects.len()];
        for (o, m) in &raw.identities {
            let oi = index_of(&object_index, o)?;
            identity[oi] = index_of(&morphism_index, m)?;
        }
        for (oi, &e) in identity.iter().enumerate() {
            if e == usize::MAX || morphisms[e].dom != oi || morphisms[e].cod != oi {
                return Err(GroupoidError::BadIdentity(objects[oi].clone()));
            }
        }

        let mut inv = vec![usize::MAX; n];
        for [g, gi] in &raw.inv {
            let (a, b) = (index_of(&morphism_index, g)?, index_of(&morphism_index, gi)?);
            if inv[a] != usize::MAX && inv[a] != b {
                return Err(GroupoidError::BadInverse(g.clone()));
            }
            inv[a] = b;
        }

        let gpd = FiniteGroupoid {
            objects,
            morphisms,
            comp,
            inv,
            identity,
            morphism_index,
            object_index,
        };
        gpd.check_axioms()?;
        Ok(gpd)
    }

    fn check_axioms(&self) -> Result<(), GroupoidError> {
        let n = self.morphisms.len();
        for g in 0..n {
            let m = &self.morphisms[g];
            let left = self.identity[m.cod];
            let right = self.identity[m.dom];
            if self.comp(left, g) != Some(g) {
                return Err(GroupoidError::BadIdentity(self.objects[m.cod].clone()));
            }
            if self.comp(g, right) != Some(g) {
                return Err(GroupoidError::BadIdentity(self.objects[m.dom].clone()));
            }
        }
        for g in 0..n {
            let gi = self.inv[g];
            if gi == usize::MAX {
                return Err(GroupoidError::BadInverse(self.morphisms[g].id.clone()));
            }
            let m = &self.morphisms[g];
            if self.comp(g, gi) != Some(self.identity[m.cod]) || self.comp(gi, g) != Some(self.identity[m.dom]) {
                return Err(GroupoidError::BadInverse(m.id.clone()));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let Some(gh) = self.comp(g, h) else { continue };
                for k in 0..n {
                    let Some(hk) = self.comp(h, k) else { continue };
                    if self.comp(gh, k) != self.comp(g, hk) {
                        return Err(GroupoidError::NonAssociative(
                            self.morphisms[g].id.clone(),
                            self.morphisms[h].id.clone(),
                            self.morphisms[k].id.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The raw description, in canonical (sorted) order.
    pub fn to_spec(&self) -> GroupoidSpec {
        let n = self.morphisms.len();
        let mut comp = Vec::new();
        for g in 0..n {
            for h in 0..n {
                if let Some(gh) = self.comp(g, h) {
                    comp.push([self.id(g).to_string(), self.id(h).to_string(), self.id(gh).to_string()]);
                }
            }
        }
        GroupoidSpec {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismSpec {
                    id: m.id.clone(),
                    dom: self.objects[m.dom].clone(),
                    cod: self.objects[m.cod].clone(),
                })
                .collect(),
            comp,
            inv: (0..n).map(|g| [self.id(g).to_string(), self.id(self.inv[g]).to_string()]).collect(),
            identities: self
                .identity
                .iter()
                .enumerate()
                .map(|(o, &e)| (self.objects[o].clone(), self.id(e).to_string()))
                .collect(),
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn id(&self, g: usize) -> &str {
        &self.morphisms[g].id
    }

    pub fn morphism(&self, id: &str) -> Option<usize> {
        self.morphism_index.get(id).copied()
    }

    pub fn object(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    #[inline]
    pub fn dom(&self, g: usize) -> usize {
        self.morphisms[g].dom
    }

    #[inline]
    pub fn cod(&self, g: usize) -> usize {
        self.morphisms[g].cod
    }

    #[inline]
    pub fn comp(&self, g: usize, h: usize) -> Option<usize> {
        self.comp[g * self.morphisms.len() + h]
    }

    #[inline]
    pub fn composable(&self, g: usize, h: usize) -> bool {
        self.dom(g) == self.cod(h)
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    #[inline]
    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identity[self.cod(g)] == g
    }

    /// Product of a composable tuple, `g_1 g_2 ... g_n`.
    pub fn product(&self, tuple: &[usize]) -> usize {
        let mut acc = tuple[0];
        for &g in &tuple[1..] {
            acc = self.comp(acc, g).expect("tuple is composable");
        }
        acc
    }

    /// All composable `n`-tuples in lexicographic order of morphism ids.
    pub fn composable_tuples(&self, n: usize) -> Vec<ComposableTuple> {
        assert!(n >= 1, "arity must be at least 1");
        let mut out: Vec<ComposableTuple> = (0..self.num_morphisms()).map(|g| vec![g]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for t in &out {
                let last = *t.last().unwrap();
                for h in 0..self.num_morphisms() {
                    if self.composable(last, h) {
                        let mut u = t.clone();
                        u.push(h);
                        next.push(u);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Full subgroupoid on the given objects.
    pub fn support_subgroupoid(&self, live: &BTreeSet<usize>) -> FiniteGroupoid {
        let keep: Vec<usize> = (0..self.num_morphisms())
            .filter(|&g| live.contains(&self.dom(g)) && live.contains(&self.cod(g)))
            .collect();
        let mut spec = GroupoidSpec {
            objects: live.iter().map(|&o| self.objects[o].clone()).collect(),
            ..Default::default()
        };
        for &g in &keep {
            spec.morphisms.push(MorphismSpec {
                id: self.id(g).to_string(),
                dom: self.objects[self.dom(g)].clone(),
                cod: self.objects[self.cod(g)].clone(),
            });
            spec.inv.push([self.id(g).to_string(), self.id(self.inv(g)).to_string()]);
            for &h in &keep {
                if let Some(gh) = self.comp(g, h) {
                    spec.comp.push([self.id(g).to_string(), self.id(h).to_string(), self.id(gh).to_string()]);
                }
            }
        }
        for &o in live {
            spec.identities.insert(self.objects[o].clone(), self.id(self.identity[o]).to_string());
        }
        FiniteGroupoid::validate(&spec).expect("full subgroupoid of a groupoid is a groupoid")
    }

    /// Number of composable pairs, counted object by object.
    pub fn count_composable_pairs(&self) -> usize {
        (0..self.num_objects())
            .map(|e| {
                let out = (0..self.num_morphisms()).filter(|&g| self.dom(g) == e).count();
                let inc = (0..self.num_morphisms()).filter(|&h| self.cod(h) == e).count();
                out * inc
            })
            .sum()
    }
}

/// Builds a groupoid from a partial multiplication on labelled morphisms.
fn build(
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: BTreeMap<String, String>,
    compose: impl Fn(usize, usize) -> Option<usize>,
    invert: impl Fn(usize) -> usize,
) -> Result<FiniteGroupoid, GroupoidError> {
    let mut spec = GroupoidSpec {
        objects,
        identities,
        ..Default::default()
    };
    for (i, (id, dom, cod)) in morphisms.iter().enumerate() {
        spec.morphisms.push(MorphismSpec {
            id: id.clone(),
            dom: dom.clone(),
            cod: cod.clone(),
        });
        spec.inv.push([id.clone(), morphisms[invert(i)].0.clone()]);
        for (j, _) in morphisms.iter().enumerate() {
            if let Some(k) = compose(i, j) {
                spec.comp.push([id.clone(), morphisms[j].0.clone(), morphisms[k].0.clone()]);
            }
        }
    }
    FiniteGroupoid::validate(&spec)
}

fn power_label(a: usize) -> String {
    match a {
        0 => "e".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{a}"),
    }
}

/// The cyclic group of order `m` as a one-object groupoid with object `*`
/// and morphisms `e`, `g`, `g^2`, ...
pub fn one_object_group(m: usize) -> Result<FiniteGroupoid, GroupoidError> {
    if m == 0 {
        return Err(GroupoidError::InvalidParams("group order must be positive".into()));
    }
    let obj = "*".to_string();
    let morphisms = (0..m).map(|a| (power_label(a), obj.clone(), obj.clone())).collect();
    let identities = BTreeMap::from([(obj.clone(), power_label(0))]);
    build(vec![obj], morphisms, identities, |a, b| Some((a + b) % m), |a| (m - a) % m)
}

/// The pair groupoid on `objects`: one morphism `(i,j)` from `j` to `i` for
/// every ordered pair.
pub fn pair(objects: &[String]) -> Result<FiniteGroupoid, GroupoidError> {
    let n = objects.len();
    let mut morphisms = Vec::with_capacity(n * n);
    for i in objects {
        for j in objects {
            morphisms.push((format!("({i},{j})"), j.clone(), i.clone()));
        }
    }
    let identities = objects.iter().enumerate().map(|(k, o)| (o.clone(), morphisms[k * n + k].0.clone())).collect();
    build(
        objects.to_vec(),
        morphisms,
        identities,
        |a, b| {
            let (i, j) = (a / n, a % n);
            let (k, l) = (b / n, b % n);
            (j == k).then_some(i * n + l)
        },
        |a| (a % n) * n + a / n,
    )
}

/// `I x Z_m x I` with `(i,a,j)(j,b,k) = (i,a+b,k)`.
pub fn matrix(objects: &[String], m: usize) -> Result<FiniteGroupoid, GroupoidError> {
    if m == 0 {
        return Err(GroupoidError::InvalidParams("group order must be positive".into()));
    }
    let n = objects.len();
    let code = |i: usize, a: usize, j: usize| (i * m + a) * n + j;
    let mut morphisms = Vec::with_capacity(n * n * m);
    for i in objects {
        for a in 0..m {
            for j in objects {
                morphisms.push((format!("({i},{},{j})", power_label(a)), j.clone(), i.clone()));
            }
        }
    }
    let identities = objects
        .iter()
        .enumerate()
        .map(|(k, o)| (o.clone(), morphisms[code(k, 0, k)].0.clone()))
        .collect();
    let decode = move |x: usize| (x / (m * n), (x / n) % m, x % n);
    build(
        objects.to_vec(),
        morphisms,
        identities,
        move |x, y| {
            let (i, a, j) = decode(x);
            let (k, b, l) = decode(y);
            (j == k).then_some(code(i, (a + b) % m, l))
        },
        move |x| {
            let (i, a, j) = decode(x);
            code(j, (m - a) % m, i)
        },
    )
}

/// The groupoid of a directed graph: objects are vertices and `(u,v)` is a
/// morphism from `v` to `u` whenever `u` and `v` are joined by a walk of
/// edges and ghost edges.
pub fn graph_groupoid(graph: &crate::leavitt::Graph) -> Result<FiniteGroupoid, GroupoidError> {
    let n = graph.vertices().len();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while root[r] != r {
            r = root[r];
        }
        root[x] = r;
        r
    }
    for e in graph.edges() {
        let (a, b) = (find(&mut root, e.src), find(&mut root, e.dst));
        root[a.max(b)] = a.min(b);
    }
    let comp: Vec<usize> = (0..n).map(|v| find(&mut root, v)).collect();
    let names = graph.vertices();
    let mut morphisms = Vec::new();
    let mut code = BTreeMap::new();
    for u in 0..n {
        for v in 0..n {
            if comp[u] == comp[v] {
                code.insert((u, v), morphisms.len());
                morphisms.push((format!("({},{})", names[u], names[v]), names[v].clone(), names[u].clone()));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = code.keys().copied().collect();
    let identities = (0..n).map(|v| (names[v].clone(), morphisms[code[&(v, v)]].0.clone())).collect();
    build(
        names.to_vec(),
        morphisms,
        identities,
        |a, b| {
            let (u, v) = pairs[a];
            let (v2, w) = pairs[b];
            (v == v2).then(|| code[&(u, w)])
        },
        |a| {
            let (u, v) = pairs[a];
            code[&(v, u)]
        },
    )
}

/// Named constructions, as exposed on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    OneObjectGroup { order: usize },
    Pair { objects: Vec<String> },
    Matrix { objects: Vec<String>, order: usize },
}

pub fn standard_construction(kind: &Construction) -> Result<FiniteGroupoid, GroupoidError> {
    match kind {
        Construction::OneObjectGroup { order } => one_object_group(*order),
        Construction::Pair { objects } => {
            if objects.is_empty() {
                return Err(GroupoidError::InvalidParams("pair groupoid needs objects".into()));
            }
            pair(objects)
        }
        Construction::Matrix { objects, order } => {
            if objects.is_empty() {
                return Err(GroupoidError::InvalidParams("matrix groupoid needs objects".into()));
            }
            matrix(objects, *order)
        }
    }
}
