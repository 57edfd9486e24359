//! Twisting an epsilon-strongly graded algebra by 2-cocycles of its
//! canonical partial module, graded equivalence of the twists, and the
//! comparison of `H^2` with the set of equivalence classes.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::action::{ActionError, PartialGModule};
use crate::algebra::{gamma_map, object_centers, AlgebraError, EpsilonSystem, GradedAlgebra, StructAlgebra};
use crate::cohomology::{cohomology, Backend, Cochain, CohomologyError, Complex};
use crate::finalg::{FiniteCommMonoid, StructureError};
use crate::zp::Subspace;

#[derive(Debug, Error, Clone)]
pub enum CrossedError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("eps at `{0}` is not central in its object component")]
    EpsilonNotCentral(String),
    #[error("q is not a cocycle: associativity fails at {0}")]
    NotCocycle(String),
    #[error("associativity and the cocycle identity disagree: {0}")]
    Inconsistent(String),
    #[error("equivalence search space has {size} families, above the cap {cap}")]
    SearchSpaceExceeded { size: String, cap: u128 },
    #[error("exhaustive isomorphism search disagrees with the central-unit search: {0}")]
    CrossCheckFailure(String),
    #[error("H^2 and the equivalence classes do not correspond ({} classes for |H^2| = {})", .0.classes, .0.h2_order)]
    BijectionFailure(Box<ClassificationReport>),
}

type Res<T> = Result<T, CrossedError>;

/// `B = prod_e Z(S_e)` with `1_g = eps_g` and `theta_g = gamma_g`.
#[derive(Clone, Debug)]
pub struct CanonicalModule {
    pub module: PartialGModule,
    pub eps: EpsilonSystem,
    pub centers: Vec<Subspace>,
    elements: Vec<Vec<Vec<u32>>>,
}

impl CanonicalModule {
    /// The vector in `S` of element `x` of `B_e`.
    pub fn vector(&self, e: usize, x: usize) -> &[u32] {
        &self.elements[e][x]
    }

    pub fn element(&self, e: usize, v: &[u32]) -> Option<usize> {
        self.centers[e].element_index(v)
    }
}

pub fn canonical_module(s: &GradedAlgebra, eps: &EpsilonSystem) -> Res<CanonicalModule> {
    let grp = s.groupoid();
    let alg = s.alg();
    let centers = object_centers(s);
    let mut comps = Vec::with_capacity(grp.num_objects());
    let mut elements = Vec::with_capacity(grp.num_objects());
    for center in &centers {
        let elems = center.elements();
        let names: Vec<String> = elems.iter().map(|v| alg.render(v)).collect();
        let mul = elems
            .iter()
            .map(|x| elems.iter().map(|y| center.element_index(&alg.mul(x, y)).expect("center is closed")).collect())
            .collect();
        let one_vec = alg.internal_identity(center).expect("center of a unital component");
        let one = center.element_index(&one_vec).expect("identity lies in the center");
        comps.push(FiniteCommMonoid::new(names, mul, one)?);
        elements.push(elems);
    }
    let mut idem = Vec::with_capacity(grp.num_morphisms());
    for g in 0..grp.num_morphisms() {
        let c = grp.cod(g);
        let i = centers[c].element_index(eps.get(g)).ok_or_else(|| CrossedError::EpsilonNotCentral(grp.id(g).to_string()))?;
        idem.push(i);
    }
    let mut theta = Vec::with_capacity(grp.num_morphisms());
    for g in 0..grp.num_morphisms() {
        let gamma = gamma_map(s, eps, &centers, g)?;
        let (c, d) = (grp.cod(g), grp.dom(g));
        let row = elements[d]
            .iter()
            .map(|x| match gamma.apply(x) {
                Some(y) => centers[c].element_index(&y).expect("gamma lands in the center"),
                None => 0,
            })
            .collect();
        theta.push(row);
    }
    let module = PartialGModule::new(s.groupoid_arc().clone(), comps, idem, theta)?;
    Ok(CanonicalModule { module, eps: eps.clone(), centers, elements })
}

/// `S` with product `x o y = q_{g,h} (x y)` on homogeneous `x in S_g`,
/// `y in S_h`.
#[derive(Clone, Debug)]
pub struct TwistedRing {
    pub graded: GradedAlgebra,
    pub q: Cochain,
    /// The untwisted product, which the equivalence units act through.
    pub base: StructAlgebra,
}

fn first_failure(cx: &Complex, q: &Cochain) -> Res<Option<String>> {
    let d = cx.delta(q)?;
    let e = cx.identity(3);
    Ok((0..d.values.len()).find(|&i| d.values[i] != e.values[i]).map(|i| cx.tuple_label(3, i)))
}

pub fn twist(s: &GradedAlgebra, cm: &CanonicalModule, cx: &Complex, q: &Cochain) -> Res<TwistedRing> {
    cx.validate(q)?;
    let grp = s.groupoid();
    let alg = s.alg();
    let f = alg.field();
    let tuples = cx.tuples(2);
    let mut sc = Vec::new();
    for (t, pair) in tuples.iter().enumerate() {
        let (g, h) = (pair[0], pair[1]);
        let qv = cm.vector(grp.cod(g), q.values[t]);
        for &i in s.component_basis(g) {
            for &j in s.component_basis(h) {
                let v = alg.mul(qv, &alg.basis_mul(i, j));
                for (k, &c) in v.iter().enumerate() {
                    if c != 0 {
                        sc.push((i, j, k, c));
                    }
                }
            }
        }
    }
    let mut one = alg.zero();
    for e in 0..grp.num_objects() {
        let ee = grp.identity(e);
        let t = tuples.iter().position(|p| p[0] == ee && p[1] == ee).expect("identity pair");
        let g = cx.cut_group(2, t);
        let inv = g.carrier(g.inv(g.position(q.values[t]).expect("valid cochain")));
        one = f.vadd(&one, cm.vector(e, inv));
    }
    let twisted = StructAlgebra::new_unchecked(alg.p(), alg.dim(), &sc, one)?.with_labels(alg.labels().to_vec());
    let assoc = twisted.check_axioms();
    let failure = first_failure(cx, q)?;
    match (assoc, failure) {
        (Ok(()), None) => Ok(TwistedRing { graded: s.with_algebra(twisted), q: q.clone(), base: alg.clone() }),
        (Err(_), Some(t)) => Err(CrossedError::NotCocycle(t)),
        (Ok(()), Some(t)) => Err(CrossedError::Inconsistent(format!("associative but delta q != e at {t}"))),
        (Err(e), None) => Err(CrossedError::Inconsistent(format!("cocycle but {e}"))),
    }
}

/// A family `c_g` realising `x -> c_g x` as a graded isomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub values: Vec<(String, String)>,
}

/// Result of an equivalence test between two twists of the same `S`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub witness: Option<Vec<usize>>,
    pub cross_checked: bool,
}

/// Limit on the number of maps enumerated by the exhaustive cross-check.
const EXHAUSTIVE_LIMIT: u128 = 1 << 16;

pub fn equivalent(cm: &CanonicalModule, a: &TwistedRing, b: &TwistedRing, cap: u128) -> Res<Equivalence> {
    let s = &a.graded;
    let grp = s.groupoid();
    let m = grp.num_morphisms();
    let (aa, ba) = (a.graded.alg(), b.graded.alg());
    // candidate units per morphism, identity first
    let mut cands: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut size: Option<u128> = Some(1);
    for g in 0..m {
        let group = cm.module.component(grp.cod(g)).cut_units(cm.module.idem(g))?;
        let mut v: Vec<usize> = vec![group.carrier(group.identity())];
        v.extend((0..group.order()).filter(|&i| i != group.identity()).map(|i| group.carrier(i)));
        size = size.and_then(|x| x.checked_mul(v.len() as u128));
        cands.push(v);
    }
    match size {
        Some(x) if x <= cap => {}
        x => return Err(CrossedError::SearchSpaceExceeded { size: x.map_or("more than 2^128".into(), |x| x.to_string()), cap }),
    }
    // scaled[g][k][a] = c x_a for candidate k and basis element x_a of S_g
    let base = &a.base;
    let scaled: Vec<Vec<Vec<Vec<u32>>>> = (0..m)
        .map(|g| {
            cands[g]
                .iter()
                .map(|&c| {
                    let cv = cm.vector(grp.cod(g), c);
                    s.component_basis(g).iter().map(|&i| base.mul(cv, &base.unit(i))).collect()
                })
                .collect()
        })
        .collect();
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); m];
    for g in 0..m {
        for h in 0..m {
            if let Some(gh) = grp.comp(g, h) {
                checks[g.max(h).max(gh)].push((g, h, gh));
            }
        }
    }
    let ok = |choice: &[usize], g: usize, h: usize, gh: usize| -> bool {
        let cgh = cm.vector(grp.cod(gh), cands[gh][choice[gh]]);
        for (ia, &i) in s.component_basis(g).iter().enumerate() {
            for (ja, &j) in s.component_basis(h).iter().enumerate() {
                let lhs = base.mul(cgh, &aa.basis_mul(i, j));
                let rhs = ba.mul(&scaled[g][choice[g]][ia], &scaled[h][choice[h]][ja]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    };
    let mut choice = vec![0usize; m];
    let mut found = None;
    let mut level = 0usize;
    'search: loop {
        if level == m {
            found = Some((0..m).map(|g| cands[g][choice[g]]).collect::<Vec<_>>());
            break;
        }
        if checks[level].iter().all(|&(g, h, gh)| ok(&choice, g, h, gh)) {
            level += 1;
            if level < m {
                choice[level] = 0;
            }
            continue;
        }
        // advance to the next candidate, backtracking as needed
        loop {
            choice[level] += 1;
            if choice[level] < cands[level].len() {
                continue 'search;
            }
            if level == 0 {
                break 'search;
            }
            level -= 1;
        }
    }
    let cross_checked = base.dim() <= 6;
    if cross_checked {
        if let Some(exists) = exhaustive_search(cm, a, b)? {
            if exists != found.is_some() {
                return Err(CrossedError::CrossCheckFailure(format!(
                    "exhaustive search says {exists}, central-unit search says {}",
                    found.is_some()
                )));
            }
        }
    }
    Ok(Equivalence { witness: found, cross_checked })
}

/// Enumerates all graded linear bijections whose components are
/// bimodule maps for the product of `S`, keeps the ring isomorphisms and
/// checks that each of them is multiplication by central units. Returns
/// `None` when the enumeration would be too large.
fn exhaustive_search(cm: &CanonicalModule, a: &TwistedRing, b: &TwistedRing) -> Res<Option<bool>> {
    let s = &a.graded;
    let grp = s.groupoid();
    let base = &a.base;
    let f = base.field();
    let n = base.dim();
    let m = grp.num_morphisms();
    // endomorphism spaces, each map stored as the images of the basis of S_g
    let mut spaces: Vec<Vec<Vec<Vec<u32>>>> = Vec::with_capacity(m);
    let mut total: u128 = 1;
    for g in 0..m {
        let basis = s.component_basis(g);
        let k = basis.len();
        let left: Vec<usize> = s.component_basis(grp.identity(grp.cod(g))).to_vec();
        let right: Vec<usize> = s.component_basis(grp.identity(grp.dom(g))).to_vec();
        // unknown M (k x k): phi(x_a) = sum_b M[a][b] x_b, variable a*k+b
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let pos = |idx: usize| basis.iter().position(|&x| x == idx);
        for (ea, side) in [(&left, 0), (&right, 1)].iter().flat_map(|(v, sd)| v.iter().map(move |&e| (e, *sd))) {
            // phi(e x_a) = e phi(x_a) (resp. on the right), for every a
            for a in 0..k {
                let prod = if side == 0 { base.basis_mul(ea, basis[a]) } else { base.basis_mul(basis[a], ea) };
                for t in 0..n {
                    let mut row = vec![0u32; k * k];
                    // phi(prod)_t
                    for (c, &pc) in prod.iter().enumerate() {
                        if pc == 0 {
                            continue;
                        }
                        let ci = pos(c).expect("component is a bimodule");
                        for bb in 0..k {
                            let coef = f.mul(pc, u32::from(basis[bb] == t));
                            row[ci * k + bb] = f.add(row[ci * k + bb], coef);
                        }
                    }
                    // minus (e phi(x_a))_t
                    for bb in 0..k {
                        let p2 = if side == 0 { base.basis_mul(ea, basis[bb]) } else { base.basis_mul(basis[bb], ea) };
                        row[a * k + bb] = f.sub(row[a * k + bb], p2[t]);
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let ker = f.kernel(&rows, k * k);
        total = total.saturating_mul((f.modulus() as u128).saturating_pow(ker.len() as u32));
        if total > EXHAUSTIVE_LIMIT {
            return Ok(None);
        }
        let sub = Subspace::span(f, k * k, ker);
        let maps = sub
            .elements()
            .into_iter()
            .map(|mat| {
                (0..k)
                    .map(|a| {
                        let mut v = vec![0u32; n];
                        for bb in 0..k {
                            v[basis[bb]] = mat[a * k + bb];
                        }
                        v
                    })
                    .collect::<Vec<Vec<u32>>>()
            })
            .filter(|imgs: &Vec<Vec<u32>>| f.rank(imgs) == k)
            .collect();
        spaces.push(maps);
    }
    let (aa, ba) = (a.graded.alg(), b.graded.alg());
    let apply = |choice: &[usize], x: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; n];
        for g in 0..m {
            for (ai, &i) in s.component_basis(g).iter().enumerate() {
                if x[i] != 0 {
                    f.axpy(&mut out, x[i], &spaces[g][choice[g]][ai]);
                }
            }
        }
        out
    };
    let sizes: Vec<usize> = spaces.iter().map(|v| v.len()).collect();
    if sizes.contains(&0) {
        return Ok(Some(false));
    }
    let count: usize = sizes.iter().product();
    let mut any = false;
    for idx in 0..count {
        let mut r = idx;
        let choice: Vec<usize> = sizes
            .iter()
            .map(|&sz| {
                let c = r % sz;
                r /= sz;
                c
            })
            .collect();
        let hom = (0..n).all(|i| {
            (0..n).all(|j| apply(&choice, &aa.basis_mul(i, j)) == ba.mul(&apply(&choice, &base.unit(i)), &apply(&choice, &base.unit(j))))
        });
        if !hom {
            continue;
        }
        any = true;
        for g in 0..m {
            let units = cm.module.component(grp.cod(g)).cut_units(cm.module.idem(g))?;
            let central = units.carriers().iter().any(|&c| {
                let cv = cm.vector(grp.cod(g), c);
                s.component_basis(g).iter().enumerate().all(|(ai, &i)| base.mul(cv, &base.unit(i)) == spaces[g][choice[g]][ai])
            });
            if !central {
                return Err(CrossedError::CrossCheckFailure(format!("isomorphism on {} is not a central unit", grp.id(g))));
            }
        }
    }
    Ok(Some(any))
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub sample: usize,
    pub cap: u128,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { sample: 50, cap: 1_000_000, seed: 7 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub cocycle: Vec<(String, String)>,
    pub h2_class: usize,
    pub representative: bool,
    pub equivalence_class: usize,
    pub witness: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub h2_order: usize,
    pub h2_factors: Vec<u64>,
    pub backend: Backend,
    pub classes: usize,
    pub twists: usize,
    pub cross_checked: usize,
    pub cohomologous_equivalent: bool,
    pub distinct_inequivalent: bool,
    pub bijective: bool,
    pub rows: Vec<ClassRow>,
}

fn render_family(cm: &CanonicalModule, w: &[usize]) -> Vec<(String, String)> {
    let grp = cm.module.groupoid();
    w.iter()
        .enumerate()
        .map(|(g, &c)| (grp.id(g).to_string(), cm.module.component(grp.cod(g)).name(c).to_string()))
        .collect()
}

pub fn classify(s: &GradedAlgebra, eps: &EpsilonSystem, opts: &ClassifyOptions) -> Res<ClassificationReport> {
    let cm = canonical_module(s, eps)?;
    let cx = Complex::new(&cm.module, 3)?;
    let backend = match cx.order(2) {
        Some(o) if o <= opts.cap => Backend::Enumerate,
        _ => Backend::Snf,
    };
    let h2 = cohomology(&cx, 2, backend, opts.cap)?;
    let mut cocycles: Vec<(Cochain, usize, bool)> = h2.representatives.iter().enumerate().map(|(k, r)| (r.clone(), k, true)).collect();
    let mut seen: HashSet<Cochain> = h2.representatives.iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut attempts = 0;
    let mut extra = 0;
    while extra < opts.sample && attempts < 4 * opts.sample {
        attempts += 1;
        let k = extra % h2.order;
        let c = cx.random(1, &mut rng);
        let z = cx.mul(&h2.representatives[k], &cx.delta(&c)?);
        if seen.insert(z.clone()) {
            cocycles.push((z, k, false));
            extra += 1;
        }
    }
    let twists: Vec<TwistedRing> = cocycles.par_iter().map(|(q, _, _)| twist(s, &cm, &cx, q)).collect::<Res<_>>()?;
    let r = h2.order;
    // equivalence of every twist with every representative twist
    let table: Vec<Vec<Equivalence>> = (0..twists.len())
        .into_par_iter()
        .map(|i| (0..r).map(|k| equivalent(&cm, &twists[k], &twists[i], opts.cap)).collect::<Res<Vec<_>>>())
        .collect::<Res<_>>()?;
    let mut cross_checked = 0;
    let mut class_of = vec![usize::MAX; twists.len()];
    let mut classes = 0;
    for i in 0..twists.len() {
        cross_checked += table[i].iter().filter(|e| e.cross_checked).count();
        if let Some(k) = (0..r.min(i)).find(|&k| table[i][k].witness.is_some()) {
            class_of[i] = class_of[k];
        } else {
            class_of[i] = classes;
            classes += 1;
        }
    }
    let distinct_inequivalent = (0..r).all(|i| (0..r).all(|k| (i == k) == table[i][k].witness.is_some()));
    let cohomologous_equivalent = cocycles.iter().enumerate().all(|(i, (_, k, _))| table[i][*k].witness.is_some());
    let rows = cocycles
        .iter()
        .enumerate()
        .map(|(i, (q, k, rep))| ClassRow {
            cocycle: cx.render(q),
            h2_class: h2.class_of(&cx, q).unwrap_or(usize::MAX),
            representative: *rep,
            equivalence_class: class_of[i],
            witness: table[i][*k].witness.as_ref().map(|w| render_family(&cm, w)),
        })
        .collect::<Vec<_>>();
    let h2_consistent = rows.iter().zip(&cocycles).all(|(row, (_, k, _))| row.h2_class == *k);
    let bijective = distinct_inequivalent && cohomologous_equivalent && h2_consistent && classes == r;
    let report = ClassificationReport {
        h2_order: r,
        h2_factors: h2.factors.clone(),
        backend,
        classes,
        twists: twists.len(),
        cross_checked,
        cohomologous_equivalent,
        distinct_inequivalent,
        bijective,
        rows,
    };
    if !bijective {
        return Err(CrossedError::BijectionFailure(Box::new(report)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{compute_epsilons, cyclic_group_algebra, validate_grading, validate_grading_by_ids, matrix_units};
    use crate::groupoid::{matrix, one_object_group};

    fn z3_group_algebra() -> GradedAlgebra {
        let alg = cyclic_group_algebra(3, 2).unwrap();
        let g = Arc::new(one_object_group(2).unwrap());
        validate_grading(alg, g, vec![0, 1]).unwrap()
    }

    #[test]
    fn group_algebra_has_two_classes() {
        let s = z3_group_algebra();
        let eps = compute_epsilons(&s).unwrap();
        let rep = classify(&s, &eps, &ClassifyOptions { sample: 8, ..Default::default() }).unwrap();
        assert_eq!(rep.h2_order, 2);
        assert_eq!(rep.classes, 2);
        assert!(rep.cross_checked > 0);
    }

    #[test]
    fn identity_twist_is_the_algebra() {
        let s = z3_group_algebra();
        let eps = compute_epsilons(&s).unwrap();
        let cm = canonical_module(&s, &eps).unwrap();
        let cx = Complex::new(&cm.module, 3).unwrap();
        let t = twist(&s, &cm, &cx, &cx.identity(2)).unwrap();
        assert_eq!(t.graded.alg().structure_constants(), s.alg().structure_constants());
        assert_eq!(t.graded.alg().one(), s.alg().one());
    }

    #[test]
    fn morita_truncation() {
        let alg = matrix_units(2).unwrap();
        let g = Arc::new(matrix(&["1".into(), "2".into()], 4).unwrap());
        let deg: Vec<String> = ["(1,e,1)", "(1,g,2)", "(2,g^3,1)", "(2,e,2)"].iter().map(|s| s.to_string()).collect();
        let s = validate_grading_by_ids(alg, g, &deg).unwrap();
        let eps = compute_epsilons(&s).unwrap();
        let rep = classify(&s, &eps, &ClassifyOptions::default()).unwrap();
        assert_eq!(rep.h2_order, rep.classes);
        assert_eq!(rep.h2_order, 1);
    }
}
