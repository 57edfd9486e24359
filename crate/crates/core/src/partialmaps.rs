//! The inverse category of partial bijections between finite sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartialMapError {
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("map is not injective: two elements map to {0}")]
    NotInjective(usize),
}

/// A finite set with named elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    pub id: String,
    pub elems: Vec<String>,
}

impl FiniteSet {
    pub fn new(id: impl Into<String>, elems: Vec<String>) -> Arc<Self> {
        Arc::new(FiniteSet { id: id.into(), elems })
    }

    /// A set `id` with elements `0..n`.
    pub fn range(id: impl Into<String>, n: usize) -> Arc<Self> {
        Self::new(id, (0..n).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

/// A bijection from a subset of `src` onto a subset of `dst`.
///
/// `map[y]` is the image of the `y`-th element of `src`, or `None` when `y`
/// lies outside the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    src: Arc<FiniteSet>,
    dst: Arc<FiniteSet>,
    map: Vec<Option<usize>>,
}

impl PartialBijection {
    pub fn new(src: Arc<FiniteSet>, dst: Arc<FiniteSet>, pairs: &[(usize, usize)]) -> Result<Self, PartialMapError> {
        let mut map = vec![None; src.len()];
        let mut seen = vec![false; dst.len()];
        for &(y, x) in pairs {
            if y >= src.len() {
                return Err(PartialMapError::OutOfRange(y));
            }
            if x >= dst.len() {
                return Err(PartialMapError::OutOfRange(x));
            }
            if seen[x] || map[y].is_some_and(|old| old != x) {
                return Err(PartialMapError::NotInjective(x));
            }
            seen[x] = true;
            map[y] = Some(x);
        }
        Ok(PartialBijection { src, dst, map })
    }

    pub fn identity(set: Arc<FiniteSet>) -> Self {
        let map = (0..set.len()).map(Some).collect();
        PartialBijection {
            src: set.clone(),
            dst: set,
            map,
        }
    }

    /// Identity restricted to a subset.
    pub fn identity_on(set: Arc<FiniteSet>, subset: &BTreeSet<usize>) -> Self {
        let map = (0..set.len()).map(|i| subset.contains(&i).then_some(i)).collect();
        PartialBijection {
            src: set.clone(),
            dst: set,
            map,
        }
    }

    /// The empty morphism from `src` to `dst`.
    pub fn zero(src: Arc<FiniteSet>, dst: Arc<FiniteSet>) -> Self {
        PartialBijection {
            map: vec![None; src.len()],
            src,
            dst,
        }
    }

    pub fn src(&self) -> &Arc<FiniteSet> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FiniteSet> {
        &self.dst
    }

    pub fn apply(&self, y: usize) -> Option<usize> {
        self.map[y]
    }

    pub fn dom(&self) -> BTreeSet<usize> {
        (0..self.map.len()).filter(|&y| self.map[y].is_some()).collect()
    }

    pub fn img(&self) -> BTreeSet<usize> {
        self.map.iter().flatten().copied().collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.map.iter().enumerate().filter_map(|(y, x)| x.map(|x| (y, x))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    /// All partial bijections from `src` to `dst`.
    pub fn enumerate(src: &Arc<FiniteSet>, dst: &Arc<FiniteSet>) -> Vec<PartialBijection> {
        fn go(
            y: usize,
            map: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            src: &Arc<FiniteSet>,
            dst: &Arc<FiniteSet>,
            out: &mut Vec<PartialBijection>,
        ) {
            if y == map.len() {
                out.push(PartialBijection {
                    src: src.clone(),
                    dst: dst.clone(),
                    map: map.clone(),
                });
                return;
            }
            map[y] = None;
            go(y + 1, map, used, src, dst, out);
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    map[y] = Some(x);
                    go(y + 1, map, used, src, dst, out);
                    used[x] = false;
                }
            }
            map[y] = None;
        }
        let mut out = Vec::new();
        go(0, &mut vec![None; src.len()], &mut vec![false; dst.len()], src, dst, &mut out);
        out
    }

    /// A uniformly random domain with a random injection on it.
    pub fn random<R: Rng>(rng: &mut R, src: &Arc<FiniteSet>, dst: &Arc<FiniteSet>) -> Self {
        let mut targets: Vec<usize> = (0..dst.len()).collect();
        targets.shuffle(rng);
        let mut map = vec![None; src.len()];
        let mut next = targets.into_iter();
        for slot in map.iter_mut() {
            if rng.gen_bool(0.6) {
                *slot = next.next();
            }
        }
        PartialBijection {
            src: src.clone(),
            dst: dst.clone(),
            map,
        }
    }
}

/// `f . g`: first `g`, then `f`. Mismatched middle sets compose to zero.
pub fn compose_pb(f: &PartialBijection, g: &PartialBijection) -> PartialBijection {
    if f.src != g.dst {
        return PartialBijection::zero(g.src.clone(), f.dst.clone());
    }
    let map = g.map.iter().map(|x| x.and_then(|x| f.map[x])).collect();
    PartialBijection {
        src: g.src.clone(),
        dst: f.dst.clone(),
        map,
    }
}

pub fn star_pb(f: &PartialBijection) -> PartialBijection {
    let mut map = vec![None; f.dst.len()];
    for (y, x) in f.pairs() {
        map[x] = Some(y);
    }
    PartialBijection {
        src: f.dst.clone(),
        dst: f.src.clone(),
        map,
    }
}

fn image_of(f: &PartialBijection, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    set.iter().filter_map(|&y| f.apply(y)).collect()
}

fn preimage_of(f: &PartialBijection, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    f.pairs().into_iter().filter(|(_, x)| set.contains(x)).map(|(y, _)| y).collect()
}

/// The sets `X_1, X_2, Y_1, Y_2` of the associativity argument for
/// `alpha: B -> A`, `beta: C -> B`, `gamma: D -> C`, computed from the set
/// formulas rather than by composing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityTrace {
    pub x1: BTreeSet<usize>,
    pub x2: BTreeSet<usize>,
    pub y1: BTreeSet<usize>,
    pub y2: BTreeSet<usize>,
}

pub fn associativity_trace(
    alpha: &PartialBijection,
    beta: &PartialBijection,
    gamma: &PartialBijection,
) -> AssociativityTrace {
    let (y, xp) = (alpha.dom(), beta.img());
    let (yp, xpp) = (beta.dom(), gamma.img());
    let y_cap_xp: BTreeSet<usize> = y.intersection(&xp).copied().collect();
    // X_1 = (f g)(g^{-1}(Y n X') n X''), Y_1 = h^{-1}(g^{-1}(Y n X') n X'')
    let inner: BTreeSet<usize> = preimage_of(beta, &y_cap_xp).intersection(&xpp).copied().collect();
    let x1 = image_of(alpha, &image_of(beta, &inner));
    let y1 = preimage_of(gamma, &inner);
    // X_2 = f(Y n g(Y' n X'')), Y_2 = (g h)^{-1}(Y n g(Y' n X''))
    let yp_cap_xpp: BTreeSet<usize> = yp.intersection(&xpp).copied().collect();
    let mid: BTreeSet<usize> = y.intersection(&image_of(beta, &yp_cap_xpp)).copied().collect();
    let x2 = image_of(alpha, &mid);
    let y2 = preimage_of(gamma, &preimage_of(beta, &mid).intersection(&yp_cap_xpp).copied().collect());
    AssociativityTrace { x1, x2, y1, y2 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomFailure {
    Associativity { f: usize, g: usize, h: usize },
    RegularLeft { f: usize },
    RegularRight { f: usize },
    InverseNotUnique { f: usize, h: usize },
    TraceMismatch { f: usize, g: usize, h: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseCategoryReport {
    pub triples_checked: usize,
    pub inverse_candidates_checked: usize,
    pub failures: Vec<AxiomFailure>,
    /// One logged associativity instance, if any triple was composable.
    pub sample_trace: Option<AssociativityTrace>,
}

impl InverseCategoryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_regular(f: &PartialBijection) -> (bool, bool) {
    let s = star_pb(f);
    let left = compose_pb(&compose_pb(f, &s), f) == *f;
    let right = compose_pb(&compose_pb(&s, f), &s) == s;
    (left, right)
}

fn check_triple(samples: &[PartialBijection], i: usize, j: usize, k: usize, report: &mut InverseCategoryReport) {
    let (f, g, h) = (&samples[i], &samples[j], &samples[k]);
    let lhs = compose_pb(&compose_pb(f, g), h);
    let rhs = compose_pb(f, &compose_pb(g, h));
    if lhs != rhs {
        report.failures.push(AxiomFailure::Associativity { f: i, g: j, h: k });
    }
    if f.src == g.dst && g.src == h.dst {
        let t = associativity_trace(f, g, h);
        if t.x1 != t.x2 || t.y1 != t.y2 || t.x1 != lhs.img() || t.y1 != lhs.dom() {
            report.failures.push(AxiomFailure::TraceMismatch { f: i, g: j, h: k });
        }
        if report.sample_trace.is_none() && !lhs.is_zero() {
            report.sample_trace = Some(t);
        }
    }
    report.triples_checked += 1;
}

/// Checks the inverse-category axioms on random triples drawn from
/// `samples`, plus regularity of every sample and uniqueness of the
/// generalised inverse among samples of the right shape.
pub fn check_inverse_category<R: Rng>(samples: &[PartialBijection], trials: usize, rng: &mut R) -> InverseCategoryReport {
    let mut report = InverseCategoryReport {
        triples_checked: 0,
        inverse_candidates_checked: 0,
        failures: Vec::new(),
        sample_trace: None,
    };
    if samples.is_empty() {
        return report;
    }
    for _ in 0..trials {
        let i = rng.gen_range(0..samples.len());
        let j = rng.gen_range(0..samples.len());
        let k = rng.gen_range(0..samples.len());
        check_triple(samples, i, j, k, &mut report);
    }
    check_regularity_and_uniqueness(samples, &mut report);
    report
}

/// Checks associativity on every triple of `samples` whose middle sets
/// match (all other triples compose to zero on both sides trivially, and a
/// sample of them is still checked by [`check_inverse_category`]).
pub fn check_inverse_category_exhaustive(samples: &[PartialBijection]) -> InverseCategoryReport {
    let mut report = InverseCategoryReport {
        triples_checked: 0,
        inverse_candidates_checked: 0,
        failures: Vec::new(),
        sample_trace: None,
    };
    for i in 0..samples.len() {
        for j in 0..samples.len() {
            if samples[i].src != samples[j].dst {
                continue;
            }
            for k in 0..samples.len() {
                if samples[j].src != samples[k].dst {
                    continue;
                }
                check_triple(samples, i, j, k, &mut report);
            }
        }
    }
    check_regularity_and_uniqueness(samples, &mut report);
    report
}

fn check_regularity_and_uniqueness(samples: &[PartialBijection], report: &mut InverseCategoryReport) {
    for (i, f) in samples.iter().enumerate() {
        let (left, right) = check_regular(f);
        if !left {
            report.failures.push(AxiomFailure::RegularLeft { f: i });
        }
        if !right {
            report.failures.push(AxiomFailure::RegularRight { f: i });
        }
        let s = star_pb(f);
        for (k, h) in samples.iter().enumerate() {
            if h.src != f.dst || h.dst != f.src {
                continue;
            }
            report.inverse_candidates_checked += 1;
            let fhf = compose_pb(&compose_pb(f, h), f);
            let hfh = compose_pb(&compose_pb(h, f), h);
            if fhf == *f && hfh == *h && *h != s {
                report.failures.push(AxiomFailure::InverseNotUnique { f: i, h: k });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets() -> (Arc<FiniteSet>, Arc<FiniteSet>, Arc<FiniteSet>) {
        (FiniteSet::range("A", 3), FiniteSet::range("B", 3), FiniteSet::range("C", 3))
    }

    #[test]
    fn identities_are_neutral() {
        let (a, b, _) = sets();
        let f = PartialBijection::new(b.clone(), a.clone(), &[(0, 1), (2, 0)]).unwrap();
        assert_eq!(compose_pb(&PartialBijection::identity(a), &f), f);
        assert_eq!(compose_pb(&f, &PartialBijection::identity(b)), f);
    }

    #[test]
    fn overlap_of_middle_sets() {
        let (a, b, c) = sets();
        // f: B -> A defined on {1,2}; g: C -> B with image {2,0}
        let f = PartialBijection::new(b.clone(), a.clone(), &[(1, 0), (2, 1)]).unwrap();
        let g = PartialBijection::new(c.clone(), b.clone(), &[(0, 2), (1, 0)]).unwrap();
        let fg = compose_pb(&f, &g);
        assert_eq!(fg.pairs(), vec![(0, 1)]);
        assert_eq!(fg.src(), &c);
        assert_eq!(fg.dst(), &a);
    }

    #[test]
    fn mismatch_gives_zero() {
        let (a, b, c) = sets();
        let f = PartialBijection::identity(a.clone());
        let g = PartialBijection::identity(b.clone());
        let z = compose_pb(&f, &g);
        assert!(z.is_zero());
        assert_eq!(z.src(), &b);
        assert_eq!(z.dst(), &a);
        let _ = c;
    }

    #[test]
    fn star_properties() {
        let (a, b, _) = sets();
        let id = PartialBijection::identity(a.clone());
        assert_eq!(star_pb(&id), id);
        let f = PartialBijection::new(b, a.clone(), &[(0, 2), (1, 0)]).unwrap();
        assert_eq!(star_pb(&star_pb(&f)), f);
        let ff = compose_pb(&f, &star_pb(&f));
        assert_eq!(ff, PartialBijection::identity_on(a, &f.img()));
    }

    #[test]
    fn zero_morphism() {
        let (a, _, _) = sets();
        let z = PartialBijection::zero(a.clone(), a);
        assert_eq!(star_pb(&z), z);
        assert_eq!(compose_pb(&compose_pb(&z, &z), &z), z);
    }

    #[test]
    fn not_injective_rejected() {
        let (a, b, _) = sets();
        assert_eq!(
            PartialBijection::new(b, a, &[(0, 1), (1, 1)]),
            Err(PartialMapError::NotInjective(1))
        );
    }

    #[test]
    fn counts_partial_bijections() {
        let (a, b, _) = sets();
        // sum_k C(3,k)^2 k! = 1 + 9 + 18 + 6
        assert_eq!(PartialBijection::enumerate(&a, &b).len(), 34);
        let two = FiniteSet::range("D", 2);
        assert_eq!(PartialBijection::enumerate(&a, &two).len(), 13);
    }
}
