//! Unital partial groupoid actions on finite commutative monoids or rings.
//!
//! Each object `e` carries a component `B_e`. A morphism `g` carries an
//! idempotent `1_g` of `B_{c(g)}` and a bijection
//! `theta_g : B_{g^-1} -> B_g` where `B_g = B_{c(g)} 1_g`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::finalg::{FiniteCommMonoid, FiniteCommRing};
use crate::groupoid::FiniteGroupoid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown element `{1}` in the component at `{0}`")]
    UnknownElement(String, String),
    #[error("1_{0} is not idempotent")]
    NotIdempotent(String),
    #[error("(G1) fails at object `{0}`")]
    G1Violation(String),
    #[error("theta_{0} is missing")]
    MissingTheta(String),
    #[error("theta_{0} is not a bijection B_g^-1 -> B_g")]
    NotBijective(String),
    #[error("theta_{0} is not a ring isomorphism: {1}")]
    NotRingIso(String, String),
    #[error("(G2') fails at ({0}, {1})")]
    G2Violation(String, String),
    #[error("(G3') fails at ({0}, {1}) on `{2}`")]
    G3Violation(String, String, String),
}

type Res<T> = Result<T, ActionError>;

/// A finite commutative table monoid, possibly with an addition.
pub trait Component: Clone + Send + Sync {
    fn size(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn one(&self) -> usize;
    fn name(&self, x: usize) -> &str;
    fn index(&self, name: &str) -> Option<usize>;
    fn add(&self, _a: usize, _b: usize) -> Option<usize> {
        None
    }

    /// The sub-structure `eB` with identity `e`, and its embedding.
    fn restrict(&self, e: usize) -> Option<(Self, Vec<usize>)>;

    /// The ideal generated by the idempotent `e`, ascending.
    fn cut(&self, e: usize) -> Vec<usize> {
        let s: BTreeSet<usize> = (0..self.size()).map(|x| self.mul(x, e)).collect();
        s.into_iter().collect()
    }
}

impl Component for FiniteCommMonoid {
    fn size(&self) -> usize {
        self.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        FiniteCommMonoid::mul(self, a, b)
    }
    fn one(&self) -> usize {
        FiniteCommMonoid::one(self)
    }
    fn name(&self, x: usize) -> &str {
        FiniteCommMonoid::name(self, x)
    }
    fn index(&self, name: &str) -> Option<usize> {
        FiniteCommMonoid::index(self, name)
    }
    fn restrict(&self, e: usize) -> Option<(Self, Vec<usize>)> {
        FiniteCommMonoid::restrict(self, e).ok()
    }
}

impl Component for FiniteCommRing {
    fn size(&self) -> usize {
        self.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        FiniteCommRing::mul(self, a, b)
    }
    fn one(&self) -> usize {
        FiniteCommRing::one(self)
    }
    fn name(&self, x: usize) -> &str {
        FiniteCommRing::name(self, x)
    }
    fn index(&self, name: &str) -> Option<usize> {
        FiniteCommRing::index(self, name)
    }
    fn add(&self, a: usize, b: usize) -> Option<usize> {
        Some(FiniteCommRing::add(self, a, b))
    }
    fn restrict(&self, e: usize) -> Option<(Self, Vec<usize>)> {
        FiniteCommRing::restrict(self, e).ok()
    }
}

const NONE: usize = usize::MAX;

/// A validated unital partial action.
#[derive(Clone, Debug)]
pub struct Partial<M> {
    groupoid: Arc<FiniteGroupoid>,
    comps: Vec<M>,
    idem: Vec<usize>,
    theta: Vec<Vec<usize>>,
}

/// Partial action on rings.
pub type PartialAction = Partial<FiniteCommRing>;
/// Unital partial G-module.
pub type PartialGModule = Partial<FiniteCommMonoid>;

impl<M: Component> Partial<M> {
    /// `theta[g][x]` gives `theta_g(x)` for `x` in `B_{g^-1}`; entries for
    /// other `x` are ignored.
    pub fn new(groupoid: Arc<FiniteGroupoid>, comps: Vec<M>, idem: Vec<usize>, theta: Vec<Vec<usize>>) -> Res<Self> {
        if comps.len() != groupoid.num_objects() {
            return Err(ActionError::ComponentCount { expected: groupoid.num_objects(), got: comps.len() });
        }
        if idem.len() != groupoid.num_morphisms() || theta.len() != groupoid.num_morphisms() {
            return Err(ActionError::ComponentCount { expected: groupoid.num_morphisms(), got: idem.len().min(theta.len()) });
        }
        for g in 0..groupoid.num_morphisms() {
            let c = &comps[groupoid.cod(g)];
            if idem[g] >= c.size() || c.mul(idem[g], idem[g]) != idem[g] {
                return Err(ActionError::NotIdempotent(groupoid.id(g).to_string()));
            }
        }
        let mut theta = theta;
        for g in 0..groupoid.num_morphisms() {
            let dom = groupoid.dom(g);
            let src = comps[dom].cut(idem[groupoid.inv(g)]);
            let mut t = vec![NONE; comps[dom].size()];
            for x in src {
                if let Some(&y) = theta[g].get(x) {
                    t[x] = y;
                }
            }
            theta[g] = t;
        }
        let act = Partial { groupoid, comps, idem, theta };
        act.validate()?;
        Ok(act)
    }

    /// Builds from element names. Missing idempotents default to `1`,
    /// missing theta at identities to the identity map.
    pub fn from_named(
        groupoid: Arc<FiniteGroupoid>,
        comps: Vec<M>,
        idem: &BTreeMap<String, String>,
        theta: &BTreeMap<String, Vec<[String; 2]>>,
    ) -> Res<Self> {
        if comps.len() != groupoid.num_objects() {
            return Err(ActionError::ComponentCount { expected: groupoid.num_objects(), got: comps.len() });
        }
        for k in idem.keys().chain(theta.keys()) {
            if groupoid.morphism(k).is_none() {
                return Err(ActionError::UnknownMorphism(k.clone()));
            }
        }
        let n = groupoid.num_morphisms();
        let mut idv = Vec::with_capacity(n);
        for g in 0..n {
            let c = &comps[groupoid.cod(g)];
            idv.push(match idem.get(groupoid.id(g)) {
                Some(name) => c.index(name).ok_or_else(|| ActionError::UnknownElement(groupoid.id(g).into(), name.clone()))?,
                None => c.one(),
            });
        }
        let mut th = Vec::with_capacity(n);
        for g in 0..n {
            let src = &comps[groupoid.dom(g)];
            let dst = &comps[groupoid.cod(g)];
            let mut t = vec![NONE; src.size()];
            match theta.get(groupoid.id(g)) {
                Some(pairs) => {
                    for [x, y] in pairs {
                        let xi = src.index(x).ok_or_else(|| ActionError::UnknownElement(groupoid.id(g).into(), x.clone()))?;
                        let yi = dst.index(y).ok_or_else(|| ActionError::UnknownElement(groupoid.id(g).into(), y.clone()))?;
                        t[xi] = yi;
                    }
                }
                None if groupoid.is_identity(g) => {
                    for (x, v) in t.iter_mut().enumerate() {
                        *v = x;
                    }
                }
                None => return Err(ActionError::MissingTheta(groupoid.id(g).into())),
            }
            th.push(t);
        }
        Self::new(groupoid, comps, idv, th)
    }

    fn gid(&self, g: usize) -> String {
        self.groupoid.id(g).to_string()
    }

    fn validate(&self) -> Res<()> {
        let grp = &self.groupoid;
        let n = grp.num_morphisms();
        for e in 0..grp.num_objects() {
            let g = grp.identity(e);
            let c = &self.comps[e];
            if self.idem[g] != c.one() || (0..c.size()).any(|x| self.theta[g][x] != x) {
                return Err(ActionError::G1Violation(grp.objects()[e].clone()));
            }
        }
        for g in 0..n {
            let src = &self.comps[grp.dom(g)];
            let dst = &self.comps[grp.cod(g)];
            let dom: Vec<usize> = self.domain(g);
            let codom: BTreeSet<usize> = self.image_ideal(g).into_iter().collect();
            let mut seen = BTreeSet::new();
            for &x in &dom {
                let y = self.theta[g][x];
                if y == NONE {
                    return Err(ActionError::MissingTheta(self.gid(g)));
                }
                if !codom.contains(&y) || !seen.insert(y) {
                    return Err(ActionError::NotBijective(self.gid(g)));
                }
            }
            if seen.len() != codom.len() {
                return Err(ActionError::NotBijective(self.gid(g)));
            }
            if self.theta[g][self.idem[grp.inv(g)]] != self.idem[g] {
                return Err(ActionError::NotRingIso(self.gid(g), "1_g^-1 is not sent to 1_g".into()));
            }
            for &x in &dom {
                for &y in &dom {
                    let (tx, ty) = (self.theta[g][x], self.theta[g][y]);
                    if self.theta[g][src.mul(x, y)] != dst.mul(tx, ty) {
                        return Err(ActionError::NotRingIso(
                            self.gid(g),
                            format!("theta({} {}) != theta({}) theta({})", src.name(x), src.name(y), src.name(x), src.name(y)),
                        ));
                    }
                    if let (Some(s), Some(t)) = (src.add(x, y), dst.add(tx, ty)) {
                        if self.theta[g][s] != t {
                            return Err(ActionError::NotRingIso(
                                self.gid(g),
                                format!("theta({} + {}) != theta({}) + theta({})", src.name(x), src.name(y), src.name(x), src.name(y)),
                            ));
                        }
                    }
                }
            }
        }
        for t in grp.composable_tuples(2) {
            let (g, h) = (t[0], t[1]);
            let gh = grp.comp(g, h).unwrap();
            let mid = &self.comps[grp.dom(g)];
            let top = &self.comps[grp.cod(g)];
            let left: BTreeSet<usize> =
                mid.cut(mid.mul(self.idem[grp.inv(g)], self.idem[h])).into_iter().map(|x| self.theta[g][x]).collect();
            let right: BTreeSet<usize> = top.cut(top.mul(self.idem[g], self.idem[gh])).into_iter().collect();
            if left != right {
                return Err(ActionError::G2Violation(self.gid(g), self.gid(h)));
            }
            let low = &self.comps[grp.dom(h)];
            let e = low.mul(self.idem[grp.inv(h)], self.idem[grp.inv(gh)]);
            for x in low.cut(e) {
                let th = self.theta[h][x];
                let lhs = if th == NONE { NONE } else { self.theta[g][th] };
                if lhs == NONE || lhs != self.theta[gh][x] {
                    return Err(ActionError::G3Violation(self.gid(g), self.gid(h), low.name(x).to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn groupoid_arc(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn components(&self) -> &[M] {
        &self.comps
    }

    pub fn component(&self, e: usize) -> &M {
        &self.comps[e]
    }

    /// `1_g`, an element of `B_{c(g)}`.
    pub fn idem(&self, g: usize) -> usize {
        self.idem[g]
    }

    /// `B_{g^-1}`, the domain of `theta_g`, inside `B_{d(g)}`.
    pub fn domain(&self, g: usize) -> Vec<usize> {
        self.comps[self.groupoid.dom(g)].cut(self.idem[self.groupoid.inv(g)])
    }

    /// `B_g` inside `B_{c(g)}`.
    pub fn image_ideal(&self, g: usize) -> Vec<usize> {
        self.comps[self.groupoid.cod(g)].cut(self.idem[g])
    }

    pub fn theta(&self, g: usize, x: usize) -> Option<usize> {
        let y = *self.theta[g].get(x)?;
        (y != NONE).then_some(y)
    }

    /// `theta_g(1_{g^-1} x)` for any `x` in `B_{d(g)}`.
    pub fn theta_cut(&self, g: usize, x: usize) -> usize {
        let d = &self.comps[self.groupoid.dom(g)];
        self.theta[g][d.mul(x, self.idem[self.groupoid.inv(g)])]
    }

    /// Every `1_g` is the identity of `B_{c(g)}`.
    pub fn is_global(&self) -> bool {
        (0..self.groupoid.num_morphisms()).all(|g| self.idem[g] == self.comps[self.groupoid.cod(g)].one())
    }

    /// Idempotents by morphism id and theta tables as name pairs.
    pub fn named_tables(&self) -> (BTreeMap<String, String>, BTreeMap<String, Vec<[String; 2]>>) {
        let grp = &self.groupoid;
        let mut idem = BTreeMap::new();
        let mut theta = BTreeMap::new();
        for g in 0..grp.num_morphisms() {
            let c = &self.comps[grp.cod(g)];
            let d = &self.comps[grp.dom(g)];
            idem.insert(grp.id(g).to_string(), c.name(self.idem[g]).to_string());
            let pairs = self.domain(g).into_iter().map(|x| [d.name(x).to_string(), c.name(self.theta[g][x]).to_string()]).collect();
            theta.insert(grp.id(g).to_string(), pairs);
        }
        (idem, theta)
    }
}

impl PartialAction {
    /// The same action with the additive structure forgotten.
    pub fn multiplicative(&self) -> PartialGModule {
        Partial {
            groupoid: self.groupoid.clone(),
            comps: self.comps.iter().map(|r| r.multiplicative()).collect(),
            idem: self.idem.clone(),
            theta: self.theta.clone(),
        }
    }
}

/// The global action given by `theta(g, x)` on full components.
pub fn global_action<M: Component>(groupoid: Arc<FiniteGroupoid>, comps: Vec<M>, theta: impl Fn(usize, usize) -> usize) -> Res<Partial<M>> {
    let n = groupoid.num_morphisms();
    let idem = (0..n).map(|g| comps[groupoid.cod(g)].one()).collect();
    let th = (0..n).map(|g| (0..comps[groupoid.dom(g)].size()).map(|x| theta(g, x)).collect()).collect();
    Partial::new(groupoid, comps, idem, th)
}

/// Restriction of a global group action to the ideal `A = uB`: the
/// component becomes `A`, with `1_g = u theta_g(u)` and theta restricted.
pub fn restrict_global<M: Component>(global: &Partial<M>, u: usize) -> Res<Partial<M>> {
    let grp = global.groupoid_arc().clone();
    assert_eq!(grp.num_objects(), 1, "restriction is defined for group actions");
    let b = global.component(0);
    let (a, embed) = b.restrict(u).ok_or_else(|| ActionError::NotIdempotent(b.name(u).to_string()))?;
    let pos = |x: usize| embed.iter().position(|&y| y == x).expect("element of uB");
    let n = grp.num_morphisms();
    let idem: Vec<usize> = (0..n).map(|g| pos(b.mul(u, global.theta_cut(g, u)))).collect();
    let th = (0..n)
        .map(|g| {
            embed
                .iter()
                .map(|&x| {
                    let y = global.theta_cut(g, x);
                    embed.iter().position(|&z| z == y).unwrap_or(NONE)
                })
                .collect()
        })
        .collect();
    Partial::new(grp, vec![a], idem, th)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::one_object_group;

    fn z3sq() -> FiniteCommRing {
        let z3 = FiniteCommRing::zmod(3);
        FiniteCommRing::product(&[&z3, &z3])
    }

    fn swap(r: &FiniteCommRing, x: usize) -> usize {
        let name = r.name(x);
        let inner = &name[1..name.len() - 1];
        let (a, b) = inner.split_once(',').unwrap();
        r.index(&format!("({b},{a})")).unwrap()
    }

    fn swap_action() -> PartialAction {
        let g = Arc::new(one_object_group(2).unwrap());
        let r = z3sq();
        let rr = r.clone();
        global_action(g, vec![r], move |m, x| if m == 0 { x } else { swap(&rr, x) }).unwrap()
    }

    #[test]
    fn global_swap() {
        let act = swap_action();
        assert!(act.is_global());
    }

    #[test]
    fn restriction_is_partial() {
        let act = swap_action();
        let u = act.component(0).index("(1,0)").unwrap();
        let part = restrict_global(&act, u).unwrap();
        assert!(!part.is_global());
        assert_eq!(part.component(0).size(), 3);
        assert_eq!(part.component(0).name(part.idem(1)), "(0,0)");
    }

    #[test]
    fn partial_z2_on_f2_squared() {
        let g = Arc::new(one_object_group(2).unwrap());
        let z2 = FiniteCommRing::zmod(2);
        let b = FiniteCommRing::product(&[&z2, &z2]);
        let idem = BTreeMap::from([("g".to_string(), "(1,0)".to_string())]);
        let theta = BTreeMap::from([(
            "g".to_string(),
            vec![["(0,0)".to_string(), "(0,0)".to_string()], ["(1,0)".to_string(), "(1,0)".to_string()]],
        )]);
        let act = Partial::from_named(g.clone(), vec![b.clone()], &idem, &theta).unwrap();
        assert!(!act.is_global());
        // Not multiplicative: sends 1_g^-1 to 0.
        let bad = BTreeMap::from([(
            "g".to_string(),
            vec![["(0,0)".to_string(), "(1,0)".to_string()], ["(1,0)".to_string(), "(0,0)".to_string()]],
        )]);
        assert!(matches!(Partial::from_named(g, vec![b], &idem, &bad), Err(ActionError::NotRingIso(_, _))));
    }

    #[test]
    fn order_three_automorphism_fails_g3() {
        // "Z_2" acting on F_2^3 by a 3-cycle: theta_g theta_g != theta_e.
        let g = Arc::new(one_object_group(2).unwrap());
        let z2 = FiniteCommRing::zmod(2);
        let r = FiniteCommRing::product(&[&z2, &z2, &z2]);
        let cyc = |x: usize| ((x & 1) << 2) | (x >> 1);
        let rr = r.clone();
        let err = global_action(g, vec![rr], move |m, x| if m == 0 { x } else { cyc(x) }).unwrap_err();
        assert!(matches!(err, ActionError::G3Violation(_, _, _)));
    }
}
