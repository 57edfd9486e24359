//! Finite commutative monoids and rings given by explicit tables.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupError};
use crate::zp::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("table has wrong shape: expected {expected}x{expected}")]
    BadShape { expected: usize },
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("duplicate element '{0}'")]
    DuplicateElement(String),
    #[error("{op} is not commutative at ({a}, {b})")]
    NotCommutative { op: &'static str, a: String, b: String },
    #[error("{op} is not associative at ({a}, {b}, {c})")]
    NotAssociative { op: &'static str, a: String, b: String, c: String },
    #[error("'{0}' is not a two-sided identity")]
    BadIdentity(String),
    #[error("'{0}' has no additive inverse")]
    NoNegative(String),
    #[error("distributivity fails at ({a}, {b}, {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("'{0}' is not idempotent")]
    NotIdempotent(String),
    #[error("ring has no zero element")]
    MissingZero,
    #[error(transparent)]
    Group(#[from] GroupError),
}

type Res<T> = Result<T, StructureError>;

fn check_commutative_monoid(names: &[String], op: &[usize], one: usize, label: &'static str) -> Res<()> {
    let n = names.len();
    for a in 0..n {
        if op[a * n + one] != a || op[one * n + a] != a {
            return Err(StructureError::BadIdentity(names[one].clone()));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if op[a * n + b] != op[b * n + a] {
                return Err(StructureError::NotCommutative { op: label, a: names[a].clone(), b: names[b].clone() });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = op[a * n + b];
            for c in 0..n {
                if op[ab * n + c] != op[a * n + op[b * n + c]] {
                    return Err(StructureError::NotAssociative {
                        op: label,
                        a: names[a].clone(),
                        b: names[b].clone(),
                        c: names[c].clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

fn flatten(table: Vec<Vec<usize>>, n: usize) -> Res<Vec<usize>> {
    if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(StructureError::BadShape { expected: n });
    }
    Ok(table.into_iter().flatten().collect())
}

/// A finite commutative monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCommMonoid {
    names: Vec<String>,
    mul: Vec<usize>,
    one: usize,
}

impl FiniteCommMonoid {
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>, one: usize) -> Res<Self> {
        let n = names.len();
        let mul = flatten(mul, n)?;
        if one >= n {
            return Err(StructureError::BadShape { expected: n });
        }
        check_commutative_monoid(&names, &mul, one, "multiplication")?;
        Ok(FiniteCommMonoid { names, mul, one })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// The elements of the ideal `eM`, ascending.
    pub fn cut(&self, e: usize) -> Vec<usize> {
        let s: BTreeSet<usize> = (0..self.len()).map(|x| self.mul(x, e)).collect();
        s.into_iter().collect()
    }

    /// The monoid `eM` with identity `e`; returns it with the embedding of
    /// its elements into `M`.
    pub fn restrict(&self, e: usize) -> Res<(FiniteCommMonoid, Vec<usize>)> {
        if !self.is_idempotent(e) {
            return Err(StructureError::NotIdempotent(self.names[e].clone()));
        }
        let elems = self.cut(e);
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = elems.len();
        let names = elems.iter().map(|&x| self.names[x].clone()).collect();
        let mul = (0..k * k).map(|t| pos[&self.mul(elems[t / k], elems[t % k])]).collect();
        Ok((FiniteCommMonoid { names, mul, one: pos[&e] }, elems))
    }

    /// Units of the monoid.
    pub fn units(&self) -> AbelianGroup {
        self.cut_units(self.one).expect("identity is idempotent")
    }

    /// Units of the cut monoid `eM`, whose identity is `e`.
    pub fn cut_units(&self, e: usize) -> Res<AbelianGroup> {
        if !self.is_idempotent(e) {
            return Err(StructureError::NotIdempotent(self.names[e].clone()));
        }
        let cut = self.cut(e);
        let carrier: Vec<usize> = cut.iter().copied().filter(|&x| cut.iter().any(|&y| self.mul(x, y) == e)).collect();
        Ok(AbelianGroup::from_op(carrier, e, |a, b| self.mul(a, b))?)
    }

    /// Direct product with componentwise multiplication. Elements are
    /// numbered with the first factor varying slowest.
    pub fn product(factors: &[&FiniteCommMonoid]) -> FiniteCommMonoid {
        let shapes: Vec<usize> = factors.iter().map(|m| m.len()).collect();
        let total: usize = shapes.iter().product();
        let decode = |mut x: usize| -> Vec<usize> {
            let mut v = vec![0; shapes.len()];
            for i in (0..shapes.len()).rev() {
                v[i] = x % shapes[i];
                x /= shapes[i];
            }
            v
        };
        let encode = |v: &[usize]| v.iter().zip(&shapes).fold(0, |acc, (&c, &s)| acc * s + c);
        let names = (0..total)
            .map(|x| {
                let v = decode(x);
                let parts: Vec<&str> = v.iter().zip(factors).map(|(&c, m)| m.name(c)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let mut mul = vec![0; total * total];
        for a in 0..total {
            let va = decode(a);
            for b in 0..total {
                let vb = decode(b);
                let vc: Vec<usize> = (0..shapes.len()).map(|i| factors[i].mul(va[i], vb[i])).collect();
                mul[a * total + b] = encode(&vc);
            }
        }
        let one = encode(&factors.iter().map(|m| m.one()).collect::<Vec<_>>());
        FiniteCommMonoid { names, mul, one }
    }
}

/// A finite commutative ring with identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCommRing {
    names: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

impl FiniteCommRing {
    pub fn new(names: Vec<String>, add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, zero: usize, one: usize) -> Res<Self> {
        let n = names.len();
        {
            let mut seen = BTreeSet::new();
            for s in &names {
                if !seen.insert(s) {
                    return Err(StructureError::DuplicateElement(s.clone()));
                }
            }
        }
        let add = flatten(add, n)?;
        let mul = flatten(mul, n)?;
        if zero >= n || one >= n {
            return Err(StructureError::MissingZero);
        }
        check_commutative_monoid(&names, &add, zero, "addition")?;
        check_commutative_monoid(&names, &mul, one, "multiplication")?;
        let mut neg = vec![0; n];
        for a in 0..n {
            neg[a] = (0..n)
                .find(|&b| add[a * n + b] == zero)
                .ok_or_else(|| StructureError::NoNegative(names[a].clone()))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[a * n + add[b * n + c]] != add[mul[a * n + b] * n + mul[a * n + c]] {
                        return Err(StructureError::NotDistributive {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(FiniteCommRing { names, add, mul, neg, zero, one })
    }

    /// `Z/nZ` with elements named by their residues.
    pub fn zmod(n: usize) -> FiniteCommRing {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        let add = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let mul = (0..n * n).map(|k| (k / n) * (k % n) % n).collect();
        let neg = (0..n).map(|a| (n - a) % n).collect();
        FiniteCommRing { names, add, mul, neg, zero: 0, one: 1 % n }
    }

    /// Direct product; element encoding as in [`FiniteCommMonoid::product`].
    pub fn product(factors: &[&FiniteCommRing]) -> FiniteCommRing {
        let addm: Vec<FiniteCommMonoid> = factors
            .iter()
            .map(|r| FiniteCommMonoid { names: r.names.clone(), mul: r.add.clone(), one: r.zero })
            .collect();
        let mulm: Vec<FiniteCommMonoid> = factors.iter().map(|r| r.multiplicative()).collect();
        let a = FiniteCommMonoid::product(&addm.iter().collect::<Vec<_>>());
        let m = FiniteCommMonoid::product(&mulm.iter().collect::<Vec<_>>());
        let n = a.len();
        let neg = (0..n).map(|x| (0..n).find(|&y| a.mul(x, y) == a.one).unwrap()).collect();
        FiniteCommRing { names: m.names, add: a.mul, mul: m.mul, neg, zero: a.one, one: m.one }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// The ring `eA` with identity `e`, with the embedding into `A`.
    pub fn restrict(&self, e: usize) -> Res<(FiniteCommRing, Vec<usize>)> {
        let (m, elems) = self.multiplicative().restrict(e)?;
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = elems.len();
        let add = (0..k * k).map(|t| pos[&self.add(elems[t / k], elems[t % k])]).collect();
        let neg = elems.iter().map(|&x| pos[&self.neg(x)]).collect();
        Ok((FiniteCommRing { names: m.names, add, mul: m.mul, neg, zero: pos[&self.zero], one: m.one }, elems))
    }

    pub fn multiplicative(&self) -> FiniteCommMonoid {
        FiniteCommMonoid { names: self.names.clone(), mul: self.mul.clone(), one: self.one }
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> usize {
        let mut x = self.one;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, self.one);
            k += 1;
        }
        k
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.mul(x, x) == x).collect()
    }

    pub fn ideal_of(&self, x: usize) -> Res<UnitalIdeal> {
        if self.mul(x, x) != x {
            return Err(StructureError::NotIdempotent(self.names[x].clone()));
        }
        let elems: BTreeSet<usize> = (0..self.len()).map(|a| self.mul(a, x)).collect();
        Ok(UnitalIdeal { generator: x, elems })
    }

    /// The identity of `set` if `set` is an ideal with an internal identity.
    pub fn unital_identity(&self, set: &BTreeSet<usize>) -> Option<usize> {
        if !set.contains(&self.zero) {
            return None;
        }
        for &a in set {
            for &b in set {
                if !set.contains(&self.add(a, b)) {
                    return None;
                }
            }
            for r in 0..self.len() {
                if !set.contains(&self.mul(r, a)) {
                    return None;
                }
            }
        }
        set.iter().copied().find(|&u| set.iter().all(|&a| self.mul(u, a) == a))
    }

    /// All unital ideals by exhaustive subset search.
    pub fn unital_ideals_by_subsets(&self) -> Vec<BTreeSet<usize>> {
        let n = self.len();
        assert!(n < 32, "subset search needs a small ring");
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << n) {
            if mask & (1 << self.zero) == 0 {
                continue;
            }
            let set: BTreeSet<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if self.unital_identity(&set).is_some() {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    /// The distinct principal ideals `Aa` that have an internal identity.
    pub fn principal_unital_ideals(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        for a in 0..self.len() {
            let set: BTreeSet<usize> = (0..self.len()).map(|r| self.mul(r, a)).collect();
            if self.unital_identity(&set).is_some() {
                seen.insert(set);
            }
        }
        seen.into_iter().collect()
    }

    /// Additive span of the pairwise products of two subsets.
    pub fn product_ideal(&self, i: &BTreeSet<usize>, j: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut span: BTreeSet<usize> = BTreeSet::from([self.zero]);
        let gens: BTreeSet<usize> = i.iter().flat_map(|&a| j.iter().map(move |&b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
        let mut frontier: Vec<usize> = vec![self.zero];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.add(x, g);
                if span.insert(y) {
                    frontier.push(y);
                }
            }
        }
        span
    }

    /// F_p coordinates on an additive subgroup `set` of a ring of prime
    /// characteristic `p`.
    pub fn fp_coordinates(&self, set: &BTreeSet<usize>) -> Option<FpCoordinates> {
        let p = self.characteristic();
        if !is_prime(p as u32) {
            return None;
        }
        let mut basis = Vec::new();
        let mut coords: HashMap<usize, Vec<u32>> = HashMap::from([(self.zero, Vec::new())]);
        for &x in set {
            if coords.contains_key(&x) {
                continue;
            }
            let k = basis.len();
            let old: Vec<(usize, Vec<u32>)> = coords.drain().collect();
            let mut mult = self.zero;
            for c in 0..p {
                for (y, v) in &old {
                    let z = self.add(*y, mult);
                    let mut w = v.clone();
                    w.resize(k, 0);
                    w.push(c as u32);
                    coords.insert(z, w);
                }
                mult = self.add(mult, x);
            }
            basis.push(x);
        }
        let k = basis.len();
        for v in coords.values_mut() {
            v.resize(k, 0);
        }
        if coords.len() != set.len() || !coords.keys().all(|x| set.contains(x)) {
            return None;
        }
        let by_coords = coords.iter().map(|(&x, v)| (v.clone(), x)).collect();
        Some(FpCoordinates { p: p as u32, basis, coords, by_coords })
    }
}

/// An F_p basis of an additive subgroup of a ring, with coordinates of
/// every element.
#[derive(Clone, Debug)]
pub struct FpCoordinates {
    pub p: u32,
    pub basis: Vec<usize>,
    coords: HashMap<usize, Vec<u32>>,
    by_coords: HashMap<Vec<u32>, usize>,
}

impl FpCoordinates {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: usize) -> Option<&[u32]> {
        self.coords.get(&x).map(|v| v.as_slice())
    }

    pub fn element(&self, c: &[u32]) -> Option<usize> {
        self.by_coords.get(c).copied()
    }
}

/// The ideal `Ax` generated by an idempotent `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalIdeal {
    pub generator: usize,
    pub elems: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdealSearch {
    Subsets,
    Principal,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealBijectionReport {
    pub ring_size: usize,
    pub search: IdealSearch,
    pub idempotents: Vec<String>,
    pub unital_ideals: Vec<Vec<String>>,
    pub injective: bool,
    pub surjective: bool,
    pub multiplicative: bool,
    pub intersection_is_product: bool,
}

impl IdealBijectionReport {
    pub fn passed(&self) -> bool {
        self.injective && self.surjective && self.multiplicative && self.intersection_is_product
    }
}

/// Checks that `x -> Ax` is a monoid isomorphism from the idempotents onto
/// the unital ideals. Ideals are found by subset search when `|A| <= cap`
/// and among principal ideals otherwise.
pub fn check_idem_ideal_bijection(ring: &FiniteCommRing, cap: usize) -> IdealBijectionReport {
    let idem = ring.idempotents();
    let (search, ideals) = if ring.len() <= cap.min(24) {
        (IdealSearch::Subsets, ring.unital_ideals_by_subsets())
    } else {
        (IdealSearch::Principal, ring.principal_unital_ideals())
    };
    let images: Vec<BTreeSet<usize>> = idem.iter().map(|&x| ring.ideal_of(x).expect("idempotent").elems).collect();
    let distinct: BTreeSet<&BTreeSet<usize>> = images.iter().collect();
    let injective = distinct.len() == images.len();
    let target: BTreeSet<&BTreeSet<usize>> = ideals.iter().collect();
    let surjective = distinct == target;
    let mut multiplicative = true;
    let mut intersection_is_product = true;
    for (i, &x) in idem.iter().enumerate() {
        for (j, &y) in idem.iter().enumerate() {
            let prod = ring.product_ideal(&images[i], &images[j]);
            let xy = ring.ideal_of(ring.mul(x, y)).expect("product of idempotents").elems;
            multiplicative &= prod == xy;
            let meet: BTreeSet<usize> = images[i].intersection(&images[j]).copied().collect();
            intersection_is_product &= meet == prod;
        }
    }
    let label = |s: &BTreeSet<usize>| s.iter().map(|&a| ring.name(a).to_string()).collect::<Vec<_>>();
    IdealBijectionReport {
        ring_size: ring.len(),
        search,
        idempotents: idem.iter().map(|&x| ring.name(x).to_string()).collect(),
        unital_ideals: ideals.iter().map(label).collect(),
        injective,
        surjective,
        multiplicative,
        intersection_is_product,
    }
}

/// File format for rings and monoids.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Zmod { zmod: usize },
    Product { product: Vec<RingSpec> },
    Table(TableSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableSpec {
    pub elems: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<String>>>,
    pub mul: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    pub one: String,
}

impl TableSpec {
    fn index(&self, name: &str) -> Res<usize> {
        self.elems
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| StructureError::UnknownElement(name.to_string()))
    }

    fn table(&self, t: &[Vec<String>]) -> Res<Vec<Vec<usize>>> {
        t.iter().map(|row| row.iter().map(|x| self.index(x)).collect()).collect()
    }
}

impl RingSpec {
    pub fn to_ring(&self) -> Res<FiniteCommRing> {
        match self {
            RingSpec::Zmod { zmod } => Ok(FiniteCommRing::zmod((*zmod).max(1))),
            RingSpec::Product { product } => {
                let rings = product.iter().map(|r| r.to_ring()).collect::<Res<Vec<_>>>()?;
                Ok(FiniteCommRing::product(&rings.iter().collect::<Vec<_>>()))
            }
            RingSpec::Table(t) => {
                let add = t.add.as_ref().ok_or(StructureError::MissingZero)?;
                let zero = t.zero.as_ref().ok_or(StructureError::MissingZero)?;
                FiniteCommRing::new(t.elems.clone(), t.table(add)?, t.table(&t.mul)?, t.index(zero)?, t.index(&t.one)?)
            }
        }
    }

    pub fn to_monoid(&self) -> Res<FiniteCommMonoid> {
        match self {
            RingSpec::Table(t) if t.add.is_none() => FiniteCommMonoid::new(t.elems.clone(), t.table(&t.mul)?, t.index(&t.one)?),
            _ => Ok(self.to_ring()?.multiplicative()),
        }
    }

    pub fn from_ring(r: &FiniteCommRing) -> RingSpec {
        let n = r.len();
        let table = |f: &dyn Fn(usize, usize) -> usize| {
            (0..n).map(|a| (0..n).map(|b| r.name(f(a, b)).to_string()).collect()).collect()
        };
        RingSpec::Table(TableSpec {
            elems: r.names.clone(),
            add: Some(table(&|a, b| r.add(a, b))),
            mul: table(&|a, b| r.mul(a, b)),
            zero: Some(r.name(r.zero).to_string()),
            one: r.name(r.one).to_string(),
        })
    }

    pub fn from_monoid(m: &FiniteCommMonoid) -> RingSpec {
        let n = m.len();
        RingSpec::Table(TableSpec {
            elems: m.names.clone(),
            add: None,
            mul: (0..n).map(|a| (0..n).map(|b| m.name(m.mul(a, b)).to_string()).collect()).collect(),
            zero: None,
            one: m.name(m.one).to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn idempotents_of_small_rings() {
        assert_eq!(FiniteCommRing::zmod(7).idempotents(), vec![0, 1]);
        assert_eq!(FiniteCommRing::zmod(6).idempotents(), vec![0, 1, 3, 4]);
        let z2 = FiniteCommRing::zmod(2);
        assert_eq!(FiniteCommRing::product(&[&z2, &z2]).idempotents().len(), 4);
    }

    #[test]
    fn ideals_of_z6() {
        let r = FiniteCommRing::zmod(6);
        assert_eq!(r.ideal_of(3).unwrap().elems, set(&[0, 3]));
        assert_eq!(r.ideal_of(4).unwrap().elems, set(&[0, 2, 4]));
        assert_eq!(r.ideal_of(1).unwrap().elems.len(), 6);
        assert!(matches!(r.ideal_of(2), Err(StructureError::NotIdempotent(_))));
        let rep = check_idem_ideal_bijection(&r, 12);
        assert!(rep.passed());
        assert_eq!(rep.unital_ideals.len(), 4);
    }

    #[test]
    fn z4_excludes_nonunital_ideal() {
        let r = FiniteCommRing::zmod(4);
        assert_eq!(r.idempotents(), vec![0, 1]);
        assert!(r.unital_identity(&set(&[0, 2])).is_none());
        assert!(check_idem_ideal_bijection(&r, 12).passed());
    }

    #[test]
    fn unit_groups() {
        assert_eq!(FiniteCommRing::zmod(5).multiplicative().units().factors(), &[4]);
        let z3 = FiniteCommRing::zmod(3).multiplicative();
        let sq = FiniteCommMonoid::product(&[&z3, &z3]);
        assert_eq!(sq.units().factors(), &[2, 2]);
        let trivial = FiniteCommMonoid::new(vec!["1".into()], vec![vec![0]], 0).unwrap();
        assert_eq!(trivial.units().order(), 1);
    }

    #[test]
    fn cut_units_of_product() {
        let z3 = FiniteCommRing::zmod(3);
        let r = FiniteCommRing::product(&[&z3, &z3]);
        let e = r.index("(1,0)").unwrap();
        let u = r.multiplicative().cut_units(e).unwrap();
        assert_eq!(u.factors(), &[2]);
        let zero = r.index("(0,0)").unwrap();
        assert_eq!(r.multiplicative().cut_units(zero).unwrap().order(), 1);
    }

    #[test]
    fn fp_coordinates_of_f3_squared() {
        let z3 = FiniteCommRing::zmod(3);
        let r = FiniteCommRing::product(&[&z3, &z3]);
        let all: BTreeSet<usize> = (0..9).collect();
        let c = r.fp_coordinates(&all).unwrap();
        assert_eq!(c.dim(), 2);
        for x in 0..9 {
            assert_eq!(c.element(c.coords(x).unwrap()), Some(x));
        }
        assert!(FiniteCommRing::zmod(4).fp_coordinates(&set(&[0, 1, 2, 3])).is_none());
    }

    #[test]
    fn bad_tables_rejected() {
        let names: Vec<String> = vec!["0".into(), "1".into()];
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 1], vec![0, 1]];
        assert!(FiniteCommRing::new(names, add, mul, 0, 1).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let r = FiniteCommRing::zmod(6);
        let spec = RingSpec::from_ring(&r);
        let json = serde_json::to_string(&spec).unwrap();
        let back: RingSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_ring().unwrap(), r);
        let z: RingSpec = serde_json::from_str(r#"{"zmod": 6}"#).unwrap();
        assert_eq!(z.to_ring().unwrap(), r);
    }
}
