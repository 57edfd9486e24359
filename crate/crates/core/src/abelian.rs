//! Finite abelian groups given by a multiplication on a carrier set, with a
//! cached decomposition into cyclic factors.

use std::collections::HashMap;

use thiserror::Error;

use crate::intmat::{LatticeError, SmithQuotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("operation leaves the carrier at ({0}, {1})")]
    NotClosed(usize, usize),
    #[error("identity {0} is not in the carrier")]
    MissingIdentity(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A finite abelian group.
///
/// Elements are addressed by position `0..order`; `carrier(i)` maps a
/// position back to the id of the element in the ambient structure (a
/// monoid element, a coset index, ...). Coordinates are taken with respect
/// to the invariant factors `d_1 | d_2 | ...`, all greater than one.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    carrier: Vec<usize>,
    position: HashMap<usize, usize>,
    identity: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    factors: Vec<u64>,
    coords: Vec<Vec<u64>>,
    by_coords: HashMap<Vec<u64>, usize>,
    generators: Vec<usize>,
}

impl AbelianGroup {
    /// Builds the group on `carrier` (ids, in the order that fixes the
    /// generator choice) with identity `identity` and multiplication `op`.
    pub fn from_op(carrier: Vec<usize>, identity: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let n = carrier.len();
        let position: HashMap<usize, usize> = carrier.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let id_pos = *position.get(&identity).ok_or(GroupError::MissingIdentity(identity))?;
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let c = op(carrier[i], carrier[j]);
                table[i * n + j] = *position.get(&c).ok_or(GroupError::NotClosed(carrier[i], carrier[j]))?;
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| table[i * n + j] == id_pos)
                .ok_or(GroupError::NoInverse(carrier[i]))?;
        }

        // Greedy generators in carrier order, each with the least power
        // falling into the subgroup generated so far.
        let mut normal: Vec<Option<Vec<i128>>> = vec![None; n];
        normal[id_pos] = Some(Vec::new());
        let mut members = vec![id_pos];
        let mut generators = Vec::new();
        let mut relations: Vec<Vec<i128>> = Vec::new();
        for x in 0..n {
            if normal[x].is_some() {
                continue;
            }
            let k = generators.len();
            let mut pw = x;
            let mut m = 1i128;
            while normal[pw].is_none() {
                pw = table[pw * n + x];
                m += 1;
            }
            let mut rel: Vec<i128> = normal[pw].as_ref().unwrap().iter().map(|&a| -a).collect();
            rel.resize(k, 0);
            rel.push(m);
            relations.push(rel);
            for v in normal.iter_mut().flatten() {
                v.resize(k + 1, 0);
            }
            let base = members.clone();
            let mut xj = id_pos;
            for j in 1..m {
                xj = table[xj * n + x];
                for &h in &base {
                    let e = table[xj * n + h];
                    let mut v = normal[h].clone().unwrap();
                    v[k] = j;
                    normal[e] = Some(v);
                    members.push(e);
                }
            }
            generators.push(x);
        }
        let k = generators.len();
        for r in relations.iter_mut() {
            r.resize(k, 0);
        }
        let smith = SmithQuotient::new(&relations, k)?;
        let keep = smith.nontrivial();
        let factors: Vec<u64> = keep.iter().map(|&i| smith.diag[i] as u64).collect();
        debug_assert!(factors.iter().all(|&d| d > 1));
        let mut coords = vec![Vec::new(); n];
        let mut by_coords = HashMap::with_capacity(n);
        for i in 0..n {
            let mut v = normal[i].clone().unwrap();
            v.resize(k, 0);
            let z = smith.coords(&v)?;
            let c: Vec<u64> = keep.iter().map(|&j| z[j] as u64).collect();
            by_coords.insert(c.clone(), i);
            coords[i] = c;
        }
        debug_assert_eq!(by_coords.len(), n, "coordinates must be injective");
        let cyclic_generators = (0..factors.len())
            .map(|j| {
                let mut c = vec![0u64; factors.len()];
                c[j] = 1;
                by_coords[&c]
            })
            .collect();
        Ok(AbelianGroup {
            carrier,
            position,
            identity: id_pos,
            table,
            inverse,
            factors,
            coords,
            by_coords,
            generators: cyclic_generators,
        })
    }

    pub fn trivial(identity: usize) -> Self {
        Self::from_op(vec![identity], identity, |_, _| identity).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    /// Invariant factors, ascending, each dividing the next.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    #[inline]
    pub fn carrier(&self, pos: usize) -> usize {
        self.carrier[pos]
    }

    pub fn carriers(&self) -> &[usize] {
        &self.carrier
    }

    pub fn position(&self, carrier_id: usize) -> Option<usize> {
        self.position.get(&carrier_id).copied()
    }

    pub fn coords(&self, pos: usize) -> &[u64] {
        &self.coords[pos]
    }

    pub fn from_coords(&self, c: &[u64]) -> usize {
        let reduced: Vec<u64> = c.iter().zip(&self.factors).map(|(&x, &d)| x % d).collect();
        self.by_coords[&reduced]
    }

    /// Positions of the generators of the cyclic factors.
    pub fn cyclic_generators(&self) -> &[usize] {
        &self.generators
    }

    /// Exhaustive check of associativity and commutativity.
    pub fn check_axioms(&self) -> bool {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
