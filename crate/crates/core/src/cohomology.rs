//! Cochains of a groupoid with values in a unital partial module, the
//! coboundary maps and the groups `H^n`.
//!
//! An `n`-cochain assigns to each composable tuple `(g_1, ..., g_n)` a unit
//! of the cut monoid `B e` with `e = 1_{g_1} 1_{g_1 g_2} ... 1_{g_1...g_n}`,
//! an element of `B_{c(g_1)}`. A 0-cochain is a unit of each `B_e`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupError};
use crate::action::PartialGModule;
use crate::finalg::StructureError;
use crate::intmat::{echelon_coords, kernel_mod, LatticeError, SmithQuotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("{what} has {size} elements, above the cap {cap}")]
    CapExceeded { what: String, size: String, cap: u128 },
    #[error("coboundary is not a homomorphism: {0}")]
    NonHomomorphicDelta(String),
    #[error("value at {0} is not a unit of its cut ideal")]
    OutsideCut(String),
    #[error("degree {0} was not prepared (top degree {1})")]
    DegreeOutOfRange(usize, usize),
    #[error("cochain has {got} values, degree {degree} needs {expected}")]
    BadLength { degree: usize, expected: usize, got: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

type Res<T> = Result<T, CohomologyError>;

/// Values indexed like [`Complex::tuples`]; each is an element id of the
/// component the tuple lands in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<usize>,
}

/// The unit group of `B_{c(g_1)} e` for `e = 1_{g_1} 1_{g_1 g_2} ...`.
pub fn cut_unit_group(m: &PartialGModule, t: &[usize]) -> Res<AbelianGroup> {
    let (obj, e) = cut_idempotent(m, t);
    Ok(m.component(obj).cut_units(e)?)
}

fn cut_idempotent(m: &PartialGModule, t: &[usize]) -> (usize, usize) {
    let grp = m.groupoid();
    let obj = grp.cod(t[0]);
    let comp = m.component(obj);
    let mut e = comp.one();
    let mut acc = t[0];
    e = comp.mul(e, m.idem(acc));
    for &g in &t[1..] {
        acc = grp.comp(acc, g).expect("composable tuple");
        e = comp.mul(e, m.idem(acc));
    }
    (obj, e)
}

#[derive(Clone, Debug)]
struct Degree {
    tuples: Vec<Vec<usize>>,
    home: Vec<usize>,
    groups: Vec<Arc<AbelianGroup>>,
    index: HashMap<Vec<usize>, usize>,
    offsets: Vec<usize>,
    moduli: Vec<i128>,
}

impl Degree {
    fn len(&self) -> usize {
        self.tuples.len()
    }

    fn order(&self) -> Option<u128> {
        self.groups.iter().try_fold(1u128, |acc, g| acc.checked_mul(g.order() as u128))
    }
}

/// Cochain groups `C^0, ..., C^top` of one module.
#[derive(Clone, Debug)]
pub struct Complex {
    module: PartialGModule,
    degrees: Vec<Degree>,
}

impl Complex {
    pub fn new(module: &PartialGModule, top: usize) -> Res<Complex> {
        let grp = module.groupoid();
        let mut cache: HashMap<(usize, usize), Arc<AbelianGroup>> = HashMap::new();
        let mut degrees = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let (tuples, cuts): (Vec<Vec<usize>>, Vec<(usize, usize)>) = if n == 0 {
                (0..grp.num_objects()).map(|e| (Vec::new(), (e, module.component(e).one()))).unzip()
            } else {
                grp.composable_tuples(n).into_iter().map(|t| {
                    let c = cut_idempotent(module, &t);
                    (t, c)
                }).unzip()
            };
            let mut groups = Vec::with_capacity(tuples.len());
            for &(obj, e) in &cuts {
                let g = match cache.get(&(obj, e)) {
                    Some(g) => g.clone(),
                    None => {
                        let g = Arc::new(module.component(obj).cut_units(e)?);
                        cache.insert((obj, e), g.clone());
                        g
                    }
                };
                groups.push(g);
            }
            let mut offsets = Vec::with_capacity(tuples.len());
            let mut moduli = Vec::new();
            for g in &groups {
                offsets.push(moduli.len());
                moduli.extend(g.factors().iter().map(|&d| d as i128));
            }
            let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
            let home = cuts.iter().map(|c| c.0).collect();
            degrees.push(Degree { tuples, home, groups, index, offsets, moduli });
        }
        Ok(Complex { module: module.clone(), degrees })
    }

    pub fn module(&self) -> &PartialGModule {
        &self.module
    }

    pub fn top(&self) -> usize {
        self.degrees.len() - 1
    }

    fn deg(&self, n: usize) -> Res<&Degree> {
        self.degrees.get(n).ok_or(CohomologyError::DegreeOutOfRange(n, self.top()))
    }

    /// Composable `n`-tuples; in degree 0 one empty tuple per object.
    pub fn tuples(&self, n: usize) -> &[Vec<usize>] {
        &self.degrees[n].tuples
    }

    pub fn cut_group(&self, n: usize, i: usize) -> &AbelianGroup {
        &self.degrees[n].groups[i]
    }

    /// `|C^n|`, or `None` on overflow.
    pub fn order(&self, n: usize) -> Option<u128> {
        self.degrees[n].order()
    }

    /// Moduli of the cyclic coordinates of `C^n`.
    pub fn moduli(&self, n: usize) -> &[i128] {
        &self.degrees[n].moduli
    }

    pub fn identity(&self, n: usize) -> Cochain {
        let d = &self.degrees[n];
        Cochain { degree: n, values: d.groups.iter().map(|g| g.carrier(g.identity())).collect() }
    }

    pub fn mul(&self, f: &Cochain, g: &Cochain) -> Cochain {
        assert_eq!(f.degree, g.degree);
        let d = &self.degrees[f.degree];
        let values = (0..d.len())
            .map(|i| {
                let c = self.module.component(d.home[i]);
                c.mul(f.values[i], g.values[i])
            })
            .collect();
        Cochain { degree: f.degree, values }
    }

    pub fn inv(&self, f: &Cochain) -> Cochain {
        let d = &self.degrees[f.degree];
        let values = (0..d.len())
            .map(|i| {
                let g = &d.groups[i];
                g.carrier(g.inv(g.position(f.values[i]).expect("valid cochain")))
            })
            .collect();
        Cochain { degree: f.degree, values }
    }

    pub fn validate(&self, f: &Cochain) -> Res<()> {
        let d = self.deg(f.degree)?;
        if f.values.len() != d.len() {
            return Err(CohomologyError::BadLength { degree: f.degree, expected: d.len(), got: f.values.len() });
        }
        for (i, &x) in f.values.iter().enumerate() {
            if d.groups[i].position(x).is_none() {
                return Err(CohomologyError::OutsideCut(self.tuple_label(f.degree, i)));
            }
        }
        Ok(())
    }

    fn value(&self, f: &Cochain, t: &[usize]) -> usize {
        f.values[self.degrees[f.degree].index[t]]
    }

    fn inverse_at(&self, f: &Cochain, t: &[usize]) -> usize {
        let d = &self.degrees[f.degree];
        let i = d.index[t];
        let g = &d.groups[i];
        g.carrier(g.inv(g.position(f.values[i]).expect("valid cochain")))
    }

    /// The coboundary `delta^n f`, checked to land in `C^{n+1}`.
    pub fn delta(&self, f: &Cochain) -> Res<Cochain> {
        let n = f.degree;
        let target = self.deg(n + 1)?;
        let m = &self.module;
        let grp = m.groupoid();
        let mut values = Vec::with_capacity(target.len());
        for (k, t) in target.tuples.iter().enumerate() {
            let obj = target.home[k];
            let comp = m.component(obj);
            let e = target.groups[k].carrier(target.groups[k].identity());
            let g1 = t[0];
            let v = if n == 0 {
                let b_d = f.values[grp.dom(g1)];
                let b_c = f.values[grp.cod(g1)];
                let g = &self.degrees[0].groups[obj];
                let inv = g.carrier(g.inv(g.position(b_c).expect("valid cochain")));
                comp.mul(m.theta_cut(g1, b_d), inv)
            } else {
                let mut acc = m.theta_cut(g1, self.value(f, &t[1..]));
                for i in 1..=n {
                    let mut s: Vec<usize> = t[..i - 1].to_vec();
                    s.push(grp.comp(t[i - 1], t[i]).expect("composable"));
                    s.extend(&t[i + 1..]);
                    let x = if i % 2 == 1 { self.inverse_at(f, &s) } else { self.value(f, &s) };
                    acc = comp.mul(acc, x);
                }
                let last = &t[..n];
                let x = if (n + 1) % 2 == 1 { self.inverse_at(f, last) } else { self.value(f, last) };
                comp.mul(acc, x)
            };
            let v = comp.mul(v, e);
            if target.groups[k].position(v).is_none() {
                return Err(CohomologyError::OutsideCut(self.tuple_label(n + 1, k)));
            }
            values.push(v);
        }
        Ok(Cochain { degree: n + 1, values })
    }

    /// Cyclic coordinates of `f`, concatenated over tuples.
    pub fn coords(&self, f: &Cochain) -> Vec<i128> {
        let d = &self.degrees[f.degree];
        let mut out = Vec::with_capacity(d.moduli.len());
        for (i, g) in d.groups.iter().enumerate() {
            out.extend(g.coords(g.position(f.values[i]).expect("valid cochain")).iter().map(|&c| c as i128));
        }
        out
    }

    pub fn from_coords(&self, n: usize, c: &[i128]) -> Cochain {
        let d = &self.degrees[n];
        let values = d
            .groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let k = g.factors().len();
                let part: Vec<u64> = c[d.offsets[i]..d.offsets[i] + k]
                    .iter()
                    .zip(g.factors())
                    .map(|(&x, &m)| x.rem_euclid(m as i128) as u64)
                    .collect();
                g.carrier(g.from_coords(&part))
            })
            .collect();
        Cochain { degree: n, values }
    }

    /// The cochain with mixed-radix index `idx` over group positions.
    pub fn cochain_at(&self, n: usize, mut idx: u128) -> Cochain {
        let d = &self.degrees[n];
        let mut values = vec![0; d.len()];
        for i in (0..d.len()).rev() {
            let g = &d.groups[i];
            let o = g.order() as u128;
            values[i] = g.carrier((idx % o) as usize);
            idx /= o;
        }
        Cochain { degree: n, values }
    }

    pub fn index_of(&self, f: &Cochain) -> u128 {
        let d = &self.degrees[f.degree];
        d.groups
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, g)| acc * g.order() as u128 + g.position(f.values[i]).expect("valid cochain") as u128)
    }

    pub fn random<R: Rng>(&self, n: usize, rng: &mut R) -> Cochain {
        let d = &self.degrees[n];
        let values = d.groups.iter().map(|g| g.carrier(rng.gen_range(0..g.order()))).collect();
        Cochain { degree: n, values }
    }

    pub fn tuple_label(&self, n: usize, i: usize) -> String {
        let grp = self.module.groupoid();
        if n == 0 {
            return grp.objects()[i].to_string();
        }
        let ids: Vec<&str> = self.degrees[n].tuples[i].iter().map(|&g| grp.id(g)).collect();
        format!("({})", ids.join(","))
    }

    /// Values by tuple label, in tuple order.
    pub fn render(&self, f: &Cochain) -> Vec<(String, String)> {
        let d = &self.degrees[f.degree];
        (0..d.len())
            .map(|i| (self.tuple_label(f.degree, i), self.module.component(d.home[i]).name(f.values[i]).to_string()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Enumerate,
    Snf,
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "enumerate" => Ok(Backend::Enumerate),
            "snf" => Ok(Backend::Snf),
            _ => Err(format!("unknown backend `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
enum Classifier {
    Cosets(HashMap<u128, usize>),
    Smith { kernel: Vec<Vec<i128>>, pivots: Vec<usize>, smith: SmithQuotient, keep: Vec<usize>, factors: Vec<u64> },
}

/// `H^n` with one representative cocycle per class.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub order: usize,
    pub factors: Vec<u64>,
    pub representatives: Vec<Cochain>,
    pub backend: Backend,
    classifier: Classifier,
}

impl CohomologyGroup {
    /// Index of the class of a cocycle among the representatives; `None`
    /// when `f` is not a cocycle.
    pub fn class_of(&self, cx: &Complex, f: &Cochain) -> Option<usize> {
        match &self.classifier {
            Classifier::Cosets(map) => map.get(&cx.index_of(f)).copied(),
            Classifier::Smith { kernel, pivots, smith, keep, factors } => {
                let x = cx.coords(f);
                let y = echelon_coords(kernel, pivots, &x).ok()?;
                let z = smith.coords(&y).ok()?;
                Some(keep.iter().zip(factors).fold(0usize, |acc, (&j, &m)| acc * m as usize + z[j] as usize))
            }
        }
    }
}

/// Default bound on enumerated set sizes.
pub const DEFAULT_CAP: u128 = 1_000_000;

pub fn cohomology(cx: &Complex, n: usize, backend: Backend, cap: u128) -> Res<CohomologyGroup> {
    cx.deg(n + 1)?;
    match backend {
        Backend::Enumerate => enumerate_backend(cx, n, cap),
        Backend::Snf => snf_backend(cx, n, cap),
    }
}

fn checked_order(cx: &Complex, n: usize, cap: u128) -> Res<u128> {
    match cx.order(n) {
        Some(o) if o <= cap => Ok(o),
        o => Err(CohomologyError::CapExceeded {
            what: format!("C^{n}"),
            size: o.map_or("more than 2^128".into(), |o| o.to_string()),
            cap,
        }),
    }
}

fn enumerate_backend(cx: &Complex, n: usize, cap: u128) -> Res<CohomologyGroup> {
    let size = checked_order(cx, n, cap)?;
    let e_next = cx.identity(n + 1);
    let cocycles: Vec<u128> = (0..size)
        .into_par_iter()
        .map(|i| cx.delta(&cx.cochain_at(n, i)).map(|d| (d == e_next).then_some(i)))
        .collect::<Res<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let boundaries: Vec<Cochain> = if n == 0 {
        vec![cx.identity(0)]
    } else {
        let prev = checked_order(cx, n - 1, cap)?;
        let set: HashSet<Cochain> = (0..prev)
            .into_par_iter()
            .map(|i| cx.delta(&cx.cochain_at(n - 1, i)))
            .collect::<Res<HashSet<_>>>()?;
        let mut v: Vec<Cochain> = set.into_iter().collect();
        v.sort();
        v
    };
    let zset: HashSet<u128> = cocycles.iter().copied().collect();
    let mut coset_of: HashMap<u128, usize> = HashMap::with_capacity(cocycles.len());
    let mut reps = Vec::new();
    for &z in &cocycles {
        if coset_of.contains_key(&z) {
            continue;
        }
        let k = reps.len();
        let f = cx.cochain_at(n, z);
        for b in &boundaries {
            let idx = cx.index_of(&cx.mul(&f, b));
            if !zset.contains(&idx) {
                return Err(CohomologyError::NonHomomorphicDelta(format!("a coboundary times a cocycle is not a cocycle in degree {n}")));
            }
            coset_of.insert(idx, k);
        }
        reps.push(f);
    }
    let e = coset_of[&cx.index_of(&cx.identity(n))];
    let quotient = AbelianGroup::from_op((0..reps.len()).collect(), e, |a, b| {
        coset_of[&cx.index_of(&cx.mul(&reps[a], &reps[b]))]
    })?;
    Ok(CohomologyGroup {
        degree: n,
        order: reps.len(),
        factors: quotient.factors().to_vec(),
        representatives: reps,
        backend: Backend::Enumerate,
        classifier: Classifier::Cosets(coset_of),
    })
}

/// Matrix of `delta^n` in cyclic coordinates: one row per target
/// coordinate, one column per source coordinate.
pub fn delta_matrix(cx: &Complex, n: usize) -> Res<Vec<Vec<i128>>> {
    let src = cx.deg(n)?;
    let tgt = cx.deg(n + 1)?;
    let a = src.moduli.len();
    let mut d = vec![vec![0i128; a]; tgt.moduli.len()];
    let e = cx.identity(n);
    for (i, g) in src.groups.iter().enumerate() {
        for (k, &gen) in g.cyclic_generators().iter().enumerate() {
            let j = src.offsets[i] + k;
            let mut f = e.clone();
            f.values[i] = g.carrier(gen);
            let col = cx.coords(&cx.delta(&f)?);
            for (r, &c) in col.iter().enumerate() {
                if (src.moduli[j] * c) % tgt.moduli[r] != 0 {
                    return Err(CohomologyError::NonHomomorphicDelta(format!(
                        "generator {j} of C^{n} has order {} but its image does not",
                        src.moduli[j]
                    )));
                }
                d[r][j] = c;
            }
        }
    }
    // compare the matrix against direct evaluation on a few cochains
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    for _ in 0..8 {
        let f = cx.random(n, &mut rng);
        let x = cx.coords(&f);
        let y: Vec<i128> = d.iter().map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
        if cx.from_coords(n + 1, &y) != cx.delta(&f)? {
            return Err(CohomologyError::NonHomomorphicDelta(format!("matrix and map disagree in degree {n}")));
        }
    }
    Ok(d)
}

fn snf_backend(cx: &Complex, n: usize, cap: u128) -> Res<CohomologyGroup> {
    let src = cx.deg(n)?;
    let tgt = cx.deg(n + 1)?;
    let d_n = delta_matrix(cx, n)?;
    let (kernel, pivots) = kernel_mod(&d_n, &tgt.moduli, &src.moduli)?;
    let a = src.moduli.len();
    let mut relations = Vec::new();
    for (j, &m) in src.moduli.iter().enumerate() {
        let mut v = vec![0i128; a];
        v[j] = m;
        relations.push(echelon_coords(&kernel, &pivots, &v)?);
    }
    if n > 0 {
        let d_prev = delta_matrix(cx, n - 1)?;
        let cols = d_prev.first().map_or(0, |r| r.len());
        for j in 0..cols {
            let v: Vec<i128> = d_prev.iter().map(|row| row[j]).collect();
            relations.push(echelon_coords(&kernel, &pivots, &v)?);
        }
    }
    let smith = SmithQuotient::new(&relations, kernel.len())?;
    let keep = smith.nontrivial();
    let factors: Vec<u64> = keep.iter().map(|&i| smith.diag[i] as u64).collect();
    if factors.contains(&0) {
        return Err(CohomologyError::NonHomomorphicDelta("infinite quotient".into()));
    }
    let order = factors.iter().try_fold(1u128, |acc, &m| acc.checked_mul(m as u128));
    let order = match order {
        Some(o) if o <= cap => o as usize,
        o => {
            return Err(CohomologyError::CapExceeded {
                what: format!("H^{n}"),
                size: o.map_or("more than 2^128".into(), |o| o.to_string()),
                cap,
            })
        }
    };
    let mut representatives = Vec::with_capacity(order);
    for idx in 0..order {
        let mut z = vec![0i128; kernel.len()];
        let mut r = idx;
        for (&j, &m) in keep.iter().zip(&factors).rev() {
            z[j] = (r % m as usize) as i128;
            r /= m as usize;
        }
        let y = smith.lift(&z)?;
        let mut x = vec![0i128; a];
        for (yi, row) in y.iter().zip(&kernel) {
            for ((xj, &k), &m) in x.iter_mut().zip(row).zip(&src.moduli) {
                *xj = (*xj + (yi.rem_euclid(m) * k).rem_euclid(m)).rem_euclid(m);
            }
        }
        let x: Vec<i128> = x.iter().zip(&src.moduli).map(|(&v, &m)| v.rem_euclid(m)).collect();
        representatives.push(cx.from_coords(n, &x));
    }
    Ok(CohomologyGroup {
        degree: n,
        order,
        factors: factors.clone(),
        representatives,
        backend: Backend::Snf,
        classifier: Classifier::Smith { kernel, pivots, smith, keep, factors },
    })
}
