//! Finite-dimensional associative algebras over `Z/pZ` given by structure
//! constants, groupoid gradings on a homogeneous basis, and the strong and
//! epsilon-strong grading tests.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::FiniteGroupoid;
use crate::zp::{Fp, NotPrime, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    NotPrime(#[from] NotPrime),
    #[error("structure constant ({0}, {1}, {2}) out of range")]
    IndexOutOfRange(usize, usize, usize),
    #[error("identity vector has length {got}, expected {expected}")]
    BadIdentityLength { got: usize, expected: usize },
    #[error("(e{0} e{1}) e{2} != e{0} (e{1} e{2})")]
    NonAssociative(usize, usize, usize),
    #[error("identity fails on basis vector e{0}")]
    BadIdentity(usize),
    #[error("degree list has length {got}, expected {expected}")]
    BadDegreeLength { got: usize, expected: usize },
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("product e{0} e{1} violates the grading")]
    GradingViolation(usize, usize),
    #[error("identity has a component outside the identity morphisms")]
    IdentityNotInR,
    #[error("not epsilon-strongly graded at `{0}`: {1}")]
    NotEpsilonStrong(String, String),
    #[error("no solution for the center map at `{0}`")]
    NoSolution(String),
    #[error("center map at `{0}` is not unique")]
    NotUnique(String),
    #[error("center map at `{0}` is not a ring isomorphism")]
    NotRingIso(String),
}

type Res<T> = Result<T, AlgebraError>;

/// An associative unital algebra over `Z/pZ` with basis `e_0, ..., e_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructAlgebra {
    field: Fp,
    dim: usize,
    table: Vec<Vec<(usize, u32)>>,
    one: Vec<u32>,
    labels: Vec<String>,
}

impl StructAlgebra {
    /// Builds and validates an algebra from sparse constants
    /// `e_i e_j = sum c e_k` given as `(i, j, k, c)`; repeated entries add up.
    pub fn new(p: u32, dim: usize, sc: &[(usize, usize, usize, u32)], one: Vec<u32>) -> Res<Self> {
        let alg = Self::new_unchecked(p, dim, sc, one)?;
        alg.check_axioms()?;
        Ok(alg)
    }

    /// As [`StructAlgebra::new`] but without the associativity and identity checks.
    pub fn new_unchecked(p: u32, dim: usize, sc: &[(usize, usize, usize, u32)], one: Vec<u32>) -> Res<Self> {
        let field = Fp::new(p)?;
        if one.len() != dim {
            return Err(AlgebraError::BadIdentityLength { got: one.len(), expected: dim });
        }
        let mut dense: Vec<Vec<u32>> = vec![Vec::new(); dim * dim];
        for &(i, j, k, c) in sc {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange(i, j, k));
            }
            let row = &mut dense[i * dim + j];
            if row.is_empty() {
                row.resize(dim, 0);
            }
            row[k] = field.add(row[k], c % p);
        }
        let table = dense
            .into_iter()
            .map(|row| row.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect())
            .collect();
        let one = one.into_iter().map(|c| c % p).collect();
        let labels = (0..dim).map(|i| format!("e{i}")).collect();
        Ok(StructAlgebra { field, dim, table, one, labels })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    pub fn check_axioms(&self) -> Res<()> {
        let m = self.dim;
        for i in 0..m {
            let e = self.unit(i);
            if self.mul(&self.one, &e) != e || self.mul(&e, &self.one) != e {
                return Err(AlgebraError::BadIdentity(i));
            }
        }
        let f = self.field;
        let mut left = self.zero();
        let mut right = self.zero();
        for i in 0..m {
            for j in 0..m {
                let ij = self.product_terms(i, j);
                for k in 0..m {
                    let jk = self.product_terms(j, k);
                    if ij.is_empty() && jk.is_empty() {
                        continue;
                    }
                    left.iter_mut().for_each(|c| *c = 0);
                    right.iter_mut().for_each(|c| *c = 0);
                    for &(t, a) in ij {
                        for &(u, c) in self.product_terms(t, k) {
                            left[u] = f.add(left[u], f.mul(a, c));
                        }
                    }
                    for &(t, a) in jk {
                        for &(u, c) in self.product_terms(i, t) {
                            right[u] = f.add(right[u], f.mul(a, c));
                        }
                    }
                    if left != right {
                        return Err(AlgebraError::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[u32] {
        &self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// Sparse product `e_i e_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> Vec<u32> {
        let mut v = self.zero();
        for &(k, c) in self.product_terms(i, j) {
            v[k] = c;
        }
        v
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in self.product_terms(i, j) {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    /// All nonzero structure constants as `(i, j, k, c)`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for &(k, c) in self.product_terms(i, j) {
                    out.push((i, j, k, c));
                }
            }
        }
        out
    }

    /// Center of the subalgebra spanned by `sub`: elements of `sub`
    /// commuting with every basis vector of `sub`.
    pub fn center_of(&self, sub: &Subspace) -> Subspace {
        let f = self.field;
        let basis = sub.basis();
        let d = basis.len();
        // Unknown coefficients c_a; equations sum_a c_a (b_a v - v b_a) = 0.
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for v in basis {
            let cols: Vec<Vec<u32>> = basis.iter().map(|b| f.vsub(&self.mul(b, v), &self.mul(v, b))).collect();
            for t in 0..self.dim {
                rows.push((0..d).map(|a| cols[a][t]).collect());
            }
        }
        let ker = f.kernel(&rows, d);
        Subspace::span(f, self.dim, ker.iter().map(|c| sub.combine(c)))
    }

    /// `span { x y : x in a, y in b }` over basis vectors.
    pub fn product_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let gens: Vec<Vec<u32>> = a.basis().iter().flat_map(|x| b.basis().iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        Subspace::span(self.field, self.dim, gens)
    }

    /// The multiplicative identity of the subalgebra `sub`, if it has one.
    pub fn internal_identity(&self, sub: &Subspace) -> Option<Vec<u32>> {
        let f = self.field;
        let basis = sub.basis();
        let d = basis.len();
        if d == 0 {
            return Some(self.zero());
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for v in basis {
            let left: Vec<Vec<u32>> = basis.iter().map(|b| self.mul(b, v)).collect();
            let right: Vec<Vec<u32>> = basis.iter().map(|b| self.mul(v, b)).collect();
            for t in 0..self.dim {
                rows.push((0..d).map(|a| left[a][t]).collect::<Vec<u32>>());
                rhs.push(v[t]);
                rows.push((0..d).map(|a| right[a][t]).collect::<Vec<u32>>());
                rhs.push(v[t]);
            }
        }
        let (x, _) = f.solve(&rows, &rhs, d)?;
        Some(sub.combine(&x))
    }

    /// Renders an element as a sum over basis labels.
    pub fn render(&self, x: &[u32]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { self.labels[i].clone() } else { format!("{c}*{}", self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// An algebra graded by a finite groupoid on a homogeneous basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    alg: StructAlgebra,
    groupoid: Arc<FiniteGroupoid>,
    deg: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl GradedAlgebra {
    pub fn alg(&self) -> &StructAlgebra {
        &self.alg
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn groupoid_arc(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn deg(&self, i: usize) -> usize {
        self.deg[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    pub fn field(&self) -> Fp {
        self.alg.field()
    }

    /// Basis indices of degree `g`.
    pub fn component_basis(&self, g: usize) -> &[usize] {
        &self.components[g]
    }

    pub fn component(&self, g: usize) -> Subspace {
        Subspace::span(self.alg.field(), self.alg.dim(), self.components[g].iter().map(|&i| self.alg.unit(i)))
    }

    /// The component `S_e` at the identity of object `e`.
    pub fn object_component(&self, e: usize) -> Subspace {
        self.component(self.groupoid.identity(e))
    }

    /// `R`, the sum of the components at identity morphisms.
    pub fn base_ring(&self) -> Subspace {
        let g = &self.groupoid;
        Subspace::span(
            self.alg.field(),
            self.alg.dim(),
            (0..g.num_objects()).flat_map(|e| self.components[g.identity(e)].iter().map(|&i| self.alg.unit(i))),
        )
    }

    pub fn product_span(&self, g: usize, h: usize) -> Subspace {
        self.alg.product_span(&self.component(g), &self.component(h))
    }

    /// Same grading, different structure constants on the same basis.
    pub fn with_algebra(&self, alg: StructAlgebra) -> GradedAlgebra {
        assert_eq!(alg.dim(), self.alg.dim());
        GradedAlgebra { alg, groupoid: self.groupoid.clone(), deg: self.deg.clone(), components: self.components.clone() }
    }

    /// Degree of a homogeneous element, `None` for zero or mixed support.
    pub fn degree_of(&self, x: &[u32]) -> Option<usize> {
        let mut d = None;
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                match d {
                    None => d = Some(self.deg[i]),
                    Some(g) if g != self.deg[i] => return None,
                    _ => {}
                }
            }
        }
        d
    }
}

/// Checks the grading law on all basis pairs and that `1_S` lies in `R`.
pub fn validate_grading(alg: StructAlgebra, groupoid: Arc<FiniteGroupoid>, deg: Vec<usize>) -> Res<GradedAlgebra> {
    let m = alg.dim();
    if deg.len() != m {
        return Err(AlgebraError::BadDegreeLength { got: deg.len(), expected: m });
    }
    for i in 0..m {
        for j in 0..m {
            let terms = alg.product_terms(i, j);
            if terms.is_empty() {
                continue;
            }
            match groupoid.comp(deg[i], deg[j]) {
                Some(gh) => {
                    if terms.iter().any(|&(k, _)| deg[k] != gh) {
                        return Err(AlgebraError::GradingViolation(i, j));
                    }
                }
                None => return Err(AlgebraError::GradingViolation(i, j)),
            }
        }
    }
    if alg.one().iter().enumerate().any(|(i, &c)| c != 0 && !groupoid.is_identity(deg[i])) {
        return Err(AlgebraError::IdentityNotInR);
    }
    let mut components = vec![Vec::new(); groupoid.num_morphisms()];
    for (i, &g) in deg.iter().enumerate() {
        components[g].push(i);
    }
    Ok(GradedAlgebra { alg, groupoid, deg, components })
}

/// Degrees given by morphism ids.
pub fn validate_grading_by_ids(alg: StructAlgebra, groupoid: Arc<FiniteGroupoid>, deg: &[String]) -> Res<GradedAlgebra> {
    let idx = deg
        .iter()
        .map(|s| groupoid.morphism(s).ok_or_else(|| AlgebraError::UnknownMorphism(s.clone())))
        .collect::<Res<Vec<_>>>()?;
    validate_grading(alg, groupoid, idx)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongFailure {
    pub g: String,
    pub h: String,
    pub product_dim: usize,
    pub target_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongReport {
    pub strong: bool,
    pub pairs_checked: usize,
    pub failures: Vec<StrongFailure>,
}

impl StrongReport {
    pub fn witness(&self) -> Option<&StrongFailure> {
        self.failures.first()
    }
}

/// `span(S_g S_h) = S_{gh}` for all composable pairs, in lexicographic order.
pub fn is_strongly_graded(s: &GradedAlgebra) -> StrongReport {
    let g = s.groupoid();
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for t in g.composable_tuples(2) {
        let (a, b) = (t[0], t[1]);
        let gh = g.comp(a, b).unwrap();
        let product_dim = s.product_span(a, b).dim();
        let target_dim = s.component_basis(gh).len();
        pairs_checked += 1;
        if product_dim != target_dim {
            failures.push(StrongFailure { g: g.id(a).to_string(), h: g.id(b).to_string(), product_dim, target_dim });
        }
    }
    StrongReport { strong: failures.is_empty(), pairs_checked, failures }
}

/// The elements `eps_g`, indexed by morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonSystem {
    pub eps: Vec<Vec<u32>>,
}

impl EpsilonSystem {
    pub fn get(&self, g: usize) -> &[u32] {
        &self.eps[g]
    }
}

/// Solves for the identity of each `span(S_g S_{g^-1})` and verifies
/// `eps_g s = s = s eps_{g^-1}` on a basis of every `S_g`.
pub fn compute_epsilons(s: &GradedAlgebra) -> Res<EpsilonSystem> {
    let g = s.groupoid();
    let alg = s.alg();
    let mut eps = Vec::with_capacity(g.num_morphisms());
    for m in 0..g.num_morphisms() {
        let span = s.product_span(m, g.inv(m));
        let e = alg.internal_identity(&span).ok_or_else(|| {
            AlgebraError::NotEpsilonStrong(g.id(m).to_string(), "product span has no identity".into())
        })?;
        eps.push(e);
    }
    for m in 0..g.num_morphisms() {
        let left = &eps[m];
        let right = &eps[g.inv(m)];
        for &i in s.component_basis(m) {
            let x = alg.unit(i);
            if alg.mul(left, &x) != x {
                return Err(AlgebraError::NotEpsilonStrong(g.id(m).to_string(), format!("eps_g {} != {}", alg.labels()[i], alg.labels()[i])));
            }
            if alg.mul(&x, right) != x {
                return Err(AlgebraError::NotEpsilonStrong(
                    g.id(m).to_string(),
                    format!("{} eps_g^-1 != {}", alg.labels()[i], alg.labels()[i]),
                ));
            }
        }
    }
    Ok(EpsilonSystem { eps })
}

/// Centers `Z(S_e)` per object.
pub fn object_centers(s: &GradedAlgebra) -> Vec<Subspace> {
    (0..s.groupoid().num_objects()).map(|e| s.alg().center_of(&s.object_component(e))).collect()
}

/// `Z(eps_g R) = Z(S_{c(g)}) eps_g`.
pub fn cut_center(s: &GradedAlgebra, eps: &EpsilonSystem, centers: &[Subspace], g: usize) -> Subspace {
    let c = s.groupoid().cod(g);
    let alg = s.alg();
    Subspace::span(alg.field(), alg.dim(), centers[c].basis().iter().map(|b| alg.mul(b, eps.get(g))))
}

/// A linear map between subspaces of `S`, given by the images of the
/// domain's echelon basis.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub domain: Subspace,
    pub codomain: Subspace,
    pub images: Vec<Vec<u32>>,
}

impl LinearMap {
    pub fn apply(&self, x: &[u32]) -> Option<Vec<u32>> {
        let c = self.domain.coords(x)?;
        let f = self.domain.field();
        let mut out = vec![0; self.domain.ambient()];
        for (img, &ci) in self.images.iter().zip(&c) {
            f.axpy(&mut out, ci, img);
        }
        Some(out)
    }

    pub fn is_bijective(&self) -> bool {
        let f = self.domain.field();
        self.domain.dim() == self.codomain.dim() && f.rank(&self.images) == self.domain.dim()
    }
}

/// `gamma_g : Z(eps_{g^-1} R) -> Z(eps_g R)` with `gamma_g(b) s = s b` for
/// all `s` in `S_g`.
pub fn gamma_map(s: &GradedAlgebra, eps: &EpsilonSystem, centers: &[Subspace], g: usize) -> Res<LinearMap> {
    let grp = s.groupoid();
    let alg = s.alg();
    let f = alg.field();
    let domain = cut_center(s, eps, centers, grp.inv(g));
    let codomain = cut_center(s, eps, centers, g);
    let comp: Vec<Vec<u32>> = s.component_basis(g).iter().map(|&i| alg.unit(i)).collect();
    let k = codomain.dim();
    let mut rows = Vec::new();
    let cols: Vec<Vec<Vec<u32>>> = codomain.basis().iter().map(|y| comp.iter().map(|x| alg.mul(y, x)).collect()).collect();
    for (si, _) in comp.iter().enumerate() {
        for t in 0..alg.dim() {
            rows.push((0..k).map(|a| cols[a][si][t]).collect::<Vec<u32>>());
        }
    }
    let mut images = Vec::new();
    for b in domain.basis() {
        let mut rhs = Vec::new();
        for x in &comp {
            rhs.extend(alg.mul(x, b));
        }
        let (y, hom) = f.solve(&rows, &rhs, k).ok_or_else(|| AlgebraError::NoSolution(grp.id(g).to_string()))?;
        if !hom.is_empty() {
            return Err(AlgebraError::NotUnique(grp.id(g).to_string()));
        }
        images.push(codomain.combine(&y));
    }
    if domain.dim() == 0 && k > 0 {
        return Err(AlgebraError::NotUnique(grp.id(g).to_string()));
    }
    let map = LinearMap { domain, codomain, images };
    if !map.is_bijective() {
        return Err(AlgebraError::NotRingIso(grp.id(g).to_string()));
    }
    let basis = map.domain.basis().to_vec();
    for (a, x) in basis.iter().enumerate() {
        for y in &basis {
            let lhs = map.apply(&alg.mul(x, y)).expect("domain is a subalgebra");
            if lhs != alg.mul(&map.images[a], &map.apply(y).unwrap()) {
                return Err(AlgebraError::NotRingIso(grp.id(g).to_string()));
            }
        }
    }
    if map.apply(eps.get(grp.inv(g))).as_deref() != Some(eps.get(g)) {
        return Err(AlgebraError::NotRingIso(grp.id(g).to_string()));
    }
    Ok(map)
}

#[derive(Clone, Debug, Serialize)]
pub struct MIsoReport {
    pub g: String,
    pub h: String,
    pub tensor_dim: usize,
    pub image_dim: usize,
    pub target_dim: usize,
    pub surjective: bool,
    pub sides_agree: bool,
}

impl MIsoReport {
    pub fn passed(&self) -> bool {
        self.tensor_dim == self.target_dim && self.surjective && self.sides_agree
    }
}

/// Checks that multiplication `S_g (x)_R S_h -> eps_g S_{gh}` is an
/// isomorphism and that `eps_g S_{gh} = S_{gh} eps_{h^-1}`.
pub fn check_m_iso(s: &GradedAlgebra, eps: &EpsilonSystem, g: usize, h: usize) -> MIsoReport {
    let grp = s.groupoid();
    let alg = s.alg();
    let f = alg.field();
    let gh = grp.comp(g, h).expect("composable pair");
    let bg = s.component_basis(g);
    let bh = s.component_basis(h);
    let (a, b) = (bg.len(), bh.len());
    let pos_g = |k: usize| bg.iter().position(|&i| i == k);
    let pos_h = |k: usize| bh.iter().position(|&i| i == k);
    let r_basis = s.component_basis(grp.identity(grp.dom(g)));
    let mut relations = Vec::new();
    for (x, &i) in bg.iter().enumerate() {
        for &r in r_basis {
            let sr = alg.basis_mul(i, r);
            for (y, &j) in bh.iter().enumerate() {
                let rt = alg.basis_mul(r, j);
                let mut rel = vec![0u32; a * b];
                for (k, &c) in sr.iter().enumerate() {
                    if c != 0 {
                        let xi = pos_g(k).expect("S_g R lies in S_g");
                        rel[xi * b + y] = f.add(rel[xi * b + y], c);
                    }
                }
                for (k, &c) in rt.iter().enumerate() {
                    if c != 0 {
                        let yj = pos_h(k).expect("R S_h lies in S_h");
                        rel[x * b + yj] = f.sub(rel[x * b + yj], c);
                    }
                }
                relations.push(rel);
            }
        }
    }
    let tensor_dim = a * b - f.rank(&relations);
    let image = s.product_span(g, h);
    let target_comp = s.component(gh);
    let left = Subspace::span(f, alg.dim(), target_comp.basis().iter().map(|x| alg.mul(eps.get(g), x)));
    let right = Subspace::span(f, alg.dim(), target_comp.basis().iter().map(|x| alg.mul(x, eps.get(grp.inv(h)))));
    MIsoReport {
        g: grp.id(g).to_string(),
        h: grp.id(h).to_string(),
        tensor_dim,
        image_dim: image.dim(),
        target_dim: left.dim(),
        surjective: image.same_as(&left),
        sides_agree: left.same_as(&right),
    }
}

/// File format for (optionally graded) algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub p: u32,
    pub dim: usize,
    pub sc: Vec<[u64; 4]>,
    pub one: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraSpec {
    pub fn to_algebra(&self) -> Res<StructAlgebra> {
        let sc: Vec<(usize, usize, usize, u32)> =
            self.sc.iter().map(|&[i, j, k, c]| (i as usize, j as usize, k as usize, (c % self.p as u64) as u32)).collect();
        let alg = StructAlgebra::new(self.p, self.dim, &sc, self.one.clone())?;
        Ok(match &self.labels {
            Some(l) if l.len() == self.dim => alg.with_labels(l.clone()),
            _ => alg,
        })
    }

    pub fn from_graded(s: &GradedAlgebra) -> AlgebraSpec {
        let mut spec = Self::from_algebra(s.alg());
        spec.deg = Some(s.degrees().iter().map(|&g| s.groupoid().id(g).to_string()).collect());
        spec
    }

    pub fn from_algebra(a: &StructAlgebra) -> AlgebraSpec {
        AlgebraSpec {
            p: a.p(),
            dim: a.dim(),
            sc: a.structure_constants().into_iter().map(|(i, j, k, c)| [i as u64, j as u64, k as u64, c as u64]).collect(),
            one: a.one().to_vec(),
            deg: None,
            labels: Some(a.labels().to_vec()),
        }
    }
}

/// 2x2 matrix units `e11, e12, e21, e22` over `Z/pZ`.
pub fn matrix_units(p: u32) -> Res<StructAlgebra> {
    let mut sc = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for d in 0..2 {
                sc.push((2 * a + b, 2 * b + d, 2 * a + d, 1));
            }
        }
    }
    Ok(StructAlgebra::new(p, 4, &sc, vec![1, 0, 0, 1])?.with_labels(vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()]))
}

/// The group algebra of `Z/m` over `Z/pZ` with basis `g^0, ..., g^{m-1}`.
pub fn cyclic_group_algebra(p: u32, m: usize) -> Res<StructAlgebra> {
    let mut sc = Vec::new();
    for i in 0..m {
        for j in 0..m {
            sc.push((i, j, (i + j) % m, 1));
        }
    }
    let mut one = vec![0; m];
    one[0] = 1;
    let labels = (0..m).map(|i| if i == 0 { "1".to_string() } else { format!("g^{i}") }).collect();
    Ok(StructAlgebra::new(p, m, &sc, one)?.with_labels(labels))
}
