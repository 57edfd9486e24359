//! The partial skew groupoid ring `B *_theta G` of a unital partial action
//! on rings of a common prime characteristic.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::action::PartialAction;
use crate::algebra::{compute_epsilons, is_strongly_graded, validate_grading, AlgebraError, EpsilonSystem, GradedAlgebra, StructAlgebra};
use crate::finalg::FpCoordinates;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("component rings must share one prime characteristic: {0}")]
    BaseFieldMismatch(String),
    #[error("skew ring is not associative: {0}")]
    AssociativityFailure(AlgebraError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("computed eps at `{0}` differs from 1_g delta_c(g)")]
    EpsilonMismatch(String),
}

/// One block `B_g delta_g` of the skew ring basis.
#[derive(Clone, Debug)]
pub struct Block {
    pub morphism: usize,
    pub offset: usize,
    pub coords: FpCoordinates,
}

#[derive(Clone, Debug)]
pub struct SkewRing {
    pub graded: GradedAlgebra,
    pub blocks: Vec<Block>,
}

impl SkewRing {
    /// The vector of `b delta_g` for `b` in `B_g`.
    pub fn embed(&self, g: usize, b: usize) -> Vec<u32> {
        let blk = &self.blocks[g];
        let mut v = self.graded.alg().zero();
        let c = blk.coords.coords(b).expect("element of B_g");
        v[blk.offset..blk.offset + c.len()].copy_from_slice(c);
        v
    }

    /// Reads `b` back from a vector supported on the block of `g`.
    pub fn extract(&self, g: usize, v: &[u32]) -> Option<usize> {
        let blk = &self.blocks[g];
        let k = blk.coords.dim();
        if v.iter().enumerate().any(|(i, &c)| c != 0 && (i < blk.offset || i >= blk.offset + k)) {
            return None;
        }
        blk.coords.element(&v[blk.offset..blk.offset + k])
    }

    /// `eps_g = 1_g delta_{c(g)}` as predicted for skew rings.
    pub fn expected_epsilons(&self, act: &PartialAction) -> EpsilonSystem {
        let grp = act.groupoid();
        EpsilonSystem {
            eps: (0..grp.num_morphisms()).map(|g| self.embed(grp.identity(grp.cod(g)), act.idem(g))).collect(),
        }
    }
}

/// Prime characteristic common to all components.
pub fn common_characteristic(act: &PartialAction, declared: Option<u32>) -> Result<u32, SkewError> {
    let chars: BTreeSet<usize> = act.components().iter().map(|r| r.characteristic()).collect();
    if chars.len() != 1 {
        return Err(SkewError::BaseFieldMismatch(format!("characteristics {chars:?}")));
    }
    let p = *chars.iter().next().unwrap() as u32;
    if !crate::zp::is_prime(p) {
        return Err(SkewError::BaseFieldMismatch(format!("characteristic {p} is not prime")));
    }
    if let Some(q) = declared {
        if q != p {
            return Err(SkewError::BaseFieldMismatch(format!("declared p = {q}, rings have characteristic {p}")));
        }
    }
    Ok(p)
}

/// Builds `B *_theta G` with the rule
/// `(b delta_g)(b' delta_h) = b theta_g(b' 1_{g^-1}) delta_{gh}`.
pub fn build_skew_ring(act: &PartialAction, declared_p: Option<u32>) -> Result<SkewRing, SkewError> {
    let p = common_characteristic(act, declared_p)?;
    let grp = act.groupoid();
    let mut blocks = Vec::with_capacity(grp.num_morphisms());
    let mut offset = 0;
    let mut labels = Vec::new();
    let mut deg = Vec::new();
    let mut basis_elem = Vec::new();
    for g in 0..grp.num_morphisms() {
        let ring = act.component(grp.cod(g));
        let set: BTreeSet<usize> = act.image_ideal(g).into_iter().collect();
        let coords = ring
            .fp_coordinates(&set)
            .ok_or_else(|| SkewError::BaseFieldMismatch(format!("B_{} is not an F_{p}-space", grp.id(g))))?;
        for &b in &coords.basis {
            labels.push(format!("{}δ{}", ring.name(b), grp.id(g)));
            deg.push(g);
            basis_elem.push((g, b));
        }
        let k = coords.dim();
        blocks.push(Block { morphism: g, offset, coords });
        offset += k;
    }
    let dim = offset;
    let mut sc = Vec::new();
    for (i, &(g, b)) in basis_elem.iter().enumerate() {
        for (j, &(h, b2)) in basis_elem.iter().enumerate() {
            let Some(gh) = grp.comp(g, h) else { continue };
            let ring = act.component(grp.cod(g));
            let val = ring.mul(b, act.theta_cut(g, b2));
            let blk = &blocks[gh];
            let c = blk.coords.coords(val).ok_or(SkewError::AssociativityFailure(AlgebraError::GradingViolation(i, j)))?;
            for (t, &ct) in c.iter().enumerate() {
                if ct != 0 {
                    sc.push((i, j, blk.offset + t, ct));
                }
            }
        }
    }
    let mut one = vec![0u32; dim];
    for e in 0..grp.num_objects() {
        let g = grp.identity(e);
        let blk = &blocks[g];
        let c = blk.coords.coords(act.component(e).one()).expect("1 lies in B_e");
        one[blk.offset..blk.offset + c.len()].copy_from_slice(c);
    }
    let alg = StructAlgebra::new_unchecked(p, dim, &sc, one)?.with_labels(labels);
    alg.check_axioms().map_err(SkewError::AssociativityFailure)?;
    let graded = validate_grading(alg, act.groupoid_arc().clone(), deg)?;
    Ok(SkewRing { graded, blocks })
}

/// Diagnostics for one action.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SkewReport {
    pub dim: usize,
    pub global: bool,
    pub strongly_graded: bool,
    pub epsilon_strong: bool,
    pub epsilons_match: bool,
    pub strong_witness: Option<crate::algebra::StrongFailure>,
}

impl SkewReport {
    /// Epsilon-strong with the predicted epsilons, and strong iff global.
    pub fn passed(&self) -> bool {
        self.epsilon_strong && self.epsilons_match && self.strongly_graded == self.global
    }
}

pub fn skew_report(act: &PartialAction, ring: &SkewRing) -> SkewReport {
    let strong = is_strongly_graded(&ring.graded);
    let eps = compute_epsilons(&ring.graded);
    let epsilons_match = eps.as_ref().map(|e| *e == ring.expected_epsilons(act)).unwrap_or(false);
    SkewReport {
        dim: ring.graded.alg().dim(),
        global: act.is_global(),
        strongly_graded: strong.strong,
        epsilon_strong: eps.is_ok(),
        epsilons_match,
        strong_witness: strong.witness().cloned(),
    }
}
