//! JSON input files. Nested structures (groupoids, component rings) may be
//! given inline or as a path relative to the referring file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, Partial, PartialAction, PartialGModule};
use crate::algebra::{validate_grading_by_ids, AlgebraError, AlgebraSpec, GradedAlgebra, StructAlgebra};
use crate::cohomology::CohomologyError;
use crate::crossed::CrossedError;
use crate::finalg::{FiniteCommMonoid, FiniteCommRing, RingSpec, StructureError};
use crate::groupoid::{FiniteGroupoid, GroupoidError, GroupoidSpec};
use crate::leavitt::{Graph, GraphSpec, LeavittError};
use crate::skew::SkewError;

/// Any failure of the library, file handling included.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Leavitt(#[from] LeavittError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}

type Res<T> = Result<T, Error>;

/// A nested value, inline or stored in another file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(T),
}

impl<T: DeserializeOwned + Clone> Ref<T> {
    pub fn resolve(&self, base: &Path) -> Res<T> {
        match self {
            Ref::Inline(v) => Ok(v.clone()),
            Ref::Path(p) => read_json(&base.join(p)),
        }
    }
}

/// Action and module files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionSpec {
    pub groupoid: Ref<GroupoidSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rings: Option<BTreeMap<String, Ref<RingSpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoids: Option<BTreeMap<String, Ref<RingSpec>>>,
    #[serde(default)]
    pub idem: BTreeMap<String, String>,
    #[serde(default)]
    pub theta: BTreeMap<String, Vec<[String; 2]>>,
}

pub fn read_bytes(path: &Path) -> Res<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io { path: path.display().to_string(), msg: e.to_string() })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Res<T> {
    let bytes = read_bytes(path)?;
    serde_json::from_slice(&bytes).map_err(|e| Error::Parse { path: path.display().to_string(), msg: e.to_string() })
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn load_groupoid(path: &Path) -> Res<FiniteGroupoid> {
    Ok(FiniteGroupoid::validate(&read_json(path)?)?)
}

pub fn load_ring(path: &Path) -> Res<FiniteCommRing> {
    Ok(read_json::<RingSpec>(path)?.to_ring()?)
}

pub fn load_monoid(path: &Path) -> Res<FiniteCommMonoid> {
    Ok(read_json::<RingSpec>(path)?.to_monoid()?)
}

pub fn load_algebra(path: &Path) -> Res<(StructAlgebra, Option<Vec<String>>)> {
    let spec: AlgebraSpec = read_json(path)?;
    Ok((spec.to_algebra()?, spec.deg))
}

/// An algebra file with a `deg` list, graded by the given groupoid.
pub fn load_graded(alg_path: &Path, groupoid_path: &Path) -> Res<GradedAlgebra> {
    let (alg, deg) = load_algebra(alg_path)?;
    let deg = deg.ok_or_else(|| Error::Input(format!("{}: algebra file has no `deg`", alg_path.display())))?;
    let grp = Arc::new(load_groupoid(groupoid_path)?);
    Ok(validate_grading_by_ids(alg, grp, &deg)?)
}

pub fn load_graph(path: &Path) -> Res<Graph> {
    Ok(Graph::new(&read_json::<GraphSpec>(path)?)?)
}

fn components<M>(
    path: &Path,
    grp: &FiniteGroupoid,
    table: &BTreeMap<String, Ref<RingSpec>>,
    convert: impl Fn(&RingSpec) -> Result<M, StructureError>,
) -> Res<Vec<M>> {
    let base = base_dir(path);
    for k in table.keys() {
        if grp.object(k).is_none() {
            return Err(Error::Input(format!("{}: unknown object `{k}`", path.display())));
        }
    }
    grp.objects()
        .iter()
        .map(|e| {
            let r = table.get(e).ok_or_else(|| Error::Input(format!("{}: no component for object `{e}`", path.display())))?;
            Ok(convert(&r.resolve(&base)?)?)
        })
        .collect()
}

/// A partial action on rings and the declared characteristic, if any.
pub fn load_action(path: &Path) -> Res<(PartialAction, Option<u32>)> {
    let spec: ActionSpec = read_json(path)?;
    let grp = Arc::new(FiniteGroupoid::validate(&spec.groupoid.resolve(&base_dir(path))?)?);
    let rings = spec.rings.as_ref().ok_or_else(|| Error::Input(format!("{}: action file needs `rings`", path.display())))?;
    let comps = components(path, &grp, rings, RingSpec::to_ring)?;
    Ok((Partial::from_named(grp, comps, &spec.idem, &spec.theta)?, spec.p))
}

/// A partial module; ring components are read multiplicatively.
pub fn load_module(path: &Path) -> Res<PartialGModule> {
    let spec: ActionSpec = read_json(path)?;
    let grp = Arc::new(FiniteGroupoid::validate(&spec.groupoid.resolve(&base_dir(path))?)?);
    let comps = match (&spec.monoids, &spec.rings) {
        (Some(m), _) => components(path, &grp, m, RingSpec::to_monoid)?,
        (None, Some(r)) => components(path, &grp, r, RingSpec::to_monoid)?,
        (None, None) => return Err(Error::Input(format!("{}: module file needs `monoids` or `rings`", path.display()))),
    };
    Ok(Partial::from_named(grp, comps, &spec.idem, &spec.theta)?)
}

/// Inline action file for a validated action.
pub fn action_spec(act: &PartialAction) -> ActionSpec {
    let grp = act.groupoid();
    let (idem, theta) = act.named_tables();
    let rings = grp.objects().iter().zip(act.components()).map(|(e, r)| (e.clone(), Ref::Inline(RingSpec::from_ring(r)))).collect();
    ActionSpec { groupoid: Ref::Inline(grp.to_spec()), p: None, rings: Some(rings), monoids: None, idem, theta }
}

/// Inline module file for a validated module.
pub fn module_spec(m: &PartialGModule) -> ActionSpec {
    let grp = m.groupoid();
    let (idem, theta) = m.named_tables();
    let monoids = grp.objects().iter().zip(m.components()).map(|(e, r)| (e.clone(), Ref::Inline(RingSpec::from_monoid(r)))).collect();
    ActionSpec { groupoid: Ref::Inline(grp.to_spec()), p: None, rings: None, monoids: Some(monoids), idem, theta }
}
