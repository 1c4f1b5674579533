//! Serialized records. JSON is canonical; TSV rows are a flat projection.

use std::collections::{BTreeMap, BTreeSet};

use looproot_core::loop_classifier::{AffineRoot, ClassifiedPair, Coset, CosetFamily};
use looproot_core::coweight::Coweight;
use looproot_core::scaling::{enumerate_basic_scalings, finite_type_scalings, ScalingCase};
use looproot_core::{CartanMatrix, GcmError, Root, RootSystem, Subsystem};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0}")]
    InvalidJson(#[from] serde_json::Error),
    #[error("{0}")]
    Gcm(#[from] GcmError),
    #[error("{0:?} is not a root of the ambient system")]
    UnknownRoot(Vec<i64>),
    #[error("root {0:?} appears twice")]
    DuplicateRoot(Vec<i64>),
    #[error("negative modulus {modulus} at {root:?}")]
    NegativeModulus { root: Vec<i64>, modulus: i64 },
    #[error("label {0} does not name a simple root of the subsystem")]
    UnknownLabel(String),
    #[error("no value given for {0}")]
    MissingLabel(String),
    #[error("declared gamma {declared:?} differs from the canonical simple system {canonical:?}")]
    GammaMismatch { declared: Vec<Vec<i64>>, canonical: Vec<Vec<i64>> },
}

impl FormatError {
    pub fn name(&self) -> &'static str {
        match self {
            FormatError::InvalidJson(_) => "InvalidJson",
            FormatError::Gcm(e) => e.name(),
            FormatError::UnknownRoot(_) => "UnknownRoot",
            FormatError::DuplicateRoot(_) => "DuplicateRoot",
            FormatError::NegativeModulus { .. } => "NegativeModulus",
            FormatError::UnknownLabel(_) => "UnknownLabel",
            FormatError::MissingLabel(_) => "MissingLabel",
            FormatError::GammaMismatch { .. } => "GammaMismatch",
        }
    }
}

/// `{"labels": [...], "matrix": [[...]]}`. Labels default to `"1".."n"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GcmRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub matrix: Vec<Vec<i64>>,
}

impl GcmRecord {
    pub fn from_gcm(gcm: &CartanMatrix) -> Self {
        GcmRecord { labels: Some(gcm.labels().to_vec()), matrix: gcm.rows() }
    }

    pub fn to_gcm(&self) -> Result<CartanMatrix, GcmError> {
        match &self.labels {
            Some(labels) => CartanMatrix::new(labels.clone(), self.matrix.clone()),
            None => CartanMatrix::unlabeled(self.matrix.clone()),
        }
    }
}

/// Integer literals only: `2.0` and `1e3` are rejected by the integer fields.
pub fn parse_gcm(text: &str) -> Result<CartanMatrix, FormatError> {
    let record: GcmRecord = serde_json::from_str(text)?;
    Ok(record.to_gcm()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub label: String,
    pub coords: Vec<i64>,
    pub coroot: Vec<i64>,
    pub height: i64,
}

impl RootRecord {
    pub fn new(root: &Root, labels: &[String]) -> Self {
        RootRecord {
            label: root.label(labels),
            coords: root.coords().to_vec(),
            coroot: root.coroot_coords().to_vec(),
            height: root.height(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootsReport {
    pub labels: Vec<String>,
    pub height_bound: Option<u64>,
    pub complete: bool,
    pub count: usize,
    pub roots: Vec<RootRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemRecord {
    pub roots: Vec<Vec<i64>>,
    pub gamma: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
    pub components: Vec<Vec<String>>,
}

impl SubsystemRecord {
    pub fn new(sub: &Subsystem<'_>) -> Self {
        let labels = sub.gamma_labels();
        SubsystemRecord {
            roots: sub.roots().iter().map(|r| r.coords().to_vec()).collect(),
            gamma: sub.gamma().iter().map(|r| r.coords().to_vec()).collect(),
            cartan: sub.pairings().to_vec(),
            components: sub
                .components()
                .blocks
                .iter()
                .map(|b| b.iter().map(|&i| labels[i].clone()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub m: BTreeMap<String, i64>,
    pub case: String,
    pub padic: bool,
    pub closed_form: bool,
}

/// Basic scaling functions of a simple system by both routes. `closed_form`
/// and `agree` are null when some component is not of finite type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingsRecord {
    pub components: Vec<Vec<String>>,
    pub primes: Vec<u64>,
    pub basics: Vec<ScalingRow>,
    pub closed_form: Option<bool>,
    pub agree: Option<bool>,
}

impl ScalingsRecord {
    pub fn new(pairings: &[Vec<i64>], labels: &[String]) -> Self {
        let set = enumerate_basic_scalings(pairings);
        let padic: BTreeSet<Vec<i64>> = set.basics().iter().map(|m| m.values().to_vec()).collect();
        let closed: Option<BTreeSet<Vec<i64>>> = finite_type_scalings(pairings).ok().map(|comps| {
            let mut out = vec![vec![0; pairings.len()]];
            for c in &comps {
                out = out
                    .iter()
                    .flat_map(|partial| {
                        c.basics.iter().map(move |b| {
                            let mut m = partial.clone();
                            for (&i, &v) in c.indices.iter().zip(b) {
                                m[i] = v;
                            }
                            m
                        })
                    })
                    .collect();
            }
            out.into_iter().collect()
        });
        let all: BTreeSet<&Vec<i64>> = padic.iter().chain(closed.iter().flatten()).collect();
        let basics = all
            .into_iter()
            .map(|m| ScalingRow {
                m: label_map(labels, m),
                case: ScalingCase::of(m).as_str().to_string(),
                padic: padic.contains(m),
                closed_form: closed.as_ref().is_some_and(|c| c.contains(m)),
            })
            .collect();
        ScalingsRecord {
            components: set
                .components
                .iter()
                .map(|c| c.indices.iter().map(|&i| labels[i].clone()).collect())
                .collect(),
            primes: set.primes(),
            basics,
            closed_form: Some(closed.is_some()),
            agree: closed.as_ref().map(|c| *c == padic),
        }
    }
}

fn label_map(labels: &[String], values: &[i64]) -> BTreeMap<String, i64> {
    labels.iter().cloned().zip(values.iter().copied()).collect()
}

fn read_label_map(labels: &[String], map: &BTreeMap<String, i64>) -> Result<Vec<i64>, FormatError> {
    if let Some(extra) = map.keys().find(|k| !labels.contains(k)) {
        return Err(FormatError::UnknownLabel(extra.clone()));
    }
    labels
        .iter()
        .map(|l| map.get(l).copied().ok_or_else(|| FormatError::MissingLabel(l.clone())))
        .collect()
}

fn find_root<'a>(ambient: &'a RootSystem, coords: &[i64]) -> Result<&'a Root, FormatError> {
    ambient.find(coords).ok_or_else(|| FormatError::UnknownRoot(coords.to_vec()))
}

/// `m` and `xbar` are keyed by the labels of Γ written in the ambient simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedPairRecord {
    pub support: Vec<Vec<i64>>,
    pub gamma: Vec<Vec<i64>>,
    pub m: BTreeMap<String, i64>,
    pub xbar: BTreeMap<String, i64>,
}

impl ClassifiedPairRecord {
    pub fn new(pair: &ClassifiedPair<'_>) -> Self {
        let sub = pair.subsystem();
        let labels = sub.gamma_labels();
        ClassifiedPairRecord {
            support: sub.roots().iter().map(|r| r.coords().to_vec()).collect(),
            gamma: sub.gamma().iter().map(|r| r.coords().to_vec()).collect(),
            m: label_map(&labels, pair.m().values()),
            xbar: label_map(&labels, pair.xbar().coords()),
        }
    }

    /// Rebuilds the pair; `gamma` must match the canonical simple system of `support`.
    pub fn to_pair<'a>(&self, ambient: &'a RootSystem) -> Result<ClassifiedPair<'a>, PairError> {
        let mut roots = BTreeSet::new();
        for c in &self.support {
            if !roots.insert(find_root(ambient, c)?.clone()) {
                return Err(FormatError::DuplicateRoot(c.clone()).into());
            }
        }
        let sub = Subsystem::new(ambient, roots).map_err(PairError::Subsystem)?;
        let canonical: Vec<Vec<i64>> = sub.gamma().iter().map(|r| r.coords().to_vec()).collect();
        if canonical != self.gamma {
            return Err(FormatError::GammaMismatch { declared: self.gamma.clone(), canonical }.into());
        }
        let labels = sub.gamma_labels();
        let m = read_label_map(&labels, &self.m)?;
        let x = read_label_map(&labels, &self.xbar)?;
        ClassifiedPair::new(sub, m, &Coweight(x)).map_err(PairError::Loop)
    }
}

#[derive(Debug, Error)]
pub enum PairError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Subsystem(looproot_core::SubsystemError),
    #[error(transparent)]
    Loop(looproot_core::LoopError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetEntryRecord {
    pub root: Vec<i64>,
    pub offset: i64,
    pub modulus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetFamilyRecord {
    pub entries: Vec<CosetEntryRecord>,
}

impl CosetFamilyRecord {
    pub fn new(cf: &CosetFamily) -> Self {
        CosetFamilyRecord {
            entries: cf
                .entries()
                .map(|(r, c)| CosetEntryRecord { root: r.coords().to_vec(), offset: c.offset(), modulus: c.modulus() })
                .collect(),
        }
    }

    /// Offsets are reduced modulo their modulus; the coset is unchanged.
    pub fn to_family(&self, ambient: &RootSystem) -> Result<CosetFamily, FormatError> {
        let mut cf = CosetFamily::new();
        for e in &self.entries {
            let root = find_root(ambient, &e.root)?;
            if e.modulus < 0 {
                return Err(FormatError::NegativeModulus { root: e.root.clone(), modulus: e.modulus });
            }
            if cf.get(root).is_some() {
                return Err(FormatError::DuplicateRoot(e.root.clone()));
            }
            cf.insert(root.clone(), Coset::new(e.offset, e.modulus));
        }
        Ok(cf)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRootRecord {
    pub base: Vec<i64>,
    pub level: i64,
}

impl AffineRootRecord {
    pub fn new(a: &AffineRoot) -> Self {
        AffineRootRecord { base: a.base.coords().to_vec(), level: a.level }
    }

    pub fn to_affine(&self, ambient: &RootSystem) -> Result<AffineRoot, FormatError> {
        Ok(AffineRoot::new(find_root(ambient, &self.base)?.clone(), self.level))
    }
}

/// `[1,-2]`, as used in TSV cells.
pub fn tuple(v: &[i64]) -> String {
    serde_json::to_string(v).expect("integer tuples serialize")
}

pub fn tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

pub fn compact_map(map: &BTreeMap<String, i64>) -> String {
    serde_json::to_string(map).expect("label maps serialize")
}
