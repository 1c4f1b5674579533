//! Roots, coroots and root systems generated from a Cartan matrix.
//!
//! A root carries its coordinates over the simple roots together with the
//! coordinates of its coroot over the simple coroots, so pairings are plain
//! bilinear evaluations against the Cartan matrix.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::cartan::CartanMatrix;

pub const DEFAULT_SAFETY_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    /// Generation in unbounded mode produced more roots than the cap allows.
    SafetyCapExceeded { cap: usize },
    /// The operation needs the full (finite) root system.
    IncompleteSystem,
}

impl RootSystemError {
    pub fn name(&self) -> &'static str {
        match self {
            RootSystemError::SafetyCapExceeded { .. } => "SafetyCapExceeded",
            RootSystemError::IncompleteSystem => "IncompleteSystem",
        }
    }
}

impl fmt::Display for RootSystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystemError::SafetyCapExceeded { cap } => {
                write!(f, "more than {cap} roots generated; the Cartan matrix is probably not of finite type")
            }
            RootSystemError::IncompleteSystem => write!(f, "root system was truncated by its height bound"),
        }
    }
}

impl core::error::Error for RootSystemError {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    coords: Vec<i64>,
    coroot: Vec<i64>,
}

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Root { coroot: coords.clone(), coords }
    }

    /// Builds a root from both coordinate tuples. No membership check is made.
    pub fn from_parts(coords: Vec<i64>, coroot: Vec<i64>) -> Root {
        debug_assert_eq!(coords.len(), coroot.len());
        Root { coords, coroot }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn coroot_coords(&self) -> &[i64] {
        &self.coroot
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
            coroot: self.coroot.iter().map(|c| -c).collect(),
        }
    }

    /// Renders the root as a combination of `labels`, e.g. `2a+b` or `-a1-a2`.
    pub fn label(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (c, l) in self.coords.iter().zip(labels) {
            if *c == 0 {
                continue;
            }
            if *c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&alloc::format!("{}", c.abs()));
            }
            out.push_str(l);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Roots order by height first, then by coordinates in decreasing
/// lexicographic order, so the simple roots come out in label order.
impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| other.coords.cmp(&self.coords))
            .then_with(|| self.coroot.cmp(&other.coroot))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `⟨β, γ̌⟩ = Σ b_i c_j C(i, j)`.
pub fn pairing(beta: &Root, gamma: &Root, gcm: &CartanMatrix) -> i64 {
    let mut total = 0;
    for (i, &b) in beta.coords.iter().enumerate() {
        if b == 0 {
            continue;
        }
        for (j, &c) in gamma.coroot.iter().enumerate() {
            if c != 0 {
                total += b * c * gcm.entry(i, j);
            }
        }
    }
    total
}

/// `s_γ(β)`, acting on the root by `β − ⟨β,γ̌⟩γ` and on the coroot by
/// `β̌ − ⟨γ,β̌⟩γ̌`.
pub fn reflect(beta: &Root, gamma: &Root, gcm: &CartanMatrix) -> Root {
    let c = pairing(beta, gamma, gcm);
    let d = pairing(gamma, beta, gcm);
    Root {
        coords: beta.coords.iter().zip(&gamma.coords).map(|(b, g)| b - c * g).collect(),
        coroot: beta.coroot.iter().zip(&gamma.coroot).map(|(b, g)| b - d * g).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightBound {
    /// Keep roots with `|height| ≤ bound`.
    Bounded(u64),
    /// Generate everything; the caller asserts finite type and the safety cap guards it.
    UnboundedFinite,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    gcm: CartanMatrix,
    roots: Vec<Root>,
    index: BTreeMap<Vec<i64>, usize>,
    height_bound: HeightBound,
    complete: bool,
}

impl RootSystem {
    pub fn generate(gcm: &CartanMatrix, bound: HeightBound) -> Result<RootSystem, RootSystemError> {
        Self::generate_with_cap(gcm, bound, DEFAULT_SAFETY_CAP)
    }

    /// Breadth-first closure of the simple roots under the simple reflections.
    pub fn generate_with_cap(
        gcm: &CartanMatrix,
        bound: HeightBound,
        cap: usize,
    ) -> Result<RootSystem, RootSystemError> {
        let rank = gcm.rank();
        let limit = match bound {
            HeightBound::Bounded(b) => Some(b as i64),
            HeightBound::UnboundedFinite => None,
        };
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue = Vec::new();
        let mut truncated = false;
        for i in 0..rank {
            let r = Root::simple(rank, i);
            if limit.is_some_and(|l| l < 1) {
                truncated = true;
                continue;
            }
            seen.insert(r.clone());
            queue.push(r);
        }
        let simples: Vec<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
        let mut k = 0;
        while k < queue.len() {
            let r = queue[k].clone();
            k += 1;
            for s in &simples {
                let t = reflect(&r, s, gcm);
                if limit.is_some_and(|l| t.height().abs() > l) {
                    truncated = true;
                    continue;
                }
                if seen.insert(t.clone()) {
                    if limit.is_none() && seen.len() > cap {
                        return Err(RootSystemError::SafetyCapExceeded { cap });
                    }
                    queue.push(t);
                }
            }
        }
        Ok(Self::from_sorted(gcm.clone(), seen.into_iter().collect(), bound, !truncated))
    }

    fn from_sorted(gcm: CartanMatrix, roots: Vec<Root>, height_bound: HeightBound, complete: bool) -> Self {
        let index = roots.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
        RootSystem { gcm, roots, index, height_bound, complete }
    }

    pub fn gcm(&self) -> &CartanMatrix {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    /// All roots, sorted by height then coordinates.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn height_bound(&self) -> HeightBound {
        self.height_bound
    }

    /// True iff no root was discarded by the height bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank()).map(|i| Root::simple(self.rank(), i)).collect()
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Looks up a root (with its coroot) by root coordinates.
    pub fn find(&self, coords: &[i64]) -> Option<&Root> {
        self.index_of(coords).map(|i| &self.roots[i])
    }

    pub fn contains(&self, root: &Root) -> bool {
        self.find(&root.coords).is_some_and(|r| r == root)
    }

    pub fn pairing(&self, beta: &Root, gamma: &Root) -> i64 {
        pairing(beta, gamma, &self.gcm)
    }

    pub fn reflect(&self, beta: &Root, gamma: &Root) -> Root {
        reflect(beta, gamma, &self.gcm)
    }

    /// Orbits of the Weyl group on the roots.
    pub fn weyl_orbits(&self) -> Result<Vec<Vec<Root>>, RootSystemError> {
        if !self.complete {
            return Err(RootSystemError::IncompleteSystem);
        }
        Ok(orbit_partition(&self.roots, &self.simple_roots(), &self.gcm))
    }

    pub(crate) fn table(&self) -> ReflectionTable {
        ReflectionTable::new(self)
    }
}

/// Partition of `roots` into orbits of the group generated by the reflections
/// in `generators`. Blocks are sorted internally and by their first element.
pub fn orbit_partition(roots: &[Root], generators: &[Root], gcm: &CartanMatrix) -> Vec<Vec<Root>> {
    let mut left: BTreeSet<&Root> = roots.iter().collect();
    let mut blocks = Vec::new();
    for r in roots {
        if !left.remove(r) {
            continue;
        }
        let mut block = vec![r.clone()];
        let mut k = 0;
        while k < block.len() {
            for g in generators {
                let t = reflect(&block[k], g, gcm);
                if left.remove(&t) {
                    block.push(t);
                }
            }
            k += 1;
        }
        block.sort();
        blocks.push(block);
    }
    blocks.sort();
    blocks
}

/// Index-based pairing and reflection tables for the roots of a system.
#[derive(Debug, Clone)]
pub(crate) struct ReflectionTable {
    n: usize,
    pair: Vec<i64>,
    refl: Vec<Option<usize>>,
}

impl ReflectionTable {
    fn new(rs: &RootSystem) -> Self {
        let n = rs.len();
        let mut pair = vec![0; n * n];
        let mut refl = vec![None; n * n];
        for (a, ra) in rs.roots.iter().enumerate() {
            for (b, rb) in rs.roots.iter().enumerate() {
                let c = rs.pairing(rb, ra);
                pair[b * n + a] = c;
                let image: Vec<i64> = rb.coords.iter().zip(&ra.coords).map(|(x, y)| x - c * y).collect();
                refl[a * n + b] = rs.index_of(&image);
            }
        }
        ReflectionTable { n, pair, refl }
    }

    /// `⟨root_b, root_ǎ⟩`.
    #[inline]
    pub fn pairing(&self, b: usize, a: usize) -> i64 {
        self.pair[b * self.n + a]
    }

    /// Index of `s_a(b)`, if it lies in the generated window.
    #[inline]
    pub fn reflect(&self, a: usize, b: usize) -> Option<usize> {
        self.refl[a * self.n + b]
    }
}
