//! Root functions on Φ and the loop extension Φ̂ = Φ + ℤδ.
//!
//! A root function assigns to each root α a set `Z_α ⊆ ℤ` of levels; every
//! such set is a coset `r_α + n_α ℤ` (a singleton when `n_α = 0`). Root
//! functions with support Ψ correspond one-to-one with pairs (Ψ, x + X_M)
//! where X_M is an admissible subgroup of the coweight lattice.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{divides, gcd, reduce};
use crate::cartan::CartanMatrix;
use crate::coweight::{
    canonical_coset, evaluate, extend_scaling, AdmissibleSubgroup, Coweight, CoweightError, CosetRep,
};
use crate::roots::{reflect, Root, RootSystem};
use crate::scaling::{enumerate_basic_scalings, ScalingError, ScalingFunction};
use crate::subsystems::{enumerate_subsystems, Subsystem, SubsystemError, DEFAULT_RANK_BOUND};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopError {
    InvalidPair(ScalingError),
    NotARootFunction(Violation),
    InternalInconsistency(&'static str),
    WindowOverflow { window: i64 },
    GeneratorOutsideWindow(AffineRoot),
    RootNotInAmbient(Root),
    RankBoundExceeded { rank: usize, bound: usize },
    Subsystem(SubsystemError),
    Coweight(CoweightError),
}

impl LoopError {
    pub fn name(&self) -> &'static str {
        match self {
            LoopError::InvalidPair(_) => "InvalidPair",
            LoopError::NotARootFunction(_) => "NotARootFunction",
            LoopError::InternalInconsistency(_) => "InternalInconsistency",
            LoopError::WindowOverflow { .. } => "WindowOverflow",
            LoopError::GeneratorOutsideWindow(_) => "GeneratorOutsideWindow",
            LoopError::RootNotInAmbient(_) => "RootNotInAmbient",
            LoopError::RankBoundExceeded { .. } => "RankBoundExceeded",
            LoopError::Subsystem(e) => e.name(),
            LoopError::Coweight(e) => e.name(),
        }
    }
}

impl fmt::Display for LoopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopError::InvalidPair(e) => write!(f, "invalid classified pair: {e}"),
            LoopError::NotARootFunction(v) => write!(f, "not a root function: {v}"),
            LoopError::InternalInconsistency(what) => write!(f, "internal inconsistency: {what}"),
            LoopError::WindowOverflow { window } => {
                write!(f, "closure inside |level| ≤ {window} depends on the outer window size")
            }
            LoopError::GeneratorOutsideWindow(a) => {
                write!(f, "generator {:?}+{}δ lies outside the window", a.base.coords(), a.level)
            }
            LoopError::RootNotInAmbient(r) => write!(f, "root {:?} is not in the ambient system", r.coords()),
            LoopError::RankBoundExceeded { rank, bound } => {
                write!(f, "rank {rank} exceeds the configured bound {bound}")
            }
            LoopError::Subsystem(e) => write!(f, "{e}"),
            LoopError::Coweight(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for LoopError {}

impl From<SubsystemError> for LoopError {
    fn from(e: SubsystemError) -> Self {
        LoopError::Subsystem(e)
    }
}

impl From<CoweightError> for LoopError {
    fn from(e: CoweightError) -> Self {
        LoopError::Coweight(e)
    }
}

/// `base + level·δ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineRoot {
    pub base: Root,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(base: Root, level: i64) -> Self {
        AffineRoot { base, level }
    }
}

/// `s_{α+mδ}(β+nδ) = s_α(β) + (n − m⟨β,α̌⟩)δ`.
pub fn affine_reflect(a: &AffineRoot, b: &AffineRoot, gcm: &CartanMatrix) -> AffineRoot {
    let c = crate::roots::pairing(&b.base, &a.base, gcm);
    AffineRoot { base: reflect(&b.base, &a.base, gcm), level: b.level - a.level * c }
}

/// `offset + modulus·ℤ`, normalized so `0 ≤ offset < modulus` when the modulus is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coset {
    offset: i64,
    modulus: i64,
}

impl Coset {
    /// Panics on a negative modulus.
    pub fn new(offset: i64, modulus: i64) -> Self {
        assert!(modulus >= 0, "negative modulus");
        Coset { offset: reduce(offset, modulus), modulus }
    }

    pub fn singleton(value: i64) -> Self {
        Coset { offset: value, modulus: 0 }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn contains(&self, n: i64) -> bool {
        divides(self.modulus, n - self.offset)
    }

    /// `self − c·other` as a set of integers.
    pub fn minus_multiple(&self, c: i64, other: &Coset) -> Coset {
        Coset::new(self.offset - c * other.offset, gcd(self.modulus, c.abs() * other.modulus))
    }

    /// Set inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Coset) -> bool {
        divides(other.modulus, self.modulus) && other.contains(self.offset)
    }

    pub fn shifted(&self, by: i64) -> Coset {
        Coset::new(self.offset + by, self.modulus)
    }
}

/// A root function in normal form: roots in the support map to their coset,
/// every other root to the empty set.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetFamily {
    entries: BTreeMap<Root, Coset>,
}

impl CosetFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, root: Root, coset: Coset) {
        self.entries.insert(root, coset);
    }

    pub fn get(&self, root: &Root) -> Option<&Coset> {
        self.entries.get(root)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Root, &Coset)> {
        self.entries.iter()
    }

    pub fn support(&self) -> BTreeSet<Root> {
        self.entries.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Subtracts `x(α₀)` from every level set, with the lift taken in `sub`.
    pub fn translate(&self, x: &Coweight, sub: &Subsystem<'_>) -> Result<CosetFamily, CoweightError> {
        let mut out = CosetFamily::new();
        for (r, c) in &self.entries {
            out.insert(r.clone(), c.shifted(-evaluate(x, r, sub)?));
        }
        Ok(out)
    }
}

impl FromIterator<(Root, Coset)> for CosetFamily {
    fn from_iter<T: IntoIterator<Item = (Root, Coset)>>(iter: T) -> Self {
        CosetFamily { entries: iter.into_iter().collect() }
    }
}

/// A root subsystem Ψ with a scaling function on its simple system and a
/// canonical coset representative.
#[derive(Debug, Clone)]
pub struct ClassifiedPair<'a> {
    subsystem: Subsystem<'a>,
    m: ScalingFunction,
    xbar: CosetRep,
}

impl<'a> ClassifiedPair<'a> {
    /// Validates `m` and reduces `x` to its canonical representative.
    pub fn new(subsystem: Subsystem<'a>, m: Vec<i64>, x: &Coweight) -> Result<Self, LoopError> {
        if x.coords().len() != subsystem.rank() || m.len() != subsystem.rank() {
            return Err(LoopError::Coweight(CoweightError::DimensionMismatch {
                expected: subsystem.rank(),
                got: if m.len() != subsystem.rank() { m.len() } else { x.coords().len() },
            }));
        }
        let m = ScalingFunction::new(m, subsystem.pairings()).map_err(LoopError::InvalidPair)?;
        let xbar = canonical_coset(x, &AdmissibleSubgroup::from_scaling(&m));
        Ok(ClassifiedPair { subsystem, m, xbar })
    }

    pub fn subsystem(&self) -> &Subsystem<'a> {
        &self.subsystem
    }

    pub fn m(&self) -> &ScalingFunction {
        &self.m
    }

    pub fn xbar(&self) -> &CosetRep {
        &self.xbar
    }
}

impl PartialEq for ClassifiedPair<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.subsystem == other.subsystem && self.m == other.m && self.xbar == other.xbar
    }
}

impl Eq for ClassifiedPair<'_> {}

/// `Z_α = x̄(α₀) + n_α ℤ` with `n` the extension of `m` to Ψ.
pub fn build_root_function(pair: &ClassifiedPair<'_>) -> Result<CosetFamily, LoopError> {
    let sub = &pair.subsystem;
    let n = extend_scaling(pair.m.values(), sub)?;
    let x = pair.xbar.as_coweight();
    sub.roots()
        .iter()
        .map(|r| Ok((r.clone(), Coset::new(evaluate(&x, r, sub)?, n[r]))))
        .collect()
}

/// First failure found by [`verify_root_function`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotInAmbient(Root),
    NotNormalized(Root),
    /// `s_α(β)` lies outside the support.
    SupportNotClosed { alpha: Root, beta: Root },
    /// `Z_β − ⟨β,α̌⟩Z_α ⊄ Z_{s_α(β)}`.
    Containment { alpha: Root, beta: Root },
    /// Containment holds but `Z_β − ⟨β,α̌⟩Z_α ≠ Z_{s_α(β)}`.
    Equality { alpha: Root, beta: Root },
}

impl Violation {
    pub fn pair(&self) -> Option<(&Root, &Root)> {
        match self {
            Violation::SupportNotClosed { alpha, beta }
            | Violation::Containment { alpha, beta }
            | Violation::Equality { alpha, beta } => Some((alpha, beta)),
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInAmbient(r) => write!(f, "{:?} is not a root", r.coords()),
            Violation::NotNormalized(r) => write!(f, "coset at {:?} is not normalized", r.coords()),
            Violation::SupportNotClosed { alpha, beta } => write!(
                f,
                "support not closed: s_α(β) missing for α={:?}, β={:?}",
                alpha.coords(),
                beta.coords()
            ),
            Violation::Containment { alpha, beta } => {
                write!(f, "(Z) fails for α={:?}, β={:?}", alpha.coords(), beta.coords())
            }
            Violation::Equality { alpha, beta } => {
                write!(f, "(Z=) fails for α={:?}, β={:?}", alpha.coords(), beta.coords())
            }
        }
    }
}

/// Checks `Z_β − ⟨β,α̌⟩Z_α = Z_{s_α(β)}` for every ordered pair in the
/// support, by exact coset arithmetic.
pub fn verify_root_function(cf: &CosetFamily, ambient: &RootSystem) -> Result<(), Violation> {
    for (r, c) in cf.entries() {
        if !ambient.contains(r) {
            return Err(Violation::NotInAmbient(r.clone()));
        }
        if c.modulus < 0 || (c.modulus > 0 && !(0..c.modulus).contains(&c.offset)) {
            return Err(Violation::NotNormalized(r.clone()));
        }
    }
    for (alpha, za) in cf.entries() {
        for (beta, zb) in cf.entries() {
            let image = ambient.reflect(beta, alpha);
            if !ambient.contains(&image) {
                // outside a height-truncated window
                continue;
            }
            let Some(target) = cf.get(&image) else {
                return Err(Violation::SupportNotClosed { alpha: alpha.clone(), beta: beta.clone() });
            };
            let lhs = zb.minus_multiple(ambient.pairing(beta, alpha), za);
            if !lhs.is_subset_of(target) {
                return Err(Violation::Containment { alpha: alpha.clone(), beta: beta.clone() });
            }
            if lhs != *target {
                return Err(Violation::Equality { alpha: alpha.clone(), beta: beta.clone() });
            }
        }
    }
    Ok(())
}

/// Inverse of [`build_root_function`]: reads `m` and `x` off the simple
/// system and checks that they reproduce every coset.
pub fn classify_root_function<'a>(cf: &CosetFamily, ambient: &'a RootSystem) -> Result<ClassifiedPair<'a>, LoopError> {
    verify_root_function(cf, ambient).map_err(LoopError::NotARootFunction)?;
    let sub = Subsystem::new(ambient, cf.support())?;
    let (m, x): (Vec<i64>, Vec<i64>) = sub
        .gamma()
        .iter()
        .map(|g| {
            let c = cf.get(g).expect("simple roots lie in the support");
            (c.modulus, c.offset)
        })
        .unzip();
    let x = Coweight(x);
    let n = extend_scaling(&m, &sub).map_err(|_| LoopError::InternalInconsistency("moduli on Γ are not a scaling function"))?;
    for (r, c) in cf.entries() {
        if n[r] != c.modulus {
            return Err(LoopError::InternalInconsistency("extended scaling disagrees with a modulus"));
        }
        if !c.contains(evaluate(&x, r, &sub)?) {
            return Err(LoopError::InternalInconsistency("coset representative disagrees with an offset"));
        }
    }
    ClassifiedPair::new(sub, m, &x)
}

/// All `α + nδ` with α in the support, `n ∈ Z_α` and `|n| ≤ window`.
pub fn materialize_window(cf: &CosetFamily, window: i64) -> BTreeSet<AffineRoot> {
    let mut out = BTreeSet::new();
    for (r, c) in cf.entries() {
        if c.modulus == 0 {
            if c.offset.abs() <= window {
                out.insert(AffineRoot::new(r.clone(), c.offset));
            }
            continue;
        }
        let mut level = c.offset - ((c.offset + window) / c.modulus) * c.modulus;
        while level < -window {
            level += c.modulus;
        }
        while level <= window {
            out.insert(AffineRoot::new(r.clone(), level));
            level += c.modulus;
        }
    }
    out
}

/// Ratio of the working window to the reported window in [`closure_oracle`].
pub const ORACLE_FACTOR: i64 = 3;

/// Brute-force reflection closure of `gens` in Φ̂, run with levels bounded
/// by `3·window` and then cut down to `|level| ≤ window`.
///
/// Every returned root lies in the true closure. The inner window is also
/// recomputed with a working bound of `4·window`; if the two disagree the
/// cut-off was too tight and `WindowOverflow` is reported.
pub fn closure_oracle(gens: &[AffineRoot], ambient: &RootSystem, window: i64) -> Result<BTreeSet<AffineRoot>, LoopError> {
    let mut seeds = Vec::with_capacity(gens.len());
    for g in gens {
        let i = ambient
            .index_of(g.base.coords())
            .filter(|&i| ambient.roots()[i] == g.base)
            .ok_or_else(|| LoopError::RootNotInAmbient(g.base.clone()))?;
        if g.level.abs() > window {
            return Err(LoopError::GeneratorOutsideWindow(g.clone()));
        }
        seeds.push((i, g.level));
    }
    let table = ambient.table();
    let inner = |outer: i64| -> BTreeSet<(usize, i64)> {
        fixpoint(&table, ambient.len(), &seeds, outer)
            .into_iter()
            .filter(|&(_, l)| l.abs() <= window)
            .collect()
    };
    let result = inner(ORACLE_FACTOR * window);
    if result != inner((ORACLE_FACTOR + 1) * window) {
        return Err(LoopError::WindowOverflow { window });
    }
    Ok(result
        .into_iter()
        .map(|(i, l)| AffineRoot::new(ambient.roots()[i].clone(), l))
        .collect())
}

fn fixpoint(table: &crate::roots::ReflectionTable, n: usize, seeds: &[(usize, i64)], outer: i64) -> Vec<(usize, i64)> {
    let width = (2 * outer + 1) as usize;
    let slot = |i: usize, l: i64| i * width + (l + outer) as usize;
    let mut member = vec![false; n * width];
    let mut list: Vec<(usize, i64)> = Vec::new();
    for &(i, l) in seeds {
        if l.abs() <= outer && !member[slot(i, l)] {
            member[slot(i, l)] = true;
            list.push((i, l));
        }
    }
    let mut k = 0;
    while k < list.len() {
        let x = list[k];
        for j in 0..=k {
            let y = list[j];
            for (a, b) in [(x, y), (y, x)] {
                // s_{a}(b)
                let Some(base) = table.reflect(a.0, b.0) else { continue };
                let level = b.1 - a.1 * table.pairing(b.0, a.0);
                if level.abs() <= outer && !member[slot(base, level)] {
                    member[slot(base, level)] = true;
                    list.push((base, level));
                }
            }
        }
        k += 1;
    }
    list
}

/// `{γ + x̄(γ₀)δ, γ + (x̄(γ₀) + n_γ)δ : γ ∈ Γ}`, without duplicates.
pub fn oracle_generators(pair: &ClassifiedPair<'_>) -> Vec<AffineRoot> {
    let mut out = BTreeSet::new();
    for (i, g) in pair.subsystem.gamma().iter().enumerate() {
        let e = pair.xbar.coords()[i];
        let m = pair.m.values()[i];
        out.insert(AffineRoot::new(g.clone(), e));
        out.insert(AffineRoot::new(g.clone(), e + m));
    }
    out.into_iter().collect()
}

/// Bounds for [`enumerate_loop_subsystems`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopEnumeration {
    /// Largest nonzero scaling value.
    pub modulus_bound: i64,
    /// Largest `|x̄_γ|` on coordinates with `m_γ = 0`.
    pub offset_bound: i64,
    /// Whether to include components with zero scaling (singleton level sets).
    pub include_singletons: bool,
    pub rank_bound: usize,
}

impl LoopEnumeration {
    pub fn new(bound: i64) -> Self {
        LoopEnumeration { modulus_bound: bound, offset_bound: bound, include_singletons: true, rank_bound: DEFAULT_RANK_BOUND }
    }

    pub fn without_singletons(mut self) -> Self {
        self.include_singletons = false;
        self
    }
}

/// Every classified pair within the given bounds, grouped by subsystem in
/// enumeration order, then by `m`, then by `x̄`.
pub fn enumerate_loop_subsystems<'a>(ambient: &'a RootSystem, bounds: &LoopEnumeration) -> Result<Vec<ClassifiedPair<'a>>, LoopError> {
    if ambient.rank() > bounds.rank_bound {
        return Err(LoopError::RankBoundExceeded { rank: ambient.rank(), bound: bounds.rank_bound });
    }
    let mut out = Vec::new();
    for sub in enumerate_subsystems(ambient, bounds.rank_bound)? {
        let scalings = enumerate_basic_scalings(sub.pairings()).up_to(bounds.modulus_bound, bounds.include_singletons);
        for m in scalings {
            let ranges: Vec<(i64, i64)> = m
                .values()
                .iter()
                .map(|&v| if v == 0 { (-bounds.offset_bound, bounds.offset_bound) } else { (0, v - 1) })
                .collect();
            for x in grid(&ranges) {
                out.push(ClassifiedPair::new(sub.clone(), m.values().to_vec(), &Coweight(x))?);
            }
        }
    }
    Ok(out)
}

fn grid(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}
