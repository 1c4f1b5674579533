//! Reflection-closed subsets of a root system, their canonical simple
//! systems, and the lift of each subsystem onto a formal basis indexed by its
//! simple system.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cartan::{CartanMatrix, GcmError};
use crate::roots::{orbit_partition, Root, RootSystem};

pub const DEFAULT_RANK_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsystemError {
    RootNotInAmbient(Root),
    NotClosed { alpha: Root, beta: Root },
    PostconditionFailure(&'static str),
    LiftIncomplete,
    RankBoundExceeded { rank: usize, bound: usize },
    IncompleteAmbient,
}

impl SubsystemError {
    pub fn name(&self) -> &'static str {
        match self {
            SubsystemError::RootNotInAmbient(_) => "RootNotInAmbient",
            SubsystemError::NotClosed { .. } => "NotClosed",
            SubsystemError::PostconditionFailure(_) => "PostconditionFailure",
            SubsystemError::LiftIncomplete => "LiftIncomplete",
            SubsystemError::RankBoundExceeded { .. } => "RankBoundExceeded",
            SubsystemError::IncompleteAmbient => "IncompleteAmbient",
        }
    }
}

impl fmt::Display for SubsystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsystemError::RootNotInAmbient(r) => write!(f, "root {:?} is not in the ambient system", r.coords()),
            SubsystemError::NotClosed { alpha, beta } => write!(
                f,
                "reflection of {:?} in {:?} leaves the set",
                beta.coords(),
                alpha.coords()
            ),
            SubsystemError::PostconditionFailure(what) => write!(f, "postcondition failed: {what}"),
            SubsystemError::LiftIncomplete => write!(f, "lifted root system did not close up on the subsystem"),
            SubsystemError::RankBoundExceeded { rank, bound } => {
                write!(f, "rank {rank} exceeds the configured bound {bound}")
            }
            SubsystemError::IncompleteAmbient => write!(f, "ambient root system is height-truncated"),
        }
    }
}

impl core::error::Error for SubsystemError {}

/// Smallest reflection-closed superset of `seed` inside the ambient roots.
///
/// On a height-truncated ambient system, images falling outside the window
/// are dropped.
pub fn reflection_closure<'r, I>(seed: I, ambient: &RootSystem) -> Result<BTreeSet<Root>, SubsystemError>
where
    I: IntoIterator<Item = &'r Root>,
{
    let mut found: BTreeSet<Root> = BTreeSet::new();
    let mut list: Vec<Root> = Vec::new();
    for r in seed {
        if !ambient.contains(r) {
            return Err(SubsystemError::RootNotInAmbient(r.clone()));
        }
        if found.insert(r.clone()) {
            list.push(r.clone());
        }
    }
    let mut k = 0;
    while k < list.len() {
        let x = list[k].clone();
        let mut j = 0;
        while j <= k {
            let y = list[j].clone();
            for t in [ambient.reflect(&x, &y), ambient.reflect(&y, &x)] {
                if ambient.contains(&t) && found.insert(t.clone()) {
                    list.push(t);
                }
            }
            j += 1;
        }
        k += 1;
    }
    Ok(found)
}

fn check_members(psi: &BTreeSet<Root>, ambient: &RootSystem) -> Result<(), SubsystemError> {
    match psi.iter().find(|r| !ambient.contains(r)) {
        Some(r) => Err(SubsystemError::RootNotInAmbient(r.clone())),
        None => Ok(()),
    }
}

/// The indecomposable elements of `psi ∩ Φ₊`, sorted by height.
pub fn canonical_simple_system(psi: &BTreeSet<Root>, ambient: &RootSystem) -> Result<Vec<Root>, SubsystemError> {
    check_members(psi, ambient)?;
    for a in psi {
        for b in psi {
            let t = ambient.reflect(b, a);
            if ambient.contains(&t) && !psi.contains(&t) {
                return Err(SubsystemError::NotClosed { alpha: a.clone(), beta: b.clone() });
            }
        }
    }
    let positives: Vec<&Root> = psi.iter().filter(|r| r.is_positive()).collect();
    let sums: BTreeSet<Vec<i64>> = positives
        .iter()
        .enumerate()
        .flat_map(|(i, x)| {
            positives[i..]
                .iter()
                .map(move |y| x.coords().iter().zip(y.coords()).map(|(a, b)| a + b).collect())
        })
        .collect();
    let gamma: Vec<Root> = positives
        .into_iter()
        .filter(|r| !sums.contains(r.coords()))
        .cloned()
        .collect();

    for (i, a) in gamma.iter().enumerate() {
        for (j, b) in gamma.iter().enumerate() {
            if i != j && ambient.pairing(a, b) > 0 {
                return Err(SubsystemError::PostconditionFailure("positive pairing between simple roots"));
            }
        }
    }
    if reflection_closure(&gamma, ambient)? != *psi {
        return Err(SubsystemError::PostconditionFailure("simple system does not generate the subsystem"));
    }
    Ok(gamma)
}

pub type LiftMap = BTreeMap<Root, Vec<i64>>;

/// Coordinates of every root of `psi` over `gamma` (and of its coroot over
/// the simple coroots), obtained by reflecting the formal basis and the
/// ambient roots in lockstep.
pub fn lift_coordinates(
    psi: &BTreeSet<Root>,
    gamma: &[Root],
    ambient: &RootSystem,
) -> Result<(LiftMap, LiftMap), SubsystemError> {
    let k = gamma.len();
    let cartan: Vec<Vec<i64>> = gamma
        .iter()
        .map(|a| gamma.iter().map(|b| ambient.pairing(a, b)).collect())
        .collect();
    let mut lift = LiftMap::new();
    let mut colift = LiftMap::new();
    let mut queue = Vec::new();
    for (i, g) in gamma.iter().enumerate() {
        let mut e = vec![0; k];
        e[i] = 1;
        lift.insert(g.clone(), e.clone());
        colift.insert(g.clone(), e);
        queue.push(g.clone());
    }
    let mut q = 0;
    while q < queue.len() {
        let r = queue[q].clone();
        q += 1;
        let (t, tc) = (lift[&r].clone(), colift[&r].clone());
        for (j, g) in gamma.iter().enumerate() {
            // ⟨t, γ̌_j⟩₀ and ⟨γ_j, ť⟩₀ in the lifted datum
            let c: i64 = (0..k).map(|i| t[i] * cartan[i][j]).sum();
            let d: i64 = (0..k).map(|i| cartan[j][i] * tc[i]).sum();
            if c != ambient.pairing(&r, g) || d != ambient.pairing(g, &r) {
                return Err(SubsystemError::PostconditionFailure("lifted pairing disagrees with ambient pairing"));
            }
            let image = ambient.reflect(&r, g);
            if !psi.contains(&image) {
                return Err(SubsystemError::LiftIncomplete);
            }
            let mut t2 = t.clone();
            t2[j] -= c;
            let mut tc2 = tc.clone();
            tc2[j] -= d;
            match lift.get(&image) {
                Some(prev) if *prev != t2 || colift[&image] != tc2 => {
                    return Err(SubsystemError::PostconditionFailure("lift is not well defined"));
                }
                Some(_) => {}
                None => {
                    lift.insert(image.clone(), t2);
                    colift.insert(image.clone(), tc2);
                    queue.push(image);
                }
            }
        }
    }
    if lift.len() != psi.len() {
        return Err(SubsystemError::LiftIncomplete);
    }
    let distinct: BTreeSet<&Vec<i64>> = lift.values().collect();
    if distinct.len() != lift.len() {
        return Err(SubsystemError::PostconditionFailure("lift is not injective"));
    }
    for (r, t) in &lift {
        let mixed = t.iter().any(|&c| c > 0) && t.iter().any(|&c| c < 0);
        let recombined = (0..ambient.rank()).all(|i| {
            let s: i64 = t.iter().zip(gamma).map(|(c, g)| c * g.coords()[i]).sum();
            s == r.coords()[i]
        });
        if mixed || !recombined {
            return Err(SubsystemError::PostconditionFailure("lifted coordinates inconsistent"));
        }
    }
    Ok((lift, colift))
}

/// Partition of the simple system into connected blocks (indices into Γ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSplit {
    pub blocks: Vec<Vec<usize>>,
}

/// Connected components of the graph on Γ with an edge wherever the pairing is nonzero.
pub fn components(pairings: &[Vec<i64>]) -> ComponentSplit {
    let n = pairings.len();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut block = vec![s];
        let mut k = 0;
        while k < block.len() {
            let i = block[k];
            for j in 0..n {
                if !seen[j] && (pairings[i][j] != 0 || pairings[j][i] != 0) {
                    seen[j] = true;
                    block.push(j);
                }
            }
            k += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    ComponentSplit { blocks }
}

/// A root subsystem Ψ with its canonical simple system Γ and lifting.
#[derive(Debug, Clone)]
pub struct Subsystem<'a> {
    ambient: &'a RootSystem,
    roots: BTreeSet<Root>,
    gamma: Vec<Root>,
    pairings: Vec<Vec<i64>>,
    lift: LiftMap,
    colift: LiftMap,
    bounded: bool,
}

impl<'a> Subsystem<'a> {
    /// Builds the subsystem record for a reflection-closed set.
    pub fn new(ambient: &'a RootSystem, roots: BTreeSet<Root>) -> Result<Self, SubsystemError> {
        let gamma = canonical_simple_system(&roots, ambient)?;
        let (lift, colift) = lift_coordinates(&roots, &gamma, ambient)?;
        let pairings = gamma
            .iter()
            .map(|a| gamma.iter().map(|b| ambient.pairing(a, b)).collect())
            .collect();
        Ok(Subsystem { ambient, roots, gamma, pairings, lift, colift, bounded: !ambient.is_complete() })
    }

    pub fn generated_by<'r, I>(ambient: &'a RootSystem, seed: I) -> Result<Self, SubsystemError>
    where
        I: IntoIterator<Item = &'r Root>,
    {
        Self::new(ambient, reflection_closure(seed, ambient)?)
    }

    pub fn ambient(&self) -> &'a RootSystem {
        self.ambient
    }

    pub fn roots(&self) -> &BTreeSet<Root> {
        &self.roots
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn gamma(&self) -> &[Root] {
        &self.gamma
    }

    pub fn rank(&self) -> usize {
        self.gamma.len()
    }

    pub fn gamma_index(&self, r: &Root) -> Option<usize> {
        self.gamma.iter().position(|g| g == r)
    }

    /// `(⟨γ_i, γ̌_j⟩)` over Γ.
    pub fn pairings(&self) -> &[Vec<i64>] {
        &self.pairings
    }

    /// Labels of Γ written in terms of the ambient simple-root labels.
    pub fn gamma_labels(&self) -> Vec<String> {
        let labels = self.ambient.gcm().labels();
        self.gamma.iter().map(|g| g.label(labels)).collect()
    }

    /// Cartan matrix of Γ as a validated GCM; `None` for the empty subsystem.
    pub fn cartan(&self) -> Option<Result<CartanMatrix, GcmError>> {
        if self.gamma.is_empty() {
            return None;
        }
        Some(CartanMatrix::new(self.gamma_labels(), self.pairings.clone()))
    }

    pub fn lift(&self, r: &Root) -> Option<&[i64]> {
        self.lift.get(r).map(Vec::as_slice)
    }

    pub fn colift(&self, r: &Root) -> Option<&[i64]> {
        self.colift.get(r).map(Vec::as_slice)
    }

    pub fn components(&self) -> ComponentSplit {
        components(&self.pairings)
    }

    /// Whether the ambient system was height-truncated, so no completeness is claimed.
    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn pairing(&self, a: &Root, b: &Root) -> i64 {
        self.ambient.pairing(a, b)
    }

    /// Orbits of W_Ψ on Ψ.
    pub fn orbits(&self) -> Vec<Vec<Root>> {
        let roots: Vec<Root> = self.roots.iter().cloned().collect();
        orbit_partition(&roots, &self.gamma, self.ambient.gcm())
    }
}

impl PartialEq for Subsystem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.roots == other.roots
    }
}

impl Eq for Subsystem<'_> {}

/// Every root subsystem of a finite-type system, including the empty one.
///
/// Closures of all sets of at most `rank` positive roots are deduplicated by
/// their sorted root lists. Output is ordered by size, then by root list.
pub fn enumerate_subsystems(ambient: &RootSystem, rank_bound: usize) -> Result<Vec<Subsystem<'_>>, SubsystemError> {
    if !ambient.is_complete() {
        return Err(SubsystemError::IncompleteAmbient);
    }
    if ambient.rank() > rank_bound {
        return Err(SubsystemError::RankBoundExceeded { rank: ambient.rank(), bound: rank_bound });
    }
    let table = ambient.table();
    let n = ambient.len();
    let positives: Vec<usize> = (0..n).filter(|&i| ambient.roots()[i].is_positive()).collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut chosen = Vec::new();
    subsets(&positives, 0, ambient.rank(), &mut chosen, &mut |seed| {
        found.insert(closure_indices(&table, n, seed));
    });
    let mut sets: Vec<Vec<usize>> = found.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.into_iter()
        .map(|idx| Subsystem::new(ambient, idx.into_iter().map(|i| ambient.roots()[i].clone()).collect()))
        .collect()
}

fn subsets(pool: &[usize], start: usize, left: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    visit(chosen);
    if left == 0 {
        return;
    }
    for i in start..pool.len() {
        chosen.push(pool[i]);
        subsets(pool, i + 1, left - 1, chosen, visit);
        chosen.pop();
    }
}

fn closure_indices(table: &crate::roots::ReflectionTable, n: usize, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; n];
    let mut list: Vec<usize> = Vec::new();
    for &s in seed {
        if !member[s] {
            member[s] = true;
            list.push(s);
        }
    }
    let mut k = 0;
    while k < list.len() {
        let x = list[k];
        for j in 0..=k {
            let y = list[j];
            for t in [table.reflect(y, x), table.reflect(x, y)].into_iter().flatten() {
                if !member[t] {
                    member[t] = true;
                    list.push(t);
                }
            }
        }
        k += 1;
    }
    list.sort_unstable();
    list
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;
    use crate::roots::HeightBound;

    fn system(rows: Vec<Vec<i64>>) -> RootSystem {
        RootSystem::generate(&CartanMatrix::unlabeled(rows).unwrap(), HeightBound::UnboundedFinite).unwrap()
    }

    fn set(rs: &RootSystem, coords: &[&[i64]]) -> BTreeSet<Root> {
        coords
            .iter()
            .flat_map(|c| {
                let r = rs.find(c).unwrap().clone();
                [r.neg(), r]
            })
            .collect()
    }

    #[test]
    fn closure_examples() {
        let a2 = system(vec![vec![2, -1], vec![-1, 2]]);
        let a1 = a2.find(&[1, 0]).unwrap();
        assert_eq!(reflection_closure([a1], &a2).unwrap(), set(&a2, &[&[1, 0]]));
        let both = [a1.clone(), a2.find(&[0, 1]).unwrap().clone()];
        assert_eq!(reflection_closure(&both, &a2).unwrap().len(), 6);

        let b2 = system(vec![vec![2, -1], vec![-2, 2]]);
        let seed = [b2.find(&[1, 0]).unwrap().clone(), b2.find(&[1, 1]).unwrap().clone()];
        assert_eq!(reflection_closure(&seed, &b2).unwrap(), set(&b2, &[&[1, 0], &[1, 1]]));
    }

    #[test]
    fn closure_rejects_foreign_root() {
        let a2 = system(vec![vec![2, -1], vec![-1, 2]]);
        let bogus = Root::from_parts(vec![2, 0], vec![1, 0]);
        assert!(matches!(reflection_closure([&bogus], &a2), Err(SubsystemError::RootNotInAmbient(_))));
    }

    #[test]
    fn simple_system_examples() {
        let a2 = system(vec![vec![2, -1], vec![-1, 2]]);
        let all: BTreeSet<Root> = a2.roots().iter().cloned().collect();
        let g = canonical_simple_system(&all, &a2).unwrap();
        assert_eq!(g.iter().map(|r| r.coords()).collect::<Vec<_>>(), [&[1, 0][..], &[0, 1]]);
        let g = canonical_simple_system(&set(&a2, &[&[1, 1]]), &a2).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].coords(), &[1, 1]);

        let b2 = system(vec![vec![2, -1], vec![-2, 2]]);
        let g = canonical_simple_system(&set(&b2, &[&[0, 1], &[2, 1]]), &b2).unwrap();
        assert_eq!(g.iter().map(|r| r.coords()).collect::<Vec<_>>(), [&[0, 1][..], &[2, 1]]);
    }

    #[test]
    fn simple_system_rejects_unclosed_input() {
        let a2 = system(vec![vec![2, -1], vec![-1, 2]]);
        let err = canonical_simple_system(&set(&a2, &[&[1, 0], &[0, 1]]), &a2).unwrap_err();
        assert_eq!(err.name(), "NotClosed");
    }

    #[test]
    fn lift_examples() {
        let a2 = system(vec![vec![2, -1], vec![-1, 2]]);
        let full = Subsystem::generated_by(&a2, a2.roots()).unwrap();
        assert_eq!(full.lift(a2.find(&[1, 1]).unwrap()), Some(&[1, 1][..]));

        let b2 = system(vec![vec![2, -1], vec![-2, 2]]);
        let long = Subsystem::new(&b2, set(&b2, &[&[0, 1], &[2, 1]])).unwrap();
        assert_eq!(long.lift(b2.find(&[0, 1]).unwrap()), Some(&[1, 0][..]));
        assert_eq!(long.lift(b2.find(&[-2, -1]).unwrap()), Some(&[0, -1][..]));

        let g2 = RootSystem::generate(&named("g2").unwrap(), HeightBound::UnboundedFinite).unwrap();
        let long = Subsystem::new(&g2, set(&g2, &[&[0, 1], &[3, 1], &[3, 2]])).unwrap();
        assert_eq!(long.gamma().iter().map(|r| r.coords()).collect::<Vec<_>>(), [&[0, 1][..], &[3, 1]]);
        assert_eq!(long.lift(g2.find(&[3, 2]).unwrap()), Some(&[1, 1][..]));
    }

    #[test]
    fn component_examples() {
        assert_eq!(components(&[vec![2, -1], vec![-1, 2]]).blocks, vec![vec![0, 1]]);
        assert_eq!(components(&[vec![2, 0], vec![0, 2]]).blocks, vec![vec![0], vec![1]]);
        assert_eq!(components(&[vec![2]]).blocks, vec![vec![0]]);
        let b2 = system(vec![vec![2, -1], vec![-2, 2]]);
        let sub = Subsystem::new(&b2, set(&b2, &[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(sub.components().blocks.len(), 2);
    }

    #[test]
    fn enumeration_counts() {
        let a1 = RootSystem::generate(&named("a1").unwrap(), HeightBound::UnboundedFinite).unwrap();
        assert_eq!(enumerate_subsystems(&a1, DEFAULT_RANK_BOUND).unwrap().len(), 2);
        let a2 = RootSystem::generate(&named("a2").unwrap(), HeightBound::UnboundedFinite).unwrap();
        let subs = enumerate_subsystems(&a2, DEFAULT_RANK_BOUND).unwrap();
        assert_eq!(subs.len(), 5);
        assert!(subs[0].roots().is_empty());
        let b2 = RootSystem::generate(&named("b2").unwrap(), HeightBound::UnboundedFinite).unwrap();
        assert_eq!(enumerate_subsystems(&b2, DEFAULT_RANK_BOUND).unwrap().len(), 8);
        assert_eq!(
            enumerate_subsystems(&b2, 1).unwrap_err(),
            SubsystemError::RankBoundExceeded { rank: 2, bound: 1 }
        );
    }

    #[test]
    fn empty_subsystem() {
        let a2 = RootSystem::generate(&named("a2").unwrap(), HeightBound::UnboundedFinite).unwrap();
        let empty = Subsystem::new(&a2, BTreeSet::new()).unwrap();
        assert_eq!(empty.rank(), 0);
        assert!(empty.cartan().is_none());
    }
}
