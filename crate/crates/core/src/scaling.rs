//! Scaling functions on a simple system Γ.
//!
//! A scaling function is `m: Γ → ℕ` with `m_β | ⟨β,α̌⟩·m_α` for all α, β.
//! Two independent routes compute the basic ones: a per-prime difference
//! constraint system solved through shortest-path costs, and, for finite
//! type components, the closed form read off root lengths.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::arith::{divides, gcd, prime_factors, valuation};
use crate::cartan::{CartanMatrix, GcmError};
use crate::roots::{HeightBound, Root, RootSystem, DEFAULT_SAFETY_CAP};
use crate::subsystems::{components, Subsystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalingError {
    NotAScalingFunction,
    NonIntegerEntry { row: usize, col: usize },
    NotFiniteType { component: Vec<usize> },
    InvalidScaledMatrix(GcmError),
    CoxeterMismatch { row: usize, col: usize },
}

impl ScalingError {
    pub fn name(&self) -> &'static str {
        match self {
            ScalingError::NotAScalingFunction => "NotAScalingFunction",
            ScalingError::NonIntegerEntry { .. } => "NonIntegerEntry",
            ScalingError::NotFiniteType { .. } => "NotFiniteType",
            ScalingError::InvalidScaledMatrix(_) => "InvalidScaledMatrix",
            ScalingError::CoxeterMismatch { .. } => "CoxeterMismatch",
        }
    }
}

impl fmt::Display for ScalingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingError::NotAScalingFunction => write!(f, "values violate m_β | ⟨β,α̌⟩·m_α or contain zero"),
            ScalingError::NonIntegerEntry { row, col } => {
                write!(f, "scaled Cartan entry ({},{}) is not an integer", row + 1, col + 1)
            }
            ScalingError::NotFiniteType { component } => {
                write!(f, "component {component:?} is not of finite type")
            }
            ScalingError::InvalidScaledMatrix(e) => write!(f, "scaled matrix is not a GCM: {e}"),
            ScalingError::CoxeterMismatch { row, col } => {
                write!(f, "Coxeter matrix changed at ({},{})", row + 1, col + 1)
            }
        }
    }
}

impl core::error::Error for ScalingError {}

/// Divisibility test over all ordered pairs, with 0 dividing only 0.
pub fn is_scaling_function(m: &[i64], pairings: &[Vec<i64>]) -> bool {
    m.len() == pairings.len()
        && m.iter().all(|&v| v >= 0)
        && (0..m.len()).all(|a| (0..m.len()).all(|b| divides(m[b], pairings[b][a] * m[a])))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalingFunction(Vec<i64>);

impl ScalingFunction {
    pub fn new(m: Vec<i64>, pairings: &[Vec<i64>]) -> Result<Self, ScalingError> {
        if is_scaling_function(&m, pairings) {
            Ok(ScalingFunction(m))
        } else {
            Err(ScalingError::NotAScalingFunction)
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

/// Primes dividing some off-diagonal pairing of absolute value > 1.
pub fn prime_support(pairings: &[Vec<i64>]) -> Vec<u64> {
    let mut primes = BTreeSet::new();
    for (i, row) in pairings.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if i != j && c.abs() > 1 {
                primes.extend(prime_factors(c));
            }
        }
    }
    primes.into_iter().collect()
}

/// Minimal p-adic chain costs `c_{α,β,p}`; `None` between components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicCostMatrix {
    pub prime: u64,
    pub cost: Vec<Vec<Option<u32>>>,
}

impl PadicCostMatrix {
    pub fn get(&self, from: usize, to: usize) -> Option<u32> {
        self.cost[from][to]
    }
}

/// Shortest paths where the step α → β costs `ν_p(⟨β, α̌⟩)` whenever the
/// pairing is nonzero.
pub fn cost_matrix(pairings: &[Vec<i64>], p: u64) -> PadicCostMatrix {
    let n = pairings.len();
    let mut cost = vec![vec![None; n]; n];
    for (src, row) in cost.iter_mut().enumerate() {
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u32, src)));
        while let Some(Reverse((d, a))) = heap.pop() {
            if row[a].is_some() {
                continue;
            }
            row[a] = Some(d);
            for b in 0..n {
                if b == a || row[b].is_some() {
                    continue;
                }
                if let Some(w) = valuation(p, pairings[b][a]) {
                    heap.push(Reverse((d + w, b)));
                }
            }
        }
    }
    PadicCostMatrix { prime: p, cost }
}

/// Shape of a basic scaling function on one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScalingCase {
    Zero,
    Constant,
    /// Two values, the larger on the long roots.
    ShortLong,
    /// More than two distinct values; only possible outside finite type.
    General,
}

impl ScalingCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalingCase::Zero => "zero",
            ScalingCase::Constant => "constant",
            ScalingCase::ShortLong => "short-long",
            ScalingCase::General => "general",
        }
    }

    pub fn of(values: &[i64]) -> ScalingCase {
        let distinct: BTreeSet<i64> = values.iter().copied().collect();
        match distinct.len() {
            _ if distinct.iter().all(|&v| v == 0) => ScalingCase::Zero,
            1 => ScalingCase::Constant,
            2 => ScalingCase::ShortLong,
            _ => ScalingCase::General,
        }
    }
}

/// Basic solutions of one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBasics {
    /// Indices into Γ.
    pub indices: Vec<usize>,
    /// Per prime, every exponent tuple (over `indices`) with minimum 0.
    pub exponents: Vec<(u64, Vec<Vec<u32>>)>,
    /// Products over primes of the chosen exponent tuples, sorted.
    pub basics: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicScalingSet {
    pub rank: usize,
    pub components: Vec<ComponentBasics>,
}

impl BasicScalingSet {
    pub fn primes(&self) -> Vec<u64> {
        let all: BTreeSet<u64> = self
            .components
            .iter()
            .flat_map(|c| c.exponents.iter().map(|(p, _)| *p))
            .collect();
        all.into_iter().collect()
    }

    /// Basic scaling functions on all of Γ: one basic per component, combined.
    pub fn basics(&self) -> Vec<ScalingFunction> {
        let per: Vec<Vec<Vec<i64>>> = self.components.iter().map(|c| c.basics.clone()).collect();
        combine(self.rank, &self.components.iter().map(|c| c.indices.clone()).collect::<Vec<_>>(), &per)
    }

    /// Every scaling function whose nonzero values are at most `bound`:
    /// per component, the zero function or a positive multiple of a basic.
    pub fn up_to(&self, bound: i64, include_zero: bool) -> Vec<ScalingFunction> {
        let per: Vec<Vec<Vec<i64>>> = self
            .components
            .iter()
            .map(|c| {
                let mut options = BTreeSet::new();
                if include_zero {
                    options.insert(vec![0; c.indices.len()]);
                }
                for b in &c.basics {
                    let top = b.iter().copied().max().unwrap_or(1);
                    for q in 1..=bound / top {
                        options.insert(b.iter().map(|v| v * q).collect());
                    }
                }
                options.into_iter().collect()
            })
            .collect();
        combine(self.rank, &self.components.iter().map(|c| c.indices.clone()).collect::<Vec<_>>(), &per)
    }
}

fn combine(rank: usize, blocks: &[Vec<usize>], per: &[Vec<Vec<i64>>]) -> Vec<ScalingFunction> {
    let mut out = vec![vec![0; rank]];
    for (block, options) in blocks.iter().zip(per) {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for partial in &out {
            for opt in options {
                let mut m = partial.clone();
                for (&i, &v) in block.iter().zip(opt) {
                    m[i] = v;
                }
                next.push(m);
            }
        }
        out = next;
    }
    out.sort();
    out.into_iter().map(ScalingFunction).collect()
}

/// Enumerates, per component and per prime in the support, all exponent
/// tuples `e` with minimum 0 and `e_β ≤ e_α + c_{α,β,p}`, and multiplies
/// them out into basic scaling functions.
pub fn enumerate_basic_scalings(pairings: &[Vec<i64>]) -> BasicScalingSet {
    let split = components(pairings);
    let comps = split
        .blocks
        .into_iter()
        .map(|indices| {
            let local: Vec<Vec<i64>> = indices
                .iter()
                .map(|&i| indices.iter().map(|&j| pairings[i][j]).collect())
                .collect();
            let exponents: Vec<(u64, Vec<Vec<u32>>)> = prime_support(&local)
                .into_iter()
                .map(|p| (p, exponent_solutions(&cost_matrix(&local, p))))
                .collect();
            let mut basics = vec![vec![1i64; indices.len()]];
            for (p, sols) in &exponents {
                let mut next = Vec::new();
                for b in &basics {
                    for e in sols {
                        next.push(b.iter().zip(e).map(|(v, &k)| v * crate::arith::pow(*p, k)).collect());
                    }
                }
                basics = next;
            }
            basics.sort();
            ComponentBasics { indices, exponents, basics }
        })
        .collect();
    BasicScalingSet { rank: pairings.len(), components: comps }
}

fn exponent_solutions(costs: &PadicCostMatrix) -> Vec<Vec<u32>> {
    let n = costs.cost.len();
    let cap = costs.cost.iter().flatten().flatten().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    assign(costs, cap, 0, &mut e, &mut out);
    out.retain(|t| t.iter().min() == Some(&0));
    out.sort();
    out
}

fn assign(costs: &PadicCostMatrix, cap: u32, k: usize, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k == e.len() {
        out.push(e.clone());
        return;
    }
    for v in 0..=cap {
        e[k] = v;
        let ok = (0..k).all(|j| {
            let up = costs.get(j, k).is_none_or(|c| v <= e[j] + c);
            let down = costs.get(k, j).is_none_or(|c| e[j] <= v + c);
            up && down
        });
        if ok {
            assign(costs, cap, k + 1, e, out);
        }
    }
}

/// Closed-form description of one finite-type component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentClosedForm {
    pub indices: Vec<usize>,
    /// Squared-length ratio of long to short roots, in {1, 2, 3}.
    pub ratio: i64,
    /// Per index, whether that simple root is long (always false when ratio = 1).
    pub long: Vec<bool>,
    pub basics: Vec<Vec<i64>>,
}

/// Basic scaling functions from root lengths: per component the constant
/// function, and when two lengths occur, short ↦ 1, long ↦ k.
pub fn finite_type_scalings(pairings: &[Vec<i64>]) -> Result<Vec<ComponentClosedForm>, ScalingError> {
    components(pairings)
        .blocks
        .into_iter()
        .map(|indices| {
            let local: Vec<Vec<i64>> = indices
                .iter()
                .map(|&i| indices.iter().map(|&j| pairings[i][j]).collect())
                .collect();
            let not_finite = || ScalingError::NotFiniteType { component: indices.clone() };
            let gcm = CartanMatrix::unlabeled(local.clone()).map_err(|_| not_finite())?;
            RootSystem::generate_with_cap(&gcm, HeightBound::UnboundedFinite, DEFAULT_SAFETY_CAP)
                .map_err(|_| not_finite())?;
            let lengths = squared_lengths(&local);
            let (smin, smax) = lengths.iter().fold((lengths[0], lengths[0]), |(lo, hi), &x| {
                (if less(x, lo) { x } else { lo }, if less(hi, x) { x } else { hi })
            });
            // smax / smin as a reduced fraction
            let (num, den) = (smax.0 * smin.1, smax.1 * smin.0);
            if num % den != 0 {
                return Err(not_finite());
            }
            let ratio = num / den;
            if !(1..=3).contains(&ratio) {
                return Err(not_finite());
            }
            let long: Vec<bool> = lengths.iter().map(|&l| ratio > 1 && !less(l, smax)).collect();
            let mut basics = vec![vec![1; indices.len()]];
            if ratio > 1 {
                basics.push(long.iter().map(|&l| if l { ratio } else { 1 }).collect());
            }
            basics.sort();
            Ok(ComponentClosedForm { indices, ratio, long, basics })
        })
        .collect()
}

/// Squared lengths (as fractions) relative to the first node, using
/// `|α_j|² = |α_i|²·⟨α_j,α̌_i⟩/⟨α_i,α̌_j⟩` along edges.
fn squared_lengths(c: &[Vec<i64>]) -> Vec<(i64, i64)> {
    let n = c.len();
    let mut len: Vec<Option<(i64, i64)>> = vec![None; n];
    len[0] = Some((1, 1));
    let mut queue = vec![0];
    while let Some(i) = queue.pop() {
        let (a, b) = len[i].unwrap();
        for j in 0..n {
            if j != i && c[i][j] != 0 && len[j].is_none() {
                let (num, den) = (a * c[j][i], b * c[i][j]);
                let g = gcd(num, den);
                len[j] = Some((num.abs() / g, den.abs() / g));
                queue.push(j);
            }
        }
    }
    len.into_iter().map(|l| l.unwrap()).collect()
}

fn less(x: (i64, i64), y: (i64, i64)) -> bool {
    x.0 * y.1 < y.0 * x.1
}

/// The based root datum with simple roots `m_α⁻¹α` and coroots `m_α α̌`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledDatum {
    /// Each simple root paired with its divisor `m_α`.
    pub gamma_scaled: Vec<(Root, i64)>,
    pub cartan_scaled: CartanMatrix,
}

/// Entries `⟨m_α⁻¹α, m_β β̌⟩ = ⟨α,β̌⟩·m_β/m_α`, checked to form a GCM with the
/// same Coxeter matrix.
pub fn scale_cartan(pairings: &[Vec<i64>], m: &[i64]) -> Result<Vec<Vec<i64>>, ScalingError> {
    if !is_scaling_function(m, pairings) || m.contains(&0) {
        return Err(ScalingError::NotAScalingFunction);
    }
    let n = m.len();
    let mut out = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let num = pairings[a][b] * m[b];
            if num % m[a] != 0 {
                return Err(ScalingError::NonIntegerEntry { row: a, col: b });
            }
            out[a][b] = num / m[a];
        }
    }
    Ok(out)
}

pub fn scaled_datum(sub: &Subsystem<'_>, m: &[i64]) -> Result<ScaledDatum, ScalingError> {
    if m.len() != sub.rank() {
        return Err(ScalingError::NotAScalingFunction);
    }
    let rows = scale_cartan(sub.pairings(), m)?;
    let cartan_scaled = CartanMatrix::new(sub.gamma_labels(), rows).map_err(ScalingError::InvalidScaledMatrix)?;
    let original = CartanMatrix::new(sub.gamma_labels(), sub.pairings().to_vec())
        .map_err(ScalingError::InvalidScaledMatrix)?;
    for i in 0..m.len() {
        for j in 0..m.len() {
            if original.coxeter_entry(i, j) != cartan_scaled.coxeter_entry(i, j) {
                return Err(ScalingError::CoxeterMismatch { row: i, col: j });
            }
        }
    }
    Ok(ScaledDatum {
        gamma_scaled: sub.gamma().iter().cloned().zip(m.iter().copied()).collect(),
        cartan_scaled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;

    const A2: [[i64; 2]; 2] = [[2, -1], [-1, 2]];
    // short first, long second
    const B2: [[i64; 2]; 2] = [[2, -1], [-2, 2]];
    const G2: [[i64; 2]; 2] = [[2, -1], [-3, 2]];

    fn rows(m: [[i64; 2]; 2]) -> Vec<Vec<i64>> {
        m.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn divisibility_criterion() {
        assert!(is_scaling_function(&[1, 2], &rows(B2)));
        assert!(!is_scaling_function(&[2, 1], &rows(B2)));
        for q in 0..5 {
            assert!(is_scaling_function(&[q, q], &rows(B2)));
            assert!(is_scaling_function(&[q, q], &rows(G2)));
        }
        assert!(!is_scaling_function(&[0, 1], &rows(A2)));
    }

    #[test]
    fn primes() {
        assert!(prime_support(&rows(A2)).is_empty());
        assert_eq!(prime_support(&rows(B2)), [2]);
        assert_eq!(prime_support(&rows(G2)), [3]);
    }

    #[test]
    fn costs() {
        let c = cost_matrix(&rows(B2), 2);
        assert_eq!((c.get(0, 1), c.get(1, 0)), (Some(1), Some(0)));
        let c = cost_matrix(&rows(G2), 3);
        assert_eq!((c.get(0, 1), c.get(1, 0)), (Some(1), Some(0)));
        assert_eq!((c.get(0, 0), c.get(1, 1)), (Some(0), Some(0)));
        let split = cost_matrix(&[vec![2, 0], vec![0, 2]], 2);
        assert_eq!(split.get(0, 1), None);
    }

    #[test]
    fn basic_enumeration() {
        let basics = |m| {
            enumerate_basic_scalings(&rows(m))
                .basics()
                .into_iter()
                .map(|s| s.values().to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(basics(A2), [vec![1, 1]]);
        assert_eq!(basics(B2), [vec![1, 1], vec![1, 2]]);
        assert_eq!(basics(G2), [vec![1, 1], vec![1, 3]]);
    }

    #[test]
    fn closed_form() {
        let b2 = finite_type_scalings(&rows(B2)).unwrap();
        assert_eq!(b2[0].ratio, 2);
        assert_eq!(b2[0].basics, [vec![1, 1], vec![1, 2]]);
        let g2 = finite_type_scalings(&rows(G2)).unwrap();
        assert_eq!(g2[0].basics, [vec![1, 1], vec![1, 3]]);
        let a3 = named("a3").unwrap().rows();
        assert_eq!(finite_type_scalings(&a3).unwrap()[0].basics, [vec![1, 1, 1]]);
        let err = finite_type_scalings(&named("a1~").unwrap().rows()).unwrap_err();
        assert_eq!(err.name(), "NotFiniteType");
    }

    #[test]
    fn multiples_up_to_bound() {
        let set = enumerate_basic_scalings(&rows(B2));
        let all: Vec<Vec<i64>> = set.up_to(3, true).into_iter().map(|s| s.values().to_vec()).collect();
        assert_eq!(all, [vec![0, 0], vec![1, 1], vec![1, 2], vec![2, 2], vec![3, 3]]);
        let split = enumerate_basic_scalings(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(split.up_to(1, true).len(), 4);
    }

    #[test]
    fn scaled_cartan_examples() {
        assert_eq!(scale_cartan(&rows(B2), &[1, 2]).unwrap(), [vec![2, -2], vec![-1, 2]]);
        assert_eq!(scale_cartan(&rows(G2), &[1, 3]).unwrap(), [vec![2, -3], vec![-1, 2]]);
        assert_eq!(scale_cartan(&rows(A2), &[4, 4]).unwrap(), rows(A2));
        assert_eq!(scale_cartan(&rows(B2), &[2, 1]).unwrap_err(), ScalingError::NotAScalingFunction);
        assert_eq!(scale_cartan(&rows(B2), &[0, 0]).unwrap_err(), ScalingError::NotAScalingFunction);
    }

    #[test]
    fn case_labels() {
        assert_eq!(ScalingCase::of(&[0, 0]), ScalingCase::Zero);
        assert_eq!(ScalingCase::of(&[2, 2]), ScalingCase::Constant);
        assert_eq!(ScalingCase::of(&[1, 2]), ScalingCase::ShortLong);
        assert_eq!(ScalingCase::of(&[1, 2, 4]), ScalingCase::General);
    }
}
