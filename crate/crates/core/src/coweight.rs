//! The coweight lattice Ω(Ψ), realised as ℤ^Γ, and its admissible subgroups.
//!
//! A coweight `f` is stored as its values `f(γ₀)` on the lifted simple roots.
//! The admissible subgroup of a scaling function `m` is `X_M = ⊕ m_γ ℤ ω_γ`
//! where `ω_γ(β₀) = δ_{γβ}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{divides, gcd_all, reduce};
use crate::roots::Root;
use crate::scaling::{is_scaling_function, ScalingFunction};
use crate::subsystems::Subsystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoweightError {
    RootNotInSubsystem(Root),
    NotSimple(Root),
    NotAScalingFunction,
    DimensionMismatch { expected: usize, got: usize },
}

impl CoweightError {
    pub fn name(&self) -> &'static str {
        match self {
            CoweightError::RootNotInSubsystem(_) => "RootNotInSubsystem",
            CoweightError::NotSimple(_) => "NotSimple",
            CoweightError::NotAScalingFunction => "NotAScalingFunction",
            CoweightError::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}

impl fmt::Display for CoweightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoweightError::RootNotInSubsystem(r) => write!(f, "root {:?} is not in the subsystem", r.coords()),
            CoweightError::NotSimple(r) => write!(f, "root {:?} is not in the canonical simple system", r.coords()),
            CoweightError::NotAScalingFunction => write!(f, "values violate m_β | ⟨β,α̌⟩·m_α"),
            CoweightError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates over the simple system, got {got}")
            }
        }
    }
}

impl core::error::Error for CoweightError {}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn zero(rank: usize) -> Self {
        Coweight(alloc::vec![0; rank])
    }

    /// The fundamental coweight dual to the i-th simple root.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = alloc::vec![0; rank];
        c[i] = 1;
        Coweight(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

fn check_dim(f: &Coweight, sub: &Subsystem<'_>) -> Result<(), CoweightError> {
    if f.0.len() != sub.rank() {
        return Err(CoweightError::DimensionMismatch { expected: sub.rank(), got: f.0.len() });
    }
    Ok(())
}

/// `f(α₀) = Σ_γ f_γ · lift(α)_γ`.
pub fn evaluate(f: &Coweight, alpha: &Root, sub: &Subsystem<'_>) -> Result<i64, CoweightError> {
    check_dim(f, sub)?;
    let lift = sub.lift(alpha).ok_or_else(|| CoweightError::RootNotInSubsystem(alpha.clone()))?;
    Ok(f.0.iter().zip(lift).map(|(a, b)| a * b).sum())
}

/// `(s_γ f)_{γ'} = f_{γ'} − ⟨γ', γ̌⟩ f_γ`.
pub fn coweight_reflect(gamma: &Root, f: &Coweight, sub: &Subsystem<'_>) -> Result<Coweight, CoweightError> {
    check_dim(f, sub)?;
    let g = sub.gamma_index(gamma).ok_or_else(|| CoweightError::NotSimple(gamma.clone()))?;
    let p = sub.pairings();
    Ok(Coweight((0..sub.rank()).map(|i| f.0[i] - p[i][g] * f.0[g]).collect()))
}

/// `X_M = {f : m_γ | f_γ for all γ ∈ Γ}` for a scaling function `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleSubgroup {
    m: Vec<i64>,
}

impl AdmissibleSubgroup {
    pub fn new(m: Vec<i64>, sub: &Subsystem<'_>) -> Result<Self, CoweightError> {
        if m.len() != sub.rank() {
            return Err(CoweightError::DimensionMismatch { expected: sub.rank(), got: m.len() });
        }
        if !is_scaling_function(&m, sub.pairings()) {
            return Err(CoweightError::NotAScalingFunction);
        }
        Ok(AdmissibleSubgroup { m })
    }

    pub fn from_scaling(m: &ScalingFunction) -> Self {
        AdmissibleSubgroup { m: m.values().to_vec() }
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn contains(&self, f: &Coweight) -> bool {
        f.0.len() == self.m.len() && self.m.iter().zip(&f.0).all(|(&m, &x)| divides(m, x))
    }

    /// The generators `m_γ ω_γ`; those with `m_γ = 0` are zero.
    pub fn generators(&self) -> Vec<Coweight> {
        let k = self.m.len();
        (0..k)
            .map(|i| Coweight((0..k).map(|j| if i == j { self.m[i] } else { 0 }).collect()))
            .collect()
    }
}

/// The unique extension `n` of `m` from Γ to Ψ: `n_α = gcd_γ(m_γ·|lift(α)_γ|)`.
pub fn extend_scaling(m: &[i64], sub: &Subsystem<'_>) -> Result<BTreeMap<Root, i64>, CoweightError> {
    if m.len() != sub.rank() {
        return Err(CoweightError::DimensionMismatch { expected: sub.rank(), got: m.len() });
    }
    if !is_scaling_function(m, sub.pairings()) {
        return Err(CoweightError::NotAScalingFunction);
    }
    Ok(sub
        .roots()
        .iter()
        .map(|r| {
            let lift = sub.lift(r).expect("lift is total on the subsystem");
            (r.clone(), gcd_all(m.iter().zip(lift).map(|(a, b)| a * b)))
        })
        .collect())
}

/// Both conditions on an n-family: `n_β | ⟨β,α̌⟩·n_α` for all α, β ∈ Ψ, and
/// `n` constant on W_Ψ-orbits.
pub fn check_n_family(n: &BTreeMap<Root, i64>, sub: &Subsystem<'_>) -> bool {
    let Some(values) = sub.roots().iter().map(|r| n.get(r).copied()).collect::<Option<Vec<i64>>>() else {
        return false;
    };
    if values.iter().any(|&v| v < 0) {
        return false;
    }
    for a in sub.roots() {
        for b in sub.roots() {
            if !divides(n[b], sub.pairing(b, a) * n[a]) {
                return false;
            }
        }
    }
    sub.orbits()
        .iter()
        .all(|orbit| orbit.iter().all(|r| n[r] == n[&orbit[0]]))
}

/// Canonical representative of `x + X_M`: coordinates reduced into `[0, m_γ)`,
/// left as is where `m_γ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetRep(pub Vec<i64>);

impl CosetRep {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn as_coweight(&self) -> Coweight {
        Coweight(self.0.clone())
    }
}

pub fn canonical_coset(x: &Coweight, subgroup: &AdmissibleSubgroup) -> CosetRep {
    CosetRep(x.0.iter().zip(&subgroup.m).map(|(&v, &m)| reduce(v, m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanMatrix;
    use crate::roots::{HeightBound, RootSystem};
    use alloc::vec;

    fn system(rows: Vec<Vec<i64>>) -> RootSystem {
        RootSystem::generate(&CartanMatrix::unlabeled(rows).unwrap(), HeightBound::UnboundedFinite).unwrap()
    }

    fn full(rs: &RootSystem) -> Subsystem<'_> {
        Subsystem::generated_by(rs, rs.roots()).unwrap()
    }

    #[test]
    fn evaluation() {
        let rs = system(vec![vec![2, -1], vec![-1, 2]]);
        let sub = full(&rs);
        let a12 = rs.find(&[1, 1]).unwrap();
        assert_eq!(evaluate(&Coweight(vec![1, 1]), a12, &sub), Ok(2));
        assert_eq!(evaluate(&Coweight::fundamental(2, 0), a12, &sub), Ok(1));
        for r in rs.roots() {
            assert_eq!(evaluate(&Coweight::zero(2), r, &sub), Ok(0));
        }
    }

    #[test]
    fn evaluation_outside_subsystem() {
        let rs = system(vec![vec![2, -1], vec![-1, 2]]);
        let sub = Subsystem::generated_by(&rs, [rs.find(&[1, 0]).unwrap()]).unwrap();
        let err = evaluate(&Coweight(vec![1]), rs.find(&[0, 1]).unwrap(), &sub).unwrap_err();
        assert_eq!(err.name(), "RootNotInSubsystem");
    }

    #[test]
    fn reflection_of_coweights() {
        let rs = system(vec![vec![2, -1], vec![-1, 2]]);
        let sub = full(&rs);
        let a1 = rs.find(&[1, 0]).unwrap();
        let f = Coweight(vec![1, 0]);
        let g = coweight_reflect(a1, &f, &sub).unwrap();
        assert_eq!(g, Coweight(vec![-1, 1]));
        assert_eq!(coweight_reflect(a1, &g, &sub).unwrap(), f);
        assert_eq!(coweight_reflect(a1, &Coweight::zero(2), &sub).unwrap(), Coweight::zero(2));
        let not_simple = rs.find(&[1, 1]).unwrap();
        assert_eq!(coweight_reflect(not_simple, &f, &sub).unwrap_err().name(), "NotSimple");
    }

    #[test]
    fn extension_examples() {
        let a2 = system(vec![vec![2, -1], vec![-1, 2]]);
        let n = extend_scaling(&[1, 1], &full(&a2)).unwrap();
        assert_eq!(n[a2.find(&[1, 1]).unwrap()], 1);

        let b2 = system(vec![vec![2, -1], vec![-2, 2]]);
        let sub = full(&b2);
        let n = extend_scaling(&[1, 2], &sub).unwrap();
        assert_eq!(n[b2.find(&[1, 1]).unwrap()], 1);
        assert_eq!(n[b2.find(&[2, 1]).unwrap()], 2);
        assert!(check_n_family(&n, &sub));
        assert_eq!(extend_scaling(&[2, 1], &sub).unwrap_err(), CoweightError::NotAScalingFunction);

        let g2 = system(vec![vec![2, -1], vec![-3, 2]]);
        let n = extend_scaling(&[1, 3], &full(&g2)).unwrap();
        assert_eq!(n[g2.find(&[3, 2]).unwrap()], 3);
    }

    #[test]
    fn n_family_checks() {
        let b2 = system(vec![vec![2, -1], vec![-2, 2]]);
        let sub = full(&b2);
        // short roots are ±α and ±(α+β)
        let swapped: BTreeMap<Root, i64> = sub
            .roots()
            .iter()
            .map(|r| (r.clone(), if r.coords()[0].abs() == 1 { 2 } else { 1 }))
            .collect();
        assert!(!check_n_family(&swapped, &sub));
        let constant: BTreeMap<Root, i64> = sub.roots().iter().map(|r| (r.clone(), 5)).collect();
        assert!(check_n_family(&constant, &sub));
    }

    #[test]
    fn cosets() {
        let x = AdmissibleSubgroup { m: vec![2] };
        assert_eq!(canonical_coset(&Coweight(vec![5]), &x), CosetRep(vec![1]));
        let x = AdmissibleSubgroup { m: vec![0] };
        assert_eq!(canonical_coset(&Coweight(vec![7]), &x), CosetRep(vec![7]));
        let x = AdmissibleSubgroup { m: vec![1, 2] };
        assert_eq!(canonical_coset(&Coweight(vec![4, -1]), &x), CosetRep(vec![0, 1]));
        assert!(x.contains(&Coweight(vec![3, -4])));
        assert!(!x.contains(&Coweight(vec![3, 1])));
    }
}
