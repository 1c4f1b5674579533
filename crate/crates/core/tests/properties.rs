use std::collections::BTreeSet;

use looproot_core::catalog::named;
use looproot_core::coweight::{coweight_reflect, evaluate, extend_scaling, check_n_family, AdmissibleSubgroup, Coweight};
use looproot_core::loop_classifier::{
    affine_reflect, build_root_function, classify_root_function, enumerate_loop_subsystems, verify_root_function,
    AffineRoot, ClassifiedPair, LoopEnumeration,
};
use looproot_core::scaling::{enumerate_basic_scalings, is_scaling_function};
use looproot_core::subsystems::{enumerate_subsystems, reflection_closure};
use looproot_core::{pairing, reflect, HeightBound, RootSystem, Subsystem};
use proptest::prelude::*;
use proptest::sample::select;

const TYPES: [&str; 5] = ["a2", "b2", "c3", "g2", "a3"];

fn system(name: &str) -> RootSystem {
    RootSystem::generate(&named(name).unwrap(), HeightBound::UnboundedFinite).unwrap()
}

fn lcm_all(v: &[i64]) -> i64 {
    v.iter().fold(1, |acc, &x| acc / gcd(acc, x) * x)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn reflection_preserves_pairing(name in select(&TYPES[..]), i: usize, j: usize, k: usize) {
        let rs = system(name);
        let roots = rs.roots();
        let (a, b, g) = (&roots[i % roots.len()], &roots[j % roots.len()], &roots[k % roots.len()]);
        let gcm = rs.gcm();
        prop_assert_eq!(pairing(&reflect(a, g, gcm), &reflect(b, g, gcm), gcm), pairing(a, b, gcm));
        prop_assert_eq!(reflect(&reflect(a, g, gcm), g, gcm), a.clone());
        prop_assert_eq!(pairing(a, &a.clone(), gcm), 2);
    }

    #[test]
    fn closure_is_idempotent(name in select(&TYPES[..]), picks in prop::collection::vec(any::<usize>(), 0..4)) {
        let rs = system(name);
        let seed: Vec<_> = picks.iter().map(|&i| rs.roots()[i % rs.len()].clone()).collect();
        let once = reflection_closure(seed.iter(), &rs).unwrap();
        let twice = reflection_closure(once.iter(), &rs).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn lift_respects_reflections(name in select(&TYPES[..]), picks in prop::collection::vec(any::<usize>(), 1..4)) {
        let rs = system(name);
        let sub = Subsystem::generated_by(&rs, picks.iter().map(|&i| &rs.roots()[i % rs.len()])).unwrap();
        for a in sub.gamma() {
            for b in sub.roots() {
                let c = sub.pairing(b, a);
                let la = sub.lift(a).unwrap();
                let expected: Vec<i64> = sub.lift(b).unwrap().iter().zip(la).map(|(x, y)| x - c * y).collect();
                prop_assert_eq!(sub.lift(&rs.reflect(b, a)).unwrap(), &expected[..]);
            }
        }
    }

    #[test]
    fn admissible_subgroup_is_weyl_stable(name in select(&TYPES[..]), scale in 1i64..4, ks in prop::collection::vec(-5i64..=5, 3)) {
        let rs = system(name);
        let sub = Subsystem::generated_by(&rs, rs.roots()).unwrap();
        for basic in enumerate_basic_scalings(sub.pairings()).basics() {
            let m: Vec<i64> = basic.values().iter().map(|v| v * scale).collect();
            let x = AdmissibleSubgroup::new(m.clone(), &sub).unwrap();
            let f = Coweight(m.iter().zip(ks.iter().cycle()).map(|(a, b)| a * b).collect());
            for g in sub.gamma() {
                prop_assert!(x.contains(&coweight_reflect(g, &f, &sub).unwrap()));
            }
        }
    }

    #[test]
    fn extension_restricts_to_m(name in select(&TYPES[..]), scale in 1i64..5) {
        let rs = system(name);
        let sub = Subsystem::generated_by(&rs, rs.roots()).unwrap();
        for basic in enumerate_basic_scalings(sub.pairings()).basics() {
            let m: Vec<i64> = basic.values().iter().map(|v| v * scale).collect();
            let n = extend_scaling(&m, &sub).unwrap();
            for (i, g) in sub.gamma().iter().enumerate() {
                prop_assert_eq!(n[g], m[i]);
            }
            prop_assert!(check_n_family(&n, &sub));
        }
    }

    #[test]
    fn scaling_multiples_and_inverse(name in select(&TYPES[..]), scale in 1i64..7) {
        let rows = named(name).unwrap().rows();
        for basic in enumerate_basic_scalings(&rows).basics() {
            let m = basic.values();
            let multiple: Vec<i64> = m.iter().map(|v| v * scale).collect();
            prop_assert!(is_scaling_function(&multiple, &rows));
            let l = lcm_all(m);
            let inverse: Vec<i64> = m.iter().map(|v| l / v).collect();
            let transposed: Vec<Vec<i64>> = (0..rows.len()).map(|i| (0..rows.len()).map(|j| rows[j][i]).collect()).collect();
            prop_assert!(is_scaling_function(&inverse, &transposed));
            let back: Vec<i64> = inverse.iter().map(|v| l / v).collect();
            prop_assert_eq!(&back[..], m);
        }
    }

    #[test]
    fn affine_reflection_is_involutive(k: usize, j: usize, m in -6i64..=6, n in -6i64..=6) {
        let rs = system("b2");
        let a = AffineRoot::new(rs.roots()[k % rs.len()].clone(), m);
        let b = AffineRoot::new(rs.roots()[j % rs.len()].clone(), n);
        let once = affine_reflect(&a, &b, rs.gcm());
        prop_assert_eq!(affine_reflect(&a, &once, rs.gcm()), b);
    }
}

fn pairs<'a>(rs: &'a RootSystem) -> Vec<ClassifiedPair<'a>> {
    enumerate_loop_subsystems(rs, &LoopEnumeration::new(2)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bijection_and_negation(name in select(&["a1", "a2", "b2", "g2"][..]), pick: usize) {
        let rs = system(name);
        let all = pairs(&rs);
        let p = &all[pick % all.len()];
        let cf = build_root_function(p).unwrap();
        prop_assert!(verify_root_function(&cf, &rs).is_ok());
        prop_assert_eq!(&classify_root_function(&cf, &rs).unwrap(), p);
        for (r, z) in cf.entries() {
            let neg = cf.get(&r.neg()).unwrap();
            prop_assert_eq!(neg.modulus(), z.modulus());
            prop_assert!(neg.contains(-z.offset()));
        }
        let sub = p.subsystem();
        let n = extend_scaling(p.m().values(), sub).unwrap();
        for orbit in sub.orbits() {
            let moduli: BTreeSet<i64> = orbit.iter().map(|r| cf.get(r).unwrap().modulus()).collect();
            prop_assert_eq!(moduli.len(), 1);
            prop_assert_eq!(*moduli.iter().next().unwrap(), n[&orbit[0]]);
        }
    }

    #[test]
    fn evaluation_is_linear_on_lifts(name in select(&TYPES[..]), f in prop::collection::vec(-9i64..=9, 3)) {
        let rs = system(name);
        for sub in enumerate_subsystems(&rs, 4).unwrap() {
            let x = Coweight(f.iter().copied().cycle().take(sub.rank()).collect());
            for a in sub.gamma() {
                for b in sub.roots() {
                    let c = sub.pairing(b, a);
                    let lhs = evaluate(&x, &rs.reflect(b, a), &sub).unwrap();
                    prop_assert_eq!(lhs, evaluate(&x, b, &sub).unwrap() - c * evaluate(&x, a, &sub).unwrap());
                }
            }
        }
    }
}
