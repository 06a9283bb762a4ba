mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stf::adcoding::{
    self, ad_transform, all_conditions, code_segment, commit_bound, decode_predicate, family, q_compatible, q_leq,
    simulate, standard_denses, AdFamily, QCondition, QDense, QPoset,
};
use stf::forcing::DenseSet;
use stf::Budget;

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn random_condition<R: Rng>(rng: &mut R, fam: &AdFamily, base: &[bool]) -> QCondition {
    let mut g = base.to_vec();
    for _ in 0..rng.gen_range(0..=6) {
        if g.len() < fam.horizon() {
            g.push(rng.gen());
        }
    }
    QCondition::new(g, (0..fam.indices()).filter(|_| rng.gen_bool(0.4)))
}

#[test]
fn codes_are_injective() {
    let mut seen = BTreeSet::new();
    for len in 0..=10 {
        for v in 0..1u32 << len {
            let bits: Vec<bool> = (0..len).rev().map(|i| v >> i & 1 == 1).collect();
            assert!(seen.insert(code_segment(&bits)));
        }
    }
    assert_eq!(seen.len(), (1 << 11) - 1);
}

#[test]
fn transforms_intersect_up_to_first_disagreement() {
    let h = 6;
    for a in common::subsets(h) {
        for b in common::subsets(h) {
            let shared = ad_transform(&a, h).intersection(&ad_transform(&b, h)).count();
            match adcoding::first_disagreement(&a, &b, h) {
                Some(i) => assert_eq!(shared, i + 1),
                None => assert_eq!(shared, h + 1),
            }
        }
    }
    let big: BTreeSet<BigUint> = ad_transform(&set(&[]), 2);
    assert_eq!(big, [1u32, 2, 4].iter().map(|&x| BigUint::from(x)).collect());
}

#[test]
fn family_is_almost_disjoint() {
    let fam = family(16, 64, Budget::default()).unwrap();
    for a in 0..16 {
        assert!(!fam.coded(a).is_empty());
        for b in a + 1..16 {
            assert_ne!(fam.base(a), fam.base(b));
            let shared = fam.coded(a).intersection(fam.coded(b)).count();
            let fd = adcoding::first_disagreement(fam.base(a), fam.base(b), 64).unwrap();
            assert!(shared <= fd + 1);
        }
    }
}

#[test]
fn extension_is_a_partial_order() {
    let fam = family(3, 16, Budget::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..500 {
        let a = random_condition(&mut rng, &fam, &[]);
        let b = random_condition(&mut rng, &fam, &a.g);
        let c = random_condition(&mut rng, &fam, &b.g);
        let (mut b, mut c) = (b, c);
        Extend::extend(&mut b.s, a.s.iter().copied());
        Extend::extend(&mut c.s, b.s.iter().copied());
        assert!(q_leq(&a, &a, &fam));
        if q_leq(&c, &b, &fam) && q_leq(&b, &a, &fam) {
            assert!(q_leq(&c, &a, &fam));
        }
        if q_leq(&a, &b, &fam) && q_leq(&b, &a, &fam) {
            assert_eq!(a, b);
        }
    }
}

#[test]
fn committing_forbids_new_ones() {
    let fam = family(2, 16, Budget::default()).unwrap();
    let gamma = *fam.coded(0).iter().next().unwrap();
    let mut h = vec![false; gamma + 1];
    h[gamma] = true;
    let weaker = QCondition::new(Vec::new(), [0]);
    assert!(!q_leq(&QCondition::new(h.clone(), [0]), &weaker, &fam));
    assert!(!q_leq(&QCondition::new(h, [0, 1]), &weaker, &fam));
}

#[test]
fn compatibility_matches_brute_force() {
    let fam = family(2, 4, Budget::default()).unwrap();
    let all = all_conditions(&fam, Budget::default()).unwrap();
    for a in &all {
        for b in &all {
            let brute = all.iter().any(|c| q_leq(c, a, &fam) && q_leq(c, b, &fam));
            assert_eq!(q_compatible(a, b, &fam), brute, "{a} {b}");
        }
    }
}

#[test]
fn same_string_conditions_have_the_union_witness() {
    let fam = family(4, 64, Budget::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..500 {
        let a = random_condition(&mut rng, &fam, &[]);
        let b = QCondition::new(a.g.clone(), (0..4).filter(|_| rng.gen_bool(0.5)));
        let w = adcoding::common_extension(&a, &b, &fam).unwrap();
        assert_eq!(w, QCondition::new(a.g.clone(), a.s.union(&b.s).copied()));
        assert!(q_leq(&w, &a, &fam) && q_leq(&w, &b, &fam));
    }
    let zero: QCondition = "0:".parse().unwrap();
    let one: QCondition = "1:".parse().unwrap();
    assert!(!q_compatible(&zero, &one, &fam));
}

/// Every emitted set has, below each condition of the truncated poset, a
/// member of the set; checked against the full condition list.
#[test]
fn standard_denses_are_dense_at_small_horizon() {
    let fam = family(2, 6, Budget::default()).unwrap();
    let q = QPoset { fam: &fam };
    let all = all_conditions(&fam, Budget::default()).unwrap();
    for target in common::subsets(2) {
        let denses = standard_denses(&target, &fam).unwrap();
        if target.is_empty() {
            assert!(denses.iter().all(|d| !matches!(d, QDense::Commit { .. })));
        }
        for d in &denses {
            let members: Vec<&QCondition> = all.iter().filter(|c| d.contains(&q, c)).collect();
            for c in &all {
                assert!(members.iter().any(|m| q_leq(m, c, &fam)), "{d} not dense at {c}");
            }
            if let QDense::Commit { beta } = d {
                assert!(members.iter().all(|m| m.s.contains(beta)));
            }
        }
    }
}

#[test]
fn decoding_recovers_every_target() {
    for k in 1..=4 {
        for target in common::subsets(k) {
            for seed in [0, 1, 2] {
                let sim = simulate(&target, k, 64, seed, Budget::default()).unwrap();
                assert_eq!(sim.decoded, target, "k={k} seed={seed}");
                assert_eq!(sim.bound, commit_bound(64));
                let fam = family(k, 64, Budget::default()).unwrap();
                for beta in 0..k {
                    let hits: Vec<usize> = fam.coded(beta).iter().copied().filter(|g| sim.x.contains(g)).collect();
                    if target.contains(&beta) {
                        assert!(hits.iter().all(|&g| g < sim.bound));
                    } else {
                        assert!(hits.iter().any(|&g| g >= sim.bound));
                    }
                }
            }
        }
    }
}

#[test]
fn simulation_is_deterministic() {
    let t = set(&[0, 2]);
    let a = simulate(&t, 4, 64, 5, Budget::default()).unwrap();
    assert_eq!(a, simulate(&t, 4, 64, 5, Budget::default()).unwrap());
    assert_eq!(
        a.to_string(),
        simulate(&t, 4, 64, 5, Budget::default()).unwrap().to_string()
    );
}

#[test]
fn degenerate_inputs() {
    let fam = family(3, 64, Budget::default()).unwrap();
    assert_eq!(decode_predicate(&BTreeSet::new(), &fam, 16), set(&[0, 1, 2]));
    let everything: BTreeSet<usize> = (0..64).collect();
    assert!((0..3).all(|b| fam.coded(b).range(16..64).next().is_some()));
    assert_eq!(decode_predicate(&everything, &fam, 16), set(&[]));
    assert!(simulate(&set(&[5]), 2, 64, 0, Budget::default()).is_err());
    assert!(simulate(&set(&[]), 4, 1, 0, Budget::default()).is_err());
}
