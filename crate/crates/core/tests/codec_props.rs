mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stf::codec::{self, CodecError, Property};
use stf::{Budget, CodingPair, CodingTree, HfSet};

const TREE3: &str = include_str!("data/tree3.cp");
const DIFFERENT_LEVELS: &str = include_str!("data/figure_different_levels.cp");
const SAME_LEVEL: &str = include_str!("data/figure_same_level.cp");
const CYCLIC: &str = include_str!("data/cyclic.cp");

fn tree(text: &str) -> CodingTree {
    text.parse().unwrap()
}

fn hf(s: &str) -> HfSet {
    s.parse().unwrap()
}

#[test]
fn tree_of_three() {
    let pair: CodingPair = TREE3.parse().unwrap();
    assert!(pair.validate().is_ok());
    let t = tree(TREE3);
    assert_eq!(t.len(), 8);
    assert_eq!(t.decode(), common::ordinal(3));
    assert_eq!(t.decode(), common::decode_text(TREE3));
    let q = t.quotient();
    assert_eq!(q.reps.len(), 4);
    assert!(q.is_extensional() && q.is_well_founded());
    assert_eq!(q.collapse().unwrap(), common::ordinal(3));
    assert_eq!(t.level_of("0'''").unwrap(), 3);
    assert_eq!(t.level_of("3").unwrap(), 0);
    let sub = t.subtree("2").unwrap();
    let labels: BTreeSet<&str> = sub.labels().iter().map(String::as_str).collect();
    assert_eq!(labels, BTreeSet::from(["2", "1'", "0''", "0'''"]));
    assert_eq!(sub.decode(), common::ordinal(2));
    assert!(matches!(t.level_of("7"), Err(CodecError::UnknownLabel(_))));
}

#[test]
fn isomorphic_subtrees_on_different_levels() {
    let pair: CodingPair = DIFFERENT_LEVELS.parse().unwrap();
    assert!(pair.validate().is_ok());
    let t = tree(DIFFERENT_LEVELS);
    assert!(t.subtree("v").unwrap().is_isomorphic(&t.subtree("v'").unwrap()));
    assert_eq!(t.level_of("v").unwrap(), 2);
    assert_eq!(t.level_of("v'").unwrap(), 3);
    assert_eq!(t.decode(), hf("{{{},{{}}}}"));
    assert_eq!(t.quotient().reps.len(), 4);
}

#[test]
fn isomorphic_subtrees_on_the_same_level() {
    let pair: CodingPair = SAME_LEVEL.parse().unwrap();
    assert!(pair.validate().is_ok());
    let t = tree(SAME_LEVEL);
    assert!(t.subtree("v").unwrap().is_isomorphic(&t.subtree("v'").unwrap()));
    assert_eq!(t.level_of("v").unwrap(), 2);
    assert_eq!(t.level_of("v'").unwrap(), 2);
    assert_ne!(t.parent(t.index_of("v").unwrap()), t.parent(t.index_of("v'").unwrap()));
    assert_eq!(t.decode(), common::decode_text(SAME_LEVEL));
}

#[test]
fn violations_are_reported() {
    let cyclic: CodingPair = CYCLIC.parse().unwrap();
    let r = cyclic.validate();
    assert!(r.violates(Property::D));
    assert!(matches!(CYCLIC.parse::<CodingTree>(), Err(CodecError::Invalid(_))));

    let twins = CodingPair::new("r", [("a", "r"), ("b", "r")]);
    let r = twins.validate();
    assert!(r.violates(Property::B) && !r.violates(Property::D));

    // c is a child of both a and b, which sit on the same level.
    let shared = CodingPair::new("r", [("a", "r"), ("b", "r"), ("c", "a"), ("c", "b"), ("d", "b")]);
    assert!(shared.validate().violates(Property::C));

    let island = CodingPair::new("r", [("a", "r"), ("b", "c")]);
    assert!(island.validate().violates(Property::A));
}

#[test]
fn format_errors_carry_line_numbers() {
    for (text, line) in [
        ("edge a b\n", 1),
        ("root r\nedge a\n", 2),
        ("root r\n\n# c\nnode x\n", 4),
        ("root r\nroot s\n", 2),
    ] {
        match text.parse::<CodingPair>() {
            Err(CodecError::Format { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn encode_decode_roundtrip_and_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let x = common::random_set(&mut rng, 4, 4);
        let t = codec::encode(&x, Budget::default()).unwrap();
        assert!(t.to_pair().validate().is_ok());
        assert_eq!(t.decode(), x);
        assert_eq!(common::decode_text(&t.to_string()), x);
        assert_eq!(t.len(), x.unfolding_size());
    }
}

#[test]
fn decode_matches_oracle_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..300 {
        let (parent, labels) = common::random_valid_tree(&mut rng, 30);
        let text = common::pair_text(&parent, &labels);
        let t = tree(&text);
        let expected = common::decode_text(&text);
        assert_eq!(t.decode(), expected);
        assert_eq!(t.quotient().collapse().unwrap(), expected);
        let relabeled = t.relabel(|l| format!("z{l}")).unwrap();
        assert_eq!(relabeled.decode(), expected);
        assert!(relabeled.is_isomorphic(&t));
    }
}

#[test]
fn isomorphism_matches_decoded_equality_small() {
    let mut trees = Vec::new();
    for n in 1..=5 {
        for parent in common::parent_arrays(n) {
            if common::siblings_distinct(&parent) {
                let text = common::pair_text(&parent, &common::default_labels(n));
                trees.push((tree(&text), common::decode_text(&text)));
            }
        }
    }
    for (a, x) in &trees {
        for (b, y) in &trees {
            assert_eq!(codec::is_isomorphic(a, b), x == y);
            assert_eq!(codec::codes_equality(a, b), x == y);
        }
    }
}

#[test]
fn membership_on_codes() {
    let v3 = common::v(3);
    for x in &v3 {
        for y in &v3 {
            let (tx, ty) = (
                codec::encode(x, Budget::default()).unwrap(),
                codec::encode(y, Budget::default()).unwrap(),
            );
            assert_eq!(codec::codes_membership(&ty, &tx), x.contains(y));
        }
    }
}

#[test]
fn class_encoding() {
    let members = vec![hf("{}"), hf("{{}}"), hf("{}")];
    let t = codec::class_encode(&members, Budget::default()).unwrap();
    assert!(t.to_pair().validate().is_ok());
    assert_eq!(t.decode(), hf("{{},{{}}}"));
    assert_eq!(
        codec::class_encode(&[], Budget::default()).unwrap().decode(),
        HfSet::empty()
    );
}

#[test]
fn quotient_text_roundtrip_and_collapse_errors() {
    let q = tree(TREE3).quotient();
    let again: stf::QuotientStructure = q.to_string().parse().unwrap();
    assert_eq!(again, q);
    let loopy: stf::QuotientStructure = "root r\nedge a r\nedge a a\n".parse().unwrap();
    assert!(!loopy.is_well_founded());
    assert!(matches!(loopy.collapse(), Err(CodecError::Cyclic(_))));
    let flat: stf::QuotientStructure = "root r\nedge a r\nedge b r\n".parse().unwrap();
    assert!(!flat.is_extensional());
    assert!(matches!(flat.collapse(), Err(CodecError::NotExtensional(..))));
}

#[test]
fn encode_respects_budget() {
    let big = common::ordinal(12);
    assert!(matches!(codec::encode(&big, Budget::new(100)), Err(CodecError::Hf(_))));
}
