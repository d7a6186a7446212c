mod common;

use std::collections::BTreeSet;

use common::*;
use sodlab_core::exceptional::{
    enumerate_full_exceptional_sequences, is_exceptional, left_mutate, right_mutate, ExceptionalSequence,
};
use sodlab_core::{DerivedObject, Interval, TypeAEngine};

fn all_sequences(e: &TypeAEngine) -> BTreeSet<Vec<Interval>> {
    enumerate_full_exceptional_sequences(e)
        .unwrap()
        .into_iter()
        .map(|s| s.items)
        .collect()
}

#[test]
fn counts_agree_with_brute_force() {
    for (n, expected) in [(1, 1), (2, 3), (3, 16), (4, 125)] {
        let e = engine(n);
        let ours = all_sequences(e);
        let oracle: BTreeSet<Vec<Interval>> = brute_force_full_sequences(n).into_iter().collect();
        assert_eq!(ours.len(), expected, "n={n}");
        assert_eq!(ours, oracle, "n={n}");
    }
}

#[test]
fn every_indecomposable_is_exceptional() {
    let e = engine(4);
    for iv in intervals(4) {
        assert!(is_exceptional(e, &DerivedObject::single(iv, 2)));
    }
    let two = DerivedObject::from_terms([(Interval::new(1, 1), 0, 2)]);
    assert!(!is_exceptional(e, &two));
}

#[test]
fn mutation_inverse_laws() {
    for n in 2..=4 {
        let e = engine(n);
        for s in enumerate_full_exceptional_sequences(e).unwrap() {
            for i in 1..n {
                let l = left_mutate(e, &s, i).unwrap();
                assert_eq!(right_mutate(e, &l, i).unwrap(), s);
                let r = right_mutate(e, &s, i).unwrap();
                assert_eq!(left_mutate(e, &r, i).unwrap(), s);
                assert!(l.full && r.full);
            }
        }
    }
}

#[test]
fn braid_relations_on_sequences() {
    for n in 3..=4 {
        let e = engine(n);
        let l = |s: &ExceptionalSequence, i| left_mutate(e, s, i).unwrap();
        for s in enumerate_full_exceptional_sequences(e).unwrap() {
            for i in 1..n - 1 {
                assert_eq!(l(&l(&l(&s, i), i + 1), i), l(&l(&l(&s, i + 1), i), i + 1));
            }
            for i in 1..n {
                for j in i + 2..n {
                    assert_eq!(l(&l(&s, i), j), l(&l(&s, j), i));
                }
            }
        }
    }
}

#[test]
fn braid_action_is_transitive() {
    let e = engine(4);
    let all = all_sequences(e);
    let start = enumerate_full_exceptional_sequences(e).unwrap().remove(0);
    let mut seen = BTreeSet::from([start.items.clone()]);
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        for i in 1..4 {
            for t in [left_mutate(e, &s, i).unwrap(), right_mutate(e, &s, i).unwrap()] {
                if seen.insert(t.items.clone()) {
                    stack.push(t);
                }
            }
        }
    }
    assert_eq!(seen, all);
}

#[test]
fn bad_index_is_rejected() {
    let e = engine(2);
    let s = ExceptionalSequence::new(e, vec![Interval::new(1, 1), Interval::new(2, 2)]).unwrap();
    assert!(left_mutate(e, &s, 0).is_err());
    assert!(left_mutate(e, &s, 2).is_err());
    assert!(ExceptionalSequence::new(e, vec![Interval::new(1, 1), Interval::new(1, 2)]).is_err());
}
