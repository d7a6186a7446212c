//! Exceptional objects and sequences in `D^b(mod A_n)`, and the braid group
//! action by left and right mutation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::det_i64;
use crate::typea::{DerivedObject, Interval, TypeAEngine};

/// An ordered list of shift-normalized exceptional interval modules with
/// `Hom^*(E_j, E_i) = 0` whenever `j > i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExceptionalSequence {
    pub items: Vec<Interval>,
    pub full: bool,
}

impl ExceptionalSequence {
    /// Validates the items and records whether they generate everything.
    pub fn new(engine: &TypeAEngine, items: Vec<Interval>) -> Result<Self> {
        for iv in &items {
            iv.validate(engine.n())?;
        }
        if !is_exceptional_sequence(engine, &items) {
            let names: Vec<String> = items.iter().map(|iv| iv.name(engine.n())).collect();
            return Err(Error::invalid(format!(
                "({}) is not an exceptional sequence",
                names.join(",")
            )));
        }
        let full = is_full(engine, &items)?;
        Ok(ExceptionalSequence { items, full })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `(S1,S2)`-style rendering.
    pub fn display(&self, n: usize) -> String {
        let names: Vec<String> = self.items.iter().map(|iv| iv.name(n)).collect();
        format!("({})", names.join(","))
    }
}

pub fn is_exceptional(engine: &TypeAEngine, x: &DerivedObject) -> bool {
    match x.as_indecomposable() {
        Some(_) => engine.hom_dim(x, x, 0) == 1 && engine.hom_total(x, x) == 1,
        None => false,
    }
}

pub fn is_exceptional_sequence(engine: &TypeAEngine, items: &[Interval]) -> bool {
    let all_exceptional = items
        .iter()
        .all(|&iv| is_exceptional(engine, &DerivedObject::single(iv, 0)));
    all_exceptional
        && items.iter().enumerate().all(|(i, &ei)| {
            items[i + 1..]
                .iter()
                .all(|&ej| engine.graded_hom_vanishes(ej, ei))
        })
}

/// Fullness by thick closure, cross-checked against the `K_0` basis test.
pub fn is_full(engine: &TypeAEngine, items: &[Interval]) -> Result<bool> {
    let by_closure = engine.thick_closure_of(items.iter().copied()) == engine.whole();
    let n = engine.n();
    let by_lattice = items.len() == n && {
        let rows: Vec<Vec<i64>> = items.iter().map(|iv| iv.dim_vector(n)).collect();
        det_i64(&rows).abs() == 1
    };
    if by_closure != by_lattice {
        return Err(Error::internal(format!(
            "fullness tests disagree on {:?}: closure {by_closure}, lattice {by_lattice}",
            items
        )));
    }
    Ok(by_closure)
}

/// All full exceptional sequences, in lexicographic order of their items.
pub fn enumerate_full_exceptional_sequences(engine: &TypeAEngine) -> Result<Vec<ExceptionalSequence>> {
    let n = engine.n();
    let firsts: Vec<Interval> = engine.intervals().to_vec();
    let per_first: Vec<Vec<Vec<Interval>>> = firsts
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut seq = vec![first];
            extend(engine, n, &mut seq, &mut out);
            out
        })
        .collect();
    per_first
        .into_iter()
        .flatten()
        .map(|items| {
            let full = is_full(engine, &items)?;
            if !full {
                return Err(Error::internal(format!("length-{n} sequence {items:?} is not full")));
            }
            Ok(ExceptionalSequence { items, full })
        })
        .collect()
}

fn extend(engine: &TypeAEngine, n: usize, seq: &mut Vec<Interval>, out: &mut Vec<Vec<Interval>>) {
    if seq.len() == n {
        out.push(seq.clone());
        return;
    }
    for &c in engine.intervals() {
        if seq.iter().all(|&e| e != c && engine.graded_hom_vanishes(c, e)) {
            seq.push(c);
            extend(engine, n, seq, out);
            seq.pop();
        }
    }
}

fn check_index(s: &ExceptionalSequence, i: usize) -> Result<()> {
    if i == 0 || i >= s.len() {
        return Err(Error::invalid(format!(
            "mutation index {i} out of range 1..={}",
            s.len().saturating_sub(1)
        )));
    }
    Ok(())
}

fn as_item(engine: &TypeAEngine, x: DerivedObject) -> Result<Interval> {
    if !is_exceptional(engine, &x) {
        return Err(Error::internal(format!("mutation produced a non-exceptional object {x}")));
    }
    Ok(x.as_indecomposable().expect("exceptional objects are indecomposable").0)
}

/// `(.., E_i, E_{i+1}, ..) -> (.., L_{E_i} E_{i+1}, E_i, ..)`, with `i` 1-based.
pub fn left_mutate(engine: &TypeAEngine, s: &ExceptionalSequence, i: usize) -> Result<ExceptionalSequence> {
    check_index(s, i)?;
    let (e, f) = (s.items[i - 1], s.items[i]);
    let l = as_item(engine, engine.left_mutation(e, f).normalized())?;
    let mut items = s.items.clone();
    items[i - 1] = l;
    items[i] = e;
    finish(engine, s, items)
}

/// `(.., E_i, E_{i+1}, ..) -> (.., E_{i+1}, R_{E_{i+1}} E_i, ..)`, with `i` 1-based.
pub fn right_mutate(engine: &TypeAEngine, s: &ExceptionalSequence, i: usize) -> Result<ExceptionalSequence> {
    check_index(s, i)?;
    let (e, f) = (s.items[i - 1], s.items[i]);
    let r = as_item(engine, engine.right_mutation(e, f).normalized())?;
    let mut items = s.items.clone();
    items[i - 1] = f;
    items[i] = r;
    finish(engine, s, items)
}

fn finish(engine: &TypeAEngine, s: &ExceptionalSequence, items: Vec<Interval>) -> Result<ExceptionalSequence> {
    if !is_exceptional_sequence(engine, &items) {
        return Err(Error::internal(format!("mutation of {:?} broke exceptionality", s.items)));
    }
    Ok(ExceptionalSequence { items, full: s.full })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    #[test]
    fn exceptional_objects() {
        let e2 = TypeAEngine::new(2).unwrap();
        assert!(is_exceptional(&e2, &DerivedObject::single(iv(1, 1), 0)));
        let sum = DerivedObject::from_terms([(iv(1, 1), 0, 1), (iv(2, 2), 0, 1)]);
        assert!(!is_exceptional(&e2, &sum));
        assert!(!is_exceptional(&e2, &DerivedObject::zero()));
        let e3 = TypeAEngine::new(3).unwrap();
        assert!(is_exceptional(&e3, &DerivedObject::single(iv(1, 3), 4)));
    }

    #[test]
    fn a2_sequences() {
        let e2 = TypeAEngine::new(2).unwrap();
        let seqs = enumerate_full_exceptional_sequences(&e2).unwrap();
        let shown: Vec<String> = seqs.iter().map(|s| s.display(2)).collect();
        assert_eq!(shown, ["(S1,S2)", "(P1,S1)", "(S2,P1)"]);
        let e1 = TypeAEngine::new(1).unwrap();
        let seqs = enumerate_full_exceptional_sequences(&e1).unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].display(1), "(S1)");
    }

    #[test]
    fn mutation_examples() {
        let e2 = TypeAEngine::new(2).unwrap();
        let s = ExceptionalSequence::new(&e2, vec![iv(1, 1), iv(2, 2)]).unwrap();
        let l = left_mutate(&e2, &s, 1).unwrap();
        assert_eq!(l.display(2), "(P1,S1)");
        assert_eq!(right_mutate(&e2, &l, 1).unwrap(), s);

        let e3 = TypeAEngine::new(3).unwrap();
        let s = ExceptionalSequence::new(&e3, vec![iv(1, 1), iv(2, 2), iv(3, 3)]).unwrap();
        assert_eq!(left_mutate(&e3, &s, 1).unwrap().display(3), "(I2,S1,S3)");
        assert!(left_mutate(&e3, &s, 0).is_err());
        assert!(left_mutate(&e3, &s, 3).is_err());
    }

    #[test]
    fn orthogonal_pair_transposes() {
        let e3 = TypeAEngine::new(3).unwrap();
        // Hom^* vanishes both ways between S1 and S3.
        let s = ExceptionalSequence::new(&e3, vec![iv(1, 1), iv(3, 3), iv(2, 3)]).unwrap();
        let l = left_mutate(&e3, &s, 1).unwrap();
        assert_eq!(l.items, [iv(3, 3), iv(1, 1), iv(2, 3)]);
        assert_eq!(right_mutate(&e3, &s, 1).unwrap(), l);
    }

    #[test]
    fn rejects_non_sequences() {
        let e2 = TypeAEngine::new(2).unwrap();
        assert!(ExceptionalSequence::new(&e2, vec![iv(2, 2), iv(1, 1)]).is_err());
        assert!(ExceptionalSequence::new(&e2, vec![iv(1, 3)]).is_err());
    }
}
