//! Harder-Narasimhan filtrations with respect to finite t-stabilities.
//!
//! The tower is built at chain level. With a finest refinement
//! `E_1, ..., E_N` of the pieces, set `R_0 = X` and let `R_j -> R_{j-1}` be
//! the fiber of the coevaluation `R_{j-1} -> Hom^*(R_{j-1}, E_j)^* (x) E_j`.
//! The factor of a piece covering `E_r..E_s` is the cone of the composite
//! `R_s -> R_{r-1}`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::TStability;
use crate::error::{Error, Result};
use crate::lattice::K0Class;
use crate::linalg::QMatrix;
use crate::typea::complex::{self, ChainMap, ProjComplex};
use crate::typea::{DerivedObject, Interval, TypeAEngine};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnResult {
    /// `(factor, phase)` from the top of the tower down, so phases decrease.
    pub factors: Vec<(DerivedObject, usize)>,
    pub phi_plus: usize,
    pub phi_minus: usize,
}

impl HnResult {
    fn from_factors(factors: Vec<(DerivedObject, usize)>) -> Self {
        let phi_plus = factors.first().map_or(0, |f| f.1);
        let phi_minus = factors.last().map_or(0, |f| f.1);
        HnResult {
            factors,
            phi_plus,
            phi_minus,
        }
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|(o, p)| json!({ "object": o, "phase": p }))
            .collect();
        json!({ "factors": factors, "phi_plus": self.phi_plus, "phi_minus": self.phi_minus })
    }

    /// `I2[-1]@3, P1@1`.
    pub fn display(&self, n: usize) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(o, p)| format!("{}@{}", o.display(n), p))
            .collect();
        parts.join(", ")
    }
}

fn identity_map(c: &ProjComplex) -> ChainMap {
    let comps = c
        .degrees()
        .map(|d| (d, QMatrix::identity(c.len(d))))
        .collect();
    ChainMap {
        source: c.clone(),
        target: c.clone(),
        comps,
    }
}

pub fn hn_filtration(engine: &TypeAEngine, t: &TStability, x: &DerivedObject) -> Result<HnResult> {
    let mut items = Vec::new();
    let mut owner = Vec::new();
    for (i, p) in t.pieces().iter().enumerate() {
        for e in engine.generating_sequence(p)? {
            items.push(e);
            owner.push(i + 1);
        }
    }
    hn_filtration_with_witness(engine, t, x, &items, &owner)
}

/// HN filtration using a caller-chosen refinement: `items[j]` is an
/// exceptional object of the piece with phase `phases[j]`.
pub fn hn_filtration_with_witness(
    engine: &TypeAEngine,
    t: &TStability,
    x: &DerivedObject,
    items: &[Interval],
    phases: &[usize],
) -> Result<HnResult> {
    x.validate(engine.n())?;
    if x.is_zero() {
        return Err(Error::invalid("the zero object has no HN filtration"));
    }
    check_witness(engine, t, items, phases)?;
    let n = engine.n();

    let mut towers = vec![engine.present(x)];
    let mut projections: Vec<ChainMap> = Vec::new();
    for &e in items {
        let cur = towers.last().expect("nonempty");
        let cur_obj = cur.decompose();
        let pe = ProjComplex::of_interval(n, e, 0);
        let mut maps = Vec::new();
        for k in engine.hom_window(&cur_obj, &DerivedObject::single(e, 0)) {
            maps.extend(complex::hom_basis(cur, &pe, k));
        }
        let pi = if maps.is_empty() {
            identity_map(cur)
        } else {
            complex::stack_targets(n, cur, &maps).fiber()
        };
        towers.push(pi.source.clone());
        projections.push(pi);
    }
    let rest = towers.last().expect("nonempty").decompose();
    if !rest.is_zero() {
        return Err(Error::internal(format!("HN tower left a remainder {rest}")));
    }

    let mut factors = Vec::new();
    let mut j = 0;
    while j < items.len() {
        let phase = phases[j];
        let mut s = j;
        while s + 1 < items.len() && phases[s + 1] == phase {
            s += 1;
        }
        let mut acc = projections[s].clone();
        for p in projections[j..s].iter().rev() {
            acc = p.compose(&acc);
        }
        let factor = acc.cone().decompose();
        if !factor.is_zero() {
            let piece = t.piece(phase).expect("checked witness");
            if !engine.in_subcat(piece, &factor) {
                return Err(Error::internal(format!("HN factor {factor} is not in piece {phase}")));
            }
            factors.push((factor, phase));
        }
        j = s + 1;
    }
    factors.reverse();

    let total = factors
        .iter()
        .fold(K0Class::zero(n), |acc, (f, _)| acc.add(&engine.class(f)));
    if total != engine.class(x) {
        return Err(Error::internal("HN factors do not recompose the class of X"));
    }
    Ok(HnResult::from_factors(factors))
}

fn check_witness(engine: &TypeAEngine, t: &TStability, items: &[Interval], phases: &[usize]) -> Result<()> {
    if items.len() != phases.len() {
        return Err(Error::invalid("witness items and phases differ in length"));
    }
    if phases.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("witness phases must be non-decreasing"));
    }
    if !crate::exceptional::is_exceptional_sequence(engine, items) {
        return Err(Error::invalid("witness is not an exceptional sequence"));
    }
    for (phase, piece) in t.pieces().iter().enumerate() {
        let gens = items
            .iter()
            .zip(phases)
            .filter(|(_, &p)| p == phase + 1)
            .map(|(e, _)| *e);
        if engine.thick_closure_of(gens) != *piece {
            return Err(Error::invalid(format!("witness does not generate piece {}", phase + 1)));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedTower {
    pub result: HnResult,
    /// One line per merge or swap performed.
    pub steps: Vec<String>,
}

#[derive(Debug, Clone)]
struct Entry {
    /// Known object; `None` once it is an extension of merged factors.
    obj: Option<DerivedObject>,
    parts: Vec<DerivedObject>,
    class: K0Class,
    phase: usize,
}

/// Turns a tower with arbitrarily ordered phases (listed top-down) into the
/// HN tower, merging equal adjacent phases and swapping misordered ones.
pub fn normalize_tower(
    engine: &TypeAEngine,
    t: &TStability,
    x: &DerivedObject,
    factors: &[(DerivedObject, usize)],
) -> Result<NormalizedTower> {
    let n = engine.n();
    x.validate(n)?;
    if factors.is_empty() {
        return Err(Error::invalid("no factors given"));
    }
    let mut total = K0Class::zero(n);
    for (i, (f, phase)) in factors.iter().enumerate() {
        f.validate(n)?;
        if f.is_zero() {
            return Err(Error::invalid(format!("factor {} is zero", i + 1)));
        }
        let piece = t
            .piece(*phase)
            .ok_or_else(|| Error::invalid(format!("factor {} has phase {phase} out of range", i + 1)))?;
        if !engine.in_subcat(piece, f) {
            return Err(Error::invalid(format!(
                "factor {} = {} is not in piece {phase}",
                i + 1,
                f.display(n)
            )));
        }
        total = total.add(&engine.class(f));
    }
    if total != engine.class(x) {
        return Err(Error::invalid("factor classes do not add up to the class of X"));
    }

    let mut list: Vec<Entry> = factors
        .iter()
        .map(|(f, p)| Entry {
            obj: Some(f.clone()),
            parts: vec![f.clone()],
            class: engine.class(f),
            phase: *p,
        })
        .collect();
    let mut steps = Vec::new();
    while let Some(i) = (0..list.len().saturating_sub(1)).find(|&i| list[i].phase <= list[i + 1].phase) {
        let lower = list.remove(i + 1);
        let upper = list.remove(i);
        if upper.phase == lower.phase {
            steps.push(format!(
                "merge positions {} and {} at phase {}",
                i + 1,
                i + 2,
                upper.phase
            ));
            let mut parts = upper.parts;
            parts.extend(lower.parts);
            list.insert(
                i,
                Entry {
                    obj: None,
                    parts,
                    class: upper.class.add(&lower.class),
                    phase: upper.phase,
                },
            );
        } else {
            for a in &lower.parts {
                for b in &upper.parts {
                    if engine.hom_total(a, b) != 0 {
                        return Err(Error::invalid(
                            "misordered factors have nonzero graded Hom; not a tower",
                        ));
                    }
                }
            }
            steps.push(format!(
                "swap positions {} and {} (phases {} < {})",
                i + 1,
                i + 2,
                upper.phase,
                lower.phase
            ));
            list.insert(i, upper);
            list.insert(i, lower);
        }
    }

    let hn = hn_filtration(engine, t, x)?;
    let by_phase: BTreeMap<usize, &DerivedObject> = hn.factors.iter().map(|(o, p)| (*p, o)).collect();
    if by_phase.len() != list.len() || list.iter().any(|e| !by_phase.contains_key(&e.phase)) {
        return Err(Error::invalid("normalized phases differ from the HN phases of X"));
    }
    for e in &list {
        let hn_obj = by_phase[&e.phase];
        if engine.class(hn_obj) != e.class {
            return Err(Error::invalid(format!("phase {} has the wrong class", e.phase)));
        }
        if let Some(obj) = &e.obj {
            if obj != hn_obj {
                return Err(Error::invalid(format!(
                    "factor {} at phase {} is not the HN factor {}",
                    obj.display(n),
                    e.phase,
                    hn_obj.display(n)
                )));
            }
        }
    }
    Ok(NormalizedTower { result: hn, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(a: usize, b: usize, s: i32) -> DerivedObject {
        DerivedObject::single(Interval::new(a, b), s)
    }

    #[test]
    fn a2_projective() {
        let e = TypeAEngine::new(2).unwrap();
        let t = TStability::parse(&e, "(S1|S2)").unwrap();
        let hn = hn_filtration(&e, &t, &obj(1, 2, 0)).unwrap();
        assert_eq!(hn.display(2), "S2@2, S1@1");
        assert_eq!((hn.phi_plus, hn.phi_minus), (2, 1));
    }

    #[test]
    fn a3_examples() {
        let e = TypeAEngine::new(3).unwrap();
        let t = TStability::parse(&e, "(P1|S2|I2)").unwrap();
        assert_eq!(hn_filtration(&e, &t, &obj(3, 3, 0)).unwrap().display(3), "I2[-1]@3, P1@1");
        assert_eq!(
            hn_filtration(&e, &t, &obj(2, 3, 0)).unwrap().display(3),
            "I2[-1]@3, S2@2, P1@1"
        );
        let hn = hn_filtration(&e, &t, &obj(2, 2, 5)).unwrap();
        assert_eq!(hn.display(3), "S2[5]@2");
        assert_eq!((hn.phi_plus, hn.phi_minus), (2, 2));
    }

    #[test]
    fn zero_object_rejected() {
        let e = TypeAEngine::new(2).unwrap();
        let t = TStability::parse(&e, "(S1|S2)").unwrap();
        assert!(hn_filtration(&e, &t, &DerivedObject::zero()).is_err());
    }

    #[test]
    fn normalization() {
        let e = TypeAEngine::new(2).unwrap();
        let t = TStability::parse(&e, "(S1|S2)").unwrap();
        let p1 = obj(1, 2, 0);
        let good = [(obj(2, 2, 0), 2), (obj(1, 1, 0), 1)];
        let out = normalize_tower(&e, &t, &p1, &good).unwrap();
        assert!(out.steps.is_empty());
        assert_eq!(out.result.factors, good.to_vec());

        let swapped = [(obj(1, 1, 0), 1), (obj(2, 2, 0), 2)];
        let out = normalize_tower(&e, &t, &p1, &swapped).unwrap();
        assert_eq!(out.steps.len(), 1);
        assert_eq!(out.result.factors, good.to_vec());

        let two = DerivedObject::from_terms([(Interval::new(1, 1), 0, 2)]);
        let out = normalize_tower(&e, &t, &two, &[(obj(1, 1, 0), 1), (obj(1, 1, 0), 1)]).unwrap();
        assert_eq!(out.result.factors, vec![(two, 1)]);

        assert!(normalize_tower(&e, &t, &p1, &[(obj(1, 1, 0), 1)]).is_err());
        assert!(normalize_tower(&e, &t, &p1, &[(obj(1, 1, 0), 2), (obj(2, 2, 0), 2)]).is_err());
    }
}
