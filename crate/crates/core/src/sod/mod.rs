//! Semiorthogonal decompositions, finite t-stabilities and admissible
//! filtrations of `D^b(mod A_n)`, the bijections between them, refinement,
//! and the mutations `rho` and `sigma`.

mod hn;

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use hn::{hn_filtration, hn_filtration_with_witness, normalize_tower, HnResult, NormalizedTower};

use crate::error::{Error, Result};
use crate::exceptional::{enumerate_full_exceptional_sequences, ExceptionalSequence};
use crate::notation;
use crate::typea::{Interval, Side, ThickSubcat, TypeAEngine};

/// `is_finer` searches monotone surjections only up to this many blocks.
pub const MAX_FINER_BLOCKS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

/// `(Pi_1, ..., Pi_m)` with `Hom(Pi_j, Pi_i) = 0` for `j > i`, generating the
/// whole category.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sod {
    blocks: Vec<ThickSubcat>,
}

/// A finite t-stability `(Phi_m, {Pi_phi})`. The shift acts trivially on a
/// finite index set, so no automorphism is stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TStability {
    pieces: Vec<ThickSubcat>,
}

/// `0 = T_0 < T_1 < ... < T_m = D`, stored as `T_1..=T_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filtration {
    chain: Vec<ThickSubcat>,
}

/// Checks that `pieces` form a semiorthogonal decomposition of `ambient`.
fn check_decomposition(
    engine: &TypeAEngine,
    pieces: &[ThickSubcat],
    ambient: &ThickSubcat,
    vanishing: &'static str,
    generation: &'static str,
    thick: &'static str,
) -> Result<()> {
    if pieces.is_empty() {
        return Err(Error::Axiom {
            axiom: generation,
            detail: "no blocks given".into(),
        });
    }
    for (i, p) in pieces.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::Axiom {
                axiom: thick,
                detail: format!("block {} is zero", i + 1),
            });
        }
        if engine.thick_closure_of(p.members().iter().copied()) != *p {
            return Err(Error::Axiom {
                axiom: thick,
                detail: format!("block {} is not thick", i + 1),
            });
        }
        if !p.is_subset(ambient) {
            return Err(Error::Axiom {
                axiom: thick,
                detail: format!("block {} leaves the ambient subcategory", i + 1),
            });
        }
    }
    for (i, lower) in pieces.iter().enumerate() {
        for (j, upper) in pieces.iter().enumerate().skip(i + 1) {
            for &y in upper.members() {
                for &x in lower.members() {
                    if !engine.graded_hom_vanishes(y, x) {
                        return Err(Error::Axiom {
                            axiom: vanishing,
                            detail: format!(
                                "Hom({}, {}[k]) != 0 with {} in block {} and {} in block {}",
                                y.name(engine.n()),
                                x.name(engine.n()),
                                y.name(engine.n()),
                                j + 1,
                                x.name(engine.n()),
                                i + 1
                            ),
                        });
                    }
                }
            }
        }
    }
    let all: BTreeSet<Interval> = pieces.iter().flat_map(|p| p.members().iter().copied()).collect();
    if engine.thick_closure_of(all) != *ambient {
        return Err(Error::Axiom {
            axiom: generation,
            detail: "the blocks do not generate".into(),
        });
    }
    Ok(())
}

const SOD_VANISHING: &str = "semiorthogonality";
const SOD_GENERATION: &str = "generation";
const SOD_THICK: &str = "thick nonzero blocks";
const T_VANISHING: &str = "(2') Hom(Pi_a, Pi_b) = 0 for a > b";
const T_GENERATION: &str = "(3') D = <Pi_phi>";
const T_THICK: &str = "(1) shift-closed nonzero pieces";

impl Sod {
    pub fn new(engine: &TypeAEngine, blocks: Vec<ThickSubcat>) -> Result<Self> {
        check_decomposition(engine, &blocks, &engine.whole(), SOD_VANISHING, SOD_GENERATION, SOD_THICK)?;
        Ok(Sod { blocks })
    }

    /// Builds the SOD whose blocks are the thick closures of the generators.
    pub fn from_generators(engine: &TypeAEngine, gens: &[Vec<Interval>]) -> Result<Self> {
        let blocks = gens
            .iter()
            .map(|g| engine.thick_closure_of(g.iter().copied()))
            .collect();
        Sod::new(engine, blocks)
    }

    /// Wraps blocks without validation, for decompositions of a proper
    /// subcategory such as a quotient model `U^perp`.
    pub fn from_parts(blocks: Vec<ThickSubcat>) -> Self {
        Sod { blocks }
    }

    pub fn parse(engine: &TypeAEngine, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            return Sod::from_json(engine, t);
        }
        Sod::from_generators(engine, &notation::parse_blocks(engine.n(), t)?)
    }

    pub fn blocks(&self) -> &[ThickSubcat] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// A one-block decomposition, excluded from all enumerations.
    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    /// `(<P1>,<S2>,<I2>)`-style rendering.
    pub fn display(&self, n: usize) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.display(n)).collect();
        format!("({})", parts.join(","))
    }

    /// `{"blocks":[["[1,3]","[2,2]"],...]}` listing every member.
    pub fn to_json(&self) -> Value {
        json!({ "blocks": blocks_json(&self.blocks) })
    }

    pub fn from_json(engine: &TypeAEngine, s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::invalid(format!("SOD JSON: {e}")))?;
        let gens = blocks_from_json(engine.n(), &v, "blocks")?;
        Sod::from_generators(engine, &gens)
    }

    /// A full exceptional sequence refining the blocks, with the block index
    /// (0-based) of each item.
    pub fn witness(&self, engine: &TypeAEngine) -> Result<(Vec<Interval>, Vec<usize>)> {
        let mut items = Vec::new();
        let mut owner = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            for e in engine.generating_sequence(b)? {
                items.push(e);
                owner.push(i);
            }
        }
        Ok((items, owner))
    }
}

fn blocks_json(blocks: &[ThickSubcat]) -> Value {
    Value::Array(
        blocks
            .iter()
            .map(|b| Value::Array(b.members().iter().map(|iv| Value::String(iv.to_string())).collect()))
            .collect(),
    )
}

fn blocks_from_json(n: usize, v: &Value, key: &str) -> Result<Vec<Vec<Interval>>> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::invalid(format!("missing {key:?} array")))?;
    arr.iter()
        .map(|block| {
            let items = block
                .as_array()
                .ok_or_else(|| Error::invalid("each block must be an array"))?;
            items
                .iter()
                .map(|t| match t {
                    Value::String(s) => notation::parse_interval(n, s),
                    Value::Array(_) => {
                        let iv: Interval = serde_json::from_value(t.clone())
                            .map_err(|e| Error::invalid(format!("interval: {e}")))?;
                        iv.validate(n)?;
                        Ok(iv)
                    }
                    _ => Err(Error::invalid("block members must be strings or [a,b] pairs")),
                })
                .collect()
        })
        .collect()
}

impl TStability {
    pub fn new(engine: &TypeAEngine, pieces: Vec<ThickSubcat>) -> Result<Self> {
        check_decomposition(engine, &pieces, &engine.whole(), T_VANISHING, T_GENERATION, T_THICK)?;
        Ok(TStability { pieces })
    }

    pub fn parse(engine: &TypeAEngine, s: &str) -> Result<Self> {
        let t = s.trim();
        let gens = if t.starts_with('{') {
            let v: Value =
                serde_json::from_str(t).map_err(|e| Error::invalid(format!("t-stability JSON: {e}")))?;
            let key = if v.get("pieces").is_some() { "pieces" } else { "blocks" };
            blocks_from_json(engine.n(), &v, key)?
        } else {
            notation::parse_blocks(engine.n(), t)?
        };
        let pieces = gens
            .iter()
            .map(|g| engine.thick_closure_of(g.iter().copied()))
            .collect();
        TStability::new(engine, pieces)
    }

    /// Pieces in increasing phase; phase `i` is `pieces()[i - 1]`.
    pub fn pieces(&self) -> &[ThickSubcat] {
        &self.pieces
    }

    pub fn piece(&self, phase: usize) -> Option<&ThickSubcat> {
        phase.checked_sub(1).and_then(|i| self.pieces.get(i))
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn display(&self, n: usize) -> String {
        let parts: Vec<String> = self.pieces.iter().map(|b| b.display(n)).collect();
        format!("({})", parts.join(" < "))
    }

    pub fn to_json(&self) -> Value {
        json!({ "pieces": blocks_json(&self.pieces) })
    }
}

pub fn eta(engine: &TypeAEngine, t: &TStability) -> Result<Sod> {
    Sod::new(engine, t.pieces.clone())
}

pub fn eta_inv(engine: &TypeAEngine, s: &Sod) -> Result<TStability> {
    TStability::new(engine, s.blocks.clone())
}

impl Filtration {
    pub fn new(engine: &TypeAEngine, chain: Vec<ThickSubcat>) -> Result<Self> {
        let whole = engine.whole();
        if chain.last() != Some(&whole) {
            return Err(Error::invalid("a filtration must end with the whole category"));
        }
        let mut prev = ThickSubcat::empty();
        for (i, t) in chain.iter().enumerate() {
            if engine.thick_closure_of(t.members().iter().copied()) != *t {
                return Err(Error::invalid(format!("T_{} is not thick", i + 1)));
            }
            if !prev.is_subset(t) || prev == *t {
                return Err(Error::invalid(format!("T_{} does not strictly contain T_{}", i + 1, i)));
            }
            let complement = engine.perp(&prev, Side::Right).intersect(t);
            if engine.join(&prev, &complement) != *t {
                return Err(Error::invalid(format!("T_{i} is not right admissible in T_{}", i + 1)));
            }
            prev = t.clone();
        }
        Ok(Filtration { chain })
    }

    pub fn parse(engine: &TypeAEngine, s: &str) -> Result<Self> {
        let t = s.trim();
        let gens = if t.starts_with('{') {
            let v: Value =
                serde_json::from_str(t).map_err(|e| Error::invalid(format!("filtration JSON: {e}")))?;
            blocks_from_json(engine.n(), &v, "chain")?
        } else {
            notation::parse_blocks(engine.n(), t)?
        };
        let chain = gens
            .iter()
            .map(|g| engine.thick_closure_of(g.iter().copied()))
            .collect();
        Filtration::new(engine, chain)
    }

    /// `T_1..=T_m`.
    pub fn chain(&self) -> &[ThickSubcat] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// `T_i` with `T_0 = 0`.
    pub fn term(&self, i: usize) -> ThickSubcat {
        if i == 0 {
            ThickSubcat::empty()
        } else {
            self.chain[i - 1].clone()
        }
    }

    /// The dual left admissible chain `L_j = perp T_{m-j}`, `j = 1..=m`.
    pub fn left_chain(&self, engine: &TypeAEngine) -> Vec<ThickSubcat> {
        let m = self.len();
        (1..=m).map(|j| engine.perp(&self.term(m - j), Side::Left)).collect()
    }

    pub fn display(&self, n: usize) -> String {
        let mut parts = vec!["0".to_string()];
        parts.extend(self.chain.iter().map(|t| t.display(n)));
        parts.join(" < ")
    }

    pub fn to_json(&self) -> Value {
        json!({ "chain": blocks_json(&self.chain), "side": "right" })
    }
}

/// `T_i = <Pi_j | j >= m - i + 1>`.
pub fn xi(engine: &TypeAEngine, s: &Sod) -> Result<Filtration> {
    let m = s.len();
    let chain = (1..=m)
        .map(|i| {
            let gens = s.blocks[m - i..].iter().flat_map(|b| b.members().iter().copied());
            engine.thick_closure_of(gens)
        })
        .collect();
    Filtration::new(engine, chain)
}

/// `Pi_m = T_1`, `Pi_i = T_{m-i}^perp n T_{m-i+1}`.
pub fn xi_inv(engine: &TypeAEngine, f: &Filtration) -> Result<Sod> {
    let m = f.len();
    let blocks = (1..=m)
        .map(|i| engine.perp(&f.term(m - i), Side::Right).intersect(&f.term(m - i + 1)))
        .collect();
    Sod::new(engine, blocks)
}

pub fn chi(engine: &TypeAEngine, seq: &ExceptionalSequence) -> Result<Sod> {
    if !seq.full {
        return Err(Error::invalid("chi needs a full exceptional sequence"));
    }
    let blocks = seq
        .items
        .iter()
        .map(|&e| ThickSubcat::from_members([e]))
        .collect();
    Sod::new(engine, blocks)
}

/// The exceptional sequence of a finest SOD, or the 1-based index of the
/// first block not generated by a single exceptional object.
pub fn chi_inv(engine: &TypeAEngine, s: &Sod) -> std::result::Result<ExceptionalSequence, usize> {
    let mut items = Vec::new();
    for (i, b) in s.blocks.iter().enumerate() {
        if b.len() != 1 {
            return Err(i + 1);
        }
        items.push(*b.members().iter().next().expect("one member"));
    }
    ExceptionalSequence::new(engine, items).map_err(|_| 1)
}

/// All non-decreasing surjections `{1..a} -> {1..b}`, as 0-based images.
fn monotone_surjections(a: usize, b: usize) -> Vec<Vec<usize>> {
    if b == 0 || b > a {
        return Vec::new();
    }
    (1..a)
        .combinations(b - 1)
        .map(|cuts| {
            let mut r = Vec::with_capacity(a);
            let mut block = 0;
            for i in 0..a {
                if block < cuts.len() && i == cuts[block] {
                    block += 1;
                }
                r.push(block);
            }
            r
        })
        .collect()
}

fn finer_pieces(engine: &TypeAEngine, a: &[ThickSubcat], b: &[ThickSubcat]) -> Result<bool> {
    if a.len() > MAX_FINER_BLOCKS {
        return Err(Error::Capacity(format!(
            "finer-than search supports at most {MAX_FINER_BLOCKS} blocks, got {}",
            a.len()
        )));
    }
    for r in monotone_surjections(a.len(), b.len()) {
        let ok = (0..b.len()).all(|psi| {
            let gens = a
                .iter()
                .zip(&r)
                .filter(|(_, &t)| t == psi)
                .flat_map(|(p, _)| p.members().iter().copied());
            engine.thick_closure_of(gens) == b[psi]
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `a` refines `b`.
pub fn is_finer(engine: &TypeAEngine, a: &Sod, b: &Sod) -> Result<bool> {
    finer_pieces(engine, &a.blocks, &b.blocks)
}

pub fn is_finer_t(engine: &TypeAEngine, a: &TStability, b: &TStability) -> Result<bool> {
    finer_pieces(engine, &a.pieces, &b.pieces)
}

/// Outcome of the sufficient finestness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinestCertificate {
    pub finest: bool,
    /// `(block, X, Y)` with `Hom^*(X, Y) = 0` or `Hom^*(Y, X) = 0`.
    pub witness: Option<(usize, Interval, Interval)>,
}

/// Every pair of members of a block has nonzero graded Hom both ways.
pub fn is_finest_sufficient(engine: &TypeAEngine, s: &Sod) -> FinestCertificate {
    for (i, b) in s.blocks.iter().enumerate() {
        for &x in b.members() {
            for &y in b.members() {
                if engine.graded_hom_vanishes(x, y) || engine.graded_hom_vanishes(y, x) {
                    return FinestCertificate {
                        finest: false,
                        witness: Some((i + 1, x, y)),
                    };
                }
            }
        }
    }
    FinestCertificate {
        finest: true,
        witness: None,
    }
}

/// No strictly finer SOD exists, decided against the full enumeration.
pub fn is_finest_exhaustive(engine: &TypeAEngine, s: &Sod, all: &[Sod]) -> Result<bool> {
    for c in all {
        if c.len() > s.len() && is_finer(engine, c, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Replaces piece `i` (1-based) by the pieces of a local t-stability on it.
pub fn refine_locally(
    engine: &TypeAEngine,
    t: &TStability,
    i: usize,
    local: &[ThickSubcat],
) -> Result<TStability> {
    let target = t
        .piece(i)
        .ok_or_else(|| Error::invalid(format!("piece index {i} out of range 1..={}", t.len())))?
        .clone();
    check_decomposition(engine, local, &target, T_VANISHING, T_GENERATION, T_THICK)?;
    let mut pieces = t.pieces[..i - 1].to_vec();
    pieces.extend(local.iter().cloned());
    pieces.extend(t.pieces[i..].iter().cloned());
    let out = TStability::new(engine, pieces)?;
    if !is_finer_t(engine, &out, t)? {
        return Err(Error::internal("local refinement is not finer"));
    }
    Ok(out)
}

pub fn refine_to_finest(engine: &TypeAEngine, s: &Sod) -> Result<Sod> {
    let (items, _) = s.witness(engine)?;
    let out = Sod::new(engine, items.into_iter().map(|e| ThickSubcat::from_members([e])).collect())?;
    if !is_finer(engine, &out, s)? {
        return Err(Error::internal("finest refinement is not finer"));
    }
    Ok(out)
}

/// Every non-trivial SOD, from the consecutive partitions of all full
/// exceptional sequences, deduplicated and sorted.
pub fn enumerate_all_sods(engine: &TypeAEngine) -> Result<Vec<Sod>> {
    let seqs = enumerate_full_exceptional_sequences(engine)?;
    let n = engine.n();
    let mut out = BTreeSet::new();
    for seq in &seqs {
        for parts in 2..=n {
            for r in monotone_surjections(n, parts) {
                let blocks: Vec<ThickSubcat> = (0..parts)
                    .map(|p| {
                        engine.thick_closure_of(
                            seq.items.iter().zip(&r).filter(|(_, &b)| b == p).map(|(e, _)| *e),
                        )
                    })
                    .collect();
                out.insert(Sod { blocks });
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All finest SODs, in the order of the exceptional sequences they come from.
pub fn enumerate_finest_sods(engine: &TypeAEngine) -> Result<Vec<Sod>> {
    enumerate_full_exceptional_sequences(engine)?
        .iter()
        .map(|s| chi(engine, s))
        .collect()
}

fn check_mutation_index(len: usize, i: usize) -> Result<()> {
    if i == 0 || i >= len {
        return Err(Error::invalid(format!(
            "mutation index {i} out of range 1..={}",
            len.saturating_sub(1)
        )));
    }
    Ok(())
}

/// `rho_i` (right) or its inverse (left), `i` 1-based.
pub fn rho(engine: &TypeAEngine, s: &Sod, i: usize, dir: Direction) -> Result<Sod> {
    check_mutation_index(s.len(), i)?;
    let (a, b) = (&s.blocks[i - 1], &s.blocks[i]);
    let both = engine.join(a, b);
    let mut blocks = s.blocks.clone();
    match dir {
        Direction::Right => {
            blocks[i - 1] = engine.perp(a, Side::Right).intersect(&both);
            blocks[i] = a.clone();
        }
        Direction::Left => {
            blocks[i - 1] = b.clone();
            blocks[i] = engine.perp(b, Side::Left).intersect(&both);
        }
    }
    Sod::new(engine, blocks)
}

/// `sigma_i` (right) or its inverse (left), `i` 1-based.
pub fn sigma(engine: &TypeAEngine, f: &Filtration, i: usize, dir: Direction) -> Result<Filtration> {
    check_mutation_index(f.len(), i)?;
    let prev = f.term(i - 1);
    let next = f.term(i + 1);
    let block = match dir {
        Direction::Right => engine.perp(&f.term(i), Side::Right).intersect(&next),
        Direction::Left => {
            let below = engine.perp(&prev, Side::Right);
            let a = below.intersect(&f.term(i));
            let c = below.intersect(&next);
            engine.perp(&a, Side::Left).intersect(&c)
        }
    };
    let mut chain = f.chain.clone();
    chain[i - 1] = engine.join(&block, &prev);
    Filtration::new(engine, chain)
}

/// Outcome of checking the braid and inverse laws for `rho` on every
/// finest SOD.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidReport {
    pub sods: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl BraidReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `rho_i rho_{i+1} rho_i = rho_{i+1} rho_i rho_{i+1}`, `rho_i rho_j =
/// rho_j rho_i` for `|i - j| >= 2`, and left undoing right at every index.
pub fn check_braid(engine: &TypeAEngine) -> Result<BraidReport> {
    let n = engine.n();
    let all = enumerate_finest_sods(engine)?;
    let r = |s: &Sod, i: usize| rho(engine, s, i, Direction::Right);
    let per: Vec<Result<(usize, Vec<String>)>> = all
        .par_iter()
        .map(|s| {
            let mut checks = 0;
            let mut bad = Vec::new();
            let m = s.len();
            for i in 1..m {
                checks += 1;
                if rho(engine, &r(s, i)?, i, Direction::Left)? != *s {
                    bad.push(format!("inverse law fails at rho_{i} on {}", s.display(n)));
                }
                for j in i + 1..m {
                    checks += 1;
                    let (lhs, rhs) = if j == i + 1 {
                        (r(&r(&r(s, i)?, j)?, i)?, r(&r(&r(s, j)?, i)?, j)?)
                    } else {
                        (r(&r(s, i)?, j)?, r(&r(s, j)?, i)?)
                    };
                    if lhs != rhs {
                        bad.push(format!("relation for rho_{i}, rho_{j} fails on {}", s.display(n)));
                    }
                }
            }
            Ok((checks, bad))
        })
        .collect();
    let mut report = BraidReport {
        sods: all.len(),
        checks: 0,
        violations: Vec::new(),
    };
    for p in per {
        let (c, v) = p?;
        report.checks += c;
        report.violations.extend(v);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::left_mutate;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    fn sub(ivs: &[Interval]) -> ThickSubcat {
        ThickSubcat::from_members(ivs.iter().copied())
    }

    #[test]
    fn a2_sods_and_filtrations() {
        let e = TypeAEngine::new(2).unwrap();
        let s = Sod::parse(&e, "(S1|S2)").unwrap();
        let f = xi(&e, &s).unwrap();
        assert_eq!(f.display(2), "0 < <S2> < <S1,P1,S2>");
        assert_eq!(xi_inv(&e, &f).unwrap(), s);
        let r = rho(&e, &s, 1, Direction::Right).unwrap();
        assert_eq!(r.display(2), "(<P1>,<S1>)");
        assert_eq!(rho(&e, &r, 1, Direction::Left).unwrap(), s);
        let g = sigma(&e, &f, 1, Direction::Right).unwrap();
        assert_eq!(g.term(1), sub(&[iv(1, 1)]));
        assert_eq!(sigma(&e, &g, 1, Direction::Left).unwrap(), f);
        assert_eq!(xi(&e, &r).unwrap(), g);
    }

    #[test]
    fn all_a2_sods() {
        let e = TypeAEngine::new(2).unwrap();
        let all = enumerate_all_sods(&e).unwrap();
        assert_eq!(all.len(), 3);
        assert!(enumerate_all_sods(&TypeAEngine::new(1).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn axiom_failures_are_named() {
        let e = TypeAEngine::new(2).unwrap();
        let err = Sod::parse(&e, "(S2|S1)").unwrap_err();
        assert!(matches!(err, Error::Axiom { axiom: SOD_VANISHING, .. }), "{err}");
        let err = TStability::parse(&e, "(S1|S1)").unwrap_err();
        assert!(matches!(err, Error::Axiom { .. }), "{err}");
        let err = Sod::parse(&e, "(S1)").unwrap_err();
        assert!(matches!(err, Error::Axiom { axiom: SOD_GENERATION, .. }), "{err}");
    }

    #[test]
    fn coarse_a3_decomposition() {
        let e = TypeAEngine::new(3).unwrap();
        let t = TStability::parse(&e, "(P1,S2|I2)").unwrap();
        assert_eq!(t.len(), 2);
        let fine = Sod::parse(&e, "(P1|S2|I2)").unwrap();
        let coarse = eta(&e, &t).unwrap();
        assert!(is_finer(&e, &fine, &coarse).unwrap());
        assert!(!is_finer(&e, &coarse, &fine).unwrap());
        assert_eq!(chi_inv(&e, &coarse), Err(1));
        let cert = is_finest_sufficient(&e, &coarse);
        assert!(!cert.finest);
        assert_eq!(cert.witness.map(|w| w.0), Some(1));

        let local = [sub(&[iv(1, 3)]), sub(&[iv(2, 2)])];
        assert_eq!(
            eta(&e, &refine_locally(&e, &t, 1, &local).unwrap()).unwrap(),
            fine
        );
        let r = refine_to_finest(&e, &coarse).unwrap();
        assert_eq!(r.blocks().last(), Some(&sub(&[iv(1, 2)])));
        let all = enumerate_all_sods(&e).unwrap();
        assert!(!is_finest_exhaustive(&e, &coarse, &all).unwrap());
        assert!(is_finest_exhaustive(&e, &fine, &all).unwrap());
    }

    #[test]
    fn rho_matches_left_mutation() {
        let e = TypeAEngine::new(3).unwrap();
        let seq = ExceptionalSequence::new(&e, vec![iv(1, 3), iv(2, 2), iv(1, 2)]).unwrap();
        let lhs = rho(&e, &chi(&e, &seq).unwrap(), 2, Direction::Right).unwrap();
        let rhs = chi(&e, &left_mutate(&e, &seq, 2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn surjections() {
        assert_eq!(monotone_surjections(3, 2), vec![vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(monotone_surjections(2, 3).len(), 0);
        assert_eq!(monotone_surjections(4, 4), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn finer_capacity() {
        let e = TypeAEngine::new(2).unwrap();
        let big = vec![ThickSubcat::empty(); MAX_FINER_BLOCKS + 1];
        assert!(matches!(
            finer_pieces(&e, &big, &[ThickSubcat::empty()]),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn json_forms() {
        let e = TypeAEngine::new(3).unwrap();
        let s = Sod::parse(&e, r#"{"blocks":[["[1,3]","[2,2]"],["[1,2]"]]}"#).unwrap();
        assert_eq!(s.to_json().to_string(), r#"{"blocks":[["[1,3]","[2,2]"],["[1,2]"]]}"#);
        assert_eq!(Sod::from_json(&e, &s.to_json().to_string()).unwrap(), s);
    }
}
