//! The weighted projective line of weight type (2).
//!
//! `L(2)` is identified with `Z` via `m x1`, so `c = 2` and the dualizing
//! element is `w = -3`. Exceptional sheaves are the line bundles `O(m)` and
//! the two simples `S10`, `S11` of the rank-two tube. Line bundle Homs are
//! graded pieces of `k[x1, x2]` with `deg x1 = 1` and `deg x2 = 2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{EulerForm, K0Class, QuiverSpec};
use crate::linalg::det_i64;
use crate::sod::Direction;

/// `c` as a multiple of `x1`.
pub const C: i64 = 2;
/// The dualizing element as a multiple of `x1`.
pub const OMEGA: i64 = -3;
/// Default search window `|m| <= bound` for mutation targets.
pub const DEFAULT_BOUND: i64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Sheaf {
    /// `O(m x1)`.
    #[serde(rename = "line")]
    Line { m: i64 },
    /// `S_{1,j}` for `j in {0, 1}`.
    #[serde(rename = "simple")]
    Simple { j: u8 },
    /// A simple sheaf in a homogeneous tube; not exceptional.
    #[serde(rename = "ordinary")]
    Ordinary,
}

/// A shifted sheaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wpl2Object {
    pub sheaf: Sheaf,
    pub shift: i32,
}

impl Sheaf {
    pub fn line(m: i64) -> Self {
        Sheaf::Line { m }
    }

    pub fn simple(j: i64) -> Self {
        Sheaf::Simple {
            j: j.rem_euclid(2) as u8,
        }
    }

    pub fn is_exceptional(&self) -> bool {
        !matches!(self, Sheaf::Ordinary)
    }

    /// Class in the basis `([O], [S10], [Sx])`.
    pub fn class(&self) -> K0Class {
        match *self {
            Sheaf::Line { m } => {
                let k = m.div_euclid(2);
                if m.rem_euclid(2) == 0 {
                    K0Class(vec![1, 0, k])
                } else {
                    K0Class(vec![1, -1, k + 1])
                }
            }
            Sheaf::Simple { j: 0 } => K0Class(vec![0, 1, 0]),
            Sheaf::Simple { .. } => K0Class(vec![0, -1, 1]),
            Sheaf::Ordinary => K0Class(vec![0, 0, 1]),
        }
    }

    /// `- (x) O(d x1)`.
    pub fn twist(&self, d: i64) -> Self {
        match *self {
            Sheaf::Line { m } => Sheaf::Line { m: m + d },
            Sheaf::Simple { j } => Sheaf::simple(i64::from(j) + d),
            Sheaf::Ordinary => Sheaf::Ordinary,
        }
    }

    /// Auslander-Reiten translate `- (x) O(w)`.
    pub fn tau(&self) -> Self {
        self.twist(OMEGA)
    }
}

impl fmt::Display for Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sheaf::Line { m } => write!(f, "O({m})"),
            Sheaf::Simple { j } => write!(f, "S1{j}"),
            Sheaf::Ordinary => write!(f, "Sx"),
        }
    }
}

impl fmt::Display for Wpl2Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.sheaf)
        } else {
            write!(f, "{}[{}]", self.sheaf, self.shift)
        }
    }
}

impl Wpl2Object {
    pub fn new(sheaf: Sheaf, shift: i32) -> Self {
        Wpl2Object { sheaf, shift }
    }

    pub fn class(&self) -> K0Class {
        let c = self.sheaf.class();
        if self.shift.rem_euclid(2) == 0 {
            c
        } else {
            c.neg()
        }
    }
}

fn hom0_lines(m: i64, m2: i64) -> usize {
    if m2 >= m {
        ((m2 - m).div_euclid(2) + 1) as usize
    } else {
        0
    }
}

/// `dim Hom(A, B)` and `dim Ext^1(A, B)` for sheaves.
pub fn sheaf_hom(a: Sheaf, b: Sheaf) -> [usize; 2] {
    use Sheaf::*;
    let parity = |x: i64| x.rem_euclid(2);
    match (a, b) {
        (Line { m }, Line { m: m2 }) => [hom0_lines(m, m2), hom0_lines(m2, m + OMEGA)],
        (Line { m }, Simple { j }) => [usize::from(parity(m) == i64::from(j)), 0],
        (Simple { j }, Line { m }) => [0, usize::from(parity(m) == parity(i64::from(j) + 1))],
        (Simple { j }, Simple { j: j2 }) => [usize::from(j == j2), usize::from(j != j2)],
        (Line { .. }, Ordinary) => [1, 0],
        (Ordinary, Line { .. }) => [0, 1],
        (Ordinary, Ordinary) => [1, 1],
        (Ordinary, Simple { .. }) | (Simple { .. }, Ordinary) => [0, 0],
    }
}

/// `dim Hom(X, Y[k])` for exceptional `X`, `Y`.
pub fn wpl2_hom_dim(x: &Wpl2Object, y: &Wpl2Object, k: i32) -> Result<usize> {
    for o in [x, y] {
        if !o.sheaf.is_exceptional() {
            return Err(Error::invalid(format!("{o} is not exceptional")));
        }
    }
    let d = k + y.shift - x.shift;
    Ok(match d {
        0 | 1 => sheaf_hom(x.sheaf, y.sheaf)[d as usize],
        _ => 0,
    })
}

/// `sum_k (-1)^k dim Hom(A, B[k])` for sheaves.
pub fn chi_sheaves(a: Sheaf, b: Sheaf) -> i64 {
    let [h0, h1] = sheaf_hom(a, b);
    h0 as i64 - h1 as i64
}

fn graded_vanishes(a: Sheaf, b: Sheaf) -> bool {
    sheaf_hom(a, b) == [0, 0]
}

pub fn is_exceptional_sequence(items: &[Sheaf]) -> bool {
    items.iter().all(|s| s.is_exceptional() && sheaf_hom(*s, *s) == [1, 0])
        && items
            .iter()
            .enumerate()
            .all(|(i, &a)| items[i + 1..].iter().all(|&b| graded_vanishes(b, a)))
}

/// Exceptional, semiorthogonal, and a basis of `K_0`.
pub fn is_full_exceptional(items: &[Sheaf]) -> bool {
    items.len() == 3 && is_exceptional_sequence(items) && {
        let rows: Vec<Vec<i64>> = items.iter().map(|s| s.class().0).collect();
        det_i64(&rows).abs() == 1
    }
}

/// The exceptional sheaf whose class is `+-target`, searching line bundles
/// with `|m| <= bound` and the two simples, subject to `accept`.
fn find_by_class(target: &K0Class, bound: i64, accept: impl Fn(Sheaf) -> bool) -> Result<Sheaf> {
    let neg = target.neg();
    let mut found = Vec::new();
    let candidates = (-bound..=bound)
        .map(Sheaf::line)
        .chain([Sheaf::simple(0), Sheaf::simple(1)]);
    for s in candidates {
        let c = s.class();
        if (c == *target || c == neg) && accept(s) {
            found.push(s);
        }
    }
    match found.len() {
        0 => Err(Error::WindowTooSmall { bound }),
        1 => Ok(found[0]),
        _ => Err(Error::internal(format!("several exceptional sheaves with class {:?}", target.0))),
    }
}

/// `L_E F` via its class `chi(E, F)[E] - [F]`.
pub fn left_mutation(e: Sheaf, f: Sheaf, bound: i64) -> Result<Sheaf> {
    if graded_vanishes(e, f) {
        return Ok(f);
    }
    let target = e.class().scale(chi_sheaves(e, f)).sub(&f.class());
    find_by_class(&target, bound, |l| graded_vanishes(e, l))
}

/// `R_F E` via its class `chi(E, F)[F] - [E]`.
pub fn right_mutation(e: Sheaf, f: Sheaf, bound: i64) -> Result<Sheaf> {
    if graded_vanishes(e, f) {
        return Ok(e);
    }
    let target = f.class().scale(chi_sheaves(e, f)).sub(&e.class());
    find_by_class(&target, bound, |r| graded_vanishes(r, f))
}

fn check_index(len: usize, i: usize) -> Result<()> {
    if i == 0 || i >= len {
        return Err(Error::invalid(format!(
            "mutation index {i} out of range 1..={}",
            len.saturating_sub(1)
        )));
    }
    Ok(())
}

/// `L_i` on a sequence, `i` 1-based.
pub fn left_mutate(seq: &[Sheaf], i: usize, bound: i64) -> Result<Vec<Sheaf>> {
    check_index(seq.len(), i)?;
    let (e, f) = (seq[i - 1], seq[i]);
    let mut out = seq.to_vec();
    out[i - 1] = left_mutation(e, f, bound)?;
    out[i] = e;
    if !is_exceptional_sequence(&out) {
        return Err(Error::internal("left mutation broke exceptionality"));
    }
    Ok(out)
}

/// `R_i` on a sequence, `i` 1-based.
pub fn right_mutate(seq: &[Sheaf], i: usize, bound: i64) -> Result<Vec<Sheaf>> {
    check_index(seq.len(), i)?;
    let (e, f) = (seq[i - 1], seq[i]);
    let mut out = seq.to_vec();
    out[i - 1] = f;
    out[i] = right_mutation(e, f, bound)?;
    if !is_exceptional_sequence(&out) {
        return Err(Error::internal("right mutation broke exceptionality"));
    }
    Ok(out)
}

pub fn mutate(seq: &[Sheaf], i: usize, dir: Direction, bound: i64) -> Result<Vec<Sheaf>> {
    match dir {
        Direction::Left => left_mutate(seq, i, bound),
        Direction::Right => right_mutate(seq, i, bound),
    }
}

pub fn twist_sequence(seq: &[Sheaf], d: i64) -> Vec<Sheaf> {
    seq.iter().map(|s| s.twist(d)).collect()
}

pub fn display_sequence(seq: &[Sheaf]) -> String {
    let parts: Vec<String> = seq.iter().map(Sheaf::to_string).collect();
    format!("({})", parts.join(","))
}

/// All full exceptional sequences reachable from `seed` by at most `radius`
/// left or right mutations. Edges are the left mutations `(X, L_i X, i)`
/// with both ends inside the ball.
pub fn windowed_graph(seed: &[Sheaf], radius: usize, bound: i64) -> Result<Graph<Vec<Sheaf>>> {
    if !is_full_exceptional(seed) {
        return Err(Error::invalid(format!(
            "{} is not a full exceptional sequence",
            display_sequence(seed)
        )));
    }
    let mut seen: BTreeSet<Vec<Sheaf>> = BTreeSet::from([seed.to_vec()]);
    let mut order = vec![seed.to_vec()];
    let mut frontier = vec![seed.to_vec()];
    for _ in 0..radius {
        let found: Vec<Vec<Vec<Sheaf>>> = frontier
            .par_iter()
            .map(|v| {
                (1..v.len())
                    .flat_map(|i| [left_mutate(v, i, bound), right_mutate(v, i, bound)])
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        frontier = found
            .into_iter()
            .flatten()
            .filter(|w| seen.insert(w.clone()))
            .collect();
        order.extend(frontier.iter().cloned());
    }
    let index: BTreeMap<&Vec<Sheaf>, usize> = order.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let lefts: Vec<Vec<Vec<Sheaf>>> = order
        .par_iter()
        .map(|v| (1..v.len()).map(|i| left_mutate(v, i, bound)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut edges = BTreeSet::new();
    for (u, ws) in lefts.iter().enumerate() {
        for (i, w) in ws.iter().enumerate() {
            if let Some(&t) = index.get(w) {
                edges.insert((u, t, i + 1));
            }
        }
    }
    Ok(Graph {
        vertices: order,
        edges: edges.into_iter().collect(),
    })
}

/// Euler form in the basis `([O], [S10], [Sx])`.
pub fn euler_form() -> EulerForm {
    EulerForm::of(&QuiverSpec::Wpl2)
}

/// Parses `O(m)`, `O`, `S10`, `S11`, `Sx`, with an optional shift suffix.
/// Twists may be written with `x1`, `c` and `w`, e.g. `O(x1-c)`.
pub fn parse_object(tok: &str) -> Result<Wpl2Object> {
    let t = tok.trim();
    let (body, shift) = match t.rfind('[') {
        Some(p) if t.ends_with(']') => {
            let s: i32 = t[p + 1..t.len() - 1]
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad shift in {t:?}")))?;
            (&t[..p], s)
        }
        _ => (t, 0),
    };
    let sheaf = match body {
        "O" => Sheaf::line(0),
        "S10" => Sheaf::simple(0),
        "S11" => Sheaf::simple(1),
        "Sx" => Sheaf::Ordinary,
        _ => {
            let inner = body
                .strip_prefix("O(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::invalid(format!("unknown X(2) object {t:?}")))?;
            Sheaf::line(parse_degree(inner)?)
        }
    };
    Ok(Wpl2Object::new(sheaf, shift))
}

pub fn parse_sheaf(tok: &str) -> Result<Sheaf> {
    let o = parse_object(tok)?;
    if o.shift != 0 {
        return Err(Error::invalid(format!("{tok:?}: a shift is not allowed here")));
    }
    Ok(o.sheaf)
}

/// Parses `(O(-2),O,S10)`.
pub fn parse_sequence(s: &str) -> Result<Vec<Sheaf>> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::invalid(format!("expected parenthesized list, got {s:?}")))?;
    crate::notation::split_top(inner, ',')
        .into_iter()
        .map(parse_sheaf)
        .collect()
}

/// Evaluates sums like `x1-2c+3` with `x1 = 1`, `c = 2`, `w = -3`.
fn parse_degree(expr: &str) -> Result<i64> {
    let e: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if e.is_empty() {
        return Err(Error::invalid("empty twist"));
    }
    let mut total = 0i64;
    let mut rest = e.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let coef: i64 = if digits == 0 {
            1
        } else {
            term[..digits]
                .parse()
                .map_err(|_| Error::invalid(format!("bad twist {expr:?}")))?
        };
        let unit = match &term[digits..] {
            "" if digits > 0 => 1,
            "x1" => 1,
            "c" => C,
            "w" => OMEGA,
            _ => return Err(Error::invalid(format!("bad twist {expr:?}"))),
        };
        total += sign * coef * unit;
    }
    Ok(total)
}
