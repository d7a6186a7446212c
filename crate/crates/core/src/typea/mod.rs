//! Exact model of the bounded derived category of the equioriented `A_n`
//! quiver `1 -> 2 -> ... -> n`.
//!
//! Indecomposables are shifted interval modules `[a, b]`. Objects are formal
//! sums of those, and every computation that needs morphisms goes through
//! projective resolutions in [`complex`].

pub mod complex;
mod engine;
mod subcat;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use engine::TypeAEngine;
pub use subcat::{Side, ThickSubcat};

use crate::error::{Error, Result};
use crate::lattice::K0Class;

/// The interval module supported on vertices `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl From<Interval> for [usize; 2] {
    fn from(iv: Interval) -> Self {
        [iv.a, iv.b]
    }
}

impl From<[usize; 2]> for Interval {
    fn from(v: [usize; 2]) -> Self {
        Interval { a: v[0], b: v[1] }
    }
}

impl Interval {
    pub const fn new(a: usize, b: usize) -> Self {
        Interval { a, b }
    }

    pub fn checked(n: usize, a: usize, b: usize) -> Result<Self> {
        if 1 <= a && a <= b && b <= n {
            Ok(Interval { a, b })
        } else {
            Err(Error::invalid(format!("[{a},{b}] is not an interval of A{n}")))
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        Interval::checked(n, self.a, self.b).map(|_| ())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a <= v && v <= self.b
    }

    pub fn dim_vector(&self, n: usize) -> Vec<i64> {
        (1..=n).map(|v| i64::from(self.contains(v))).collect()
    }

    /// All `n(n+1)/2` intervals in `(a, b)` order.
    pub fn all(n: usize) -> Vec<Interval> {
        (1..=n)
            .flat_map(|a| (a..=n).map(move |b| Interval { a, b }))
            .collect()
    }

    /// `S_i`, `P_i = [i, n]` or `I_i = [1, i]` when applicable, preferring
    /// them in that order; otherwise `[a,b]`.
    pub fn name(&self, n: usize) -> String {
        if self.a == self.b {
            format!("S{}", self.a)
        } else if self.b == n {
            format!("P{}", self.a)
        } else if self.a == 1 {
            format!("I{}", self.b)
        } else {
            format!("[{},{}]", self.a, self.b)
        }
    }

    pub fn projective(n: usize, i: usize) -> Self {
        Interval { a: i, b: n }
    }

    pub fn injective(i: usize) -> Self {
        Interval { a: 1, b: i }
    }

    pub fn simple(i: usize) -> Self {
        Interval { a: i, b: i }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// A finite direct sum of shifted interval modules, kept in canonical order
/// `(shift, a, b)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivedObject {
    terms: BTreeMap<(i32, Interval), u32>,
}

impl DerivedObject {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(iv: Interval, shift: i32) -> Self {
        let mut o = Self::zero();
        o.add_term(iv, shift, 1);
        o
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Interval, i32, u32)>) -> Self {
        let mut o = Self::zero();
        for (iv, s, m) in terms {
            o.add_term(iv, s, m);
        }
        o
    }

    pub fn add_term(&mut self, iv: Interval, shift: i32, mult: u32) {
        if mult > 0 {
            *self.terms.entry((shift, iv)).or_insert(0) += mult;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(interval, shift, multiplicity)` in canonical order.
    pub fn summands(&self) -> impl Iterator<Item = (Interval, i32, u32)> + '_ {
        self.terms.iter().map(|(&(s, iv), &m)| (iv, s, m))
    }

    /// Total number of indecomposable summands, with multiplicity.
    pub fn num_summands(&self) -> u32 {
        self.terms.values().sum()
    }

    /// The single indecomposable summand, if the object is indecomposable.
    pub fn as_indecomposable(&self) -> Option<(Interval, i32)> {
        match self.terms.iter().next() {
            Some((&(s, iv), &1)) if self.terms.len() == 1 => Some((iv, s)),
            _ => None,
        }
    }

    pub fn intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        self.terms.keys().map(|&(_, iv)| iv)
    }

    pub fn shifts(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().map(|&(s, _)| s)
    }

    pub fn shift(&self, k: i32) -> Self {
        DerivedObject {
            terms: self.terms.iter().map(|(&(s, iv), &m)| ((s + k, iv), m)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &DerivedObject) -> Self {
        let mut o = self.clone();
        for (iv, s, m) in other.summands() {
            o.add_term(iv, s, m);
        }
        o
    }

    /// Removes `other` as a direct summand, if it is one.
    pub fn remove_summand(&self, other: &DerivedObject) -> Option<Self> {
        let mut o = self.clone();
        for (&key, &m) in &other.terms {
            let cur = o.terms.get_mut(&key)?;
            if *cur < m {
                return None;
            }
            *cur -= m;
            if *cur == 0 {
                o.terms.remove(&key);
            }
        }
        Some(o)
    }

    /// Shifts so that the smallest shift present is zero.
    pub fn normalized(&self) -> Self {
        match self.terms.keys().next() {
            Some(&(s, _)) => self.shift(-s),
            None => self.clone(),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        self.intervals().try_for_each(|iv| iv.validate(n))
    }

    pub fn class(&self, n: usize) -> K0Class {
        let mut v = vec![0i64; n];
        for (iv, s, m) in self.summands() {
            let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
            for x in iv.a..=iv.b {
                v[x - 1] += sign * i64::from(m);
            }
        }
        K0Class(v)
    }

    /// Human-readable form using `S`/`P`/`I` names, e.g. `I2[-1]+P1`.
    pub fn display(&self, n: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (iv, s, m) in self.summands() {
            let token = if s == 0 {
                iv.name(n)
            } else {
                format!("{}[{}]", iv.name(n), s)
            };
            for _ in 0..m {
                parts.push(token.clone());
            }
        }
        parts.join("+")
    }
}

impl fmt::Display for DerivedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (iv, s, m) in self.summands() {
            for _ in 0..m {
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                if s == 0 {
                    write!(f, "{iv}")?;
                } else {
                    write!(f, "{iv}[{s}]")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    interval: Interval,
    shift: i32,
    mult: u32,
}

impl Serialize for DerivedObject {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .summands()
            .map(|(interval, shift, mult)| TermJson {
                interval,
                shift,
                mult,
            })
            .collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DerivedObject {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(deserializer)?;
        Ok(DerivedObject::from_terms(
            v.into_iter().map(|t| (t.interval, t.shift, t.mult)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_for_a3() {
        let n = 3;
        let names: Vec<String> = Interval::all(n).iter().map(|iv| iv.name(n)).collect();
        assert_eq!(names, ["S1", "I2", "P1", "S2", "P2", "S3"]);
    }

    #[test]
    fn canonical_order_and_class() {
        let o = DerivedObject::from_terms([
            (Interval::new(1, 2), 0, 1),
            (Interval::new(3, 3), -1, 1),
            (Interval::new(1, 1), 0, 2),
        ]);
        assert_eq!(o.to_string(), "[3,3][-1]+[1,1]+[1,1]+[1,2]");
        assert_eq!(o.class(3), K0Class(vec![3, 1, -1]));
        assert_eq!(o.display(3), "S3[-1]+S1+S1+I2");
    }

    #[test]
    fn json_round_trip() {
        let o = DerivedObject::from_terms([(Interval::new(1, 2), -1, 1), (Interval::new(2, 2), 0, 3)]);
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(
            s,
            r#"[{"interval":[1,2],"shift":-1,"mult":1},{"interval":[2,2],"shift":0,"mult":3}]"#
        );
        let back: DerivedObject = serde_json::from_str(&s).unwrap();
        assert_eq!(back, o);
    }

    #[test]
    fn interval_bounds() {
        assert!(Interval::checked(3, 2, 1).is_err());
        assert!(Interval::checked(3, 0, 1).is_err());
        assert!(Interval::checked(3, 1, 4).is_err());
        assert!(Interval::checked(3, 3, 3).is_ok());
    }
}
