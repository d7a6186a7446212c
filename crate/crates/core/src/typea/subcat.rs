use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `B^perp = {X : Hom(B, X[k]) = 0 for all k}`.
    Right,
    /// `perp B = {X : Hom(X, B[k]) = 0 for all k}`.
    Left,
}

/// A thick subcategory, recorded by the indecomposables (up to shift) it
/// contains.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThickSubcat {
    members: BTreeSet<Interval>,
}

impl ThickSubcat {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_members(members: impl IntoIterator<Item = Interval>) -> Self {
        ThickSubcat {
            members: members.into_iter().collect(),
        }
    }

    pub fn members(&self) -> &BTreeSet<Interval> {
        &self.members
    }

    pub fn contains(&self, iv: &Interval) -> bool {
        self.members.contains(iv)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_subset(&self, other: &ThickSubcat) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Set intersection. The intersection of thick subcategories is thick.
    pub fn intersect(&self, other: &ThickSubcat) -> ThickSubcat {
        ThickSubcat {
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn union_members(&self, other: &ThickSubcat) -> BTreeSet<Interval> {
        self.members.union(&other.members).copied().collect()
    }

    /// `<S1,I2>`-style rendering with `S`/`P`/`I` names.
    pub fn display(&self, n: usize) -> String {
        let names: Vec<String> = self.members.iter().map(|iv| iv.name(n)).collect();
        format!("<{}>", names.join(","))
    }
}

impl fmt::Display for ThickSubcat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(Interval::to_string).collect();
        write!(f, "<{}>", parts.join(","))
    }
}
