//! Quiver descriptions, the Grothendieck group as an integer lattice, and
//! the Euler form.
//!
//! For `TypeA(n)` the lattice basis is the simple modules ordered by vertex,
//! so the class of an interval module is its dimension vector. For the
//! weighted projective line of weight type (2) the basis is
//! `([O], [S10], [Sx])` with `Sx` a simple sheaf in a homogeneous tube.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum QuiverSpec {
    /// Equioriented `1 -> 2 -> ... -> n`.
    #[serde(rename = "typeA")]
    TypeA { n: usize },
    #[serde(rename = "wpl2")]
    Wpl2,
}

impl QuiverSpec {
    pub fn type_a(n: usize) -> Result<Self> {
        let q = QuiverSpec::TypeA { n };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            QuiverSpec::TypeA { n: 0 } => Err(Error::invalid("type A quiver needs n >= 1")),
            _ => Ok(()),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            QuiverSpec::TypeA { n } => n,
            QuiverSpec::Wpl2 => 3,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let q: QuiverSpec =
            serde_json::from_str(s).map_err(|e| Error::invalid(format!("quiver spec: {e}")))?;
        q.validate()?;
        Ok(q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct K0Class(pub Vec<i64>);

impl K0Class {
    pub fn zero(rank: usize) -> Self {
        K0Class(vec![0; rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        assert_eq!(self.len(), other.len());
        K0Class(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &K0Class) -> K0Class {
        assert_eq!(self.len(), other.len());
        K0Class(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: i64) -> K0Class {
        K0Class(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> K0Class {
        self.scale(-1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerForm {
    pub matrix: Vec<Vec<i64>>,
}

impl EulerForm {
    pub fn of(q: &QuiverSpec) -> Self {
        match *q {
            QuiverSpec::TypeA { n } => {
                let mut m = vec![vec![0; n]; n];
                for i in 0..n {
                    m[i][i] = 1;
                    if i + 1 < n {
                        m[i][i + 1] = -1;
                    }
                }
                EulerForm { matrix: m }
            }
            // Rows/columns: [O], [S10], [Sx].
            QuiverSpec::Wpl2 => EulerForm {
                matrix: vec![vec![1, 1, 1], vec![0, 1, 0], vec![-1, 0, 0]],
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn pair(&self, x: &K0Class, y: &K0Class) -> Result<i64> {
        let r = self.rank();
        for v in [x, y] {
            if v.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: v.len(),
                });
            }
        }
        let mut total = 0;
        for i in 0..r {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                total += x.0[i] * self.matrix[i][j] * y.0[j];
            }
        }
        Ok(total)
    }
}

/// `<x, y> = x^T E y`.
pub fn euler_pairing(q: &QuiverSpec, x: &K0Class, y: &K0Class) -> Result<i64> {
    EulerForm::of(q).pair(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn type_a_examples() {
        let a2 = QuiverSpec::type_a(2).unwrap();
        assert_eq!(euler_pairing(&a2, &K0Class(vec![1, 0]), &K0Class(vec![0, 1])).unwrap(), -1);
        assert_eq!(euler_pairing(&a2, &K0Class(vec![1, 0]), &K0Class(vec![1, 0])).unwrap(), 1);
        let a3 = QuiverSpec::type_a(3).unwrap();
        assert_eq!(
            euler_pairing(&a3, &K0Class(vec![0, 0, 1]), &K0Class(vec![1, 1, 1])).unwrap(),
            1
        );
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let a2 = QuiverSpec::type_a(2).unwrap();
        let err = euler_pairing(&a2, &K0Class(vec![1, 0, 0]), &K0Class(vec![0, 1])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, got: 3 });
    }

    #[test]
    fn json_forms() {
        assert_eq!(
            QuiverSpec::from_json(r#"{"kind":"typeA","n":3}"#).unwrap(),
            QuiverSpec::TypeA { n: 3 }
        );
        assert_eq!(QuiverSpec::from_json(r#"{"kind":"wpl2"}"#).unwrap(), QuiverSpec::Wpl2);
        assert!(QuiverSpec::from_json(r#"{"kind":"typeA","n":0}"#).is_err());
        assert!(QuiverSpec::from_json(r#"{"kind":"typeD","n":4}"#).is_err());
        let s = serde_json::to_string(&QuiverSpec::TypeA { n: 4 }).unwrap();
        assert_eq!(s, r#"{"kind":"typeA","n":4}"#);
    }

    fn vec3() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..=5, 3)
    }

    proptest! {
        #[test]
        fn bilinear_in_first_argument(x in vec3(), x2 in vec3(), y in vec3(), a in -4i64..=4, b in -4i64..=4) {
            for q in [QuiverSpec::TypeA { n: 3 }, QuiverSpec::Wpl2] {
                let (x, x2, y) = (K0Class(x.clone()), K0Class(x2.clone()), K0Class(y.clone()));
                let lhs = euler_pairing(&q, &x.scale(a).add(&x2.scale(b)), &y).unwrap();
                let rhs = a * euler_pairing(&q, &x, &y).unwrap() + b * euler_pairing(&q, &x2, &y).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
