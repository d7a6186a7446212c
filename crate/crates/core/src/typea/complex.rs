//! Bounded complexes of projective representations of the equioriented
//! `A_n` quiver, chain maps between them, and their cohomology.
//!
//! The indecomposable projective `P_j` is the interval module `[j, n]`, and
//! `Hom(P_i, P_j)` is one-dimensional exactly when `j <= i` (the inclusion).
//! Inclusions compose to inclusions, so a map between direct sums of
//! projectives is a rational matrix whose entry `(r, c)` may be nonzero only
//! when `label[r] <= label[c]`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{DerivedObject, Interval};
use crate::linalg::{QMatrix, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    n: usize,
    /// Degree -> projective labels (`j` stands for `P_j`).
    terms: BTreeMap<i32, Vec<usize>>,
    /// Degree `d` -> differential `C^d -> C^{d+1}`, shape `len(d+1) x len(d)`.
    diffs: BTreeMap<i32, QMatrix>,
}

/// Degreewise components of a chain map `f^d : X^d -> Y^d`.
pub type MapComponents = BTreeMap<i32, QMatrix>;

#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub comps: MapComponents,
}

impl ProjComplex {
    pub fn zero(n: usize) -> Self {
        ProjComplex {
            n,
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// Builds a complex, dropping empty degrees. Differentials not listed
    /// are zero.
    pub fn new(
        n: usize,
        terms: BTreeMap<i32, Vec<usize>>,
        diffs: BTreeMap<i32, QMatrix>,
    ) -> Result<Self, String> {
        let terms: BTreeMap<i32, Vec<usize>> =
            terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let mut c = ProjComplex {
            n,
            terms,
            diffs: BTreeMap::new(),
        };
        for (d, m) in diffs {
            if m.rows() != c.len(d + 1) || m.cols() != c.len(d) {
                return Err(format!("differential in degree {d} has the wrong shape"));
            }
            if !m.is_zero() {
                c.diffs.insert(d, m);
            }
        }
        c.validate()?;
        Ok(c)
    }

    /// Minimal projective resolution `P_{b+1} -> P_a` of `[a, b]`, placed so
    /// that the module sits in cohomological degree `-shift`.
    pub fn of_interval(n: usize, iv: Interval, shift: i32) -> Self {
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        terms.insert(-shift, vec![iv.a]);
        if iv.b < n {
            terms.insert(-shift - 1, vec![iv.b + 1]);
            let sign = if shift.rem_euclid(2) == 0 { 1 } else { -1 };
            diffs.insert(-shift - 1, QMatrix::from_rows(&[vec![sign]]));
        }
        ProjComplex { n, terms, diffs }
    }

    /// Direct sum of the resolutions of all summands of `obj`.
    pub fn present(n: usize, obj: &DerivedObject) -> Self {
        let parts: Vec<ProjComplex> = obj
            .summands()
            .flat_map(|(iv, s, m)| std::iter::repeat_n(ProjComplex::of_interval(n, iv, s), m as usize))
            .collect();
        ProjComplex::direct_sum(n, &parts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self, d: i32) -> usize {
        self.terms.get(&d).map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn labels(&self, d: i32) -> &[usize] {
        self.terms.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().copied()
    }

    pub fn total_rank(&self) -> usize {
        self.terms.values().map(Vec::len).sum()
    }

    pub fn diff(&self, d: i32) -> QMatrix {
        self.diffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.len(d + 1), self.len(d)))
    }

    fn validate(&self) -> Result<(), String> {
        for (&d, m) in &self.diffs {
            check_pattern(m, self.labels(d + 1), self.labels(d))
                .map_err(|e| format!("differential in degree {d}: {e}"))?;
        }
        for (&d, m) in &self.diffs {
            if let Some(next) = self.diffs.get(&(d + 1)) {
                if !next.mul(m).is_zero() {
                    return Err(format!("d^2 != 0 at degree {d}"));
                }
            }
        }
        if self.terms.values().flatten().any(|&l| l == 0 || l > self.n) {
            return Err("projective label out of range".into());
        }
        Ok(())
    }

    /// `C[k]`: degree `d` holds `C^{d+k}`, differential `(-1)^k d_C`.
    pub fn shift(&self, k: i32) -> Self {
        let neg = k.rem_euclid(2) == 1;
        ProjComplex {
            n: self.n,
            terms: self.terms.iter().map(|(&d, v)| (d - k, v.clone())).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&d, m)| (d - k, if neg { m.neg() } else { m.clone() }))
                .collect(),
        }
    }

    pub fn direct_sum(n: usize, parts: &[ProjComplex]) -> Self {
        let mut terms: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for p in parts {
            for (&d, v) in &p.terms {
                terms.entry(d).or_default().extend_from_slice(v);
            }
        }
        let mut diffs = BTreeMap::new();
        let degrees: Vec<i32> = terms.keys().copied().collect();
        for d in degrees {
            let blocks: Vec<QMatrix> = parts.iter().map(|p| p.diff(d)).collect();
            let refs: Vec<&QMatrix> = blocks.iter().collect();
            let m = QMatrix::block_diag(&refs);
            if !m.is_zero() {
                diffs.insert(d, m);
            }
        }
        ProjComplex { n, terms, diffs }
    }

    /// Restriction of `C^d` to vertex `v`: the coordinates of summands
    /// `P_j` with `j <= v`.
    fn coords_at(&self, d: i32, v: usize) -> Vec<usize> {
        self.labels(d)
            .iter()
            .enumerate()
            .filter(|(_, &l)| l <= v)
            .map(|(i, _)| i)
            .collect()
    }

    /// Krull-Schmidt decomposition of the cohomology: each `H^k` is split
    /// into interval modules by the rank formula and emitted as `H^k[-k]`.
    pub fn decompose(&self) -> DerivedObject {
        let n = self.n;
        let mut out = DerivedObject::zero();
        for k in self.degrees() {
            // Cycles at each vertex, as vectors in the vertex coordinates.
            let mut cycles: Vec<Vec<Vec<Q>>> = vec![Vec::new(); n + 1];
            let mut bounds: Vec<Vec<Vec<Q>>> = vec![Vec::new(); n + 1];
            let mut dims: Vec<usize> = vec![0; n + 1];
            let d_out = self.diff(k);
            let d_in = self.diff(k - 1);
            for v in 1..=n {
                let here = self.coords_at(k, v);
                let next = self.coords_at(k + 1, v);
                let prev = self.coords_at(k - 1, v);
                cycles[v] = if here.is_empty() {
                    Vec::new()
                } else {
                    d_out.select(&next, &here).nullspace()
                };
                let b = d_in.select(&here, &prev);
                bounds[v] = (0..b.cols()).map(|c| b.column(c)).collect();
                dims[v] = here.len();
            }
            // Ranks of the composite structure maps H_a -> H_b.
            let rank = |a: usize, b: usize| -> i64 {
                if a == 0 || b > n || a > b {
                    return 0;
                }
                let here_a = self.coords_at(k, a);
                let here_b = self.coords_at(k, b);
                let embed: Vec<Vec<Q>> = cycles[a]
                    .iter()
                    .map(|z| {
                        let mut w = vec![Q::zero(); here_b.len()];
                        for (i, &ca) in here_a.iter().enumerate() {
                            let pos = here_b.iter().position(|&cb| cb == ca).expect("coordinate inclusion");
                            w[pos] = z[i].clone();
                        }
                        w
                    })
                    .collect();
                let mut both = embed;
                both.extend(bounds[b].iter().cloned());
                let with = QMatrix::span_rank(dims[b], &both);
                let without = QMatrix::span_rank(dims[b], &bounds[b]);
                (with - without) as i64
            };
            let mut r = vec![vec![0i64; n + 2]; n + 2];
            for a in 1..=n {
                for b in a..=n {
                    r[a][b] = rank(a, b);
                }
            }
            let get = |a: usize, b: usize| -> i64 {
                if a == 0 || b > n || a > b {
                    0
                } else {
                    r[a][b]
                }
            };
            for a in 1..=n {
                for b in a..=n {
                    let m = get(a, b) - get(a - 1, b) - get(a, b + 1) + get(a - 1, b + 1);
                    assert!(m >= 0, "negative interval multiplicity");
                    if m > 0 {
                        out.add_term(Interval::new(a, b), -k, m as u32);
                    }
                }
            }
        }
        out
    }
}

fn check_pattern(m: &QMatrix, rows: &[usize], cols: &[usize]) -> Result<(), String> {
    for (r, &lr) in rows.iter().enumerate() {
        for (c, &lc) in cols.iter().enumerate() {
            if lr > lc && !m.get(r, c).is_zero() {
                return Err(format!("entry ({r},{c}) is not a map P{lc} -> P{lr}"));
            }
        }
    }
    Ok(())
}

impl ChainMap {
    pub fn component(&self, d: i32) -> QMatrix {
        self.comps
            .get(&d)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.target.len(d), self.source.len(d)))
    }

    pub fn is_chain_map(&self) -> bool {
        let degrees: Vec<i32> = self.source.degrees().chain(self.target.degrees()).collect();
        for &d in &degrees {
            for dd in [d - 1, d] {
                let lhs = self.target.diff(dd).mul(&self.component(dd));
                let rhs = self.component(dd + 1).mul(&self.source.diff(dd));
                if lhs != rhs {
                    return false;
                }
            }
        }
        for (&d, m) in &self.comps {
            if check_pattern(m, self.target.labels(d), self.source.labels(d)).is_err() {
                return false;
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(QMatrix::is_zero)
    }

    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        let mut comps = BTreeMap::new();
        for d in first.source.degrees() {
            let m = self.component(d).mul(&first.component(d));
            if !m.is_zero() {
                comps.insert(d, m);
            }
        }
        ChainMap {
            source: first.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    /// Mapping cone: `C^d = X^{d+1} (+) Y^d`, `d_C = [[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self) -> ProjComplex {
        let x = &self.source;
        let y = &self.target;
        let n = x.n;
        let mut terms: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let degrees: Vec<i32> = x
            .degrees()
            .map(|d| d - 1)
            .chain(y.degrees())
            .collect();
        for &d in &degrees {
            let mut v = x.labels(d + 1).to_vec();
            v.extend_from_slice(y.labels(d));
            terms.insert(d, v);
        }
        let mut diffs = BTreeMap::new();
        for &d in &degrees {
            let top = QMatrix::hstack(&[
                &x.diff(d + 1).neg(),
                &QMatrix::zeros(x.len(d + 2), y.len(d)),
            ]);
            let bottom = QMatrix::hstack(&[&self.component(d + 1), &y.diff(d)]);
            let m = QMatrix::vstack(&[&top, &bottom]);
            diffs.insert(d, m);
        }
        ProjComplex::new(n, terms, diffs).expect("cone of a chain map is a complex")
    }

    /// Fiber `cone(f)[-1]` together with its canonical map to the source.
    pub fn fiber(&self) -> ChainMap {
        let fib = self.cone().shift(-1);
        let mut comps = BTreeMap::new();
        for d in self.source.degrees() {
            let xs = self.source.len(d);
            let ys = self.target.len(d - 1);
            let m = QMatrix::hstack(&[&QMatrix::identity(xs), &QMatrix::zeros(xs, ys)]);
            comps.insert(d, m);
        }
        ChainMap {
            source: fib,
            target: self.source.clone(),
            comps,
        }
    }
}

/// Basis of `Hom_K(X, Y)` (degree-zero chain maps modulo homotopy).
pub fn chain_map_basis(x: &ProjComplex, y: &ProjComplex) -> Vec<ChainMap> {
    // Unknowns: allowed entries of f^d.
    let mut vars: Vec<(i32, usize, usize)> = Vec::new();
    let mut index: BTreeMap<(i32, usize, usize), usize> = BTreeMap::new();
    for d in x.degrees() {
        for (r, &lr) in y.labels(d).iter().enumerate() {
            for (c, &lc) in x.labels(d).iter().enumerate() {
                if lr <= lc {
                    index.insert((d, r, c), vars.len());
                    vars.push((d, r, c));
                }
            }
        }
    }
    if vars.is_empty() {
        return Vec::new();
    }
    let nv = vars.len();

    // Chain map equations d_Y^d f^d - f^{d+1} d_X^d = 0.
    let mut eqs: Vec<Vec<Q>> = Vec::new();
    let eq_degrees: Vec<i32> = x.degrees().flat_map(|d| [d - 1, d]).collect();
    let mut seen = std::collections::BTreeSet::new();
    for d in eq_degrees {
        if !seen.insert(d) {
            continue;
        }
        let dy = y.diff(d);
        let dx = x.diff(d);
        for r in 0..y.len(d + 1) {
            for c in 0..x.len(d) {
                let mut row = vec![Q::zero(); nv];
                for s in 0..y.len(d) {
                    let coef = dy.get(r, s);
                    if !coef.is_zero() {
                        if let Some(&vi) = index.get(&(d, s, c)) {
                            row[vi] += coef;
                        }
                    }
                }
                for t in 0..x.len(d + 1) {
                    let coef = dx.get(t, c);
                    if !coef.is_zero() {
                        if let Some(&vi) = index.get(&(d + 1, r, t)) {
                            row[vi] -= coef;
                        }
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    let cycles = if eqs.is_empty() {
        (0..nv)
            .map(|i| {
                let mut v = vec![Q::zero(); nv];
                v[i] = Q::one();
                v
            })
            .collect()
    } else {
        let mut m = QMatrix::zeros(eqs.len(), nv);
        for (i, row) in eqs.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m.nullspace()
    };
    if cycles.is_empty() {
        return Vec::new();
    }

    // Null-homotopic maps d_Y h + h d_X for h^d : X^d -> Y^{d-1}.
    let mut boundaries: Vec<Vec<Q>> = Vec::new();
    for d in x.degrees() {
        for (s, &ls) in y.labels(d - 1).iter().enumerate() {
            for (c, &lc) in x.labels(d).iter().enumerate() {
                if ls > lc {
                    continue;
                }
                let mut v = vec![Q::zero(); nv];
                // f^d[r][c] += dY^{d-1}[r][s]
                let dy = y.diff(d - 1);
                for r in 0..y.len(d) {
                    let coef = dy.get(r, s);
                    if !coef.is_zero() {
                        let vi = index[&(d, r, c)];
                        v[vi] += coef;
                    }
                }
                // f^{d-1}[s][c'] += dX^{d-1}[c][c']
                let dx = x.diff(d - 1);
                for c2 in 0..x.len(d - 1) {
                    let coef = dx.get(c, c2);
                    if !coef.is_zero() {
                        let vi = index[&(d - 1, s, c2)];
                        v[vi] += coef;
                    }
                }
                if v.iter().any(|e| !e.is_zero()) {
                    boundaries.push(v);
                }
            }
        }
    }

    let mut span = boundaries.clone();
    let mut rank = QMatrix::span_rank(nv, &span);
    let mut basis = Vec::new();
    for z in cycles {
        span.push(z.clone());
        let r = QMatrix::span_rank(nv, &span);
        if r > rank {
            rank = r;
            basis.push(z);
        } else {
            span.pop();
        }
    }

    basis
        .into_iter()
        .map(|z| {
            let mut comps: MapComponents = BTreeMap::new();
            for (vi, &(d, r, c)) in vars.iter().enumerate() {
                if z[vi].is_zero() {
                    continue;
                }
                let m = comps
                    .entry(d)
                    .or_insert_with(|| QMatrix::zeros(y.len(d), x.len(d)));
                m.set(r, c, z[vi].clone());
            }
            ChainMap {
                source: x.clone(),
                target: y.clone(),
                comps,
            }
        })
        .collect()
}

/// Basis of chain maps `X -> Y[k]` modulo homotopy.
pub fn hom_basis(x: &ProjComplex, y: &ProjComplex, k: i32) -> Vec<ChainMap> {
    chain_map_basis(x, &y.shift(k))
}

/// Reinterprets a map `X -> Y[k]` as a map `X[-k] -> Y`.
pub fn unshift_source(f: &ChainMap, k: i32) -> ChainMap {
    let source = f.source.shift(-k);
    let target = f.target.shift(-k);
    let comps = f.comps.iter().map(|(&d, m)| (d + k, m.clone())).collect();
    ChainMap {
        source,
        target,
        comps,
    }
}

/// Map `X -> (+)_i Y_i` assembled from components `X -> Y_i`.
pub fn stack_targets(n: usize, source: &ProjComplex, maps: &[ChainMap]) -> ChainMap {
    let targets: Vec<ProjComplex> = maps.iter().map(|m| m.target.clone()).collect();
    let target = ProjComplex::direct_sum(n, &targets);
    let mut comps = BTreeMap::new();
    for d in source.degrees() {
        let blocks: Vec<QMatrix> = maps.iter().map(|m| m.component(d)).collect();
        let refs: Vec<&QMatrix> = blocks.iter().collect();
        let m = if refs.is_empty() {
            QMatrix::zeros(0, source.len(d))
        } else {
            QMatrix::vstack(&refs)
        };
        comps.insert(d, m);
    }
    ChainMap {
        source: source.clone(),
        target,
        comps,
    }
}

/// Map `(+)_i X_i -> Y` assembled from components `X_i -> Y`.
pub fn stack_sources(n: usize, target: &ProjComplex, maps: &[ChainMap]) -> ChainMap {
    let sources: Vec<ProjComplex> = maps.iter().map(|m| m.source.clone()).collect();
    let source = ProjComplex::direct_sum(n, &sources);
    let mut comps = BTreeMap::new();
    for d in source.degrees() {
        let blocks: Vec<QMatrix> = maps.iter().map(|m| m.component(d)).collect();
        let refs: Vec<&QMatrix> = blocks.iter().collect();
        comps.insert(d, QMatrix::hstack(&refs));
    }
    ChainMap {
        source,
        target: target.clone(),
        comps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    #[test]
    fn resolution_decomposes_back() {
        for n in 1..=4 {
            for a in 1..=n {
                for b in a..=n {
                    for s in -2..=2 {
                        let c = ProjComplex::of_interval(n, iv(a, b), s);
                        let obj = c.decompose();
                        assert_eq!(obj, DerivedObject::single(iv(a, b), s));
                    }
                }
            }
        }
    }

    #[test]
    fn two_term_complex_p2_to_p1_is_s1() {
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![2]);
        terms.insert(0, vec![1]);
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, QMatrix::from_rows(&[vec![1]]));
        let c = ProjComplex::new(2, terms, diffs).unwrap();
        assert_eq!(c.decompose(), DerivedObject::single(iv(1, 1), 0));
    }

    #[test]
    fn p1_alone_is_projective() {
        let c = ProjComplex::of_interval(2, iv(1, 2), 0);
        assert_eq!(c.decompose().to_string(), "[1,2]");
    }

    #[test]
    fn invalid_pattern_rejected() {
        let mut terms = BTreeMap::new();
        terms.insert(-1, vec![1]);
        terms.insert(0, vec![2]);
        let mut diffs = BTreeMap::new();
        diffs.insert(-1, QMatrix::from_rows(&[vec![1]]));
        assert!(ProjComplex::new(2, terms, diffs).is_err());
    }

    #[test]
    fn identity_is_a_basis_of_end_p1() {
        let p1 = ProjComplex::of_interval(3, iv(1, 3), 0);
        let basis = chain_map_basis(&p1, &p1);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].component(0), QMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn hom_s2_p1_is_injective_at_vertex_two() {
        let s2 = ProjComplex::of_interval(2, iv(2, 2), 0);
        let p1 = ProjComplex::of_interval(2, iv(1, 2), 0);
        let basis = hom_basis(&s2, &p1, 0);
        assert_eq!(basis.len(), 1);
        let f = &basis[0];
        assert!(f.is_chain_map());
        // S2 = P2 in degree 0; the component P2 -> P1 is the inclusion.
        assert!(!f.component(0).is_zero());
    }

    #[test]
    fn ext_s1_s2_is_one_homotopy_class() {
        let s1 = ProjComplex::of_interval(2, iv(1, 1), 0);
        let s2 = ProjComplex::of_interval(2, iv(2, 2), 0);
        let basis = hom_basis(&s1, &s2, 1);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_chain_map());
        assert!(hom_basis(&s1, &s2, 0).is_empty());
    }

    #[test]
    fn cone_of_identity_is_zero() {
        let x = ProjComplex::of_interval(3, iv(1, 2), 0);
        let id = chain_map_basis(&x, &x).remove(0);
        assert!(id.cone().decompose().is_zero());
    }

    #[test]
    fn fiber_projection_is_a_chain_map() {
        let s1 = ProjComplex::of_interval(2, iv(1, 1), 0);
        let s2 = ProjComplex::of_interval(2, iv(2, 2), 0);
        let f = hom_basis(&s1, &s2, 1).remove(0);
        let fib = f.fiber();
        assert!(fib.is_chain_map());
        // fib(S1 -> S2[1]) = P1
        assert_eq!(fib.source.decompose(), DerivedObject::single(iv(1, 2), 0));
    }
}
