#![allow(dead_code)]

use proptest::prelude::*;
use sodlab_core::linalg::{det_i64, QMatrix};
use sodlab_core::{DerivedObject, Interval};

/// `Hom([a,b], [c,d]) != 0` iff `c <= a <= d <= b`.
pub fn hom0(x: Interval, y: Interval) -> usize {
    usize::from(y.a <= x.a && x.a <= y.b && y.b <= x.b)
}

pub fn tau(n: usize, x: Interval) -> Option<Interval> {
    (x.b < n).then(|| Interval::new(x.a + 1, x.b + 1))
}

/// `Ext^1(X, Y) = D Hom(Y, tau X)`.
pub fn ext1(n: usize, x: Interval, y: Interval) -> usize {
    tau(n, x).map_or(0, |t| hom0(y, t))
}

pub fn graded_zero(n: usize, x: Interval, y: Interval) -> bool {
    hom0(x, y) == 0 && ext1(n, x, y) == 0
}

/// Hom between interval representations of `1 -> 2 -> ... -> n`, solved as
/// a linear system in the vertexwise scalars.
pub fn hom_rep(n: usize, x: Interval, y: Interval) -> usize {
    let vars: Vec<usize> = (1..=n).filter(|&v| x.contains(v) && y.contains(v)).collect();
    if vars.is_empty() {
        return 0;
    }
    let col = |v: usize| vars.iter().position(|&w| w == v);
    let mut rows = Vec::new();
    for v in 1..n {
        // f_{v+1} . X(v -> v+1) = Y(v -> v+1) . f_v
        let xmap = x.contains(v) && x.contains(v + 1);
        let ymap = y.contains(v) && y.contains(v + 1);
        let mut row = vec![0i64; vars.len()];
        if xmap {
            if let Some(c) = col(v + 1) {
                row[c] += 1;
            }
        }
        if ymap {
            if let Some(c) = col(v) {
                row[c] -= 1;
            }
        }
        if row.iter().any(|&e| e != 0) {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return vars.len();
    }
    vars.len() - QMatrix::from_rows(&rows).rank()
}

/// `dim Hom(X[sx], Y[sy][k])` for indecomposables.
pub fn hom_shifted(n: usize, x: Interval, sx: i32, y: Interval, sy: i32, k: i32) -> usize {
    match k + sy - sx {
        0 => hom0(x, y),
        1 => ext1(n, x, y),
        _ => 0,
    }
}

pub fn hom_objects(n: usize, x: &DerivedObject, y: &DerivedObject, k: i32) -> usize {
    let mut t = 0;
    for (ix, sx, mx) in x.summands() {
        for (iy, sy, my) in y.summands() {
            t += (mx * my) as usize * hom_shifted(n, ix, sx, iy, sy, k);
        }
    }
    t
}

pub fn intervals(n: usize) -> Vec<Interval> {
    let mut v = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            v.push(Interval::new(a, b));
        }
    }
    v
}

/// Every `n`-tuple of indecomposables that is exceptional, backwards
/// orthogonal and a basis of the dimension-vector lattice.
pub fn brute_force_full_sequences(n: usize) -> Vec<Vec<Interval>> {
    let ivs = intervals(n);
    let k = ivs.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let seq: Vec<Interval> = idx.iter().map(|&i| ivs[i]).collect();
        let orthogonal = (0..n).all(|i| (i + 1..n).all(|j| graded_zero(n, seq[j], seq[i])));
        if orthogonal {
            let rows: Vec<Vec<i64>> = seq.iter().map(|iv| iv.dim_vector(n)).collect();
            if det_i64(&rows).abs() == 1 {
                out.push(seq);
            }
        }
        let mut p = 0;
        loop {
            if p == n {
                return out;
            }
            idx[p] += 1;
            if idx[p] < k {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

pub fn arb_object(n: usize) -> impl Strategy<Value = DerivedObject> {
    let ivs = intervals(n);
    prop::collection::vec((0..ivs.len(), -2i32..=2, 1u32..=2), 1..=3).prop_map(move |terms| {
        DerivedObject::from_terms(terms.into_iter().map(|(i, s, m)| (ivs[i], s, m)))
    })
}

pub fn arb_interval(n: usize) -> impl Strategy<Value = Interval> {
    let ivs = intervals(n);
    (0..ivs.len()).prop_map(move |i| ivs[i])
}

/// Shared engines for `n <= 5`; building one precomputes all Hom tables.
pub fn engine(n: usize) -> &'static sodlab_core::TypeAEngine {
    static ENGINES: [std::sync::OnceLock<sodlab_core::TypeAEngine>; 6] = [const { std::sync::OnceLock::new() }; 6];
    ENGINES[n].get_or_init(|| sodlab_core::TypeAEngine::new(n).unwrap())
}

/// For a t-stability `<E1> < <E2>` the top factor is the `<E2>`-coreflection
/// and the bottom factor the `<E1>`-reflection, so both are read off graded
/// Hom: `F2 = sum_k E2[-k]^hom(E2, X[k])`, `F1 = sum_k E1[k]^hom(X, E1[k])`.
pub fn two_piece_oracle(n: usize, e1: Interval, e2: Interval, x: &DerivedObject) -> Vec<(DerivedObject, usize)> {
    let mut top = DerivedObject::zero();
    let mut bottom = DerivedObject::zero();
    for k in -4..=4 {
        let h2 = hom_objects(n, &DerivedObject::single(e2, 0), x, k);
        if h2 > 0 {
            top.add_term(e2, -k, h2 as u32);
        }
        let h1 = hom_objects(n, x, &DerivedObject::single(e1, 0), k);
        if h1 > 0 {
            bottom.add_term(e1, k, h1 as u32);
        }
    }
    [(top, 2), (bottom, 1)].into_iter().filter(|(f, _)| !f.is_zero()).collect()
}

pub fn shifted_indecomposables(n: usize, lo: i32, hi: i32) -> Vec<DerivedObject> {
    let mut v = Vec::new();
    for iv in intervals(n) {
        for s in lo..=hi {
            v.push(DerivedObject::single(iv, s));
        }
    }
    v
}
