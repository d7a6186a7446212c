use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use super::complex::{self, ChainMap, ProjComplex};
use super::{DerivedObject, Interval, Side, ThickSubcat};
use crate::error::{Error, Result};
use crate::lattice::{K0Class, QuiverSpec};
use crate::linalg::{q, QMatrix};

/// Precomputed Hom tables for `D^b(mod A_n)`.
///
/// Hom spaces between interval modules are computed once by solving the
/// chain-map linear system on projective resolutions; everything else is
/// assembled from those tables or from explicit cones.
#[derive(Debug)]
pub struct TypeAEngine {
    n: usize,
    intervals: Vec<Interval>,
    /// `(X, Y)` -> `[dim Hom(X, Y), dim Hom(X, Y[1])]`.
    hom: HashMap<(Interval, Interval), [usize; 2]>,
    /// `(X, Y, k)` -> indecomposable summands of the cones of basis maps `X -> Y[k]`.
    cones: HashMap<(Interval, Interval, i32), Vec<Interval>>,
    /// Memoized mutation objects, keyed by `(E, F, left?)`.
    mutations: Mutex<HashMap<(Interval, Interval, bool), DerivedObject>>,
}

impl TypeAEngine {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("type A quiver needs n >= 1"));
        }
        let intervals = Interval::all(n);
        let pairs: Vec<(Interval, Interval)> = intervals
            .iter()
            .flat_map(|&x| intervals.iter().map(move |&y| (x, y)))
            .collect();
        let rows: Vec<_> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let px = ProjComplex::of_interval(n, x, 0);
                let py = ProjComplex::of_interval(n, y, 0);
                let mut dims = [0usize; 2];
                let mut cones = Vec::new();
                for k in 0..2 {
                    let basis = complex::hom_basis(&px, &py, k);
                    dims[k as usize] = basis.len();
                    let mut summands = BTreeSet::new();
                    for f in &basis {
                        summands.extend(f.cone().decompose().intervals());
                    }
                    cones.push(((x, y, k), summands.into_iter().collect::<Vec<_>>()));
                }
                ((x, y), dims, cones)
            })
            .collect();
        let mut hom = HashMap::new();
        let mut cone_table = HashMap::new();
        for (key, dims, cones) in rows {
            hom.insert(key, dims);
            cone_table.extend(cones);
        }
        Ok(TypeAEngine {
            n,
            intervals,
            hom,
            cones: cone_table,
            mutations: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quiver(&self) -> QuiverSpec {
        QuiverSpec::TypeA { n: self.n }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn class(&self, x: &DerivedObject) -> K0Class {
        x.class(self.n)
    }

    pub fn present(&self, x: &DerivedObject) -> ProjComplex {
        ProjComplex::present(self.n, x)
    }

    /// `dim Hom(X, Y[k])` for interval modules.
    pub fn hom_interval(&self, x: Interval, y: Interval, k: i32) -> usize {
        match k {
            0 | 1 => self.hom[&(x, y)][k as usize],
            _ => 0,
        }
    }

    /// `dim Hom(X, Y[k])`, additive in both arguments.
    pub fn hom_dim(&self, x: &DerivedObject, y: &DerivedObject, k: i32) -> usize {
        let mut total = 0;
        for (ix, sx, mx) in x.summands() {
            for (iy, sy, my) in y.summands() {
                total += (mx * my) as usize * self.hom_interval(ix, iy, k + sy - sx);
            }
        }
        total
    }

    /// Degrees `k` for which `Hom(X, Y[k])` can be nonzero.
    pub fn hom_window(&self, x: &DerivedObject, y: &DerivedObject) -> Vec<i32> {
        let mut ks = BTreeSet::new();
        for sx in x.shifts() {
            for sy in y.shifts() {
                ks.insert(sx - sy);
                ks.insert(sx - sy + 1);
            }
        }
        ks.into_iter().collect()
    }

    /// `sum_k dim Hom(X, Y[k])`.
    pub fn hom_total(&self, x: &DerivedObject, y: &DerivedObject) -> usize {
        self.hom_window(x, y)
            .into_iter()
            .map(|k| self.hom_dim(x, y, k))
            .sum()
    }

    pub fn graded_hom_vanishes(&self, x: Interval, y: Interval) -> bool {
        self.hom[&(x, y)] == [0, 0]
    }

    pub fn hom_basis(&self, x: &ProjComplex, y: &ProjComplex, k: i32) -> Vec<ChainMap> {
        complex::hom_basis(x, y, k)
    }

    pub fn cone(&self, f: &ChainMap) -> DerivedObject {
        f.cone().decompose()
    }

    /// Auslander-Reiten translate inside the module category.
    pub fn tau(&self, x: Interval) -> Option<Interval> {
        (x.b < self.n).then(|| Interval::new(x.a + 1, x.b + 1))
    }

    pub fn thick_closure(&self, gens: &[DerivedObject]) -> ThickSubcat {
        let start: BTreeSet<Interval> = gens.iter().flat_map(|g| g.intervals()).collect();
        self.close(start)
    }

    pub fn thick_closure_of(&self, gens: impl IntoIterator<Item = Interval>) -> ThickSubcat {
        self.close(gens.into_iter().collect())
    }

    fn close(&self, mut members: BTreeSet<Interval>) -> ThickSubcat {
        loop {
            let mut added = Vec::new();
            for &x in &members {
                for &y in &members {
                    for k in 0..2 {
                        for iv in &self.cones[&(x, y, k)] {
                            if !members.contains(iv) {
                                added.push(*iv);
                            }
                        }
                    }
                }
            }
            if added.is_empty() {
                return ThickSubcat::from_members(members);
            }
            members.extend(added);
        }
    }

    /// `<A, B>`: the thick closure of the union.
    pub fn join(&self, a: &ThickSubcat, b: &ThickSubcat) -> ThickSubcat {
        self.close(a.union_members(b))
    }

    pub fn whole(&self) -> ThickSubcat {
        ThickSubcat::from_members(self.intervals.iter().copied())
    }

    pub fn perp(&self, s: &ThickSubcat, side: Side) -> ThickSubcat {
        ThickSubcat::from_members(self.intervals.iter().copied().filter(|&x| {
            s.members().iter().all(|&g| match side {
                Side::Right => self.graded_hom_vanishes(g, x),
                Side::Left => self.graded_hom_vanishes(x, g),
            })
        }))
    }

    pub fn in_subcat(&self, s: &ThickSubcat, x: &DerivedObject) -> bool {
        x.intervals().all(|iv| s.contains(&iv))
    }

    /// Rank of the sublattice of `K_0` spanned by the members.
    pub fn rank_of(&self, s: &ThickSubcat) -> usize {
        let vecs: Vec<Vec<_>> = s
            .members()
            .iter()
            .map(|iv| iv.dim_vector(self.n).into_iter().map(q).collect())
            .collect();
        QMatrix::span_rank(self.n, &vecs)
    }

    /// An exceptional sequence of intervals that generates `s`.
    pub fn generating_sequence(&self, s: &ThickSubcat) -> Result<Vec<Interval>> {
        let target = self.rank_of(s);
        let members: Vec<Interval> = s.members().iter().copied().collect();
        let mut seq = Vec::new();
        if self.extend_generating(&members, target, s, &mut seq) {
            Ok(seq)
        } else {
            Err(Error::internal(format!("no generating exceptional sequence for {s}")))
        }
    }

    fn extend_generating(
        &self,
        members: &[Interval],
        target: usize,
        s: &ThickSubcat,
        seq: &mut Vec<Interval>,
    ) -> bool {
        if seq.len() == target {
            return self.thick_closure_of(seq.iter().copied()) == *s;
        }
        for &c in members {
            if seq.contains(&c) {
                continue;
            }
            // Appending c at the end requires Hom^*(c, e) = 0 for earlier e.
            if seq.iter().all(|&e| self.graded_hom_vanishes(c, e)) {
                seq.push(c);
                if self.extend_generating(members, target, s, seq) {
                    return true;
                }
                seq.pop();
            }
        }
        false
    }

    /// Cone of the evaluation map `Hom^*(F, X) (x) F -> X`. For exceptional
    /// `F` the result is right orthogonal to `F`.
    pub fn evaluation_cone(&self, f: Interval, x: &DerivedObject) -> DerivedObject {
        let px = self.present(x);
        let pf = ProjComplex::of_interval(self.n, f, 0);
        let fo = DerivedObject::single(f, 0);
        let mut maps = Vec::new();
        for k in self.hom_window(&fo, x) {
            for b in complex::hom_basis(&pf, &px, k) {
                maps.push(complex::unshift_source(&b, k));
            }
        }
        if maps.is_empty() {
            return x.clone();
        }
        complex::stack_sources(self.n, &px, &maps).cone().decompose()
    }

    /// Fiber of the coevaluation map `X -> Hom^*(X, F)^* (x) F`. For
    /// exceptional `F` the result is left orthogonal to `F`.
    pub fn coevaluation_fiber(&self, x: &DerivedObject, f: Interval) -> DerivedObject {
        let px = self.present(x);
        let pf = ProjComplex::of_interval(self.n, f, 0);
        let fo = DerivedObject::single(f, 0);
        let mut maps = Vec::new();
        for k in self.hom_window(x, &fo) {
            maps.extend(complex::hom_basis(&px, &pf, k));
        }
        if maps.is_empty() {
            return x.clone();
        }
        complex::stack_targets(self.n, &px, &maps).fiber().source.decompose()
    }

    /// `L_E F`, the fiber of `Hom^*(E, F) (x) E -> F`.
    pub fn left_mutation(&self, e: Interval, f: Interval) -> DerivedObject {
        self.memo((e, f, true), || {
            self.evaluation_cone(e, &DerivedObject::single(f, 0)).shift(-1)
        })
    }

    /// `R_F E`, the cone of `E -> Hom^*(E, F)^* (x) F`.
    pub fn right_mutation(&self, e: Interval, f: Interval) -> DerivedObject {
        self.memo((e, f, false), || {
            self.coevaluation_fiber(&DerivedObject::single(e, 0), f).shift(1)
        })
    }

    fn memo(
        &self,
        key: (Interval, Interval, bool),
        compute: impl FnOnce() -> DerivedObject,
    ) -> DerivedObject {
        if let Some(v) = self.mutations.lock().expect("mutation cache poisoned").get(&key) {
            return v.clone();
        }
        let v = compute();
        self.mutations
            .lock()
            .expect("mutation cache poisoned")
            .insert(key, v.clone());
        v
    }

    /// Image of `X` under `D -> D/U`, realized inside `U^perp`.
    pub fn project_quotient(&self, u: &ThickSubcat, x: &DerivedObject) -> Result<DerivedObject> {
        if u.is_empty() {
            return Ok(x.clone());
        }
        let seq = self.generating_sequence(u)?;
        let mut cur = x.clone();
        for &f in seq.iter().rev() {
            cur = self.evaluation_cone(f, &cur);
        }
        let perp = self.perp(u, Side::Right);
        if !self.in_subcat(&perp, &cur) {
            return Err(Error::internal(format!(
                "projection of {x} to the quotient by {u} left a U-component: {cur}"
            )));
        }
        Ok(cur)
    }
}
