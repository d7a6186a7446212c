//! Mutation graphs of finest SODs, their reduction to quotient categories,
//! the component graph, and the chain criterion for connectedness.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::sod::{self, Direction, Sod};
use crate::typea::{Interval, Side, ThickSubcat, TypeAEngine};

/// Largest `n` for which the full type A mutation graph is built.
pub const MAX_GRAPH_N: usize = 5;
/// Largest `n` for which the chain criterion is searched.
pub const MAX_CRITERION_N: usize = 4;

/// A directed graph whose edges carry a mutation index `i` (for `rho_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph<V> {
    pub vertices: Vec<V>,
    /// `(from, to, i)` with 1-based `i`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl<V: Clone + Eq + Hash> Graph<V> {
    pub fn empty() -> Self {
        Graph {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn index_of(&self, v: &V) -> Option<usize> {
        self.vertices.iter().position(|x| x == v)
    }

    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = &(usize, usize, usize)> + '_ {
        self.edges.iter().filter(move |e| e.0 == u)
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_edges(u).count()
    }

    /// Undirected connected components, each listed in ascending order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Undirected connectivity; graphs with at most one vertex count as
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Undirected distances from `s` (`None` when unreachable).
    pub fn distances(&self, s: usize) -> Vec<Option<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut dist = vec![None; n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("visited");
            for &v in &adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn to_dot(&self, name: &str, label: impl Fn(&V) -> String) -> String {
        let mut s = format!("digraph {name} {{\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", label(v).replace('"', "\\\""));
        }
        for &(u, v, i) in &self.edges {
            let _ = writeln!(s, "  v{u} -> v{v} [label=\"rho_{i}\"];");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, label: impl Fn(&V) -> String) -> Value {
        let vertices: Vec<String> = self.vertices.iter().map(label).collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|&(u, v, i)| json!([u, v, format!("rho_{i}")]))
            .collect();
        json!({ "vertices": vertices, "edges": edges })
    }
}

/// Builds the graph on `vertices` whose `rho_i` edges come from `step`.
/// Every image must again be a vertex.
pub fn graph_from_step<V, F>(vertices: Vec<V>, indices: usize, step: F) -> Result<Graph<V>>
where
    V: Clone + Eq + Hash + Send + Sync + std::fmt::Debug,
    F: Fn(&V, usize) -> Result<V> + Sync,
{
    let index: HashMap<V, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let rows: Vec<Result<Vec<(usize, usize, usize)>>> = vertices
        .par_iter()
        .enumerate()
        .map(|(u, v)| {
            (1..=indices)
                .map(|i| {
                    let w = step(v, i)?;
                    let t = *index
                        .get(&w)
                        .ok_or_else(|| Error::internal(format!("mutation left the vertex set: {w:?}")))?;
                    Ok((u, t, i))
                })
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for r in rows {
        edges.extend(r?);
    }
    Ok(Graph { vertices, edges })
}

pub fn sod_label(n: usize) -> impl Fn(&Sod) -> String {
    move |s: &Sod| s.display(n)
}

/// The mutation graph of finest SODs of `D^b(mod A_n)`.
pub fn build_graph(engine: &TypeAEngine) -> Result<Graph<Sod>> {
    build_graph_capped(engine, MAX_GRAPH_N)
}

pub fn build_graph_capped(engine: &TypeAEngine, max_n: usize) -> Result<Graph<Sod>> {
    let n = engine.n();
    if n > max_n {
        return Err(Error::Capacity(format!(
            "mutation graphs are built for n <= {max_n}, got {n}"
        )));
    }
    if n < 2 {
        return Ok(Graph::empty());
    }
    let vertices = sod::enumerate_finest_sods(engine)?;
    let g = graph_from_step(vertices, n - 1, |s, i| sod::rho(engine, s, i, Direction::Right))?;
    for &(u, v, i) in &g.edges {
        if sod::rho(engine, &g.vertices[v], i, Direction::Left)? != g.vertices[u] {
            return Err(Error::internal(format!("rho_{i} edge {u} -> {v} is not reversible")));
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionGroup {
    /// The last block, an exceptional object up to shift.
    pub u: Interval,
    /// Vertex indices in the main graph.
    pub members: Vec<usize>,
    /// Induced finest SODs of the quotient, aligned with `members`.
    pub quotient_sods: Vec<Sod>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionDecomposition {
    pub groups: Vec<ReductionGroup>,
}

impl ReductionDecomposition {
    pub fn group_of(&self, vertex: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.members.contains(&vertex))
    }
}

/// Finest SODs of the thick subcategory `ambient`, from exceptional
/// sequences of its members.
fn finest_sods_within(engine: &TypeAEngine, ambient: &ThickSubcat) -> Vec<Vec<Interval>> {
    let target = engine.rank_of(ambient);
    let members: Vec<Interval> = ambient.members().iter().copied().collect();
    let mut out = Vec::new();
    let mut seq = Vec::new();
    fn rec(
        engine: &TypeAEngine,
        members: &[Interval],
        target: usize,
        seq: &mut Vec<Interval>,
        out: &mut Vec<Vec<Interval>>,
    ) {
        if seq.len() == target {
            out.push(seq.clone());
            return;
        }
        for &c in members {
            if seq.iter().all(|&e| e != c && engine.graded_hom_vanishes(c, e)) {
                seq.push(c);
                rec(engine, members, target, seq, out);
                seq.pop();
            }
        }
    }
    rec(engine, &members, target, &mut seq, &mut out);
    out.retain(|s| engine.thick_closure_of(s.iter().copied()) == *ambient);
    out
}

/// Right mutation `rho_i` of a decomposition of a subcategory.
fn rho_within(engine: &TypeAEngine, ambient: &ThickSubcat, blocks: &[ThickSubcat], i: usize) -> Vec<ThickSubcat> {
    let (a, b) = (&blocks[i - 1], &blocks[i]);
    let both = engine.join(a, b);
    let mut out = blocks.to_vec();
    out[i - 1] = engine.perp(a, Side::Right).intersect(ambient).intersect(&both);
    out[i] = a.clone();
    out
}

/// The mutation graph of finest decompositions of `U^perp`, the model for
/// the quotient `D/<U>`.
pub fn quotient_graph(engine: &TypeAEngine, u: Interval) -> Result<Graph<Vec<ThickSubcat>>> {
    let ambient = engine.perp(&ThickSubcat::from_members([u]), Side::Right);
    let seqs = finest_sods_within(engine, &ambient);
    let len = engine.rank_of(&ambient);
    let vertices: Vec<Vec<ThickSubcat>> = seqs
        .iter()
        .map(|s| s.iter().map(|&e| ThickSubcat::from_members([e])).collect())
        .collect();
    if len < 2 {
        return Ok(Graph {
            vertices,
            edges: Vec::new(),
        });
    }
    graph_from_step(vertices, len - 1, |blocks, i| Ok(rho_within(engine, &ambient, blocks, i)))
}

/// Groups vertices by their last block and checks each group against the
/// finest SODs (and mutation graph) of the corresponding quotient.
pub fn reduction_decomposition(engine: &TypeAEngine, g: &Graph<Sod>) -> Result<ReductionDecomposition> {
    let mut by_u: BTreeMap<Interval, Vec<usize>> = BTreeMap::new();
    for (i, s) in g.vertices.iter().enumerate() {
        let last = s.blocks().last().expect("nonempty SOD");
        if last.len() != 1 {
            return Err(Error::invalid("reduction needs finest SODs"));
        }
        by_u.entry(*last.members().iter().next().expect("one member"))
            .or_default()
            .push(i);
    }
    let mut groups = Vec::new();
    for (u, members) in by_u {
        let uu = ThickSubcat::from_members([u]);
        let mut quotient_sods = Vec::new();
        let mut induced: Vec<Vec<ThickSubcat>> = Vec::new();
        for &m in &members {
            let s = &g.vertices[m];
            let blocks: Vec<ThickSubcat> = s.blocks()[..s.len() - 1]
                .iter()
                .map(|b| {
                    let imgs = b
                        .members()
                        .iter()
                        .map(|&x| engine.project_quotient(&uu, &crate::typea::DerivedObject::single(x, 0)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(engine.thick_closure(&imgs))
                })
                .collect::<Result<_>>()?;
            induced.push(blocks.clone());
            if !blocks.is_empty() {
                quotient_sods.push(Sod::from_parts(blocks));
            }
        }
        let q = quotient_graph(engine, u)?;
        let expected: BTreeSet<&Vec<ThickSubcat>> = q.vertices.iter().collect();
        let got: BTreeSet<&Vec<ThickSubcat>> = induced.iter().collect();
        if expected != got || got.len() != members.len() {
            return Err(Error::internal(format!(
                "group of {} does not biject with the finest SODs of its quotient",
                u.name(engine.n())
            )));
        }
        check_group_isomorphism(g, &members, &induced, &q, u, engine.n())?;
        groups.push(ReductionGroup {
            u,
            members,
            quotient_sods,
        });
    }
    Ok(ReductionDecomposition { groups })
}

/// The edges of `g` inside a group must match the quotient graph's edges
/// under the induced labelling.
fn check_group_isomorphism(
    g: &Graph<Sod>,
    members: &[usize],
    induced: &[Vec<ThickSubcat>],
    q: &Graph<Vec<ThickSubcat>>,
    u: Interval,
    n: usize,
) -> Result<()> {
    let to_q: HashMap<usize, usize> = members
        .iter()
        .zip(induced)
        .map(|(&m, blocks)| (m, q.index_of(blocks).expect("bijection checked")))
        .collect();
    let inside: BTreeSet<(usize, usize, usize)> = g
        .edges
        .iter()
        .filter(|(a, b, _)| to_q.contains_key(a) && to_q.contains_key(b))
        .map(|&(a, b, i)| (to_q[&a], to_q[&b], i))
        .collect();
    let expected: BTreeSet<(usize, usize, usize)> = q.edges.iter().copied().collect();
    if inside != expected {
        return Err(Error::internal(format!(
            "group of {} is not isomorphic to the quotient mutation graph",
            u.name(n)
        )));
    }
    Ok(())
}

/// Contracts reduction groups; keeps one `rho_j` edge per crossing label.
pub fn component_graph(g: &Graph<Sod>, red: &ReductionDecomposition) -> Graph<Interval> {
    let vertices: Vec<Interval> = red.groups.iter().map(|gr| gr.u).collect();
    let mut edges = BTreeSet::new();
    for &(a, b, i) in &g.edges {
        let (ga, gb) = (red.group_of(a), red.group_of(b));
        if let (Some(ga), Some(gb)) = (ga, gb) {
            if ga != gb {
                edges.insert((ga, gb, i));
            }
        }
    }
    Graph {
        vertices,
        edges: edges.into_iter().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub holds: bool,
    /// `(U, V)` -> chain `W_1 = U, ..., W_m = V` of linked objects.
    pub chains: BTreeMap<(Interval, Interval), Vec<Interval>>,
    /// Pairs with no chain.
    pub missing: Vec<(Interval, Interval)>,
}

/// Whether `W` and `W'` are linked: some exceptional `K` lies in
/// `W^perp n perp W'`, or in `W'^perp n perp W`.
pub fn linked(engine: &TypeAEngine, w: Interval, w2: Interval) -> Option<Interval> {
    let one = |a: Interval, b: Interval| {
        let right = engine.perp(&ThickSubcat::from_members([a]), Side::Right);
        let left = engine.perp(&ThickSubcat::from_members([b]), Side::Left);
        right.intersect(&left).members().iter().next().copied()
    };
    one(w, w2).or_else(|| one(w2, w))
}

/// Searches linking chains between every ordered pair of finest admissible
/// subcategories `<E>`.
pub fn check_connectedness_criterion(engine: &TypeAEngine) -> Result<CriterionReport> {
    check_connectedness_criterion_capped(engine, MAX_CRITERION_N)
}

pub fn check_connectedness_criterion_capped(engine: &TypeAEngine, max_n: usize) -> Result<CriterionReport> {
    let n = engine.n();
    if n > max_n {
        return Err(Error::Capacity(format!(
            "the chain criterion is searched for n <= {max_n}, got {n}"
        )));
    }
    let objs: Vec<Interval> = engine.intervals().to_vec();
    let k = objs.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in 0..k {
            if i != j && linked(engine, objs[i], objs[j]).is_some() {
                adj[i].push(j);
            }
        }
    }
    let mut chains = BTreeMap::new();
    let mut missing = Vec::new();
    for s in 0..k {
        let mut prev = vec![None; k];
        let mut seen = vec![false; k];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        for t in 0..k {
            if !seen[t] {
                missing.push((objs[s], objs[t]));
                continue;
            }
            let mut path = vec![objs[t]];
            let mut cur = t;
            while let Some(p) = prev[cur] {
                path.push(objs[p]);
                cur = p;
            }
            path.reverse();
            debug_assert!(path.len() <= k);
            chains.insert((objs[s], objs[t]), path);
        }
    }
    Ok(CriterionReport {
        holds: missing.is_empty(),
        chains,
        missing,
    })
}
