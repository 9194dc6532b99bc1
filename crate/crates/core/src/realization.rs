//! Singular cubical realizations of minimal paths: witness search, the cheap
//! counting bounds that rule realizations out, and admissible sets.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::chain::{boundary, omega, push_forward, IntChain};
use crate::digraph::{check_digraph_map, cube, image_digraph, Digraph};
use crate::error::{Error, Result};
use crate::minimal::{decompose_into_minimal, enumerate_minimal_paths, MinimalPathRecord, SeedOrder};

pub const DEFAULT_REALIZATION_BUDGET: u64 = 20_000_000;

/// A minimal path together with a cube map realizing it.
#[derive(Clone, Debug)]
pub struct AdmissiblePair {
    pub path: MinimalPathRecord,
    /// Indexed by cube vertex, valued in the ambient digraph.
    pub witness: Vec<usize>,
    pub scale: i64,
}

impl AdmissiblePair {
    pub fn degree(&self) -> usize {
        self.path.degree()
    }

    /// Re-derives all three defining properties from scratch.
    pub fn verify(&self, g: &Digraph) -> std::result::Result<(), String> {
        let c = verify_witness(g, &self.path, &self.witness)?;
        if c != self.scale {
            return Err(format!("scale {} recorded, {} computed", self.scale, c));
        }
        let top = self.witness.len() - 1;
        if self.witness[0] != self.path.start || self.witness[top] != self.path.end {
            return Err("corner vertices not sent to S and E".into());
        }
        Ok(())
    }

    /// `cube vertex label -> target label` pairs.
    pub fn witness_labels(&self, g: &Digraph) -> Vec<(String, String)> {
        let q = cube(self.degree()).expect("degree within cube cap");
        self.witness
            .iter()
            .enumerate()
            .map(|(x, &v)| (q.label(x).to_string(), g.label(v).to_string()))
            .collect()
    }
}

/// Checks that `f: I^⊠n → G` is a digraph map whose image digraph is
/// Supp(P) and with `f_*(ω_n) = cP`, `c ≠ 0`. Returns `c`.
pub fn verify_witness(g: &Digraph, p: &MinimalPathRecord, f: &[usize]) -> std::result::Result<i64, String> {
    let n = p.degree();
    let q = cube(n).map_err(|e| e.to_string())?;
    if f.len() != q.vertex_count() {
        return Err(format!("map has {} values, cube has {} vertices", f.len(), q.vertex_count()));
    }
    if !check_digraph_map(&q, g, f) {
        return Err("not a digraph map".into());
    }
    let im = image_digraph(&q, g, f).map_err(|e| e.to_string())?;
    if !im.graph.same_graph(&p.supp.graph) || im.to_parent != p.supp.to_parent {
        return Err("image digraph differs from Supp(P)".into());
    }
    let pf = push_forward(f, &omega(n).map_err(|e| e.to_string())?);
    proportional(&pf, &p.chain).ok_or_else(|| "pushed-forward cube is not a multiple of P".into())
}

/// `Some(c)` with `a = c·b`, `c ≠ 0`.
fn proportional(a: &IntChain, b: &IntChain) -> Option<i64> {
    let (lead, &y) = b.leading()?;
    let x = a.coeff(lead);
    if x == 0 || x % y != 0 {
        return None;
    }
    let c = x / y;
    (a == &b.scale(&c)).then_some(c)
}

struct Search<'a> {
    supp: &'a Digraph,
    cube: Digraph,
    order: Vec<usize>,
    domains: Vec<Vec<usize>>,
    weight_one: Vec<bool>,
    f: Vec<Option<usize>>,
    vcover: Vec<usize>,
    ecover: BTreeMap<(usize, usize), usize>,
    uncovered_v: usize,
    uncovered_e: usize,
    assigned_edges: usize,
    omega: IntChain,
    target: IntChain,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn assign(&mut self, x: usize, v: usize) -> Vec<(usize, usize)> {
        self.f[x] = Some(v);
        if self.vcover[v] == 0 {
            self.uncovered_v -= 1;
        }
        self.vcover[v] += 1;
        let mut hit = Vec::new();
        let nbrs: Vec<(usize, usize)> = self
            .cube
            .out_neighbors(x)
            .iter()
            .map(|&y| (x, y))
            .chain(self.cube.in_neighbors(x).iter().map(|&y| (y, x)))
            .collect();
        for (a, b) in nbrs {
            if let (Some(fa), Some(fb)) = (self.f[a], self.f[b]) {
                self.assigned_edges += 1;
                if fa != fb {
                    let c = self.ecover.get_mut(&(fa, fb)).expect("checked edge");
                    if *c == 0 {
                        self.uncovered_e -= 1;
                    }
                    *c += 1;
                    hit.push((fa, fb));
                }
            }
        }
        hit
    }

    fn unassign(&mut self, x: usize, v: usize, hit: &[(usize, usize)]) {
        for (a, b) in self.cube.out_neighbors(x).iter().map(|&y| (x, y)).chain(
            self.cube.in_neighbors(x).iter().map(|&y| (y, x)),
        ) {
            if self.f[a].is_some() && self.f[b].is_some() {
                self.assigned_edges -= 1;
            }
        }
        for e in hit {
            let c = self.ecover.get_mut(e).unwrap();
            *c -= 1;
            if *c == 0 {
                self.uncovered_e += 1;
            }
        }
        self.vcover[v] -= 1;
        if self.vcover[v] == 0 {
            self.uncovered_v += 1;
        }
        self.f[x] = None;
    }

    fn compatible(&self, x: usize, v: usize) -> bool {
        let ok = |a: usize, b: usize| a == b || self.supp.has_edge(a, b);
        self.cube
            .out_neighbors(x)
            .iter()
            .all(|&y| self.f[y].is_none_or(|w| ok(v, w)))
            && self
                .cube
                .in_neighbors(x)
                .iter()
                .all(|&y| self.f[y].is_none_or(|w| ok(w, v)))
    }

    fn dfs(&mut self, k: usize, last_w1: usize) -> Result<Option<(Vec<usize>, i64)>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "realization search",
                budget: self.budget,
                partial: self.nodes,
            });
        }
        let left = self.order.len() - k;
        if self.uncovered_v > left {
            return Ok(None);
        }
        if self.uncovered_e > self.cube.edge_count() - self.assigned_edges {
            return Ok(None);
        }
        if k == self.order.len() {
            let f: Vec<usize> = self.f.iter().map(|v| v.unwrap()).collect();
            let pf = push_forward(&f, &self.omega);
            return Ok(proportional(&pf, &self.target).map(|c| (f, c)));
        }
        let x = self.order[k];
        for i in 0..self.domains[x].len() {
            let v = self.domains[x][i];
            if self.weight_one[x] && v < last_w1 {
                continue;
            }
            if !self.compatible(x, v) {
                continue;
            }
            let hit = self.assign(x, v);
            let next_w1 = if self.weight_one[x] { v } else { last_w1 };
            let r = self.dfs(k + 1, next_w1);
            self.unassign(x, v, &hit);
            if let Some(found) = r? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// First realization of `p` in canonical search order, if any.
pub fn find_realization(g: &Digraph, p: &MinimalPathRecord) -> Result<Option<AdmissiblePair>> {
    find_realization_with_budget(g, p, DEFAULT_REALIZATION_BUDGET)
}

pub fn find_realization_with_budget(
    _g: &Digraph,
    p: &MinimalPathRecord,
    budget: u64,
) -> Result<Option<AdmissiblePair>> {
    let n = p.degree();
    let q = cube(n)?;
    let supp = &p.supp.graph;
    let s = p.supp.local(p.start).unwrap();
    let e = p.supp.local(p.end).unwrap();
    let from_s = supp.distances_from(s);
    let to_e = supp.distances_to(e);
    let top = q.vertex_count() - 1;
    let weight = |x: usize| x.count_ones() as usize;
    let mut order: Vec<usize> = (0..q.vertex_count()).collect();
    order.sort_by_key(|&x| (weight(x), x));
    let domains: Vec<Vec<usize>> = (0..q.vertex_count())
        .map(|x| {
            if x == 0 {
                return vec![s];
            }
            if x == top {
                return vec![e];
            }
            let w = weight(x);
            (0..supp.vertex_count())
                .filter(|&v| {
                    from_s[v].is_some_and(|d| d <= w) && to_e[v].is_some_and(|d| d <= n - w)
                })
                .collect()
        })
        .collect();
    let ecover: BTreeMap<(usize, usize), usize> = supp.edges().map(|e| (e, 0)).collect();
    let mut st = Search {
        supp,
        order,
        domains,
        weight_one: (0..q.vertex_count()).map(|x| weight(x) == 1).collect(),
        f: vec![None; q.vertex_count()],
        vcover: vec![0; supp.vertex_count()],
        uncovered_v: supp.vertex_count(),
        uncovered_e: ecover.len(),
        ecover,
        assigned_edges: 0,
        omega: omega(n)?,
        target: p.chain_in_supp(),
        nodes: 0,
        budget,
        cube: q,
    };
    Ok(st.dfs(0, 0)?.map(|(f, scale)| AdmissiblePair {
        path: p.clone(),
        witness: f.iter().map(|&v| p.supp.to_parent[v]).collect(),
        scale,
    }))
}

/// A counting bound that rules out any realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Rejection {
    Vertices { count: usize, bound: usize },
    Edges { count: usize, bound: usize },
    ElementaryTerms { count: usize, bound: usize },
    FaceComponents { count: usize, bound: usize },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, c, b) = match self {
            Rejection::Vertices { count, bound } => ("vertices", count, bound),
            Rejection::Edges { count, bound } => ("edges", count, bound),
            Rejection::ElementaryTerms { count, bound } => ("elementary terms", count, bound),
            Rejection::FaceComponents { count, bound } => ("face components", count, bound),
        };
        write!(f, "{what}: {c} > {b}")
    }
}

/// The first violated counting bound for degree `n`, or `None`.
pub fn quick_reject(p: &MinimalPathRecord, n: usize) -> Result<Option<Rejection>> {
    Ok(all_rejections(p, n)?.into_iter().next())
}

/// Every violated counting bound, in the order vertices, edges, terms, faces.
pub fn all_rejections(p: &MinimalPathRecord, n: usize) -> Result<Vec<Rejection>> {
    let mut out = Vec::new();
    let v = p.supp.graph.vertex_count();
    if v > 1 << n {
        out.push(Rejection::Vertices { count: v, bound: 1 << n });
    }
    let e = p.supp.graph.edge_count();
    let eb = if n == 0 { 0 } else { n << (n - 1) };
    if e > eb {
        out.push(Rejection::Edges { count: e, bound: eb });
    }
    let ne = p.ne();
    let fact: usize = (1..=n).product();
    if ne > fact {
        out.push(Rejection::ElementaryTerms { count: ne, bound: fact });
    }
    let nf = p.nf()?;
    if nf > 2 * n {
        out.push(Rejection::FaceComponents { count: nf, bound: 2 * n });
    }
    Ok(out)
}

/// Outcome of the admissibility test for one minimal path.
#[derive(Clone, Debug)]
pub enum Admissibility {
    Admissible(AdmissiblePair),
    Rejected(Rejection),
    NoRealization,
}

pub fn classify(g: &Digraph, p: &MinimalPathRecord) -> Result<Admissibility> {
    classify_with_budget(g, p, DEFAULT_REALIZATION_BUDGET)
}

pub fn classify_with_budget(g: &Digraph, p: &MinimalPathRecord, budget: u64) -> Result<Admissibility> {
    if let Some(r) = quick_reject(p, p.degree())? {
        return Ok(Admissibility::Rejected(r));
    }
    Ok(match find_realization_with_budget(g, p, budget)? {
        Some(pair) => Admissibility::Admissible(pair),
        None => Admissibility::NoRealization,
    })
}

pub fn is_admissible(g: &Digraph, p: &MinimalPathRecord) -> Result<bool> {
    Ok(matches!(classify(g, p)?, Admissibility::Admissible(_)))
}

/// All admissible minimal n-paths with one witness each.
pub fn admissible_set(g: &Digraph, n: usize) -> Result<Vec<AdmissiblePair>> {
    let mut out = Vec::new();
    for p in enumerate_minimal_paths(g, n)? {
        if let Admissibility::Admissible(pair) = classify(g, &p)? {
            out.push(pair);
        }
    }
    Ok(out)
}

/// Minimal components of `∂P` that are not admissible, formatted. Empty
/// when every face is admissible.
pub fn check_face_admissibility(g: &Digraph, pair: &AdmissiblePair) -> Result<Vec<String>> {
    if pair.degree() == 0 {
        return Ok(Vec::new());
    }
    let mut bad = Vec::new();
    for c in decompose_into_minimal(g, &boundary(&pair.path.chain), SeedOrder::Ascending)? {
        if !is_admissible(g, &c.record)? {
            bad.push(c.chain().format(g));
        }
    }
    Ok(bad)
}
