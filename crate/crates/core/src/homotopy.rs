//! Digraph homotopies: witness checks, retractions, a bounded search for
//! contractions and the chain homotopy induced by a one-step homotopy.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use serde::Serialize;

use crate::chain::{boundary, cross_product, push_forward, ElementaryPath, IntChain};
use crate::digraph::{cartesian_product, check_digraph_map, line_digraph, Digraph};
use crate::error::{Error, Result};

pub const DEFAULT_HOMOTOPY_BUDGET: u64 = 2_000_000;

/// A map `F: G ⊠ I_n → H`; the vertex `(v, t)` has index `v * (n + 1) + t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyWitness {
    /// `signs[i]` is true for the edge `i -> i+1`
    pub signs: Vec<bool>,
    pub map: Vec<usize>,
}

impl HomotopyWitness {
    pub fn steps(&self) -> usize {
        self.signs.len()
    }

    /// The slice `F|_{G ⊠ {t}}`.
    pub fn slice(&self, t: usize) -> Vec<usize> {
        let m = self.steps() + 1;
        (0..self.map.len() / m).map(|v| self.map[v * m + t]).collect()
    }

    /// Stacks consecutive one-step homotopies `maps[i] ~ maps[i+1]`.
    pub fn from_steps(src: &Digraph, tgt: &Digraph, maps: &[Vec<usize>]) -> Result<HomotopyWitness> {
        if maps.is_empty() {
            return Err(Error::BadParameter("homotopy needs at least one map".into()));
        }
        let mut signs = Vec::new();
        for w in maps.windows(2) {
            match one_step_direction(src, tgt, &w[0], &w[1]) {
                Some(d) => signs.push(d),
                None => {
                    return Err(Error::NotDigraphMap(format!(
                        "no one-step homotopy between consecutive maps in {}",
                        tgt.name()
                    )))
                }
            }
        }
        let m = maps.len();
        let map = (0..src.vertex_count())
            .flat_map(|v| maps.iter().map(move |f| f[v]))
            .collect::<Vec<_>>();
        debug_assert_eq!(map.len(), src.vertex_count() * m);
        Ok(HomotopyWitness { signs, map })
    }
}

/// `Some(true)` if `f(v) = g(v)` or `f(v) → g(v)` for all `v`, `Some(false)`
/// if the reverse holds instead, `None` if neither. Both maps must be
/// digraph maps.
pub fn one_step_direction(src: &Digraph, tgt: &Digraph, f: &[usize], g: &[usize]) -> Option<bool> {
    if !check_digraph_map(src, tgt, f) || !check_digraph_map(src, tgt, g) {
        return None;
    }
    let fwd = f.iter().zip(g).all(|(&a, &b)| a == b || tgt.has_edge(a, b));
    if fwd {
        return Some(true);
    }
    let bwd = f.iter().zip(g).all(|(&a, &b)| a == b || tgt.has_edge(b, a));
    bwd.then_some(false)
}

/// True iff the witness is a digraph map `G ⊠ I_n → H` restricting to `f`
/// and `g` at the two ends.
pub fn verify_homotopy(src: &Digraph, tgt: &Digraph, f: &[usize], g: &[usize], w: &HomotopyWitness) -> bool {
    let line = line_digraph(&w.signs);
    let prod = cartesian_product(src, &line);
    if w.map.len() != prod.vertex_count() || !check_digraph_map(&prod, tgt, &w.map) {
        return false;
    }
    w.slice(0) == f && w.slice(w.steps()) == g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionCheck {
    pub digraph_map: bool,
    pub identity_on_sub: bool,
}

impl RetractionCheck {
    pub fn holds(&self) -> bool {
        self.digraph_map && self.identity_on_sub
    }
}

/// `r` sends each vertex of `g` to a vertex of `sub`, where `sub`'s
/// vertices are matched to `g`'s by label.
pub fn verify_retraction(g: &Digraph, sub: &Digraph, r: &[usize]) -> RetractionCheck {
    let digraph_map = check_digraph_map(g, sub, r);
    let identity_on_sub = r.len() == g.vertex_count()
        && sub
            .labels()
            .iter()
            .enumerate()
            .all(|(i, l)| g.index_of(l).is_some_and(|v| r[v] == i));
    RetractionCheck {
        digraph_map,
        identity_on_sub,
    }
}

/// All digraph self-maps one step away from `f` in the given direction.
fn one_step_neighbors(g: &Digraph, f: &[usize], forward: bool, out: &mut Vec<Vec<usize>>, nodes: &mut u64) {
    let n = g.vertex_count();
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut c = vec![f[v]];
            c.extend_from_slice(if forward {
                g.out_neighbors(f[v])
            } else {
                g.in_neighbors(f[v])
            });
            c
        })
        .collect();
    let mut cur = vec![0; n];
    fn rec(
        g: &Digraph,
        cands: &[Vec<usize>],
        v: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
    ) {
        *nodes += 1;
        if v == cands.len() {
            out.push(cur.clone());
            return;
        }
        for &x in &cands[v] {
            let ok = g
                .in_neighbors(v)
                .iter()
                .filter(|&&u| u < v)
                .all(|&u| cur[u] == x || g.has_edge(cur[u], x))
                && g
                    .out_neighbors(v)
                    .iter()
                    .filter(|&&u| u < v)
                    .all(|&u| cur[u] == x || g.has_edge(x, cur[u]));
            if ok {
                cur[v] = x;
                rec(g, cands, v + 1, cur, out, nodes);
            }
        }
    }
    rec(g, &cands, 0, &mut cur, out, nodes);
}

/// Searches for a sequence of one-step homotopies from the identity of `g`
/// to a constant map, preferring maps with small images. `Ok(None)` means
/// nothing was found within `max_steps`; it says nothing about
/// contractibility.
pub fn search_contraction(g: &Digraph, max_steps: usize, budget: u64) -> Result<Option<Vec<Vec<usize>>>> {
    let id: Vec<usize> = (0..g.vertex_count()).collect();
    let image = |f: &[usize]| f.iter().collect::<BTreeSet<_>>().len();
    if image(&id) <= 1 {
        return Ok(Some(vec![id]));
    }
    let mut parent: HashMap<Vec<usize>, Option<Vec<usize>>> = HashMap::new();
    let mut heap = BinaryHeap::new();
    parent.insert(id.clone(), None);
    heap.push(Reverse((image(&id), 0usize, id)));
    let mut nodes = 0u64;
    while let Some(Reverse((_, d, f))) = heap.pop() {
        if d >= max_steps {
            continue;
        }
        let mut nbrs = Vec::new();
        one_step_neighbors(g, &f, true, &mut nbrs, &mut nodes);
        one_step_neighbors(g, &f, false, &mut nbrs, &mut nodes);
        if nodes > budget {
            return Err(Error::BudgetExceeded {
                what: "contraction search",
                budget,
                partial: parent.len() as u64,
            });
        }
        for h in nbrs {
            if parent.contains_key(&h) {
                continue;
            }
            parent.insert(h.clone(), Some(f.clone()));
            if image(&h) == 1 {
                let mut chain = vec![h];
                while let Some(Some(p)) = parent.get(chain.last().unwrap()) {
                    chain.push(p.clone());
                }
                chain.reverse();
                return Ok(Some(chain));
            }
            heap.push(Reverse((image(&h), d + 1, h)));
        }
    }
    Ok(None)
}

/// For a forward one-step homotopy `f → g` of maps `src → tgt`, checks
/// `∂L + L∂ = g_* − f_*` on `c`, where `L(v) = (−1)^p F_*(v × e01)`.
pub fn chain_homotopy_check(f: &[usize], g: &[usize], c: &IntChain) -> bool {
    let l = |x: &IntChain| -> IntChain {
        let e01 = IntChain::elementary(ElementaryPath(vec![0, 1]));
        let big: Vec<usize> = f.iter().zip(g).flat_map(|(&a, &b)| [a, b]).collect();
        let y = push_forward(&big, &cross_product(x, &e01, 2));
        if x.degree() % 2 == 1 {
            -&y
        } else {
            y
        }
    };
    let lhs = if c.degree() == 0 {
        boundary(&l(c))
    } else {
        &boundary(&l(c)) + &l(&boundary(c))
    };
    lhs == &push_forward(g, c) - &push_forward(f, c)
}
