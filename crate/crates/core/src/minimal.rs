//! Minimal paths, the smaller-than order, supporting digraphs, distance
//! tables, decomposition into minimal components and structure checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::chain::{boundary, ElementaryPath, IntChain};
use crate::digraph::{Digraph, Subgraph};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::path_complex::{face_blocks, in_omega, FaceBlock};

/// Node cap for the signed-support searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;
/// Node cap for the sub-chain search inside [`is_minimal`].
pub const SUBCHAIN_CAP: u64 = 1 << 20;

/// A minimal path with its supporting digraph and distance tables. All vertex
/// indices refer to the ambient digraph; `supp` carries the translation.
#[derive(Clone, Debug)]
pub struct MinimalPathRecord {
    pub chain: IntChain,
    pub start: usize,
    pub end: usize,
    pub supp: Subgraph,
    pub d_s: BTreeMap<usize, usize>,
    pub d_e: BTreeMap<usize, usize>,
}

impl MinimalPathRecord {
    /// Builds the record for a chain already known to be minimal. The chain
    /// is put in canonical orientation.
    pub fn new(g: &Digraph, chain: &IntChain) -> MinimalPathRecord {
        let chain = canonical_orientation(chain);
        let (start, end) = {
            let p = chain.leading().expect("nonzero minimal path").0;
            (p.start(), p.end())
        };
        let supp = supp(g, &chain);
        let (d_s, d_e) = distance_tables(&chain);
        MinimalPathRecord {
            chain,
            start,
            end,
            supp,
            d_s,
            d_e,
        }
    }

    pub fn degree(&self) -> usize {
        self.chain.degree()
    }

    /// The chain in the local indices of `supp`.
    pub fn chain_in_supp(&self) -> IntChain {
        self.chain.relabel(&self.supp.from_parent)
    }

    /// Number of elementary terms.
    pub fn ne(&self) -> usize {
        self.chain.len()
    }

    /// Number of minimal components of ∂P inside Supp(P).
    pub fn nf(&self) -> Result<usize> {
        if self.degree() == 0 {
            return Ok(0);
        }
        let local = self.chain_in_supp();
        Ok(decompose_into_minimal(&self.supp.graph, &boundary(&local), SeedOrder::Ascending)?.len())
    }

    pub fn format(&self, g: &Digraph) -> String {
        self.chain.format(g)
    }
}

/// Flips the sign so that the lexicographically smallest term is +.
pub fn canonical_orientation(c: &IntChain) -> IntChain {
    match c.leading() {
        Some((_, &x)) if x < 0 => -c,
        _ => c.clone(),
    }
}

/// The smaller-than order: `pp` is nonzero, conformal to `p` coefficientwise and
/// strictly narrower.
pub fn is_smaller(pp: &IntChain, p: &IntChain) -> bool {
    if pp.is_zero() || pp.degree() != p.degree() {
        return false;
    }
    for (q, &d) in pp.terms() {
        let c = p.coeff(q);
        if (c - d).abs() > c.abs() || d.abs() > c.abs() {
            return false;
        }
    }
    pp.width() < p.width()
}

/// Union of edges of the terms of `c` and of the terms of `∂c`, on the
/// vertices of `c`'s terms.
pub fn supp(g: &Digraph, c: &IntChain) -> Subgraph {
    let mut vs = BTreeSet::new();
    let mut es = BTreeSet::new();
    for p in c.paths() {
        vs.extend(p.vertices().iter().copied());
        es.extend(p.edges());
    }
    for p in boundary(c).paths() {
        es.extend(p.edges());
    }
    g.subgraph("Supp", &vs, &es)
}

/// `d_S(v)` and `d_E(v)`: least position of `v` from the front and from the
/// back over all terms.
pub fn distance_tables(c: &IntChain) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let n = c.degree();
    let mut ds: BTreeMap<usize, usize> = BTreeMap::new();
    let mut de: BTreeMap<usize, usize> = BTreeMap::new();
    for p in c.paths() {
        for (i, &v) in p.vertices().iter().enumerate() {
            let a = ds.entry(v).or_insert(i);
            *a = (*a).min(i);
            let b = de.entry(v).or_insert(n - i);
            *b = (*b).min(n - i);
        }
    }
    (ds, de)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Open,
    Out,
    In(i64),
}

/// Depth-first search for ±1 combinations of a face block's columns whose
/// non-allowed faces cancel. Branches on the first open column meeting the
/// first unbalanced face, and stops as soon as the faces balance.
struct SignSearch<'a> {
    block: &'a FaceBlock,
    row_cols: Vec<Vec<(usize, i64)>>,
    /// allowed signs per column; empty means never use the column
    signs: Vec<Vec<i64>>,
    slot: Vec<Slot>,
    sum: Vec<i64>,
    avail: Vec<usize>,
    found: Vec<Vec<(usize, i64)>>,
    nodes: u64,
    budget: u64,
    stop_after_first_minimal: bool,
}

impl<'a> SignSearch<'a> {
    fn new(block: &'a FaceBlock, signs: Vec<Vec<i64>>, budget: u64) -> Self {
        let rows = block.faces.len();
        let mut row_cols = vec![Vec::new(); rows];
        for (c, col) in block.entries.iter().enumerate() {
            for &(r, s) in col {
                row_cols[r].push((c, s));
            }
        }
        let mut avail = vec![0; rows];
        for (r, cols) in row_cols.iter().enumerate() {
            avail[r] = cols.iter().filter(|(c, _)| !signs[*c].is_empty()).count();
        }
        let n = block.paths.len();
        SignSearch {
            block,
            row_cols,
            signs,
            slot: vec![Slot::Open; n],
            sum: vec![0; rows],
            avail,
            found: Vec::new(),
            nodes: 0,
            budget,
            stop_after_first_minimal: false,
        }
    }

    fn decide(&mut self, c: usize, s: Slot) {
        self.slot[c] = s;
        let counted = !self.signs[c].is_empty();
        for &(r, e) in &self.block.entries[c] {
            if counted {
                self.avail[r] -= 1;
            }
            if let Slot::In(x) = s {
                self.sum[r] += x * e;
            }
        }
    }

    fn undo(&mut self, c: usize) {
        let s = self.slot[c];
        let counted = !self.signs[c].is_empty();
        for &(r, e) in &self.block.entries[c] {
            if counted {
                self.avail[r] += 1;
            }
            if let Slot::In(x) = s {
                self.sum[r] -= x * e;
            }
        }
        self.slot[c] = Slot::Open;
    }

    fn current(&self) -> Vec<(usize, i64)> {
        self.slot
            .iter()
            .enumerate()
            .filter_map(|(c, s)| match s {
                Slot::In(x) => Some((c, *x)),
                _ => None,
            })
            .collect()
    }

    fn run(&mut self, seed: usize, sign: i64) -> Result<()> {
        self.decide(seed, Slot::In(sign));
        let r = self.dfs();
        self.undo(seed);
        r.map(|_| ())
    }

    /// Returns Ok(true) when the search should stop early.
    fn dfs(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "minimal path search",
                budget: self.budget,
                partial: self.nodes,
            });
        }
        let mut first = None;
        for r in 0..self.sum.len() {
            let s = self.sum[r];
            if s != 0 {
                if (s.unsigned_abs() as usize) > self.avail[r] {
                    return Ok(false);
                }
                if first.is_none() {
                    first = Some(r);
                }
            }
        }
        let Some(r) = first else {
            let cur = self.current();
            let stop = self.stop_after_first_minimal
                && !has_smaller_subchain(self.block, &cur, SUBCHAIN_CAP)?;
            self.found.push(cur);
            return Ok(stop);
        };
        let Some(&(c, _)) = self.row_cols[r]
            .iter()
            .find(|(c, _)| self.slot[*c] == Slot::Open && !self.signs[*c].is_empty())
        else {
            return Ok(false);
        };
        for x in self.signs[c].clone() {
            self.decide(c, Slot::In(x));
            let stop = self.dfs()?;
            self.undo(c);
            if stop {
                return Ok(true);
            }
        }
        self.decide(c, Slot::Out);
        let stop = self.dfs()?;
        self.undo(c);
        Ok(stop)
    }
}

/// Whether the block combination `cur` (column, coefficient) has a nonzero,
/// strictly narrower, coefficientwise conformal sub-combination whose faces
/// also cancel.
fn has_smaller_subchain(block: &FaceBlock, cur: &[(usize, i64)], cap: u64) -> Result<bool> {
    if cur.is_empty() {
        return Ok(false);
    }
    // restrict to the rows met by these columns
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    for &(c, _) in cur {
        for &(r, _) in &block.entries[c] {
            let k = rows.len();
            rows.entry(r).or_insert(k);
        }
    }
    let nr = rows.len();
    let cols: Vec<Vec<(usize, i64)>> = cur
        .iter()
        .map(|&(c, _)| block.entries[c].iter().map(|&(r, e)| (rows[&r], e)).collect())
        .collect();
    let coeffs: Vec<i64> = cur.iter().map(|&(_, x)| x).collect();
    let g = coeffs.iter().fold(0i64, |a, &x| a.gcd(&x));
    if g > 1 {
        return Ok(true);
    }
    // kernel of the restricted face matrix is spanned by `cur` alone: only
    // multiples of it cancel, and none is narrower when the content is 1
    let mut m = crate::linalg::RationalMatrix::zeros(nr, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &(r, e) in col {
            m.set(r, j, crate::linalg::rat(e));
        }
    }
    if cols.len() - rank(&m) <= 1 {
        return Ok(false);
    }
    // suffix ranges of reachable row contributions
    let k = cols.len();
    let mut lo = vec![vec![0i64; nr]; k + 1];
    let mut hi = vec![vec![0i64; nr]; k + 1];
    for j in (0..k).rev() {
        lo[j] = lo[j + 1].clone();
        hi[j] = hi[j + 1].clone();
        for &(r, e) in &cols[j] {
            let x = e * coeffs[j];
            if x < 0 {
                lo[j][r] += x;
            } else {
                hi[j][r] += x;
            }
        }
    }
    struct St<'b> {
        cols: &'b [Vec<(usize, i64)>],
        coeffs: &'b [i64],
        lo: &'b [Vec<i64>],
        hi: &'b [Vec<i64>],
        sum: Vec<i64>,
        width: i64,
        full: i64,
        nodes: u64,
        cap: u64,
    }
    fn go(st: &mut St, j: usize) -> Result<bool> {
        st.nodes += 1;
        if st.nodes > st.cap {
            return Err(Error::BudgetExceeded {
                what: "sub-chain search",
                budget: st.cap,
                partial: st.nodes,
            });
        }
        for r in 0..st.sum.len() {
            if st.sum[r] + st.lo[j][r] > 0 || st.sum[r] + st.hi[j][r] < 0 {
                return Ok(false);
            }
        }
        if j == st.cols.len() {
            return Ok(st.width > 0 && st.width < st.full);
        }
        let c = st.coeffs[j];
        let mag = c.abs();
        let sg = c.signum();
        for d in 0..=mag {
            for &(r, e) in &st.cols[j] {
                st.sum[r] += e * sg * d;
            }
            st.width += d;
            let hit = go(st, j + 1)?;
            st.width -= d;
            for &(r, e) in &st.cols[j] {
                st.sum[r] -= e * sg * d;
            }
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let full = coeffs.iter().map(|x| x.abs()).sum();
    let mut st = St {
        cols: &cols,
        coeffs: &coeffs,
        lo: &lo,
        hi: &hi,
        sum: vec![0; nr],
        width: 0,
        full,
        nodes: 0,
        cap,
    };
    go(&mut st, 0)
}

/// Minimality of a chain in Ω_n(G; ℤ).
pub fn is_minimal(g: &Digraph, p: &IntChain) -> Result<bool> {
    if !in_omega(g, p) {
        return Err(Error::NotInOmega(p.format(g)));
    }
    if p.is_zero() {
        return Ok(false);
    }
    let ends: BTreeSet<(usize, usize)> = p.paths().map(|q| (q.start(), q.end())).collect();
    if ends.len() > 1 {
        // each endpoint block of p is itself ∂-invariant
        return Ok(false);
    }
    let block = FaceBlock::new(g, p.paths().cloned().collect());
    let cur: Vec<(usize, i64)> = p.terms().enumerate().map(|(i, (_, &x))| (i, x)).collect();
    Ok(!has_smaller_subchain(&block, &cur, SUBCHAIN_CAP)?)
}

/// All minimal n-paths of `g` up to sign, in canonical orientation, sorted.
pub fn enumerate_minimal_paths(g: &Digraph, n: usize) -> Result<Vec<MinimalPathRecord>> {
    enumerate_minimal_paths_with_budget(g, n, DEFAULT_SEARCH_BUDGET)
}

pub fn enumerate_minimal_chains(g: &Digraph, n: usize, budget: u64) -> Result<Vec<IntChain>> {
    let mut out = Vec::new();
    for block in face_blocks(g, n) {
        let m = block.paths.len();
        for seed in 0..m {
            let signs: Vec<Vec<i64>> = (0..m)
                .map(|c| if c > seed { vec![1, -1] } else { vec![] })
                .collect();
            let mut s = SignSearch::new(&block, signs, budget);
            s.run(seed, 1)?;
            for cur in s.found {
                if !has_smaller_subchain(&block, &cur, SUBCHAIN_CAP)? {
                    out.push(IntChain::from_terms(
                        n,
                        cur.iter().map(|&(c, x)| (block.paths[c].clone(), x)),
                    ));
                }
            }
        }
    }
    out.sort_by(|a, b| a.terms().cmp(b.terms()));
    Ok(out)
}

pub fn enumerate_minimal_paths_with_budget(
    g: &Digraph,
    n: usize,
    budget: u64,
) -> Result<Vec<MinimalPathRecord>> {
    Ok(enumerate_minimal_chains(g, n, budget)?
        .iter()
        .map(|c| MinimalPathRecord::new(g, c))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedOrder {
    Ascending,
    Descending,
}

/// A signed minimal component: `sign * record.chain`.
#[derive(Clone, Debug)]
pub struct Component {
    pub sign: i64,
    pub record: MinimalPathRecord,
}

impl Component {
    pub fn chain(&self) -> IntChain {
        self.record.chain.scale(&self.sign)
    }
}

/// Splits a ±1 chain of Ω_n(G; ℤ) into minimal components. Components are
/// returned sorted by their signed chains.
pub fn decompose_into_minimal(g: &Digraph, c: &IntChain, order: SeedOrder) -> Result<Vec<Component>> {
    if !in_omega(g, c) {
        return Err(Error::NotInOmega(c.format(g)));
    }
    let mut groups: BTreeMap<(usize, usize), Vec<(ElementaryPath, i64)>> = BTreeMap::new();
    for (p, &x) in c.terms() {
        groups
            .entry((p.start(), p.end()))
            .or_default()
            .push((p.clone(), x));
    }
    let mut out = Vec::new();
    for (_, terms) in groups {
        let block = FaceBlock::new(g, terms.iter().map(|(p, _)| p.clone()).collect());
        let coeffs: Vec<i64> = terms.iter().map(|&(_, x)| x).collect();
        if coeffs.iter().any(|x| x.abs() != 1) {
            return Err(Error::NotDecomposable(c.format(g)));
        }
        let mut left: BTreeSet<usize> = (0..terms.len()).collect();
        while !left.is_empty() {
            let seed = match order {
                SeedOrder::Ascending => *left.iter().next().unwrap(),
                SeedOrder::Descending => *left.iter().next_back().unwrap(),
            };
            let signs: Vec<Vec<i64>> = (0..terms.len())
                .map(|k| {
                    let ok = left.contains(&k)
                        && match order {
                            SeedOrder::Ascending => k > seed,
                            SeedOrder::Descending => k < seed,
                        };
                    if ok {
                        vec![coeffs[k]]
                    } else {
                        vec![]
                    }
                })
                .collect();
            let mut s = SignSearch::new(&block, signs, DEFAULT_SEARCH_BUDGET);
            s.stop_after_first_minimal = true;
            s.run(seed, coeffs[seed])?;
            let mut pick = None;
            for cur in &s.found {
                if !has_smaller_subchain(&block, cur, SUBCHAIN_CAP)? {
                    pick = Some(cur.clone());
                    break;
                }
            }
            let Some(cur) = pick else {
                return Err(Error::NotDecomposable(c.format(g)));
            };
            for &(k, _) in &cur {
                left.remove(&k);
            }
            let comp = IntChain::from_terms(
                c.degree(),
                cur.iter().map(|&(k, x)| (block.paths[k].clone(), x)),
            );
            let record = MinimalPathRecord::new(g, &comp);
            let sign = if record.chain == comp { 1 } else { -1 };
            out.push(Component { sign, record });
        }
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.chain(), b.chain());
        x.terms().cmp(y.terms())
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    CoefficientNotUnit(String),
    EndpointMismatch(String),
    UnexpectedComponent(String),
    MissingEndComponent(String),
    MissingStartComponent(String),
    RepeatedComponent(String),
    TooManyThroughComponents(usize),
    NonUniqueTwoPath { from: String, to: String, count: usize },
    NotDecomposable(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Checks the structural properties every minimal path should have: unit
/// coefficients, common endpoints, the shape of the minimal components of
/// its boundary, and uniqueness of minimal 2-paths between fixed endpoints of
/// its support. An empty list means everything holds.
pub fn validate_structure_theorem(p: &MinimalPathRecord) -> Vec<Violation> {
    let g = &p.supp.graph;
    let lab = |v: usize| g.label(v).to_string();
    let mut out = Vec::new();
    let local = p.chain_in_supp();
    let n = local.degree();
    let (s, e) = (p.supp.local(p.start).unwrap(), p.supp.local(p.end).unwrap());
    for (q, &x) in local.terms() {
        if x.abs() != 1 {
            out.push(Violation::CoefficientNotUnit(q.format(g)));
        }
        if q.start() != s || q.end() != e {
            out.push(Violation::EndpointMismatch(q.format(g)));
        }
    }
    if n < 2 || !out.is_empty() {
        return out;
    }
    let (ds, de) = distance_tables(&local);
    let e1: BTreeSet<usize> = de.iter().filter(|(_, &d)| d == 1).map(|(&v, _)| v).collect();
    let s1: BTreeSet<usize> = ds.iter().filter(|(_, &d)| d == 1).map(|(&v, _)| v).collect();
    let comps = match decompose_into_minimal(g, &boundary(&local), SeedOrder::Ascending) {
        Ok(c) => c,
        Err(err) => {
            out.push(Violation::NotDecomposable(err.to_string()));
            return out;
        }
    };
    let mut seen_end = BTreeSet::new();
    let mut seen_start = BTreeSet::new();
    let mut through = 0;
    for c in &comps {
        let (a, b) = (c.record.start, c.record.end);
        let text = c.chain().format(g);
        if a == s && b == e {
            through += 1;
        } else if a == s && e1.contains(&b) {
            if !seen_end.insert(b) {
                out.push(Violation::RepeatedComponent(text));
            }
        } else if b == e && s1.contains(&a) {
            if !seen_start.insert(a) {
                out.push(Violation::RepeatedComponent(text));
            }
        } else {
            out.push(Violation::UnexpectedComponent(text));
        }
    }
    for a in e1.difference(&seen_end) {
        out.push(Violation::MissingEndComponent(lab(*a)));
    }
    for b in s1.difference(&seen_start) {
        out.push(Violation::MissingStartComponent(lab(*b)));
    }
    if through > 1 {
        out.push(Violation::TooManyThroughComponents(through));
    }
    match enumerate_minimal_chains(g, 2, DEFAULT_SEARCH_BUDGET) {
        Ok(twos) => {
            let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for t in &twos {
                let q = t.leading().unwrap().0;
                *count.entry((q.start(), q.end())).or_insert(0) += 1;
            }
            for ((a, b), k) in count {
                if k > 1 {
                    out.push(Violation::NonUniqueTwoPath {
                        from: lab(a),
                        to: lab(b),
                        count: k,
                    });
                }
            }
        }
        Err(err) => out.push(Violation::NotDecomposable(err.to_string())),
    }
    out
}
