//! Finite simple digraphs, digraph maps, box products and the named families.
//!
//! Vertices are opaque string tokens. Internally every vertex is addressed by
//! its position in the canonical vertex list, and that position order is the
//! total order used for all tie-breaking downstream.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`cube`].
pub const DEFAULT_CUBE_CAP: usize = 6;

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({}; ", self.name)?;
        let es: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| format!("{}->{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "V={:?}, E=[{}])", self.labels, es.join(", "))
    }
}

/// Builds a digraph from labelled vertices and edges. Duplicate edges are
/// dropped silently.
pub fn build_digraph<S: AsRef<str>>(
    name: &str,
    vertices: &[S],
    edges: &[(S, S)],
) -> Result<Digraph> {
    let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateVertex(l.clone()));
        }
    }
    let mut idx_edges = Vec::with_capacity(edges.len());
    for (a, b) in edges {
        let (a, b) = (a.as_ref(), b.as_ref());
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        let ia = *index.get(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
        let ib = *index.get(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
        idx_edges.push((ia, ib));
    }
    Digraph::from_indices(name, labels, idx_edges)
}

impl Digraph {
    /// Builds from labels and index pairs. Duplicate edges are dropped.
    pub fn from_indices(
        name: &str,
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Digraph> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n {
                return Err(Error::UnknownVertex(format!("#{a}")));
            }
            if b >= n {
                return Err(Error::UnknownVertex(format!("#{b}")));
            }
            if a == b {
                return Err(Error::SelfLoop(labels[a].clone()));
            }
            set.insert((a, b));
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(a, b) in &set {
            out[a].push(b);
            inn[b].push(a);
        }
        for l in inn.iter_mut() {
            l.sort_unstable();
        }
        Ok(Digraph {
            name: name.to_string(),
            labels,
            index,
            out,
            inn,
            edges: set,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Digraph {
        self.name = name.to_string();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    /// Out-neighbours in ascending index order.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// Edges in lexicographic index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges()
            .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect()
    }

    /// True when every vertex label of `self` is a label of `other` and every
    /// edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        let map: Option<Vec<usize>> = self.labels.iter().map(|l| other.index_of(l)).collect();
        match map {
            None => false,
            Some(m) => self.edges().all(|(a, b)| other.has_edge(m[a], m[b])),
        }
    }

    /// Same labels and same labelled edges, ignoring name and vertex order.
    pub fn same_graph(&self, other: &Digraph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.is_subgraph_of(other)
    }

    /// The sub-digraph on `vertices` (kept in this graph's order) with the
    /// given edges, which must be edges of `self`.
    pub fn subgraph(
        &self,
        name: &str,
        vertices: &BTreeSet<usize>,
        edges: &BTreeSet<(usize, usize)>,
    ) -> Subgraph {
        let to_parent: Vec<usize> = vertices.iter().copied().collect();
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in to_parent.iter().enumerate() {
            local[v] = i;
        }
        let labels = to_parent.iter().map(|&v| self.labels[v].clone()).collect();
        let es = edges.iter().map(|&(a, b)| (local[a], local[b]));
        let graph = Digraph::from_indices(name, labels, es).expect("sub-digraph of a valid digraph");
        Subgraph {
            graph,
            to_parent,
            from_parent: local,
        }
    }

    pub fn induced(&self, name: &str, vertices: &BTreeSet<usize>) -> Subgraph {
        let edges = self
            .edges()
            .filter(|(a, b)| vertices.contains(a) && vertices.contains(b))
            .collect();
        self.subgraph(name, vertices, &edges)
    }

    /// Vertices reachable from `v` by directed paths, with BFS distances.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        bfs(v, self.vertex_count(), |u| &self.out[u])
    }

    pub fn distances_to(&self, v: usize) -> Vec<Option<usize>> {
        bfs(v, self.vertex_count(), |u| &self.inn[u])
    }

    /// Number of weakly connected components.
    pub fn weak_components(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &w in self.out[u].iter().chain(self.inn[u].iter()) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

fn bfs<'a>(
    s: usize,
    n: usize,
    next: impl Fn(usize) -> &'a [usize],
) -> Vec<Option<usize>> {
    let mut d = vec![None; n];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        let du = d[u].unwrap();
        for &w in next(u) {
            if d[w].is_none() {
                d[w] = Some(du + 1);
                q.push_back(w);
            }
        }
    }
    d
}

/// A sub-digraph together with the index translation to its parent.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Digraph,
    /// local index -> parent index
    pub to_parent: Vec<usize>,
    /// parent index -> local index (`usize::MAX` when absent)
    pub from_parent: Vec<usize>,
}

impl Subgraph {
    pub fn local(&self, parent: usize) -> Option<usize> {
        match self.from_parent.get(parent) {
            Some(&i) if i != usize::MAX => Some(i),
            _ => None,
        }
    }
}

/// Depth-first cycle detection.
pub fn is_acyclic(g: &Digraph) -> bool {
    // 0 = unvisited, 1 = on stack, 2 = done
    let n = g.vertex_count();
    let mut state = vec![0u8; n];
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        state[s] = 1;
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if *i < g.out[u].len() {
                let w = g.out[u][*i];
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            } else {
                state[u] = 2;
                stack.pop();
            }
        }
    }
    true
}

/// True iff `f` (indexed by source vertex) sends each source edge to a target
/// edge or to a single vertex.
pub fn check_digraph_map(source: &Digraph, target: &Digraph, f: &[usize]) -> bool {
    f.len() == source.vertex_count()
        && f.iter().all(|&v| v < target.vertex_count())
        && source
            .edges()
            .all(|(a, b)| f[a] == f[b] || target.has_edge(f[a], f[b]))
}

/// Image of a digraph map; collapsed edges are dropped.
pub fn image_digraph(source: &Digraph, target: &Digraph, f: &[usize]) -> Result<Subgraph> {
    if !check_digraph_map(source, target, f) {
        return Err(Error::NotDigraphMap(format!(
            "{} -> {}",
            source.name(),
            target.name()
        )));
    }
    let vertices: BTreeSet<usize> = f.iter().copied().collect();
    let edges: BTreeSet<(usize, usize)> = source
        .edges()
        .filter(|&(a, b)| f[a] != f[b])
        .map(|(a, b)| (f[a], f[b]))
        .collect();
    Ok(target.subgraph(&format!("im({})", source.name()), &vertices, &edges))
}

/// `g ∘ f`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&v| g[v]).collect()
}

/// Reads a map given as label pairs into an index vector.
pub fn map_from_labels<S: AsRef<str>>(
    source: &Digraph,
    target: &Digraph,
    pairs: &[(S, S)],
) -> Result<Vec<usize>> {
    let mut f = vec![usize::MAX; source.vertex_count()];
    for (a, b) in pairs {
        f[source.vertex(a.as_ref())?] = target.vertex(b.as_ref())?;
    }
    if let Some(v) = f.iter().position(|&x| x == usize::MAX) {
        return Err(Error::NotDigraphMap(format!(
            "vertex {} unassigned",
            source.label(v)
        )));
    }
    Ok(f)
}

/// Box product. Vertex `(v, w)` has index `v * |H| + w`, which is the
/// lexicographic order on pairs.
pub fn cartesian_product(g: &Digraph, h: &Digraph) -> Digraph {
    let nh = h.vertex_count();
    let mut labels = Vec::with_capacity(g.vertex_count() * nh);
    for a in g.labels() {
        for b in h.labels() {
            labels.push(format!("({a},{b})"));
        }
    }
    let mut edges = Vec::new();
    for v in 0..g.vertex_count() {
        for (w, w2) in h.edges() {
            edges.push((v * nh + w, v * nh + w2));
        }
    }
    for (v, v2) in g.edges() {
        for w in 0..nh {
            edges.push((v * nh + w, v2 * nh + w));
        }
    }
    Digraph::from_indices(&format!("{}x{}", g.name(), h.name()), labels, edges)
        .expect("product of valid digraphs")
}

/// The one-edge digraph `0 -> 1`.
pub fn interval() -> Digraph {
    build_digraph("I", &["0", "1"], &[("0", "1")]).unwrap()
}

/// `I^{⊠n}`. Vertices are bit strings `c1…cn`; the index of a vertex is the
/// bit string read as a binary number, so `c1` is the most significant bit.
pub fn cube(n: usize) -> Result<Digraph> {
    cube_with_cap(n, DEFAULT_CUBE_CAP)
}

pub fn cube_with_cap(n: usize, cap: usize) -> Result<Digraph> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "cube dimension",
            requested: n,
            cap,
        });
    }
    let size = 1usize << n;
    let labels = (0..size)
        .map(|x| {
            if n == 0 {
                "0".to_string()
            } else {
                format!("{:0width$b}", x, width = n)
            }
        })
        .collect();
    let mut edges = Vec::new();
    for x in 0..size {
        for b in 0..n {
            if x & (1 << b) == 0 {
                edges.push((x, x | (1 << b)));
            }
        }
    }
    Digraph::from_indices(&format!("I^{n}"), labels, edges)
}

/// Line digraph on `0..=n`; `signs[i] == true` gives `i -> i+1`, otherwise
/// `i+1 -> i`.
pub fn line_digraph(signs: &[bool]) -> Digraph {
    let labels = (0..=signs.len()).map(|i| i.to_string()).collect();
    let edges = signs
        .iter()
        .enumerate()
        .map(|(i, &s)| if s { (i, i + 1) } else { (i + 1, i) });
    let pattern: String = signs.iter().map(|&s| if s { '+' } else { '-' }).collect();
    Digraph::from_indices(&format!("I[{pattern}]"), labels, edges).unwrap()
}

/// Directed circulant digraph: `v -> v + γ (mod n)` for each jump γ.
pub fn circulant(n: usize, jumps: &[usize]) -> Result<Digraph> {
    let ok = n >= 1
        && !jumps.is_empty()
        && jumps[0] >= 1
        && jumps.windows(2).all(|w| w[0] <= w[1])
        && jumps.iter().all(|&j| j <= n / 2);
    if !ok {
        return Err(Error::BadJump(jumps.to_vec()));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for v in 0..n {
        for &j in jumps {
            edges.push((v, (v + j) % n));
        }
    }
    let js: Vec<String> = jumps.iter().map(|j| j.to_string()).collect();
    Digraph::from_indices(&format!("C{}^{{{}}}", n, js.join(",")), labels, edges)
}

/// Directed Johnson digraph on the k-subsets of {1..n}: `a -> b` when `b` is
/// obtained from `a` by replacing one element with a smaller one not in `a`.
pub fn johnson(n: usize, k: usize) -> Result<Digraph> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::BadParameter(format!("johnson({n},{k})")));
    }
    let subsets: Vec<Vec<usize>> = k_subsets(n, k);
    let labels: Vec<String> = subsets
        .iter()
        .map(|s| {
            let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let pos: HashMap<Vec<usize>, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let mut edges = Vec::new();
    for (i, a) in subsets.iter().enumerate() {
        for &c0 in a {
            for c1 in 1..c0 {
                if a.contains(&c1) {
                    continue;
                }
                let mut b: Vec<usize> = a.iter().copied().filter(|&x| x != c0).collect();
                b.push(c1);
                b.sort_unstable();
                edges.push((i, pos[&b]));
            }
        }
    }
    Digraph::from_indices(&format!("J({n},{k})"), labels, edges)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// `S_k`: vertices `S, 1..k, E` with `S -> i -> E`.
pub fn k_square(k: usize) -> Result<Digraph> {
    if k == 0 {
        return Err(Error::BadParameter("k_square needs k >= 1".into()));
    }
    let mut labels = vec!["S".to_string()];
    labels.extend((1..=k).map(|i| i.to_string()));
    labels.push("E".to_string());
    let e = k + 1;
    let edges = (1..=k).flat_map(|i| [(0, i), (i, e)]);
    Digraph::from_indices(&format!("S_{k}"), labels, edges)
}

/// The nine-vertex exotic cube.
pub fn exotic_cube() -> Digraph {
    let labels = (0..9).map(|i| i.to_string()).collect();
    let edges = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 5),
        (1, 8),
        (2, 5),
        (2, 6),
        (3, 6),
        (3, 7),
        (4, 7),
        (4, 8),
        (5, 8),
        (6, 8),
        (7, 8),
    ];
    Digraph::from_indices("exotic-cube", labels, edges).unwrap()
}

/// A single vertex.
pub fn point() -> Digraph {
    build_digraph::<&str>("pt", &["*"], &[]).unwrap()
}

/// Names accepted by [`generate`].
pub const FAMILIES: &[&str] = &["circulant", "johnson", "cube", "ksquare", "line", "exotic", "point", "interval"];

/// Builds a named family from textual parameters, e.g. `circulant 5 1,2`,
/// `johnson 4 2`, `cube 3`, `ksquare 4`, `line +-+`, `exotic`.
pub fn generate<S: AsRef<str>>(family: &str, params: &[S]) -> Result<Digraph> {
    let ps: Vec<&str> = params.iter().map(|s| s.as_ref()).collect();
    let bad = || Error::BadParameter(format!("{family} {}", ps.join(" ")));
    let int = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match (family, ps.as_slice()) {
        ("circulant", [n, js]) => {
            let jumps = js.split(',').map(|j| int(j.trim())).collect::<Result<Vec<_>>>()?;
            circulant(int(n)?, &jumps)
        }
        ("johnson", [n, k]) => johnson(int(n)?, int(k)?),
        ("cube", [n]) => cube(int(n)?),
        ("ksquare", [k]) => k_square(int(k)?),
        ("line", []) => Ok(line_digraph(&[])),
        ("line", [pattern]) => {
            let signs = pattern
                .chars()
                .map(|c| match c {
                    '+' => Ok(true),
                    '-' => Ok(false),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(line_digraph(&signs))
        }
        ("exotic", []) => Ok(exotic_cube()),
        ("point", []) => Ok(point()),
        ("interval", []) => Ok(interval()),
        _ => Err(bad()),
    }
}
