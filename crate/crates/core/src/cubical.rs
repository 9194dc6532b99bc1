//! Singular cubical chains in bounded degree: enumeration of cube maps,
//! normalized boundaries, homology and the comparison with cellular
//! homology.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cellular::cellular_homology;
use crate::chain::{boundary, omega, push_forward, IntChain};
use crate::digraph::{cube, is_acyclic, Digraph};
use crate::error::{Error, Result};
use crate::linalg::{rat, Echelon, SparseVec};
use crate::path_complex::{DegreeReport, HomologyReport};

pub const DEFAULT_CUBICAL_CAP: usize = 3;
pub const DEFAULT_CUBICAL_BUDGET: u64 = 5_000_000;

/// A singular n-cube: the image of each cube vertex, indexed as in
/// [`crate::digraph::cube`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularCube {
    pub degree: usize,
    pub map: Vec<usize>,
}

impl SingularCube {
    pub fn new(g: &Digraph, map: Vec<usize>) -> Result<SingularCube> {
        let degree = map.len().trailing_zeros() as usize;
        if map.len() != 1 << degree {
            return Err(Error::BadParameter(format!("{} values do not fill a cube", map.len())));
        }
        let q = cube(degree)?;
        if !crate::digraph::check_digraph_map(&q, g, &map) {
            return Err(Error::NotDigraphMap(format!("{degree}-cube into {}", g.name())));
        }
        Ok(SingularCube { degree, map })
    }

    /// Independent of some coordinate.
    pub fn is_degenerate(&self) -> bool {
        (0..self.degree).any(|b| {
            let bit = 1 << b;
            (0..self.map.len())
                .filter(|x| x & bit == 0)
                .all(|x| self.map[x] == self.map[x | bit])
        })
    }

    /// `φ ∘ F_{jε}`, `j` in `1..=n` counted from the most significant bit.
    pub fn face(&self, j: usize, eps: usize) -> SingularCube {
        let n = self.degree;
        let k = n - j;
        let low = (1usize << k) - 1;
        let map = (0..1usize << (n - 1))
            .map(|y| {
                let hi = y >> k;
                let lo = y & low;
                self.map[(hi << (k + 1)) | (eps << k) | lo]
            })
            .collect();
        SingularCube { degree: n - 1, map }
    }

    pub fn format(&self, g: &Digraph) -> String {
        let parts: Vec<&str> = self.map.iter().map(|&v| g.label(v)).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Formal integer sums of nondegenerate cubes.
pub type CubicalChain = BTreeMap<SingularCube, i64>;

pub fn add_cube(c: &mut CubicalChain, q: SingularCube, x: i64) {
    if x == 0 || q.is_degenerate() {
        return;
    }
    let e = c.entry(q.clone()).or_insert(0);
    *e += x;
    if *e == 0 {
        c.remove(&q);
    }
}

/// `∂^c` modulo degenerate cubes.
pub fn cubical_boundary(q: &SingularCube) -> CubicalChain {
    let mut out = CubicalChain::new();
    if q.degree == 0 {
        return out;
    }
    for j in 1..=q.degree {
        let s = if j % 2 == 0 { 1 } else { -1 };
        add_cube(&mut out, q.face(j, 0), s);
        add_cube(&mut out, q.face(j, 1), -s);
    }
    out
}

pub fn cubical_boundary_of_chain(c: &CubicalChain) -> CubicalChain {
    let mut out = CubicalChain::new();
    for (q, &x) in c {
        for (f, y) in cubical_boundary(q) {
            add_cube(&mut out, f, x * y);
        }
    }
    out
}

/// All digraph maps `I^⊠n → G` in lexicographic order of assignments.
pub fn enumerate_singular_cubes(g: &Digraph, n: usize, budget: u64) -> Result<Vec<SingularCube>> {
    if n > DEFAULT_CUBICAL_CAP + 1 {
        return Err(Error::CapExceeded {
            what: "cubical degree",
            requested: n,
            cap: DEFAULT_CUBICAL_CAP + 1,
        });
    }
    let q = cube(n)?;
    let mut out = Vec::new();
    let mut f = vec![0usize; q.vertex_count()];
    let mut nodes = 0u64;
    fn rec(
        g: &Digraph,
        q: &Digraph,
        x: usize,
        f: &mut Vec<usize>,
        out: &mut Vec<SingularCube>,
        nodes: &mut u64,
        budget: u64,
        n: usize,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded {
                what: "singular cube enumeration",
                budget,
                partial: out.len() as u64,
            });
        }
        if x == f.len() {
            out.push(SingularCube { degree: n, map: f.clone() });
            return Ok(());
        }
        let ins = q.in_neighbors(x);
        let candidates: Vec<usize> = match ins.first() {
            None => (0..g.vertex_count()).collect(),
            Some(&y) => {
                let mut c = vec![f[y]];
                c.extend_from_slice(g.out_neighbors(f[y]));
                c.sort_unstable();
                c
            }
        };
        for v in candidates {
            if ins.iter().all(|&y| f[y] == v || g.has_edge(f[y], v)) {
                f[x] = v;
                rec(g, q, x + 1, f, out, nodes, budget, n)?;
            }
        }
        Ok(())
    }
    rec(g, &q, 0, &mut f, &mut out, &mut nodes, budget, n)?;
    Ok(out)
}

pub fn nondegenerate_cubes(g: &Digraph, n: usize, budget: u64) -> Result<Vec<SingularCube>> {
    Ok(enumerate_singular_cubes(g, n, budget)?
        .into_iter()
        .filter(|q| !q.is_degenerate())
        .collect())
}

/// Singular cubical homology in degrees `0..=max_degree`. Cubes of degree
/// `max_degree + 1` are enumerated when that is within `cap`; otherwise the
/// top degree is only an upper bound.
pub fn cubical_homology_with(
    g: &Digraph,
    max_degree: usize,
    reduced: bool,
    cap: usize,
    budget: u64,
) -> Result<HomologyReport> {
    if max_degree > cap {
        return Err(Error::CapExceeded {
            what: "cubical degree",
            requested: max_degree,
            cap,
        });
    }
    let top = (max_degree + 1).min(cap);
    let mut cubes: Vec<Vec<SingularCube>> = Vec::new();
    for n in 0..=top {
        cubes.push(nondegenerate_cubes(g, n, budget)?);
    }
    let index: Vec<HashMap<&SingularCube, usize>> = cubes
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, q)| (q, i)).collect())
        .collect();
    // rank of ∂_n : C_n → C_{n−1}
    let mut ranks = vec![0usize; top + 2];
    for n in 1..=top {
        let mut e = Echelon::new();
        for q in &cubes[n] {
            let col: SparseVec = cubical_boundary(q)
                .into_iter()
                .map(|(f, x)| (index[n - 1][&f], rat(x)))
                .collect();
            e.insert(col);
        }
        ranks[n] = e.rank();
    }
    if reduced && !cubes[0].is_empty() {
        ranks[0] = 1;
    }
    let degrees = (0..=max_degree)
        .map(|n| {
            let dim = cubes[n].len();
            let incoming = if n < top { ranks[n + 1] } else { 0 };
            DegreeReport {
                degree: n,
                dim,
                boundary_rank: ranks[n],
                betti: dim - ranks[n] - incoming,
                upper_bound_only: n + 1 > top,
            }
        })
        .collect();
    Ok(HomologyReport {
        name: g.name().to_string(),
        theory: "cubical".into(),
        reduced,
        degrees,
        generators: Vec::new(),
    })
}

pub fn cubical_homology(g: &Digraph, max_degree: usize) -> Result<HomologyReport> {
    cubical_homology_with(g, max_degree, false, DEFAULT_CUBICAL_CAP, DEFAULT_CUBICAL_BUDGET)
}

/// Whether a cubical chain is a boundary of degree-(n+1) cubes.
pub fn is_cubical_boundary(g: &Digraph, c: &CubicalChain, budget: u64) -> Result<bool> {
    let Some(n) = c.keys().next().map(|q| q.degree) else {
        return Ok(true);
    };
    let mut index: HashMap<SingularCube, usize> = HashMap::new();
    let key = |q: SingularCube, index: &mut HashMap<SingularCube, usize>| {
        let k = index.len();
        *index.entry(q).or_insert(k)
    };
    let mut e = Echelon::new();
    for q in nondegenerate_cubes(g, n + 1, budget)? {
        let col: SparseVec = cubical_boundary(&q)
            .into_iter()
            .map(|(f, x)| (key(f, &mut index), rat(x)))
            .collect();
        e.insert(col);
    }
    let target: SparseVec = c.iter().map(|(q, &x)| (key(q.clone(), &mut index), rat(x))).collect();
    Ok(e.contains(&target))
}

/// `∂ τ_n(φ) = τ_{n−1} ∂^c(φ)` for one cube.
pub fn tau_chain_map_check(q: &SingularCube) -> Result<bool> {
    let n = q.degree;
    let lhs = boundary(&tau(q)?);
    let mut rhs = IntChain::zero(n.saturating_sub(1));
    if n > 0 {
        for j in 1..=n {
            let s = if j % 2 == 0 { 1 } else { -1 };
            rhs = &rhs + &tau(&q.face(j, 0))?.scale(&s);
            rhs = &rhs - &tau(&q.face(j, 1))?.scale(&s);
        }
    }
    Ok(lhs == rhs)
}

/// `τ_n(φ) = φ_*(ω_n)`.
pub fn tau(q: &SingularCube) -> Result<IntChain> {
    Ok(push_forward(&q.map, &omega(q.degree)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub name: String,
    pub max_degree: usize,
    pub cellular: Vec<usize>,
    pub cubical: Vec<usize>,
    pub agree: Vec<bool>,
    /// highest degree at which both sides are exact and agree with all below
    pub verified_up_to: Option<usize>,
    pub counterexample: Option<Counterexample>,
    pub upper_bound_degrees: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub degree: usize,
    pub cellular: usize,
    pub cubical: usize,
}

/// Compares cellular and singular cubical Betti numbers of an acyclic digraph.
pub fn conjecture_probe(g: &Digraph, max_degree: usize, budget: u64) -> Result<ProbeReport> {
    if !is_acyclic(g) {
        return Err(Error::BadParameter(format!("{} has a directed cycle", g.name())));
    }
    let cell = cellular_homology(g, false)?.betti_padded(max_degree + 1);
    let cub_report = cubical_homology_with(g, max_degree, false, DEFAULT_CUBICAL_CAP, budget)?;
    let cub = cub_report.betti();
    let upper: Vec<usize> = cub_report
        .degrees
        .iter()
        .filter(|d| d.upper_bound_only)
        .map(|d| d.degree)
        .collect();
    let agree: Vec<bool> = (0..=max_degree).map(|n| cell[n] == cub[n]).collect();
    let mut verified_up_to = None;
    let mut counterexample = None;
    for n in 0..=max_degree {
        if upper.contains(&n) {
            break;
        }
        if !agree[n] {
            counterexample = Some(Counterexample {
                degree: n,
                cellular: cell[n],
                cubical: cub[n],
            });
            break;
        }
        verified_up_to = Some(n);
    }
    Ok(ProbeReport {
        name: g.name().to_string(),
        max_degree,
        cellular: cell,
        cubical: cub,
        agree,
        verified_up_to,
        counterexample,
        upper_bound_degrees: upper,
    })
}
