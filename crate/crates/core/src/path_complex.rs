//! The path complex Ω_*(G) under the strongly regular condition, and the
//! homology engine shared by every theory in the crate.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chain::{boundary, ElementaryPath, IntChain, RatChain};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::{
    integer_kernel_basis, kernel_basis, Echelon, IntegerMatrix, Rational, RationalMatrix,
    SparseVec,
};

/// All allowed s-regular n-paths, lexicographic.
pub fn enumerate_allowed_paths(g: &Digraph, n: usize) -> Vec<ElementaryPath> {
    let mut out = Vec::new();
    if n >= g.vertex_count() {
        return out;
    }
    let mut used = vec![false; g.vertex_count()];
    let mut cur = Vec::with_capacity(n + 1);
    fn rec(
        g: &Digraph,
        n: usize,
        cur: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<ElementaryPath>,
    ) {
        if cur.len() == n + 1 {
            out.push(ElementaryPath(cur.clone()));
            return;
        }
        let last = *cur.last().unwrap();
        for &w in g.out_neighbors(last) {
            if !used[w] {
                used[w] = true;
                cur.push(w);
                rec(g, n, cur, used, out);
                cur.pop();
                used[w] = false;
            }
        }
    }
    for v in 0..g.vertex_count() {
        used[v] = true;
        cur.push(v);
        rec(g, n, &mut cur, &mut used, &mut out);
        cur.pop();
        used[v] = false;
    }
    out
}

/// Allowed n-paths sharing start and end, with the non-allowed faces they
/// produce. Only interior deletions can leave A_{n−1}, so Ω_n splits into
/// these blocks.
#[derive(Clone, Debug)]
pub struct FaceBlock {
    pub start: usize,
    pub end: usize,
    pub paths: Vec<ElementaryPath>,
    pub faces: Vec<ElementaryPath>,
    /// per path: (face row, sign) pairs
    pub entries: Vec<Vec<(usize, i64)>>,
}

impl FaceBlock {
    pub fn new(g: &Digraph, paths: Vec<ElementaryPath>) -> FaceBlock {
        let (start, end) = paths
            .first()
            .map(|p| (p.start(), p.end()))
            .unwrap_or((0, 0));
        let mut face_ix: BTreeMap<ElementaryPath, usize> = BTreeMap::new();
        let mut entries = Vec::with_capacity(paths.len());
        for p in &paths {
            let mut col: BTreeMap<usize, i64> = BTreeMap::new();
            let n = p.len();
            for j in 1..n {
                let f = p.face(j);
                if f.is_allowed(g) {
                    continue;
                }
                let k = face_ix.len();
                let row = *face_ix.entry(f).or_insert(k);
                let s = if j % 2 == 0 { 1 } else { -1 };
                *col.entry(row).or_insert(0) += s;
            }
            entries.push(col.into_iter().filter(|&(_, s)| s != 0).collect());
        }
        let mut faces = vec![ElementaryPath(vec![]); face_ix.len()];
        for (f, i) in face_ix {
            faces[i] = f;
        }
        FaceBlock {
            start,
            end,
            paths,
            faces,
            entries,
        }
    }

    pub fn integer_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.faces.len(), self.paths.len());
        for (c, col) in self.entries.iter().enumerate() {
            for &(r, s) in col {
                m.set(r, c, BigInt::from(s));
            }
        }
        m
    }

    pub fn rational_matrix(&self) -> RationalMatrix {
        self.integer_matrix().to_rational()
    }
}

/// Groups the allowed n-paths of `g` into face blocks, ordered by (start, end).
pub fn face_blocks(g: &Digraph, n: usize) -> Vec<FaceBlock> {
    let mut groups: BTreeMap<(usize, usize), Vec<ElementaryPath>> = BTreeMap::new();
    for p in enumerate_allowed_paths(g, n) {
        groups.entry((p.start(), p.end())).or_default().push(p);
    }
    groups
        .into_values()
        .map(|ps| FaceBlock::new(g, ps))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Integers,
    Rationals,
}

/// A basis of Ω_n(G). For the integer domain the chains have integer
/// coefficients and form a ℤ-basis.
#[derive(Clone, Debug)]
pub struct OmegaBasis {
    pub degree: usize,
    pub domain: Domain,
    pub basis: Vec<RatChain>,
}

impl OmegaBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn omega_space(g: &Digraph, n: usize, domain: Domain) -> OmegaBasis {
    let basis = match domain {
        Domain::Integers => omega_integer(g, n).iter().map(|c| c.to_rational()).collect(),
        Domain::Rationals => omega_rational(g, n),
    };
    OmegaBasis {
        degree: n,
        domain,
        basis,
    }
}

pub fn omega_rational(g: &Digraph, n: usize) -> Vec<RatChain> {
    let mut out = Vec::new();
    for b in face_blocks(g, n) {
        for v in kernel_basis(&b.rational_matrix()) {
            out.push(RatChain::from_terms(
                n,
                b.paths.iter().cloned().zip(v),
            ));
        }
    }
    out
}

pub fn omega_integer(g: &Digraph, n: usize) -> Vec<IntChain> {
    let mut out = Vec::new();
    for b in face_blocks(g, n) {
        for v in integer_kernel_basis(&b.integer_matrix()) {
            out.push(IntChain::from_terms(
                n,
                b.paths
                    .iter()
                    .cloned()
                    .zip(v.iter().map(|x| x.to_i64().expect("small kernel entry"))),
            ));
        }
    }
    out
}

/// Membership in Ω_n(G): every term allowed and s-regular, and so is every
/// term of the boundary.
pub fn in_omega<R: crate::chain::Coeff>(g: &Digraph, c: &crate::chain::Chain<R>) -> bool {
    c.is_allowed(g) && (c.degree() == 0 || boundary(c).is_allowed(g))
}

/// Per-degree summary of a homology computation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim: usize,
    /// rank of the boundary map out of this degree (the augmentation in
    /// degree 0 for reduced homology)
    pub boundary_rank: usize,
    pub betti: usize,
    /// true when the rank of the incoming boundary was not computed, so
    /// `betti` is only an upper bound
    pub upper_bound_only: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub name: String,
    pub theory: String,
    pub reduced: bool,
    pub degrees: Vec<DegreeReport>,
    #[serde(skip)]
    pub generators: Vec<Vec<RatChain>>,
}

impl HomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    /// Betti numbers padded with zeros or cut to `len`.
    pub fn betti_padded(&self, len: usize) -> Vec<usize> {
        let mut b = self.betti();
        b.resize(len, 0);
        b
    }

    pub fn is_acyclic_reduced(&self) -> bool {
        self.degrees.iter().all(|d| d.betti == 0)
    }

    pub fn euler_dims(&self) -> i64 {
        alternating(self.degrees.iter().map(|d| d.dim))
    }

    pub fn euler_betti(&self) -> i64 {
        alternating(self.degrees.iter().map(|d| d.betti))
    }
}

fn alternating(xs: impl Iterator<Item = usize>) -> i64 {
    xs.enumerate()
        .map(|(i, x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

struct Level {
    basis: Vec<RatChain>,
    coords: BTreeMap<ElementaryPath, usize>,
    span: Echelon,
    /// ∂ of each basis element, in basis coordinates of the level below
    boundary_cols: Vec<SparseVec>,
    boundary_rank: usize,
}

/// A finite chain complex of subspaces of Λ_*, given by spanning sets.
pub struct ChainComplex {
    name: String,
    theory: String,
    reduced: bool,
    levels: Vec<Level>,
}

impl ChainComplex {
    /// `spanning[n]` spans the degree-n space. Dependent vectors are dropped
    /// (the working basis is the greedy independent prefix). Fails if some
    /// boundary leaves the span of the degree below.
    pub fn new(
        name: &str,
        theory: &str,
        spanning: Vec<Vec<RatChain>>,
        reduced: bool,
    ) -> Result<ChainComplex> {
        let mut levels: Vec<Level> = Vec::with_capacity(spanning.len());
        for (n, chains) in spanning.into_iter().enumerate() {
            let mut paths = BTreeSet::new();
            for c in &chains {
                paths.extend(c.paths().cloned());
            }
            let coords: BTreeMap<ElementaryPath, usize> =
                paths.into_iter().enumerate().map(|(i, p)| (p, i)).collect();
            let mut span = Echelon::tracking();
            let mut basis = Vec::new();
            let mut probe = Echelon::new();
            for c in chains {
                assert_eq!(c.degree(), n, "chain in the wrong degree");
                let v = to_coords(&coords, &c).expect("coordinates cover the spanning set");
                if probe.insert(v.clone()) {
                    span.insert(v);
                    basis.push(c);
                }
            }
            let mut boundary_cols = Vec::with_capacity(basis.len());
            if n == 0 {
                if reduced {
                    for c in &basis {
                        let s = c.terms().fold(Rational::zero(), |a, (_, x)| a + x);
                        let mut col = SparseVec::new();
                        if !s.is_zero() {
                            col.insert(0, s);
                        }
                        boundary_cols.push(col);
                    }
                } else {
                    boundary_cols = vec![SparseVec::new(); basis.len()];
                }
            } else {
                let below = &levels[n - 1];
                for c in &basis {
                    let d = boundary(c);
                    let col = to_coords(&below.coords, &d)
                        .and_then(|v| below.span.express(&v))
                        .ok_or_else(|| Error::NotClosedUnderBoundary {
                            degree: n,
                            witness: format!("{d:?}"),
                        })?;
                    boundary_cols.push(col);
                }
            }
            let boundary_rank = rank_of_columns(&boundary_cols);
            levels.push(Level {
                basis,
                coords,
                span,
                boundary_cols,
                boundary_rank,
            });
        }
        Ok(ChainComplex {
            name: name.to_string(),
            theory: theory.to_string(),
            reduced,
            levels,
        })
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn basis(&self, n: usize) -> &[RatChain] {
        self.levels.get(n).map_or(&[], |l| &l.basis)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.basis(n).len()
    }

    pub fn boundary_rank(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, |l| l.boundary_rank)
    }

    /// Coordinates of `c` in the working basis of its degree.
    pub fn coordinates(&self, c: &RatChain) -> Option<SparseVec> {
        let l = self.levels.get(c.degree())?;
        if c.is_zero() {
            return Some(SparseVec::new());
        }
        to_coords(&l.coords, c).and_then(|v| l.span.express(&v))
    }

    pub fn contains(&self, c: &RatChain) -> bool {
        self.coordinates(c).is_some()
    }

    pub fn is_cycle(&self, c: &RatChain) -> bool {
        if !self.contains(c) {
            return false;
        }
        if c.degree() == 0 {
            if !self.reduced {
                return true;
            }
            return c.terms().fold(Rational::zero(), |a, (_, x)| a + x).is_zero();
        }
        boundary(c).is_zero()
    }

    /// `c` lies in the image of the boundary from the degree above.
    pub fn is_boundary(&self, c: &RatChain) -> bool {
        let Some(v) = self.coordinates(c) else {
            return false;
        };
        let n = c.degree();
        let mut e = Echelon::new();
        if let Some(up) = self.levels.get(n + 1) {
            for col in &up.boundary_cols {
                e.insert(col.clone());
            }
        }
        e.contains(&v)
    }

    pub fn homologous(&self, a: &RatChain, b: &RatChain) -> bool {
        self.is_boundary(&(a - b))
    }

    pub fn report(&self) -> HomologyReport {
        let top = self.levels.len();
        let mut degrees = Vec::with_capacity(top);
        let mut generators = Vec::with_capacity(top);
        for n in 0..top {
            let dim = self.dim(n);
            let rk = self.boundary_rank(n);
            let rk_up = self.boundary_rank(n + 1);
            let betti = dim - rk - rk_up;
            degrees.push(DegreeReport {
                degree: n,
                dim,
                boundary_rank: rk,
                betti,
                upper_bound_only: false,
            });
            generators.push(self.generators(n, betti));
        }
        HomologyReport {
            name: self.name.clone(),
            theory: self.theory.clone(),
            reduced: self.reduced,
            degrees,
            generators,
        }
    }

    fn generators(&self, n: usize, betti: usize) -> Vec<RatChain> {
        if betti == 0 {
            return Vec::new();
        }
        let l = &self.levels[n];
        let rows = if n == 0 {
            1
        } else {
            self.levels[n - 1].basis.len()
        };
        let d = RationalMatrix::from_columns(rows, &l.boundary_cols);
        let mut e = Echelon::new();
        if let Some(up) = self.levels.get(n + 1) {
            for col in &up.boundary_cols {
                e.insert(col.clone());
            }
        }
        let mut out = Vec::new();
        for z in kernel_basis(&d) {
            let v = crate::linalg::to_sparse(&z);
            if e.insert(v.clone()) {
                let mut c = RatChain::zero(n);
                for (i, x) in v {
                    c = &c + &l.basis[i].scale(&x);
                }
                out.push(c);
                if out.len() == betti {
                    break;
                }
            }
        }
        out
    }
}

fn to_coords(coords: &BTreeMap<ElementaryPath, usize>, c: &RatChain) -> Option<SparseVec> {
    let mut v = SparseVec::new();
    for (p, x) in c.terms() {
        v.insert(*coords.get(p)?, x.clone());
    }
    Some(v)
}

/// Rank of the matrix whose columns are given.
pub fn rank_of_columns(cols: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for c in cols {
        e.insert(c.clone());
    }
    e.rank()
}

/// Homology of the sub-complex spanned by graded chains.
pub fn homology_of_chain_subspace(
    name: &str,
    spanning: Vec<Vec<RatChain>>,
    reduced: bool,
) -> Result<HomologyReport> {
    Ok(ChainComplex::new(name, "subspace", spanning, reduced)?.report())
}

/// Ω_0 … Ω_{|V|−1} as rational bases.
pub fn omega_complex(g: &Digraph, reduced: bool) -> Result<ChainComplex> {
    let n = g.vertex_count();
    let spanning: Vec<Vec<RatChain>> = (0..n.max(1)).map(|k| omega_rational(g, k)).collect();
    ChainComplex::new(g.name(), "path", spanning, reduced)
}

pub fn path_homology(g: &Digraph, reduced: bool) -> Result<HomologyReport> {
    Ok(omega_complex(g, reduced)?.report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::parse_chain;
    use crate::digraph::{build_digraph, circulant, k_square, point};

    fn k3() -> Digraph {
        build_digraph("K3", &["0", "1", "2"], &[("0", "1"), ("1", "2"), ("0", "2")]).unwrap()
    }

    #[test]
    fn allowed_paths() {
        let p = enumerate_allowed_paths(&k3(), 2);
        assert_eq!(p, vec![ElementaryPath(vec![0, 1, 2])]);
        let c3 = circulant(3, &[1]).unwrap();
        let p = enumerate_allowed_paths(&c3, 2);
        assert_eq!(
            p,
            vec![
                ElementaryPath(vec![0, 1, 2]),
                ElementaryPath(vec![1, 2, 0]),
                ElementaryPath(vec![2, 0, 1])
            ]
        );
        assert!(enumerate_allowed_paths(&c3, 3).is_empty());
    }

    #[test]
    fn omega_examples() {
        let b = omega_space(&k3(), 2, Domain::Rationals);
        assert_eq!(b.dim(), 1);
        let sq = k_square(2).unwrap();
        let z = omega_integer(&sq, 2);
        assert_eq!(z, vec![parse_chain("eS1E - eS2E", &sq).unwrap()]);
        let c5 = circulant(5, &[1, 2]).unwrap();
        assert_eq!(omega_space(&c5, 4, Domain::Rationals).dim(), 5);
        assert_eq!(omega_space(&c5, 4, Domain::Integers).dim(), 5);
    }

    #[test]
    fn homology_examples() {
        let h = path_homology(&point(), false).unwrap();
        assert_eq!(h.betti(), vec![1]);
        let c5 = circulant(5, &[1, 2]).unwrap();
        let h = path_homology(&c5, false).unwrap();
        assert_eq!(h.betti(), vec![1, 1, 0, 0, 0]);
        assert_eq!(h.euler_dims(), h.euler_betti());
        let c7 = circulant(7, &[1, 3]).unwrap();
        assert_eq!(path_homology(&c7, false).unwrap().betti_padded(4), vec![1, 2, 1, 0]);
    }

    #[test]
    fn subspace_engine() {
        let i = crate::digraph::interval();
        let e = |s: &str| parse_chain(s, &i).unwrap().to_rational();
        let h = homology_of_chain_subspace("I", vec![vec![e("e0"), e("e1")], vec![e("e01")]], false)
            .unwrap();
        assert_eq!(h.betti(), vec![1, 0]);
        let bad = homology_of_chain_subspace("I", vec![vec![e("e0")], vec![e("e01")]], false);
        assert!(matches!(bad, Err(Error::NotClosedUnderBoundary { degree: 1, .. })));
    }

    #[test]
    fn reduced_degree_zero() {
        let two = build_digraph::<&str>("2pt", &["a", "b"], &[]).unwrap();
        assert_eq!(path_homology(&two, false).unwrap().betti(), vec![2, 0]);
        assert_eq!(path_homology(&two, true).unwrap().betti(), vec![1, 0]);
        assert_eq!(path_homology(&k3(), true).unwrap().betti(), vec![0, 0, 0]);
    }
}
