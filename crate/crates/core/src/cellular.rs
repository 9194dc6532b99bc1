//! Cellular chains spanned by admissible paths, the cellular boundary by two
//! independent routes, cellular homology and product checks.

use serde::Serialize;

use crate::chain::{boundary, cross_product, IntChain, RatChain};
use crate::digraph::{cartesian_product, Digraph, DEFAULT_CUBE_CAP};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::minimal::is_smaller;
use crate::path_complex::{enumerate_allowed_paths, ChainComplex, HomologyReport};
use crate::realization::{admissible_set, AdmissiblePair};

/// One degree of the cellular chain space.
#[derive(Clone, Debug)]
pub struct CellularDegree {
    pub degree: usize,
    pub admissible: Vec<AdmissiblePair>,
    /// indices into `admissible` forming the working basis
    pub basis: Vec<usize>,
    /// coordinates of every admissible path in the working basis
    pub coords: Vec<SparseVec>,
}

impl CellularDegree {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_chains(&self) -> Vec<IntChain> {
        self.basis.iter().map(|&i| self.admissible[i].path.chain.clone()).collect()
    }

    /// Admissible paths outside the working basis, each an admissible
    /// relation with the basis.
    pub fn relation_count(&self) -> usize {
        self.admissible.len() - self.basis.len()
    }
}

fn build_degree(n: usize, admissible: Vec<AdmissiblePair>) -> CellularDegree {
    let chains: Vec<RatChain> = admissible.iter().map(|p| p.path.chain.to_rational()).collect();
    let mut index = std::collections::BTreeMap::new();
    for c in &chains {
        for p in c.paths() {
            let k = index.len();
            index.entry(p.clone()).or_insert(k);
        }
    }
    let vec_of = |c: &RatChain| -> SparseVec {
        c.terms().map(|(p, x)| (index[p], x.clone())).collect()
    };
    let mut ech = Echelon::tracking();
    let mut basis = Vec::new();
    for (i, c) in chains.iter().enumerate() {
        if ech.insert(vec_of(c)) {
            basis.push(i);
        }
    }
    let coords = chains
        .iter()
        .map(|c| ech.express(&vec_of(c)).expect("in span by construction"))
        .collect();
    CellularDegree {
        degree: n,
        admissible,
        basis,
        coords,
    }
}

/// The degree-n cellular chain space of `g`.
pub fn cellular_chain_space(g: &Digraph, n: usize) -> Result<CellularDegree> {
    Ok(build_degree(n, admissible_set(g, n)?))
}

/// Cellular chain spaces of all degrees carrying allowed paths.
#[derive(Clone, Debug)]
pub struct CellularBasis {
    pub name: String,
    pub degrees: Vec<CellularDegree>,
}

impl CellularBasis {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim()).collect()
    }

    pub fn admissible(&self, n: usize) -> &[AdmissiblePair] {
        self.degrees.get(n).map_or(&[], |d| &d.admissible)
    }
}

pub fn cellular_basis(g: &Digraph) -> Result<CellularBasis> {
    let mut degrees = Vec::new();
    for n in 0..g.vertex_count() {
        if enumerate_allowed_paths(g, n).is_empty() {
            break;
        }
        let d = if n > DEFAULT_CUBE_CAP {
            let d = cellular_chain_space_capped(g, n)?;
            if !d.admissible.is_empty() {
                return Err(Error::CapExceeded {
                    what: "cellular degree",
                    requested: n,
                    cap: DEFAULT_CUBE_CAP,
                });
            }
            d
        } else {
            cellular_chain_space(g, n)?
        };
        degrees.push(d);
    }
    Ok(CellularBasis {
        name: g.name().to_string(),
        degrees,
    })
}

// above the cube cap only emptiness of the minimal set can be certified
fn cellular_chain_space_capped(g: &Digraph, n: usize) -> Result<CellularDegree> {
    let mins = crate::minimal::enumerate_minimal_paths(g, n)?;
    if mins.is_empty() {
        Ok(build_degree(n, Vec::new()))
    } else {
        Err(Error::CapExceeded {
            what: "cellular degree",
            requested: n,
            cap: DEFAULT_CUBE_CAP,
        })
    }
}

/// `Σ [Q:P] Q` over the admissible (n−1)-paths `Q`, where `[Q:P] = ±1` when
/// `±Q` is a conformal part of `∂P`.
pub fn cellular_boundary_coeff(p: &AdmissiblePair, lower: &[AdmissiblePair]) -> IntChain {
    let n = p.degree();
    if n == 0 {
        return IntChain::zero(0);
    }
    let d = boundary(&p.path.chain);
    let mut out = IntChain::zero(n - 1);
    for q in lower {
        let qc = &q.path.chain;
        if is_part(qc, &d) {
            out = &out + qc;
        } else if is_part(&-qc, &d) {
            out = &out - qc;
        }
    }
    out
}

// smaller-than, or equal to the whole chain
fn is_part(q: &IntChain, d: &IntChain) -> bool {
    q == d || is_smaller(q, d)
}

/// `∂P`, checked to lie in the span of the admissible (n−1)-paths.
pub fn cellular_boundary_restricted(p: &AdmissiblePair, lower: &CellularDegree) -> Result<IntChain> {
    let d = boundary(&p.path.chain);
    if p.degree() == 0 {
        return Ok(IntChain::zero(0));
    }
    let spanning: Vec<RatChain> = lower
        .basis
        .iter()
        .map(|&i| lower.admissible[i].path.chain.to_rational())
        .collect();
    if !in_chain_span(&spanning, &d.to_rational()) {
        return Err(Error::BoundaryEscapesSpan {
            path: format!("{:?}", p.path.chain.paths().map(|q| q.0.clone()).collect::<Vec<_>>()),
        });
    }
    Ok(d)
}

fn in_chain_span(spanning: &[RatChain], c: &RatChain) -> bool {
    let mut index = std::collections::BTreeMap::new();
    for s in spanning.iter().chain(std::iter::once(c)) {
        for p in s.paths() {
            let k = index.len();
            index.entry(p.clone()).or_insert(k);
        }
    }
    let vec_of = |c: &RatChain| -> SparseVec { c.terms().map(|(p, x)| (index[p], x.clone())).collect() };
    let mut e = Echelon::new();
    for s in spanning {
        e.insert(vec_of(s));
    }
    e.contains(&vec_of(c))
}

/// Checks both boundary routes on every admissible path and returns the
/// formatted paths on which they disagree.
pub fn compare_boundary_routes(g: &Digraph, basis: &CellularBasis) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for n in 1..basis.degrees.len() {
        let lower = &basis.degrees[n - 1];
        for p in &basis.degrees[n].admissible {
            let a = cellular_boundary_restricted(p, lower)?;
            let b = cellular_boundary_coeff(p, &lower.admissible);
            if a != b {
                bad.push(p.path.chain.format(g));
            }
        }
    }
    Ok(bad)
}

pub fn cellular_complex(g: &Digraph, basis: &CellularBasis, reduced: bool) -> Result<ChainComplex> {
    let spanning: Vec<Vec<RatChain>> = basis
        .degrees
        .iter()
        .map(|d| d.basis_chains().iter().map(|c| c.to_rational()).collect())
        .collect();
    ChainComplex::new(g.name(), "cellular", spanning, reduced).map_err(|e| match e {
        Error::NotClosedUnderBoundary { witness, .. } => Error::BoundaryEscapesSpan { path: witness },
        e => e,
    })
}

/// Cellular homology. The coefficient route is recomputed and must agree
/// with the plain boundary on every admissible path.
pub fn cellular_homology(g: &Digraph, reduced: bool) -> Result<HomologyReport> {
    let basis = cellular_basis(g)?;
    let report = cellular_complex(g, &basis, reduced)?.report();
    if let Some(p) = compare_boundary_routes(g, &basis)?.into_iter().next() {
        return Err(Error::BoundaryRoutesDisagree { path: p });
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethReport {
    pub dims_x: Vec<usize>,
    pub dims_y: Vec<usize>,
    pub dims_product: Vec<usize>,
    pub betti_x: Vec<usize>,
    pub betti_y: Vec<usize>,
    pub betti_product: Vec<usize>,
    pub dims_match: bool,
    pub betti_match: bool,
    /// cross products of basis pairs form a basis of each product degree
    pub cross_products_form_basis: bool,
}

impl KunnethReport {
    pub fn holds(&self) -> bool {
        self.dims_match && self.betti_match && self.cross_products_form_basis
    }
}

fn convolve(a: &[usize], b: &[usize], n: usize) -> usize {
    (0..=n)
        .map(|p| a.get(p).copied().unwrap_or(0) * b.get(n - p).copied().unwrap_or(0))
        .sum()
}

/// Compares the cellular chains and homology of `X ⊠ Y` with the tensor
/// product of those of `X` and `Y` in degrees `0..=max_degree`.
pub fn kunneth_check(x: &Digraph, y: &Digraph, max_degree: usize) -> Result<KunnethReport> {
    let bx = cellular_basis(x)?;
    let by = cellular_basis(y)?;
    let xy = cartesian_product(x, y);
    let bxy = cellular_basis(&xy)?;
    let hx = cellular_complex(x, &bx, false)?.report();
    let hy = cellular_complex(y, &by, false)?.report();
    let hxy = cellular_complex(&xy, &bxy, false)?.report();
    let cut = |v: Vec<usize>| -> Vec<usize> {
        let mut v = v;
        v.resize(max_degree + 1, 0);
        v
    };
    let (dx, dy, dxy) = (cut(bx.dims()), cut(by.dims()), cut(bxy.dims()));
    let (tx, ty, txy) = (cut(hx.betti()), cut(hy.betti()), cut(hxy.betti()));
    let dims_match = (0..=max_degree).all(|n| dxy[n] == convolve(&dx, &dy, n));
    let betti_match = (0..=max_degree).all(|n| txy[n] == convolve(&tx, &ty, n));
    let ny = y.vertex_count();
    let mut cross_ok = true;
    for n in 0..=max_degree {
        let mut crosses = Vec::new();
        for p in 0..=n {
            let (Some(a), Some(b)) = (bx.degrees.get(p), by.degrees.get(n - p)) else {
                continue;
            };
            for u in a.basis_chains() {
                for v in b.basis_chains() {
                    crosses.push(cross_product(&u, &v, ny).to_rational());
                }
            }
        }
        let target: Vec<RatChain> = bxy
            .degrees
            .get(n)
            .map(|d| d.basis_chains().iter().map(|c| c.to_rational()).collect())
            .unwrap_or_default();
        let independent = {
            let mut index = std::collections::BTreeMap::new();
            for c in &crosses {
                for p in c.paths() {
                    let k = index.len();
                    index.entry(p.clone()).or_insert(k);
                }
            }
            let mut e = Echelon::new();
            crosses.iter().all(|c| e.insert(c.terms().map(|(p, x)| (index[p], x.clone())).collect()))
        };
        let inside = crosses.iter().all(|c| in_chain_span(&target, c));
        if !(independent && inside && crosses.len() == target.len()) {
            cross_ok = false;
        }
    }
    Ok(KunnethReport {
        dims_x: dx,
        dims_y: dy,
        dims_product: dxy,
        betti_x: tx,
        betti_y: ty,
        betti_product: txy,
        dims_match,
        betti_match,
        cross_products_form_basis: cross_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::parse_chain;
    use crate::digraph::{build_digraph, exotic_cube, interval, k_square};

    fn k3() -> Digraph {
        build_digraph("K3", &["0", "1", "2"], &[("0", "1"), ("1", "2"), ("0", "2")]).unwrap()
    }

    fn c3() -> Digraph {
        build_digraph("C3", &["0", "1", "2"], &[("0", "1"), ("1", "2"), ("2", "0")]).unwrap()
    }

    #[test]
    fn triangle_boundary() {
        let g = k3();
        let b = cellular_basis(&g).unwrap();
        let p = &b.degrees[2].admissible[0];
        let d = cellular_boundary_coeff(p, &b.degrees[1].admissible);
        assert_eq!(d, parse_chain("e12 - e02 + e01", &g).unwrap());
        assert!(compare_boundary_routes(&g, &b).unwrap().is_empty());
    }

    #[test]
    fn small_homologies() {
        assert_eq!(cellular_homology(&k3(), false).unwrap().betti_padded(3), vec![1, 0, 0]);
        assert_eq!(cellular_homology(&c3(), false).unwrap().betti_padded(3), vec![1, 1, 0]);
        let s4 = k_square(4).unwrap();
        assert_eq!(cellular_chain_space(&s4, 2).unwrap().dim(), 3);
        assert_eq!(cellular_homology(&s4, false).unwrap().betti_padded(3), vec![1, 0, 0]);
        assert_eq!(
            cellular_homology(&exotic_cube(), false).unwrap().betti_padded(4),
            vec![1, 0, 1, 0]
        );
    }

    #[test]
    fn products() {
        let r = kunneth_check(&interval(), &interval(), 2).unwrap();
        assert_eq!(r.dims_product, vec![4, 4, 1]);
        assert!(r.holds());
        assert!(kunneth_check(&k3(), &interval(), 3).unwrap().holds());
        let r = kunneth_check(&c3(), &interval(), 3).unwrap();
        assert_eq!(r.betti_product, vec![1, 1, 0, 0]);
        assert!(r.holds());
    }
}
