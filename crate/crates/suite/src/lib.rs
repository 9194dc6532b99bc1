//! Brute-force oracles that share no code with the library's search and
//! elimination routines. Only the `Digraph` container is reused.

use dicell::digraph::Digraph;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// s-regular allowed n-paths, by plain depth-first walking.
pub fn regular_walks(g: &Digraph, n: usize) -> Vec<Vec<usize>> {
    fn go(g: &Digraph, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().unwrap();
        for w in 0..g.vertex_count() {
            if g.has_edge(last, w) && !cur.contains(&w) {
                cur.push(w);
                go(g, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        go(g, n, &mut vec![v], &mut out);
    }
    out.sort();
    out
}

fn is_allowed(g: &Digraph, p: &[usize]) -> bool {
    let distinct: BTreeSet<_> = p.iter().collect();
    distinct.len() == p.len() && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

fn faces(p: &[usize]) -> Vec<(Vec<usize>, i64)> {
    (0..p.len())
        .map(|j| {
            let mut q = p.to_vec();
            q.remove(j);
            (q, if j % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Rank by textbook Gauss-Jordan reduction over `BigRational`.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..cols {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// dim Ω_n(G): allowed n-paths minus the rank of the boundary followed by
/// the projection onto non-allowed (n−1)-paths.
pub fn omega_dim(g: &Digraph, n: usize) -> usize {
    let paths = regular_walks(g, n);
    if n == 0 || paths.is_empty() {
        return paths.len();
    }
    let mut bad: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for p in &paths {
        for (q, _) in faces(p) {
            if !is_allowed(g, &q) {
                let k = bad.len();
                bad.entry(q).or_insert(k);
            }
        }
    }
    if bad.is_empty() {
        return paths.len();
    }
    // one row per non-allowed face, one column per path
    let mut rows = vec![vec![BigRational::zero(); paths.len()]; bad.len()];
    for (j, p) in paths.iter().enumerate() {
        for (q, s) in faces(p) {
            if let Some(&i) = bad.get(&q) {
                rows[i][j] += BigRational::from_integer(s.into());
            }
        }
    }
    paths.len() - rank(rows)
}

/// A ±1 chain as a sorted list of (path, sign).
pub type SignedChain = Vec<(Vec<usize>, i64)>;

/// All minimal n-paths with ±1 coefficients, normalized so the smallest
/// path has sign +1. Every ∂-invariant ±1 chain is enumerated inside each
/// class of paths linked by shared non-allowed faces (a minimal path cannot
/// straddle two classes), then those with a proper ∂-invariant sign-respecting
/// sub-chain are discarded. `None` if some class exceeds `max_class`.
pub fn minimal_by_exhaustion(g: &Digraph, n: usize, max_class: usize) -> Option<Vec<SignedChain>> {
    let paths = regular_walks(g, n);
    if n == 0 {
        return Some(paths.into_iter().map(|p| vec![(p, 1)]).collect());
    }
    let bad_faces: Vec<Vec<(Vec<usize>, i64)>> = paths
        .iter()
        .map(|p| faces(p).into_iter().filter(|(q, _)| !is_allowed(g, q)).collect())
        .collect();
    // union paths sharing a non-allowed face
    let mut parent: Vec<usize> = (0..paths.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut owner: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for (i, fs) in bad_faces.iter().enumerate() {
        for (q, _) in fs {
            if let Some(&j) = owner.get(q) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else {
                owner.insert(q, i);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..paths.len() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in classes.values() {
        if members.len() > max_class {
            return None;
        }
        let invariant = invariant_chains(members, &bad_faces);
        for c in &invariant {
            let has_part = invariant
                .iter()
                .any(|d| d.len() < c.len() && d.iter().all(|t| c.contains(t)));
            if !has_part {
                let mut chain: SignedChain = c.iter().map(|&(i, s)| (paths[i].clone(), s)).collect();
                chain.sort();
                if chain[0].1 < 0 {
                    for t in chain.iter_mut() {
                        t.1 = -t.1;
                    }
                }
                out.push(chain);
            }
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

// every nonzero assignment in {−1, 0, 1} on `members` whose non-allowed
// faces cancel, as (path index, sign) lists
fn invariant_chains(members: &[usize], bad_faces: &[Vec<(Vec<usize>, i64)>]) -> Vec<Vec<(usize, i64)>> {
    // a face is closed once its last incident member has been assigned
    let mut last_use: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for (k, &i) in members.iter().enumerate() {
        for (q, _) in &bad_faces[i] {
            last_use.insert(q, k);
        }
    }
    let mut closing: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); members.len()];
    for (q, &k) in &last_use {
        closing[k].push(q);
    }
    let mut out = Vec::new();
    let mut sums: BTreeMap<&Vec<usize>, i64> = BTreeMap::new();
    let mut chosen = Vec::new();
    fn rec<'a>(
        k: usize,
        members: &[usize],
        bad_faces: &'a [Vec<(Vec<usize>, i64)>],
        closing: &[Vec<&'a Vec<usize>>],
        sums: &mut BTreeMap<&'a Vec<usize>, i64>,
        chosen: &mut Vec<(usize, i64)>,
        out: &mut Vec<Vec<(usize, i64)>>,
    ) {
        if k == members.len() {
            if !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        let i = members[k];
        for s in [0i64, 1, -1] {
            if s != 0 {
                for (q, e) in &bad_faces[i] {
                    *sums.entry(q).or_insert(0) += s * e;
                }
                chosen.push((i, s));
            }
            if closing[k].iter().all(|q| sums.get(*q).copied().unwrap_or(0) == 0) {
                rec(k + 1, members, bad_faces, closing, sums, chosen, out);
            }
            if s != 0 {
                for (q, e) in &bad_faces[i] {
                    *sums.get_mut(q).unwrap() -= s * e;
                }
                chosen.pop();
            }
        }
    }
    rec(0, members, bad_faces, &closing, &mut sums, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dicell::digraph::{cube, k_square};

    #[test]
    fn oracle_on_small_cases() {
        let sq = cube(2).unwrap();
        assert_eq!(omega_dim(&sq, 2), 1);
        assert_eq!(minimal_by_exhaustion(&sq, 2, 20).unwrap().len(), 1);
        let s3 = k_square(3).unwrap();
        // the three differences e_S i E - e_S j E are all minimal
        assert_eq!(minimal_by_exhaustion(&s3, 2, 20).unwrap().len(), 3);
        assert_eq!(omega_dim(&s3, 2), 2);
    }
}
