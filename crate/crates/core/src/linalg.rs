//! Exact linear algebra over ℚ and ℤ.
//!
//! Everything is exact; nothing here touches floating point. The workhorse is
//! [`Echelon`], an incremental sparse row echelon form with canonical pivots
//! (lowest column first), which backs rank, kernels and span membership.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Sparse vector: column -> nonzero value.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `a += s * b`, dropping zeros.
pub fn axpy(a: &mut SparseVec, s: &Rational, b: &SparseVec) {
    if s.is_zero() {
        return;
    }
    for (&k, v) in b {
        let e = a.entry(k).or_insert_with(Rational::zero);
        *e += s * v;
        if e.is_zero() {
            a.remove(&k);
        }
    }
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (&k, x) in v {
        out[k] = x.clone();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, rat(x));
            }
        }
        m
    }

    /// Builds from sparse columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (&i, x) in c {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, x: Rational) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if x.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, x);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (&c, x)| acc + x * &v[c])
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if x.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, x);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.data[r].get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, x) in row {
                m.set(i, j, Rational::from_integer(x.clone()));
            }
        }
        m
    }
}

/// Incremental sparse echelon form.
///
/// Each stored row has its pivot at its lowest column with coefficient 1.
/// With `track` on, every stored row also remembers how it was built from the
/// inserted vectors, so span membership can return coefficients.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Echelon {
            track: true,
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors passed to [`Echelon::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the stored rows; returns the residue and, if
    /// tracking, the combination of inserted vectors that was subtracted.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut used = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let hit = v
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(&c, x)| (c, x.clone()));
            let Some((c, x)) = hit else { break };
            let r = self.pivots[&c];
            axpy(&mut v, &(-&x), &self.rows[r]);
            if self.track {
                axpy(&mut used, &x, &self.combos[r]);
            }
            cursor = c + 1;
        }
        (v, used)
    }

    /// Inserts a vector; returns true if it was independent of the previous
    /// ones.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (res, used) = self.reduce(v);
        let Some((&p, lead)) = res.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseVec = res.iter().map(|(&k, x)| (k, x * &inv)).collect();
        if self.track {
            let mut combo = SparseVec::new();
            combo.insert(id, Rational::one());
            axpy(&mut combo, &-Rational::one(), &used);
            let combo = combo.into_iter().map(|(k, x)| (k, x * &inv)).collect();
            self.combos.push(combo);
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).0.is_empty()
    }

    /// Coefficients over the inserted vectors (by insertion number) that
    /// reproduce `v`, or `None` if `v` is outside the span. Needs tracking.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "express needs a tracking echelon");
        let (res, used) = self.reduce(v.clone());
        res.is_empty().then_some(used)
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Fully reduced rows (reduced row echelon form), sorted by pivot.
    pub fn rref(&self) -> Vec<(usize, SparseVec)> {
        let mut out: Vec<(usize, SparseVec)> = Vec::with_capacity(self.rows.len());
        let piv: Vec<(usize, usize)> = self.pivots.iter().map(|(&c, &r)| (c, r)).collect();
        // back substitution from the last pivot upwards
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &(c, r) in piv.iter().rev() {
            let mut row = self.rows[r].clone();
            let hits: Vec<(usize, Rational)> = row
                .iter()
                .filter(|(&k, _)| k != c && done.contains_key(&k))
                .map(|(&k, x)| (k, x.clone()))
                .collect();
            for (k, x) in hits {
                axpy(&mut row, &-x, &done[&k]);
            }
            done.insert(c, row);
        }
        for (c, row) in done {
            out.push((c, row));
        }
        out
    }
}

/// Rank by sparse elimination with canonical pivoting.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut e = Echelon::new();
    for r in 0..m.rows() {
        e.insert(m.row(r).clone());
    }
    e.rank()
}

/// Rank by dense fraction-free (Bareiss) elimination over ℤ after clearing
/// denominators row by row. Eliminates column by column, so it doubles as an
/// independent oracle for [`rank`].
pub fn rank_bareiss(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row
                .values()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            (0..m.cols())
                .map(|c| {
                    row.get(&c)
                        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                        .unwrap_or_else(BigInt::zero)
                })
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Basis of the null space. One vector per free column, with a 1 in that
/// column and zeros in the other free columns.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let mut e = Echelon::new();
    for r in 0..m.rows() {
        e.insert(m.row(r).clone());
    }
    let rref = e.rref();
    let pivots: BTreeMap<usize, &SparseVec> = rref.iter().map(|(c, r)| (*c, r)).collect();
    let mut out = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivots.contains_key(c)) {
        let mut v = vec![Rational::zero(); m.cols()];
        v[free] = Rational::one();
        for (&pc, row) in &pivots {
            if let Some(x) = row.get(&free) {
                v[pc] = -x;
            }
        }
        out.push(v);
    }
    out
}

/// ℤ-basis of `{x ∈ ℤ^cols : M x = 0}` in Hermite normal form: each vector is
/// primitive and its first nonzero entry is positive.
pub fn integer_kernel_basis(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let (r, c) = (m.rows(), m.cols());
    // row j of `a` is [column j of M | e_j]
    let mut a: Vec<Vec<BigInt>> = (0..c)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..r).map(|i| m.get(i, j)).collect();
            row.extend((0..c).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let top = integer_echelon(&mut a, 0..r);
    let basis: Vec<Vec<BigInt>> = a[top..].iter().map(|row| row[r..].to_vec()).collect();
    hermite_normal_form(basis)
}

/// Unimodular row reduction of `a` on the given columns; returns the number of
/// pivot rows. Rows below that are zero on those columns.
fn integer_echelon(a: &mut [Vec<BigInt>], cols: std::ops::Range<usize>) -> usize {
    let n = a.len();
    let mut prow = 0;
    for col in cols {
        if prow == n {
            break;
        }
        loop {
            let best = (prow..n)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(b) = best else { break };
            a.swap(prow, b);
            let mut clean = true;
            for i in prow + 1..n {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[prow][col]);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(head[prow].iter()) {
                    *x -= &q * y;
                }
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                prow += 1;
                break;
            }
        }
    }
    prow
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
pub fn hermite_normal_form(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return rows;
    };
    let mut a = rows;
    let k = integer_echelon(&mut a, 0..width);
    a.truncate(k);
    // make pivots positive and reduce entries above each pivot
    let mut pivot_cols = Vec::with_capacity(k);
    for i in 0..k {
        let p = a[i].iter().position(|x| !x.is_zero()).expect("pivot row");
        if a[i][p].is_negative() {
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
        }
        pivot_cols.push(p);
    }
    for i in (0..k).rev() {
        let p = pivot_cols[i];
        for j in 0..i {
            let q = a[j][p].div_floor(&a[i][p]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = a.split_at_mut(i);
            for (x, y) in head[j].iter_mut().zip(tail[0].iter()) {
                *x -= &q * y;
            }
        }
    }
    a
}

/// Coefficients expressing `target` in the span of `vectors`, if any. When the
/// vectors are dependent, later dependent vectors get coefficient 0.
pub fn in_span(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let mut e = Echelon::tracking();
    for v in vectors {
        e.insert(to_sparse(v));
    }
    let combo = e.express(&to_sparse(target))?;
    Some(to_dense(&combo, vectors.len()))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
}
