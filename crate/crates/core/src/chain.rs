//! Elementary paths and chains with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// A sequence of vertex indices. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryPath(pub Vec<usize>);

impl ElementaryPath {
    pub fn new(vs: Vec<usize>) -> Self {
        assert!(!vs.is_empty(), "elementary paths are nonempty");
        ElementaryPath(vs)
    }

    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn end(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn is_regular(&self) -> bool {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_allowed(&self, g: &Digraph) -> bool {
        self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    pub fn face(&self, j: usize) -> ElementaryPath {
        let mut v = self.0.clone();
        v.remove(j);
        ElementaryPath(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn map(&self, f: &[usize]) -> ElementaryPath {
        ElementaryPath(self.0.iter().map(|&v| f[v]).collect())
    }

    pub fn format(&self, g: &Digraph) -> String {
        let mut s = String::from("e");
        for &v in &self.0 {
            let l = g.label(v);
            if l.chars().count() == 1 {
                s.push_str(l);
            } else {
                s.push('(');
                s.push_str(l);
                s.push(')');
            }
        }
        s
    }
}

/// Coefficient ring: ℤ (as `i64`) or ℚ.
pub trait Coeff: Signed + Clone + Ord + fmt::Debug + fmt::Display {}
impl<T: Signed + Clone + Ord + fmt::Debug + fmt::Display> Coeff for T {}

/// A homogeneous chain. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain<R: Coeff> {
    degree: usize,
    terms: BTreeMap<ElementaryPath, R>,
}

pub type IntChain = Chain<i64>;
pub type RatChain = Chain<Rational>;

impl<R: Coeff> fmt::Debug for Chain<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0[deg {}]", self.degree);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c}*{:?}", p.0))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Coeff> Chain<R> {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn elementary(p: ElementaryPath) -> Self {
        let degree = p.len();
        let mut terms = BTreeMap::new();
        terms.insert(p, R::one());
        Chain { degree, terms }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (ElementaryPath, R)>) -> Self {
        let mut c = Chain::zero(degree);
        for (p, x) in terms {
            c.add_term(p, x);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ElementaryPath, &R)> {
        self.terms.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &ElementaryPath> {
        self.terms.keys()
    }

    pub fn coeff(&self, p: &ElementaryPath) -> R {
        self.terms.get(p).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<(&ElementaryPath, &R)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, p: ElementaryPath, x: R) {
        assert_eq!(p.len(), self.degree, "term degree mismatch");
        if x.is_zero() {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert_with(R::zero);
        *e = e.clone() + x;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn scale(&self, x: &R) -> Self {
        if x.is_zero() {
            return Chain::zero(self.degree);
        }
        Chain {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), c.clone() * x.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Chain<S> {
        Chain::from_terms(self.degree, self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }

    /// Relabels vertices through `f`; terms whose image repeats a vertex are
    /// kept (use [`push_forward`] for the s-regular image).
    pub fn relabel(&self, f: &[usize]) -> Self {
        Chain::from_terms(
            self.degree,
            self.terms.iter().map(|(p, c)| (p.map(f), c.clone())),
        )
    }

    /// Every term is s-regular and allowed in `g`.
    pub fn is_allowed(&self, g: &Digraph) -> bool {
        self.terms.keys().all(|p| p.is_regular() && p.is_allowed(g))
    }

    pub fn format(&self, g: &Digraph) -> String {
        format_terms(self.terms.iter().map(|(p, c)| (p.format(g), c.to_string())))
    }
}

fn format_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let mut s = String::new();
    for (p, c) in terms {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            s.push_str(&mag);
        }
        s.push_str(&p);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl<R: Coeff> Add for &Chain<R> {
    type Output = Chain<R>;
    fn add(self, rhs: &Chain<R>) -> Chain<R> {
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = rhs.degree;
        }
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl<R: Coeff> Sub for &Chain<R> {
    type Output = Chain<R>;
    fn sub(self, rhs: &Chain<R>) -> Chain<R> {
        self + &(-rhs)
    }
}

impl<R: Coeff> Neg for &Chain<R> {
    type Output = Chain<R>;
    fn neg(self) -> Chain<R> {
        Chain {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl IntChain {
    pub fn to_rational(&self) -> RatChain {
        self.map_coeffs(|&c| Rational::from_integer(BigInt::from(c)))
    }

    /// Sum of absolute values of coefficients.
    pub fn width(&self) -> u64 {
        self.terms.values().map(|c| c.unsigned_abs()).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.terms.values().all(|c| c.abs() == 1)
    }
}

impl RatChain {
    pub fn to_integer(&self) -> Result<IntChain> {
        let mut out = IntChain::zero(self.degree);
        for (p, c) in &self.terms {
            if !c.is_integer() {
                return Err(Error::NonIntegerChain);
            }
            let v = c.to_integer().to_i64().ok_or(Error::NonIntegerChain)?;
            out.add_term(p.clone(), v);
        }
        Ok(out)
    }

    pub fn width(&self) -> Result<u64> {
        Ok(self.to_integer()?.width())
    }
}

/// `∂ e_{i0…in} = Σ (−1)^j e_{i0…î_j…in}`. Degree-0 chains map to zero.
pub fn boundary<R: Coeff>(c: &Chain<R>) -> Chain<R> {
    if c.degree == 0 {
        return Chain::zero(0);
    }
    let mut out = Chain::zero(c.degree - 1);
    for (p, x) in &c.terms {
        for j in 0..p.0.len() {
            let s = if j % 2 == 0 { x.clone() } else { -x.clone() };
            out.add_term(p.face(j), s);
        }
    }
    out
}

/// Pushes a chain forward along a vertex map; terms whose image repeats a
/// vertex vanish.
pub fn push_forward<R: Coeff>(f: &[usize], c: &Chain<R>) -> Chain<R> {
    let mut out = Chain::zero(c.degree);
    for (p, x) in &c.terms {
        let q = p.map(f);
        if q.is_regular() {
            out.add_term(q, x.clone());
        }
    }
    out
}

/// Cross product of chains on `X` and `Y`, landing in `X ⊠ Y` where `(x, y)`
/// has index `x * ny + y`.
///
/// Each pair of elementary terms contributes every staircase path from
/// `(x0, y0)` to `(xp, yq)`, signed by `(−1)^L` where `L` adds up, over the
/// X-steps, the number of Y-steps taken before.
pub fn cross_product<R: Coeff>(u: &Chain<R>, v: &Chain<R>, ny: usize) -> Chain<R> {
    let mut out = Chain::zero(u.degree + v.degree);
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let xy = x.clone() * y.clone();
            shuffles(&a.0, &b.0, ny, &mut |path, odd| {
                let c = if odd { -xy.clone() } else { xy.clone() };
                out.add_term(ElementaryPath(path), c);
            });
        }
    }
    out
}

fn shuffles(a: &[usize], b: &[usize], ny: usize, emit: &mut impl FnMut(Vec<usize>, bool)) {
    fn rec(
        a: &[usize],
        b: &[usize],
        ny: usize,
        i: usize,
        j: usize,
        l: usize,
        cur: &mut Vec<usize>,
        emit: &mut impl FnMut(Vec<usize>, bool),
    ) {
        if i + 1 == a.len() && j + 1 == b.len() {
            emit(cur.clone(), l % 2 == 1);
            return;
        }
        if i + 1 < a.len() {
            cur.push(a[i + 1] * ny + b[j]);
            rec(a, b, ny, i + 1, j, l + j, cur, emit);
            cur.pop();
        }
        if j + 1 < b.len() {
            cur.push(a[i] * ny + b[j + 1]);
            rec(a, b, ny, i, j + 1, l, cur, emit);
            cur.pop();
        }
    }
    let mut cur = vec![a[0] * ny + b[0]];
    rec(a, b, ny, 0, 0, 0, &mut cur, emit);
}

/// `ω_n = e01 × … × e01` on `I^{⊠n}` (see [`crate::digraph::cube`] for the
/// vertex indexing). `ω_0` is the single vertex.
pub fn omega(n: usize) -> Result<IntChain> {
    if n > crate::digraph::DEFAULT_CUBE_CAP {
        return Err(Error::CapExceeded {
            what: "omega degree",
            requested: n,
            cap: crate::digraph::DEFAULT_CUBE_CAP,
        });
    }
    let e01 = IntChain::elementary(ElementaryPath(vec![0, 1]));
    let mut w = IntChain::elementary(ElementaryPath(vec![0]));
    for _ in 0..n {
        w = cross_product(&w, &e01, 2);
    }
    Ok(w)
}

/// Parses chain notation such as `e0136 - e0156 + 2e(10)45`. Vertex tokens
/// are single characters, or any text in parentheses.
pub fn parse_chain(text: &str, g: &Digraph) -> Result<IntChain> {
    let err = |reason: String| Error::Parse { line: 1, reason };
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    let mut out: Option<IntChain> = None;
    let mut first = true;
    while i < chars.len() {
        let mut sign = 1i64;
        match chars[i] {
            '+' => i += 1,
            '-' => {
                sign = -1;
                i += 1
            }
            _ if first => {}
            c => return Err(err(format!("expected + or -, found {c}"))),
        }
        first = false;
        let st = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let mag: i64 = if st == i {
            1
        } else {
            chars[st..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| err("bad coefficient".into()))?
        };
        if i >= chars.len() || chars[i] != 'e' {
            return Err(err("expected elementary path e...".into()));
        }
        i += 1;
        let mut vs = Vec::new();
        while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            let tok = if chars[i] == '(' {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| err("unclosed (".into()))?;
                let t: String = chars[i + 1..i + close].iter().collect();
                i += close + 1;
                t
            } else {
                i += 1;
                chars[i - 1].to_string()
            };
            vs.push(g.vertex(&tok)?);
        }
        if vs.is_empty() {
            return Err(err("empty elementary path".into()));
        }
        let p = ElementaryPath(vs);
        let c = out.get_or_insert_with(|| IntChain::zero(p.len()));
        if c.degree() != p.len() {
            return Err(err("terms of different lengths".into()));
        }
        c.add_term(p, sign * mag);
    }
    out.ok_or_else(|| err("empty chain".into()))
}

/// Reads an `i64` coefficient as a rational.
pub fn r(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}
