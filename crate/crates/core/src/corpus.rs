//! Worked-example fixtures with expected values, and a runner that checks
//! every expectation against the library.
//!
//! A fixture is an expectations file (`fixtures/<id>.json`) naming one or
//! more cases. Each case points at a digraph, either a fixture edge list
//! (`file:<name>`) or a generated family (`gen:<family> <params>`), and lists
//! checks. Every check carries a locator string naming where the expected
//! value comes from.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cellular::{cellular_basis, cellular_chain_space, cellular_complex, CellularBasis};
use crate::chain::{boundary, omega, parse_chain, push_forward, IntChain};
use crate::cubical::{add_cube, cubical_boundary, cubical_homology, tau, CubicalChain, SingularCube};
use crate::digraph::{cube, generate, map_from_labels, Digraph};
use crate::error::{Error, Result};
use crate::homotopy::verify_retraction;
use crate::io::parse_digraph;
use crate::minimal::{canonical_orientation, enumerate_minimal_paths, is_minimal, validate_structure_theorem, MinimalPathRecord};
use crate::path_complex::{in_omega, omega_complex, path_homology, ChainComplex};
use crate::realization::{admissible_set, all_rejections, check_face_admissibility, find_realization, quick_reject, verify_witness, AdmissiblePair, Rejection};

macro_rules! fixture_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../fixtures/", $name)))),*]
    };
}

static FILES: &[(&str, &str)] = fixture_files![
    "app-A-2.txt",
    "app-A-3.txt",
    "app-A-5.txt",
    "app-A-8.txt",
    "app-A-nf7.txt",
    "basic.txt",
    "c3.txt",
    "c4.txt",
    "ex-2.6.txt",
    "ex-2.7.txt",
    "ex-2.8.txt",
    "ex-2.9.txt",
    "ex-3.11.txt",
    "ex-3.11-plus.txt",
    "ex-3.12.txt",
    "ex-3.13.txt",
    "ex-3.18.txt",
    "ex-3.22.txt",
    "ex-3.23.txt",
    "j42.txt",
    "k3.txt",
    "square.txt",
];

static EXPECTATIONS: &[(&str, &str)] = fixture_files![
    "ex-2.6.json",
    "ex-2.7.json",
    "ex-2.8.json",
    "ex-2.9.json",
    "ex-3.7.json",
    "ex-3.8.json",
    "ex-3.9.json",
    "ex-3.10.json",
    "ex-3.11.json",
    "ex-3.12.json",
    "ex-3.13.json",
    "ex-3.18.json",
    "ex-3.19.json",
    "ex-3.21.json",
    "ex-3.22.json",
    "ex-3.23.json",
    "ex-3.31.json",
    "ex-3.32.json",
    "sec-4.1-c5.json",
    "sec-4.1-c7.json",
    "sec-4.2-j42.json",
    "sec-5.2.1.json",
    "sec-5.2.2.json",
    "sec-5.2.3.json",
    "app-A-1.json",
    "app-A-2.json",
    "app-A-3.json",
    "app-A-4.json",
    "app-A-5.json",
    "app-A-6.json",
    "app-A-7.json",
    "app-A-8.json",
    "app-A-nf7.json",
];

/// Label-to-label assignment, e.g. cube vertex `"101"` to digraph vertex `"5"`.
pub type LabelMap = BTreeMap<String, String>;

/// One expectation. Paths and chains use the notation of
/// [`crate::chain::parse_chain`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// Minimal n-paths, up to sign, are exactly `paths`.
    MinimalSet { degree: usize, paths: Vec<String> },
    MinimalCount { degree: usize, count: usize },
    /// Admissible n-paths, up to sign, are exactly `paths`.
    AdmissibleSet { degree: usize, paths: Vec<String> },
    AdmissibleCount { degree: usize, count: usize },
    Minimal { path: String },
    /// In the path complex but not minimal.
    NotMinimal { path: String },
    NotInOmega { path: String },
    Structure { path: String },
    /// Counting data of a minimal path; the counting bounds must also hold.
    Bounds {
        path: String,
        ne: usize,
        #[serde(default)]
        nf: Option<usize>,
        vertices: usize,
    },
    DTables { path: String, d_s: BTreeMap<String, usize>, d_e: BTreeMap<String, usize> },
    /// Supp(path) is the whole fixture digraph.
    SuppIsWhole { path: String },
    Witness { path: String, map: LabelMap },
    Realizable { path: String },
    /// A counting bound rejects the path: `bound` is one of
    /// `vertices`, `edges`, `terms`, `faces`.
    Rejected { path: String, bound: String, count: usize },
    /// Exhaustive realization search fails (bounds not consulted).
    NoRealization { path: String },
    FacesAdmissible { path: String },
    Retraction { onto: Vec<String>, map: LabelMap },
    /// `theory` is `path`, `cellular` or `cubical`.
    Betti {
        theory: String,
        #[serde(default)]
        reduced: bool,
        values: Vec<usize>,
    },
    CellularDim { degree: usize, dim: usize },
    /// Every path is admissible and `Σ coeff·path = 0`.
    Relation { degree: usize, terms: Vec<(i64, String)> },
    RelationsExist { degree: usize },
    /// Some `±a ± b` is in the minimal (`within = "minimal"`) or admissible set.
    Summable { a: String, b: String, within: String, expect: bool },
    /// `a − factor·b` is a boundary, both being cycles.
    Homologous { theory: String, a: String, b: String, factor: i64 },
    NonBounding { theory: String, cycle: String },
    BoundaryEquals { chain: String, equals: String },
    /// `f_*(ω_n) = equals` (`"0"` for zero).
    Pushforward { map: LabelMap, equals: String },
    /// `∂^c(Σ boundary_of) = Σ equals` modulo degenerate cubes.
    CubeBoundary {
        cubes: BTreeMap<String, LabelMap>,
        boundary_of: Vec<(i64, String)>,
        equals: Vec<(i64, String)>,
    },
    /// The assignment is not a digraph map from the cube.
    NotCubeMap { map: LabelMap },
    /// The fixture digraph is the generated one under the vertex bijection.
    IsomorphicTo { generator: String, map: LabelMap },
}

impl Check {
    pub fn kind(&self) -> &'static str {
        match self {
            Check::MinimalSet { .. } => "minimal_set",
            Check::MinimalCount { .. } => "minimal_count",
            Check::AdmissibleSet { .. } => "admissible_set",
            Check::AdmissibleCount { .. } => "admissible_count",
            Check::Minimal { .. } => "minimal",
            Check::NotMinimal { .. } => "not_minimal",
            Check::NotInOmega { .. } => "not_in_omega",
            Check::Structure { .. } => "structure",
            Check::Bounds { .. } => "bounds",
            Check::DTables { .. } => "d_tables",
            Check::SuppIsWhole { .. } => "supp_is_whole",
            Check::Witness { .. } => "witness",
            Check::Realizable { .. } => "realizable",
            Check::Rejected { .. } => "rejected",
            Check::NoRealization { .. } => "no_realization",
            Check::FacesAdmissible { .. } => "faces_admissible",
            Check::Retraction { .. } => "retraction",
            Check::Betti { .. } => "betti",
            Check::CellularDim { .. } => "cellular_dim",
            Check::Relation { .. } => "relation",
            Check::RelationsExist { .. } => "relations_exist",
            Check::Summable { .. } => "summable",
            Check::Homologous { .. } => "homologous",
            Check::NonBounding { .. } => "non_bounding",
            Check::BoundaryEquals { .. } => "boundary_equals",
            Check::Pushforward { .. } => "pushforward",
            Check::CubeBoundary { .. } => "cube_boundary",
            Check::NotCubeMap { .. } => "not_cube_map",
            Check::IsomorphicTo { .. } => "isomorphic_to",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Expectation {
    pub locator: String,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Deserialize)]
struct CaseSpec {
    name: String,
    digraph: String,
    #[serde(default)]
    note: Option<String>,
    checks: Vec<Expectation>,
}

#[derive(Deserialize)]
struct FixtureSpec {
    id: String,
    title: String,
    cases: Vec<CaseSpec>,
}

#[derive(Clone, Debug)]
pub struct FixtureCase {
    pub name: String,
    pub source: String,
    pub note: Option<String>,
    pub digraph: Digraph,
    pub expectations: Vec<Expectation>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub title: String,
    pub cases: Vec<FixtureCase>,
}

pub fn fixture_ids() -> Vec<&'static str> {
    EXPECTATIONS.iter().map(|(f, _)| f.trim_end_matches(".json")).collect()
}

/// Resolves `file:<name>` or `gen:<family> <params>`.
pub fn resolve_digraph(source: &str) -> Result<Digraph> {
    if let Some(name) = source.strip_prefix("file:") {
        let file = format!("{name}.txt");
        let text = FILES
            .iter()
            .find(|(f, _)| *f == file)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::UnknownFixture(source.to_string()))?;
        Ok(parse_digraph(text)?.digraph)
    } else if let Some(spec) = source.strip_prefix("gen:") {
        let mut it = spec.split_whitespace();
        let family = it.next().unwrap_or("");
        let params: Vec<&str> = it.collect();
        generate(family, &params)
    } else {
        Err(Error::UnknownFixture(source.to_string()))
    }
}

pub fn load_fixture(id: &str) -> Result<Fixture> {
    let file = format!("{id}.json");
    let text = EXPECTATIONS
        .iter()
        .find(|(f, _)| *f == file)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownFixture(id.to_string()))?;
    let spec: FixtureSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        reason: format!("{file}: {e}"),
    })?;
    let mut cases = Vec::new();
    for c in spec.cases {
        let digraph = resolve_digraph(&c.digraph)?.with_name(&format!("{}/{}", spec.id, c.name));
        cases.push(FixtureCase {
            name: c.name,
            source: c.digraph,
            note: c.note,
            digraph,
            expectations: c.checks,
        });
    }
    Ok(Fixture {
        id: spec.id,
        title: spec.title,
        cases,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub fixture: String,
    pub case: String,
    pub kind: String,
    pub locator: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub filter: Option<String>,
    pub fixtures: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs every fixture whose id starts with `filter` (all when `None`).
pub fn run_corpus(filter: Option<&str>) -> SuiteReport {
    let mut results = Vec::new();
    let mut fixtures = Vec::new();
    for id in fixture_ids() {
        if filter.is_some_and(|f| !id.starts_with(f)) {
            continue;
        }
        fixtures.push(id.to_string());
        match load_fixture(id) {
            Ok(fx) => results.extend(run_fixture(&fx)),
            Err(e) => results.push(CheckOutcome {
                fixture: id.to_string(),
                case: String::new(),
                kind: "load".into(),
                locator: String::new(),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    SuiteReport {
        filter: filter.map(str::to_string),
        fixtures,
        passed,
        failed: results.len() - passed,
        results,
    }
}

pub fn run_fixture(fx: &Fixture) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for case in &fx.cases {
        let mut ctx = Context::new(&case.digraph);
        for e in &case.expectations {
            let (passed, detail) = match ctx.check(&e.check) {
                Ok(r) => r,
                Err(err) => (false, format!("error: {err}")),
            };
            out.push(CheckOutcome {
                fixture: fx.id.clone(),
                case: case.name.clone(),
                kind: e.check.kind().to_string(),
                locator: e.locator.clone(),
                passed,
                detail,
            });
        }
    }
    out
}

/// Per-digraph caches shared by the checks of one case.
pub struct Context<'a> {
    g: &'a Digraph,
    minimal: HashMap<usize, Vec<MinimalPathRecord>>,
    admissible: HashMap<usize, Vec<AdmissiblePair>>,
    basis: Option<CellularBasis>,
}

type Outcome = Result<(bool, String)>;

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    Ok((ok, detail.into()))
}

impl<'a> Context<'a> {
    pub fn new(g: &'a Digraph) -> Self {
        Context {
            g,
            minimal: HashMap::new(),
            admissible: HashMap::new(),
            basis: None,
        }
    }

    fn chain(&self, s: &str) -> Result<IntChain> {
        parse_chain(s, self.g)
    }

    fn record(&self, s: &str) -> Result<MinimalPathRecord> {
        Ok(MinimalPathRecord::new(self.g, &self.chain(s)?))
    }

    fn minimal(&mut self, n: usize) -> Result<&[MinimalPathRecord]> {
        if !self.minimal.contains_key(&n) {
            let v = enumerate_minimal_paths(self.g, n)?;
            self.minimal.insert(n, v);
        }
        Ok(&self.minimal[&n])
    }

    fn admissible(&mut self, n: usize) -> Result<&[AdmissiblePair]> {
        if !self.admissible.contains_key(&n) {
            let v = admissible_set(self.g, n)?;
            self.admissible.insert(n, v);
        }
        Ok(&self.admissible[&n])
    }

    fn basis(&mut self) -> Result<&CellularBasis> {
        if self.basis.is_none() {
            self.basis = Some(cellular_basis(self.g)?);
        }
        Ok(self.basis.as_ref().unwrap())
    }

    fn complex(&mut self, theory: &str) -> Result<ChainComplex> {
        match theory {
            "path" => omega_complex(self.g, false),
            "cellular" => {
                let g = self.g;
                let b = self.basis()?.clone();
                cellular_complex(g, &b, false)
            }
            t => Err(Error::BadParameter(format!("theory {t}"))),
        }
    }

    fn canon_set(&self, chains: impl Iterator<Item = IntChain>) -> BTreeSet<String> {
        chains.map(|c| canonical_orientation(&c).format(self.g)).collect()
    }

    fn printed_set(&self, paths: &[String]) -> Result<BTreeSet<String>> {
        let cs = paths.iter().map(|p| self.chain(p)).collect::<Result<Vec<_>>>()?;
        Ok(self.canon_set(cs.into_iter()))
    }

    fn cube_map(&self, map: &LabelMap) -> Result<Vec<usize>> {
        let n = map.keys().next().map_or(0, |k| k.len());
        let q = cube(n)?;
        let pairs: Vec<(&str, &str)> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        if pairs.len() != q.vertex_count() {
            return Err(Error::NotDigraphMap(format!("{} of {} cube vertices assigned", pairs.len(), q.vertex_count())));
        }
        map_from_labels(&q, self.g, &pairs)
    }

    fn compare(expected: &BTreeSet<String>, got: &BTreeSet<String>) -> Outcome {
        let missing: Vec<&String> = expected.difference(got).collect();
        let extra: Vec<&String> = got.difference(expected).collect();
        if missing.is_empty() && extra.is_empty() {
            verdict(true, format!("{} paths match", got.len()))
        } else {
            verdict(false, format!("missing {missing:?}, unexpected {extra:?}"))
        }
    }

    pub fn check(&mut self, c: &Check) -> Outcome {
        let g = self.g;
        match c {
            Check::MinimalSet { degree, paths } => {
                let exp = self.printed_set(paths)?;
                let chains: Vec<IntChain> = self.minimal(*degree)?.iter().map(|r| r.chain.clone()).collect();
                let got = self.canon_set(chains.into_iter());
                Self::compare(&exp, &got)
            }
            Check::MinimalCount { degree, count } => {
                let n = self.minimal(*degree)?.len();
                verdict(n == *count, format!("{n} minimal {degree}-paths"))
            }
            Check::AdmissibleSet { degree, paths } => {
                let exp = self.printed_set(paths)?;
                let chains: Vec<IntChain> = self.admissible(*degree)?.iter().map(|p| p.path.chain.clone()).collect();
                let got = self.canon_set(chains.into_iter());
                Self::compare(&exp, &got)
            }
            Check::AdmissibleCount { degree, count } => {
                let n = self.admissible(*degree)?.len();
                verdict(n == *count, format!("{n} admissible {degree}-paths"))
            }
            Check::Minimal { path } => {
                let ok = is_minimal(g, &self.chain(path)?)?;
                verdict(ok, if ok { "minimal" } else { "not minimal" })
            }
            Check::NotMinimal { path } => {
                let ch = self.chain(path)?;
                let inside = in_omega(g, &ch);
                let ok = inside && !is_minimal(g, &ch)?;
                verdict(ok, format!("in path complex: {inside}, minimal: {}", inside && !ok))
            }
            Check::NotInOmega { path } => {
                let ok = !in_omega(g, &self.chain(path)?);
                verdict(ok, if ok { "not in the path complex" } else { "in the path complex" })
            }
            Check::Structure { path } => {
                let v = validate_structure_theorem(&self.record(path)?);
                verdict(v.is_empty(), format!("{} violations {v:?}", v.len()))
            }
            Check::Bounds { path, ne, nf, vertices } => {
                let r = self.record(path)?;
                let got_nf = r.nf()?;
                let got_v = r.supp.graph.vertex_count();
                let rej = quick_reject(&r, r.degree())?;
                let ok = r.ne() == *ne && nf.is_none_or(|x| x == got_nf) && got_v == *vertices && rej.is_none();
                verdict(ok, format!("NE {} NF {got_nf} vertices {got_v} rejection {rej:?}", r.ne()))
            }
            Check::DTables { path, d_s, d_e } => {
                let r = self.record(path)?;
                let lab = |m: &BTreeMap<usize, usize>| -> BTreeMap<String, usize> {
                    m.iter().map(|(&v, &d)| (g.label(v).to_string(), d)).collect()
                };
                let (s, e) = (lab(&r.d_s), lab(&r.d_e));
                verdict(&s == d_s && &e == d_e, format!("d_S {s:?} d_E {e:?}"))
            }
            Check::SuppIsWhole { path } => {
                let r = self.record(path)?;
                let s = &r.supp.graph;
                let ok = s.vertex_count() == g.vertex_count() && s.edge_count() == g.edge_count();
                verdict(ok, format!("Supp has {} vertices, {} edges", s.vertex_count(), s.edge_count()))
            }
            Check::Witness { path, map } => {
                let r = self.record(path)?;
                let f = self.cube_map(map)?;
                match verify_witness(g, &r, &f) {
                    Ok(c) => verdict(true, format!("f_*(ω) = {c}·P")),
                    Err(e) => verdict(false, e),
                }
            }
            Check::Realizable { path } => {
                let r = self.record(path)?;
                match find_realization(g, &r)? {
                    Some(p) => match p.verify(g) {
                        Ok(()) => verdict(true, format!("witness found, scale {}", p.scale)),
                        Err(e) => verdict(false, format!("found witness fails: {e}")),
                    },
                    None => verdict(false, "no realization found"),
                }
            }
            Check::Rejected { path, bound, count } => {
                let r = self.record(path)?;
                let all = all_rejections(&r, r.degree())?;
                let ok = all.iter().any(|rej| {
                    matches!(
                        (rej, bound.as_str()),
                        (Rejection::Vertices { count: c, .. }, "vertices")
                            | (Rejection::Edges { count: c, .. }, "edges")
                            | (Rejection::ElementaryTerms { count: c, .. }, "terms")
                            | (Rejection::FaceComponents { count: c, .. }, "faces")
                            if c == count
                    )
                });
                let fired: Vec<String> = all.iter().map(|x| x.to_string()).collect();
                verdict(ok, if fired.is_empty() { "no bound fires".into() } else { fired.join("; ") })
            }
            Check::NoRealization { path } => {
                let r = self.record(path)?;
                let found = find_realization(g, &r)?;
                verdict(found.is_none(), if found.is_none() { "search exhausted" } else { "a realization exists" })
            }
            Check::FacesAdmissible { path } => {
                let r = self.record(path)?;
                let Some(pair) = find_realization(g, &r)? else {
                    return verdict(false, "path itself has no realization");
                };
                let bad = check_face_admissibility(g, &pair)?;
                verdict(bad.is_empty(), format!("non-admissible faces {bad:?}"))
            }
            Check::Retraction { onto, map } => {
                let mut vs = BTreeSet::new();
                let mut es = BTreeSet::new();
                for e in onto {
                    let (a, b) = e
                        .split_once("->")
                        .ok_or_else(|| Error::BadParameter(format!("edge {e}")))?;
                    let (a, b) = (g.vertex(a.trim())?, g.vertex(b.trim())?);
                    if !g.has_edge(a, b) {
                        return verdict(false, format!("{e} is not an edge"));
                    }
                    vs.extend([a, b]);
                    es.insert((a, b));
                }
                let sub = g.subgraph("face", &vs, &es);
                let pairs: Vec<(&str, &str)> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                let r = map_from_labels(g, &sub.graph, &pairs)?;
                let rc = verify_retraction(g, &sub.graph, &r);
                let broken: Vec<String> = g
                    .edges()
                    .filter(|&(a, b)| r[a] != r[b] && !sub.graph.has_edge(r[a], r[b]))
                    .map(|(a, b)| {
                        format!("{}->{} goes to {}->{}", g.label(a), g.label(b), sub.graph.label(r[a]), sub.graph.label(r[b]))
                    })
                    .collect();
                let detail = if broken.is_empty() {
                    format!("{rc:?}")
                } else {
                    format!("{rc:?}; {}", broken.join(", "))
                };
                verdict(rc.holds(), detail)
            }
            Check::Betti { theory, reduced, values } => {
                let rep = match theory.as_str() {
                    "path" => path_homology(g, *reduced)?,
                    "cellular" => {
                        let b = self.basis()?.clone();
                        cellular_complex(g, &b, *reduced)?.report()
                    }
                    "cubical" => {
                        if *reduced {
                            return Err(Error::BadParameter("reduced cubical expectation".into()));
                        }
                        let r = cubical_homology(g, values.len().saturating_sub(1))?;
                        if r.degrees.iter().any(|d| d.upper_bound_only) {
                            return verdict(false, format!("only upper bounds: {:?}", r.betti()));
                        }
                        r
                    }
                    t => return Err(Error::BadParameter(format!("theory {t}"))),
                };
                let got = rep.betti_padded(values.len());
                let tail_zero = rep.betti().iter().skip(values.len()).all(|&b| b == 0);
                verdict(&got == values && tail_zero, format!("{theory} Betti {:?}", rep.betti()))
            }
            Check::CellularDim { degree, dim } => {
                let d = cellular_chain_space(g, *degree)?.dim();
                verdict(d == *dim, format!("dim C_{degree} = {d}"))
            }
            Check::Relation { degree, terms } => {
                let set: BTreeSet<String> = {
                    let chains: Vec<IntChain> = self.admissible(*degree)?.iter().map(|p| p.path.chain.clone()).collect();
                    self.canon_set(chains.into_iter())
                };
                let mut sum = IntChain::zero(*degree);
                for (x, p) in terms {
                    let ch = self.chain(p)?;
                    if !set.contains(&canonical_orientation(&ch).format(g)) {
                        return verdict(false, format!("{p} is not admissible"));
                    }
                    sum = &sum + &ch.scale(x);
                }
                verdict(sum.is_zero(), format!("sum = {}", sum.format(g)))
            }
            Check::RelationsExist { degree } => {
                let d = cellular_chain_space(g, *degree)?;
                let k = d.relation_count();
                verdict(k > 0, format!("{} admissible, dim {}, {k} relations", d.admissible.len(), d.dim()))
            }
            Check::Summable { a, b, within, expect } => {
                let (ca, cb) = (self.chain(a)?, self.chain(b)?);
                let chains: Vec<IntChain> = match within.as_str() {
                    "minimal" => self.minimal(ca.degree())?.iter().map(|r| r.chain.clone()).collect(),
                    "admissible" => self.admissible(ca.degree())?.iter().map(|p| p.path.chain.clone()).collect(),
                    w => return Err(Error::BadParameter(format!("within {w}"))),
                };
                let set = self.canon_set(chains.into_iter());
                let hit = [&ca + &cb, &ca - &cb]
                    .iter()
                    .find(|s| set.contains(&canonical_orientation(s).format(g)))
                    .map(|s| canonical_orientation(s).format(g));
                verdict(hit.is_some() == *expect, format!("sum in {within} set: {hit:?}"))
            }
            Check::Homologous { theory, a, b, factor } => {
                let cx = self.complex(theory)?;
                let (ra, rb) = (self.chain(a)?.to_rational(), self.chain(b)?.to_rational());
                let diff = &ra - &rb.scale(&crate::linalg::rat(*factor));
                let ok = cx.is_cycle(&ra) && cx.is_cycle(&rb) && cx.is_boundary(&diff);
                verdict(ok, format!("cycles: {} {}, difference bounds: {}", cx.is_cycle(&ra), cx.is_cycle(&rb), cx.is_boundary(&diff)))
            }
            Check::NonBounding { theory, cycle } => {
                let cx = self.complex(theory)?;
                let r = self.chain(cycle)?.to_rational();
                let (z, b) = (cx.is_cycle(&r), cx.is_boundary(&r));
                verdict(z && !b, format!("cycle: {z}, boundary: {b}"))
            }
            Check::BoundaryEquals { chain, equals } => {
                let d = boundary(&self.chain(chain)?);
                let e = self.chain(equals)?;
                verdict(d == e, format!("boundary = {}", d.format(g)))
            }
            Check::Pushforward { map, equals } => {
                let f = self.cube_map(map)?;
                let n = f.len().trailing_zeros() as usize;
                let got = push_forward(&f, &omega(n)?);
                let exp = if equals.trim() == "0" { IntChain::zero(n) } else { self.chain(equals)? };
                verdict(got == exp, format!("f_*(ω_{n}) = {}", if got.is_zero() { "0".into() } else { got.format(g) }))
            }
            Check::CubeBoundary { cubes, boundary_of, equals } => {
                let mut qs = BTreeMap::new();
                for (name, m) in cubes {
                    qs.insert(name.as_str(), SingularCube::new(g, self.cube_map(m)?)?);
                }
                let get = |n: &str| qs.get(n).cloned().ok_or_else(|| Error::BadParameter(format!("cube {n}")));
                let mut lhs = CubicalChain::new();
                for (x, n) in boundary_of {
                    for (f, y) in cubical_boundary(&get(n)?) {
                        add_cube(&mut lhs, f, x * y);
                    }
                }
                let mut rhs = CubicalChain::new();
                for (x, n) in equals {
                    add_cube(&mut rhs, get(n)?, *x);
                }
                let show = |c: &CubicalChain| -> String {
                    let parts: Vec<String> = c.iter().map(|(q, x)| format!("{x}{}", q.format(g))).collect();
                    if parts.is_empty() { "0".into() } else { parts.join(" ") }
                };
                let mut residual = lhs.clone();
                for (q, x) in rhs {
                    add_cube(&mut residual, q, -x);
                }
                let mut image: Option<IntChain> = None;
                for (q, x) in &residual {
                    let t = tau(q)?.scale(x);
                    image = Some(match image {
                        Some(acc) => &acc + &t,
                        None => t,
                    });
                }
                let image = image.map_or("0".into(), |c| if c.is_zero() { "0".into() } else { c.format(g) });
                verdict(
                    residual.is_empty(),
                    format!("boundary = {}; residual = {}; τ(residual) = {image}", show(&lhs), show(&residual)),
                )
            }
            Check::NotCubeMap { map } => match SingularCube::new(g, self.cube_map(map)?) {
                Err(Error::NotDigraphMap(why)) => verdict(true, why),
                Err(e) => Err(e),
                Ok(_) => verdict(false, "assignment is a digraph map"),
            },
            Check::IsomorphicTo { generator, map } => {
                let h = resolve_digraph(&format!("gen:{generator}"))?;
                let pairs: Vec<(&str, &str)> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                let f = map_from_labels(g, &h, &pairs)?;
                let bij = f.iter().collect::<BTreeSet<_>>().len() == h.vertex_count() && g.vertex_count() == h.vertex_count();
                let edges: BTreeSet<(usize, usize)> = g.edges().map(|(a, b)| (f[a], f[b])).collect();
                let same = edges == h.edges().collect::<BTreeSet<_>>();
                verdict(bij && same, format!("bijective: {bij}, edges agree: {same}"))
            }
        }
    }
}

/// Every fixture digraph, for the global suites.
pub fn all_fixture_digraphs() -> Result<Vec<Digraph>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for id in fixture_ids() {
        for c in load_fixture(id)?.cases {
            if seen.insert(c.source.clone()) {
                out.push(c.digraph);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for id in fixture_ids() {
            let fx = load_fixture(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(!fx.cases.is_empty());
        }
        assert!(matches!(load_fixture("nope"), Err(Error::UnknownFixture(_))));
    }
}
