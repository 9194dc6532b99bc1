use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dicell::cellular::{cellular_basis, cellular_complex, kunneth_check};
use dicell::corpus::run_corpus;
use dicell::cubical::{conjecture_probe, cubical_homology_with, DEFAULT_CUBICAL_BUDGET, DEFAULT_CUBICAL_CAP};
use dicell::digraph::{cartesian_product, generate, Digraph, FAMILIES};
use dicell::io::{parse_digraph, to_dot, to_edge_list, to_json_value};
use dicell::minimal::{enumerate_minimal_paths_with_budget, validate_structure_theorem, MinimalPathRecord, DEFAULT_SEARCH_BUDGET};
use dicell::path_complex::{omega_complex, omega_space, Domain, HomologyReport};
use dicell::realization::{classify_with_budget, Admissibility, DEFAULT_REALIZATION_BUDGET};
use dicell::Error;

#[derive(Parser)]
#[command(name = "dicell", version, about = "Cellular, path and cubical homology of finite digraphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Node cap for the backtracking searches (minimal paths, realizations, cubes).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Suppress warnings and, for verify-paper, passing checks.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Int,
    Rat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theory {
    Path,
    Cellular,
    Cubical,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named digraph family, e.g. `circulant 5 1,2`.
    Gen {
        family: String,
        params: Vec<String>,
    },
    /// Dimension and basis of the path complex in one or all degrees.
    Omega {
        file: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Coeff::Int)]
        coeff: Coeff,
    },
    /// Homology report for one theory.
    Homology {
        file: String,
        #[arg(long, value_enum)]
        theory: Theory,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Minimal paths of one degree.
    Minimal {
        file: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        supp: bool,
        #[arg(long)]
        validate_structure: bool,
    },
    /// Admissibility of every minimal path of one degree.
    Admissible {
        file: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        witnesses: bool,
    },
    /// Box product of two digraphs.
    Product {
        x: String,
        y: String,
        #[arg(long)]
        kunneth: bool,
        /// Highest degree compared by --kunneth.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Compare cellular and singular cubical Betti numbers.
    ProbeConjecture {
        file: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Run the worked-example fixtures.
    VerifyPaper {
        #[arg(long)]
        filter: Option<String>,
    },
    /// Directed DOT export.
    ExportDot { file: String },
}

enum Failure {
    Usage(String),
    Lib(Error),
    /// The command ran but reports failing checks.
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(e) => match e {
                Error::Parse { .. }
                | Error::SelfLoop(_)
                | Error::UnknownVertex(_)
                | Error::DuplicateVertex(_)
                | Error::BadParameter(_)
                | Error::BadJump(_)
                | Error::UnknownFixture(_) => 2,
                _ => 1,
            },
            Failure::Checks(_) => 1,
        }
    }

    fn kind(&self) -> String {
        match self {
            Failure::Usage(_) => "usage".into(),
            Failure::Checks(_) => "checks_failed".into(),
            Failure::Lib(e) => {
                let dbg = format!("{e:?}");
                let head: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
                head
            }
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Checks(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

struct Out {
    format: Format,
    quiet: bool,
}

impl Out {
    fn emit(&self, text: String, value: Value) {
        let body = match self.format {
            Format::Text => text,
            Format::Json => serde_json::to_string_pretty(&value).expect("serializable") + "\n",
        };
        write_stdout(&body);
    }

    fn warn(&self, msg: &str) {
        if !self.quiet {
            eprintln!("warning: {msg}");
        }
    }
}

// a closed pipe (e.g. `| head`) is not an error worth reporting
fn write_stdout(body: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(body.as_bytes()).and_then(|_| out.flush());
}

fn json_error(kind: &str, message: &str, code: u8) {
    let v = json!({"error": {"kind": kind, "message": message, "exit_code": code}});
    write_stdout(&(serde_json::to_string_pretty(&v).expect("serializable") + "\n"));
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn load(path: &str, out: &Out) -> Result<Digraph, Failure> {
    let parsed = parse_digraph(&read_source(path)?)?;
    for w in &parsed.warnings {
        out.warn(w);
    }
    Ok(parsed.digraph)
}

fn betti_text(b: &[usize]) -> String {
    let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn homology_output(g: &Digraph, mut r: HomologyReport, max_degree: Option<usize>) -> (String, Value) {
    if let Some(d) = max_degree {
        r.degrees.truncate(d + 1);
        r.generators.truncate(d + 1);
    }
    let gens: Vec<Vec<String>> = r.generators.iter().map(|gs| gs.iter().map(|c| c.format(g)).collect()).collect();
    let mut text = format!(
        "{} homology of {}{}\n{:>6} {:>6} {:>6} {:>6}\n",
        r.theory,
        r.name,
        if r.reduced { " (reduced)" } else { "" },
        "degree",
        "dim",
        "rank",
        "betti"
    );
    for d in &r.degrees {
        let mark = if d.upper_bound_only { " (upper bound)" } else { "" };
        text.push_str(&format!("{:>6} {:>6} {:>6} {:>6}{mark}\n", d.degree, d.dim, d.boundary_rank, d.betti));
    }
    text.push_str(&format!("betti {}\n", betti_text(&r.betti())));
    for (n, gs) in gens.iter().enumerate() {
        for c in gs {
            text.push_str(&format!("H_{n} generator: {c}\n"));
        }
    }
    let mut v = serde_json::to_value(&r).expect("serializable");
    v["betti"] = json!(r.betti());
    if !gens.is_empty() {
        v["generators"] = json!(gens);
    }
    (text, v)
}

fn record_json(g: &Digraph, p: &MinimalPathRecord, supp: bool, validate: bool) -> Result<Value, Failure> {
    let mut v = json!({
        "path": p.format(g),
        "start": g.label(p.start),
        "end": g.label(p.end),
        "terms": p.ne(),
    });
    if supp {
        let s = &p.supp.graph;
        let table = |t: &std::collections::BTreeMap<usize, usize>| -> Value {
            t.iter().map(|(k, d)| (g.label(*k).to_string(), json!(d))).collect::<serde_json::Map<_, _>>().into()
        };
        v["supp"] = json!({
            "vertices": s.labels(),
            "edges": s.edge_labels().into_iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        });
        v["face_components"] = json!(p.nf()?);
        v["d_s"] = table(&p.d_s);
        v["d_e"] = table(&p.d_e);
    }
    if validate {
        let bad: Vec<String> = validate_structure_theorem(p).iter().map(|x| x.to_string()).collect();
        v["structure_violations"] = json!(bad);
    }
    Ok(v)
}

fn run(cli: &Cli, out: &Out) -> Result<(), Failure> {
    let search_budget = cli.budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
    let real_budget = cli.budget.unwrap_or(DEFAULT_REALIZATION_BUDGET);
    let cube_budget = cli.budget.unwrap_or(DEFAULT_CUBICAL_BUDGET);
    match &cli.command {
        Command::Gen { family, params } => {
            if !FAMILIES.contains(&family.as_str()) {
                return Err(Failure::Usage(format!("unknown family {family}; known: {}", FAMILIES.join(", "))));
            }
            let g = generate(family, params)?;
            out.emit(to_edge_list(&g), to_json_value(&g));
        }
        Command::Omega { file, degree, coeff } => {
            let g = load(file, out)?;
            let domain = match coeff {
                Coeff::Int => Domain::Integers,
                Coeff::Rat => Domain::Rationals,
            };
            let degrees: Vec<usize> = match degree {
                Some(n) => vec![*n],
                None => (0..g.vertex_count()).collect(),
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for n in degrees {
                let b = omega_space(&g, n, domain);
                if degree.is_none() && b.dim() == 0 {
                    break;
                }
                let basis: Vec<String> = b.basis.iter().map(|c| c.format(&g)).collect();
                text.push_str(&format!("dim Omega_{n} = {}\n", b.dim()));
                if degree.is_some() {
                    for c in &basis {
                        text.push_str(&format!("  {c}\n"));
                    }
                }
                rows.push(json!({"degree": n, "dim": b.dim(), "basis": basis}));
            }
            let coeff = match coeff {
                Coeff::Int => "int",
                Coeff::Rat => "rat",
            };
            out.emit(text, json!({"digraph": g.name(), "coeff": coeff, "degrees": rows}));
        }
        Command::Homology { file, theory, reduced, max_degree } => {
            let g = load(file, out)?;
            let report = match theory {
                Theory::Path => omega_complex(&g, *reduced)?.report(),
                Theory::Cellular => {
                    let basis = cellular_basis(&g)?;
                    cellular_complex(&g, &basis, *reduced)?.report()
                }
                Theory::Cubical => {
                    cubical_homology_with(&g, max_degree.unwrap_or(2), *reduced, DEFAULT_CUBICAL_CAP, cube_budget)?
                }
            };
            let (text, v) = homology_output(&g, report, *max_degree);
            out.emit(text, v);
        }
        Command::Minimal { file, degree, supp, validate_structure } => {
            let g = load(file, out)?;
            let ps = enumerate_minimal_paths_with_budget(&g, *degree, search_budget)?;
            let mut text = format!("{} minimal {}-paths\n", ps.len(), degree);
            let mut rows = Vec::new();
            for p in &ps {
                let v = record_json(&g, p, *supp, *validate_structure)?;
                text.push_str(&p.format(&g));
                if *supp {
                    text.push_str(&format!(
                        "  [supp: {} vertices, {} edges; NE {}, NF {}]",
                        p.supp.graph.vertex_count(),
                        p.supp.graph.edge_count(),
                        p.ne(),
                        v["face_components"]
                    ));
                }
                if *validate_structure {
                    let bad = v["structure_violations"].as_array().map_or(0, |a| a.len());
                    text.push_str(if bad == 0 { "  [structure ok]" } else { "  [structure VIOLATED]" });
                }
                text.push('\n');
                rows.push(v);
            }
            out.emit(text, json!({"digraph": g.name(), "degree": degree, "count": ps.len(), "paths": rows}));
        }
        Command::Admissible { file, degree, witnesses } => {
            let g = load(file, out)?;
            let ps = enumerate_minimal_paths_with_budget(&g, *degree, search_budget)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut count = 0;
            for p in &ps {
                let mut v = json!({"path": p.format(&g)});
                match classify_with_budget(&g, p, real_budget)? {
                    Admissibility::Admissible(pair) => {
                        count += 1;
                        v["status"] = json!("admissible");
                        v["scale"] = json!(pair.scale);
                        text.push_str(&format!("admissible      {}\n", p.format(&g)));
                        if *witnesses {
                            let w = pair.witness_labels(&g);
                            let pairs: Vec<String> = w.iter().map(|(a, b)| format!("{a}:{b}")).collect();
                            text.push_str(&format!("  witness {}\n", pairs.join(" ")));
                            v["witness"] = w.into_iter().map(|(a, b)| (a, json!(b))).collect::<serde_json::Map<_, _>>().into();
                        }
                    }
                    Admissibility::Rejected(r) => {
                        v["status"] = json!("rejected");
                        v["reason"] = json!(r.to_string());
                        text.push_str(&format!("rejected        {}  ({r})\n", p.format(&g)));
                    }
                    Admissibility::NoRealization => {
                        v["status"] = json!("no_realization");
                        text.push_str(&format!("no realization  {}\n", p.format(&g)));
                    }
                }
                rows.push(v);
            }
            text.push_str(&format!("{count} of {} minimal {degree}-paths admissible\n", ps.len()));
            out.emit(
                text,
                json!({"digraph": g.name(), "degree": degree, "minimal": ps.len(), "admissible": count, "paths": rows}),
            );
        }
        Command::Product { x, y, kunneth, max_degree } => {
            let gx = load(x, out)?;
            let gy = load(y, out)?;
            let xy = cartesian_product(&gx, &gy);
            let mut text = to_edge_list(&xy);
            let mut v = json!({"product": to_json_value(&xy)});
            if *kunneth {
                let k = kunneth_check(&gx, &gy, *max_degree)?;
                text.push_str(&format!(
                    "# kunneth up to degree {max_degree}: dims {} betti {} cross-basis {}\n# betti X {} Y {} XxY {}\n",
                    k.dims_match,
                    k.betti_match,
                    k.cross_products_form_basis,
                    betti_text(&k.betti_x),
                    betti_text(&k.betti_y),
                    betti_text(&k.betti_product)
                ));
                v["kunneth"] = serde_json::to_value(&k).expect("serializable");
                v["kunneth"]["holds"] = json!(k.holds());
            }
            out.emit(text, v);
        }
        Command::ProbeConjecture { file, max_degree } => {
            let g = load(file, out)?;
            let r = conjecture_probe(&g, *max_degree, cube_budget)?;
            let mut text = format!(
                "cellular {}\ncubical  {}\n",
                betti_text(&r.cellular),
                betti_text(&r.cubical)
            );
            match r.verified_up_to {
                Some(d) => text.push_str(&format!("agree up to degree {d}\n")),
                None => text.push_str("no degree verified\n"),
            }
            if let Some(c) = &r.counterexample {
                text.push_str(&format!("disagree in degree {}: {} vs {}\n", c.degree, c.cellular, c.cubical));
            }
            if !r.upper_bound_degrees.is_empty() {
                text.push_str(&format!("cubical upper bound only in degrees {:?}\n", r.upper_bound_degrees));
            }
            out.emit(text, serde_json::to_value(&r).expect("serializable"));
        }
        Command::VerifyPaper { filter } => {
            let r = run_corpus(filter.as_deref());
            if r.fixtures.is_empty() {
                return Err(Error::UnknownFixture(filter.clone().unwrap_or_default()).into());
            }
            let mut text = String::new();
            for o in &r.results {
                if out.quiet && o.passed {
                    continue;
                }
                let case = if o.case.is_empty() { String::new() } else { format!(" / {}", o.case) };
                text.push_str(&format!(
                    "{} {}{} [{}] {}: {}\n",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.fixture,
                    case,
                    o.locator,
                    o.kind,
                    o.detail
                ));
            }
            let fixtures_ok = r
                .fixtures
                .iter()
                .filter(|f| r.results.iter().filter(|o| &o.fixture == *f).all(|o| o.passed))
                .count();
            text.push_str(&format!(
                "{}/{} fixtures pass; {} checks passed, {} failed\n",
                fixtures_ok,
                r.fixtures.len(),
                r.passed,
                r.failed
            ));
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["fixtures_passed"] = json!(fixtures_ok);
            out.emit(text, v);
            if !r.all_passed() {
                return Err(Failure::Checks(format!("{} checks failed", r.failed)));
            }
        }
        Command::ExportDot { file } => {
            let g = load(file, out)?;
            let dot = to_dot(&g);
            out.emit(dot.clone(), json!({"dot": dot}));
        }
    }
    Ok(())
}

fn wants_json(args: &[String]) -> bool {
    args.windows(2).any(|w| w[0] == "--format" && w[1] == "json") || args.iter().any(|a| a == "--format=json")
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) || !wants_json(&args) {
                e.exit();
            }
            let msg = e.render().to_string();
            let first = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ")
                .trim_start_matches("error: ")
                .to_string();
            json_error("usage", &first, 2);
            return ExitCode::from(2);
        }
    };
    let out = Out {
        format: cli.format,
        quiet: cli.quiet,
    };
    match run(&cli, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let code = f.code();
            match (&f, out.format) {
                // the report has already been printed
                (Failure::Checks(_), Format::Json) => {}
                (_, Format::Json) => json_error(&f.kind(), &f.message(), code),
                (_, Format::Text) => eprintln!("error: {}", f.message()),
            }
            ExitCode::from(code)
        }
    }
}
