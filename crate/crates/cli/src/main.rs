use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qsym_core::aut::{automorphism_group, is_vertex_transitive};
use qsym_core::catalog::{catalog, find_entry, run_report, sanity_entries, ReportOptions, Subclass};
use qsym_core::engine::{
    decide, parse_certificate, render_certificate, serialize_certificate, verify_certificate, Certificate,
    DecideOptions, ProofStep, RenderFormat, Verdict,
};
use qsym_core::graph::{build_named, named_aliases, read_graph, spectrum, write_graph};
use qsym_core::groebner::{buchberger, commutation_matrix, default_degree_cap, quantum_relations};
use qsym_core::{Error, Graph};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

const DECIDED: u8 = 0;
const FAILED: u8 = 1;
const UNDECIDED: u8 = 2;

#[derive(Parser)]
#[command(name = "qsym", version, about = "Decide whether small graphs have quantum symmetry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the catalog and the accepted name syntax.
    List,
    /// Basic invariants of a graph.
    Show {
        graph: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide quantum symmetry.
    Decide(DecideArgs),
    /// Render, or with --verify re-check, a commutativity certificate.
    Certificate {
        /// Graph to prove; optional with --verify, where it overrides the embedded graph.
        graph: Option<String>,
        #[arg(long, value_name = "FILE")]
        verify: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Degree-capped Groebner basis of the quantum automorphism relations.
    Groebner {
        graph: String,
        /// Defaults to 4 up to six vertices, 3 above.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 2_000_000)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the whole catalog and compare with the expected classification.
    Report {
        #[arg(long)]
        subclass: Option<String>,
        /// Append the small sanity graphs.
        #[arg(long)]
        sanity: bool,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct DecideArgs {
    graph: String,
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    engine: Engine,
    #[command(flatten)]
    run: RunArgs,
    /// Degree cap for the groebner engine.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Where to write the serialized certificate.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Seconds.
    #[arg(long, default_value_t = 30.0)]
    timeout: f64,
    #[arg(long, default_value_t = 8)]
    max_rounds: usize,
}

impl RunArgs {
    fn options(&self, engine: Engine) -> Result<DecideOptions> {
        if !(self.timeout > 0.0 && self.timeout.is_finite()) {
            bail!("--timeout must be positive");
        }
        let base = match engine {
            Engine::Lemmas => DecideOptions::lemmas_only(),
            _ => DecideOptions::default(),
        };
        Ok(DecideOptions { timeout: Duration::from_secs_f64(self.timeout), max_rounds: self.max_rounds, ..base })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Auto,
    Lemmas,
    Groebner,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Md,
    Latex,
    Structured,
}

/// A path to an existing file, otherwise a catalog or constructor name.
fn load_graph(source: &str) -> Result<Graph> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        let g = read_graph(&text).with_context(|| format!("parsing {source}"))?;
        return Ok(if g.label().is_some() { g } else { g.with_label(source) });
    }
    match find_entry(source) {
        Some(e) => Ok(e.build()?),
        None => build_named(source).map_err(|e| match e {
            Error::UnknownName(_) => anyhow!("`{source}` is neither a file nor a known graph name (see `qsym list`)"),
            other => other.into(),
        }),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn cmd_list() -> Result<u8> {
    println!("{:<16} {:<14} {:<10} {:>10}  quantum automorphism group", "name", "subclass", "quantum", "|Aut|");
    for e in catalog().iter().chain(sanity_entries().iter()) {
        let order = e.expected_aut_order.map(|o| o.to_string()).unwrap_or_default();
        let flag = if e.expected_has_qsym { "yes" } else { "no" };
        println!("{:<16} {:<14} {:<10} {:>10}  {}", e.name, e.subclass.as_str(), flag, order, e.qaut_group);
    }
    println!("\nname syntax:");
    for (k, v) in named_aliases() {
        println!("  {k:<20} {v}");
    }
    Ok(DECIDED)
}

fn cmd_show(source: &str, format: Format) -> Result<u8> {
    let g = load_graph(source)?;
    let group = automorphism_group(&g)?;
    let d = g.distances();
    let spec: Vec<f64> = spectrum(&g).iter().map(|x| (x * 1e6).round() / 1e6).collect();
    let transitive = is_vertex_transitive(&g)?;
    if format == Format::Structured {
        let v = json!({
            "name": g.label(),
            "vertices": g.n(),
            "edges": g.edge_count(),
            "degree": g.regular_degree(),
            "connected": g.is_connected(),
            "diameter": d.diameter(),
            "aut_order": group.order(),
            "vertex_transitive": transitive,
            "orbits": group.vertex_orbits().iter().map(|o| o.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "generators": group.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "spectrum": spec,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
        return Ok(DECIDED);
    }
    println!("graph: {}", g.label().unwrap_or(source));
    println!("vertices: {}  edges: {}", g.n(), g.edge_count());
    match g.regular_degree() {
        Some(k) => println!("regular of degree {k}"),
        None => println!("not regular"),
    }
    match d.diameter() {
        Some(x) => println!("connected, diameter {x}"),
        None => println!("disconnected"),
    }
    println!("|Aut| = {}{}", group.order(), if transitive { ", vertex-transitive" } else { "" });
    for p in group.generators() {
        println!("  generator {p}");
    }
    println!("spectrum: {spec:?}");
    print!("{}", write_graph(&g));
    Ok(DECIDED)
}

fn step_counts(cert: &Certificate) -> BTreeMap<&'static str, usize> {
    let mut counts = BTreeMap::new();
    for s in cert.steps() {
        *counts.entry(s.keyword()).or_insert(0) += 1;
    }
    counts
}

fn decide_groebner(g: &Graph, max_degree: Option<usize>) -> Result<u8> {
    let cap = max_degree.unwrap_or_else(|| default_degree_cap(g.n()));
    let gb = buchberger(&quantum_relations(g), cap, 2_000_000)?;
    let m = commutation_matrix(g, &gb);
    if m.all_reduce() {
        println!("NoQuantumSymmetry");
        println!("all {} generator commutators reduce to 0 at degree cap {cap}", m.commutators);
        Ok(DECIDED)
    } else {
        println!("Undecided");
        println!("{} of {} commutators reduce at degree cap {cap}; an irreducible commutator proves nothing", m.reduced, m.commutators);
        Ok(UNDECIDED)
    }
}

fn cmd_decide(a: &DecideArgs) -> Result<u8> {
    let g = load_graph(&a.graph)?;
    if a.engine == Engine::Groebner {
        return decide_groebner(&g, a.max_degree);
    }
    let v = decide(&g, &a.run.options(a.engine)?)?;
    if let (Verdict::NoQuantumSymmetry { certificate }, Some(path)) = (&v, &a.output) {
        emit(&serialize_certificate(certificate), Some(path))?;
    }
    if a.format == Format::Structured {
        let detail = match &v {
            Verdict::HasQuantumSymmetry { witness } => {
                json!({ "sigma": witness.sigma.to_string(), "tau": witness.tau.to_string() })
            }
            Verdict::NoQuantumSymmetry { certificate } => json!({ "steps": step_counts(certificate) }),
            Verdict::Undecided { reason, summary } => json!({ "reason": reason, "summary": summary }),
        };
        println!("{}", serde_json::to_string_pretty(&json!({ "graph": g.label(), "verdict": v.name(), "detail": detail }))?);
    } else {
        println!("{}", v.name());
        match &v {
            Verdict::HasQuantumSymmetry { witness } => {
                println!("sigma = {}", witness.sigma);
                println!("tau   = {}", witness.tau);
            }
            Verdict::NoQuantumSymmetry { certificate } => {
                println!("certificate: {} steps", certificate.steps().len());
                for (k, c) in step_counts(certificate) {
                    println!("  {k}: {c}");
                }
                match &a.output {
                    Some(p) => println!("certificate written to {}", p.display()),
                    None => println!("pass --output FILE to save the certificate"),
                }
            }
            Verdict::Undecided { reason, summary } => {
                println!("reason: {reason}");
                println!("commuting pairs: {}/{}", summary.commuting_pairs, summary.total_pairs);
            }
        }
    }
    Ok(match v {
        Verdict::Undecided { .. } => UNDECIDED,
        _ => DECIDED,
    })
}

fn cmd_verify(file: &Path, graph: Option<&str>) -> Result<u8> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let cert = parse_certificate(&text).with_context(|| format!("parsing {}", file.display()))?;
    let g = match graph {
        Some(s) => load_graph(s)?,
        None => cert.graph().clone(),
    };
    match verify_certificate(&g, &cert) {
        Ok(()) => {
            println!("certificate verified: {} steps", cert.steps().len());
            Ok(DECIDED)
        }
        Err(r) => {
            println!("certificate rejected at {r}");
            if let Some(step) = r.step.checked_sub(1).and_then(|k| cert.steps().get(k)) {
                println!("  offending step: {step}");
            }
            Ok(FAILED)
        }
    }
}

fn cmd_certificate(graph: Option<&str>, verify: Option<&Path>, run: &RunArgs, format: Format, output: Option<&Path>) -> Result<u8> {
    if let Some(file) = verify {
        return cmd_verify(file, graph);
    }
    let source = graph.ok_or_else(|| anyhow!("a graph is required unless --verify is given"))?;
    let g = load_graph(source)?;
    match decide(&g, &run.options(Engine::Auto)?)? {
        Verdict::NoQuantumSymmetry { certificate } => {
            // Prefer the lemma tables when the lemmas alone also close the proof.
            let certificate = match decide(&g, &run.options(Engine::Lemmas)?)? {
                Verdict::NoQuantumSymmetry { certificate } => certificate,
                _ => certificate,
            };
            let text = match format {
                Format::Text => serialize_certificate(&certificate),
                Format::Md => render_certificate(&certificate, RenderFormat::Markdown)?,
                Format::Latex => render_certificate(&certificate, RenderFormat::Latex)?,
                Format::Structured => {
                    let steps: Vec<_> = certificate.steps().iter().map(ProofStep::to_string).collect();
                    serde_json::to_string_pretty(&json!({ "graph": g.label(), "steps": steps }))?
                }
            };
            emit(&text, output)?;
            Ok(DECIDED)
        }
        Verdict::HasQuantumSymmetry { witness } => {
            eprintln!("{source} has quantum symmetry (sigma = {}, tau = {}); no commutativity certificate exists", witness.sigma, witness.tau);
            Ok(FAILED)
        }
        Verdict::Undecided { reason, .. } => {
            eprintln!("undecided: {reason}");
            Ok(UNDECIDED)
        }
    }
}

fn cmd_groebner(source: &str, max_degree: Option<usize>, max_steps: usize, format: Format) -> Result<u8> {
    let g = load_graph(source)?;
    let cap = max_degree.unwrap_or_else(|| default_degree_cap(g.n()));
    let rels = quantum_relations(&g);
    let gb = buchberger(&rels, cap, max_steps)?;
    let m = commutation_matrix(&g, &gb);
    let columns: Vec<String> = m.commuting_columns.iter().map(|(j, l)| format!("{{{},{}}}", j + 1, l + 1)).collect();
    if format == Format::Structured {
        let v = json!({
            "graph": g.label(),
            "relations": rels.len(),
            "degree_cap": cap,
            "basis_size": gb.basis.len(),
            "complete_up_to_degree": gb.complete_up_to_degree,
            "exhausted": gb.exhausted,
            "truncated": gb.truncated,
            "commutators": m.commutators,
            "reduced": m.reduced,
            "commuting_columns": columns,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("graph: {}  relations: {}  degree cap: {cap}", g.label().unwrap_or(source), rels.len());
        println!("basis size: {}  S-polynomials: {}", gb.basis.len(), gb.steps);
        if gb.exhausted {
            println!("complete Groebner basis");
        } else {
            println!("complete up to degree {}", gb.complete_up_to_degree);
        }
        if gb.truncated {
            println!("warning: step budget of {max_steps} exhausted before the degree cap");
        }
        println!("commutators reducing to 0: {}/{}", m.reduced, m.commutators);
        println!("commuting column pairs: {}", if columns.is_empty() { "none".to_string() } else { columns.join(" ") });
        if m.all_reduce() {
            println!("commutative in A+(G): no quantum symmetry");
        } else {
            println!("caveat: a commutator that does not reduce at this cap proves nothing; only reductions to 0 are proofs");
        }
    }
    Ok(if m.all_reduce() { DECIDED } else { UNDECIDED })
}

fn cmd_report(subclass: Option<&str>, sanity: bool, run: &RunArgs, jobs: usize, format: Format, output: Option<&Path>) -> Result<u8> {
    let mut entries = catalog();
    if sanity {
        entries.extend(sanity_entries());
    }
    if let Some(s) = subclass {
        let c = Subclass::parse(s).ok_or_else(|| anyhow!("unknown subclass `{s}`"))?;
        entries.retain(|e| e.subclass == c);
    }
    let report = run_report(&entries, &ReportOptions { decide: run.options(Engine::Auto)?, jobs });
    let text = match format {
        Format::Structured => report.to_json(),
        Format::Md | Format::Text => report.to_markdown(),
        Format::Latex => bail!("report supports md and structured output"),
    };
    emit(&text, output)?;
    for r in report.rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("{}: {}", r.name, r.error.as_deref().unwrap_or_default());
    }
    let contradictions = report.contradictions();
    eprintln!("{} rows, {contradictions} contradictions", report.rows.len());
    Ok(if contradictions > 0 { FAILED } else { DECIDED })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::List => cmd_list(),
        Command::Show { graph, format } => cmd_show(&graph, format),
        Command::Decide(a) => cmd_decide(&a),
        Command::Certificate { graph, verify, run, format, output } => {
            cmd_certificate(graph.as_deref(), verify.as_deref(), &run, format, output.as_deref())
        }
        Command::Groebner { graph, max_degree, max_steps, format } => cmd_groebner(&graph, max_degree, max_steps, format),
        Command::Report { subclass, sanity, run, jobs, format, output } => {
            cmd_report(subclass.as_deref(), sanity, &run, jobs, format, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { FAILED } else { DECIDED });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(FAILED)
        }
    }
}
