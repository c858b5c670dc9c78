use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use goeritz::amalgam::verify_presentation;
use goeritz::bass_serre::{act, act_edge, stabilizer_of};
use goeritz::contract::DEFAULT_FUEL;
use goeritz::farey::{self, random_loop, verify_axioms};
use goeritz::word::{
    abelianize, cyclic_reduce, is_primitive, mixed_sign_criterion, whitehead_minimize, PrimitivityVerdict,
};
use goeritz::{
    ball, contract_loop, normal_form, quotient, seeded_rng, validate, Complex, CosetVertex, FareyConfig, FareyOracles,
    GenWord, HeElement, HqElement, ReducedWord, SimplicialLoop, Slope, TreeEdge, VertexKind,
};

const FIXTURE_NOTE: &str = "Farey complex analogue fixture (not the primitive disk complex itself)";

#[derive(Parser)]
#[command(
    name = "goeritz",
    version,
    about = "Computations in the genus-2 Goeritz group, its Bass-Serre tree and a Farey analogue fixture"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word over b, B, g, d, D (a and t expand to bgBg).
    Nf { word: String },
    /// Decide whether two words represent the same element.
    Eq { first: String, second: String },
    /// Check every relator and a batch of random relator consequences.
    VerifyPresentation {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Primitivity report for a word over x, X, y, Y.
    Primitive { word: String },
    /// Truncated ball of the Bass-Serre tree around the base edge.
    Tree {
        #[command(flatten)]
        ball: BallArgs,
        /// Write the ball in DOT format.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Also print the quotient by the group action.
        #[arg(long)]
        quotient: bool,
    },
    /// Quotient of a tree ball by the group action, with orbit witnesses.
    Quotient {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Stabilizer checks for the base vertices and edge, or for given candidates.
    Stabilizers {
        #[arg(long, value_enum, default_value_t = Kind::Pair)]
        kind: Kind,
        /// Word g; the vertex examined is g applied to the base vertex of the given kind.
        #[arg(long, default_value = "")]
        at: String,
        /// Candidate words; without them the standard report is printed.
        candidates: Vec<String>,
    },
    /// Operations on complexes stored as {"max_simplices": [...]}.
    #[command(subcommand)]
    Simplicial(SimplicialCommand),
    /// Farey complex analogue fixture.
    #[command(subcommand)]
    Farey(FareyCommand),
    /// Contract a seeded random loop and emit its homotopy certificate.
    Contract {
        #[arg(long, value_enum, default_value_t = Fixture::Farey)]
        fixture: Fixture,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        max_denominator: i64,
        /// Length of the random walk before returning to the base vertex.
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, env = "GOERITZ_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
}

#[derive(Args)]
struct BallArgs {
    #[arg(long, default_value_t = 3)]
    radius: usize,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
    max_power: i64,
}

#[derive(Subcommand)]
enum SimplicialCommand {
    /// Report whether the complex is flag.
    Flag { file: PathBuf },
    /// First barycentric subdivision, written as JSON.
    Barycentric {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Subdivide, delete the open stars of the original vertices, report the remaining graph.
    RemoveStars {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FareyCommand {
    /// Slopes of denominator at most N in the window, plus inf.
    Build {
        #[arg(value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
        #[command(flatten)]
        window: Window,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Sample adjacency pairs and check the blocking axioms.
    VerifyAxioms {
        #[arg(value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        window: Window,
    },
}

#[derive(Args)]
struct Window {
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    lo: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    hi: i64,
}

impl Window {
    fn config(&self) -> Result<FareyConfig> {
        if self.lo > self.hi {
            return Err(anyhow!("window [{}, {}] is empty", self.lo, self.hi));
        }
        Ok(FareyConfig { lo: self.lo, hi: self.hi })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pair,
    Triple,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    Farey,
}

/// Result of a subcommand: text and JSON renderings plus a verdict.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn new(verifies: &str, text: String, mut body: Value, ok: bool) -> Self {
        if let Value::Object(map) = &mut body {
            map.insert("verifies".into(), json!(verifies));
        }
        Report { text, json: body, ok }
    }
}

fn parse_gen(s: &str) -> Result<GenWord> {
    GenWord::parse(s).with_context(|| format!("cannot parse word {s:?}"))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn read_complex(path: &Path) -> Result<Complex> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Complex::from_json(&text).with_context(|| format!("invalid complex in {}", path.display()))
}

fn complex_value(k: &Complex) -> Value {
    serde_json::from_str(&k.to_json()).expect("complex JSON is valid")
}

fn kind_of(k: Kind) -> VertexKind {
    match k {
        Kind::Pair => VertexKind::Pair,
        Kind::Triple => VertexKind::Triple,
    }
}

fn cmd_nf(word: &str) -> Result<Report> {
    let w = parse_gen(word)?;
    let nf = normal_form(&w);
    let syllables: Vec<String> = nf.syllables().iter().map(|s| s.to_string()).collect();
    Ok(Report::new(
        "normal form in the amalgamated product H_P *_{H_e} H_Q",
        nf.to_string(),
        json!({ "word": w.to_string(), "normal_form": nf.to_string(), "syllables": syllables, "tail": nf.tail().to_string() }),
        true,
    ))
}

fn cmd_eq(first: &str, second: &str) -> Result<Report> {
    let (u, v) = (parse_gen(first)?, parse_gen(second)?);
    let (nu, nv) = (normal_form(&u), normal_form(&v));
    let equal = nu == nv;
    Ok(Report::new(
        "word problem via uniqueness of amalgam normal forms",
        equal.to_string(),
        json!({ "first": nu.to_string(), "second": nv.to_string(), "equal": equal }),
        true,
    ))
}

fn cmd_verify_presentation(samples: usize, seed: u64) -> Report {
    let report = verify_presentation(&mut seeded_rng(seed), samples);
    let mut text = String::new();
    for (section, checks) in [("relators", &report.relators), ("derived", &report.derived)] {
        text.push_str(&format!("{section}:\n"));
        for r in checks {
            let mark = if r.trivial { "ok  " } else { "FAIL" };
            text.push_str(&format!("  {mark} {:<8} {}\n", r.name, r.normal_form));
        }
    }
    text.push_str(&format!(
        "random consequences: {} checked, {} failures\n",
        report.consequences_checked,
        report.consequence_failures.len()
    ));
    for f in &report.consequence_failures {
        text.push_str(&format!("  failure: {f}\n"));
    }
    text.push_str(if report.passed() { "presentation verified" } else { "presentation FAILED" });
    let ok = report.passed();
    let mut body = serde_json::to_value(&report).expect("report serializes");
    body["seed"] = json!(seed);
    body["passed"] = json!(ok);
    Report::new("finite presentation of the genus-2 Goeritz group", text, body, ok)
}

fn cmd_primitive(word: &str) -> Result<Report> {
    let w: ReducedWord = word.parse().with_context(|| format!("cannot parse word {word:?}"))?;
    let cyclic = cyclic_reduce(&w);
    let verdict = match mixed_sign_criterion(&cyclic) {
        Ok(PrimitivityVerdict::CertifiedNonPrimitive) => "certified non-primitive",
        Ok(PrimitivityVerdict::Inconclusive) => "inconclusive",
        Err(_) => "not applicable (empty word)",
    };
    let minimal = whitehead_minimize(&w);
    let primitive = is_primitive(&w);
    let (ex, ey) = abelianize(&w);
    let text = format!(
        "reduced: {w}\ncyclic reduction: {cyclic}\nabelianization: ({ex}, {ey})\nmixed-sign criterion: {verdict}\nWhitehead minimum: {minimal} (length {})\nprimitive: {primitive}",
        minimal.len()
    );
    let coherent = !(verdict == "certified non-primitive" && primitive);
    Ok(Report::new(
        "mixed-sign non-primitivity criterion and Whitehead primitivity test in F_2",
        text,
        json!({
            "reduced": w.to_string(),
            "cyclic": cyclic.to_string(),
            "abelianization": [ex, ey],
            "criterion": verdict,
            "whitehead_minimum": minimal.to_string(),
            "primitive": primitive,
        }),
        coherent,
    ))
}

fn quotient_section(b: &goeritz::TreeBall, samples: usize) -> (String, Value, bool) {
    let q = quotient(b, samples);
    let mut text = format!(
        "quotient: {} vertices {:?}, {} edge(s); ball has {} pair-vertices, {} triple-vertices, {} edges\n",
        q.vertices.len(),
        q.vertices,
        q.edges.len(),
        q.pair_vertices_in_ball,
        q.triple_vertices_in_ball,
        q.edges_in_ball
    );
    for w in &q.witnesses {
        let word = if w.word.is_empty() { "1" } else { w.word.as_str() };
        let mark = if w.verified { "ok" } else { "FAIL" };
        text.push_str(&format!("  {mark} {word} . base -> {}\n", w.vertex));
    }
    let ok = q.is_single_edge();
    text.push_str(if ok { "quotient is a single edge" } else { "quotient is NOT a single edge" });
    (text, serde_json::to_value(&q).expect("quotient serializes"), ok)
}

fn cmd_tree(args: &BallArgs, dot: Option<&Path>, with_quotient: bool) -> Result<Report> {
    let b = ball(args.radius, args.max_power)?;
    if let Some(path) = dot {
        write_file(path, &b.to_dot())?;
    }
    let is_tree = b.is_tree();
    let mut text = format!(
        "ball(radius={}, max_power={}): {} vertices, {} edges, tree: {is_tree}",
        args.radius,
        args.max_power,
        b.vertex_count(),
        b.edge_count()
    );
    let mut body = json!({
        "radius": args.radius,
        "max_power": args.max_power,
        "vertices": b.vertex_count(),
        "edges": b.edge_count(),
        "connected": b.is_connected(),
        "tree": is_tree,
    });
    let mut ok = is_tree;
    if with_quotient {
        let (qt, qv, qok) = quotient_section(&b, 20);
        text.push('\n');
        text.push_str(&qt);
        body["quotient"] = qv;
        ok &= qok;
    }
    Ok(Report::new("the Bass-Serre graph of the amalgam is a tree", text, body, ok))
}

fn cmd_quotient(args: &BallArgs, samples: usize) -> Result<Report> {
    let b = ball(args.radius, args.max_power)?;
    let (text, body, ok) = quotient_section(&b, samples);
    Ok(Report::new("the quotient of the tree by the group is a single edge", text, body, ok))
}

fn cmd_stabilizers(kind: Kind, at: &str, candidates: &[String]) -> Result<Report> {
    let g = parse_gen(at)?;
    let vertex = act(&g, &CosetVertex::base(kind_of(kind)));
    if !candidates.is_empty() {
        let words = candidates.iter().map(|c| parse_gen(c)).collect::<Result<Vec<_>>>()?;
        let fixing: Vec<String> = stabilizer_of(&vertex, &words).iter().map(|w| w.to_string()).collect();
        let text = format!("vertex {}\nfixing candidates: {}", vertex.label(), fixing.join(" "));
        return Ok(Report::new(
            "vertex stabilizers are conjugates of H_P and H_Q",
            text,
            json!({ "vertex": vertex.label(), "fixing": fixing }),
            true,
        ));
    }
    let pair = CosetVertex::base(VertexKind::Pair);
    let triple = CosetVertex::base(VertexKind::Triple);
    let edge = TreeEdge::base();
    let hq = HqElement::enumerate();
    let he = HeElement::enumerate();
    let hq_count = hq.iter().collect::<BTreeSet<_>>().len();
    let he_count = he.iter().collect::<BTreeSet<_>>().len();
    let hq_fix = hq.iter().all(|h| act(&GenWord::from(*h), &triple) == triple);
    let he_fix = he.iter().all(|h| act_edge(&GenWord::from(*h), &edge) == edge);
    let fixes = |w: &str| act(&GenWord::parse(w).expect("literal word"), &pair) == pair;
    let (beta, gamma, delta) = (fixes("b"), fixes("g"), fixes("d"));
    let ok = hq_fix && he_fix && beta && gamma && !delta && hq_count == 12 && he_count == 4;
    let text = format!(
        "H_Q: {hq_count} elements, all fix {}: {hq_fix}\n\
         H_e: {he_count} elements, all fix {}: {he_fix}\n\
         b fixes {}: {beta}\ng fixes {}: {gamma}\nd fixes {}: {delta}",
        triple.label(),
        edge.label(),
        pair.label(),
        pair.label(),
        pair.label()
    );
    Ok(Report::new(
        "H_P, H_Q and H_e are the stabilizers of the base pair-vertex, triple-vertex and edge",
        text,
        json!({
            "hq_elements": hq_count,
            "he_elements": he_count,
            "hq_fix_base_triple": hq_fix,
            "he_fix_base_edge": he_fix,
            "beta_fixes_base_pair": beta,
            "gamma_fixes_base_pair": gamma,
            "delta_fixes_base_pair": delta,
            "passed": ok,
        }),
        ok,
    ))
}

fn cmd_simplicial(cmd: &SimplicialCommand) -> Result<Report> {
    match cmd {
        SimplicialCommand::Flag { file } => {
            let k = read_complex(file)?;
            let flag = k.is_flag();
            Ok(Report::new(
                "flag condition: pairwise adjacent vertices span a simplex",
                format!("flag: {flag}"),
                json!({ "flag": flag, "vertices": k.count(1), "edges": k.count(2), "triangles": k.count(3) }),
                true,
            ))
        }
        SimplicialCommand::Barycentric { file, out } => {
            let sd = read_complex(file)?.barycentric();
            let serialized = sd.to_json();
            if let Some(path) = out {
                write_file(path, &serialized)?;
            }
            let text = match out {
                Some(path) => format!(
                    "subdivision written to {}: {} vertices, {} edges, {} triangles",
                    path.display(),
                    sd.count(1),
                    sd.count(2),
                    sd.count(3)
                ),
                None => serialized,
            };
            Ok(Report::new(
                "first barycentric subdivision",
                text,
                json!({ "euler_characteristic": sd.euler_characteristic(), "complex": complex_value(&sd) }),
                true,
            ))
        }
        SimplicialCommand::RemoveStars { file, dot } => {
            let k = read_complex(file)?;
            let graph = k.barycentric().remove_open_stars(&k.vertices());
            if let Some(path) = dot {
                write_file(path, &graph.to_dot())?;
            }
            let acyclic = graph.is_acyclic_graph()?;
            let connected = graph.is_connected();
            Ok(Report::new(
                "graph left after removing the open stars of the original vertices",
                format!(
                    "graph: {} vertices, {} edges, connected: {connected}, acyclic: {acyclic}",
                    graph.count(1),
                    graph.count(2)
                ),
                json!({
                    "vertices": graph.count(1),
                    "edges": graph.count(2),
                    "connected": connected,
                    "acyclic": acyclic,
                    "graph": complex_value(&graph),
                }),
                true,
            ))
        }
    }
}

fn cmd_farey(cmd: &FareyCommand) -> Result<Report> {
    match cmd {
        FareyCommand::Build { n, window, dot } => {
            let config = window.config()?;
            let fc = farey::build(*n, config);
            if let Some(path) = dot {
                write_file(path, &fc.complex.to_dot())?;
            }
            let slopes: Vec<String> = fc.slopes.iter().map(|s| s.to_string()).collect();
            let flag = fc.complex.is_flag();
            let text = format!(
                "{FIXTURE_NOTE}\nbuild({n}) on [{}, {}]: {} vertices, {} edges, {} triangles, flag: {flag}\nslopes: {}",
                config.lo,
                config.hi,
                fc.complex.count(1),
                fc.complex.count(2),
                fc.complex.count(3),
                slopes.join(" ")
            );
            Ok(Report::new(
                "truncated Farey complex is a flag complex",
                text,
                json!({
                    "fixture": FIXTURE_NOTE,
                    "n": n,
                    "window": [config.lo, config.hi],
                    "slopes": slopes,
                    "edges": fc.complex.count(2),
                    "triangles": fc.complex.count(3),
                    "flag": flag,
                }),
                flag,
            ))
        }
        FareyCommand::VerifyAxioms { n, samples, seed, window } => {
            let report = verify_axioms(*n, *samples, window.config()?, &mut seeded_rng(*seed));
            let mut text = format!(
                "{FIXTURE_NOTE}\nN = {n}, {} samples: {} zero, {} positive, {} violations",
                report.samples,
                report.zero_cases,
                report.positive_cases,
                report.violations.len()
            );
            for v in &report.violations {
                text.push_str(&format!("\nviolation: {v}"));
            }
            let ok = report.passed();
            let mut body = serde_json::to_value(&report).expect("report serializes");
            body["fixture"] = json!(FIXTURE_NOTE);
            body["seed"] = json!(seed);
            body["passed"] = json!(ok);
            Ok(Report::new("axioms of a blocking function for remoteness", text, body, ok))
        }
    }
}

fn cmd_contract(seed: u64, max_denominator: i64, steps: usize, fuel: usize) -> Result<Report> {
    let oracles = FareyOracles::new(max_denominator);
    let images = random_loop(&mut seeded_rng(seed), max_denominator, steps, FareyConfig::default());
    let lp = SimplicialLoop::new(images.clone(), &oracles, &Slope::INF)?;
    let loop_text: Vec<String> = images.iter().map(|s| s.to_string()).collect();
    let contraction = match contract_loop(&oracles, &oracles, &oracles, &lp, fuel) {
        Ok(c) => c,
        Err(e) => {
            return Ok(Report::new(
                "loop contraction driven by a remoteness and blocking function",
                format!("{FIXTURE_NOTE}\nloop: {}\ncontraction failed: {e}", loop_text.join(" ")),
                json!({ "fixture": FIXTURE_NOTE, "seed": seed, "loop": loop_text, "error": e.to_string(), "valid": false }),
                false,
            ))
        }
    };
    let validation = validate(&oracles, &contraction.certificate, &lp);
    let valid = validation.is_valid();
    let final_text: Vec<String> = contraction.certificate.final_loop.iter().map(|s| s.to_string()).collect();
    let mut text = format!(
        "{FIXTURE_NOTE}\nloop ({} vertices): {}\nmoves: {}\nfinal loop: {}\ncertificate valid: {valid}",
        images.len(),
        loop_text.join(" "),
        contraction.certificate.moves.len(),
        final_text.join(" ")
    );
    if let goeritz::contract::Validation::Invalid { move_index, reason } = &validation {
        text.push_str(&format!("\ninvalid at move {move_index:?}: {reason}"));
    }
    let certificate: Value = serde_json::from_str(&contraction.certificate.to_json()).expect("certificate JSON");
    Ok(Report::new(
        "loop contraction driven by a remoteness and blocking function",
        text,
        json!({
            "fixture": FIXTURE_NOTE,
            "seed": seed,
            "max_denominator": max_denominator,
            "fuel": fuel,
            "loop": loop_text,
            "certificate": certificate,
            "progress": contraction.progress,
            "valid": valid,
        }),
        valid,
    ))
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Nf { word } => cmd_nf(word),
        Command::Eq { first, second } => cmd_eq(first, second),
        Command::VerifyPresentation { samples, seed } => Ok(cmd_verify_presentation(*samples, *seed)),
        Command::Primitive { word } => cmd_primitive(word),
        Command::Tree { ball, dot, quotient } => cmd_tree(ball, dot.as_deref(), *quotient),
        Command::Quotient { ball, samples } => cmd_quotient(ball, *samples),
        Command::Stabilizers { kind, at, candidates } => cmd_stabilizers(*kind, at, candidates),
        Command::Simplicial(cmd) => cmd_simplicial(cmd),
        Command::Farey(cmd) => cmd_farey(cmd),
        Command::Contract { fixture: Fixture::Farey, seed, max_denominator, steps, fuel } => {
            cmd_contract(*seed, *max_denominator, *steps, *fuel)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON value"));
            } else {
                println!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
