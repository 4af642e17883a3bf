use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dualgraph::construct::{component_summaries, ComponentSummary};
use dualgraph::corpus::verify_corpus;
use dualgraph::format::{format_rational, rational_json};
use dualgraph::{
    build_z, classify_k, comb_decompose, compute_d_sharp, detect_case, enumerate_boundaries,
    is_rational, max_pa_bounded, pa_genus, parse_cycle_literal, parse_graph,
    reduce_to_trivial, split_determinants, validate_boundary, BoundaryConfig, Cycle,
    EnumerationConfig, Error, ErrorClass, Filters, GraphFile, Rational, WeightedDualGraph,
};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "dualgraph", version, about = "Exact computations on weighted dual graphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy, Default)]
struct Common {
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Print nothing; report through the exit code only.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct FileArgs {
    file: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant of -I(D), and of -I(C+D) when C is marked.
    Det(FileArgs),
    /// Whether I(D) is negative definite; exits 1 if not.
    Negdef(FileArgs),
    /// Coefficients of D# and, with C marked, (D# . C).
    Dsharp(FileArgs),
    /// Arithmetic genus of a cycle.
    Pa {
        #[command(flatten)]
        args: FileArgs,
        /// Comma-separated `id=coefficient` list.
        #[arg(long)]
        cycle: String,
    },
    /// Artin's criterion for every component of D; exits 1 if one fails.
    Rational(FileArgs),
    /// Largest p_a over cycles with coefficients in 1..=N.
    Maxpa {
        #[command(flatten)]
        args: FileArgs,
        #[arg(long)]
        bound: u64,
    },
    /// Sign of K: anti_ample, trivial or ample.
    Classify(FileArgs),
    /// Contract a K-ample boundary down to a K-trivial one.
    Reduce {
        #[command(flatten)]
        args: FileArgs,
        /// Also write the step list as JSON to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// The cycle Z of p_a 1 on the branched component.
    Buildz(FileArgs),
    /// Boundary checks, contraction case, subgraph determinants and comb shape.
    Shape(FileArgs),
    /// Boundaries obtained by blowing up Hirzebruch surfaces.
    Enumerate {
        /// Range of m, as `A..B` (inclusive) or a single value.
        #[arg(long, default_value = "2..4", value_parser = parse_range)]
        m: RangeInclusive<i64>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Comma-separated: negdef, minres, anti_ample, trivial, ample.
        #[arg(long, default_value = "")]
        filter: String,
        /// Attach the K class and component rationality to every result.
        #[arg(long)]
        classify: bool,
        /// Emit JSON lines, to PATH when given and to stdout otherwise.
        #[arg(long, num_args = 0..=1, value_name = "PATH")]
        json: Option<Option<PathBuf>>,
        #[arg(long)]
        quiet: bool,
        #[arg(long, default_value_t = dualgraph::construct::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[arg(long, default_value_t = dualgraph::construct::DEFAULT_MAX_BOUNDARIES)]
        max_boundaries: usize,
    },
    /// Check every worked example against the library.
    VerifyPaper {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = || format!("expected `A..B` or an integer, got `{s}`");
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?)
        }
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            Ok(v..=v)
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Lib(e) => e.code(),
            Failure::Io(_) => "io",
        }
    }

    fn exit(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.class() == ErrorClass::Invariant => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

type Outcome = Result<Report, Failure>;

fn read_file(path: &Path) -> Result<GraphFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_graph(&text)?)
}

fn read_boundary(path: &Path) -> Result<BoundaryConfig, Failure> {
    Ok(BoundaryConfig::from_file(read_file(path)?)?)
}

/// `D`: the graph without its marked curve, if any.
fn d_of(f: &GraphFile) -> WeightedDualGraph {
    match &f.marked {
        Some(c) => f.graph.without(&[c]),
        None => f.graph.clone(),
    }
}

fn q(v: &Rational) -> String {
    format_rational(v)
}

fn literal_json(z: &Cycle) -> Value {
    let m: Map<String, Value> = z
        .iter()
        .map(|(id, v)| (id.to_string(), rational_json(v)))
        .collect();
    Value::Object(m)
}

fn components_json(comps: &[ComponentSummary]) -> Value {
    comps
        .iter()
        .map(|c| {
            json!({
                "vertices": c.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "determinant": c.determinant.to_string(),
                "kind": c.kind(),
                "rational": c.rational,
            })
        })
        .collect()
}

fn components_text(comps: &[ComponentSummary]) -> String {
    comps
        .iter()
        .map(|c| {
            let ids: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
            let r = match c.rational {
                Some(true) => "rational",
                Some(false) => "irrational",
                None => "rationality undecided",
            };
            format!(
                "  {{{}}}: d = {}, {}, {r}\n",
                ids.join(" "),
                c.determinant,
                if c.branched { "branched" } else { "chain" }
            )
        })
        .collect()
}

fn det(a: &FileArgs) -> Outcome {
    let f = read_file(&a.file)?;
    let d = d_of(&f).determinant();
    let mut text = format!("d(D) = {d}\n");
    let mut j = json!({ "d": d.to_string() });
    if f.marked.is_some() {
        let total = f.graph.determinant();
        text.push_str(&format!("d(C+D) = {total}\n"));
        j["d_total"] = json!(total.to_string());
    }
    Ok(Report::ok(text, j))
}

fn negdef(a: &FileArgs) -> Outcome {
    let d = d_of(&read_file(&a.file)?);
    let nd = d.is_negative_definite();
    let minors: Vec<String> = d.leading_minors().iter().map(ToString::to_string).collect();
    Ok(Report {
        text: format!(
            "{}\nleading minors of -I(D): {}\n",
            if nd { "negative definite" } else { "not negative definite" },
            minors.join(" ")
        ),
        json: json!({ "negative_definite": nd, "leading_minors": minors }),
        ok: nd,
    })
}

fn dsharp(a: &FileArgs) -> Outcome {
    let f = read_file(&a.file)?;
    let d = d_of(&f);
    let neighbors: Option<Vec<_>> = f
        .marked
        .as_ref()
        .map(|c| f.graph.neighbors(c).cloned().collect());
    let r = compute_d_sharp(&d, neighbors.as_deref())?;
    let mut text = String::new();
    let mut coeffs = Map::new();
    for id in d.ids() {
        let v = r.coeff(id);
        text.push_str(&format!("{id}\t{}\n", q(&v)));
        coeffs.insert(id.to_string(), rational_json(&v));
    }
    if let Some(c) = &r.c_pairing {
        text.push_str(&format!("(D#.C) = {}\n", q(c)));
    }
    Ok(Report::ok(
        text,
        json!({
            "coefficients": coeffs,
            "c_pairing": r.c_pairing.as_ref().map(rational_json),
            "integral": r.integral,
        }),
    ))
}

fn pa(a: &FileArgs, literal: &str) -> Outcome {
    let f = read_file(&a.file)?;
    let z = Cycle::new(&f.graph, parse_cycle_literal(literal)?)?;
    let v = pa_genus(&f.graph, &z)?;
    Ok(Report::ok(
        format!("p_a = {}\n", q(&v)),
        json!({ "cycle": z.to_literal(), "pa": rational_json(&v) }),
    ))
}

fn rational(a: &FileArgs) -> Outcome {
    let d = d_of(&read_file(&a.file)?);
    if d.is_empty() {
        return Err(Error::EmptyGraph.into());
    }
    let mut text = String::new();
    let mut out = Vec::new();
    let mut all = true;
    for comp in d.connected_components() {
        let r = is_rational(&comp)?;
        all &= r.rational;
        let ids: Vec<String> = comp.ids().map(ToString::to_string).collect();
        text.push_str(&format!(
            "{{{}}}: {}, p_a(Z) = {}, Z = {}\n",
            ids.join(" "),
            if r.rational { "rational" } else { "not rational" },
            r.pa_fundamental,
            r.fundamental_cycle.to_literal()
        ));
        out.push(json!({
            "vertices": ids,
            "rational": r.rational,
            "kind": r.kind,
            "pa_fundamental": r.pa_fundamental.to_string(),
            "fundamental_cycle": r.fundamental_cycle.to_literal(),
            "iterations": r.iterations,
        }));
    }
    Ok(Report {
        text,
        json: json!({ "rational": all, "components": out }),
        ok: all,
    })
}

fn maxpa(a: &FileArgs, bound: u64) -> Outcome {
    let d = d_of(&read_file(&a.file)?);
    let r = max_pa_bounded(&d, bound)?;
    Ok(Report::ok(
        format!(
            "max p_a = {} over coefficients 1..={bound}\nwitness: {}\n",
            r.max,
            r.witness.to_literal()
        ),
        json!({
            "max": r.max.to_string(),
            "witness": r.witness.to_literal(),
            "bound": bound,
            "nodes": r.nodes,
        }),
    ))
}

fn classify(a: &FileArgs) -> Outcome {
    let b = read_boundary(&a.file)?;
    let k = classify_k(&b)?;
    let comps = component_summaries(&b);
    Ok(Report::ok(
        format!(
            "K is {}\n(D#.C) = {}\ncomponents of D:\n{}",
            k.value,
            q(&k.c_pairing),
            components_text(&comps)
        ),
        json!({
            "class": k.value.as_str(),
            "c_pairing": rational_json(&k.c_pairing),
            "components": components_json(&comps),
        }),
    ))
}

fn reduce(a: &FileArgs, trace_path: Option<&Path>) -> Outcome {
    let b = read_boundary(&a.file)?;
    let t = reduce_to_trivial(&b)?;
    let mut text = format!("(D#.C) = {}\n", q(&t.initial_c_pairing));
    let mut steps = Vec::new();
    for s in &t.steps {
        let c = s.c_pairing.as_ref().map(q).unwrap_or_else(|| "-".into());
        text.push_str(&format!(
            "contract {}\tcase {}\t(D#.C) = {c}\n",
            s.contracted,
            s.tag.as_str()
        ));
        steps.push(json!({
            "contracted": s.contracted.to_string(),
            "case": s.tag,
            "new_c": s.boundary.c.to_string(),
            "c_pairing": s.c_pairing.as_ref().map(rational_json),
        }));
    }
    let final_text = t.final_boundary.to_text();
    text.push_str(&final_text);
    let j = json!({
        "initial_c_pairing": rational_json(&t.initial_c_pairing),
        "steps": steps,
        "final": final_text,
    });
    if let Some(p) = trace_path {
        let body = serde_json::to_string_pretty(&j).expect("serializable");
        fs::write(p, body + "\n").map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(Report::ok(text, j))
}

fn buildz(a: &FileArgs) -> Outcome {
    let b = read_boundary(&a.file)?;
    let z = build_z(&b, &reduce_to_trivial(&b)?)?;
    Ok(Report::ok(
        format!("{}\np_a(Z) = {}\n", z.cycle.to_literal(), z.pa),
        json!({
            "cycle": z.cycle.to_literal(),
            "coefficients": literal_json(&z.cycle),
            "pa": z.pa.to_string(),
        }),
    ))
}

fn shape(a: &FileArgs) -> Outcome {
    let b = read_boundary(&a.file)?;
    let v = validate_boundary(&b);
    let mut text = String::new();
    let mut checks = Vec::new();
    for c in &v.checks {
        text.push_str(&format!(
            "{} {}: {}\n",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        ));
        checks.push(json!({ "name": c.name, "passed": c.passed, "detail": c.detail }));
    }
    let case = match detect_case(&b) {
        Ok(s) => {
            text.push_str(&format!("case {}\n", s.case.number()));
            let split = split_determinants(&b)?;
            text.push_str(&format!(
                "d(A) = {}, d(B) = {}, d(A_) = {}, d(B_) = {}\n",
                split.d_a, split.d_b, split.d_a_under, split.d_b_under
            ));
            let ids: Vec<Value> = split
                .identities()
                .into_iter()
                .map(|i| {
                    text.push_str(&format!(
                        "{} {}: {} vs {}\n",
                        if i.holds { "ok  " } else { "FAIL" },
                        i.name,
                        i.lhs,
                        i.rhs
                    ));
                    json!({ "name": i.name, "holds": i.holds, "lhs": i.lhs.to_string(), "rhs": i.rhs.to_string() })
                })
                .collect();
            json!({
                "case": s.case.number(),
                "d_a": split.d_a.to_string(),
                "d_b": split.d_b.to_string(),
                "d_a_under": split.d_a_under.to_string(),
                "d_b_under": split.d_b_under.to_string(),
                "m": split.m,
                "identities": ids,
            })
        }
        Err(e) => {
            text.push_str(&format!("no contraction case: {e}\n"));
            Value::Null
        }
    };
    let comb = match comb_decompose(&b) {
        Ok(c) => {
            let s: Vec<usize> = (0..c.chains.len()).map(|i| c.s(i)).collect();
            let t: Vec<usize> = (0..c.twigs.len()).map(|i| c.t(i)).collect();
            text.push_str(&format!("comb: r = {}, s = {s:?}, t = {t:?}\n", c.r));
            json!({
                "r": c.r,
                "spine": c.spine.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "s": s,
                "t": t,
            })
        }
        Err(m) => {
            text.push_str(&format!("not a comb: {m}\n"));
            json!({ "mismatch": m.constraint })
        }
    };
    Ok(Report {
        text,
        json: json!({ "checks": checks, "case": case, "comb": comb }),
        ok: v.passed(),
    })
}

fn enumerate(
    m: RangeInclusive<i64>,
    depth: usize,
    filter: &str,
    classify: bool,
    max_depth: usize,
    max_boundaries: usize,
) -> Result<(String, Vec<Value>), Failure> {
    let mut cfg = EnumerationConfig::new(m, depth).with_filters(filter.parse::<Filters>()?);
    cfg.max_depth = max_depth;
    cfg.max_boundaries = max_boundaries;
    let found = enumerate_boundaries(&cfg)?;
    let mut text = String::new();
    let mut lines = Vec::new();
    for e in &found {
        let mut j = json!({
            "m": e.m,
            "moves": e.moves.to_string(),
            "canonical": e.canonical,
            "vertices": e.boundary.graph.len(),
        });
        let mut line = format!("m={} [{}] {}", e.m, e.moves, e.canonical);
        if classify {
            match &e.k_class {
                Some(k) => {
                    line.push_str(&format!(" {} {}", k.value, q(&k.c_pairing)));
                    j["k_class"] = json!(k.value.as_str());
                    j["c_pairing"] = rational_json(&k.c_pairing);
                }
                None => {
                    line.push_str(" indefinite");
                    j["k_class"] = Value::Null;
                    j["c_pairing"] = Value::Null;
                }
            }
            j["components"] = components_json(&e.components);
        }
        text.push_str(&line);
        text.push('\n');
        lines.push(j);
    }
    text.push_str(&format!("{} boundaries\n", found.len()));
    Ok((text, lines))
}

fn verify_paper() -> Report {
    let reports = verify_corpus();
    let mut text = format!("dualgraph {}\n", env!("CARGO_PKG_VERSION"));
    let mut entries = Vec::new();
    let (mut pass, mut total) = (0, 0);
    for r in &reports {
        text.push_str(&format!("{}\n", r.name));
        let mut checks = Vec::new();
        for c in &r.checks {
            total += 1;
            pass += usize::from(c.passed);
            text.push_str(&format!(
                "  {} {}: {} ({})\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.kind,
                c.claim,
                c.detail
            ));
            checks.push(json!({
                "kind": c.kind,
                "claim": c.claim,
                "passed": c.passed,
                "detail": c.detail,
            }));
        }
        entries.push(json!({ "name": r.name, "passed": r.passed(), "checks": checks }));
    }
    text.push_str(&format!("{pass}/{total} checks passed\n"));
    Report {
        text,
        json: json!({
            "version": env!("CARGO_PKG_VERSION"),
            "passed": pass == total,
            "entries": entries,
        }),
        ok: pass == total,
    }
}

fn emit(common: Common, outcome: Outcome) -> ExitCode {
    let mut out = io::stdout().lock();
    match outcome {
        Ok(r) => {
            if !common.quiet {
                let _ = if common.json {
                    writeln!(out, "{}", serde_json::to_string_pretty(&r.json).expect("serializable"))
                } else {
                    write!(out, "{}", r.text)
                };
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(f) => {
            if common.json && !common.quiet {
                let j = json!({ "error": { "code": f.code(), "message": f.message() } });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("serializable"));
            } else if !common.quiet {
                eprintln!("error [{}]: {}", f.code(), f.message());
            }
            ExitCode::from(f.exit())
        }
    }
}

fn merge(a: Common, b: Common) -> Common {
    Common {
        json: a.json || b.json,
        quiet: a.quiet || b.quiet,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let top = cli.common;
    match &cli.command {
        Command::Det(a) => emit(merge(top, a.common), det(a)),
        Command::Negdef(a) => emit(merge(top, a.common), negdef(a)),
        Command::Dsharp(a) => emit(merge(top, a.common), dsharp(a)),
        Command::Pa { args, cycle } => emit(merge(top, args.common), pa(args, cycle)),
        Command::Rational(a) => emit(merge(top, a.common), rational(a)),
        Command::Maxpa { args, bound } => emit(merge(top, args.common), maxpa(args, *bound)),
        Command::Classify(a) => emit(merge(top, a.common), classify(a)),
        Command::Reduce { args, trace } => {
            emit(merge(top, args.common), reduce(args, trace.as_deref()))
        }
        Command::Buildz(a) => emit(merge(top, a.common), buildz(a)),
        Command::Shape(a) => emit(merge(top, a.common), shape(a)),
        Command::VerifyPaper { common } => emit(merge(top, *common), Ok(verify_paper())),
        Command::Enumerate {
            m,
            depth,
            filter,
            classify,
            json,
            quiet,
            max_depth,
            max_boundaries,
        } => {
            let common = merge(
                top,
                Common {
                    json: json.is_some(),
                    quiet: *quiet,
                },
            );
            let result = enumerate(m.clone(), *depth, filter, *classify, *max_depth, *max_boundaries);
            let (text, lines) = match result {
                Ok(r) => r,
                Err(f) => return emit(common, Err(f)),
            };
            let jsonl: String = lines
                .iter()
                .map(|l| serde_json::to_string(l).expect("serializable") + "\n")
                .collect();
            if let Some(Some(path)) = json {
                if let Err(e) = fs::write(path, &jsonl) {
                    return emit(common, Err(Failure::Io(format!("{}: {e}", path.display()))));
                }
                if !common.quiet {
                    print!("{text}");
                }
            } else if !common.quiet {
                if common.json {
                    print!("{jsonl}");
                } else {
                    print!("{text}");
                }
            }
            ExitCode::SUCCESS
        }
    }
}
