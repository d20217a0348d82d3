//! `star-spectra`: classify star graphs, enumerate non-degenerate
//! dimensions, decide membership, and build/verify representations.
//!
//! Every command prints one JSON document on stdout. Exit status: 0 success
//! or member, 1 non-member / infeasible / failed verification, 2 usage
//! error, 3 solver gave up without a verdict.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use star_spectra::bridge::{self, AlgebraParams};
use star_spectra::membership::{self, decide_catalog, decide_generic};
use star_spectra::rep::{self, solve_representation, SolveOptions, SolveOutcome};
use star_spectra::{coxeter, json as sj, rational, Error, GenDim, StarGraph};

#[derive(Parser)]
#[command(
    name = "star-spectra",
    version,
    about = "Representations of weighted projection families on star-shaped Dynkin graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dynkin type and Coxeter number of a star graph.
    Classify(GraphArgs),
    /// Non-degenerate dimension vectors reachable by Coxeter maps.
    Orbit(GraphArgs),
    /// Decide membership with both deciders.
    Check(ParamArgs),
    /// Build a representation numerically.
    Solve(SolveArgs),
    /// Verify a representation stored as JSON.
    Verify(VerifyArgs),
    /// Compare the two deciders on random parameters.
    CrossValidate(CrossArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Named graph: D4, E6, E7, E8 (or Dn).
    #[arg(long, conflicts_with = "lengths")]
    graph: Option<String>,
    /// Branch lengths `k,l,m`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lengths: Option<Vec<i64>>,
}

#[derive(Args)]
struct ParamArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Comma-separated rationals, e.g. `2,1` or `3/2`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Generalized dimension `n0;n_p;n_q;n_s`, e.g. `3;1,1;1,1;1`. Defaults
    /// to the one certified by the membership decision.
    #[arg(long)]
    gendim: Option<String>,
    #[arg(long, env = "STAR_SPECTRA_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 32)]
    restarts: u64,
    /// Also write the bare representation JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Representation JSON, or the output of `solve`.
    file: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct CrossArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, env = "STAR_SPECTRA_SEED", default_value_t = 0)]
    seed: u64,
}

/// Outcome of a command: JSON document plus exit status.
struct Output {
    doc: Value,
    code: u8,
}

impl Output {
    fn new(doc: Value, code: u8) -> Output {
        Output { doc, code }
    }
}

/// A failure before any verdict: bad input or an error from the library.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Usage {
        Usage(e.to_string())
    }
}

fn named_lengths(name: &str) -> Option<[i64; 3]> {
    match name.to_ascii_uppercase().as_str() {
        "D4" => Some([1, 1, 1]),
        "E6" => Some([2, 2, 1]),
        "E7" => Some([3, 2, 1]),
        "E8" => Some([4, 2, 1]),
        other => {
            let n: i64 = other.strip_prefix('D')?.parse().ok()?;
            (n >= 4).then_some([1, 1, n - 3])
        }
    }
}

/// Graph from flags. With `arity` (the parameter list lengths) a named graph
/// takes its branch order from the parameters; the name then only has to
/// match up to reordering.
fn resolve_graph(args: &GraphArgs, arity: Option<[usize; 3]>) -> Result<StarGraph, Usage> {
    let lengths = match (&args.graph, &args.lengths) {
        (Some(name), _) => {
            let canonical = named_lengths(name).ok_or_else(|| Usage(format!("unknown graph name {name:?}")))?;
            match arity {
                None => canonical,
                Some(a) => {
                    let given = a.map(|x| x as i64);
                    let (mut s1, mut s2) = (given, canonical);
                    s1.sort_unstable();
                    s2.sort_unstable();
                    if s1 != s2 {
                        return Err(Usage(format!(
                            "parameter list lengths {given:?} do not fit {name} (branch lengths {canonical:?} in some order)"
                        )));
                    }
                    given
                }
            }
        }
        (None, Some(l)) => match l.as_slice() {
            &[k, l, m] => [k, l, m],
            _ => return Err(Usage(format!("--lengths needs exactly three values, got {}", l.len()))),
        },
        (None, None) => match arity {
            Some(a) => a.map(|x| x as i64),
            None => return Err(Usage("give --graph or --lengths".into())),
        },
    };
    Ok(StarGraph::new(lengths[0], lengths[1], lengths[2])?)
}

fn parse_params(args: &ParamArgs) -> Result<(AlgebraParams, StarGraph), Usage> {
    let alpha = rational::parse_list(&args.alpha)?;
    let beta = rational::parse_list(&args.beta)?;
    let delta = rational::parse_list(&args.delta)?;
    let gamma = rational::parse(&args.gamma)?;
    let p = AlgebraParams::new(alpha, beta, delta, gamma)?;
    let g = resolve_graph(&args.graph, Some(p.lengths()))?;
    if p.lengths() != g.branch_lengths() {
        return Err(Usage(format!("parameter list lengths {:?} do not match graph {g}", p.lengths())));
    }
    Ok((p, g))
}

fn parse_gendim(text: &str) -> Result<GenDim, Usage> {
    let bad = || Usage(format!("cannot parse generalized dimension {text:?}; expected n0;n_p;n_q;n_s"));
    let parts: Vec<&str> = text.split(';').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let list = |s: &str| s.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>();
    let n0 = parts[0].parse().map_err(|_| bad())?;
    Ok(GenDim::new(
        n0,
        list(parts[1]).map_err(|_| bad())?,
        list(parts[2]).map_err(|_| bad())?,
        list(parts[3]).map_err(|_| bad())?,
    ))
}

fn params_json(p: &AlgebraParams) -> Value {
    json!({
        "alpha": sj::rationals(&p.alpha),
        "beta": sj::rationals(&p.beta),
        "delta": sj::rationals(&p.delta),
        "gamma": rational::format(&p.gamma),
    })
}

fn classify(args: &GraphArgs) -> Result<Output, Usage> {
    let g = resolve_graph(args, None)?;
    let c = g.classify();
    Ok(Output::new(
        json!({
            "graph": g.to_string(),
            "lengths": g.branch_lengths(),
            "type": c.tag.to_string(),
            "finite": c.is_finite(),
            "coxeter_number": c.coxeter_number,
            "positive_roots": c.positive_root_count(),
        }),
        0,
    ))
}

fn orbit(args: &GraphArgs) -> Result<Output, Usage> {
    let g = resolve_graph(args, None)?;
    let entries = coxeter::enumerate_nondegenerate_dims(&g)?;
    let mut dims = Vec::new();
    for e in &entries {
        let first = e.shortest();
        dims.push(json!({
            "dim": sj::gvector(&e.dim),
            "gendim": sj::gendim(&bridge::dim_to_generalized(&e.dim, &g)?),
            "steps": first.steps,
            "start": first.start,
            "first": first.first,
        }));
    }
    Ok(Output::new(
        json!({ "graph": g.to_string(), "type": g.classify().tag.to_string(), "count": dims.len(), "dims": dims }),
        0,
    ))
}

fn check(args: &ParamArgs) -> Result<Output, Usage> {
    let (p, g) = parse_params(args)?;
    let generic = decide_generic(&p, &g)?;
    let catalog = match decide_catalog(&p, &g) {
        Ok(d) => Some(d),
        Err(Error::NotCatalogued(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let agree = catalog.as_ref().map(|c| c.member == generic.member && c.gendims() == generic.gendims());
    let violated: Option<Value> = catalog.as_ref().map(|c| {
        c.failed_conditions
            .iter()
            .map(|id| (id.clone(), json!(membership::catalog::condition_text(id))))
            .collect::<serde_json::Map<_, _>>()
            .into()
    });
    let doc = json!({
        "graph": g.to_string(),
        "params": params_json(&p),
        "member": generic.member,
        "generic": sj::decision(&generic),
        "catalog": catalog.as_ref().map(sj::decision),
        "agree": agree,
        "violated_conditions": violated,
    });
    Ok(Output::new(doc, if generic.member { 0 } else { 1 }))
}

fn solve(args: &SolveArgs) -> Result<Output, Usage> {
    let (p, g) = parse_params(&args.params)?;
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(Usage("--tol must be positive".into()));
    }
    let mut doc = json!({ "graph": g.to_string(), "params": params_json(&p), "seed": args.seed });

    let candidates: Vec<GenDim> = match &args.gendim {
        Some(text) => {
            let n = parse_gendim(text)?;
            if n.lengths() != p.lengths() || !n.is_nondegenerate() {
                return Err(Usage(format!("generalized dimension {n} is not non-degenerate for {g}")));
            }
            vec![n]
        }
        None => {
            let decision = decide_generic(&p, &g)?;
            if !decision.member {
                // nothing to build; say why per candidate dimension
                let mut reasons = Vec::new();
                for e in coxeter::enumerate_nondegenerate_dims(&g)? {
                    let n = bridge::dim_to_generalized(&e.dim, &g)?;
                    let defect = p.trace_defect(&n)?;
                    reasons.push(json!({
                        "gendim": sj::gendim(&n),
                        "trace_defect": rational::format(&defect),
                    }));
                }
                let trace_only = reasons.iter().all(|r| r["trace_defect"] != json!("0/1"));
                doc["status"] = json!("infeasible");
                doc["certificate"] = json!({
                    "kind": if trace_only { "trace_identity" } else { "membership" },
                    "membership": sj::decision(&decision),
                    "candidates": reasons,
                });
                return Ok(Output::new(doc, 1));
            }
            decision.witnesses.iter().map(|w| w.gendim.clone()).collect()
        }
    };
    let n = &candidates[0];
    let opts = SolveOptions { seed: args.seed, tol: args.tol, max_restarts: args.restarts, ..Default::default() };
    match solve_representation(&p, n, &opts)? {
        SolveOutcome::Infeasible { trace_defect } => {
            doc["status"] = json!("infeasible");
            doc["certificate"] = json!({
                "kind": "trace_identity",
                "candidates": [{ "gendim": sj::gendim(n), "trace_defect": rational::format(&trace_defect) }],
            });
            Ok(Output::new(doc, 1))
        }
        SolveOutcome::NotFound { restarts, best_residual } => {
            doc["status"] = json!("not_found");
            doc["gendim"] = sj::gendim(n);
            doc["restarts"] = json!(restarts);
            doc["best_residual"] = json!(best_residual);
            Ok(Output::new(doc, 3))
        }
        SolveOutcome::Found(s) => {
            let rep_doc = sj::star_rep(&s.rep)?;
            if let Some(path) = &args.out {
                std::fs::write(path, sj::to_string_pretty(&rep_doc) + "\n")
                    .map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let report = rep::verify(&s.rep, args.tol.max(1e-8));
            doc["status"] = json!("found");
            doc["representation"] = rep_doc;
            doc["residual"] = json!(s.residual);
            doc["iterations"] = json!(s.iterations);
            doc["restart"] = json!(s.restart);
            doc["verify"] = serde_json::to_value(&report).expect("plain data");
            doc["commutant_dimension"] = json!(rep::commutant_dimension(&s.rep, 1e-8));
            Ok(Output::new(doc, 0))
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<Output, Usage> {
    let text =
        std::fs::read_to_string(&args.file).map_err(|e| Usage(format!("cannot read {}: {e}", args.file.display())))?;
    let v = sj::from_str(&text)?;
    let rep_value = v.get("representation").unwrap_or(&v);
    let r = sj::parse_star_rep(rep_value)?;
    let report = rep::verify(&r, args.tol);
    let mut doc = json!({
        "verify": serde_json::to_value(&report).expect("plain data"),
        "pass": report.pass,
    });
    if report.pass {
        doc["commutant_dimension"] = json!(rep::commutant_dimension(&r, 1e-8));
        let gr = rep::star_to_graph(&r)?;
        let f = bridge::params_to_character(&r.params, &gr.graph)?;
        let scalars: Vec<Value> = rep::measure_local_scalars(&gr)
            .iter()
            .map(|s| {
                json!({
                    "vertex": s.vertex,
                    "mean": s.mean,
                    "spread": s.spread,
                    "expected": rational::format(&f.0[s.vertex]),
                })
            })
            .collect();
        doc["local_scalars"] = json!(scalars);
    }
    Ok(Output::new(doc, if report.pass { 0 } else { 1 }))
}

fn cross_validate(args: &CrossArgs) -> Result<Output, Usage> {
    let g = resolve_graph(&args.graph, None)?;
    let report = membership::cross_validate(&g, args.samples, args.seed)?;
    let clean = report.disagreements.is_empty();
    Ok(Output::new(serde_json::to_value(&report).expect("plain data"), if clean { 0 } else { 1 }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => classify(a),
        Command::Orbit(a) => orbit(a),
        Command::Check(a) => check(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::CrossValidate(a) => cross_validate(a),
    };
    let (doc, code) = match result {
        Ok(out) => (out.doc, out.code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            (json!({ "error": msg }), 2)
        }
    };
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{}", sj::to_string_pretty(&doc));
    ExitCode::from(code)
}
