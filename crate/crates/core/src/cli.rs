//! Command-line front end.
//!
//! [`run`] never prints; it returns the exit status and the text to show.
//! Status 0 is success, 1 a computation-domain error (bad file, width
//! violation, non-matroid, disagreeing methods, failed suite) and 2 a usage
//! error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cwdp::dp_bi_truncated;
use crate::graph::{parse_graph, Graph};
use crate::interlace::reconstruct::{reconstruct_graph, reconstruct_loop_free_from_bxy};
use crate::interlace::specialize::{
    b_i, b_xy, b_y0, big_q_poly, eta, eta_prime, independence_poly, q_poly, sigma_eq, sigma_q, sigma_y0, tau, BiMethod,
    BigQMethod, BxyMethod, By0Method, IMethod, QMethod,
};
use crate::interlace::{brute_force_b, brute_force_b_truncated, recursive_b, specialize_b1, InterlaceError};
use crate::kexpr::{eval_kexpr, parse_kexpr, KExpr};
use crate::matroid::{parse_matroid, Matroid, TutteMethod};
use crate::poly::{MultiPoly, Substitution};
use crate::suites::{find_suite, run_suite, SuiteConfig, SuiteReport, SUITES};

/// Largest graph the brute-force methods accept without `--force`.
pub const BRUTE_FORCE_GUARD: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "interlace", about = "Multivariate interlace polynomials of looped graphs", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Compute a polynomial of a graph.
    Compute(ComputeArgs),
    /// Compute a polynomial of a graph truncated at quasi-degree d.
    Truncate {
        #[command(flatten)]
        compute: ComputeArgs,
        #[arg(long)]
        d: u32,
    },
    /// Apply a specializing substitution to a polynomial in B's indeterminates.
    Specialize {
        #[arg(long = "to", value_enum)]
        to: Target,
        #[command(flatten)]
        input: PolyInput,
    },
    /// Run identity suites.
    Check {
        /// Suite name, or `all`.
        #[arg(long, required_unless_present = "list")]
        suite: Option<String>,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
        /// Check every graph with at most this many vertices.
        #[arg(long)]
        exhaustive: Option<usize>,
        /// Number of random inputs.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Run suites on this many threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate a k-expression to a graph.
    CwxEval {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        expr: ExprInput,
        /// Print the vertex order induced by the expression.
        #[arg(long)]
        order: bool,
    },
    /// B_I truncated at quasi-degree d, by dynamic programming over a k-expression.
    Cwdp {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        expr: ExprInput,
        /// `I` sets every x_a and y_a to 1.
        #[arg(long, value_enum)]
        specialize: Option<CwdpTarget>,
    },
    /// Matroid polynomials and activities.
    Matroid {
        #[arg(long, value_enum, default_value_t = MatroidPoly::T)]
        poly: MatroidPoly,
        #[arg(long, value_enum, default_value_t = TutteWay::Activities)]
        method: TutteWay,
        /// List every basis with its internal and external activities.
        #[arg(long)]
        activities: bool,
        #[command(flatten)]
        input: MatroidInput,
    },
    /// Rebuild a graph from rho(B), or a loop-free graph from B_{x=y} at v=1.
    Reconstruct {
        #[arg(long)]
        loop_free: bool,
        #[command(flatten)]
        input: PolyInput,
    },
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long, value_enum, default_value_t = PolyKind::B)]
    poly: PolyKind,
    #[arg(long, value_enum, default_value_t = Method::Recursive)]
    method: Method,
    #[arg(long)]
    truncate: Option<u32>,
    /// Allow brute force on more than 16 vertices.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    graph: GraphInput,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Graph text with `;` as line separator.
    #[arg(long)]
    inline: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PolyInput {
    /// File holding a polynomial.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Polynomial text.
    #[arg(long)]
    text: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ExprInput {
    /// Inline k-expression.
    #[arg(long)]
    expr: Option<String>,
    /// .cwx file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct MatroidInput {
    /// Matroid file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Matroid text with `;` as line separator.
    #[arg(long)]
    inline: Option<String>,
    /// Graph file whose cycle matroid is wanted.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PolyKind {
    #[value(name = "B")]
    B,
    #[value(name = "B1")]
    B1,
    #[value(name = "By0")]
    By0,
    #[value(name = "Bxy")]
    Bxy,
    #[value(name = "BI")]
    Bi,
    #[value(name = "q")]
    LowerQ,
    #[value(name = "Q")]
    UpperQ,
    #[value(name = "I")]
    I,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Brute,
    Recursive,
    Substitution,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    #[value(name = "B1")]
    B1,
    #[value(name = "By0")]
    By0,
    #[value(name = "Bxy")]
    Bxy,
    #[value(name = "BI")]
    Bi,
    #[value(name = "q")]
    LowerQ,
    #[value(name = "Q")]
    UpperQ,
    #[value(name = "I")]
    I,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CwdpTarget {
    #[value(name = "BI")]
    Bi,
    #[value(name = "I")]
    I,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MatroidPoly {
    /// Tutte polynomial.
    #[value(name = "T")]
    T,
    /// Rank polynomial.
    #[value(name = "R")]
    R,
    /// Multivariate Tutte polynomial from activities.
    #[value(name = "Ttilde")]
    TTilde,
    /// Multivariate rank polynomial.
    #[value(name = "Rtilde")]
    RTilde,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TutteWay {
    Rank,
    Activities,
}

/// A failure that maps to exit status 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.verb) {
        Ok(out) => (0, out),
        Err(Failure(msg)) => (1, format!("error: {msg}\n")),
    }
}

fn dispatch(verb: Verb) -> Outcome {
    match verb {
        Verb::Compute(args) => compute(&args, args.truncate),
        Verb::Truncate { compute: args, d } => compute(&args, Some(d)),
        Verb::Specialize { to, input } => specialize(to, &read_poly(&input)?),
        Verb::Check {
            suite,
            list,
            exhaustive,
            random,
            seed,
            jobs,
        } => {
            if list {
                return Ok(SUITES.iter().map(|s| format!("{:<20} {}\n", s.name, s.about)).collect());
            }
            let mut cfg = SuiteConfig::quick();
            if let Some(n) = exhaustive {
                cfg.exhaustive_n = n;
            }
            if let Some(r) = random {
                cfg.random = r;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            check(suite.as_deref().unwrap_or("all"), &cfg, jobs)
        }
        Verb::CwxEval { k, expr, order } => {
            let e = read_expr(&expr)?;
            let lg = eval_kexpr(&e, k, order)?;
            let mut out = lg.graph.to_text();
            let labels: Vec<String> = lg.graph.vertices().iter().zip(&lg.labels).map(|(v, l)| format!("{v}:{l}")).collect();
            writeln!(out, "# labels: {}", labels.join(" ")).expect("string write");
            if let Some(order) = lg.order {
                let names: Vec<&str> = order.iter().map(|v| v.as_str()).collect();
                writeln!(out, "# order: {}", names.join(" < ")).expect("string write");
            }
            Ok(out)
        }
        Verb::Cwdp { k, d, expr, specialize } => {
            let e = read_expr(&expr)?;
            let mut p = dp_bi_truncated(&e, k, d)?;
            if specialize == Some(CwdpTarget::I) {
                p = p.substitute(&ones());
            }
            Ok(format!("{p}\n"))
        }
        Verb::Matroid {
            poly,
            method,
            activities,
            input,
        } => matroid(poly, method, activities, &input),
        Verb::Reconstruct { loop_free, input } => {
            let p = read_poly(&input)?;
            let g = if loop_free {
                reconstruct_loop_free_from_bxy(&p)?
            } else {
                reconstruct_graph(&p)?
            };
            Ok(g.to_text())
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_graph(input: &GraphInput) -> Result<Graph, Failure> {
    let text = match (&input.graph, &input.inline) {
        (Some(path), _) => read_file(path)?,
        (None, Some(s)) => s.replace(';', "\n"),
        (None, None) => unreachable!("clap requires one graph input"),
    };
    Ok(parse_graph(&text)?.graph)
}

fn read_poly(input: &PolyInput) -> Result<MultiPoly, Failure> {
    let text = match (&input.file, &input.text) {
        (Some(path), _) => read_file(path)?,
        (None, Some(s)) => s.clone(),
        (None, None) => unreachable!("clap requires one polynomial input"),
    };
    Ok(text.trim().parse()?)
}

fn read_expr(input: &ExprInput) -> Result<KExpr, Failure> {
    let text = match (&input.expr, &input.file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => read_file(path)?,
        (None, None) => unreachable!("clap requires one expression input"),
    };
    Ok(parse_kexpr(&text)?)
}

fn ones() -> Substitution {
    Substitution::new()
        .family_const("x", MultiPoly::one())
        .family_const("y", MultiPoly::one())
}

/// One computation of `kind` on `g` by `method` (never `Both`).
fn compute_one(g: &Graph, kind: PolyKind, method: Method, d: Option<u32>) -> Result<MultiPoly, InterlaceError> {
    let via_b = |s: &Substitution| -> Result<MultiPoly, InterlaceError> {
        let b = match method {
            Method::Brute => brute_force_b(g)?,
            _ => recursive_b(g),
        };
        Ok(b.substitute(s))
    };
    Ok(match (kind, method) {
        (PolyKind::B, Method::Brute) => match d {
            Some(d) => brute_force_b_truncated(g, d)?,
            None => brute_force_b(g)?,
        },
        (PolyKind::B, _) => recursive_b(g),
        (PolyKind::B1, Method::Brute) => specialize_b1(&brute_force_b(g)?),
        (PolyKind::B1, _) => specialize_b1(&recursive_b(g)),
        (PolyKind::By0, Method::Brute) => b_y0(g, By0Method::Direct)?,
        (PolyKind::By0, Method::Recursive) => b_y0(g, By0Method::Recursion)?,
        (PolyKind::By0, _) => via_b(&sigma_y0())?,
        (PolyKind::Bxy, Method::Recursive) => b_xy(g, BxyMethod::Recursion)?,
        (PolyKind::Bxy, _) => via_b(&sigma_eq())?,
        (PolyKind::Bi, Method::Brute) => b_i(g, BiMethod::Direct)?,
        (PolyKind::Bi, Method::Recursive) => b_i(g, BiMethod::RecursionI1to4)?,
        (PolyKind::Bi, _) => via_b(&eta_prime())?,
        (PolyKind::LowerQ, Method::Recursive) => q_poly(g, QMethod::RecursionQ123)?,
        (PolyKind::LowerQ, _) => via_b(&sigma_q())?,
        (PolyKind::UpperQ, Method::Recursive) => big_q_poly(g, BigQMethod::RecursionQ)?,
        (PolyKind::UpperQ, _) => via_b(&tau())?,
        (PolyKind::I, Method::Brute) => independence_poly(g, IMethod::Direct)?,
        (PolyKind::I, Method::Recursive) => independence_poly(g, IMethod::RecursionI)?,
        (PolyKind::I, _) => via_b(&sigma_eq())?.substitute(&eta()),
    })
}

fn compute(args: &ComputeArgs, d: Option<u32>) -> Outcome {
    let g = read_graph(&args.graph)?;
    let brute = matches!(args.method, Method::Brute | Method::Both);
    if brute && g.len() > BRUTE_FORCE_GUARD && !args.force {
        return Err(Failure(format!(
            "brute force on {} vertices refused (limit {BRUTE_FORCE_GUARD}); use --force",
            g.len()
        )));
    }
    let cut = |p: MultiPoly| match d {
        Some(d) => p.truncate(d),
        None => p,
    };
    if args.method == Method::Both {
        let a = cut(compute_one(&g, args.poly, Method::Brute, d)?);
        let b = cut(compute_one(&g, args.poly, Method::Recursive, d)?);
        if a != b {
            return Err(Failure(format!("methods disagree\nbrute:     {a}\nrecursive: {b}")));
        }
        return Ok(format!("{a}\nmethods agree\n"));
    }
    Ok(format!("{}\n", cut(compute_one(&g, args.poly, args.method, d)?)))
}

fn specialize(to: Target, p: &MultiPoly) -> Outcome {
    let out = match to {
        Target::B1 => specialize_b1(p),
        Target::By0 => p.substitute(&sigma_y0()),
        Target::Bxy => p.substitute(&sigma_eq()),
        Target::Bi => p.substitute(&eta_prime()),
        Target::LowerQ => p.substitute(&sigma_q()),
        Target::UpperQ => p.substitute(&tau()),
        Target::I => p.substitute(&sigma_eq()).substitute(&eta()),
    };
    Ok(format!("{out}\n"))
}

fn check(name: &str, cfg: &SuiteConfig, jobs: usize) -> Outcome {
    let chosen: Vec<_> = if name == "all" {
        SUITES.iter().collect()
    } else {
        vec![find_suite(name).ok_or_else(|| Failure(format!("unknown suite `{name}`; see check --list")))?]
    };
    let reports: Vec<SuiteReport> = if jobs <= 1 {
        chosen.iter().map(|s| run_suite(s, cfg)).collect()
    } else {
        let mut slots: Vec<Option<SuiteReport>> = vec![None; chosen.len()];
        std::thread::scope(|scope| {
            for (t, chunk) in slots.chunks_mut(chosen.len().div_ceil(jobs)).enumerate() {
                let start = t * chosen.len().div_ceil(jobs);
                let chosen = &chosen;
                scope.spawn(move || {
                    for (i, slot) in chunk.iter_mut().enumerate() {
                        *slot = Some(run_suite(chosen[start + i], cfg));
                    }
                });
            }
        });
        slots.into_iter().map(|r| r.expect("every suite ran")).collect()
    };
    let text: String = reports.iter().map(SuiteReport::render).collect();
    if reports.iter().all(SuiteReport::passed) {
        Ok(text)
    } else {
        Err(Failure(format!("suite failure\n{text}")))
    }
}

fn matroid(poly: MatroidPoly, method: TutteWay, activities: bool, input: &MatroidInput) -> Outcome {
    let m = match (&input.file, &input.inline, &input.graph) {
        (Some(path), _, _) => parse_matroid(&read_file(path)?, path.parent())?,
        (None, Some(s), _) => parse_matroid(&s.replace(';', "\n"), None)?,
        (None, None, Some(path)) => Matroid::from_graph_file(&parse_graph(&read_file(path)?)?)?,
        _ => unreachable!("clap requires one matroid input"),
    };
    let mut out = String::new();
    if activities {
        for &b in m.bases() {
            let (ia, ea) = m.activities(b)?;
            writeln!(out, "basis {}  IA {}  EA {}", m.set_text(b), m.set_text(ia), m.set_text(ea)).expect("string write");
        }
    }
    let p = match poly {
        MatroidPoly::T => m.tutte_polynomial(match method {
            TutteWay::Rank => TutteMethod::RankShift,
            TutteWay::Activities => TutteMethod::Activities,
        }),
        MatroidPoly::R => m.rank_polynomial(),
        MatroidPoly::TTilde => m.multivariate_tutte(),
        MatroidPoly::RTilde => m.multivariate_rank_tilde(),
    };
    writeln!(out, "{p}").expect("string write");
    Ok(out)
}
