//! `tfs` — exact computations with thin flat surfaces and their
//! rational evaluations. All numbers are exact rationals ("num/den").

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::One;
use serde_json::json;

use tfs_core::cobordism::Cobordism;
use tfs_core::expr::{eval_word, line_col};
use tfs_core::gligible::{gram, trace_alpha, GramPath};
use tfs_core::hilbert::{classify_point, gram_point, point_to_series, point_validate};
use tfs_core::json as wire;
use tfs_core::series::{
    beta_pack, beta_unpack, evaluate_floating, fit_rational, syntactic_algebra,
};
use tfs_core::skein::{enumerate_minimal, reduce, skein_dim};
use tfs_core::{Config, Rat, RatForm};

#[derive(Parser)]
#[command(
    name = "tfs",
    version,
    about = "Exact engine for gluing thin flat surfaces and evaluating them in rational series",
    after_help = "Expressions build morphisms from the generators iota, eps, mu, delta, perm, \
b1, b2, b3, id(n), S(l,g); ';' composes left to right and '@' lays side by side. \
Rationals print as num/den. Exit codes: 0 success, 1 domain error, 2 usage."
)]
struct Cli {
    /// Arity cap for enumerative commands (overrides the TFS_CAP variable; default 7).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Emit single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    /// Close surfaces directly and evaluate.
    Raw,
    /// Compose in skein coordinates first.
    Skein,
}

impl From<PathArg> for GramPath {
    fn from(p: PathArg) -> GramPath {
        match p {
            PathArg::Raw => GramPath::RawClosure,
            PathArg::Skein => GramPath::SkeinPairing,
        }
    }
}

/// Expression source: inline text or a file with one expression per line.
#[derive(Args)]
struct ExprInput {
    /// Expression text, e.g. "iota ; b1 ; eps".
    #[arg(long, value_name = "EXPR", conflicts_with = "file", required_unless_present = "file")]
    expr: Option<String>,
    /// File with one expression per line ('#' starts a comment).
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl ExprInput {
    fn words(&self) -> Result<Vec<String>> {
        if let Some(e) = &self.expr {
            return Ok(vec![e.clone()]);
        }
        let path = self.file.as_ref().expect("clap enforces one source");
        let text = read_text(path)?;
        Ok(text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect())
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate closed (0 -> 0) expressions in a series.
    Eval {
        /// Series file (JSON: P, Q1, Q2).
        #[arg(long)]
        series: PathBuf,
        #[command(flatten)]
        input: ExprInput,
    },
    /// One coefficient of a series.
    Coeff {
        #[arg(long)]
        series: PathBuf,
        /// Power of the first variable.
        #[arg(long)]
        l: usize,
        /// Power of the second variable.
        #[arg(long)]
        g: usize,
    },
    /// The finite-dimensional algebra recognized from a series.
    Syntactic {
        #[arg(long)]
        series: PathBuf,
    },
    /// Fit a rational form to a coefficient table, or report null.
    Fit {
        /// Table file (JSON: L, G, rows).
        #[arg(long)]
        table: PathBuf,
        /// Degree bounds dq1,dq2,dp1,dp2.
        #[arg(long, value_parser = parse_bounds)]
        bounds: (usize, usize, usize, usize),
    },
    /// Count and list the minimal cobordisms at an arity.
    Basis {
        /// Source arity.
        #[arg(long)]
        n: usize,
        /// Target arity.
        #[arg(long)]
        m: usize,
        /// Optional series; adds the skein dimension over its algebra.
        #[arg(long)]
        series: Option<PathBuf>,
    },
    /// Skein and state dimensions per arity.
    Dims {
        #[arg(long)]
        series: PathBuf,
        /// Largest arity to report.
        #[arg(long)]
        max_n: usize,
        /// How Gram entries are computed.
        #[arg(long, value_enum, default_value_t = PathArg::Raw)]
        path: PathArg,
    },
    /// Rewrite expressions in skein coordinates.
    Reduce {
        #[arg(long)]
        series: PathBuf,
        #[command(flatten)]
        input: ExprInput,
    },
    /// Trace of endomorphism expressions.
    Trace {
        #[arg(long)]
        series: PathBuf,
        #[command(flatten)]
        input: ExprInput,
    },
    /// Validate, classify, and expand a chart point.
    Hilbert {
        /// Point file (JSON: k, basis, N1, N2, a).
        #[arg(long)]
        point: PathBuf,
    },
    /// Canonical form of expressions.
    Compose {
        #[command(flatten)]
        input: ExprInput,
    },
    /// Pack or unpack a pair of series along the shift embedding.
    Beta {
        #[command(subcommand)]
        sub: BetaCmd,
    },
}

#[derive(Subcommand)]
enum BetaCmd {
    /// Combine a two-variable series and a one-variable series into one.
    Pack {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        gamma: PathBuf,
    },
    /// Split a packed series back into its two layers.
    Unpack {
        #[arg(long)]
        beta: PathBuf,
    },
}

fn parse_bounds(s: &str) -> std::result::Result<(usize, usize, usize, usize), String> {
    let parts: Vec<_> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err("expected four comma-separated non-negative integers".into());
    }
    let mut v = [0usize; 4];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("invalid bound {p:?}"))?;
    }
    Ok((v[0], v[1], v[2], v[3]))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_series(path: &Path) -> Result<RatForm> {
    let dto: wire::SeriesDto = serde_json::from_str(&read_text(path)?)
        .with_context(|| format!("{} is not a valid series file", path.display()))?;
    Ok(wire::series_from_dto(&dto)?)
}

fn parse_expr(src: &str) -> Result<Cobordism> {
    eval_word(src).map_err(|e| {
        let (line, col) = line_col(src, e.position());
        anyhow!("{line}:{col}: {e}")
    })
}

fn resolve_cap(cli: &Cli) -> usize {
    cli.cap
        .or_else(|| std::env::var("TFS_CAP").ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| Config::default().cap)
}

fn check_cap(arity: usize, cap: usize) -> Result<()> {
    if arity > cap {
        bail!("arity {arity} exceeds the cap {cap} (raise --cap or TFS_CAP)");
    }
    Ok(())
}

/// Print one JSON value: pretty when it is the only output and --compact is
/// not set, one compact line otherwise.
fn emit_json(cli: &Cli, value: &serde_json::Value, one_of_many: bool) {
    if cli.compact || one_of_many {
        println!("{value}");
    } else {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.cmd {
        Cmd::Eval { series, input } => {
            let z = load_series(series)?;
            for word in input.words()? {
                let c = parse_expr(&word)?;
                if (c.n(), c.m()) != (0, 0) {
                    bail!("expression is {} -> {}, expected a closed 0 -> 0 morphism", c.n(), c.m());
                }
                println!("{}", wire::rat_to_string(&evaluate_floating(&z, c.floating())));
            }
        }
        Cmd::Coeff { series, l, g } => {
            let z = load_series(series)?;
            println!("{}", wire::rat_to_string(&z.coeff(*l, *g)));
        }
        Cmd::Syntactic { series } => {
            let alg = syntactic_algebra(&load_series(series)?);
            let value = serde_json::to_value(wire::algebra_to_dto(&alg))?;
            emit_json(cli, &value, false);
        }
        Cmd::Fit { table, bounds } => {
            let dto: wire::TableDto = serde_json::from_str(&read_text(table)?)
                .with_context(|| format!("{} is not a valid table file", table.display()))?;
            let t = wire::table_from_dto(&dto)?;
            match fit_rational(&t, *bounds)? {
                Some(z) => emit_json(cli, &serde_json::to_value(wire::series_to_dto(&z))?, false),
                None => println!("null"),
            }
        }
        Cmd::Basis { n, m, series } => {
            check_cap(n + m, resolve_cap(cli))?;
            let elements = enumerate_minimal(*n, *m);
            if cli.format == Format::Tsv {
                for e in &elements {
                    println!("{}", e.format_text());
                }
                return Ok(());
            }
            let dim = match series {
                Some(path) => {
                    let alg = syntactic_algebra(&load_series(path)?);
                    serde_json::Value::from(skein_dim(&alg, *n, *m))
                }
                None => serde_json::Value::Null,
            };
            let value = json!({
                "n": n,
                "m": m,
                "count": elements.len(),
                "skein_dim": dim,
                "elements": elements.iter().map(wire::cobordism_to_dto).collect::<Vec<_>>(),
            });
            emit_json(cli, &value, false);
        }
        Cmd::Dims { series, max_n, path } => {
            check_cap(*max_n, resolve_cap(cli))?;
            let alg = syntactic_algebra(&load_series(series)?);
            let rows: Vec<(usize, usize, usize)> = (0..=*max_n)
                .map(|n| {
                    let g = gram(&alg, n, (*path).into());
                    (n, g.basis.len(), g.rank)
                })
                .collect();
            if cli.format == Format::Tsv {
                println!("n\tskein_dim\tstate_dim");
                for (n, s, d) in rows {
                    println!("{n}\t{s}\t{d}");
                }
            } else {
                let value = json!({
                    "rows": rows
                        .iter()
                        .map(|&(n, s, d)| json!({"n": n, "skein_dim": s, "state_dim": d}))
                        .collect::<Vec<_>>(),
                });
                emit_json(cli, &value, false);
            }
        }
        Cmd::Reduce { series, input } => {
            let alg = syntactic_algebra(&load_series(series)?);
            let words = input.words()?;
            let many = words.len() > 1;
            for word in words {
                let c = parse_expr(&word)?;
                let v = reduce(&alg, &[(Rat::one(), c)])?;
                emit_json(cli, &serde_json::to_value(wire::skein_vector_to_dto(&v))?, many);
            }
        }
        Cmd::Trace { series, input } => {
            let z = load_series(series)?;
            for word in input.words()? {
                let c = parse_expr(&word)?;
                println!("{}", wire::rat_to_string(&trace_alpha(&z, &c)?));
            }
        }
        Cmd::Hilbert { point } => {
            let dto: wire::HilbertPointDto = serde_json::from_str(&read_text(point)?)
                .with_context(|| format!("{} is not a valid point file", point.display()))?;
            let p = wire::point_from_dto(&dto)?;
            point_validate(&p).map_err(|v| anyhow!("invalid point: {v}"))?;
            let (m, det) = gram_point(&p).expect("validated");
            let class = classify_point(&p).expect("validated");
            let z = point_to_series(&p).expect("validated");
            let value = json!({
                "k": class.k,
                "m": class.m,
                "in_Dk": class.in_dk,
                "det": wire::rat_to_string(&det),
                "gram": wire::matrix_to_rows(&m),
                "series": serde_json::to_value(wire::series_to_dto(&z))?,
            });
            emit_json(cli, &value, false);
        }
        Cmd::Compose { input } => {
            let words = input.words()?;
            let many = words.len() > 1;
            for word in words {
                let c = parse_expr(&word)?;
                if cli.format == Format::Tsv {
                    println!("{}", c.format_text());
                } else {
                    let mut value = serde_json::to_value(wire::cobordism_to_dto(&c))?;
                    value
                        .as_object_mut()
                        .expect("object")
                        .insert("text".into(), c.format_text().into());
                    emit_json(cli, &value, many);
                }
            }
        }
        Cmd::Beta { sub } => match sub {
            BetaCmd::Pack { alpha, gamma } => {
                let packed = beta_pack(&load_series(alpha)?, &load_series(gamma)?)?;
                emit_json(cli, &serde_json::to_value(wire::series_to_dto(&packed))?, false);
            }
            BetaCmd::Unpack { beta } => {
                let (alpha, gamma) = beta_unpack(&load_series(beta)?);
                let value = json!({
                    "alpha": serde_json::to_value(wire::series_to_dto(&alpha))?,
                    "gamma": serde_json::to_value(wire::series_to_dto(&gamma))?,
                });
                emit_json(cli, &value, false);
            }
        },
    }
    Ok(())
}
