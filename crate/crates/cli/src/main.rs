//! qcli inspects q-commutative power series rings.  A JSON configuration
//! fixes the coefficient tower and the commutation matrix; subcommands
//! report on the radical lattice and the torus-invariant spectrum, and do
//! truncated arithmetic on series expressions in the Laurent localization.
//!
//! One structured document in (`--config`), one out (`--output json`);
//! the default text output is a human summary of the same data.

mod config;
mod expr;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcps_core::center::{central_decompose, monomialize};
use qcps_core::lattice::{is_generic, kernel_lattice, subgroup_index, Transversal};
use qcps_core::laurent::LaurentElem;
use qcps_core::scalar::FieldElem;
use qcps_core::series::{SeriesRing, SkewSeries, TorusElement};
use qcps_core::spectrum::{chain_check, full_report, h_primes, report_to_dot, Stratum};

use config::RingConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qcps_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Parser)]
#[command(name = "qcli", version, about = "inspect q-commutative power series rings")]
struct Cli {
    /// Ring configuration file (JSON)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Override the configured truncation precision
    #[arg(long, global = true, value_name = "D")]
    precision: Option<u32>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Radical lattice of the commutation bicharacter: basis, rank, index
    Center,
    /// Full torus-invariant spectrum report
    Spectrum,
    /// Center rank and simplicity of every stratum
    Strata,
    /// The 2^n torus-invariant primes J_w
    Hprimes,
    /// Whether the commutation values generate a free abelian group of
    /// rank n(n-1)/2
    IsGeneric,
    /// Unique-factorization verdict for the series ring
    IsUfd,
    /// Goldie bound of the localization, when the radical lattice has
    /// full rank
    Goldie,
    /// Multiply two series expressions
    Mul { lhs: String, rhs: String },
    /// Raise a series expression to an integer power
    Pow { expr: String, exponent: i64 },
    /// Invert a series expression
    Inv { expr: String },
    /// Check normality of a power series up to the working precision
    NormalCheck { expr: String },
    /// Split a power series into central components over the coset
    /// transversal
    Decompose { expr: String },
    /// Extract the support of a power series by torus averaging
    Monomialize { expr: String },
    /// Count saturated chains from the zero ideal to J_w (generic
    /// configurations only)
    ChainCheck { w: Vec<usize> },
    /// DOT digraph of the spectrum poset
    Dot,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Center => "center",
            Command::Spectrum => "spectrum",
            Command::Strata => "strata",
            Command::Hprimes => "hprimes",
            Command::IsGeneric => "is-generic",
            Command::IsUfd => "is-ufd",
            Command::Goldie => "goldie",
            Command::Mul { .. } => "mul",
            Command::Pow { .. } => "pow",
            Command::Inv { .. } => "inv",
            Command::NormalCheck { .. } => "normal-check",
            Command::Decompose { .. } => "decompose",
            Command::Monomialize { .. } => "monomialize",
            Command::ChainCheck { .. } => "chain-check",
            Command::Dot => "dot",
        }
    }
}

/// Structured and human views of one command's result; `dot` is only
/// populated by the poset-shaped commands.
struct Rendered {
    json: Value,
    text: String,
    dot: Option<String>,
}

impl Rendered {
    fn plain(json: Value, text: String) -> Rendered {
        Rendered {
            json,
            text,
            dot: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcli {}: {}", name, e);
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let ring = load_ring(cli)?;
    let out = dispatch(&cli.command, &ring)?;
    match cli.output {
        Format::Text => println!("{}", out.text),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&out.json).expect("reports serialize")
        ),
        Format::Dot => match out.dot {
            Some(d) => println!("{}", d),
            None => {
                return Err(CliError::Usage(
                    "dot output is only available for the spectrum and dot subcommands".into(),
                ))
            }
        },
    }
    Ok(())
}

fn load_ring(cli: &Cli) -> Result<SeriesRing, CliError> {
    let path = cli.config.as_ref().ok_or_else(|| {
        CliError::Usage("a ring configuration is required; pass --config <file>".into())
    })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {}", path.display(), e)))?;
    let cfg = RingConfig::parse(&text)?;
    let prec = cli.precision.unwrap_or(cfg.precision);
    if prec < 1 {
        return Err(CliError::Usage("precision must be at least 1".into()));
    }
    Ok(SeriesRing::with_precision(cfg.matrix()?, prec))
}

fn dispatch(cmd: &Command, ring: &SeriesRing) -> Result<Rendered, CliError> {
    let mut used_stdin = false;
    let mut eval_arg = |raw: &str| -> Result<LaurentElem, CliError> {
        let text = read_expr_arg(raw, &mut used_stdin)?;
        let ast = expr::parse(&text, ring.n(), ring.q().sig().r)?;
        expr::eval(&ast, ring)
    };

    match cmd {
        Command::Center => {
            let lat = kernel_lattice(ring.q());
            let idx = subgroup_index(&lat);
            let mut text = format!(
                "radical lattice rank {}, index {}\nbasis:",
                lat.rank(),
                idx
            );
            if lat.basis().is_empty() {
                text.push_str(" (none)");
            } else {
                for v in lat.basis() {
                    text.push_str("\n  ");
                    text.push_str(&fmt_vec(v));
                }
            }
            Ok(Rendered::plain(
                json!({
                    "kernel_basis": lat.basis(),
                    "rank": lat.rank(),
                    "index": idx.to_string(),
                }),
                text,
            ))
        }
        Command::Spectrum => {
            let report = full_report(ring.q());
            let mut lines = vec![
                format!(
                    "n = {} ({})",
                    report.n,
                    if report.generic { "generic" } else { "not generic" }
                ),
                format!("assumption: {}", report.assumptions.join("; ")),
                format!("torus-invariant primes: {}", report.h_primes.len()),
                format!("ufd verdict: {}", report.ufd_verdict),
            ];
            if let Some(h1) = &report.height_one {
                let names: Vec<String> =
                    h1.iter().map(|i| format!("J_{{{}}}", i)).collect();
                lines.push(format!("height-one primes: {}", names.join(", ")));
            }
            lines.push(format!("goldie bound: {}", report.goldie_bound));
            if let Some(note) = &report.goldie_note {
                lines.push(format!("  ({})", note));
            }
            lines.push("strata:".into());
            for s in &report.strata {
                lines.push(format!("  {}", stratum_line(s)));
            }
            let dot = report_to_dot(&report);
            Ok(Rendered {
                json: serde_json::to_value(&report).expect("reports serialize"),
                text: lines.join("\n"),
                dot: Some(dot),
            })
        }
        Command::Strata => {
            let report = full_report(ring.q());
            let lines: Vec<String> =
                report.strata.iter().map(stratum_line).collect();
            Ok(Rendered::plain(
                json!({ "strata": report.strata }),
                lines.join("\n"),
            ))
        }
        Command::Hprimes => {
            let primes = h_primes(ring.q());
            let lines: Vec<String> = primes
                .iter()
                .map(|p| {
                    let gens = if p.generators.is_empty() {
                        "0".to_string()
                    } else {
                        p.generators.join(", ")
                    };
                    format!("J_{} = <{}>", fmt_w(&p.w), gens)
                })
                .collect();
            Ok(Rendered::plain(
                json!({ "h_primes": primes }),
                lines.join("\n"),
            ))
        }
        Command::IsGeneric => {
            let generic = is_generic(ring.q());
            Ok(Rendered::plain(
                json!({ "generic": generic }),
                format!("generic: {}", generic),
            ))
        }
        Command::IsUfd => {
            let report = full_report(ring.q());
            Ok(Rendered::plain(
                json!({
                    "ufd_verdict": report.ufd_verdict,
                    "generic": report.generic,
                }),
                format!("ufd verdict: {}", report.ufd_verdict),
            ))
        }
        Command::Goldie => {
            let report = full_report(ring.q());
            let mut text = format!("goldie bound: {}", report.goldie_bound);
            if let Some(note) = &report.goldie_note {
                text.push_str(&format!("\n  ({})", note));
            }
            Ok(Rendered::plain(
                json!({
                    "goldie_bound": report.goldie_bound,
                    "note": report.goldie_note,
                }),
                text,
            ))
        }
        Command::Mul { lhs, rhs } => {
            let a = eval_arg(lhs)?;
            let b = eval_arg(rhs)?;
            Ok(render_elem(a.mul(&b)))
        }
        Command::Pow { expr, exponent } => {
            let a = eval_arg(expr)?;
            Ok(render_elem(a.pow(*exponent)?))
        }
        Command::Inv { expr } => {
            let a = eval_arg(expr)?;
            Ok(render_elem(a.inv()?))
        }
        Command::NormalCheck { expr } => {
            let a = eval_arg(expr)?;
            let body = require_series(&a, "normal-check")?;
            let normal = body.is_normal();
            let verdict = if normal {
                format!("normal to precision {}", body.precision())
            } else {
                "not normal".to_string()
            };
            Ok(Rendered::plain(
                json!({
                    "normal": normal,
                    "precision": body.precision(),
                    "verdict": verdict,
                }),
                verdict.clone(),
            ))
        }
        Command::Decompose { expr } => {
            let a = eval_arg(expr)?;
            let body = require_series(&a, "decompose")?;
            let lat = kernel_lattice(ring.q());
            let tr = Transversal::new(&lat);
            let dec = central_decompose(&lat, &tr, body)?;
            let mut comps = Vec::new();
            let mut lines = vec![format!("central components: {}", dec.len())];
            for (t, z) in dec.components() {
                comps.push(json!({
                    "representative": t.exponents(),
                    "precision": z.precision(),
                    "series": z.to_string(),
                }));
                lines.push(format!(
                    "  t = {} [precision {}]: {}",
                    fmt_vec(t.exponents()),
                    z.precision(),
                    z
                ));
            }
            Ok(Rendered::plain(
                json!({ "components": comps, "count": dec.len() }),
                lines.join("\n"),
            ))
        }
        Command::Monomialize { expr } => {
            let a = eval_arg(expr)?;
            let body = require_series(&a, "monomialize")?;
            let probe = prime_probe(ring);
            let out = monomialize(body, &probe)?;
            let rendered: Vec<String> =
                out.monomials.iter().map(|m| m.render()).collect();
            let mut lines = vec![format!(
                "support ({} monomials, {} probe retries):",
                rendered.len(),
                out.retries
            )];
            for m in &rendered {
                lines.push(format!("  {}", m));
            }
            Ok(Rendered::plain(
                json!({ "monomials": rendered, "retries": out.retries }),
                lines.join("\n"),
            ))
        }
        Command::ChainCheck { w } => {
            let report = full_report(ring.q());
            let len = chain_check(&report, w)?;
            Ok(Rendered::plain(
                json!({ "w": w, "length": len }),
                format!(
                    "all saturated chains from J_{{}} to J_{} have length {}",
                    fmt_w(w),
                    len
                ),
            ))
        }
        Command::Dot => {
            let report = full_report(ring.q());
            let dot = report_to_dot(&report);
            Ok(Rendered {
                json: json!({ "dot": dot }),
                text: dot.clone(),
                dot: Some(dot),
            })
        }
    }
}

fn read_expr_arg(raw: &str, used_stdin: &mut bool) -> Result<String, CliError> {
    if raw != "-" {
        return Ok(raw.to_string());
    }
    if *used_stdin {
        return Err(CliError::Usage(
            "only one expression may be read from stdin".into(),
        ));
    }
    *used_stdin = true;
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf)?;
    Ok(buf)
}

fn render_elem(elem: LaurentElem) -> Rendered {
    Rendered::plain(
        json!({
            "result": elem.to_string(),
            "precision": elem.body().precision(),
        }),
        elem.to_string(),
    )
}

fn require_series<'a>(
    elem: &'a LaurentElem,
    what: &str,
) -> Result<&'a SkewSeries, CliError> {
    if elem.shift().iter().any(|&s| s != 0) {
        return Err(CliError::Usage(format!(
            "{} needs a power series; this element carries the Laurent shift {}",
            what,
            fmt_vec(elem.shift())
        )));
    }
    Ok(elem.body())
}

/// Distinct primes separate distinct monomials, so this probe never needs
/// a retry.
fn prime_probe(ring: &SeriesRing) -> TorusElement {
    let sig = ring.q().sig();
    let mut primes = Vec::with_capacity(ring.n());
    let mut c = 2i64;
    while primes.len() < ring.n() {
        if primes.iter().all(|p| c % p != 0) {
            primes.push(c);
        }
        c += 1;
    }
    TorusElement::new(
        primes
            .into_iter()
            .map(|p| FieldElem::from_int(sig, p))
            .collect(),
    )
    .expect("primes are nonzero")
}

fn fmt_vec(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(", "))
}

fn fmt_w(w: &[usize]) -> String {
    let inner: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn stratum_line(s: &Stratum) -> String {
    format!(
        "J_{}: n_w = {}, center rank {}, {}, index {}",
        fmt_w(&s.w),
        s.n_w,
        s.center_rank,
        if s.simple { "simple" } else { "not simple" },
        s.index
    )
}
