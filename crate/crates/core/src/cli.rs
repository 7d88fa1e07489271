//! Command-line front end: `analyze`, `hull` and `order`.
//!
//! Exit codes: 0 on success, 1 on a parse or usage error, 2 on an internal
//! invariant violation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::exponent::{Convention, ExponentVector, GeometryDim};
use crate::order::{self, Expr, RaySpec, Regime};
use crate::parser::parse_differential_sum;
use crate::polyhedron::convex_hull;
use crate::presets::PresetId;
use crate::report::{EstimateDoc, GapDoc, HullDocument, OrderDocument, RegimeFilter, ReportDocument};
use crate::truncation::{analyze, parse_assumptions, AnalysisError, AnalysisOptions};

#[derive(Parser, Debug)]
#[command(name = "powergeom", version, about = "Power geometry of second-order polynomial ODEs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RegimeArg {
    Zero,
    Infinity,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RayRegime {
    Zero,
    Infinity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Support, hull, truncations and candidate orders of an equation.
    Analyze {
        #[arg(long, conflicts_with_all = ["equation", "file"])]
        preset: Option<String>,
        #[arg(long, conflicts_with = "file")]
        equation: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
        dim: u8,
        #[arg(long, default_value = "plain")]
        convention: String,
        #[arg(long, value_enum, default_value_t = RegimeArg::Both)]
        regime: RegimeArg,
        /// Comma-separated `name!=0` or `name=value` items.
        #[arg(long)]
        assume: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force_relative: bool,
        /// Print the published and computed values of every fired erratum.
        #[arg(long)]
        explain: bool,
    },
    /// Hull of an explicit point list such as "(0,0),(1,0),(0,1)".
    Hull {
        #[arg(long)]
        points: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical order of psi on rays through the origin.
    Order {
        #[arg(long)]
        expr: String,
        /// First derivative, for the derivative gap report.
        #[arg(long, requires = "d2")]
        d1: Option<String>,
        /// Second derivative, for the derivative gap report.
        #[arg(long, requires = "d1")]
        d2: Option<String>,
        /// Comma-separated ray angles in radians.
        #[arg(long, default_value = "0")]
        phi: String,
        #[arg(long, value_enum, default_value_t = RayRegime::Zero)]
        regime: RayRegime,
        #[arg(long)]
        r0: Option<f64>,
        #[arg(long)]
        ratio: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = order::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs the tool on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(cli.command)));
    let result = match outcome {
        Ok(r) => r,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            Err(Failure::Internal(msg))
        }
    };
    match result {
        Ok((text, None)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            0
        }
        Ok((text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write `{}`: {e}", path.display());
                1
            }
        },
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            2
        }
    }
}

fn execute(cmd: Command) -> Result<(String, Option<PathBuf>), Failure> {
    match cmd {
        Command::Analyze {
            preset,
            equation,
            file,
            dim,
            convention,
            regime,
            assume,
            format,
            out,
            force_relative,
            explain,
        } => {
            let (input, preset) = match (preset, equation, file) {
                (Some(p), _, _) => {
                    let id: PresetId = p.parse().map_err(Failure::Usage)?;
                    (id.text().to_string(), Some(id))
                }
                (None, Some(e), _) => (e, None),
                (None, None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| usage(format!("cannot read `{}`: {e}", path.display())))?;
                    (text.trim().to_string(), None)
                }
                (None, None, None) => return Err(usage("one of --preset, --equation or --file is required")),
            };
            let sum = parse_differential_sum(&input).map_err(|e| usage(equation_error(&input, &e)))?;
            let preset = preset.or_else(|| PresetId::identify(&sum));
            let convention: Convention = convention.parse().map_err(Failure::Usage)?;
            let assumptions = match assume {
                Some(a) => parse_assumptions(&a).map_err(|e| usage(e.to_string()))?,
                None => Vec::new(),
            };
            let dim = GeometryDim::try_from(dim as usize).map_err(|_| usage(format!("invalid --dim `{dim}`")))?;
            let options = AnalysisOptions { dim, convention, assumptions, force_relative };
            let report = analyze(&sum, &options).map_err(|e| match e {
                AnalysisError::ZeroEquation => usage(e.to_string()),
                other => Failure::Internal(other.to_string()),
            })?;
            let filter = match regime {
                RegimeArg::Zero => RegimeFilter::Zero,
                RegimeArg::Infinity => RegimeFilter::Infinity,
                RegimeArg::Both => RegimeFilter::Both,
            };
            let doc = ReportDocument::from_analysis(&input, preset, &report, filter);
            let text = match format {
                Format::Json => doc.to_json(),
                Format::Text => doc.to_text(explain),
            };
            Ok((text, out))
        }
        Command::Hull { points, format, out } => {
            let pts = parse_points(&points).map_err(Failure::Usage)?;
            let lattice = convex_hull(&pts);
            if lattice.euler_sum() != 0 && lattice.affine_dim > 0 {
                return Err(Failure::Internal("face lattice violates the Euler relation".into()));
            }
            let doc = HullDocument::from_lattice(&lattice);
            let text = match format {
                Format::Json => doc.to_json(),
                Format::Text => doc.to_text(),
            };
            Ok((text, out))
        }
        Command::Order { expr, d1, d2, phi, regime, r0, ratio, count, tol, format, out } => {
            let parse = |flag: &str, s: &str| Expr::parse(s).map_err(|e| usage(format!("--{flag}: {e} in `{s}`")));
            let psi = parse("expr", &expr)?;
            let derivs = match (d1, d2) {
                (Some(a), Some(b)) => Some((parse("d1", &a)?, parse("d2", &b)?)),
                _ => None,
            };
            let phis = phi
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| usage(format!("invalid --phi value `{}`", t.trim()))))
                .collect::<Result<Vec<f64>, Failure>>()?;
            let regime = match regime {
                RayRegime::Zero => Regime::ToZero,
                RayRegime::Infinity => Regime::ToInfinity,
            };
            let ray_for = |phi: f64| {
                let mut ray = RaySpec::new(phi, regime);
                if let Some(v) = r0 {
                    ray.r0 = v;
                }
                if let Some(v) = ratio {
                    ray.ratio = v;
                }
                if let Some(v) = count {
                    ray.count = v;
                }
                ray
            };
            let base = ray_for(phis[0]);
            if let Err(e) = base.validate() {
                return Err(usage(e.to_string()));
            }
            let f = |z: Complex64| psi.eval(z);
            let estimates =
                phis.iter().map(|&p| EstimateDoc::new(p, &order::estimate_order(f, &ray_for(p), tol))).collect();
            let (gaps, gaps_error) = match &derivs {
                Some((a, b)) => match order::derivative_order_gaps(f, |z| a.eval(z), |z| b.eval(z), &base, tol) {
                    Ok(g) => (Some(GapDoc::from(&g)), None),
                    Err(e) => (None, Some(e.to_string())),
                },
                None => (None, None),
            };
            let doc = OrderDocument {
                schema_version: crate::report::SCHEMA_VERSION,
                kind: "order",
                expr,
                ray: base,
                tolerance: tol,
                estimates,
                gaps,
                gaps_error,
            };
            let text = match format {
                Format::Json => doc.to_json(),
                Format::Text => doc.to_text(),
            };
            Ok((text, out))
        }
    }
}

fn equation_error(input: &str, e: &crate::parser::ParseError) -> String {
    let col = e.column();
    let token: String = input.chars().skip(col.saturating_sub(1)).take_while(|c| !c.is_whitespace()).collect();
    if token.is_empty() {
        format!("malformed equation: {e}")
    } else {
        format!("malformed equation near `{token}`: {e}")
    }
}

/// Parses `"(0,0),(1,0),(0,1)"` into points of a common dimension 1..=4.
pub fn parse_points(text: &str) -> Result<Vec<ExponentVector>, String> {
    let mut points = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(format!("expected `(` at `{rest}`"));
        };
        let Some(end) = body.find(')') else {
            return Err(format!("unclosed point `({body}`"));
        };
        let coords = body[..end]
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| format!("invalid coordinate `{}`", t.trim())))
            .collect::<Result<Vec<i64>, String>>()?;
        if !(1..=4).contains(&coords.len()) {
            return Err(format!("point `({})` must have 1 to 4 coordinates", &body[..end]));
        }
        if let Some(first) = points.first() {
            let first: &ExponentVector = first;
            if first.dim() != coords.len() {
                return Err(format!("point `({})` has a different dimension from the first point", &body[..end]));
            }
        }
        points.push(ExponentVector::new(coords));
        rest = body[end + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err("trailing `,` in point list".into());
            }
        } else if !rest.is_empty() {
            return Err(format!("expected `,` at `{rest}`"));
        }
    }
    if points.is_empty() {
        return Err("empty point list".into());
    }
    Ok(points)
}
