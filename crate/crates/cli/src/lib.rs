//! Command-line front end for `chebosc`: matrix export, verification runs,
//! polynomial printing and the identity sweep.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use chebosc::annihilator::{apply_operator, matrix_solve_oracle};
use chebosc::chebgen::{cheb_closed_general, cheb_sequence, psi, RecurrenceSpec};
use chebosc::combinat::{identity_sweep, summarize};
use chebosc::export::{block_to_csv, block_to_json, block_to_latex, zpoly_json, zpoly_latex, zpoly_text, Block};
use chebosc::oscillator::{algebra_check, gram_matrix, psi_coeffs, MeasureSpec, OrthonormalityChecker, DEFAULT_NODES};
use chebosc::{BigRational, CoeffMatrix, LadderSpec, ZPoly};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Largest basis index used by the quadrature Gram matrix.
pub const QUADRATURE_MAX_N: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "chebosc",
    version,
    about = "Exact coefficient matrix of the generalized Chebyshev oscillator annihilator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Export the top-left rows x cols block of the coefficient matrix.
    Matrix {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u32).range(1..))]
        rows: u32,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(1..))]
        cols: u32,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        format: MatrixFormat,
        /// Also evaluate every entry at this value of a (json and csv only).
        #[arg(long, value_parser = positive_f64)]
        a: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operator action, route agreement, sparsity and algebra checks up to max-n.
    Verify {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        /// Add the floating-point orthonormality checks.
        #[arg(long)]
        quadrature: bool,
        /// Values of a for the quadrature checks; defaults to 0.5, 1, sqrt(2), 2.
        #[arg(long, value_parser = positive_f64)]
        a: Vec<f64>,
    },
    /// Print Ch_n(z; pos_k; a).
    Poly {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        pos_k: u32,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep every combinatorial identity over its grid up to max-param.
    Identities {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(4..))]
        max_param: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyFormat {
    Text,
    Latex,
    Json,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("a must be positive and finite, got {v}"))
    }
}

/// One line of the `verify` table.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckRow {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Matrix {
            rows,
            cols,
            format,
            a,
            out: path,
        } => {
            let text = render_matrix(rows as usize, cols as usize, format, a)?;
            emit(&text, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { max_n, quadrature, a } => {
            let a_vals = if a.is_empty() {
                vec![0.5, 1.0, 2f64.sqrt(), 2.0]
            } else {
                a
            };
            let rows = verify_rows(max_n as usize, quadrature.then_some(&a_vals[..]));
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in &rows {
                let status = if r.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{:<width$}  {status}  {}", r.name, r.detail)?;
            }
            Ok(if rows.iter().all(|r| r.pass) {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
        Command::Poly {
            n,
            pos_k,
            format,
            out: path,
        } => {
            let spec = RecurrenceSpec::new(pos_k as usize).map_err(|e| Failure::Usage(e.to_string()))?;
            let p = cheb_closed_general(n as usize, &spec).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut text = match format {
                PolyFormat::Text => zpoly_text(&p),
                PolyFormat::Latex => zpoly_latex(&p),
                PolyFormat::Json => zpoly_json(&p, n as usize, pos_k as usize),
            };
            text.push('\n');
            emit(&text, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Identities { max_param } => {
            let reports = identity_sweep(max_param).map_err(|e| Failure::Usage(e.to_string()))?;
            let summary = summarize(&reports);
            for s in &summary {
                let names: Vec<&str> = s.identities.iter().map(|id| id.name()).collect();
                let status = if s.all_pass() { "pass" } else { "FAIL" };
                writeln!(
                    out,
                    "({}) {}: {}/{} {status}",
                    s.family,
                    names.join(", "),
                    s.passed,
                    s.total
                )?;
            }
            for r in reports.iter().filter(|r| !r.pass) {
                writeln!(out, "  {r}")?;
            }
            Ok(if summary.iter().all(|s| s.all_pass()) {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn render_matrix(rows: usize, cols: usize, format: MatrixFormat, a: Option<f64>) -> Result<String, Failure> {
    let matrix = CoeffMatrix::closed(cols - 1);
    let block = Block::from_matrix(&matrix, rows, cols);
    let usage = |e: chebosc::Error| Failure::Usage(e.to_string());
    Ok(match format {
        MatrixFormat::Json => block_to_json(&block, a).map_err(usage)? + "\n",
        MatrixFormat::Csv => block_to_csv(&block, a).map_err(usage)?,
        MatrixFormat::Latex => {
            if a.is_some() {
                return Err(Failure::Usage("--a is only supported for json and csv".into()));
            }
            block_to_latex(&block)
        }
    })
}

/// Runs the `verify` checks; `quadrature` lists the values of `a` for the
/// floating-point checks, `None` skips them.
pub fn verify_rows(max_n: usize, quadrature: Option<&[f64]>) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let spec = RecurrenceSpec::oscillator();
    let psis = cheb_sequence(max_n, &spec);

    let bad: Vec<usize> = (0..=max_n)
        .filter(|&n| {
            let want = match n {
                0 => ZPoly::zero(),
                _ => psis[n - 1].scale(&spec.b(n as isize - 1)),
            };
            apply_operator(&psis[n], None) != want
        })
        .collect();
    rows.push(CheckRow::new(
        "operator action",
        bad.is_empty(),
        format!("A Psi_n = b_(n-1) Psi_(n-1), n <= {max_n}{}", failing(&bad)),
    ));

    let closed = CoeffMatrix::closed(max_n);
    match (CoeffMatrix::recursive(max_n), matrix_solve_oracle(max_n)) {
        (Ok(recursive), Ok(oracle)) => {
            let agree = recursive == closed && oracle == closed;
            rows.push(CheckRow::new(
                "route agreement",
                agree,
                format!(
                    "closed = recursive = oracle, s <= {max_n}, {} non-zero entries",
                    closed.nonzero_count()
                ),
            ));
            let even: Vec<(usize, usize)> = (1..=max_n)
                .flat_map(|s| (0..s).map(move |l| (l, s)))
                .filter(|(l, s)| (s - l) % 2 == 0 && oracle.get(*l, *s).is_none_or(|v| !v.is_zero()))
                .collect();
            let pattern = oracle.pattern_violations();
            rows.push(CheckRow::new(
                "even overdiagonals vanish",
                even.is_empty() && pattern.is_empty(),
                format!("{} violations", even.len() + pattern.len()),
            ));
        }
        (r, o) => {
            let e = r.err().or(o.err()).expect("one route failed");
            rows.push(CheckRow::new("route agreement", false, e.to_string()));
        }
    }

    match algebra_check(max_n, &LadderSpec::default()) {
        Ok(reports) => {
            let bad = reports.iter().filter(|r| !r.pass).count();
            rows.push(CheckRow::new(
                "algebra relations",
                bad == 0,
                format!("{}/{} hold", reports.len() - bad, reports.len()),
            ));
        }
        Err(e) => rows.push(CheckRow::new("algebra relations", false, e.to_string())),
    }

    if let Some(a_vals) = quadrature {
        rows.push(chebyshev_u_row(max_n));
        let n = max_n.min(QUADRATURE_MAX_N);
        for &a in a_vals {
            rows.push(gram_row(n, a));
        }
    }
    rows
}

fn failing(bad: &[usize]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!(", fails at {bad:?}")
    }
}

fn chebyshev_u_row(max_n: usize) -> CheckRow {
    let one = BigRational::from_integer(1.into());
    // U_n(x/2): U_{n+1} = x U_n - U_{n-1}
    let mut u = vec![ZPoly::one(), ZPoly::z()];
    for n in 1..max_n {
        let next = &(&ZPoly::z() * &u[n]) - &u[n - 1];
        u.push(next);
    }
    let bad: Vec<usize> = (0..=max_n)
        .filter(|&n| psi(n).substitute_a(&one).ok() != u[n].substitute_a(&one).ok())
        .collect();
    CheckRow::new(
        "chebyshev U at a=1",
        bad.is_empty(),
        format!("Psi_n(x; a=1) = U_n(x/2), n <= {max_n}{}", failing(&bad)),
    )
}

fn gram_row(n: usize, a: f64) -> CheckRow {
    let name = format!("orthonormality a={a}");
    let spec = match MeasureSpec::new(a) {
        Ok(s) => s,
        Err(e) => return CheckRow::new(name, false, e.to_string()),
    };
    match gram_matrix(n, &spec, DEFAULT_NODES) {
        Ok(g) => {
            let dev = max_deviation(&g);
            let mut detail = format!("max |G - I| = {dev:.3e}, m,n <= {n}");
            let atoms: f64 = spec.point_masses().iter().map(|(_, w)| w).sum();
            if atoms > 0.0 {
                detail.push_str(&format!(", density misses point masses of total weight {atoms:.6}"));
                if let Some(d) = deviation_with_atoms(n, spec) {
                    detail.push_str(&format!(" (with them: {d:.3e})"));
                }
            }
            CheckRow::new(name, dev < 1e-8, detail)
        }
        Err(e) => CheckRow::new(name, false, e.to_string()),
    }
}

fn max_deviation(g: &[Vec<f64>]) -> f64 {
    g.iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (v - f64::from(u8::from(i == j))).abs())
        })
        .fold(0.0, f64::max)
}

fn deviation_with_atoms(n: usize, spec: MeasureSpec) -> Option<f64> {
    let polys = psi_coeffs(n, spec.a_val()).ok()?;
    let q = OrthonormalityChecker::new(spec, DEFAULT_NODES).ok()?;
    let g: Vec<Vec<f64>> = polys
        .iter()
        .map(|p| polys.iter().map(|r| q.inner_with_point_masses(p, r)).collect())
        .collect();
    Some(max_deviation(&g))
}
