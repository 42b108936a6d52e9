//! Command-line front end. Exit codes: 0 success, 1 runtime or verification
//! failure, 2 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::codec::{default_field, find_evaluation_plan, BlockShapes, EvaluationPlan};
use crate::degree_table::{outer_sum, SchemeParams};
use crate::error::Error;
use crate::gf::{MdsMode, PrimeField};
use crate::harness::{
    exhaustive_privacy_audit, mds_audit, run_sdmm, AuditMasks, FieldChoice, DEFAULT_AUDIT_BUDGET,
    PLAN_ATTEMPTS,
};
use crate::schemes::{
    format_rate, grouped_sweep, kakar_heuristic, optimize_gasp, rate_report, PolynomialCode,
    SchemeLabel,
};

#[derive(Debug, Parser)]
#[command(
    name = "gasp",
    version,
    about = "GASP polynomial codes for secure distributed matrix multiplication"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Small,
    Big,
    Auto,
    Grouped,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the degree table of a scheme and its server count.
    Table {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = SchemeArg::Auto)]
        scheme: SchemeArg,
        /// Group count for the grouped scheme (requires k = l = t).
        #[arg(long)]
        g: Option<usize>,
    },
    /// Server counts and rates for T = 1..t-max as CSV.
    RateSweep {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t_max: usize,
        /// Output file, `-` for stdout.
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Server count and rate of the grouped scheme for G = 1..k as CSV.
    GroupedSweep {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Best partition for a fixed number of servers, next to the heuristic baseline.
    Optimize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Simulate one secure multiplication end to end.
    Demo {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        /// Prime modulus; chosen automatically when omitted.
        #[arg(long)]
        p: Option<u64>,
        /// Explicit evaluation points (comma separated); requires --p.
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value_t = SchemeArg::Auto)]
        scheme: SchemeArg,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// Columns of B.
        #[arg(long)]
        tcols: Option<usize>,
    },
    /// Check the algebraic privacy conditions, optionally by exhaustive enumeration.
    Audit {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<u64>>,
        #[arg(long)]
        exhaustive: bool,
        /// Fix every mask at zero (shows the audit catching a leak).
        #[arg(long)]
        zero_masks: bool,
        #[arg(long, default_value_t = DEFAULT_AUDIT_BUDGET)]
        budget: u128,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn params(k: usize, l: usize, t: usize) -> Result<SchemeParams, Failure> {
    SchemeParams::new(k, l, t).map_err(usage)
}

fn label(scheme: SchemeArg, g: Option<usize>, p: SchemeParams) -> Result<SchemeLabel, Failure> {
    match (scheme, g) {
        (SchemeArg::Grouped, Some(g)) => {
            if p.k != p.l || p.k != p.t {
                return Err(Failure::Usage("--scheme grouped requires k = l = t".into()));
            }
            if g == 0 || g > p.k {
                return Err(Failure::Usage(format!("--g must be in 1..={}", p.k)));
            }
            Ok(SchemeLabel::Grouped(g))
        }
        (SchemeArg::Grouped, None) => Err(Failure::Usage("--scheme grouped needs --g".into())),
        (_, Some(_)) => Err(Failure::Usage(
            "--g is only valid with --scheme grouped".into(),
        )),
        (SchemeArg::Small, None) => Ok(SchemeLabel::Small),
        (SchemeArg::Big, None) => Ok(SchemeLabel::Big),
        (SchemeArg::Auto, None) => Ok(SchemeLabel::Auto),
    }
}

/// Degree table with `beta` as header row and `alpha` as header column.
pub fn render_table(code: &PolynomialCode) -> String {
    let params = code.params();
    let table = outer_sum(code.assignment(), params).expect("code assignment is valid");
    let alpha = code.assignment().alpha();
    let beta = code.assignment().beta();
    let width = table
        .entries()
        .iter()
        .chain(alpha)
        .chain(beta)
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let line = |head: String, cells: &[u64]| {
        let mut s = format!("{head:>width$} |");
        for (j, c) in cells.iter().enumerate() {
            if j == params.l {
                s.push_str(" |");
            }
            let _ = write!(s, " {c:>width$}");
        }
        s
    };
    let mut out = String::new();
    let header = line(String::new(), beta);
    let rule: String = header
        .chars()
        .map(|c| if c == '|' { '+' } else { '-' })
        .collect();
    let _ = writeln!(out, "{header}");
    let _ = writeln!(out, "{rule}");
    for (i, a) in alpha.iter().enumerate() {
        if i == params.k {
            let _ = writeln!(out, "{rule}");
        }
        let _ = writeln!(out, "{}", line(a.to_string(), table.row(i)));
    }
    let _ = writeln!(out, "N={}", code.n_servers());
    out
}

/// CSV rows for `T = 1..=t_max`.
pub fn rate_sweep_csv(k: usize, l: usize, t_max: usize) -> crate::Result<String> {
    let mut out = String::from("T,n_small,n_big,n_gasp,rate_gasp,rate_r1,rate_r2\n");
    for t in 1..=t_max {
        let r = rate_report(SchemeParams::new(k, l, t)?);
        let r1 = r.rate_r1.map(format_rate).unwrap_or_default();
        let _ = writeln!(
            out,
            "{t},{},{},{},{},{r1},{}",
            r.n_small,
            r.n_big,
            r.n_gasp,
            format_rate(r.rate_gasp),
            format_rate(r.rate_r2)
        );
    }
    Ok(out)
}

/// CSV rows for `G = 1..=k`.
pub fn grouped_sweep_csv(k: usize) -> crate::Result<String> {
    let mut out = String::from("G,N,rate\n");
    for row in grouped_sweep(k)? {
        let _ = writeln!(out, "{},{},{}", row.g, row.n, format_rate(row.rate));
    }
    Ok(out)
}

fn write_output(path: &PathBuf, data: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        stdout
            .write_all(data.as_bytes())
            .map_err(|e| Failure::Runtime(e.to_string()))
    } else {
        std::fs::write(path, data).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
    }
}

fn resolve_plan(
    code: &PolynomialCode,
    p: Option<u64>,
    points: Option<Vec<u64>>,
    seed: u64,
) -> Result<EvaluationPlan, Failure> {
    match (p, points) {
        (None, Some(_)) => Err(Failure::Usage("--points requires --p".into())),
        (Some(p), Some(points)) => {
            let field = PrimeField::new(p).map_err(usage)?;
            Ok(EvaluationPlan::with_points(
                code,
                field,
                points,
                MdsMode::Full,
            )?)
        }
        (Some(p), None) => {
            let field = PrimeField::new(p).map_err(usage)?;
            Ok(find_evaluation_plan(
                code,
                field,
                seed,
                PLAN_ATTEMPTS,
                MdsMode::Full,
            )?)
        }
        (None, None) => Ok(find_evaluation_plan(
            code,
            default_field(code)?,
            seed,
            PLAN_ATTEMPTS,
            MdsMode::Full,
        )?),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let seed = cli.seed;
    let mut text = String::new();
    match cli.command {
        Command::Table { k, l, t, scheme, g } => {
            let p = params(k, l, t)?;
            let code = PolynomialCode::build(p, label(scheme, g, p)?)?;
            text.push_str(&render_table(&code));
        }
        Command::RateSweep {
            k,
            l,
            t_max,
            out: path,
        } => {
            if t_max == 0 {
                return Err(Failure::Usage("--t-max must be at least 1".into()));
            }
            params(k, l, 1)?;
            return write_output(&path, &rate_sweep_csv(k, l, t_max)?, out);
        }
        Command::GroupedSweep { k, out: path } => {
            if k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            return write_output(&path, &grouped_sweep_csv(k)?, out);
        }
        Command::Optimize { n, t } => {
            if t == 0 {
                return Err(Failure::Usage("--t must be at least 1".into()));
            }
            if n < 2 * t + 1 {
                return Err(Failure::Runtime(format!(
                    "infeasible: N={n} < 2T+1={}",
                    2 * t + 1
                )));
            }
            let best = optimize_gasp(n, t)?;
            let base = kakar_heuristic(n, t)?;
            let _ = writeln!(text, "N={n} T={t}");
            for (name, a) in [("gasp", best), ("kakar", base)] {
                let _ = writeln!(
                    text,
                    "{name}: K={} L={} n_used={} rate={}",
                    a.k,
                    a.l,
                    a.n_used,
                    format_rate(a.rate)
                );
            }
        }
        Command::Demo {
            k,
            l,
            t,
            p,
            points,
            scheme,
            r,
            s,
            tcols,
        } => {
            let params = params(k, l, t)?;
            let shapes =
                BlockShapes::new(r.unwrap_or(2 * k), s.unwrap_or(2), tcols.unwrap_or(2 * l));
            shapes.validate(params).map_err(usage)?;
            let label = label(scheme, None, params)?;
            if let Some(p) = p {
                PrimeField::new(p).map_err(usage)?;
            }
            let field = match (p, points) {
                (None, Some(_)) => return Err(Failure::Usage("--points requires --p".into())),
                (Some(p), Some(points)) => FieldChoice::Points(p, points),
                (Some(p), None) => FieldChoice::Prime(p),
                (None, None) => FieldChoice::Auto,
            };
            let tr = run_sdmm(params, label, shapes, field, seed)?;
            text.push_str(&tr.summary());
            text.push_str("AB verified\n");
        }
        Command::Audit {
            k,
            l,
            t,
            p,
            points,
            exhaustive,
            zero_masks,
            budget,
        } => {
            let params = params(k, l, t)?;
            let code = PolynomialCode::build(params, SchemeLabel::Auto)?;
            let plan = resolve_plan(&code, p, points, seed)?;
            let report = mds_audit(&code, &plan)?;
            let _ = writeln!(text, "N={}", code.n_servers());
            let _ = writeln!(text, "p={}", plan.field().modulus());
            let _ = writeln!(text, "gv_det_nonzero={}", report.gv_det_nonzero);
            let _ = writeln!(text, "p_mds={}", report.p_mds);
            let _ = writeln!(text, "q_mds={}", report.q_mds);
            let mut ok = report.passed();
            if exhaustive {
                let masks = if zero_masks {
                    AuditMasks::Zero
                } else {
                    AuditMasks::Uniform
                };
                let priv_report = exhaustive_privacy_audit(&code, &plan, masks, budget)?;
                let _ = writeln!(text, "exhaustive_private={}", priv_report.private);
                ok &= priv_report.private;
            }
            out.write_all(text.as_bytes())
                .map_err(|e| Failure::Runtime(e.to_string()))?;
            return if ok {
                Ok(())
            } else {
                Err(Failure::Runtime("audit failed".into()))
            };
        }
    }
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Runtime(e.to_string()))
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("gasp").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn table_of_motivating_example() {
        let (code, out, _) = call(&[
            "table", "--k", "3", "--l", "3", "--t", "2", "--scheme", "small",
        ]);
        assert_eq!(code, 0);
        assert!(out.ends_with("N=18\n"));
        assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>()
            == ["12", "|", "12", "15", "18", "|", "21", "22"]));
    }

    #[test]
    fn flag_misuse_is_usage_error() {
        assert_eq!(
            call(&["table", "--k", "3", "--l", "3", "--t", "2", "--g", "2"]).0,
            2
        );
        assert_eq!(
            call(&["table", "--k", "3", "--l", "3", "--t", "2", "--scheme", "grouped", "--g", "2"])
                .0,
            2
        );
        assert_eq!(call(&["table", "--k", "0", "--l", "3", "--t", "2"]).0, 2);
        assert_eq!(call(&["nonsense"]).0, 2);
        assert_eq!(
            call(&["rate-sweep", "--k", "3", "--l", "3", "--t-max", "0"]).0,
            2
        );
    }

    #[test]
    fn sweep_csv_shapes() {
        let csv = rate_sweep_csv(3, 3, 2).unwrap();
        assert_eq!(csv.lines().nth(2), Some("2,18,19,18,0.500,0.360,0.474"));
        let csv = rate_sweep_csv(2, 3, 1).unwrap();
        assert_eq!(csv.lines().nth(1).unwrap().split(',').nth(5), Some(""));
        assert_eq!(grouped_sweep_csv(1).unwrap(), "G,N,rate\n1,3,0.333\n");
    }

    #[test]
    fn optimize_infeasible_exits_one() {
        assert_eq!(call(&["optimize", "--n", "4", "--t", "2"]).0, 1);
    }
}
