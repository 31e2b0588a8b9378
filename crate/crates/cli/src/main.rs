use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmock_core::divisor::RecursionName;
use qmock_core::mock::{MockName, MockTable};
use qmock_core::verify::recursion::recursion_rows;
use qmock_core::verify::registry::params_strings;
use qmock_core::verify::suite::entry_order;
use qmock_core::verify::{
    find, parse_params, registry, run_suite, suite_report, verify_identity, verify_identity_unchecked, Params, Status,
    SuiteReport,
};
use qmock_core::Error;

#[derive(Parser)]
#[command(name = "qmock", version, about = "Exact q-series verification of mock theta identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// List registered identities and their parameter instances.
    List,
    /// Verify one identity or the whole suite.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        identity: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        /// Upper n for recursions and lemmas under --all; defaults to the order.
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        n_max: Option<i64>,
        #[arg(long, requires = "identity")]
        params: Option<String>,
        #[arg(long, requires = "identity")]
        unsafe_params: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Include elapsedMs per result.
        #[arg(long)]
        timings: bool,
    },
    /// Print coefficients of a mock theta function.
    Coeffs {
        #[arg(long)]
        function: MockName,
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        upto: i64,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
    /// Check a divisor-sum recursion for 1 ≤ n ≤ upto.
    Recursion {
        #[arg(long)]
        theorem: RecursionName,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        upto: i64,
        #[arg(long, value_enum, default_value_t = TableFormat::Table)]
        format: TableFormat,
    },
    /// Time every registered instance at one order.
    Bench {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
    },
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn exit_for(report: &SuiteReport) -> u8 {
    if report.any_failed() {
        1
    } else if report.any_error() {
        2
    } else {
        0
    }
}

fn params_text(p: &std::collections::BTreeMap<String, String>) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

fn suite_table(report: &SuiteReport) -> String {
    let width = report.results.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let mut out = String::new();
    let _ = writeln!(out, "order {}  nMax {}", report.order, report.n_max);
    for r in &report.results {
        let mut line = format!("{:<width$}  {:<12}  {}", r.name, params_text(&r.params), r.status);
        if let Some(m) = &r.first_mismatch {
            let _ = write!(line, "  n={} lhs={} rhs={}", m.n, m.lhs, m.rhs);
        }
        if let Some(msg) = &r.message {
            let _ = write!(line, "  {msg}");
        }
        if let Some(ms) = r.elapsed_ms {
            let _ = write!(line, "  {ms}ms");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let pass = report.results.iter().filter(|r| r.status == Status::Pass).count();
    let _ = writeln!(out, "{pass}/{} passed", report.results.len());
    out
}

fn list() -> String {
    let mut out = String::new();
    for e in registry() {
        let inst = if e.keys.is_empty() {
            String::new()
        } else {
            let each: Vec<String> =
                e.instances.iter().map(|p| params_text(&params_strings(p).into_iter().collect())).collect();
            format!("  [{}]", each.join(" | "))
        };
        let _ = writeln!(out, "{:<18} {}{}", e.name, e.summary, inst);
    }
    out
}

fn verify_one(
    name: &str,
    params: Option<&str>,
    unsafe_params: bool,
    order: i64,
    timings: bool,
) -> Result<SuiteReport, Failure> {
    let params = match params {
        Some(s) => parse_params(s)?,
        None => Params::new(),
    };
    find(name)?;
    let report = if unsafe_params {
        verify_identity_unchecked(name, &params, order)?
    } else {
        verify_identity(name, &params, order)?
    };
    Ok(SuiteReport { order, n_max: 0, results: vec![report.record(timings)] })
}

fn rows_output(header: &[&str], rows: Vec<Vec<String>>, format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            for r in rows {
                let _ = writeln!(out, "{}", r.join(","));
            }
        }
        TableFormat::Json => {
            let v: Vec<serde_json::Value> = rows
                .into_iter()
                .map(|r| {
                    let obj: serde_json::Map<String, serde_json::Value> =
                        header.iter().zip(r).map(|(h, c)| (h.to_string(), json!(c))).collect();
                    serde_json::Value::Object(obj)
                })
                .collect();
            out = serde_json::to_string_pretty(&v).expect("rows serialize");
            out.push('\n');
        }
        TableFormat::Table => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
                .collect();
            let fmt_row = |cells: Vec<&str>| -> String {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
            };
            let _ = writeln!(out, "{}", fmt_row(header.to_vec()));
            for r in &rows {
                let _ = writeln!(out, "{}", fmt_row(r.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.command {
        Command::List => Ok((list(), 0)),
        Command::Verify { identity, all, order, n_max, params, unsafe_params, workers, format, timings } => {
            let report = if all {
                let n_max = n_max.unwrap_or(order);
                let reports = run_suite(order, n_max, workers as usize);
                suite_report(order, n_max, &reports, timings)
            } else {
                let name = identity.expect("clap requires --identity without --all");
                verify_one(&name, params.as_deref(), unsafe_params, order, timings)?
            };
            let text = match format {
                ReportFormat::Json => report.to_json() + "\n",
                ReportFormat::Table => suite_table(&report),
            };
            Ok((text, exit_for(&report)))
        }
        Command::Coeffs { function, upto, format } => {
            let table = MockTable::new(upto + 1);
            let rows = (0..=upto).map(|n| vec![n.to_string(), table.c(function, &n.into()).to_string()]).collect();
            Ok((rows_output(&["n", "c"], rows, format), 0))
        }
        Command::Recursion { theorem, upto, format } => {
            let table = MockTable::new(upto + 1);
            let rows = recursion_rows(&table, theorem, upto);
            let ok = rows.iter().all(|r| r.holds());
            let cells = rows
                .into_iter()
                .map(|r| {
                    let holds = if r.holds() { "ok" } else { "FAIL" };
                    vec![r.n.to_string(), r.lhs.to_string(), r.rhs.to_string(), holds.to_string()]
                })
                .collect();
            Ok((rows_output(&["n", "lhs", "rhs", "status"], cells, format), if ok { 0 } else { 1 }))
        }
        Command::Bench { order } => {
            let mut rows = Vec::new();
            let mut code = 0;
            let start = Instant::now();
            for e in registry() {
                let o = entry_order(e, order);
                for p in &e.instances {
                    let t = Instant::now();
                    let r = e.verify(p, o)?;
                    if !r.passed() {
                        code = 1;
                    }
                    let ps = params_text(&r.params);
                    rows.push(vec![
                        e.name.to_string(),
                        ps,
                        o.to_string(),
                        r.status.to_string(),
                        t.elapsed().as_millis().to_string(),
                    ]);
                }
            }
            let mut out = rows_output(&["name", "params", "order", "status", "ms"], rows, TableFormat::Table);
            let _ = writeln!(out, "total {}ms", start.elapsed().as_millis());
            Ok((out, code))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let head: Vec<&str> = text.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
            eprintln!("qmock: {}", head.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Failure(msg)) => {
            eprintln!("qmock: {}", msg.lines().next().unwrap_or(""));
            ExitCode::from(2)
        }
    }
}
