//! The full verification suite: every registry instance, every recursion,
//! every lemma and the ω recursion closure.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::divisor::{rhs_theorem, LemmaContext, LemmaName, RecursionName};
use crate::mock::MockTable;
use crate::rational::Rational;
use crate::verify::recursion::{closure_rows, lhs_recursion_with};
use crate::verify::registry::{params_strings, registry, IdentityEntry, Params};
use crate::verify::report::{MismatchRecord, Status, SuiteReport, VerificationReport};

/// Orders above this are capped for entries that keep a formal `x`.
pub const BIVARIATE_ORDER_CAP: i64 = 120;

enum Task {
    Identity(&'static IdentityEntry, Params),
    Recursion(RecursionName),
    Lemma(LemmaName),
    Closure,
}

struct Shared {
    table: MockTable,
    lemmas: LemmaContext,
}

fn first_bad<I>(rows: I) -> Option<MismatchRecord>
where
    I: IntoIterator<Item = (i64, Rational, Rational)>,
{
    rows.into_iter().find(|(_, l, r)| l != r).map(|(n, l, r)| MismatchRecord {
        n,
        lhs: l.to_string(),
        rhs: r.to_string(),
    })
}

fn tabulated(name: String, order: i64, bad: Option<MismatchRecord>, elapsed: Duration) -> VerificationReport {
    VerificationReport {
        name,
        params: Default::default(),
        order,
        status: if bad.is_some() { Status::Fail } else { Status::Pass },
        first_mismatch: bad,
        message: None,
        elapsed,
    }
}

/// Working order for an entry under a suite order.
pub fn entry_order(entry: &IdentityEntry, order: i64) -> i64 {
    if entry.bivariate {
        order.min(BIVARIATE_ORDER_CAP)
    } else {
        order
    }
}

fn run_task(task: &Task, shared: &Shared, order: i64, n_max: i64) -> VerificationReport {
    let start = Instant::now();
    match task {
        Task::Identity(entry, params) => {
            let o = entry_order(entry, order);
            entry.verify(params, o).unwrap_or_else(|e| {
                VerificationReport::from_outcome(entry.name, params_strings(params), o, Err(e), start.elapsed())
            })
        }
        Task::Recursion(name) => {
            let rows = (1..=n_max).map(|n| (n, lhs_recursion_with(&shared.table, *name, n), rhs_theorem(*name, n)));
            tabulated(format!("recursion:{name}"), n_max, first_bad(rows), start.elapsed())
        }
        Task::Lemma(name) => {
            let rows = (1..=n_max).flat_map(|n| shared.lemmas.sides(*name, n).into_iter().map(move |(l, r)| (n, l, r)));
            tabulated(format!("lemma:{name}"), n_max, first_bad(rows), start.elapsed())
        }
        Task::Closure => {
            let rows =
                (1..=n_max).flat_map(|n| closure_rows(&shared.table, n).into_iter().map(move |(l, r)| (n, l, r)));
            tabulated("recursion:closure".into(), n_max, first_bad(rows), start.elapsed())
        }
    }
}

/// Runs everything on a pool of `workers` threads. Results are sorted by
/// name and then parameters, so the report does not depend on scheduling.
pub fn run_suite(order: i64, n_max: i64, workers: usize) -> Vec<VerificationReport> {
    let mut tasks: Vec<Task> = Vec::new();
    for e in registry() {
        tasks.extend(e.instances.iter().map(|p| Task::Identity(e, p.clone())));
    }
    if n_max >= 1 {
        tasks.extend(RecursionName::ALL.into_iter().map(Task::Recursion));
        tasks.extend(LemmaName::ALL.into_iter().map(Task::Lemma));
        tasks.push(Task::Closure);
    }
    let shared = Shared { table: MockTable::new(n_max.max(0) + 1), lemmas: LemmaContext::new(n_max.max(0) + 1) };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    let mut out: Vec<VerificationReport> =
        pool.install(|| tasks.par_iter().map(|t| run_task(t, &shared, order, n_max)).collect());
    out.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
    out
}

/// Serializable form of a suite run.
pub fn suite_report(order: i64, n_max: i64, reports: &[VerificationReport], timings: bool) -> SuiteReport {
    SuiteReport { order, n_max, results: reports.iter().map(|r| r.record(timings)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_sorted() {
        let r = run_suite(20, 10, 2);
        assert!(r.iter().all(|v| v.passed()), "{:?}", r.iter().find(|v| !v.passed()));
        assert!(r.windows(2).all(|w| (&w[0].name, &w[0].params) <= (&w[1].name, &w[1].params)));
        assert!(r.iter().any(|v| v.name == "recursion:closure"));
    }
}
