//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qmock_core::divisor::{rhs_theorem, sigma, LemmaContext, LemmaName, RecursionName};
use qmock_core::gls::{verify_gls, GlsInstance};
use qmock_core::lambert::{bilateral_sum, bilateral_sum_extended, BilateralSpec};
use qmock_core::mock::{appell_form, eulerian_series, MockName, MockTable};
use qmock_core::verify::recursion::{closure_rows, lhs_recursion_with};
use qmock_core::verify::{find, run_suite, Params};
use qmock_core::{rat, Error, Monomial, Rational};

type Outcome = Result<String, String>;

fn recursions(table: &MockTable, names: &[RecursionName], upto: i64) -> Outcome {
    for &name in names {
        for n in 1..=upto {
            let (l, r) = (lhs_recursion_with(table, name, n), rhs_theorem(name, n));
            if l != r {
                return Err(format!("{name} at n = {n}: {l} vs {r}"));
            }
        }
    }
    Ok(format!("{} recursion(s), 1 <= n <= {upto}", names.len()))
}

fn criterion_1(table: &MockTable) -> Outcome {
    let anchor = lhs_recursion_with(table, RecursionName::T1id, 1);
    if anchor != rat(-2, 3) || rhs_theorem(RecursionName::T1id, 1) != rat(-2, 3) {
        return Err(format!("n = 1 gives {anchor}"));
    }
    recursions(table, &[RecursionName::T1id], 300).map(|s| format!("t1id, {s}, n = 1 is -2/3"))
}

fn criterion_2(table: &MockTable) -> Outcome {
    use RecursionName::*;
    let s = recursions(table, &[T9, T919, T9201, T9202, T920c, T920d], 300)?;
    for n in 1..=300 {
        for (a, b) in closure_rows(table, n) {
            if a != b {
                return Err(format!("sum/difference closure at n = {n}"));
            }
        }
    }
    Ok(format!("{s}, closure of the ω recursions"))
}

fn criterion_3(table: &MockTable) -> Outcome {
    let s = recursions(table, &[RecursionName::CorB], 200)?;
    let id = find("r-identity").and_then(|e| e.identity(&Params::new())).map_err(|e| e.to_string())?;
    let lhs = id.lhs.eval(201).map_err(|e| e.to_string())?.num;
    let rhs = id.rhs.eval(201).map_err(|e| e.to_string())?.num;
    for n in 1..=200 {
        let l = lhs.rational_at(n).unwrap();
        let r = rhs.rational_at(n).unwrap();
        if l != lhs_recursion_with(table, RecursionName::CorB, n) || r != rhs_theorem(RecursionName::CorB, n) {
            return Err(format!("coefficient extraction at n = {n}"));
        }
    }
    Ok(format!("corB {s}; both sides of the B Lambert identity match coefficientwise"))
}

fn criterion_4(workers: usize) -> Outcome {
    let start = Instant::now();
    let reports = run_suite(200, 0, workers);
    let elapsed = start.elapsed();
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(format!(
            "{} {:?}: {} {:?} {:?}",
            bad.name, bad.params, bad.status, bad.first_mismatch, bad.message
        ));
    }
    let names: BTreeSet<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    let required = [
        "lat2",
        "lat3",
        "c6",
        "c5",
        "idt5",
        "idt9",
        "t919a",
        "pt920a",
        "equiv",
        "l31",
        "waston",
        "ftonu",
        "r-identity",
        "qtp1",
        "qtp2",
    ];
    if let Some(missing) = required.iter().find(|n| !names.contains(**n)) {
        return Err(format!("registry lacks {missing}"));
    }
    let idt5 = reports.iter().filter(|r| r.name == "idt5").count();
    if names.len() < 40 || idt5 != 5 {
        return Err(format!("{} entries, {idt5} idt5 instances", names.len()));
    }
    if elapsed > Duration::from_secs(120) {
        return Err(format!("took {:.1} s", elapsed.as_secs_f64()));
    }
    Ok(format!(
        "{} entries, {} instances at order 200 (formal-x entries at 120) in {:.1} s",
        names.len(),
        reports.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_5() -> Outcome {
    for name in [MockName::F, MockName::Omega, MockName::B] {
        let a = appell_form(name, 300).map_err(|e| e.to_string())?;
        if let Some(m) = a.first_mismatch(&eulerian_series(name, 300), 300) {
            return Err(format!("{name} differs at q^{}", m.n));
        }
    }
    Ok("Eulerian and Appell-Lerch forms of f, ω, B agree below q^300".into())
}

fn random_spec(rng: &mut ChaCha8Rng) -> BilateralSpec {
    let bases = [rat(-1, 1), rat(2, 1), rat(-1, 2), rat(3, 1), rat(1, 1)];
    let base = Monomial::new(bases.choose(rng).unwrap().clone(), rng.gen_range(0..2), rng.gen_range(-3..4));
    let mut s = BilateralSpec::quad(rng.gen_range(1..4), rng.gen_range(-4..5), rng.gen_range(-3..4))
        .weight(rng.gen_range(-2..3), rng.gen_range(-2..3))
        .denom(base, rng.gen_range(1..4), rng.gen_range(1..3));
    if rng.gen() {
        s = s.alternating();
    }
    s
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let eis = BilateralSpec::quad(0, 1, 0).denom(Monomial::one(), 1, 2).from(1);
    let s = bilateral_sum(&eis, 501).map_err(|e| e.to_string())?.num;
    for n in 1..=500 {
        if s.rational_at(n).unwrap() != Rational::from(sigma(&Rational::from(n)) as i64) {
            return Err(format!("Eisenstein coefficient at n = {n}"));
        }
    }
    let ctx = LemmaContext::new(201);
    for name in LemmaName::ALL {
        if let Some(n) = (1..=200).find(|&n| !ctx.check(name, n)) {
            return Err(format!("lemma {name} at n = {n}"));
        }
    }
    let mut specs = 0;
    while specs < 50 {
        let spec = random_spec(rng);
        let order = rng.gen_range(20..60);
        let base = match bilateral_sum(&spec, order) {
            Err(Error::ExactPole(_)) => continue,
            other => other.map_err(|e| e.to_string())?,
        };
        let wide = bilateral_sum_extended(&spec, order, 5).map_err(|e| e.to_string())?;
        if base.poles != wide.poles || base.num.first_mismatch(&wide.num, order).is_some() {
            return Err(format!("cutoff changes {spec:?}"));
        }
        specs += 1;
    }
    Ok(format!("σ(n) to 500, {} lemmas to 200, cutoff K vs K+5 on {specs} specs", LemmaName::ALL.len()))
}

fn random_gls(rng: &mut ChaCha8Rng) -> GlsInstance {
    let shapes = [(0usize, 2usize), (0, 3), (1, 2), (1, 3), (2, 3)];
    loop {
        let &(r, s) = shapes.choose(rng).unwrap();
        let xslot = if rng.gen_bool(0.5) { Some(rng.gen_range(0..r + s)) } else { None };
        let params: Vec<Monomial> = (0..r + s)
            .map(|i| {
                let c = *[-2i64, -1, 1, 2].choose(rng).unwrap();
                let m = *[-4i64, -3, -2, -1, 1, 2, 3, 4].choose(rng).unwrap();
                Monomial::new(Rational::from(c), (xslot == Some(i)) as i64, m)
            })
            .collect();
        let b = &params[r..];
        let unit = |p: &Monomial| p.xdeg == 0 && p.coeff == Rational::one();
        let clash =
            b.iter().enumerate().any(|(i, p)| b[i + 1..].iter().any(|q| p.xdeg == q.xdeg && p.coeff == q.coeff));
        if !b.iter().any(unit) && !clash {
            return GlsInstance::new(params[..r].to_vec(), b.to_vec());
        }
    }
}

fn criterion_7(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..100 {
        let inst = random_gls(rng);
        let rep = verify_gls(&inst, 60);
        if !rep.passed() {
            return Err(format!("instance {i} {:?}: {} {:?}", rep.params, rep.status, rep.first_mismatch));
        }
    }
    Ok("100 random instances, (r,s) <= (2,3), order 60".into())
}

fn criterion_8() -> Outcome {
    let run = |w: &str| {
        Command::new(env!("CARGO_BIN_EXE_qmock"))
            .args(["verify", "--all", "--order", "100", "--workers", w])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run("1")?, run("8")?);
    if a.status.code() != Some(0) || b.status.code() != Some(0) {
        return Err(format!("exit codes {:?} and {:?}", a.status.code(), b.status.code()));
    }
    if a.stdout != b.stdout {
        return Err("reports differ between 1 and 8 workers".into());
    }
    Ok(format!("--workers 1 and 8 give identical {}-byte reports", a.stdout.len()))
}

fn main() -> ExitCode {
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let table = MockTable::new(301);
    let criteria: Vec<(u32, Box<dyn FnOnce() -> Outcome + '_>)> = vec![
        (1, Box::new(|| criterion_1(&table))),
        (2, Box::new(|| criterion_2(&table))),
        (3, Box::new(|| criterion_3(&table))),
        (4, Box::new(|| criterion_4(workers))),
        (5, Box::new(criterion_5)),
        (6, Box::new(|| criterion_6(&mut rng))),
        (
            7,
            Box::new(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(0x915);
                criterion_7(&mut rng)
            }),
        ),
        (8, Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (k, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {k}: PASS  {msg}  [{secs:.1} s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL  {msg}  [{secs:.1} s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
