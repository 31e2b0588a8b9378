//! The registry of named identities.
//!
//! Each entry builds both sides as symbolic expressions for a parameter
//! instance, together with the declared clearing multiplier: the product of
//! the `q⁰` pole factors in the formal variable `x` that both sides carry.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use crate::divisor::r_tilde;
use crate::error::{Error, Result};
use crate::gls::{build_gls_lhs, build_gls_rhs, GlsInstance};
use crate::lambert::BilateralSpec;
use crate::laurent::{LaurentPoly, Monomial};
use crate::mock::{eulerian_series, MockName};
use crate::poles::{PoleFactor, PoleSet};
use crate::products::Quotient;
use crate::rational::{rat, Rational};
use crate::series::QSeries;
use crate::verify::compare::build_cleared;
use crate::verify::expr::{lin, mul, Expr};
use crate::verify::report::VerificationReport;

/// Named parameter values of one instance.
pub type Params = BTreeMap<String, Rational>;

/// Both sides of an identity and the multiplier that clears their poles.
#[derive(Debug, Clone)]
pub struct Identity {
    pub lhs: Expr,
    pub rhs: Expr,
    pub clearing: PoleSet,
}

pub struct IdentityEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parameter names, in display order.
    pub keys: &'static [&'static str],
    pub instances: Vec<Params>,
    /// Whether the sides keep a formal variable `x`.
    pub bivariate: bool,
    build: fn(&Params) -> Result<Identity>,
}

impl IdentityEntry {
    /// Builds the sides for a parameter instance.
    pub fn identity(&self, params: &Params) -> Result<Identity> {
        self.check_keys(params)?;
        (self.build)(params)
    }

    fn check_keys(&self, params: &Params) -> Result<()> {
        let given: Vec<&str> = params.keys().map(String::as_str).collect();
        let mut want: Vec<&str> = self.keys.to_vec();
        want.sort_unstable();
        if given != want {
            return Err(Error::InvalidParams(format!(
                "{} takes parameters [{}], got [{}]",
                self.name,
                self.keys.join(", "),
                given.join(", ")
            )));
        }
        Ok(())
    }

    /// Accepts only registered instances.
    pub fn validate(&self, params: &Params) -> Result<()> {
        self.check_keys(params)?;
        if self.instances.iter().any(|p| p == params) {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "{} is not a registered instance of {} (use --unsafe-params to override)",
                describe(params),
                self.name
            )))
        }
    }

    /// Evaluates, clears and compares both sides below `order`.
    pub fn verify(&self, params: &Params, order: i64) -> Result<VerificationReport> {
        let id = self.identity(params)?;
        let start = Instant::now();
        let outcome = build_cleared(|w| Ok((id.lhs.eval(w)?, id.rhs.eval(w)?)), order, Some(&id.clearing))
            .map(|c| c.lhs.first_mismatch(&c.rhs, order));
        let outcome = match outcome {
            Err(e @ (Error::Degenerate(_) | Error::InvalidParams(_) | Error::ExactPole(_))) => return Err(e),
            other => other,
        };
        Ok(VerificationReport::from_outcome(self.name, params_strings(params), order, outcome, start.elapsed()))
    }
}

fn describe(p: &Params) -> String {
    if p.is_empty() {
        return "no parameters".into();
    }
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

pub fn params_strings(p: &Params) -> Vec<(String, String)> {
    p.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

/// Parses `k=v,k=v` with rational values.
pub fn parse_params(s: &str) -> Result<Params> {
    let mut out = Params::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) =
            part.split_once('=').ok_or_else(|| Error::InvalidParams(format!("expected key=value, got {part:?}")))?;
        let v: Rational =
            v.trim().parse().map_err(|_| Error::InvalidParams(format!("bad value for {}: {v:?}", k.trim())))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(Error::InvalidParams(format!("repeated parameter {}", k.trim())));
        }
    }
    Ok(out)
}

fn int_param(p: &Params, key: &str) -> Result<i64> {
    p.get(key).and_then(Rational::to_i64).ok_or_else(|| Error::InvalidParams(format!("{key} must be an integer")))
}

fn rat_param(p: &Params, key: &str) -> Result<Rational> {
    p.get(key).cloned().ok_or_else(|| Error::InvalidParams(format!("missing {key}")))
}

fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), Rational::from(*v))).collect()
}

// ----- building blocks -----

/// `c·q^e`.
fn m(c: i64, e: i64) -> Monomial {
    Monomial::new(rat(c, 1), 0, e)
}

/// `c·x^d·q^e`.
fn mx(c: i64, d: i64, e: i64) -> Monomial {
    Monomial::new(rat(c, 1), d, e)
}

fn x(d: i64) -> Expr {
    Expr::Mono(mx(1, d, 0))
}

fn q(e: i64) -> Expr {
    Expr::Mono(m(1, e))
}

/// `Σ_{k≥0} q^{sk+off} / (1 - c·q^{sk+off})`.
fn tail(c: i64, off: i64, s: i64) -> BilateralSpec {
    BilateralSpec::quad(0, s, off).denom(m(c, off), s, 1).from(0)
}

/// `Π (c_i q^{e_i}; q^s)^{k_i}` and brackets, with a leading monomial.
struct P(Quotient);

impl P {
    fn new() -> Self {
        P(Quotient::new())
    }

    fn times(self, m: Monomial) -> Self {
        P(self.0.times(&m))
    }

    fn poch(self, a: Monomial, s: i64, k: i32) -> Self {
        P(self.0.poch(&a, s, k))
    }

    fn br(self, a: Monomial, s: i64, k: i32) -> Self {
        P(self.0.bracket(&a, s, k))
    }

    /// `(q^s; q^s)^k`.
    fn qs(self, s: i64, k: i32) -> Self {
        self.poch(m(1, s), s, k)
    }
}

impl From<P> for Expr {
    fn from(p: P) -> Self {
        Expr::Prod(p.0)
    }
}

fn mock(name: MockName) -> Expr {
    Expr::plain(move |w| eulerian_series(name, w.max(1)))
}

fn omega_neg_q() -> Expr {
    Expr::plain(|w| eulerian_series(MockName::Omega, w.max(1)).q_negate())
}

fn pole_set(factors: &[(i64, i64, u32)]) -> PoleSet {
    let mut s = PoleSet::new();
    for &(c, d, k) in factors {
        s.insert(PoleFactor { d, c: rat(c, 1) }, k);
    }
    s
}

fn plain(lhs: impl Into<Expr>, rhs: impl Into<Expr>) -> Result<Identity> {
    Ok(Identity { lhs: lhs.into(), rhs: rhs.into(), clearing: PoleSet::new() })
}

fn cleared(lhs: impl Into<Expr>, rhs: impl Into<Expr>, clearing: &[(i64, i64, u32)]) -> Result<Identity> {
    Ok(Identity { lhs: lhs.into(), rhs: rhs.into(), clearing: pole_set(clearing) })
}

// (q)^3/(-q)^2, (q^2;q^2)^3/(-q;q^2)^2 and friends
fn euler_cubed() -> P {
    P::new().qs(1, 3).poch(m(-1, 1), 1, -2)
}

fn even_cubed() -> P {
    P::new().qs(2, 3).poch(m(-1, 1), 2, -2)
}

/// `(q²;q²)²_∞ / (c q; q²)²_∞`.
fn theta_ratio(c: i64, e: i64) -> P {
    P::new().qs(2, 2).poch(m(c, e), 2, -2)
}

// ----- entries -----

fn gls_case(k: i64) -> Result<GlsInstance> {
    let xm = mx(1, 1, 0);
    let inst = match k {
        1 => GlsInstance::new(vec![], vec![xm]),
        2 => GlsInstance::new(vec![m(2, 0)], vec![m(-1, 0), m(3, 1)]),
        3 => GlsInstance::new(vec![xm], vec![m(-1, 1), m(3, 0)]),
        4 => GlsInstance::new(vec![m(-1, -2)], vec![m(-1, -3), m(-1, -1)]).with_step(6),
        5 => GlsInstance::new(vec![m(2, 0), m(-1, 1)], vec![m(3, 0), Monomial::new(rat(-1, 2), 0, 1), m(5, 2)]),
        6 => GlsInstance::new(vec![xm, m(3, 1)], vec![m(-1, 0), m(2, 1), Monomial::new(rat(-1, 5), 0, 1)]),
        _ => return Err(Error::InvalidParams(format!("gls case {k} does not exist"))),
    };
    Ok(inst)
}

fn gls_entry(p: &Params) -> Result<Identity> {
    let k = int_param(p, "case")?;
    let inst = gls_case(k)?;
    let (a, b) = (inst.clone(), inst);
    let clearing: &[(i64, i64, u32)] = match k {
        1 => &[(1, 1, 1)],
        _ => &[],
    };
    cleared(Expr::series(move |w| build_gls_lhs(&a, w)), Expr::series(move |w| build_gls_rhs(&b, w)), clearing)
}

fn lat2(_: &Params) -> Result<Identity> {
    let lhs = mul([
        Expr::from(P::new().qs(1, 2).poch(m(-1, 1), 1, -2)),
        BilateralSpec::half(3, 1, 0).alternating().denom(mx(1, 1, 0), 1, 1).into(),
    ]);
    let rhs = lin([
        (4, mul([x(1), P::new().qs(1, 2).qs(2, 2).br(mx(-1, 1, 0), 1, -1).br(mx(1, 2, 0), 2, -1).into()])),
        (2, BilateralSpec::half(3, 1, 0).denom(mx(-1, 1, 0), 1, 2).into()),
        (1, BilateralSpec::half(3, 1, 0).weight(-1, 6).denom(mx(-1, 1, 0), 1, 1).into()),
    ]);
    cleared(lhs, rhs, &[(1, 1, 1), (-1, 1, 2)])
}

fn lat3(_: &Params) -> Result<Identity> {
    let lhs = mul([
        Expr::from(theta_ratio(-1, 1).times(m(1, 1))),
        BilateralSpec::quad(3, 3, 0).alternating().denom(mx(1, 1, 0), 2, 1).into(),
    ]);
    let rhs = lin([
        (
            1,
            Expr::from(P::new().times(mx(1, -1, 1)).qs(2, 4).poch(m(-1, 1), 2, 2).br(mx(1, 1, 0), 2, -1).br(
                mx(-1, 1, 1),
                2,
                -2,
            )),
        ),
        (1, BilateralSpec::quad(3, 0, 0).denom(mx(-1, 1, -1), 2, 2).into()),
        (1, BilateralSpec::quad(3, 0, 0).weight(-1, 3).denom(mx(-1, 1, -1), 2, 1).into()),
    ]);
    cleared(lhs, rhs, &[(1, 1, 1)])
}

fn shift_param(p: &Params) -> Result<i64> {
    let v = int_param(p, "m")?;
    if v < 0 {
        return Err(Error::InvalidParams("m must be nonnegative".into()));
    }
    Ok(v)
}

fn at4(p: &Params) -> Result<Identity> {
    let s = shift_param(p)?;
    let lhs = P::new()
        .times(mx(1, 1, 0))
        .qs(1, 2)
        .br(mx(-1, 1, 0), 1, 1)
        .br(mx(1, -2, 0), 1, 1)
        .br(m(-1, s), 1, -1)
        .br(mx(1, -1, s + 1), 1, -1)
        .br(mx(1, 1, s), 1, -1);
    let rhs = lin([
        (
            1,
            mul([
                Expr::from(P::new().br(mx(1, -2, 0), 1, 1).br(mx(-1, -1, 0), 1, -1)),
                BilateralSpec::half(3, 1, 0).alternating().denom(m(-1, s), 1, 1).into(),
            ]),
        ),
        (1, mul([x(-1), BilateralSpec::half(3, 1, 0).ratio(mx(1, -3, 0)).denom(mx(1, -1, s), 1, 1).into()])),
        (-1, BilateralSpec::half(3, 1, 0).ratio(mx(1, 3, 0)).denom(mx(1, 1, s), 1, 1).into()),
    ]);
    cleared(lhs, rhs, &[(1, 1, 2), (-1, 1, 1)])
}

fn at3(p: &Params) -> Result<Identity> {
    let s = shift_param(p)?;
    let lhs =
        P::new().qs(1, 2).br(mx(-1, 1, 0), 1, 1).br(mx(1, -2, 0), 1, 1).br(m(-1, s), 1, -1).br(mx(1, -1, s), 1, -1).br(
            mx(1, 1, s),
            1,
            -1,
        );
    let rhs = lin([
        (
            1,
            mul([
                Expr::from(P::new().br(mx(1, -2, 0), 1, 1).br(mx(-1, -1, 0), 1, -1)),
                BilateralSpec::half(3, 3, 0).alternating().denom(m(-1, s), 1, 1).into(),
            ]),
        ),
        (-1, mul([x(-2), BilateralSpec::half(3, 3, 0).ratio(mx(1, -3, 0)).denom(mx(1, -1, s), 1, 1).into()])),
        (1, mul([x(1), BilateralSpec::half(3, 3, 0).ratio(mx(1, 3, 0)).denom(mx(1, 1, s), 1, 1).into()])),
    ]);
    cleared(lhs, rhs, &[(1, 1, 2), (-1, 1, 1)])
}

fn at6(p: &Params) -> Result<Identity> {
    let s = shift_param(p)?;
    let lhs = P::new()
        .qs(2, 2)
        .br(mx(-1, -1, -1), 2, 1)
        .br(mx(1, 2, 2), 2, 1)
        .br(m(-1, s), 2, -1)
        .br(mx(1, 1, s + 1), 2, -1)
        .br(mx(1, -1, s - 1), 2, -1);
    let rhs = lin([
        (
            1,
            mul([
                Expr::from(P::new().br(mx(1, 2, 2), 2, 1).br(mx(-1, 1, 1), 2, -1)),
                BilateralSpec::quad(3, 3, 0).alternating().denom(m(-1, s), 2, 1).into(),
            ]),
        ),
        (-1, mul([x(-1), BilateralSpec::quad(3, 0, -1).ratio(mx(1, 3, 0)).denom(mx(1, 1, s - 1), 2, 1).into()])),
        (1, mul([x(-1), BilateralSpec::quad(3, 0, -1).ratio(mx(1, -3, 0)).denom(mx(1, -1, s - 1), 2, 1).into()])),
    ]);
    let clearing: &[(i64, i64, u32)] = if s == 1 { &[(1, 1, 2)] } else { &[] };
    cleared(lhs, rhs, clearing)
}

fn at8(_: &Params) -> Result<Identity> {
    let lhs = P::new().times(m(4, 0)).qs(1, 4).poch(m(-1, 1), 1, 2).br(mx(1, 1, 0), 1, -1).br(mx(-1, 1, 1), 1, -1).br(
        mx(-1, 1, 0),
        1,
        -1,
    );
    let e = || BilateralSpec::half(3, 1, 0);
    let rhs = lin([
        (
            1,
            mul([
                Expr::from(P::new().qs(1, 2).poch(m(-1, 1), 1, -2)),
                e().alternating().denom(mx(1, 1, 0), 1, 1).into(),
            ]),
        ),
        (-1, e().denom(mx(-1, 1, 0), 1, 2).into()),
        (-1, e().weight(0, 3).denom(mx(-1, 1, 0), 1, 1).into()),
        (-1, e().denom(mx(-1, 1, 0), 1, 2).into()),
        (-1, e().weight(-1, 3).denom(mx(-1, 1, 0), 1, 1).into()),
    ]);
    cleared(lhs, rhs, &[(1, 1, 1), (-1, 1, 2)])
}

fn at7(_: &Params) -> Result<Identity> {
    let lhs = P::new().times(m(2, 0)).qs(2, 4).br(m(-1, -1), 2, 1).br(mx(1, 1, 0), 2, -1).br(mx(-1, 1, 1), 2, -1).br(
        mx(-1, 1, -1),
        2,
        -1,
    );
    let e = || BilateralSpec::quad(3, 0, -1);
    let rhs = lin([
        (
            2,
            mul([
                Expr::from(P::new().qs(2, 2).br(m(-1, 1), 2, -1)),
                BilateralSpec::quad(3, 3, 0).alternating().denom(mx(1, 1, 0), 2, 1).into(),
            ]),
        ),
        (-1, e().denom(mx(-1, 1, -1), 2, 2).into()),
        (-1, e().weight(-2, 3).denom(mx(-1, 1, -1), 2, 1).into()),
        (-1, e().denom(mx(-1, 1, -1), 2, 2).into()),
        (-1, e().weight(0, 3).denom(mx(-1, 1, -1), 2, 1).into()),
    ]);
    cleared(lhs, rhs, &[(1, 1, 1)])
}

fn c6(_: &Params) -> Result<Identity> {
    let lhs = mul([euler_cubed().into(), mock(MockName::F)]);
    let rhs = lin([
        (1, q(0)),
        (-4, BilateralSpec::quad(0, 1, 0).denom(m(1, 0), 1, 2).from(1).into()),
        (-16, BilateralSpec::quad(0, 2, 0).denom(m(1, 0), 2, 2).from(1).into()),
        (4, BilateralSpec::half(3, 1, 0).denom(m(1, 0), 1, 2).except_zero().into()),
        (2, BilateralSpec::half(3, 1, 0).weight(-1, 6).denom(m(1, 0), 1, 1).except_zero().into()),
    ]);
    plain(lhs, rhs)
}

fn c5(_: &Params) -> Result<Identity> {
    let lhs = mul([even_cubed().times(m(1, 1)).into(), omega_neg_q()]);
    let rhs = lin([
        (1, BilateralSpec::quad(0, 2, -1).denom(m(-1, -1), 2, 2).from(1).into()),
        (-2, BilateralSpec::quad(0, 2, 0).denom(m(1, 0), 2, 2).from(1).into()),
        (1, BilateralSpec::quad(3, 0, 0).denom(m(1, 0), 2, 2).except_zero().into()),
        (1, BilateralSpec::quad(3, 0, 0).weight(-1, 3).denom(m(1, 0), 2, 1).except_zero().into()),
    ]);
    plain(lhs, rhs)
}

fn mockf(_: &Params) -> Result<Identity> {
    let rhs = mul([
        Expr::from(P::new().times(m(2, 0)).qs(1, -1)),
        BilateralSpec::half(3, 1, 0).alternating().denom(m(-1, 0), 1, 1).into(),
    ]);
    plain(mock(MockName::F), rhs)
}

fn om00(_: &Params) -> Result<Identity> {
    let rhs =
        mul([Expr::from(P::new().qs(2, -1)), BilateralSpec::quad(3, 3, 0).alternating().denom(m(1, 1), 2, 1).into()]);
    plain(mock(MockName::Omega), rhs)
}

/// `Σ_{n≥0} q^{a n² + b n} / ((x q^c; q^s)_{n+k} (q^c/x; q^s)_{n+k})`.
fn bivariate_eulerian(order: i64, a: i64, b: i64, c: i64, s: i64, k: i64) -> QSeries {
    let mut acc = QSeries::zero(0, order);
    let mut r = QSeries::one(order);
    let mut n = 0;
    while a * n * n + b * n < order {
        let upto = n + k;
        if upto >= 1 {
            let e = c + s * (upto - 1);
            for d in [1, -1] {
                r = r.div_binomial(&mx(1, d, e)).expect("positive q-exponent");
            }
        }
        acc = acc.add(&r.mul_monomial(&m(1, a * n * n + b * n)).truncate(order));
        n += 1;
    }
    acc
}

fn fine_omega(_: &Params) -> Result<Identity> {
    let lhs = Expr::plain(|w| bivariate_eulerian(w.max(1), 2, 2, 1, 2, 1));
    let rhs = mul([
        Expr::from(P::new().qs(2, -1)),
        BilateralSpec::quad(3, 3, 0).alternating().denom(mx(1, 1, 1), 2, 1).into(),
    ]);
    plain(lhs, rhs)
}

fn fine_f(_: &Params) -> Result<Identity> {
    let lhs = Expr::plain(|w| bivariate_eulerian(w.max(1), 1, 0, 1, 1, 0));
    let rhs = mul([
        Expr::from(P::new().qs(1, -1)),
        BilateralSpec::half(3, 1, 0)
            .alternating()
            .denom(mx(1, 1, 0), 1, 1)
            .prefactor(LaurentPoly::binomial(&rat(1, 1), 1))
            .into(),
    ]);
    plain(lhs, rhs)
}

/// The `(l, j)` family: the product, the three tails and the sums.
struct Family {
    l: i64,
    j: i64,
}

impl Family {
    fn from(p: &Params) -> Result<Family> {
        let l = int_param(p, "l")?;
        let j = int_param(p, "j")?;
        if l < 1 {
            return Err(Error::InvalidParams("l must be positive".into()));
        }
        Ok(Family { l, j })
    }

    fn s(&self) -> i64 {
        6 * self.l
    }

    fn product(&self) -> P {
        let (l, j, s) = (self.l, self.j, self.s());
        P::new().br(m(-1, l + j), s, 1).br(m(1, 2 * l), s, 1).qs(s, 2).br(m(-1, j), s, -1).br(m(1, l), s, -1).br(
            m(-1, 2 * l + j),
            s,
            -1,
        )
    }

    fn u(&self, c: i64, off: i64) -> Expr {
        tail(c, off, self.s()).into()
    }

    fn a(&self) -> Expr {
        lin([(1, self.u(1, self.l)), (-1, self.u(1, 5 * self.l))])
    }

    fn b(&self) -> Expr {
        lin([(1, self.u(-1, self.l + self.j)), (-1, self.u(-1, 5 * self.l - self.j))])
    }

    fn c(&self) -> Expr {
        lin([(1, self.u(-1, 3 * self.l - self.j)), (-1, self.u(-1, 3 * self.l + self.j))])
    }

    /// `Σ (α + βn) (-1)^n q^{3l n(n+1) + l n + l} / (1 + q^{6ln + j + 2l})`.
    fn s1(&self, alpha: i64, beta: i64) -> Expr {
        let l = self.l;
        BilateralSpec::quad(3 * l, 4 * l, l)
            .alternating()
            .weight(alpha, beta)
            .denom(m(-1, self.j + 2 * l), 6 * l, 1)
            .into()
    }

    /// `Σ (α + βn) (-1)^n q^{3l n(n+1) - l n} / (1 + q^{6ln + j})`.
    fn s2(&self, alpha: i64, beta: i64) -> Expr {
        let l = self.l;
        BilateralSpec::quad(3 * l, 2 * l, 0).alternating().weight(alpha, beta).denom(m(-1, self.j), 6 * l, 1).into()
    }

    /// `Σ (-1)^n q^{3l n(n+1) + 2l n + c} / (1 + q^{6ln + j + 3l})`.
    fn s3(&self, c: i64) -> Expr {
        let l = self.l;
        BilateralSpec::quad(3 * l, 5 * l, c).alternating().denom(m(-1, self.j + 3 * l), 6 * l, 1).into()
    }

    /// `(q^{2l};q^{2l})² / (q^l;q^{2l})²`.
    fn t(&self) -> Expr {
        P::new().qs(2 * self.l, 2).poch(m(1, self.l), 2 * self.l, -2).into()
    }

    fn t2(&self) -> Expr {
        let (l, s) = (self.l, self.s());
        P::new()
            .br(m(1, -2 * l), s, 1)
            .br(m(1, 2 * l), s, 1)
            .qs(s, 2)
            .br(m(1, 3 * l), s, -1)
            .br(m(1, l), s, -1)
            .br(m(1, -l), s, -1)
            .into()
    }
}

fn family_instances() -> Vec<Params> {
    [(1, -3), (1, -1), (1, 0), (1, 1), (2, 1)].iter().map(|&(l, j)| params(&[("l", l), ("j", j)])).collect()
}

fn idt5(p: &Params) -> Result<Identity> {
    let f = Family::from(p)?;
    let bracket = lin([(f.j, q(0)), (2, f.a()), (2, f.b()), (-4, f.c())]);
    let lhs = mul([f.product().into(), bracket]);
    let rhs = lin([(1, f.s1(2 + f.j, 6)), (1, f.s2(f.j, 6)), (4, mul([f.t(), f.s3(2 * f.l)]))]);
    plain(lhs, rhs)
}

fn pt51(p: &Params) -> Result<Identity> {
    let f = Family::from(p)?;
    let lhs = mul([f.product().into(), lin([(1, f.a()), (1, f.b())])]);
    let rhs = lin([(2, mul([f.a(), f.s1(1, 0)])), (1, f.s1(1, 1)), (1, f.s2(0, 1))]);
    plain(lhs, rhs)
}

fn pt52(p: &Params) -> Result<Identity> {
    let f = Family::from(p)?;
    let lhs = mul([f.product().into(), f.c()]);
    let rhs =
        lin([(1, mul([f.a(), f.s1(1, 0)])), (-1, f.s1(0, 1)), (-1, f.s2(0, 1)), (-1, mul([f.t2(), f.s3(3 * f.l)]))]);
    plain(lhs, rhs)
}

fn pt53(p: &Params) -> Result<Identity> {
    let f = Family::from(p)?;
    let lhs = mul([f.product().into(), lin([(2, f.a()), (2, f.b()), (-4, f.c())])]);
    let rhs = lin([(1, f.s1(2, 6)), (1, f.s2(0, 6)), (4, mul([f.t(), f.s3(2 * f.l)]))]);
    plain(lhs, rhs)
}

fn pt54(p: &Params) -> Result<Identity> {
    let f = Family::from(p)?;
    plain(f.product(), lin([(1, f.s1(1, 0)), (1, f.s2(1, 0))]))
}

fn eastharlem(p: &Params) -> Result<Identity> {
    let f = Family::from(p)?;
    let (l, j, s) = (f.l, f.j, f.s());
    let lhs = P::new()
        .br(m(-1, 3 * l + j), s, 1)
        .br(m(-1, j + l), s, 1)
        .br(m(1, 2 * l), s, 1)
        .br(mx(1, 1, 3 * l), s, 1)
        .qs(s, 2)
        .br(m(-1, j + 2 * l), s, -1)
        .br(m(-1, j), s, -1)
        .br(m(1, 3 * l), s, -1)
        .br(m(1, l), s, -1)
        .br(mx(-1, 1, j + 3 * l), s, -1);
    let first = mul([
        Expr::from(
            P::new()
                .times(mx(1, 1, 0))
                .br(mx(1, -1, 0), s, 1)
                .br(mx(1, -1, -2 * l), s, 1)
                .br(m(1, 2 * l), s, 1)
                .br(m(1, 3 * l), s, -1)
                .br(m(1, l), s, -1)
                .br(mx(1, -1, -l), s, -1),
        ),
        BilateralSpec::quad(3 * l, 5 * l, 3 * l)
            .alternating()
            .weight(-1, 0)
            .denom(mx(-1, 1, j + 3 * l), 6 * l, 1)
            .into(),
    ]);
    let second = mul([
        Expr::from(P::new().br(m(1, l), s, 1).br(mx(1, 1, 3 * l), s, 1).br(m(1, 3 * l), s, -1).br(mx(1, 1, l), s, -1)),
        BilateralSpec::quad(3 * l, 4 * l, l).ratio(mx(-1, -1, 0)).denom(m(-1, j + 2 * l), 6 * l, 1).into(),
    ]);
    let third = BilateralSpec::quad(3 * l, 2 * l, 0).ratio(mx(-1, -1, 0)).denom(m(-1, j), 6 * l, 1);
    let rhs = lin([(1, first), (1, second), (1, third.into())]);
    let clearing: &[(i64, i64, u32)] = if j + 3 * l == 0 { &[(-1, 1, 1)] } else { &[] };
    cleared(lhs, rhs, clearing)
}

fn t53_display(p: &Params) -> Result<Identity> {
    let f = Family::from(p)?;
    let (l, j, s) = (f.l, f.j, f.s());
    let pf = P::new()
        .br(m(1, 2 * l + j), s, 1)
        .br(m(1, 4 * l), s, 1)
        .qs(s, 2)
        .br(m(-1, j), s, -1)
        .br(m(-1, 2 * l), s, -1)
        .br(m(-1, 4 * l + j), s, -1);
    let bracket = lin([
        (j, q(0)),
        (2, f.u(-1, 2 * l)),
        (-2, f.u(-1, 4 * l)),
        (-2, f.u(1, 2 * l + j)),
        (2, f.u(1, 4 * l - j)),
        (-4, f.u(1, 4 * l + j)),
        (4, f.u(1, 2 * l - j)),
    ]);
    let rhs = lin([
        (-1, BilateralSpec::quad(3 * l, 5 * l, 2 * l).weight(4 + j, 6).denom(m(-1, j + 4 * l), 6 * l, 1).into()),
        (1, BilateralSpec::quad(3 * l, l, 0).weight(j, 6).denom(m(-1, j), 6 * l, 1).into()),
        (
            2,
            mul([
                Expr::from(P::new().qs(2 * l, 2).poch(m(-1, 2 * l), 2 * l, -2)),
                BilateralSpec::quad(3 * l, 5 * l, 2 * l).alternating().denom(m(1, j + 4 * l), 6 * l, 1).into(),
            ]),
        ),
    ]);
    plain(mul([pf.into(), bracket]), rhs)
}

fn e1(_: &Params) -> Result<Identity> {
    let lhs = mul([euler_cubed().into(), mock(MockName::F)]);
    let rhs = Expr::plain(|w| {
        let mut c = vec![Rational::zero(); w.max(1) as usize];
        c[0] = Rational::one();
        for n in 1..w {
            for k in 1..w {
                if n * k >= w {
                    break;
                }
                c[(n * k) as usize] -= &Rational::from(4 * n);
                if 2 * n * k < w {
                    c[(2 * n * k) as usize] -= &Rational::from(16 * n);
                }
            }
            let mut k = 1;
            while n * (3 * n - 1 + 2 * k) / 2 < w {
                c[(n * (3 * n - 1 + 2 * k) / 2) as usize] += Rational::from(4 * (6 * n + 2 * k - 1));
                k += 1;
            }
        }
        QSeries::from_rationals(0, c)
    });
    plain(lhs, rhs)
}

fn qtp1(_: &Params) -> Result<Identity> {
    plain(BilateralSpec::half(3, 1, 0).weight(1, 6), euler_cubed())
}

fn qtp2(_: &Params) -> Result<Identity> {
    plain(BilateralSpec::quad(3, 2, 0).weight(1, 3), even_cubed())
}

fn idt9(_: &Params) -> Result<Identity> {
    let lhs = mul([
        Expr::from(theta_ratio(-1, 1).times(m(2, 0))),
        BilateralSpec::quad(3, 1, 0).alternating().denom(m(-1, 0), 2, 1).into(),
    ]);
    let rhs = lin([
        (1, BilateralSpec::quad(3, 2, 0).weight(1, 6).denom(m(1, 1), 6, 1).into()),
        (-3, BilateralSpec::quad(3, 2, -2).weight(-1, 2).denom(m(1, -3), 6, 1).into()),
    ]);
    plain(lhs, rhs)
}

/// `Σ (α + βn) (-1)^n q^{3n² + bn + c} / (1 + q^{6n + d})`.
fn alt6(alpha: i64, beta: i64, b: i64, c: i64, d: i64) -> Expr {
    BilateralSpec::quad(3, b, c).alternating().weight(alpha, beta).denom(m(-1, d), 6, 1).into()
}

/// `A1 + A2`.
fn a12() -> Expr {
    lin([(1, alt6(-1, 6, 4, 1, -1)), (1, alt6(-3, 6, 2, 0, -3))])
}

fn u6(c: i64, off: i64) -> Expr {
    tail(c, off, 6).into()
}

fn bracket95() -> Expr {
    lin([(-1, q(0)), (2, u6(1, 1)), (-2, u6(1, 5)), (2, u6(-1, -2)), (-2, u6(-1, 8))])
}

fn pt95(_: &Params) -> Result<Identity> {
    let pf = P::new().br(m(-1, -2), 6, 1).br(m(1, 2), 6, 1).qs(6, 2).br(m(-1, -3), 6, -1).br(m(1, 1), 6, -1).br(
        m(-1, -1),
        6,
        -1,
    );
    let t2 = P::new().br(m(1, -2), 6, 1).br(m(1, 2), 6, 1).qs(6, 2).br(m(1, 3), 6, -1).br(m(1, 1), 6, -1).br(
        m(1, -1),
        6,
        -1,
    );
    let rhs = lin([(1, a12()), (4, mul([t2.into(), alt6(1, 0, 5, 3, 0)]))]);
    plain(mul([pf.into(), bracket95()]), rhs)
}

fn cor32a(_: &Params) -> Result<Identity> {
    let rhs = P::new()
        .times(m(-1, 0))
        .br(m(1, 10), 6, 1)
        .br(m(-1, 3), 6, 2)
        .qs(6, 2)
        .br(m(1, 1), 6, -2)
        .br(m(-1, -2), 6, -1)
        .br(m(-1, 8), 6, -1);
    plain(bracket95(), rhs)
}

/// `(q²;q²)²_∞ [q⁶;q¹²]²_∞ (q¹²;q¹²)²_∞ / (q;q²)²_∞`.
fn prod96() -> P {
    theta_ratio(1, 1).br(m(1, 6), 12, 2).qs(12, 2)
}

fn pt96(_: &Params) -> Result<Identity> {
    let rhs = lin([(-1, prod96().times(m(1, 2)).into()), (4, mul([theta_ratio(1, 1).into(), alt6(1, 0, 5, 2, 0)]))]);
    plain(a12().scale(rat(-1, 1)), rhs)
}

fn pt9f(_: &Params) -> Result<Identity> {
    let rhs = mul([theta_ratio(1, 1).times(m(-2, 0)).into(), alt6(1, 0, 3, 2, 0)]);
    plain(prod96().times(m(-1, 2)), rhs)
}

fn t9f(_: &Params) -> Result<Identity> {
    let rhs = mul([
        Expr::from(theta_ratio(1, 1).times(m(2, 0))),
        BilateralSpec::quad(3, 1, 2).alternating().denom(m(-1, 0), 2, 1).into(),
    ]);
    plain(a12().scale(rat(-1, 1)), rhs)
}

/// `(q²;q²)²_∞ / (-q²;q²)²_∞`.
fn tm() -> P {
    theta_ratio(-1, 2)
}

fn t919a(_: &Params) -> Result<Identity> {
    let lhs = mul([tm().into(), Expr::from(BilateralSpec::quad(3, 3, 0).alternating().denom(m(1, 1), 2, 1))]);
    let rhs = lin([
        (-3, BilateralSpec::quad(3, 1, -2).weight(-1, 2).denom(m(-1, -3), 6, 1).into()),
        (-1, BilateralSpec::quad(3, 1, -1).weight(-1, 6).denom(m(-1, -1), 6, 1).into()),
    ]);
    plain(lhs, rhs)
}

fn d1() -> Expr {
    BilateralSpec::quad(3, 5, 2).weight(3, 6).denom(m(-1, 3), 6, 1).into()
}

fn d2() -> Expr {
    BilateralSpec::quad(3, 1, 0).weight(-1, 6).denom(m(-1, -1), 6, 1).into()
}

fn e1_sum() -> Expr {
    BilateralSpec::quad(3, 5, 2).alternating().denom(m(1, 3), 6, 1).into()
}

fn bracket54() -> Expr {
    lin([(-1, q(0)), (2, u6(-1, 2)), (-2, u6(-1, 4)), (-2, u6(1, 1)), (2, u6(1, 5))])
}

fn leid54(_: &Params) -> Result<Identity> {
    let pf = P::new().br(m(1, 1), 6, 1).br(m(1, 4), 6, 1).qs(6, 2).br(m(-1, -1), 6, -1).br(m(-1, 2), 6, -1).br(
        m(-1, 3),
        6,
        -1,
    );
    let rhs = lin([(-1, d1()), (1, d2()), (2, mul([tm().into(), e1_sum()]))]);
    plain(mul([pf.into(), bracket54()]), rhs)
}

fn cor32b(_: &Params) -> Result<Identity> {
    let rhs = P::new()
        .times(m(-1, 0))
        .br(m(1, 2), 6, 1)
        .br(m(-1, 3), 6, 2)
        .qs(6, 2)
        .br(m(1, 1), 6, -2)
        .br(m(-1, 2), 6, -1)
        .br(m(-1, 4), 6, -1);
    plain(bracket54(), rhs)
}

fn prod55() -> P {
    P::new()
        .times(m(1, 1))
        .br(m(1, 2), 6, 1)
        .br(m(-1, 3), 6, 1)
        .br(m(1, 4), 6, 1)
        .qs(6, 4)
        .br(m(1, 1), 6, -1)
        .br(m(-1, 1), 6, -1)
        .br(m(-1, 2), 6, -2)
        .br(m(-1, 4), 6, -1)
}

fn leid55(_: &Params) -> Result<Identity> {
    let rhs = lin([(2, mul([tm().into(), e1_sum()])), (1, prod55().into())]);
    plain(lin([(1, d1()), (-1, d2())]), rhs)
}

fn leid56(_: &Params) -> Result<Identity> {
    let rhs = mul([tm().into(), Expr::from(BilateralSpec::quad(3, 3, 1).alternating().denom(m(1, 3), 6, 1))]);
    plain(prod55(), rhs)
}

fn leid57(_: &Params) -> Result<Identity> {
    let rhs = mul([tm().into(), Expr::from(BilateralSpec::quad(3, 3, 1).alternating().denom(m(1, 1), 2, 1))]);
    plain(lin([(1, d1()), (-1, d2())]), rhs)
}

fn bracket4() -> Expr {
    lin([(-1, u6(-1, 1)), (1, u6(-1, 5)), (-1, u6(1, 1)), (1, u6(1, 5))])
}

/// `(q²;q²)²_∞ / (-q;q²)²_∞`.
fn tmo() -> P {
    theta_ratio(-1, 1)
}

fn pom4(_: &Params) -> Result<Identity> {
    let pf = P::new()
        .times(m(2, 0))
        .br(m(1, 1), 6, 1)
        .br(m(1, 2), 6, 1)
        .qs(6, 2)
        .br(m(-1, 0), 6, -1)
        .br(m(-1, 1), 6, -1)
        .br(m(-1, 2), 6, -1);
    let rhs = lin([
        (-1, BilateralSpec::quad(3, 4, 1).weight(2, 6).denom(m(-1, 2), 6, 1).into()),
        (1, BilateralSpec::quad(3, 2, 0).weight(0, 6).denom(m(-1, 0), 6, 1).into()),
        (4, mul([tmo().into(), Expr::from(BilateralSpec::quad(3, 5, 2).alternating().denom(m(1, 3), 6, 1))])),
    ]);
    plain(mul([pf.into(), bracket4()]), rhs)
}

/// `-2 Σ_{n∈ℤ} q^{6n+1}/(1 - q^{12n+2})`, with the `n < 0` half folded onto `n ≥ 0`.
fn cor31(_: &Params) -> Result<Identity> {
    let rhs = lin([
        (-2, BilateralSpec::quad(0, 6, 1).denom(m(1, 2), 12, 1).from(0).into()),
        (2, BilateralSpec::quad(0, 6, 5).denom(m(1, 10), 12, 1).from(0).into()),
    ]);
    plain(bracket4(), rhs)
}

fn omega_lhs() -> Expr {
    mul([even_cubed().times(m(1, 1)).into(), mock(MockName::Omega)])
}

fn pt920a(_: &Params) -> Result<Identity> {
    let rhs = lin([
        (1, BilateralSpec::quad(3, 14, 8).weight(2, 3).denom(m(1, 8), 12, 1).into()),
        (-3, BilateralSpec::quad(3, 2, 0).weight(0, 1).denom(m(1, 0), 12, 1).except_zero().into()),
        (-1, BilateralSpec::quad(3, 8, 4).weight(2, 3).denom(m(1, 8), 12, 1).into()),
        (3, BilateralSpec::quad(3, 8, 0).weight(0, 1).denom(m(1, 0), 12, 1).except_zero().into()),
    ]);
    plain(omega_lhs(), rhs)
}

fn equiv(_: &Params) -> Result<Identity> {
    let rhs = lin([
        (-3, BilateralSpec::quad(3, 2, 0).weight(0, 1).denom(m(-1, 0), 6, 1).except_zero().into()),
        (-1, BilateralSpec::quad(3, 8, 4).weight(2, 3).denom(m(-1, 4), 6, 1).into()),
    ]);
    plain(omega_lhs(), rhs)
}

fn theta_consequence(_: &Params) -> Result<Identity> {
    let lhs = lin([
        (1, BilateralSpec::quad(3, 4, 0).weight(2, 6).denom(m(-1, 2), 6, 1).into()),
        (-1, BilateralSpec::quad(3, 2, -1).weight(0, 6).denom(m(-1, 0), 6, 1).into()),
    ]);
    let g = P::new()
        .times(m(2, 0))
        .qs(2, 3)
        .poch(m(-1, 1), 2, -2)
        .br(m(1, 6), 18, 3)
        .qs(18, 3)
        .br(m(1, 2), 6, -1)
        .br(m(1, 3), 6, -1)
        .qs(6, -2);
    let rhs = lin([
        (1, g.into()),
        (4, mul([tmo().into(), Expr::from(BilateralSpec::quad(3, 5, 1).alternating().denom(m(1, 3), 6, 1))])),
    ]);
    plain(lhs, rhs)
}

fn e2(_: &Params) -> Result<Identity> {
    let lhs = mul([even_cubed().times(m(1, 1)).into(), omega_neg_q()]);
    let rhs = Expr::plain(|w| {
        let mut c = vec![Rational::zero(); w.max(1) as usize];
        for n in 1..w {
            let mut v = Rational::from(6) * r_tilde(n);
            for a in crate::divisor::divisors(n as u64) {
                let (a, b) = (a as i64, n / a as i64);
                if (a - b) % 2 == 0 {
                    if a > 3 * b {
                        v += Rational::from(a);
                    }
                    if a > 3 * b - 2 {
                        v += Rational::from(3 * b);
                    }
                }
            }
            c[n as usize] = v;
        }
        QSeries::from_rationals(0, c)
    });
    plain(lhs, rhs)
}

/// `Σ_k (-x)^k q^{k(k+1)/2} / (1 - x q^k)`.
fn x_lambert() -> Expr {
    BilateralSpec::half(1, 1, 0).ratio(mx(-1, 1, 0)).denom(mx(1, 1, 0), 1, 1).into()
}

/// `Σ_{n≠0} (-1)^n n q^{n(n+1)/2} / (1 - q^n)`.
fn signed_divisor_lambert() -> Expr {
    BilateralSpec::half(1, 1, 0).alternating().weight(0, 1).denom(m(1, 0), 1, 1).except_zero().into()
}

fn l31(_: &Params) -> Result<Identity> {
    let lhs = mul([P::new().qs(1, 2).br(mx(1, -1, 0), 1, -1).into(), x_lambert()]);
    let rhs = lin([
        (-1, mul([x(1), BilateralSpec::quad(0, 1, 0).denom(mx(1, 1, 0), 1, 2).from(0).into()])),
        (-1, mul([x(-1), BilateralSpec::quad(0, 1, 1).denom(mx(1, -1, 1), 1, 2).from(0).into()])),
        (1, signed_divisor_lambert()),
    ]);
    cleared(lhs, rhs, &[(1, 1, 2)])
}

fn thirty(_: &Params) -> Result<Identity> {
    let sq = |c: Monomial| -> Expr { BilateralSpec::quad(0, 1, 0).denom(c, 1, 2).from(1).into() };
    let lhs = lin([
        (
            1,
            mul([Expr::Pole(rat(1, 1), 1), P::new().poch(mx(1, 1, 1), 1, 1).poch(mx(1, -1, 1), 1, 1).qs(1, -2).into()]),
        ),
        (
            1,
            mul([
                Expr::from(P::new().br(mx(1, -1, 0), 1, 1).qs(1, -2)),
                lin([(2, sq(m(1, 0))), (-1, mul([x(1), sq(mx(1, 1, 0))])), (-1, mul([x(-1), sq(mx(1, -1, 0))]))]),
            ]),
        ),
    ]);
    let alt_sq = |c: i64| -> Expr {
        BilateralSpec::half(1, 1 + 2 * c, 0).alternating().denom(m(1, 0), 1, 2).except_zero().into()
    };
    let rhs = lin([
        (1, x_lambert()),
        (
            1,
            mul([
                Expr::from(P::new().times(mx(1, -1, 0)).br(mx(1, 1, 0), 1, 1).qs(1, -2)),
                lin([(1, alt_sq(0)), (1, alt_sq(1)), (1, signed_divisor_lambert())]),
            ]),
        ),
    ]);
    cleared(lhs, rhs, &[(1, 1, 1)])
}

fn last11(p: &Params) -> Result<Identity> {
    let b1 = rat_param(p, "b1")?;
    let c = |k: i64, d: i64, e: i64| Monomial::new(b1.pow(k), d, e);
    let lhs = P::new().br(c(1, 1, 0), 1, 1).br(c(1, -1, 0), 1, 1).qs(1, 2).br(mx(1, 1, 0), 1, -1).br(c(1, 0, 0), 1, -2);
    let sum = BilateralSpec::half(1, 1, 0).ratio(Monomial::constant(-b1.clone())).scaled(&-b1.clone()).denom(
        c(1, 0, 0),
        1,
        1,
    );
    let rhs = lin([
        (1, x_lambert()),
        (1, mul([P::new().times(mx(1, -1, 0)).br(mx(1, 1, 0), 1, 1).br(c(1, 0, 0), 1, -1).into(), sum.into()])),
    ]);
    cleared(lhs, rhs, &[(1, 1, 1)])
}

fn waston(_: &Params) -> Result<Identity> {
    let lhs = BilateralSpec::quad(0, 1, 0).denom(m(1, 0), 1, 2).from(1);
    let alt = |b: i64| -> Expr { BilateralSpec::half(1, b, 0).alternating().denom(m(1, 0), 1, 2).from(1).into() };
    plain(lhs, lin([(-1, alt(1)), (-1, alt(3))]))
}

fn ftonu(_: &Params) -> Result<Identity> {
    plain(mock(MockName::FTilde), mock(MockName::Nu2).scale(rat(-2, 1)))
}

fn r_identity(_: &Params) -> Result<Identity> {
    let lhs = mul([P::new().times(m(1, 1)).qs(4, 3).into(), mock(MockName::B)]);
    let rhs = lin([
        (1, BilateralSpec::quad(0, 4, 1).denom(m(1, 1), 4, 2).from(0).into()),
        (1, BilateralSpec::quad(0, 4, 3).denom(m(1, 3), 4, 2).from(0).into()),
        (-1, BilateralSpec::quad(2, 2, 0).alternating().weight(0, 1).denom(m(1, 0), 4, 1).except_zero().into()),
    ]);
    plain(lhs, rhs)
}

fn entry(
    name: &'static str,
    summary: &'static str,
    keys: &'static [&'static str],
    instances: Vec<Params>,
    bivariate: bool,
    build: fn(&Params) -> Result<Identity>,
) -> IdentityEntry {
    IdentityEntry { name, summary, keys, instances, bivariate, build }
}

fn single() -> Vec<Params> {
    vec![Params::new()]
}

fn shifts() -> Vec<Params> {
    (0..3).map(|s| params(&[("m", s)])).collect()
}

fn b1_instances() -> Vec<Params> {
    [rat(-1, 1), rat(7, 3)].into_iter().map(|b| Params::from([("b1".to_string(), b)])).collect()
}

fn build_registry() -> Vec<IdentityEntry> {
    let fam: &[&str] = &["l", "j"];
    let mut v = vec![
        entry(
            "gls",
            "generalized Lambert series identity for monomial parameters",
            &["case"],
            (1..=6).map(|k| params(&[("case", k)])).collect(),
            true,
            gls_entry,
        ),
        entry("lat2", "Lambert sum at x against a theta quotient and squared Lambert sums", &[], single(), true, lat2),
        entry("lat3", "base-q² analogue of lat2", &[], single(), true, lat3),
        entry("at4", "three-bracket sum with x = -q^m, second parameter formal", &["m"], shifts(), true, at4),
        entry("at3", "companion of at4 with exponent 3n(n+1)/2", &["m"], shifts(), true, at3),
        entry("at6", "base-q² companion of at4", &["m"], shifts(), true, at6),
        entry("at8", "derivative form of lat2", &[], single(), true, at8),
        entry("at7", "derivative form of lat3", &[], single(), true, at7),
        entry("c6", "(q)³/(-q)² f(q) as Lambert sums", &[], single(), false, c6),
        entry("c5", "q(q²;q²)³/(-q;q²)² ω(-q) as Lambert sums", &[], single(), false, c5),
        entry("mockf", "Appell-Lerch form of f", &[], single(), false, mockf),
        entry("om00", "Appell-Lerch form of ω", &[], single(), false, om00),
        entry(
            "fine-12.2.3",
            "bivariate f with the (1-x) prefactor cancelling the n=0 pole",
            &[],
            single(),
            true,
            fine_f,
        ),
        entry("fine-12.2.5", "bivariate ω as an Appell-Lerch sum", &[], single(), true, fine_omega),
        entry("idt5", "(l,j) family: weighted sums against the product bracket", fam, family_instances(), false, idt5),
        entry("pt51", "(l,j) family: A + B tails", fam, family_instances(), false, pt51),
        entry("pt52", "(l,j) family: C tails", fam, family_instances(), false, pt52),
        entry("pt53", "(l,j) family: combined tails", fam, family_instances(), false, pt53),
        entry("pt54", "(l,j) family: the bare product", fam, family_instances(), false, pt54),
        entry("eastharlem", "(l,j) family with a formal parameter", fam, family_instances(), true, eastharlem),
        entry(
            "t53-display",
            "(l,j) family, second display",
            fam,
            vec![params(&[("l", 1), ("j", -1)])],
            false,
            t53_display,
        ),
        entry("e1", "(q)³/(-q)² f(q) as an explicit double sum", &[], single(), false, e1),
        entry("qtp1", "Σ(6n+1)q^{n(3n+1)/2} = (q)³/(-q)²", &[], single(), false, qtp1),
        entry("qtp2", "Σ(3n+1)q^{n(3n+2)} = (q²;q²)³/(-q;q²)²", &[], single(), false, qtp2),
        entry("idt9", "generating function of S₁ - 3S₂", &[], single(), false, idt9),
        entry("pt95", "(l,j) = (1,-3) instance of the family bracket", &[], single(), false, pt95),
        entry("cor32-a", "bracket of pt95 as a product", &[], single(), false, cor32a),
        entry("pt96", "A₁ + A₂ as product plus theta sum", &[], single(), false, pt96),
        entry("pt9f", "the product in pt96 as a theta sum", &[], single(), false, pt9f),
        entry("t9f", "A₁ + A₂ as a single theta sum", &[], single(), false, t9f),
        entry("t919a", "ω-type theta sum as Lambert sums", &[], single(), false, t919a),
        entry("leid54", "(l,j) = (1,-1) bracket against D₁, D₂", &[], single(), false, leid54),
        entry("cor32-b", "bracket of leid54 as a product", &[], single(), false, cor32b),
        entry("leid55", "D₁ - D₂ as theta sum plus product", &[], single(), false, leid55),
        entry("leid56", "the product in leid55 as a theta sum", &[], single(), false, leid56),
        entry("leid57", "D₁ - D₂ as a single theta sum", &[], single(), false, leid57),
        entry("pom4", "(l,j) = (1,0) at -q", &[], single(), false, pom4),
        entry("cor31-instance", "bracket of pom4 as a Lambert sum", &[], single(), false, cor31),
        entry("pt920a", "q(q²;q²)³/(-q;q²)² ω(q) as Lambert sums in q^{12}", &[], single(), false, pt920a),
        entry("equiv", "q(q²;q²)³/(-q;q²)² ω(q) as Lambert sums in q^6", &[], single(), false, equiv),
        entry(
            "hi-mo-consequence",
            "Lambert sums against a theta quotient and a theta sum",
            &[],
            single(),
            false,
            theta_consequence,
        ),
        entry("e2", "q(q²;q²)³/(-q;q²)² ω(-q) as a divisor sum", &[], single(), false, e2),
        entry("l31", "bilateral sum at x against squared Lambert sums", &[], single(), true, l31),
        entry("last11", "two-parameter bracket quotient with b₁ fixed", &["b1"], b1_instances(), true, last11),
        entry("thirty", "bracket sum in x with a q⁰ pole", &[], single(), true, thirty),
        entry("waston", "Σq^n/(1-q^n)² by alternating theta sums", &[], single(), false, waston),
        entry("ftonu", "F̃(q) = -2ν₂(q)", &[], single(), false, ftonu),
        entry("r-identity", "q(q⁴;q⁴)³ B(q) as Lambert sums", &[], single(), false, r_identity),
    ];
    v.sort_by_key(|e| e.name);
    v
}

/// All entries, sorted by name.
pub fn registry() -> &'static [IdentityEntry] {
    static REGISTRY: OnceLock<Vec<IdentityEntry>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

pub fn find(name: &str) -> Result<&'static IdentityEntry> {
    registry().iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownIdentity(name.to_string()))
}

/// Verifies a registered instance.
pub fn verify_identity(name: &str, params: &Params, order: i64) -> Result<VerificationReport> {
    let e = find(name)?;
    e.validate(params)?;
    e.verify(params, order)
}

/// Verifies arbitrary parameter values, skipping the instance check.
pub fn verify_identity_unchecked(name: &str, params: &Params, order: i64) -> Result<VerificationReport> {
    find(name)?.verify(params, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_params() {
        assert!(registry().len() >= 40);
        assert!(find("qtp1").is_ok());
        assert!(matches!(find("nope"), Err(Error::UnknownIdentity(_))));
        let p = parse_params("l=1, j=-3").unwrap();
        assert_eq!(p["j"], rat(-3, 1));
        assert!(parse_params("l").is_err());
        assert!(parse_params("l=1,l=2").is_err());
        assert!(find("idt5").unwrap().validate(&params(&[("l", 3), ("j", 0)])).is_err());
        assert!(find("idt5").unwrap().validate(&params(&[("l", 1)])).is_err());
    }

    #[test]
    fn qtp1_passes() {
        let r = verify_identity("qtp1", &Params::new(), 30).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
