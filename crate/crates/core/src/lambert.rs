//! Unilateral and bilateral Lambert / Appell–Lerch sums
//!
//! `Σ_k (α + βk) ε^k r^k q^{Ak² + Bk + C} / (1 - b q^{Lk})^p`
//!
//! with a monomial ratio `r`, evaluated exactly to a truncation order.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::poles::{normalize_factor, PoleSeries, PoleSet};
use crate::rational::Rational;
use crate::series::QSeries;

/// Summation range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumRange {
    All,
    Except(Vec<i64>),
    From(i64),
}

impl SumRange {
    fn contains(&self, k: i64) -> bool {
        match self {
            SumRange::All => true,
            SumRange::Except(ex) => !ex.contains(&k),
            SumRange::From(k0) => k >= *k0,
        }
    }
}

/// `(1 - base·q^{step·k})^{-power}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Denominator {
    pub base: Monomial,
    pub step: i64,
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilateralSpec {
    pub weight: (Rational, Rational),
    pub sign: i8,
    pub exponent: (Rational, Rational, Rational),
    pub ratio: Monomial,
    pub denom: Option<Denominator>,
    pub prefactor: Option<LaurentPoly>,
    pub range: SumRange,
}

impl BilateralSpec {
    /// Exponent `A k² + B k + C`, weight 1, no denominator, all of ℤ.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        BilateralSpec {
            weight: (Rational::one(), Rational::zero()),
            sign: 1,
            exponent: (a, b, c),
            ratio: Monomial::one(),
            denom: None,
            prefactor: None,
            range: SumRange::All,
        }
    }

    /// Exponent `a k² + b k + c`.
    pub fn quad(a: i64, b: i64, c: i64) -> Self {
        Self::new(a.into(), b.into(), c.into())
    }

    /// Exponent `(a k² + b k + c)/2`.
    pub fn half(a: i64, b: i64, c: i64) -> Self {
        Self::new(Rational::new(a, 2), Rational::new(b, 2), Rational::new(c, 2))
    }

    /// Weight `α + βk`.
    pub fn weight(mut self, alpha: i64, beta: i64) -> Self {
        self.weight = (alpha.into(), beta.into());
        self
    }

    pub fn weight_rat(mut self, alpha: Rational, beta: Rational) -> Self {
        self.weight = (alpha, beta);
        self
    }

    /// Multiplies the weight by a constant.
    pub fn scaled(mut self, c: &Rational) -> Self {
        self.weight = (&self.weight.0 * c, &self.weight.1 * c);
        self
    }

    /// Inserts `(-1)^k`.
    pub fn alternating(mut self) -> Self {
        self.sign = -self.sign;
        self
    }

    /// Multiplies the `k`-th term by `r^k`.
    pub fn ratio(mut self, r: Monomial) -> Self {
        self.ratio = self.ratio.mul(&r);
        self
    }

    pub fn denom(mut self, base: Monomial, step: i64, power: u32) -> Self {
        assert!((1..=2).contains(&power), "denominator power must be 1 or 2");
        self.denom = Some(Denominator { base, step, power });
        self
    }

    pub fn prefactor(mut self, p: LaurentPoly) -> Self {
        self.prefactor = Some(p);
        self
    }

    pub fn range(mut self, r: SumRange) -> Self {
        self.range = r;
        self
    }

    pub fn from(self, k0: i64) -> Self {
        self.range(SumRange::From(k0))
    }

    pub fn except_zero(self) -> Self {
        self.range(SumRange::Except(vec![0]))
    }

    fn weight_at(&self, k: i64) -> Rational {
        &self.weight.0 + &(&self.weight.1 * &Rational::from(k))
    }

    /// Exponent of `q` in the numerator of term `k`, ratio included.
    fn numerator_exponent(&self, k: i64) -> Rational {
        let (a, b, c) = &self.exponent;
        let k = Rational::from(k);
        &(&(a * &(&k * &k)) + &(b * &k)) + &(c + &(&Rational::from(self.ratio.qexp) * &k))
    }

    /// Lowest q-exponent term `k` can contribute, after rewriting a
    /// denominator with negative exponent.
    fn min_exponent(&self, k: i64) -> Rational {
        let mut e = self.numerator_exponent(k);
        if let Some(d) = &self.denom {
            let uq = d.base.qexp + d.step * k;
            if uq < 0 {
                e += Rational::from(-uq * d.power as i64);
            }
        }
        e
    }
}

/// One evaluated term before expansion.
enum Term {
    /// `poly · q^e`, no denominator left.
    Plain { e: i64, poly: LaurentPoly },
    /// `poly · q^e / (1 - u)^p` with `u.qexp > 0`.
    Geometric { e: i64, poly: LaurentPoly, u: Monomial, p: u32 },
    /// `poly · q^e / Π poles`.
    Pole { e: i64, poly: LaurentPoly, c: Rational, d: i64, p: u32 },
}

impl Term {
    fn start(&self) -> i64 {
        match self {
            Term::Plain { e, .. } | Term::Geometric { e, .. } | Term::Pole { e, .. } => *e,
        }
    }
}

fn term(spec: &BilateralSpec, k: i64) -> Result<Option<Term>> {
    let w = spec.weight_at(k);
    if w.is_zero() {
        return Ok(None);
    }
    let mut coef = &w * &spec.ratio.coeff.pow(k);
    if spec.sign < 0 && k.rem_euclid(2) == 1 {
        coef = -coef;
    }
    let mut poly = LaurentPoly::monomial(coef, spec.ratio.xdeg * k);
    if let Some(p) = &spec.prefactor {
        poly = poly.mul(p);
        if poly.is_zero() {
            return Ok(None);
        }
    }
    let e = spec.numerator_exponent(k);
    let mut e = e.to_i64().ok_or(Error::NonIntegralExponent(k))?;
    let Some(d) = &spec.denom else {
        return Ok(Some(Term::Plain { e, poly }));
    };
    let u = d.base.times_q(d.step * k);
    let p = d.power;
    if u.qexp > 0 {
        return Ok(Some(Term::Geometric { e, poly, u, p }));
    }
    if u.qexp < 0 {
        // 1/(1-u) = -u^{-1}/(1-u^{-1})
        let w = u.recip();
        let pre = w.neg().pow(p as i64);
        poly = poly.mul_term(&pre.coeff, pre.xdeg);
        e += pre.qexp;
        return Ok(Some(Term::Geometric { e, poly, u: w, p }));
    }
    if u.xdeg == 0 {
        let f = Rational::one() - &u.coeff;
        if f.is_zero() {
            return Err(Error::ExactPole(k));
        }
        return Ok(Some(Term::Plain { e, poly: poly.scale(&f.recip().pow(p as i64)) }));
    }
    if spec.prefactor.is_some() {
        let mut q = poly.clone();
        let mut ok = true;
        for _ in 0..p {
            match q.exact_div_binomial(&u.coeff, u.xdeg) {
                Ok(r) => q = r,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(Some(Term::Plain { e, poly: q }));
        }
    }
    Ok(Some(Term::Pole { e, poly, c: u.coeff, d: u.xdeg, p }))
}

/// Smallest `K ≥ 0` with `A k² - β|k| - γ ≥ order` for every `|k| > K`.
fn quadratic_cutoff(a: &Rational, beta: &Rational, gamma: &Rational, order: i64) -> i64 {
    let af = to_f64(a);
    let bf = to_f64(beta);
    let target = gamma + &Rational::from(order);
    let tf = to_f64(&target).max(0.0);
    let root = (bf + (bf * bf + 4.0 * af * tf).sqrt()) / (2.0 * af);
    let mut k = (root.floor() as i64 - 2).max(0);
    let g = |k: i64| {
        let kr = Rational::from(k);
        &(&(a * &(&kr * &kr)) - &(beta * &kr)) - &target
    };
    // g(k) ≥ 0 at k and increasing beyond: 2Ak ≥ β
    loop {
        let next = k + 1;
        let increasing = &(&Rational::from(2 * next) * a) >= beta;
        if increasing && g(next).signum() >= 0 {
            return k;
        }
        k += 1;
    }
}

fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_big().to_f64().unwrap_or(f64::MAX)
}

/// The indices whose terms can reach below `order`.
fn index_range(spec: &BilateralSpec, order: i64, extra: i64) -> Result<(i64, i64)> {
    let (a, b, c) = &spec.exponent;
    if a.signum() < 0 {
        return Err(Error::InvalidSpec("negative quadratic coefficient".into()));
    }
    if a.signum() > 0 {
        let beta = (b + &Rational::from(spec.ratio.qexp)).abs();
        let k = quadratic_cutoff(a, &beta, &c.abs(), order) + extra;
        return Ok(match spec.range {
            SumRange::From(k0) => (k0.max(-k), k),
            _ => (-k, k),
        });
    }
    let SumRange::From(k0) = spec.range else {
        return Err(Error::InvalidSpec("linear exponent needs a one-sided range".into()));
    };
    let mut slope = b + &Rational::from(spec.ratio.qexp);
    if let Some(d) = &spec.denom {
        if d.step < 0 {
            slope += Rational::from(-d.step * d.power as i64);
        }
    }
    if slope.signum() <= 0 {
        return Err(Error::InvalidSpec("terms do not tend to higher q-powers".into()));
    }
    // min_exponent is convex in k, so once it is past `order` and not
    // decreasing it stays there.
    let target = Rational::from(order);
    let mut k = k0;
    loop {
        let here = spec.min_exponent(k);
        if here >= target && spec.min_exponent(k + 1) >= here {
            return Ok((k0, k + extra));
        }
        k += 1;
    }
}

/// Evaluates the sum to `order`; unresolved `q⁰` poles stay in the pole set.
pub fn bilateral_sum(spec: &BilateralSpec, order: i64) -> Result<PoleSeries> {
    bilateral_sum_extended(spec, order, 0)
}

/// [`bilateral_sum`] with the index cutoff widened by `extra` on each side.
pub fn bilateral_sum_extended(spec: &BilateralSpec, order: i64, extra: i64) -> Result<PoleSeries> {
    let (lo, hi) = index_range(spec, order, extra)?;
    let mut terms = Vec::new();
    for k in lo..=hi {
        if !spec.range.contains(k) || spec.min_exponent(k) >= Rational::from(order) {
            continue;
        }
        if let Some(t) = term(spec, k)? {
            if t.start() < order {
                terms.push(t);
            }
        }
    }
    let val = terms.iter().map(Term::start).min().unwrap_or(order - 1).min(order - 1);
    let mut acc = vec![LaurentPoly::zero(); (order - val) as usize];
    let mut pole_terms: Vec<PoleSeries> = Vec::new();
    for t in terms {
        match t {
            Term::Plain { e, poly } => acc[(e - val) as usize].add_scaled(&poly, &Rational::one(), 0),
            Term::Geometric { e, poly, u, p } => {
                let mut j = 0i64;
                let mut cj = Rational::one();
                while e + j * u.qexp < order {
                    let weight = if p == 2 { &cj * &Rational::from(j + 1) } else { cj.clone() };
                    acc[(e + j * u.qexp - val) as usize].add_scaled(&poly, &weight, u.xdeg * j);
                    cj = &cj * &u.coeff;
                    j += 1;
                }
            }
            Term::Pole { e, poly, c, d, p } => {
                let mut ps = PoleSeries::from(QSeries::from_terms([(e, poly)], order));
                for _ in 0..p {
                    ps = ps.div_x_binomial(&c, d);
                }
                pole_terms.push(ps);
            }
        }
    }
    let mut out = PoleSeries::from(QSeries::new(val, acc));
    for t in pole_terms {
        out = out.add(&t);
    }
    Ok(out)
}

/// The pole factors the sum meets at `q⁰`, with multiplicity.
pub fn detect_q0_poles(spec: &BilateralSpec) -> PoleSet {
    let mut out = PoleSet::new();
    let Some(d) = &spec.denom else {
        return out;
    };
    if d.base.xdeg == 0 {
        return out;
    }
    let ks: Vec<i64> = if d.step == 0 {
        if d.base.qexp != 0 {
            return out;
        }
        // every term shares the factor; one representative suffices
        match spec.range {
            SumRange::From(k0) => (k0..k0 + 3).collect(),
            _ => vec![-1, 0, 1],
        }
    } else if (-d.base.qexp).rem_euclid(d.step) == 0 {
        vec![-d.base.qexp / d.step]
    } else {
        return out;
    };
    for k in ks {
        if !spec.range.contains(k) {
            continue;
        }
        if let Ok(Some(Term::Pole { c, d: xd, p, .. })) = term(spec, k) {
            let (_, fs) = normalize_factor(&c, xd);
            let mut here = PoleSet::new();
            for f in fs {
                here.insert(f, p);
            }
            out = out.lcm(&here);
        }
    }
    out
}
