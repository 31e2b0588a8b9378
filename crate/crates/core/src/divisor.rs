//! Divisor sums, d-weights over signed factorizations, and the divisor-side
//! recursions and combinatorial lemmas for the mock theta coefficients.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lambert::{bilateral_sum, BilateralSpec};
use crate::laurent::Monomial;
use crate::mock::{MockName, MockTable};
use crate::rational::{rat, Rational};
use crate::series::QSeries;

/// Positive divisors of `m > 0`, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            lo.push(d);
            if d * d != m {
                hi.push(m / d);
            }
        }
        d += 1;
    }
    lo.extend(hi.into_iter().rev());
    lo
}

/// `σ(x)`, and 0 unless `x` is a positive integer.
pub fn sigma(x: &Rational) -> u64 {
    match x.to_i64() {
        Some(n) if n > 0 => divisors(n as u64).iter().sum(),
        _ => 0,
    }
}

fn sigma_frac(n: i64, d: i64) -> Rational {
    Rational::from(sigma(&rat(n, d)) as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DWeightArgs {
    pub n: Rational,
    pub n_tilde: Rational,
    pub t: Rational,
    pub t_tilde: Rational,
}

impl DWeightArgs {
    pub fn new(n: Rational, n_tilde: Rational, t: Rational, t_tilde: Rational) -> Self {
        DWeightArgs { n, n_tilde, t, t_tilde }
    }
}

fn sgn_plus(v: &Rational) -> i64 {
    if v.signum() >= 0 {
        1
    } else {
        -1
    }
}

/// `sgn⁺(N) sgn⁺(Ñ) (|N + t| - |Ñ + t̃|)` with `sgn⁺(0) = 1`.
pub fn d_weight(args: &DWeightArgs) -> Rational {
    let s = sgn_plus(&args.n) * sgn_plus(&args.n_tilde);
    let diff = (&args.n + &args.t).abs() - (&args.n_tilde + &args.t_tilde).abs();
    diff * Rational::from(s)
}

/// All `(a, b) ∈ ℤ²` with `ab = m`: the positive-`a` pairs by ascending `a`,
/// then their negatives.
pub fn signed_divisor_pairs(m: i64) -> Result<Vec<(i64, i64)>> {
    if m == 0 {
        return Err(Error::UnboundedFactorization);
    }
    let pos: Vec<(i64, i64)> = divisors(m.unsigned_abs()).into_iter().map(|a| (a as i64, m / a as i64)).collect();
    let neg = pos.iter().map(|&(a, b)| (-a, -b));
    Ok(pos.iter().copied().chain(neg).collect())
}

fn positive_pairs(m: i64) -> Vec<(i64, i64)> {
    divisors(m as u64).into_iter().map(|a| (a as i64, m / a as i64)).collect()
}

fn divides(d: i64, v: i64) -> bool {
    v.rem_euclid(d) == 0
}

/// `Σ d(N, Ñ, t, t̃)` over signed `ab = m` passing `filter`, with `N`, `Ñ`
/// given as `(numerator(a, b), denominator)` pairs.
fn d_sum(
    m: i64,
    filter: impl Fn(i64, i64) -> bool,
    n: impl Fn(i64, i64) -> i64,
    n_tilde: impl Fn(i64, i64) -> i64,
    den: i64,
    t: Rational,
    t_tilde: Rational,
) -> Rational {
    signed_divisor_pairs(m)
        .expect("nonzero")
        .into_iter()
        .filter(|&(a, b)| filter(a, b))
        .map(|(a, b)| {
            d_weight(&DWeightArgs::new(rat(n(a, b), den), rat(n_tilde(a, b), den), t.clone(), t_tilde.clone()))
        })
        .sum()
}

/// Divisor-side recursions for the mock theta coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RecursionName {
    T1id,
    T9,
    T919,
    T9201,
    T9202,
    T920c,
    T920d,
    CorB,
}

impl RecursionName {
    pub const ALL: [RecursionName; 8] = [
        RecursionName::T1id,
        RecursionName::T9,
        RecursionName::T919,
        RecursionName::T9201,
        RecursionName::T9202,
        RecursionName::T920c,
        RecursionName::T920d,
        RecursionName::CorB,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RecursionName::T1id => "t1id",
            RecursionName::T9 => "t9",
            RecursionName::T919 => "t919",
            RecursionName::T9201 => "t9201",
            RecursionName::T9202 => "t9202",
            RecursionName::T920c => "t920c",
            RecursionName::T920d => "t920d",
            RecursionName::CorB => "corB",
        }
    }
}

impl fmt::Display for RecursionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RecursionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RecursionName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown recursion {s:?}")))
    }
}

/// `R_n`.
pub fn r_n(n: i64) -> Rational {
    if n % 2 == 0 {
        rat(2, 3) * (sigma_frac(n, 4) - sigma_frac(n, 2))
    } else {
        rat(1, 3) * sigma_frac(n, 1)
    }
}

/// `R̃_n`.
pub fn r_tilde(n: i64) -> Rational {
    if n % 2 == 0 {
        rat(1, 3) * (sigma_frac(n, 4) - rat(2, 1) * sigma_frac(n, 2))
    } else {
        rat(1, 6) * sigma_frac(n, 1)
    }
}

fn t1id_d_sum(n: i64) -> Rational {
    d_sum(2 * n, |a, b| divides(6, 3 * a + b - 1), |a, b| -3 * a + b - 1, |a, b| 3 * a + b - 1, 6, rat(1, 6), rat(1, 6))
}

fn t9_d_sum(n: i64) -> Rational {
    d_sum(
        4 * n + 1,
        |a, b| divides(12, 3 * a - b - 2),
        |a, b| 3 * a - b - 2,
        |a, b| 3 * a + b - 4,
        12,
        rat(1, 6),
        rat(1, 3),
    )
}

fn t919_d_sum(n: i64) -> Rational {
    d_sum(
        4 * n + 3,
        |a, b| divides(12, 3 * a - b - 4),
        |a, b| 3 * a - b - 4,
        |a, b| 3 * a + b - 2,
        12,
        rat(1, 3),
        rat(1, 6),
    )
}

/// The ω d-sum with filter `12 | a - 3b - r`.
fn omega_d_sum(n: i64, r: i64) -> Rational {
    d_sum(n, |a, b| divides(12, a - 3 * b - r), |a, b| a - 3 * b - 2, |a, b| a + 3 * b - 2, 6, rat(1, 3), rat(1, 3))
}

fn sign_pow(n: i64) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Right-hand side of the named recursion at `n ≥ 1`.
pub fn rhs_theorem(name: RecursionName, n: i64) -> Rational {
    assert!(n >= 1, "n must be positive");
    match name {
        RecursionName::T1id => rat(4, 3) * sigma_frac(n, 1) - rat(16, 3) * sigma_frac(n, 2) - rat(2, 1) * t1id_d_sum(n),
        RecursionName::T9 => rat(-2, 1) * t9_d_sum(n),
        RecursionName::T919 => sign_pow(n + 1) * t919_d_sum(n),
        RecursionName::T9201 => r_n(n) - omega_d_sum(n, 8),
        RecursionName::T9202 => -r_n(n) + omega_d_sum(n, 2),
        RecursionName::T920c => omega_d_sum(n, 2) - omega_d_sum(n, 8),
        RecursionName::T920d => rat(2, 1) * r_n(n) - omega_d_sum(n, 8) - omega_d_sum(n, 2),
        RecursionName::CorB => {
            let odd_part: i64 = positive_pairs(n).into_iter().filter(|&(_, b)| b % 2 != 0).map(|(a, _)| a).sum();
            let mut signed = 0i64;
            if n % 2 == 0 {
                for (a, b) in positive_pairs(n / 2) {
                    if a < b && (a - b) % 2 != 0 {
                        signed += if a % 2 == 0 { a } else { -a };
                    }
                }
            }
            Rational::from(odd_part - 2 * signed)
        }
    }
}

/// Finite combinatorial identities behind the recursions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaName {
    Split1,
    T1irr,
    Key1Sum,
    Split2,
    S1gen,
    S2gen,
    Split3,
    Pt920b,
    RtildeDiff,
    E2Coeff,
}

impl LemmaName {
    pub const ALL: [LemmaName; 10] = [
        LemmaName::Split1,
        LemmaName::T1irr,
        LemmaName::Key1Sum,
        LemmaName::Split2,
        LemmaName::S1gen,
        LemmaName::S2gen,
        LemmaName::Split3,
        LemmaName::Pt920b,
        LemmaName::RtildeDiff,
        LemmaName::E2Coeff,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaName::Split1 => "split1",
            LemmaName::T1irr => "t1irr",
            LemmaName::Key1Sum => "key1-sum",
            LemmaName::Split2 => "split2",
            LemmaName::S1gen => "s1gen",
            LemmaName::S2gen => "s2gen",
            LemmaName::Split3 => "split3",
            LemmaName::Pt920b => "pt920b",
            LemmaName::RtildeDiff => "rtilde-diff",
            LemmaName::E2Coeff => "e2-coeff",
        }
    }
}

impl fmt::Display for LemmaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaName::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown lemma {s:?}")))
    }
}

fn odd_diff(a: i64, b: i64) -> bool {
    (a - b) % 2 != 0
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

/// `S₁(n)`.
pub fn s1(n: i64) -> i64 {
    let c = |a: i64, b: i64| divides(12, 3 * a - b - 2) || divides(12, 3 * a - b + 2);
    positive_pairs(4 * n + 1).into_iter().filter(|&(a, b)| b <= 3 * a - 2 && c(a, b)).map(|(_, b)| b).sum()
}

/// `S₂(n)`.
pub fn s2(n: i64) -> i64 {
    let c = |a: i64, b: i64| divides(12, 3 * a - b - 2) || divides(12, 3 * a - b + 2);
    positive_pairs(4 * n + 1).into_iter().filter(|&(a, b)| b >= 3 * a + 2 && c(a, b)).map(|(a, _)| a).sum()
}

/// Generating series used by the lemma checks, built once per order.
pub struct LemmaContext {
    order: i64,
    mocks: MockTable,
    s1: OnceLock<QSeries>,
    s2: OnceLock<QSeries>,
    rtilde: OnceLock<QSeries>,
}

fn lambert_series(spec: &BilateralSpec, order: i64) -> QSeries {
    bilateral_sum(spec, order).expect("pole-free sum").num
}

impl LemmaContext {
    /// Supports `lemma_check` for `1 ≤ n < order`.
    pub fn new(order: i64) -> Self {
        LemmaContext {
            order,
            mocks: MockTable::new(order),
            s1: OnceLock::new(),
            s2: OnceLock::new(),
            rtilde: OnceLock::new(),
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// `Σ_l (6l+1) q^{3l²+2l} / (1 - q^{6l+1})`.
    pub fn s1_series(&self) -> &QSeries {
        self.s1.get_or_init(|| {
            let spec = BilateralSpec::quad(3, 2, 0).weight(1, 6).denom(Monomial::q(1), 6, 1);
            lambert_series(&spec, self.order)
        })
    }

    /// `Σ_l (2l-1) q^{3l²+2l-2} / (1 - q^{6l-3})`.
    pub fn s2_series(&self) -> &QSeries {
        self.s2.get_or_init(|| {
            let spec = BilateralSpec::quad(3, 2, -2).weight(-1, 2).denom(Monomial::q(-3), 6, 1);
            lambert_series(&spec, self.order)
        })
    }

    /// `Σ_{k≥1} 2k q^{4k}/(1-q^{4k}) + Σ_{k≥1} (2k-1) q^{2k-1}/(1-q^{4k-2})`.
    pub fn rtilde_series(&self) -> &QSeries {
        self.rtilde.get_or_init(|| {
            let a = BilateralSpec::quad(0, 4, 0).weight(0, 2).denom(Monomial::one(), 4, 1).from(1);
            let b = BilateralSpec::quad(0, 2, -1).weight(-1, 2).denom(Monomial::q(-2), 4, 1).from(1);
            lambert_series(&a, self.order).add(&lambert_series(&b, self.order))
        })
    }

    fn coeff(s: &QSeries, n: i64) -> Rational {
        s.rational_at(n).expect("univariate")
    }

    /// `Σ_m (3m+1) c(ω(-q); n - 3m² - 2m - 1)`.
    fn omega_neg_sum(&self, n: i64) -> Rational {
        let mut acc = Rational::zero();
        for m in m_range(n, |m| 3 * m * m + 2 * m + 1) {
            let k = n - 3 * m * m - 2 * m - 1;
            let c = self.mocks.c(MockName::Omega, &int(k)) * sign_pow(k);
            acc += int(3 * m + 1) * c;
        }
        acc
    }

    /// Both sides of the named identity at `n`.
    pub fn sides(&self, name: LemmaName, n: i64) -> Vec<(Rational, Rational)> {
        assert!(n >= 1 && n < self.order, "n outside the context range");
        let pos = positive_pairs;
        match name {
            LemmaName::Split1 => {
                let l = t1id_d_sum(n);
                let r = rat(1, 3)
                    * int(pos(2 * n).into_iter().filter(|&(a, b)| b < 3 * a && odd_diff(a, b)).map(|(_, b)| b).sum())
                    - int(pos(2 * n).into_iter().filter(|&(a, b)| b > 3 * a && odd_diff(a, b)).map(|(a, _)| a).sum());
                vec![(l, r)]
            }
            LemmaName::T1irr => {
                let big = |(a, b): &(i64, i64)| odd_diff(*a, *b) && *b > 3 * *a;
                let small = |(a, b): &(i64, i64)| odd_diff(*a, *b) && *b < 3 * *a;
                let head = int(3) * sigma_frac(n, 1) - int(4) * sigma_frac(n, 2);
                let l = int(pos(2 * n).iter().filter(|p| big(p)).map(|p| p.1).sum());
                let r = head.clone() - int(pos(2 * n).iter().filter(|p| small(p)).map(|p| p.1).sum());
                let total = int(pos(2 * n).iter().filter(|p| odd_diff(p.0, p.1)).map(|p| p.1).sum());
                vec![(l, r), (head, total)]
            }
            LemmaName::Key1Sum => {
                let mut l = Rational::zero();
                for m in m_range(2 * n, |m| 3 * m * m + m) {
                    let arg = int(n) - rat(3, 2) * int(m * m) - rat(1, 2) * int(m);
                    l += int(6 * m + 1) * self.mocks.c(MockName::F, &arg);
                }
                let r = int(-4) * sigma_frac(n, 1) - int(16) * sigma_frac(n, 2)
                    + int(4)
                        * int(pos(2 * n)
                            .into_iter()
                            .filter(|&(a, b)| b > 3 * a && odd_diff(a, b))
                            .map(|(a, b)| 3 * a + b)
                            .sum());
                vec![(l, r)]
            }
            LemmaName::Split2 => vec![(int(-6) * t9_d_sum(n), int(s1(n) - 3 * s2(n)))],
            LemmaName::S1gen => vec![(int(s1(n)), Self::coeff(self.s1_series(), n))],
            LemmaName::S2gen => vec![(int(s2(n)), Self::coeff(self.s2_series(), n))],
            LemmaName::Split3 => {
                let c = |a: i64, b: i64| divides(12, 3 * a - b - 4) || divides(12, 3 * a - b + 4);
                let m = 4 * n + 3;
                let r: i64 =
                    pos(m).into_iter().filter(|&(a, b)| b >= 3 * a + 2 && c(a, b)).map(|(a, _)| 3 * a).sum::<i64>()
                        - pos(m).into_iter().filter(|&(a, b)| b < 3 * a && c(a, b)).map(|(_, b)| b).sum::<i64>();
                vec![(int(6) * t919_d_sum(n), int(r))]
            }
            LemmaName::Pt920b => {
                let l = self.omega_neg_sum(n);
                let six_r = int(6) * r_n(n);
                let mod12 = |a: i64, b: i64| matches!((a - 3 * b).rem_euclid(12), 2 | 4 | 8 | 10);
                let even = |a: i64, b: i64| (a - b) % 2 == 0;
                let form = |cond: &dyn Fn(i64, i64) -> bool, lo: i64, hi: i64| {
                    let minus: i64 =
                        pos(n).into_iter().filter(|&(a, b)| a <= 3 * b + lo && cond(a, b)).map(|(a, _)| a).sum();
                    let plus: i64 =
                        pos(n).into_iter().filter(|&(a, b)| a >= 3 * b + hi && cond(a, b)).map(|(_, b)| 3 * b).sum();
                    six_r.clone() - int(minus) + int(plus)
                };
                vec![(l.clone(), form(&mod12, -1, 1)), (l.clone(), form(&even, -1, 1)), (l, form(&even, 0, 0))]
            }
            LemmaName::RtildeDiff => {
                let l = int(6) * (r_n(n) - r_tilde(n));
                let e = int(pos(n).into_iter().filter(|&(a, b)| (a - b) % 2 == 0).map(|(a, _)| a).sum());
                vec![(l.clone(), e), (l, Self::coeff(self.rtilde_series(), n))]
            }
            LemmaName::E2Coeff => {
                let l = self.omega_neg_sum(n);
                let even = |a: i64, b: i64| (a - b) % 2 == 0;
                let x: i64 = pos(n).into_iter().filter(|&(a, b)| a > 3 * b && even(a, b)).map(|(a, _)| a).sum();
                let y: i64 = pos(n).into_iter().filter(|&(a, b)| a > 3 * b - 2 && even(a, b)).map(|(_, b)| 3 * b).sum();
                vec![(l, int(6) * r_tilde(n) + int(x) + int(y))]
            }
        }
    }

    pub fn check(&self, name: LemmaName, n: i64) -> bool {
        self.sides(name, n).iter().all(|(l, r)| l == r)
    }
}

/// All integers `m` with `bound(m) ≤ limit`, for a convex quadratic `bound`.
pub fn m_range(limit: i64, bound: impl Fn(i64) -> i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut m = 0;
    while bound(m) <= limit || bound(m + 1) <= limit {
        if bound(m) <= limit {
            out.push(m);
        }
        m += 1;
    }
    let mut m = -1;
    while bound(m) <= limit || bound(m - 1) <= limit {
        if bound(m) <= limit {
            out.push(m);
        }
        m -= 1;
    }
    out.sort_unstable();
    out
}

/// Evaluates the named lemma at a single `n ≥ 1`.
pub fn lemma_check(name: LemmaName, n: i64) -> bool {
    LemmaContext::new(n + 1).check(name, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_convention() {
        assert_eq!(sigma(&rat(1, 1)), 1);
        assert_eq!(sigma(&rat(6, 1)), 12);
        assert_eq!(sigma(&rat(3, 2)), 0);
        assert_eq!(sigma(&rat(0, 1)), 0);
        assert_eq!(sigma(&rat(-4, 1)), 0);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    fn d_weight_values() {
        let d = |n, nt| d_weight(&DWeightArgs::new(n, nt, rat(1, 6), rat(1, 6)));
        assert_eq!(d(rat(-1, 1), rat(1, 1)), rat(1, 3));
        assert_eq!(d(rat(0, 1), rat(-1, 1)), rat(2, 3));
        assert_eq!(d(rat(5, 7), rat(5, 7)), Rational::zero());
    }

    #[test]
    fn signed_pairs() {
        assert_eq!(signed_divisor_pairs(2).unwrap(), vec![(1, 2), (2, 1), (-1, -2), (-2, -1)]);
        assert_eq!(signed_divisor_pairs(1).unwrap(), vec![(1, 1), (-1, -1)]);
        assert_eq!(signed_divisor_pairs(-3).unwrap(), vec![(1, -3), (3, -1), (-1, 3), (-3, 1)]);
        assert!(matches!(signed_divisor_pairs(0), Err(Error::UnboundedFactorization)));
    }

    #[test]
    fn r_values() {
        assert_eq!(r_n(1), rat(1, 3));
        assert_eq!(r_n(2), rat(-2, 3));
        assert_eq!(r_n(4), rat(-4, 3));
        assert_eq!(r_tilde(1), rat(1, 6));
    }

    #[test]
    fn theorem_one_at_one() {
        assert_eq!(rhs_theorem(RecursionName::T1id, 1), rat(-2, 3));
    }

    #[test]
    fn m_ranges() {
        assert_eq!(m_range(2, |m| 3 * m * m + m), vec![-1, 0]);
        assert_eq!(m_range(-1, |m| 3 * m * m + m), Vec::<i64>::new());
        assert_eq!(m_range(4, |m| 3 * m * m + 2 * m), vec![-1, 0]);
    }

    #[test]
    fn names_round_trip() {
        for r in RecursionName::ALL {
            assert_eq!(r.as_str().parse::<RecursionName>().unwrap(), r);
        }
        for l in LemmaName::ALL {
            assert_eq!(l.as_str().parse::<LemmaName>().unwrap(), l);
        }
    }

    #[test]
    fn lemmas_small_n() {
        let ctx = LemmaContext::new(40);
        for name in LemmaName::ALL {
            for n in 1..40 {
                assert!(ctx.check(name, n), "{name} at n = {n}: {:?}", ctx.sides(name, n));
            }
        }
        assert!(lemma_check(LemmaName::Split1, 1));
    }
}
