//! The mock theta functions f, ω, B, ν₂ and F̃ in Eulerian and Appell–Lerch form.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lambert::{bilateral_sum, BilateralSpec};
use crate::laurent::Monomial;
use crate::products::Quotient;
use crate::rational::{rat, Rational};
use crate::series::{Parity, QSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MockName {
    F,
    Omega,
    B,
    Nu2,
    FTilde,
    OmegaEven,
    OmegaOdd,
}

impl MockName {
    pub const ALL: [MockName; 7] = [
        MockName::F,
        MockName::Omega,
        MockName::B,
        MockName::Nu2,
        MockName::FTilde,
        MockName::OmegaEven,
        MockName::OmegaOdd,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MockName::F => "f",
            MockName::Omega => "omega",
            MockName::B => "B",
            MockName::Nu2 => "nu2",
            MockName::FTilde => "Ftilde",
            MockName::OmegaEven => "omegaEven",
            MockName::OmegaOdd => "omegaOdd",
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }

    /// Whether an Appell–Lerch form is available.
    pub fn has_appell_form(&self) -> bool {
        matches!(self, MockName::F | MockName::Omega | MockName::B)
    }
}

impl fmt::Display for MockName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MockName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MockName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown function {s:?}")))
    }
}

fn unit_series(s: Result<QSeries>) -> QSeries {
    s.expect("pole-free construction")
}

/// `Σ q^{n²} / (-q;q)_n²`.
fn eulerian_f(order: i64) -> QSeries {
    let mut acc = QSeries::zero(0, order);
    let mut r = QSeries::one(order);
    let mut n = 0i64;
    while n * n < order {
        if n > 0 {
            let u = Monomial::neg_q(n);
            r = unit_series(r.div_binomial(&u).and_then(|s| s.div_binomial(&u)));
        }
        acc = acc.add(&r.mul_monomial(&Monomial::q(n * n)).truncate(order));
        n += 1;
    }
    acc
}

/// `Σ q^{2n(n+1)} / (q;q²)_{n+1}²`.
fn eulerian_omega(order: i64) -> QSeries {
    let mut acc = QSeries::zero(0, order);
    let mut r = QSeries::one(order);
    let mut n = 0i64;
    while 2 * n * (n + 1) < order {
        let u = Monomial::q(2 * n + 1);
        r = unit_series(r.div_binomial(&u).and_then(|s| s.div_binomial(&u)));
        acc = acc.add(&r.mul_monomial(&Monomial::q(2 * n * (n + 1))).truncate(order));
        n += 1;
    }
    acc
}

/// `Σ q^n (-q;q²)_n / (q;q²)_{n+1}`.
fn eulerian_b(order: i64) -> QSeries {
    let mut acc = QSeries::zero(0, order);
    let mut r = QSeries::one(order);
    let mut n = 0i64;
    while n < order {
        if n > 0 {
            r = r.mul_binomial(&Monomial::neg_q(2 * n - 1));
        }
        r = unit_series(r.div_binomial(&Monomial::q(2 * n + 1)));
        acc = acc.add(&r.mul_monomial(&Monomial::q(n)).truncate(order));
        n += 1;
    }
    acc
}

fn sum_series(spec: &BilateralSpec, order: i64) -> QSeries {
    unit_series(bilateral_sum(spec, order).map(|p| p.num))
}

fn product(q: Quotient, order: i64) -> QSeries {
    unit_series(q.build_series(order))
}

/// `(q)_∞^{-3} (Σ_{n≠0} (-1)^{n+1} n q^{n(n+1)/2}/(1-q^n) - 1/4 - 2 Σ_{n≥1} q^n/(1+q^n)²)`.
fn nu2(order: i64) -> QSeries {
    let a = BilateralSpec::half(1, 1, 0).weight(0, -1).alternating().denom(Monomial::one(), 1, 1).except_zero();
    let b = BilateralSpec::quad(0, 1, 0).denom(Monomial::constant(rat(-1, 1)), 1, 2).from(1);
    let inner = sum_series(&a, order)
        .add(&QSeries::constant(rat(-1, 4), order))
        .add_scaled(&sum_series(&b, order), &rat(-2, 1));
    inner.mul(&product(Quotient::new().poch(&Monomial::q(1), 1, -3), order))
}

/// `Σ_n q^{n(n+1)/2}/(1+q^n) / ((q)_∞ (-q)²_∞)`.
fn f_tilde(order: i64) -> QSeries {
    let s = BilateralSpec::half(1, 1, 0).denom(Monomial::constant(rat(-1, 1)), 1, 1);
    let p = Quotient::new().poch(&Monomial::q(1), 1, -1).poch(&Monomial::neg_q(1), 1, -2);
    sum_series(&s, order).mul(&product(p, order))
}

/// The defining q-hypergeometric series.
pub fn eulerian_series(name: MockName, order: i64) -> QSeries {
    assert!(order >= 1, "order must be positive");
    match name {
        MockName::F => eulerian_f(order),
        MockName::Omega => eulerian_omega(order),
        MockName::B => eulerian_b(order),
        MockName::Nu2 => nu2(order),
        MockName::FTilde => f_tilde(order),
        MockName::OmegaEven => parity_part(&eulerian_omega(order), Parity::Even).expect("univariate"),
        MockName::OmegaOdd => parity_part(&eulerian_omega(order), Parity::Odd).expect("univariate"),
    }
}

/// The Appell–Lerch sum representation of f, ω and B.
pub fn appell_form(name: MockName, order: i64) -> Result<QSeries> {
    let (sum, prod) = match name {
        MockName::F => (
            BilateralSpec::half(3, 1, 0).alternating().denom(Monomial::constant(rat(-1, 1)), 1, 1).weight(2, 0),
            Quotient::new().poch(&Monomial::q(1), 1, -1),
        ),
        MockName::Omega => (
            BilateralSpec::quad(3, 3, 0).alternating().denom(Monomial::q(1), 2, 1),
            Quotient::new().poch(&Monomial::q(2), 2, -1),
        ),
        MockName::B => (
            BilateralSpec::quad(2, 3, 0).alternating().denom(Monomial::q(1), 4, 1),
            Quotient::new().poch(&Monomial::q(1), 4, -1).poch(&Monomial::q(3), 4, -1).poch(&Monomial::q(4), 4, -1),
        ),
        other => return Err(Error::InvalidParams(format!("no Appell-Lerch form for {other}"))),
    };
    let s = bilateral_sum(&sum, order)?.num;
    Ok(s.mul(&prod.build_series(order)?).truncate(order))
}

pub fn parity_part(a: &QSeries, parity: Parity) -> Result<QSeries> {
    a.parity_part(parity)
}

/// `c(name; n)`: the q^n coefficient, and 0 for negative or non-integral n.
pub fn coeff_c(name: MockName, n: &Rational) -> Rational {
    match n.to_i64() {
        Some(k) if k >= 0 => eulerian_series(name, k + 1).rational_at(k).expect("univariate"),
        _ => Rational::zero(),
    }
}

/// Lazily built coefficient tables to a fixed order.
pub struct MockTable {
    order: i64,
    cells: [OnceLock<QSeries>; 7],
}

impl MockTable {
    pub fn new(order: i64) -> Self {
        MockTable { order, cells: Default::default() }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn series(&self, name: MockName) -> &QSeries {
        self.cells[name.index()].get_or_init(|| match name {
            MockName::OmegaEven => parity_part(self.series(MockName::Omega), Parity::Even).expect("univariate"),
            MockName::OmegaOdd => parity_part(self.series(MockName::Omega), Parity::Odd).expect("univariate"),
            other => eulerian_series(other, self.order),
        })
    }

    /// `c(name; n)` with the same conventions as [`coeff_c`]. Panics beyond the table.
    pub fn c(&self, name: MockName, n: &Rational) -> Rational {
        match n.to_i64() {
            Some(k) if k >= 0 => self.series(name).rational_at(k).expect("univariate"),
            _ => Rational::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: i64) -> Vec<i64> {
        (0..n).map(|k| s.rational_at(k).unwrap().to_i64().unwrap()).collect()
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(ints(&eulerian_series(MockName::F, 10), 10), vec![1, 1, -2, 3, -3, 3, -5, 7, -6, 6]);
        assert_eq!(ints(&eulerian_series(MockName::Omega, 10), 10), vec![1, 2, 3, 4, 6, 8, 10, 14, 18, 22]);
        assert_eq!(ints(&eulerian_series(MockName::B, 12), 12), vec![1, 2, 4, 6, 9, 14, 20, 28, 40, 54, 72, 98]);
    }

    #[test]
    fn coefficient_convention() {
        assert_eq!(coeff_c(MockName::F, &rat(0, 1)), rat(1, 1));
        assert_eq!(coeff_c(MockName::F, &rat(3, 2)), Rational::zero());
        assert_eq!(coeff_c(MockName::F, &rat(2, 1)), rat(-2, 1));
        assert_eq!(coeff_c(MockName::F, &rat(-1, 1)), Rational::zero());
        assert_eq!(coeff_c(MockName::B, &rat(0, 1)), rat(1, 1));
        let t = MockTable::new(20);
        assert_eq!(t.c(MockName::Omega, &rat(4, 1)), rat(6, 1));
        assert_eq!(t.c(MockName::OmegaOdd, &rat(4, 1)), Rational::zero());
    }

    #[test]
    fn appell_forms_agree() {
        for name in [MockName::F, MockName::Omega, MockName::B] {
            let a = appell_form(name, 60).unwrap();
            let e = eulerian_series(name, 60);
            assert!(a.first_mismatch(&e, 60).is_none(), "{name}");
        }
        assert!(appell_form(MockName::Nu2, 10).is_err());
    }

    #[test]
    fn f_tilde_is_minus_twice_nu2() {
        let a = eulerian_series(MockName::FTilde, 80);
        let b = eulerian_series(MockName::Nu2, 80).scale(&rat(-2, 1));
        assert!(a.first_mismatch(&b, 80).is_none());
    }
}
