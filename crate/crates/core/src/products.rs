//! q-Pochhammer symbols, infinite products and theta brackets with monomial
//! arguments in base `q^B`.
//!
//! All products are assembled through [`Quotient`], which sorts every factor
//! `1 - u` by the q-exponent of `u`: positive exponents are applied as series
//! factors, negative ones are flipped to `-u·(1 - u⁻¹)`, and `q⁰` factors become
//! scalars, polynomial factors, or pole factors.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::poles::{normalize_factor, PoleSeries, PoleSet};
use crate::rational::Rational;
use crate::scaled::ScaledSeries;
use crate::series::QSeries;

/// Length of a Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

/// `(arg; q^step)_length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpec {
    pub arg: Monomial,
    pub step: i64,
    pub length: Length,
}

/// A product value, with vanishing products flagged instead of expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Product {
    Zero,
    Value(QSeries),
}

impl Product {
    pub fn is_zero(&self) -> bool {
        matches!(self, Product::Zero)
    }

    /// The series, with a flagged zero rendered as the zero series.
    pub fn into_series(self, order: i64) -> QSeries {
        match self {
            Product::Zero => QSeries::zero(order - 1, order),
            Product::Value(s) => s,
        }
    }
}

/// `Π_{k<n} (1 - a q^{Bk})`.
pub fn poch_finite(a: &Monomial, n: u64, step: i64, order: i64) -> QSeries {
    let spec = ProductSpec { arg: a.clone(), step, length: Length::Finite(n) };
    match Quotient::new().product(spec, 1).build(order) {
        Ok(p) => p.num,
        Err(e) => unreachable!("numerator-only product failed: {e}"),
    }
}

/// `(a; q^B)_∞`.
pub fn poch_inf(a: &Monomial, step: i64, order: i64) -> Product {
    let spec = ProductSpec { arg: a.clone(), step, length: Length::Infinite };
    Quotient::new().product(spec, 1).build_product(order)
}

/// `Π_i (a_i; q^B)_∞ (q^B/a_i; q^B)_∞`.
pub fn bracket_inf(args: &[Monomial], step: i64, order: i64) -> Product {
    let mut q = Quotient::new();
    for a in args {
        q = q.bracket(a, step, 1);
    }
    q.build_product(order)
}

#[derive(Debug, Clone)]
struct Part {
    spec: ProductSpec,
    exponent: i32,
}

/// A monomial times a ratio of Pochhammer products.
#[derive(Debug, Clone)]
pub struct Quotient {
    prefactor: Monomial,
    parts: Vec<Part>,
}

impl Default for Quotient {
    fn default() -> Self {
        Self::new()
    }
}

/// Factors of one side after classification.
#[derive(Default)]
struct Plan {
    /// qexp > 0 factors applied as `(1 - u)^{±1}`; `(u, step, count)` where
    /// `count = None` means the run continues until the window ends.
    runs: Vec<(Monomial, i64, Option<u64>, i32)>,
    poly: LaurentPoly,
    shift: Option<Monomial>,
    poles: PoleSet,
    zero: bool,
    degenerate: Option<String>,
}

impl Plan {
    fn new() -> Self {
        Plan { poly: LaurentPoly::one(), shift: Some(Monomial::one()), ..Default::default() }
    }

    fn shift_by(&mut self, m: &Monomial) {
        let s = self.shift.take().unwrap();
        self.shift = Some(s.mul(m));
    }

    /// Records `(1 - u)^e` for a single factor.
    fn factor(&mut self, u: &Monomial, e: i32) {
        if u.qexp > 0 {
            self.runs.push((u.clone(), 1, Some(1), e));
        } else if u.qexp < 0 {
            // 1 - u = -u (1 - u^{-1})
            self.shift_by(&u.neg().pow(e as i64));
            self.runs.push((u.recip(), 1, Some(1), e));
        } else if u.xdeg == 0 {
            let f = Rational::one() - &u.coeff;
            if f.is_zero() {
                if e > 0 {
                    self.zero = true;
                } else {
                    self.degenerate = Some(format!("vanishing denominator factor 1 - {u}"));
                }
            } else {
                self.shift_by(&Monomial::constant(f.pow(e as i64)));
            }
        } else if e > 0 {
            for _ in 0..e {
                self.poly = self.poly.mul(&LaurentPoly::binomial(&u.coeff, u.xdeg));
            }
        } else {
            let ((uc, ud), fs) = normalize_factor(&u.coeff, u.xdeg);
            for f in fs {
                self.poles.insert(f, (-e) as u32);
            }
            self.shift_by(&Monomial::new(uc, ud, 0).pow(e as i64));
        }
    }

    fn product(&mut self, spec: &ProductSpec, e: i32) {
        let step = spec.step;
        assert!(step >= 1, "product step must be positive");
        let mut k: u64 = 0;
        loop {
            if let Length::Finite(n) = spec.length {
                if k >= n {
                    return;
                }
            }
            let u = spec.arg.times_q(step * k as i64);
            if u.qexp > 0 {
                let count = match spec.length {
                    Length::Finite(n) => Some(n - k),
                    Length::Infinite => None,
                };
                self.runs.push((u, step, count, e));
                return;
            }
            self.factor(&u, e);
            k += 1;
        }
    }
}

impl Quotient {
    pub fn new() -> Self {
        Quotient { prefactor: Monomial::one(), parts: Vec::new() }
    }

    /// Multiplies by a monomial.
    pub fn times(mut self, m: &Monomial) -> Self {
        self.prefactor = self.prefactor.mul(m);
        self
    }

    /// Multiplies by `spec^exponent`; negative exponents divide.
    pub fn product(mut self, spec: ProductSpec, exponent: i32) -> Self {
        if exponent != 0 {
            self.parts.push(Part { spec, exponent });
        }
        self
    }

    /// `(a; q^B)_∞^e`.
    pub fn poch(self, a: &Monomial, step: i64, exponent: i32) -> Self {
        self.product(ProductSpec { arg: a.clone(), step, length: Length::Infinite }, exponent)
    }

    /// `(a; q^B)_n^e`.
    pub fn poch_n(self, a: &Monomial, n: u64, step: i64, exponent: i32) -> Self {
        self.product(ProductSpec { arg: a.clone(), step, length: Length::Finite(n) }, exponent)
    }

    /// `[a; q^B]_∞^e = ((a; q^B)_∞ (q^B/a; q^B)_∞)^e`.
    pub fn bracket(self, a: &Monomial, step: i64, exponent: i32) -> Self {
        let mirror = Monomial::q(step).div(a);
        self.poch(a, step, exponent).poch(&mirror, step, exponent)
    }

    fn plan(&self) -> Plan {
        let mut plan = Plan::new();
        plan.shift_by(&self.prefactor);
        for p in &self.parts {
            plan.product(&p.spec, p.exponent);
        }
        plan
    }

    /// Expands on a window ending at `order`, keeping `q⁰` poles symbolic.
    pub fn build(&self, order: i64) -> Result<PoleSeries> {
        let plan = self.plan();
        if let Some(msg) = plan.degenerate {
            return Err(Error::Degenerate(msg));
        }
        if plan.zero {
            return Ok(PoleSeries::new(QSeries::zero(order - 1, order), plan.poles));
        }
        let shift = plan.shift.expect("shift");
        let inner = order - shift.qexp;
        if inner < 1 {
            return Ok(PoleSeries::new(QSeries::zero(order - 1, order), plan.poles));
        }
        let fractional = plan.runs.iter().any(|(u, ..)| !u.coeff.is_integer());
        let mut s = QSeries::one(inner);
        let mut scaled = fractional.then(|| ScaledSeries::from_series(&s));
        for (u, step, count, e) in &plan.runs {
            let mut k = 0u64;
            loop {
                if count.is_some_and(|n| k >= n) {
                    break;
                }
                let f = u.times_q(step * k as i64);
                if f.qexp >= inner {
                    break;
                }
                for _ in 0..e.unsigned_abs() {
                    match scaled.as_mut() {
                        Some(z) if *e > 0 => z.mul_binomial(&f),
                        Some(z) => z.div_binomial(&f),
                        None if *e > 0 => s = s.mul_binomial(&f),
                        None => s = s.div_binomial(&f)?,
                    }
                }
                k += 1;
            }
        }
        if let Some(z) = scaled {
            s = z.to_series();
        }
        if !plan.poly.is_one() {
            s = s.mul_poly(&plan.poly);
        }
        Ok(PoleSeries::new(s.mul_monomial(&shift), plan.poles))
    }

    /// Expands a pole-free quotient; poles are reported as an error.
    pub fn build_series(&self, order: i64) -> Result<QSeries> {
        let p = self.build(order)?;
        if !p.poles.is_empty() {
            return Err(Error::Q0Pole(p.poles.to_string()));
        }
        Ok(p.num)
    }

    fn build_product(&self, order: i64) -> Product {
        if self.plan().zero {
            return Product::Zero;
        }
        match self.build_series(order) {
            Ok(s) => Product::Value(s),
            Err(e) => unreachable!("numerator-only product failed: {e}"),
        }
    }

    /// Whether the numerator vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.plan().zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn ints(s: &QSeries, n: i64) -> Vec<i64> {
        (0..n).map(|k| s.rational_at(k).unwrap().to_i64().unwrap()).collect()
    }

    #[test]
    fn finite_products() {
        let p = poch_finite(&Monomial::neg_q(1), 2, 1, 6);
        assert_eq!(ints(&p, 6), vec![1, 1, 1, 1, 0, 0]);
        let p = poch_finite(&Monomial::q(1), 1, 2, 4);
        assert_eq!(ints(&p, 4), vec![1, -1, 0, 0]);
        let p = poch_finite(&Monomial::x(), 2, 1, 3);
        let x = |c: i64, d: i64| (d, Rational::from(c));
        assert_eq!(p.at(0), LaurentPoly::from_terms([x(1, 0), x(-1, 1)]));
        assert_eq!(p.at(1), LaurentPoly::from_terms([x(-1, 1), x(1, 2)]));
    }

    #[test]
    fn euler_products() {
        let p = poch_inf(&Monomial::q(1), 1, 6).into_series(6);
        assert_eq!(ints(&p, 6), vec![1, -1, -1, 0, 0, 1]);
        let p = poch_inf(&Monomial::neg_q(1), 1, 5).into_series(5);
        assert_eq!(ints(&p, 5), vec![1, 1, 1, 2, 2]);
        let p = poch_inf(&Monomial::x(), 1, 3).into_series(3);
        assert_eq!(p.at(1), LaurentPoly::from_terms([(1, rat(-1, 1)), (2, rat(1, 1))]));
    }

    #[test]
    fn brackets() {
        let p = bracket_inf(&[Monomial::x()], 1, 3).into_series(3);
        assert_eq!(p.at(0), LaurentPoly::binomial(&rat(1, 1), 1));
        let p = bracket_inf(&[Monomial::constant(rat(-1, 1))], 1, 3).into_series(3);
        assert_eq!(p.rational_at(0), Some(rat(2, 1)));
        assert!(bracket_inf(&[Monomial::q(1)], 1, 5).is_zero());
        assert!(poch_inf(&Monomial::q(-2), 1, 5).is_zero());
    }

    #[test]
    fn vanishing_denominator_is_degenerate() {
        let q = Quotient::new().bracket(&Monomial::q(3), 1, -1);
        assert!(matches!(q.build(5), Err(Error::Degenerate(_))));
    }

    #[test]
    fn negative_valuation_products() {
        // (-1/q; q)_∞ = (1 + 1/q)(-1; q)_∞
        let p = poch_inf(&Monomial::new(rat(-1, 1), 0, -1), 1, 6).into_series(6);
        assert_eq!(p.val(), -1);
        assert_eq!(p.order(), 6);
        let tail = poch_inf(&Monomial::constant(rat(-1, 1)), 1, 8).into_series(8);
        let expected = QSeries::from_terms([(-1, LaurentPoly::one()), (0, LaurentPoly::one())], 9).mul(&tail);
        assert!(p.first_mismatch(&expected, 6).is_none());
    }

    proptest! {
        #[test]
        fn telescoping(c in -3i64..4, e in -3i64..4, step in 1i64..4, k in 0u64..5) {
            prop_assume!(c != 0);
            let a = Monomial::new(Rational::from(c), 0, e);
            let whole = poch_inf(&a, step, 20).into_series(20);
            let head = poch_finite(&a, k, step, 40);
            let tail = poch_inf(&a.times_q(step * k as i64), step, 40).into_series(40);
            let prod = head.mul(&tail);
            prop_assert!(whole.first_mismatch(&prod, 20).is_none());
        }

        #[test]
        fn reflection(c in 1i64..4, neg in any::<bool>(), e in 1i64..3, step in 3i64..5) {
            let c = if neg { -c } else { c };
            let a = Monomial::new(Rational::from(c), 0, e);
            let l = bracket_inf(std::slice::from_ref(&a), step, 25).into_series(25);
            let r = bracket_inf(&[Monomial::q(step).div(&a)], step, 25).into_series(25);
            prop_assert!(l.first_mismatch(&r, 25).is_none());
        }
    }
}
