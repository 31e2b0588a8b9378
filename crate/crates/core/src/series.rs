//! Truncated Laurent series in `q` with Laurent-polynomial coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::rational::Rational;
use crate::scaled::{has_fractions, ScaledSeries};

/// `Σ_{v ≤ n < N} c_n(x) q^n + O(q^N)`.
///
/// Every coefficient below `v` is exactly zero; everything at or above the
/// order `N` is unknown.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    val: i64,
    coeffs: Vec<LaurentPoly>,
}

/// Target of [`QSeries::subst_x`]: `x ↦ sign·q^qexp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XTarget {
    pub sign: i8,
    pub qexp: i64,
}

impl XTarget {
    pub fn constant(sign: i8) -> Self {
        XTarget { sign, qexp: 0 }
    }

    pub fn q_power(sign: i8, qexp: i64) -> Self {
        XTarget { sign, qexp }
    }
}

/// Which q-powers [`QSeries::parity_part`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// First exponent at which two series differ, with both coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: i64,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

fn all_x_free(cs: &[LaurentPoly]) -> bool {
    cs.iter().all(LaurentPoly::is_x_free)
}

fn constants(cs: &[LaurentPoly]) -> Vec<Rational> {
    cs.iter().map(|c| c.as_constant().expect("x-free")).collect()
}

fn wrap(cs: Vec<Rational>) -> Vec<LaurentPoly> {
    cs.into_iter().map(LaurentPoly::constant).collect()
}

impl QSeries {
    /// Window `[val, val + coeffs.len())`. Panics on an empty window.
    pub fn new(val: i64, coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty(), "empty truncation window");
        QSeries { val, coeffs }
    }

    pub fn from_rationals(val: i64, coeffs: Vec<Rational>) -> Self {
        Self::new(val, wrap(coeffs))
    }

    /// The zero series on `[val, order)`.
    pub fn zero(val: i64, order: i64) -> Self {
        assert!(order > val, "empty truncation window");
        Self::new(val, vec![LaurentPoly::zero(); (order - val) as usize])
    }

    /// An exact finite sum `Σ p_e q^e`, truncated at `order`.
    pub fn from_terms<I: IntoIterator<Item = (i64, LaurentPoly)>>(terms: I, order: i64) -> Self {
        let terms: Vec<(i64, LaurentPoly)> = terms.into_iter().filter(|(e, p)| *e < order && !p.is_zero()).collect();
        let val = terms.iter().map(|t| t.0).min().unwrap_or(order - 1).min(order - 1);
        let mut s = Self::zero(val, order);
        for (e, p) in terms {
            let slot = &mut s.coeffs[(e - val) as usize];
            *slot = &*slot + &p;
        }
        s
    }

    pub fn monomial(m: &Monomial, order: i64) -> Self {
        Self::from_terms([(m.qexp, m.x_part())], order)
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        Self::from_terms([(0, LaurentPoly::constant(c))], order)
    }

    pub fn one(order: i64) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn order(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// The stored coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Result<LaurentPoly> {
        self.get(n).cloned().ok_or(Error::OutsideWindow { n, val: self.val, order: self.order() })
    }

    pub fn get(&self, n: i64) -> Option<&LaurentPoly> {
        if n < self.val {
            return None;
        }
        self.coeffs.get((n - self.val) as usize)
    }

    /// Coefficient of `q^n`, zero below the window. Panics at or above the order.
    pub fn at(&self, n: i64) -> LaurentPoly {
        assert!(n < self.order(), "q^{n} beyond truncation order {}", self.order());
        self.get(n).cloned().unwrap_or_default()
    }

    /// The x-free coefficient of `q^n` (zero below the window).
    pub fn rational_at(&self, n: i64) -> Option<Rational> {
        self.at(n).as_constant()
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_x_free(&self) -> bool {
        all_x_free(&self.coeffs)
    }

    /// Exponent of the first nonzero coefficient, if any.
    pub fn leading_exponent(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.val + i as i64)
    }

    /// Raises the valuation past leading zeros, keeping a nonempty window.
    pub fn normalized(&self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count().min(self.coeffs.len() - 1);
        QSeries { val: self.val + skip as i64, coeffs: self.coeffs[skip..].to_vec() }
    }

    /// Lowers the order to `min(order, self.order())`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        if order <= self.val {
            return Self::zero(order - 1, order);
        }
        QSeries { val: self.val, coeffs: self.coeffs[..(order - self.val) as usize].to_vec() }
    }

    fn map_coeffs(&self, f: impl Fn(i64, &LaurentPoly) -> LaurentPoly) -> Self {
        QSeries {
            val: self.val,
            coeffs: self.coeffs.iter().enumerate().map(|(i, c)| f(self.val + i as i64, c)).collect(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add_scaled(other, &-Rational::one())
    }

    /// `self + c·other` on `[min v, min N)`.
    pub fn add_scaled(&self, other: &QSeries, c: &Rational) -> QSeries {
        let val = self.val.min(other.val);
        let order = self.order().min(other.order());
        if order <= val {
            return Self::zero(order - 1, order);
        }
        let mut out = Self::zero(val, order);
        for n in val..order {
            let slot = &mut out.coeffs[(n - val) as usize];
            if let Some(a) = self.get(n) {
                *slot = a.clone();
            }
            if let Some(b) = other.get(n) {
                slot.add_scaled(b, c, 0);
            }
        }
        out
    }

    pub fn neg(&self) -> QSeries {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        self.map_coeffs(|_, p| p.scale(c))
    }

    /// Multiplies every coefficient by a Laurent polynomial in `x`.
    pub fn mul_poly(&self, p: &LaurentPoly) -> QSeries {
        self.map_coeffs(|_, a| a.mul(p))
    }

    /// Multiplies by `c·x^d·q^m`; the window moves by `m`.
    pub fn mul_monomial(&self, m: &Monomial) -> QSeries {
        QSeries { val: self.val + m.qexp, coeffs: self.coeffs.iter().map(|a| a.mul_term(&m.coeff, m.xdeg)).collect() }
    }

    /// Cauchy product with order `min(N_a + v_b, N_b + v_a)` over effective valuations.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let a = self.normalized();
        let b = other.normalized();
        let val = a.val + b.val;
        let order = (a.order() + b.val).min(b.order() + a.val);
        let len = (order - val) as usize;
        let (la, lb) = (a.coeffs.len(), b.coeffs.len());
        if has_fractions(&a) || has_fractions(&b) {
            let (sa, sb) = (ScaledSeries::from_series(&a), ScaledSeries::from_series(&b));
            return sa.mul(&sb, val, order).to_series();
        }
        if all_x_free(&a.coeffs) && all_x_free(&b.coeffs) {
            let (ra, rb) = (constants(&a.coeffs), constants(&b.coeffs));
            let mut out = vec![Rational::zero(); len];
            for (i, x) in ra.iter().enumerate().take(len) {
                if x.is_zero() {
                    continue;
                }
                for j in 0..lb.min(len - i) {
                    out[i + j].add_mul(x, &rb[j]);
                }
            }
            return Self::from_rationals(val, out);
        }
        let mut out = vec![LaurentPoly::zero(); len];
        for i in 0..la.min(len) {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..lb.min(len - i) {
                out[i + j].add_product(&a.coeffs[i], &b.coeffs[j]);
            }
        }
        Self::new(val, out)
    }

    pub fn pow(&self, e: u32) -> QSeries {
        if e == 0 {
            return Self::one(self.order().max(1));
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse when the leading coefficient is a monomial in `x`.
    pub fn inv_unit(&self) -> Result<QSeries> {
        let a = self.normalized();
        let (c, d) = a.coeffs[0].as_monomial().ok_or(Error::NonUnitLeading)?;
        let cinv = c.recip();
        let m = a.coeffs.len();
        if all_x_free(&a.coeffs) {
            let ra: Vec<Rational> = constants(&a.coeffs).iter().map(|r| r * &cinv).collect();
            let mut b = vec![Rational::zero(); m];
            b[0] = Rational::one();
            for n in 1..m {
                let mut s = Rational::zero();
                for i in 1..=n {
                    if !ra[i].is_zero() {
                        s.add_mul(&ra[i], &b[n - i]);
                    }
                }
                b[n] = -s;
            }
            let out = b.into_iter().map(|r| &r * &cinv).collect();
            return Ok(Self::from_rationals(-a.val, out));
        }
        let ra: Vec<LaurentPoly> = a.coeffs.iter().map(|p| p.mul_term(&cinv, -d)).collect();
        let mut b = vec![LaurentPoly::zero(); m];
        b[0] = LaurentPoly::one();
        for n in 1..m {
            let mut s = LaurentPoly::zero();
            for i in 1..=n {
                s.add_product(&ra[i], &b[n - i]);
            }
            b[n] = -&s;
        }
        let out = b.into_iter().map(|p| p.mul_term(&cinv, -d)).collect();
        Ok(Self::new(-a.val, out))
    }

    /// Multiplies by `(1 - u)`.
    pub fn mul_binomial(&self, u: &Monomial) -> QSeries {
        let m = u.qexp;
        if m == 0 {
            return self.mul_poly(&LaurentPoly::binomial(&u.coeff, u.xdeg));
        }
        let val = self.val + m.min(0);
        let order = self.order() + m.min(0);
        let mut out = Self::zero(val, order);
        for n in val..order {
            let slot = &mut out.coeffs[(n - val) as usize];
            if let Some(a) = self.get(n) {
                *slot = a.clone();
            }
            if let Some(a) = self.get(n - m) {
                slot.add_scaled(a, &-&u.coeff, u.xdeg);
            }
        }
        out
    }

    /// Divides by `(1 - u)`, expanding geometrically in whichever direction converges.
    pub fn div_binomial(&self, u: &Monomial) -> Result<QSeries> {
        let m = u.qexp;
        if m == 0 {
            if u.xdeg != 0 {
                return Err(Error::Q0Pole(u.x_part().to_string()));
            }
            let f = Rational::one() - &u.coeff;
            if f.is_zero() {
                return Err(Error::ExactPole(0));
            }
            return Ok(self.scale(&f.recip()));
        }
        if m < 0 {
            let w = u.recip();
            return Ok(self.div_binomial(&w)?.mul_monomial(&w.neg()));
        }
        let mut out = self.clone();
        let m = m as usize;
        for i in m..out.coeffs.len() {
            let (head, tail) = out.coeffs.split_at_mut(i);
            tail[0].add_scaled(&head[i - m], &u.coeff, u.xdeg);
        }
        Ok(out)
    }

    /// `1/(1 - u)^p` on a window ending at `order`.
    pub fn expand_reciprocal(u: &Monomial, p: u32, order: i64) -> Result<QSeries> {
        if u.qexp == 0 {
            if u.xdeg != 0 {
                return Err(Error::Q0Pole(u.x_part().to_string()));
            }
            let f = Rational::one() - &u.coeff;
            if f.is_zero() {
                return Err(Error::ExactPole(0));
            }
            return Ok(Self::constant(f.recip().pow(p as i64), order));
        }
        if u.qexp < 0 {
            // 1/(1-u) = -u^{-1}/(1-u^{-1})
            let w = u.recip();
            let pre = w.neg().pow(p as i64);
            let inner = Self::expand_reciprocal(&w, p, order - pre.qexp)?;
            return Ok(inner.mul_monomial(&pre));
        }
        let mut s = Self::one(order);
        if order <= 0 {
            return Ok(s);
        }
        for _ in 0..p {
            s = s.div_binomial(u)?;
        }
        Ok(s)
    }

    /// Substitutes `x ↦ ±q^m`.
    ///
    /// Beyond the order, the x-degrees relevant to the sign of `m` are assumed
    /// to stay inside the cone `a + s·i` (index `i` from the valuation) that
    /// bounds the window. The new order is where that cone first reaches, and
    /// a cone that never recedes is reported as an underflow.
    pub fn subst_x(&self, t: XTarget) -> Result<QSeries> {
        let m = t.qexp;
        let order = self.subst_order(m)?;
        let mut terms: Vec<(i64, LaurentPoly)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.val + i as i64;
            for (d, a) in c.terms() {
                let s = if t.sign < 0 && d.rem_euclid(2) == 1 { -a } else { a.clone() };
                terms.push((e + d * m, LaurentPoly::constant(s)));
            }
        }
        let val = terms.iter().map(|t| t.0).min().unwrap_or(order - 1).min(order - 1);
        if order <= val {
            return Err(Error::SubstitutionUnderflow);
        }
        let mut out = Self::zero(val, order);
        for (e, p) in terms {
            if e < order {
                let slot = &mut out.coeffs[(e - val) as usize];
                slot.add_scaled(&p, &Rational::one(), 0);
            }
        }
        Ok(out)
    }

    fn subst_order(&self, m: i64) -> Result<i64> {
        if m == 0 {
            return Ok(self.order());
        }
        let edge = |c: &LaurentPoly| if m > 0 { c.min_degree() } else { c.max_degree() };
        let outer = |u: Rational, v: Rational| if (m > 0) == (u < v) { u } else { v };
        let a = outer(Rational::zero(), Rational::from(edge(&self.coeffs[0]).unwrap_or(0)));
        let mut slope = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if let Some(d) = edge(c) {
                slope = outer(slope, (Rational::from(d) - &a) / Rational::from(i as i64));
            }
        }
        let rate = Rational::one() + Rational::from(m) * slope;
        if rate.signum() <= 0 {
            return Err(Error::SubstitutionUnderflow);
        }
        let len = Rational::from(self.coeffs.len() as i64);
        let reach = Rational::from(self.val) + Rational::from(m) * a + len * rate;
        let ceil = -(-reach).floor();
        ceil.try_into().map_err(|_| Error::SubstitutionUnderflow)
    }

    /// Derivative in `x`, coefficientwise.
    pub fn ddx(&self) -> QSeries {
        self.map_coeffs(|_, p| p.derivative())
    }

    /// `q ↦ q^D`; the window becomes `[Dv, D(N-1)+1)`.
    pub fn q_rescale(&self, d: i64) -> QSeries {
        assert!(d >= 1, "rescale factor must be positive");
        let val = d * self.val;
        let order = d * (self.order() - 1) + 1;
        let mut out = Self::zero(val, order);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(d * i as i64) as usize] = c.clone();
        }
        out
    }

    /// `q ↦ -q`.
    pub fn q_negate(&self) -> QSeries {
        self.map_coeffs(|n, p| if n.rem_euclid(2) == 1 { -p } else { p.clone() })
    }

    /// Keeps exactly the even or odd powers of `q`.
    pub fn parity_part(&self, parity: Parity) -> Result<QSeries> {
        if !self.is_x_free() {
            return Err(Error::BivariateParity);
        }
        let keep = match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        Ok(self.map_coeffs(|n, p| if n.rem_euclid(2) == keep { p.clone() } else { LaurentPoly::zero() }))
    }

    /// Compares on `[min(v_a, v_b), upto)`; `upto` must not exceed either order.
    pub fn first_mismatch(&self, other: &QSeries, upto: i64) -> Option<Mismatch> {
        assert!(upto <= self.order() && upto <= other.order(), "comparison beyond truncation");
        let lo = self.val.min(other.val);
        (lo..upto).find_map(|n| {
            let (a, b) = (self.at(n), other.at(n));
            (a != b).then_some(Mismatch { n, lhs: a, rhs: b })
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.val + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = if c.num_terms() > 1 { format!("({c})") } else { c.to_string() };
            match n {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*q")?,
                _ => write!(f, "{body}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{}, {}) {}", self.val, self.order(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn s(val: i64, cs: &[i64]) -> QSeries {
        QSeries::from_rationals(val, cs.iter().map(|&c| Rational::from(c)).collect())
    }

    fn xq(terms: &[(i64, i64, i64)], order: i64) -> QSeries {
        QSeries::from_terms(terms.iter().map(|&(c, d, e)| (e, LaurentPoly::monomial(Rational::from(c), d))), order)
    }

    #[test]
    fn add_examples() {
        assert_eq!(s(0, &[1, 1]).add(&s(0, &[1, -1])), s(0, &[2, 0]));
        let a = xq(&[(1, 1, 1)], 3).add(&xq(&[(1, -1, 1)], 3));
        assert_eq!(a.at(1), LaurentPoly::from_terms([(1, rat(1, 1)), (-1, rat(1, 1))]));
        let w = s(0, &[1, 2, 3, 4, 5]).add(&s(0, &[1, 1, 1]));
        assert_eq!((w.val(), w.order()), (0, 3));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(s(0, &[1, 1, 0, 0]).mul(&s(0, &[1, -1, 0, 0])), s(0, &[1, 0, -1, 0]));
        let p = xq(&[(1, 0, 0), (1, 1, 1)], 4).mul(&xq(&[(1, 0, 0), (-1, 1, 1)], 4));
        assert_eq!(p, xq(&[(1, 0, 0), (-1, 2, 2)], 4).truncate(4));
        let p = s(-1, &[1, 0, 0]).mul(&s(1, &[1, 0, 0]));
        assert_eq!(p.val(), 0);
        assert_eq!(p.at(0), LaurentPoly::one());
    }

    #[test]
    fn inverse_examples() {
        let g = s(0, &[1, -1, 0, 0, 0]).inv_unit().unwrap();
        assert_eq!(g, s(0, &[1, 1, 1, 1, 1]));
        let a = xq(&[(1, 1, 0), (1, 0, 1)], 3).inv_unit().unwrap();
        assert_eq!(a, xq(&[(1, -1, 0), (-1, -2, 1), (1, -3, 2)], 3));
        let a = xq(&[(1, 0, 0), (-1, 1, 0)], 3);
        assert_eq!(a.inv_unit(), Err(Error::NonUnitLeading));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(QSeries::expand_reciprocal(&Monomial::q(1), 1, 4).unwrap(), s(0, &[1, 1, 1, 1]));
        let u = Monomial::new(rat(-1, 1), 1, 1);
        assert_eq!(QSeries::expand_reciprocal(&u, 1, 3).unwrap(), xq(&[(1, 0, 0), (-1, 1, 1), (1, 2, 2)], 3));
        let u = Monomial::new(rat(1, 1), 1, -1);
        let r = QSeries::expand_reciprocal(&u, 1, 4).unwrap();
        assert_eq!(r, xq(&[(-1, -1, 1), (-1, -2, 2), (-1, -3, 3)], 4).truncate(4));
        let half = QSeries::expand_reciprocal(&Monomial::constant(rat(-1, 1)), 1, 3).unwrap();
        assert_eq!(half.at(0), LaurentPoly::constant(rat(1, 2)));
        assert!(matches!(QSeries::expand_reciprocal(&Monomial::x(), 1, 3), Err(Error::Q0Pole(_))));
        assert_eq!(QSeries::expand_reciprocal(&Monomial::one(), 1, 3), Err(Error::ExactPole(0)));
    }

    #[test]
    fn substitution_examples() {
        let a = xq(&[(1, 0, 0), (1, 1, 1)], 4).subst_x(XTarget::constant(-1)).unwrap();
        assert_eq!(a, s(0, &[1, -1, 0, 0]));
        let a = xq(&[(1, -1, 2)], 5).subst_x(XTarget::q_power(1, 1)).unwrap();
        assert_eq!(a.at(1), LaurentPoly::one());
        assert_eq!(a.at(0), LaurentPoly::zero());
    }

    #[test]
    fn coefficient_access() {
        let a = s(0, &[1, 0, 3]);
        assert_eq!(a.coeff(2).unwrap(), LaurentPoly::constant(rat(3, 1)));
        assert_eq!(a.coeff(1).unwrap(), LaurentPoly::zero());
        assert!(matches!(a.coeff(5), Err(Error::OutsideWindow { .. })));
    }

    #[test]
    fn substitution_refuses_divergent_tails() {
        // 1/(1 - x q)(1 - q/x): x-degrees span [-n, n] at q^n
        let s = QSeries::one(12)
            .div_binomial(&Monomial::new(Rational::one(), 1, 1))
            .unwrap()
            .div_binomial(&Monomial::new(Rational::one(), -1, 1))
            .unwrap();
        assert_eq!(s.subst_x(XTarget::q_power(-1, 1)).unwrap_err(), Error::SubstitutionUnderflow);
        let h = s.subst_x(XTarget::q_power(1, 2)).unwrap_err();
        assert_eq!(h, Error::SubstitutionUnderflow);
        let c = s.subst_x(XTarget::constant(-1)).unwrap();
        assert_eq!(c.order(), 12);
    }

    #[test]
    fn rescale_and_derivative() {
        assert_eq!(s(0, &[1, 1]).q_rescale(2), s(0, &[1, 0, 1]));
        let r = s(-1, &[1]).q_rescale(3);
        assert_eq!((r.val(), r.order(), r.at(-3)), (-3, -2, LaurentPoly::one()));
        let d = xq(&[(1, 2, 1)], 3).ddx();
        assert!(d.first_mismatch(&xq(&[(2, 1, 1)], 3), 3).is_none());
        assert!(s(0, &[4, 5]).ddx().coeffs().iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn parity_parts() {
        let a = s(0, &[1, 1, 1]);
        assert_eq!(a.parity_part(Parity::Even).unwrap(), s(0, &[1, 0, 1]));
        assert_eq!(a.parity_part(Parity::Odd).unwrap(), s(0, &[0, 1, 0]));
        assert_eq!(xq(&[(1, 1, 0)], 2).parity_part(Parity::Even), Err(Error::BivariateParity));
    }

    fn arb_series(bivariate: bool) -> impl Strategy<Value = QSeries> {
        let dr = if bivariate { -2i64..3 } else { 0i64..1 };
        (-2i64..3, prop::collection::vec(prop::collection::vec((dr, -3i64..4), 0..3), 4..9)).prop_map(|(val, cs)| {
            let cs = cs
                .into_iter()
                .map(|t| LaurentPoly::from_terms(t.into_iter().map(|(d, c)| (d, Rational::from(c)))))
                .collect();
            QSeries::new(val, cs)
        })
    }

    // finite sums carried far past their last term, so nothing is unknown
    fn arb_exact() -> impl Strategy<Value = QSeries> {
        prop::collection::vec((-2i64..3, 0i64..5, -3i64..4), 0..8)
            .prop_map(|ts| xq(&ts.into_iter().map(|(d, e, c)| (c, d, e)).collect::<Vec<_>>(), 40))
    }

    fn agree(a: &QSeries, b: &QSeries) -> bool {
        let upto = a.order().min(b.order());
        a.first_mismatch(b, upto).is_none()
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(true), b in arb_series(true), c in arb_series(true)) {
            prop_assert!(agree(&a.mul(&b), &b.mul(&a)));
            prop_assert!(agree(&a.add(&b), &b.add(&a)));
            prop_assert!(agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
            prop_assert!(agree(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
        }

        #[test]
        fn inverse_is_inverse(a in arb_series(false), lead in 1i64..4) {
            let a = a.normalized();
            let mut cs = a.coeffs().to_vec();
            cs[0] = LaurentPoly::monomial(Rational::from(lead), 1);
            let a = QSeries::new(a.val(), cs);
            let p = a.mul(&a.inv_unit().unwrap());
            prop_assert!(agree(&p, &QSeries::one(p.order())));
        }

        #[test]
        fn substitution_is_homomorphism(a in arb_exact(), b in arb_exact(), sign in prop::bool::ANY, m in -2i64..3) {
            let t = XTarget::q_power(if sign { 1 } else { -1 }, m);
            let (Ok(sa), Ok(sb)) = (a.subst_x(t), b.subst_x(t)) else { return Ok(()) };
            if let Ok(s) = a.add(&b).subst_x(t) {
                prop_assert!(agree(&s, &sa.add(&sb)));
            }
            if let Ok(s) = a.mul(&b).subst_x(t) {
                prop_assert!(agree(&s, &sa.mul(&sb)));
            }
        }

        #[test]
        fn derivative_rules(a in arb_series(true), b in arb_series(true)) {
            prop_assert!(agree(&a.mul(&b).ddx(), &a.ddx().mul(&b).add(&a.mul(&b.ddx()))));
            prop_assert!(agree(&a.add(&b).ddx(), &a.ddx().add(&b.ddx())));
        }

        #[test]
        fn reciprocal_times_binomial(c in -3i64..4, d in -2i64..3, e in -3i64..4, p in 1u32..3) {
            prop_assume!(c != 0 && e != 0);
            let u = Monomial::new(Rational::from(c), d, e);
            let mut r = QSeries::expand_reciprocal(&u, p, 12).unwrap();
            for _ in 0..p {
                r = r.mul(&QSeries::one(20).mul_binomial(&u));
            }
            prop_assert!(agree(&r, &QSeries::one(r.order())));
        }

        #[test]
        fn rescale_composes(a in arb_series(true), d1 in 1i64..4, d2 in 1i64..4) {
            prop_assert_eq!(a.q_rescale(d1).q_rescale(d2), a.q_rescale(d1 * d2));
            prop_assert_eq!(a.q_rescale(1), a);
        }
    }
}
