//! Laurent polynomials in the formal symbol `x`, and monomials `c·x^d·q^m`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Finite sum `Σ c_d x^d` with integer (possibly negative) exponents.
///
/// Stored densely from the lowest nonzero exponent; both ends are trimmed so
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·x^d`.
    pub fn monomial(c: Rational, d: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: d, coeffs: vec![c] }
    }

    /// `1 - c·x^d`.
    pub fn binomial(c: &Rational, d: i64) -> Self {
        Self::one() - Self::monomial(c.clone(), d)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i64, Rational)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (d, c) in terms {
            coeffs[(d - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Builds from a dense coefficient run starting at exponent `lo`.
    pub fn from_dense(lo: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, d: i64) -> Rational {
        let i = d - self.lo;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// The value when the polynomial has no `x`-dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 if self.lo == 0 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_x_free(&self) -> bool {
        self.as_constant().is_some()
    }

    /// `(c, d)` when the polynomial is the single term `c·x^d`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        (self.coeffs.len() == 1).then(|| (self.coeffs[0].clone(), self.lo))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `x^d`.
    pub fn shift(&self, d: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo + d, coeffs: self.coeffs.clone() }
    }

    /// Multiplies by `c·x^d`.
    pub fn mul_term(&self, c: &Rational, d: i64) -> Self {
        let mut p = self.scale(c);
        if !p.is_zero() {
            p.lo += d;
        }
        p
    }

    /// `self += c·x^d·other`, the workhorse of series convolution.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &Rational, d: i64) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let olo = other.lo + d;
        let ohi = olo + other.coeffs.len() as i64;
        self.reserve_range(olo, ohi);
        let off = (olo - self.lo) as usize;
        for (i, a) in other.coeffs.iter().enumerate() {
            self.coeffs[off + i].add_mul(a, c);
        }
        self.trim();
    }

    /// `self += a·b` without allocating the product.
    pub fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let lo = a.lo + b.lo;
        let hi = lo + (a.coeffs.len() + b.coeffs.len() - 1) as i64;
        self.reserve_range(lo, hi);
        let off = (lo - self.lo) as usize;
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[off + i + j].add_mul(x, y);
            }
        }
        self.trim();
    }

    fn reserve_range(&mut self, lo: i64, hi: i64) {
        if self.coeffs.is_empty() {
            self.lo = lo;
            self.coeffs = vec![Rational::zero(); (hi - lo) as usize];
            return;
        }
        if lo < self.lo {
            let pad = (self.lo - lo) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(Rational::zero(), pad));
            self.lo = lo;
        }
        let end = self.lo + self.coeffs.len() as i64;
        if hi > end {
            self.coeffs.resize(self.coeffs.len() + (hi - end) as usize, Rational::zero());
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Self {
        let mut p = Self::zero();
        p.add_product(self, other);
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Formal derivative `d/dx`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms().filter(|(d, _)| *d != 0).map(|(d, c)| (d - 1, c * &Rational::from_integer(d))))
    }

    /// Evaluates at a rational point; `x = 0` is rejected for negative exponents.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.lo < 0 {
            return Err(Error::Degenerate("evaluation of a negative power at x = 0".into()));
        }
        Ok(self.terms().map(|(d, c)| c * &x.pow(d)).sum())
    }

    /// Exact quotient by `1 - c·x^d`.
    pub fn exact_div_binomial(&self, c: &Rational, d: i64) -> Result<Self> {
        if d == 0 {
            let f = Rational::one() - c;
            if f.is_zero() {
                return Err(Error::InexactDivision);
            }
            return Ok(self.scale(&f.recip()));
        }
        if d < 0 {
            // 1 - c x^d = -c x^d (1 - c^{-1} x^{-d})
            let ci = c.recip();
            let q = self.exact_div_binomial(&ci, -d)?;
            return Ok(q.mul_term(&-&ci, -d));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let d = d as usize;
        let n = self.coeffs.len();
        if n <= d {
            return Err(Error::InexactDivision);
        }
        let mut quot = vec![Rational::zero(); n - d];
        for k in 0..n - d {
            let mut v = self.coeffs[k].clone();
            if k >= d {
                v.add_mul(c, &quot[k - d]);
            }
            quot[k] = v;
        }
        for k in n - d..n {
            let mut v = self.coeffs[k].clone();
            if k >= d {
                v.add_mul(c, &quot[k - d]);
            }
            if !v.is_zero() {
                return Err(Error::InexactDivision);
            }
        }
        Ok(Self::from_dense(self.lo, quot))
    }

    /// Exact quotient by a factor of the form `1 - c·x^d`.
    pub fn exact_div(&self, factor: &LaurentPoly) -> Result<Self> {
        let (c, d) = binomial_shape(factor).ok_or(Error::InexactDivision)?;
        self.exact_div_binomial(&c, d)
    }
}

/// Recognizes `1 - c·x^d` with `d != 0`, returning `(c, d)`.
pub fn binomial_shape(p: &LaurentPoly) -> Option<(Rational, i64)> {
    let terms: Vec<(i64, &Rational)> = p.terms().collect();
    match terms.as_slice() {
        [(0, one), (d, c)] | [(d, c), (0, one)] if one.is_one() => Some((-(*c).clone(), *d)),
        _ => None,
    }
}

impl std::ops::Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_scaled(&rhs, &Rational::one(), 0);
        self
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p.add_scaled(rhs, &Rational::one(), 0);
        p
    }
}

impl std::ops::Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_scaled(&rhs, &-Rational::one(), 0);
        self
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p.add_scaled(rhs, &-Rational::one(), 0);
        p
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    match d {
                        1 => write!(f, "x")?,
                        _ => write!(f, "x^{d}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// `coeff·x^xdeg·q^qexp` with a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Rational,
    pub xdeg: i64,
    pub qexp: i64,
}

impl Monomial {
    /// Panics on a zero coefficient.
    pub fn new(coeff: Rational, xdeg: i64, qexp: i64) -> Self {
        assert!(!coeff.is_zero(), "monomial with zero coefficient");
        Monomial { coeff, xdeg, qexp }
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, 0, 0)
    }

    /// `q^m`.
    pub fn q(m: i64) -> Self {
        Self::new(Rational::one(), 0, m)
    }

    /// `-q^m`.
    pub fn neg_q(m: i64) -> Self {
        Self::new(-Rational::one(), 0, m)
    }

    /// `x`.
    pub fn x() -> Self {
        Self::new(Rational::one(), 1, 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.xdeg == 0 && self.qexp == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::new(&self.coeff * &o.coeff, self.xdeg + o.xdeg, self.qexp + o.qexp)
    }

    pub fn recip(&self) -> Monomial {
        Monomial::new(self.coeff.recip(), -self.xdeg, -self.qexp)
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        self.mul(&o.recip())
    }

    pub fn pow(&self, e: i64) -> Monomial {
        Monomial::new(self.coeff.pow(e), self.xdeg * e, self.qexp * e)
    }

    pub fn neg(&self) -> Monomial {
        Monomial::new(-&self.coeff, self.xdeg, self.qexp)
    }

    pub fn scale(&self, c: &Rational) -> Monomial {
        Monomial::new(&self.coeff * c, self.xdeg, self.qexp)
    }

    pub fn times_q(&self, m: i64) -> Monomial {
        Monomial::new(self.coeff.clone(), self.xdeg, self.qexp + m)
    }

    /// The `x`-part `c·x^d` as a Laurent polynomial.
    pub fn x_part(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.coeff.clone(), self.xdeg)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.xdeg != 0 {
            write!(f, "*x^{}", self.xdeg)?;
        }
        if self.qexp != 0 {
            write!(f, "*q^{}", self.qexp)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(d, c)| (d, Rational::from(c))))
    }

    #[test]
    fn trimming_and_equality() {
        assert_eq!(lp(&[(2, 1), (2, -1)]), LaurentPoly::zero());
        assert_eq!(lp(&[(-1, 3), (4, 0)]), LaurentPoly::monomial(rat(3, 1), -1));
    }

    #[test]
    fn exact_division_examples() {
        let q = lp(&[(0, 1), (2, -1)]).exact_div(&lp(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(q, lp(&[(0, 1), (1, 1)]));
        let q = lp(&[(1, 1), (3, -1)]).exact_div(&lp(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(q, lp(&[(1, 1)]));
        assert_eq!(lp(&[(0, 1), (1, -1)]).exact_div(&lp(&[(0, 1), (1, 1)])), Err(Error::InexactDivision));
        // 1 - x^{-1} = -(x^{-1})(1 - x)
        let q = lp(&[(0, 1), (-2, -1)]).exact_div(&lp(&[(0, 1), (-1, -1)])).unwrap();
        assert_eq!(q, lp(&[(0, 1), (-1, 1)]));
    }

    #[test]
    fn display() {
        assert_eq!(lp(&[(0, 1), (1, -1), (2, 3)]).to_string(), "3*x^2 - x + 1");
        assert_eq!(LaurentPoly::constant(rat(-1, 2)).to_string(), "-1/2");
        assert_eq!(lp(&[(-1, 2)]).to_string(), "2*x^-1");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..5, -6i64..7), 0..6).prop_map(|v| lp(&v))
    }

    proptest! {
        #[test]
        fn product_divides_back(p in arb_poly(), c in -3i64..4, d in -3i64..4) {
            prop_assume!(c != 0 && !(d == 0 && c == 1));
            let c = Rational::from(c);
            let prod = p.mul(&LaurentPoly::binomial(&c, d));
            prop_assert_eq!(prod.exact_div_binomial(&c, d).unwrap(), p);
        }

        #[test]
        fn derivative_is_leibniz(a in arb_poly(), b in arb_poly()) {
            let lhs = a.mul(&b).derivative();
            let rhs = &a.derivative().mul(&b) + &a.mul(&b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
