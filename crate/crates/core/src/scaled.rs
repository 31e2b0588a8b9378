//! Series over a single common denominator, with integer numerators.
//!
//! Long chains of products with non-integral coefficients spend nearly all of
//! their time reducing fractions. Here every coefficient of a series shares
//! one denominator, so the inner loops are plain big-integer multiply-adds and
//! fractions are reduced once, on the way back to [`QSeries`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::{LaurentPoly, Monomial};
use crate::rational::Rational;
use crate::series::QSeries;

/// Dense integer Laurent polynomial; may carry zeros at either end.
#[derive(Clone, Default)]
struct Row {
    lo: i64,
    c: Vec<BigInt>,
}

impl Row {
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    fn reserve(&mut self, lo: i64, hi: i64) {
        if self.c.is_empty() {
            self.lo = lo;
            self.c = vec![BigInt::zero(); (hi - lo) as usize];
            return;
        }
        if lo < self.lo {
            let pad = (self.lo - lo) as usize;
            self.c.splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
            self.lo = lo;
        }
        let end = self.lo + self.c.len() as i64;
        if hi > end {
            self.c.resize(self.c.len() + (hi - end) as usize, BigInt::zero());
        }
    }

    /// `self += k·x^d·other`.
    fn add_scaled(&mut self, other: &Row, k: &BigInt, d: i64) {
        if other.c.is_empty() || k.is_zero() {
            return;
        }
        let lo = other.lo + d;
        self.reserve(lo, lo + other.c.len() as i64);
        let off = (lo - self.lo) as usize;
        for (i, y) in other.c.iter().enumerate() {
            if !y.is_zero() {
                self.c[off + i] += k * y;
            }
        }
    }

    /// `self += a·b`.
    fn add_product(&mut self, a: &Row, b: &Row) {
        if a.c.is_empty() || b.c.is_empty() {
            return;
        }
        let lo = a.lo + b.lo;
        self.reserve(lo, lo + (a.c.len() + b.c.len() - 1) as i64);
        let off = (lo - self.lo) as usize;
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    self.c[off + i + j] += x * y;
                }
            }
        }
    }

    fn scale(&mut self, k: &BigInt) {
        if !k.is_one() {
            self.c.iter_mut().for_each(|v| *v *= k);
        }
    }
}

/// `Σ rows[i] q^{val+i} / den`.
#[derive(Clone)]
pub(crate) struct ScaledSeries {
    val: i64,
    den: BigInt,
    rows: Vec<Row>,
    /// Bit length of `den` after the last content reduction.
    reduced_bits: u64,
}

fn parts(c: &Rational) -> (BigInt, BigInt) {
    (c.numer(), c.denom())
}

impl ScaledSeries {
    pub(crate) fn from_series(s: &QSeries) -> Self {
        let mut den = BigInt::one();
        for p in s.coeffs() {
            for (_, c) in p.terms() {
                if !c.is_integer() {
                    den = den.lcm(&c.denom());
                }
            }
        }
        let rows = s
            .coeffs()
            .iter()
            .map(|p| {
                let lo = p.min_degree().unwrap_or(0);
                let hi = p.max_degree().map_or(lo, |h| h + 1);
                let mut c = vec![BigInt::zero(); (hi - lo) as usize];
                for (d, v) in p.terms() {
                    let (n, dd) = parts(v);
                    c[(d - lo) as usize] = n * (&den / dd);
                }
                Row { lo, c }
            })
            .collect();
        let reduced_bits = den.bits();
        ScaledSeries { val: s.val(), den, rows, reduced_bits }
    }

    pub(crate) fn to_series(&self) -> QSeries {
        let coeffs =
            self.rows
                .iter()
                .map(|r| {
                    let terms = r.c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| {
                        (r.lo + i as i64, Rational::from_big(BigRational::new(v.clone(), self.den.clone())))
                    });
                    LaurentPoly::from_terms(terms)
                })
                .collect();
        QSeries::new(self.val, coeffs)
    }

    /// Divides numerators and denominator by their common factor once the
    /// denominator has grown noticeably since the last time.
    fn tidy(&mut self) {
        if self.den.bits() < self.reduced_bits + 64 {
            return;
        }
        let mut g = self.den.clone();
        'outer: for r in self.rows.iter().rev() {
            for v in &r.c {
                if !v.is_zero() {
                    g = g.gcd(v);
                    if g.is_one() {
                        break 'outer;
                    }
                }
            }
        }
        if !g.is_one() {
            for r in &mut self.rows {
                r.c.iter_mut().for_each(|v| *v = &*v / &g);
            }
            self.den = &self.den / &g;
        }
        self.reduced_bits = self.den.bits();
    }

    /// Multiplies by `(1 - u)` for `u` with positive q-exponent.
    pub(crate) fn mul_binomial(&mut self, u: &Monomial) {
        debug_assert!(u.qexp > 0);
        let (p, r) = parts(&u.coeff);
        let m = u.qexp as usize;
        let neg_p = -p;
        for i in (m..self.rows.len()).rev() {
            let (head, tail) = self.rows.split_at_mut(i);
            tail[0].scale(&r);
            tail[0].add_scaled(&head[i - m], &neg_p, u.xdeg);
        }
        for row in self.rows.iter_mut().take(m) {
            row.scale(&r);
        }
        self.den *= &r;
        self.tidy();
    }

    /// Divides by `(1 - u)` for `u` with positive q-exponent.
    ///
    /// Row `i` is first scaled by `r^⌊i/m⌋`, which keeps the recurrence
    /// integral, and then topped up to the common power.
    pub(crate) fn div_binomial(&mut self, u: &Monomial) {
        debug_assert!(u.qexp > 0);
        let (p, r) = parts(&u.coeff);
        let m = u.qexp as usize;
        let len = self.rows.len();
        if r.is_one() {
            for i in m..len {
                let (head, tail) = self.rows.split_at_mut(i);
                tail[0].add_scaled(&head[i - m], &p, u.xdeg);
            }
            return;
        }
        let top = (len - 1) / m;
        let mut powers = vec![BigInt::one()];
        for k in 1..=top {
            let next = &powers[k - 1] * &r;
            powers.push(next);
        }
        for i in 0..len {
            self.rows[i].scale(&powers[i / m]);
            if i >= m {
                let (head, tail) = self.rows.split_at_mut(i);
                tail[0].add_scaled(&head[i - m], &p, u.xdeg);
            }
        }
        for i in 0..len {
            self.rows[i].scale(&powers[top - i / m]);
        }
        self.den *= &powers[top];
        self.tidy();
    }

    /// Cauchy product on the window `[val, order)` of the result.
    pub(crate) fn mul(&self, other: &ScaledSeries, val: i64, order: i64) -> ScaledSeries {
        let len = (order - val) as usize;
        let mut rows = vec![Row::default(); len];
        for (i, a) in self.rows.iter().enumerate() {
            let ia = self.val + i as i64 - val;
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                let k = ia + other.val + j as i64;
                if k < 0 {
                    continue;
                }
                if k >= len as i64 {
                    break;
                }
                rows[k as usize].add_product(a, b);
            }
        }
        let mut out = ScaledSeries { val, den: &self.den * &other.den, rows, reduced_bits: 0 };
        out.reduced_bits = self.den.bits().max(other.den.bits());
        out.tidy();
        out
    }
}

/// Whether some coefficient has a denominator.
pub(crate) fn has_fractions(s: &QSeries) -> bool {
    s.coeffs().iter().any(|p| p.terms().any(|(_, c)| !c.is_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sample() -> QSeries {
        let m = |c: Rational, d: i64| LaurentPoly::monomial(c, d);
        QSeries::new(
            -1,
            vec![m(rat(2, 3), 1), &m(rat(-5, 7), 0) + &m(rat(1, 1), -2), LaurentPoly::zero(), m(rat(9, 4), 3)],
        )
    }

    #[test]
    fn round_trip() {
        let s = sample();
        assert!(ScaledSeries::from_series(&s).to_series() == s);
    }

    #[test]
    fn binomials_match_rational_arithmetic() {
        let u = Monomial::new(rat(-3, 5), 1, 1);
        let s = sample();
        let mut a = ScaledSeries::from_series(&s);
        a.div_binomial(&u);
        assert!(a.to_series() == s.div_binomial(&u).unwrap());
        a.mul_binomial(&u);
        assert!(a.to_series() == s);
    }

    #[test]
    fn product_matches_rational_arithmetic() {
        let s = sample();
        let t = s.div_binomial(&Monomial::new(rat(2, 7), -1, 2)).unwrap();
        let want = s.mul(&t);
        let got = ScaledSeries::from_series(&s).mul(&ScaledSeries::from_series(&t), want.val(), want.order());
        assert!(got.to_series() == want);
    }
}
