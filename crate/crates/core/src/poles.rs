//! Series with a formal denominator made of `q⁰` pole factors in `x`.
//!
//! A factor `1 - c·x^d` that appears at `q⁰` in a denominator cannot be
//! expanded in `q`. Such factors are kept symbolically and only removed when
//! both sides of an identity are multiplied by a common clearing multiplier.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::rational::Rational;
use crate::series::QSeries;

/// `1 - c·x^d` with `d > 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PoleFactor {
    pub d: i64,
    pub c: Rational,
}

impl PoleFactor {
    pub fn poly(&self) -> LaurentPoly {
        LaurentPoly::binomial(&self.c, self.d)
    }
}

impl fmt::Display for PoleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.poly())
    }
}

impl fmt::Debug for PoleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `1 - c·x^d` (with `d != 0`) as `unit · Π factors`, where the unit is
/// an `x`-monomial `(coeff, xdeg)` and every factor has positive degree and
/// is not a difference of squares.
pub fn normalize_factor(c: &Rational, d: i64) -> ((Rational, i64), Vec<PoleFactor>) {
    assert!(d != 0, "not an x-dependent factor");
    if d < 0 {
        let ((uc, ud), fs) = normalize_factor(&c.recip(), -d);
        return ((-(c * &uc), d + ud), fs);
    }
    if d % 2 == 0 {
        if let Some(s) = c.sqrt_exact() {
            let ((u1, d1), mut f1) = normalize_factor(&s, d / 2);
            let ((u2, d2), f2) = normalize_factor(&-&s, d / 2);
            f1.extend(f2);
            return ((&u1 * &u2, d1 + d2), f1);
        }
    }
    ((Rational::one(), 0), vec![PoleFactor { d, c: c.clone() }])
}

/// Multiset of pole factors.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PoleSet(BTreeMap<PoleFactor, u32>);

impl PoleSet {
    pub fn new() -> Self {
        PoleSet(BTreeMap::new())
    }

    pub fn insert(&mut self, f: PoleFactor, mult: u32) {
        if mult > 0 {
            *self.0.entry(f).or_insert(0) += mult;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PoleFactor, u32)> {
        self.0.iter().map(|(f, &m)| (f, m))
    }

    pub fn multiplicity(&self, f: &PoleFactor) -> u32 {
        self.0.get(f).copied().unwrap_or(0)
    }

    /// Total number of factors counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.0.values().sum()
    }

    /// Least common multiple: the maximum multiplicity of each factor.
    pub fn lcm(&self, other: &PoleSet) -> PoleSet {
        let mut out = self.clone();
        for (f, &m) in &other.0 {
            let e = out.0.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        out
    }

    /// Multiset sum.
    pub fn union_sum(&self, other: &PoleSet) -> PoleSet {
        let mut out = self.clone();
        for (f, &m) in &other.0 {
            out.insert(f.clone(), m);
        }
        out
    }

    /// `self / other` as multisets, if `other` is contained in `self`.
    pub fn quotient(&self, other: &PoleSet) -> Option<PoleSet> {
        let mut out = self.clone();
        for (f, &m) in &other.0 {
            let e = out.0.get_mut(f)?;
            if *e < m {
                return None;
            }
            *e -= m;
            if *e == 0 {
                out.0.remove(f);
            }
        }
        Some(out)
    }

    /// The product of all factors.
    pub fn product(&self) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        for (f, &m) in &self.0 {
            for _ in 0..m {
                p = p.mul(&f.poly());
            }
        }
        p
    }
}

impl fmt::Display for PoleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.iter().map(|(p, m)| if m == 1 { p.to_string() } else { format!("{p}^{m}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for PoleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoleSet({self})")
    }
}

/// `num / Π poles`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoleSeries {
    pub num: QSeries,
    pub poles: PoleSet,
}

impl From<QSeries> for PoleSeries {
    fn from(num: QSeries) -> Self {
        PoleSeries { num, poles: PoleSet::new() }
    }
}

impl PoleSeries {
    pub fn new(num: QSeries, poles: PoleSet) -> Self {
        PoleSeries { num, poles }
    }

    pub fn order(&self) -> i64 {
        self.num.order()
    }

    pub fn val(&self) -> i64 {
        self.num.val()
    }

    /// Re-expresses the numerator over a larger pole multiset.
    fn lift(&self, target: &PoleSet) -> QSeries {
        let extra = target.quotient(&self.poles).expect("target contains own poles");
        if extra.is_empty() {
            self.num.clone()
        } else {
            self.num.mul_poly(&extra.product())
        }
    }

    pub fn add(&self, other: &PoleSeries) -> PoleSeries {
        let l = self.poles.lcm(&other.poles);
        PoleSeries { num: self.lift(&l).add(&other.lift(&l)), poles: l }
    }

    pub fn sub(&self, other: &PoleSeries) -> PoleSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PoleSeries {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> PoleSeries {
        PoleSeries { num: self.num.scale(c), poles: self.poles.clone() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> PoleSeries {
        PoleSeries { num: self.num.mul_monomial(m), poles: self.poles.clone() }
    }

    pub fn mul_series(&self, s: &QSeries) -> PoleSeries {
        PoleSeries { num: self.num.mul(s), poles: self.poles.clone() }
    }

    pub fn mul(&self, other: &PoleSeries) -> PoleSeries {
        PoleSeries { num: self.num.mul(&other.num), poles: self.poles.union_sum(&other.poles) }
    }

    /// Divides by `1 - c·x^d` at `q⁰`.
    pub fn div_x_binomial(&self, c: &Rational, d: i64) -> PoleSeries {
        let ((uc, ud), fs) = normalize_factor(c, d);
        let mut poles = self.poles.clone();
        for f in fs {
            poles.insert(f, 1);
        }
        PoleSeries { num: self.num.mul_monomial(&Monomial::new(uc.recip(), -ud, 0)), poles }
    }

    /// Multiplies by `multiplier`, which must contain every pole.
    pub fn clear(&self, multiplier: &PoleSet) -> Result<QSeries> {
        let extra = multiplier.quotient(&self.poles).ok_or_else(|| {
            Error::InvalidSpec(format!("clearing multiplier {multiplier} misses poles {}", self.poles))
        })?;
        Ok(if extra.is_empty() { self.num.clone() } else { self.num.mul_poly(&extra.product()) })
    }

    /// Cancels pole factors that divide the numerator exactly, coefficientwise.
    pub fn reduce(&self) -> PoleSeries {
        let mut out = self.clone();
        let factors: Vec<(PoleFactor, u32)> = self.poles.iter().map(|(f, m)| (f.clone(), m)).collect();
        for (f, m) in factors {
            for _ in 0..m {
                let divided: Result<Vec<LaurentPoly>> =
                    out.num.coeffs().iter().map(|p| p.exact_div_binomial(&f.c, f.d)).collect();
                match divided {
                    Ok(cs) => {
                        out.num = QSeries::new(out.num.val(), cs);
                        let mut one = PoleSet::new();
                        one.insert(f.clone(), 1);
                        out.poles = out.poles.quotient(&one).expect("present");
                    }
                    Err(_) => break,
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn normalization_moves_units_and_splits_squares() {
        let ((u, d), fs) = normalize_factor(&rat(1, 1), -1);
        assert_eq!((u, d), (rat(-1, 1), -1));
        assert_eq!(fs, vec![PoleFactor { d: 1, c: rat(1, 1) }]);
        let (_, fs) = normalize_factor(&rat(1, 1), 2);
        assert_eq!(fs.len(), 2);
        let (_, fs) = normalize_factor(&rat(-1, 1), 2);
        assert_eq!(fs, vec![PoleFactor { d: 2, c: rat(-1, 1) }]);
        for (c, d) in [(rat(4, 9), 2), (rat(1, 1), -4), (rat(-3, 1), -1), (rat(9, 1), 4)] {
            let ((uc, ud), fs) = normalize_factor(&c, d);
            let mut p = LaurentPoly::monomial(uc, ud);
            for f in fs {
                p = p.mul(&f.poly());
            }
            assert_eq!(p, LaurentPoly::binomial(&c, d));
        }
    }

    #[test]
    fn lcm_and_clearing() {
        let one_x = PoleFactor { d: 1, c: rat(1, 1) };
        let mut a = PoleSet::new();
        a.insert(one_x.clone(), 2);
        let mut b = PoleSet::new();
        b.insert(one_x.clone(), 1);
        b.insert(PoleFactor { d: 1, c: rat(-1, 1) }, 1);
        let l = a.lcm(&b);
        assert_eq!(l.multiplicity(&one_x), 2);
        assert_eq!(l.len(), 3);
        let s = PoleSeries::from(QSeries::one(3)).div_x_binomial(&rat(1, 1), 1);
        let cleared = s.clear(&l).unwrap();
        assert_eq!(cleared.at(0), LaurentPoly::binomial(&rat(1, 1), 1).mul(&LaurentPoly::binomial(&rat(-1, 1), 1)));
        assert!(s.clear(&PoleSet::new()).is_err());
    }

    #[test]
    fn reduce_cancels_exact_factors() {
        let num = QSeries::from_terms([(0, LaurentPoly::binomial(&rat(1, 1), 2))], 2);
        let s = PoleSeries::from(num).div_x_binomial(&rat(1, 1), 1).reduce();
        assert!(s.poles.is_empty());
        assert_eq!(s.num.at(0), LaurentPoly::binomial(&rat(-1, 1), 1));
    }
}
