//! Symbolic sides of an identity: sums, products and sums of products of
//! Lambert sums, q-products and named series, evaluated to a working order.

use std::sync::Arc;

use crate::error::Result;
use crate::lambert::{bilateral_sum, BilateralSpec};
use crate::laurent::Monomial;
use crate::poles::PoleSeries;
use crate::products::Quotient;
use crate::rational::Rational;
use crate::series::QSeries;

type Builder = Arc<dyn Fn(i64) -> Result<PoleSeries> + Send + Sync>;

#[derive(Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Expr {
    Sum(BilateralSpec),
    Prod(Quotient),
    Mono(Monomial),
    /// `1 / (1 - c·x^d)` at `q⁰`.
    Pole(Rational, i64),
    Series(Builder),
    Mul(Vec<Expr>),
    Lin(Vec<(Rational, Expr)>),
}

impl std::fmt::Debug for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Sum(s) => write!(f, "Sum({s:?})"),
            Expr::Prod(q) => write!(f, "Prod({q:?})"),
            Expr::Mono(m) => write!(f, "Mono({m})"),
            Expr::Pole(c, d) => write!(f, "Pole({c}, {d})"),
            Expr::Series(_) => write!(f, "Series(..)"),
            Expr::Mul(v) => f.debug_tuple("Mul").field(v).finish(),
            Expr::Lin(v) => f.debug_tuple("Lin").field(v).finish(),
        }
    }
}

impl Expr {
    pub fn series<F>(f: F) -> Expr
    where
        F: Fn(i64) -> Result<PoleSeries> + Send + Sync + 'static,
    {
        Expr::Series(Arc::new(f))
    }

    /// A pole-free series builder.
    pub fn plain<F>(f: F) -> Expr
    where
        F: Fn(i64) -> QSeries + Send + Sync + 'static,
    {
        Expr::series(move |w| Ok(PoleSeries::from(f(w))))
    }

    pub fn scale(self, c: Rational) -> Expr {
        Expr::Lin(vec![(c, self)])
    }

    pub fn times(self, other: Expr) -> Expr {
        match self {
            Expr::Mul(mut v) => {
                v.push(other);
                Expr::Mul(v)
            }
            e => Expr::Mul(vec![e, other]),
        }
    }

    /// Expands with every constituent known below `order`.
    pub fn eval(&self, order: i64) -> Result<PoleSeries> {
        match self {
            Expr::Sum(spec) => bilateral_sum(spec, order),
            Expr::Prod(q) => q.build(order),
            Expr::Mono(m) => Ok(QSeries::monomial(m, order).into()),
            Expr::Pole(c, d) => Ok(PoleSeries::from(QSeries::one(order)).div_x_binomial(c, *d)),
            Expr::Series(f) => f(order),
            Expr::Mul(v) => {
                let mut acc: Option<PoleSeries> = None;
                for e in v {
                    let s = e.eval(order)?;
                    acc = Some(match acc {
                        None => s,
                        Some(a) => a.mul(&s),
                    });
                }
                Ok(acc.unwrap_or_else(|| QSeries::one(order).into()))
            }
            Expr::Lin(v) => {
                let mut acc: Option<PoleSeries> = None;
                for (c, e) in v {
                    let s = e.eval(order)?.scale(c);
                    acc = Some(match acc {
                        None => s,
                        Some(a) => a.add(&s),
                    });
                }
                Ok(acc.unwrap_or_else(|| QSeries::zero(order, order).into()))
            }
        }
    }
}

impl From<BilateralSpec> for Expr {
    fn from(s: BilateralSpec) -> Self {
        Expr::Sum(s)
    }
}

impl From<Quotient> for Expr {
    fn from(q: Quotient) -> Self {
        Expr::Prod(q)
    }
}

impl From<Monomial> for Expr {
    fn from(m: Monomial) -> Self {
        Expr::Mono(m)
    }
}

/// `Σ c_i e_i`.
pub fn lin<const N: usize>(terms: [(i64, Expr); N]) -> Expr {
    Expr::Lin(terms.into_iter().map(|(c, e)| (Rational::from(c), e)).collect())
}

/// `Π e_i`.
pub fn mul<const N: usize>(factors: [Expr; N]) -> Expr {
    Expr::Mul(factors.into())
}
