//! Both sides of the generalized Lambert series identity
//!
//! `[a_1..a_r] (q)²_∞ / [b_1..b_s] = Σ_i [a/b_i] / [b_j/b_i]_{j≠i} · Σ_k (-1)^{(s-r)k} q^{(s-r)k(k+1)/2} (a_1⋯a_r b_i^{s-r-1} / Π_{j≠i} b_j)^k / (1 - b_i q^k)`
//!
//! for monomial parameters, all in base `q^step`.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::lambert::{bilateral_sum, BilateralSpec};
use crate::laurent::Monomial;
use crate::poles::PoleSeries;
use crate::products::Quotient;
use crate::rational::Rational;
use crate::verify::compare::compare_to;
use crate::verify::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlsInstance {
    pub a: Vec<Monomial>,
    pub b: Vec<Monomial>,
    pub step: i64,
}

impl GlsInstance {
    pub fn new(a: Vec<Monomial>, b: Vec<Monomial>) -> Self {
        GlsInstance { a, b, step: 1 }
    }

    pub fn with_step(mut self, step: i64) -> Self {
        self.step = step;
        self
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn s(&self) -> usize {
        self.b.len()
    }

    fn validate(&self) -> Result<()> {
        if self.r() >= self.s() {
            return Err(Error::InvalidParams(format!("need r < s, got r = {}, s = {}", self.r(), self.s())));
        }
        if self.step < 1 {
            return Err(Error::InvalidParams("base step must be positive".into()));
        }
        Ok(())
    }

    /// Parameter listing for reports.
    pub fn describe(&self) -> Vec<(String, String)> {
        let mut out = vec![("step".to_string(), self.step.to_string())];
        for (i, a) in self.a.iter().enumerate() {
            out.push((format!("a{}", i + 1), a.to_string()));
        }
        for (i, b) in self.b.iter().enumerate() {
            out.push((format!("b{}", i + 1), b.to_string()));
        }
        out
    }

    /// The same instance with `b_i` and `b_j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut c = self.clone();
        c.b.swap(i, j);
        c
    }
}

/// `[a_1..a_r]_∞ (q^B;q^B)²_∞ / [b_1..b_s]_∞`.
pub fn build_gls_lhs(inst: &GlsInstance, order: i64) -> Result<PoleSeries> {
    inst.validate()?;
    let step = inst.step;
    let mut q = Quotient::new().poch(&Monomial::q(step), step, 2);
    for a in &inst.a {
        q = q.bracket(a, step, 1);
    }
    for b in &inst.b {
        q = q.bracket(b, step, -1);
    }
    q.build(order)
}

/// The idem sum over `b_1..b_s`.
pub fn build_gls_rhs(inst: &GlsInstance, order: i64) -> Result<PoleSeries> {
    inst.validate()?;
    let step = inst.step;
    let (r, s) = (inst.r() as i64, inst.s() as i64);
    let d = s - r;
    let mut total: Option<PoleSeries> = None;
    for i in 0..inst.b.len() {
        let bi = &inst.b[i];
        let mut pre = Quotient::new();
        let mut ratio = bi.pow(d - 1);
        for a in &inst.a {
            pre = pre.bracket(&a.div(bi), step, 1);
            ratio = ratio.mul(a);
        }
        for (j, bj) in inst.b.iter().enumerate() {
            if j != i {
                pre = pre.bracket(&bj.div(bi), step, -1);
                ratio = ratio.div(bj);
            }
        }
        let term = if pre.is_zero() {
            pre.build(order)?
        } else {
            let half = Rational::new(step * d, 2);
            let mut spec =
                BilateralSpec::new(half.clone(), half, Rational::zero()).ratio(ratio).denom(bi.clone(), step, 1);
            if d % 2 == 1 {
                spec = spec.alternating();
            }
            let sum = bilateral_sum(&spec, order + 1).map_err(|e| match e {
                Error::ExactPole(k) => Error::Degenerate(format!("exact pole in term i = {}, k = {k}", i + 1)),
                e => e,
            })?;
            let shift = sum.val().min(0);
            let pre = pre.build(order - shift)?;
            pre.mul(&sum)
        };
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term),
        });
    }
    Ok(total.expect("s ≥ 1"))
}

/// Compares both sides of the identity below `order`.
pub fn verify_gls(inst: &GlsInstance, order: i64) -> VerificationReport {
    let start = Instant::now();
    let outcome = compare_to(|w| Ok((build_gls_lhs(inst, w)?, build_gls_rhs(inst, w)?)), order);
    VerificationReport::from_outcome("gls", inst.describe(), order, outcome, start.elapsed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(c: i64, q: i64) -> Monomial {
        Monomial::new(rat(c, 1), 0, q)
    }

    #[test]
    fn base_six_instance() {
        let inst = GlsInstance::new(vec![m(-1, -2)], vec![m(-1, -3), m(-1, -1)]).with_step(6);
        let rep = verify_gls(&inst, 100);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn formal_parameter_and_swap() {
        let x = Monomial::new(rat(1, 1), 1, 0);
        let inst = GlsInstance::new(vec![x.clone()], vec![m(2, 1), x.mul(&m(1, 1)), m(3, 0)]);
        assert!(verify_gls(&inst, 25).passed());
        assert!(verify_gls(&inst.swapped(0, 2), 25).passed());
    }

    #[test]
    fn rejects_bad_shapes() {
        let inst = GlsInstance::new(vec![m(2, 0)], vec![m(3, 0)]);
        assert!(matches!(build_gls_lhs(&inst, 5), Err(Error::InvalidParams(_))));
        let rep = verify_gls(&inst, 5);
        assert_eq!(rep.status, crate::verify::Status::Error);
    }
}
