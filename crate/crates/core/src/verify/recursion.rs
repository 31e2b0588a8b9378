//! The coefficient side of the divisor-sum recursions.

use crate::divisor::{m_range, rhs_theorem, RecursionName};
use crate::mock::{MockName, MockTable};
use crate::rational::{rat, Rational};

fn int(v: i64) -> Rational {
    Rational::from(v)
}

/// `Σ_m (m + w) c(name; n - 3m² - 2m - 1)` over `3m² + 2m + 1 ≤ n`, with an
/// optional sign `(-1)^k` on the coefficient index.
fn omega_sum(table: &MockTable, name: MockName, n: i64, negate_q: bool) -> Rational {
    let mut acc = Rational::zero();
    for m in m_range(n, |m| 3 * m * m + 2 * m + 1) {
        let k = n - 3 * m * m - 2 * m - 1;
        let mut c = table.c(name, &int(k));
        if negate_q && k % 2 != 0 {
            c = -c;
        }
        acc += (int(m) + rat(1, 3)) * c;
    }
    acc
}

/// Left-hand side of the named recursion at `n ≥ 1`, read from `table`,
/// which must extend past `n`.
pub fn lhs_recursion_with(table: &MockTable, name: RecursionName, n: i64) -> Rational {
    assert!(n >= 1, "n must be positive");
    match name {
        RecursionName::T1id => m_range(2 * n, |m| 3 * m * m + m)
            .into_iter()
            .map(|m| {
                let arg = int(n) - rat(3, 2) * int(m * m) - rat(1, 2) * int(m);
                (int(m) + rat(1, 6)) * table.c(MockName::F, &arg)
            })
            .sum(),
        RecursionName::T9 => m_range(n, |m| 3 * m * m + 2 * m)
            .into_iter()
            .map(|m| {
                let arg = rat(n, 2) - rat(3, 2) * int(m * m) - int(m);
                (int(m) + rat(1, 3)) * table.c(MockName::F, &arg)
            })
            .sum(),
        RecursionName::T919 => m_range(n, |m| 3 * m * m + m)
            .into_iter()
            .map(|m| (int(m) + rat(1, 6)) * table.c(MockName::Omega, &int(n - 3 * m * m - m)))
            .sum(),
        RecursionName::T9201 => omega_sum(table, MockName::OmegaEven, n, false),
        RecursionName::T9202 => omega_sum(table, MockName::OmegaOdd, n, false),
        RecursionName::T920c => omega_sum(table, MockName::Omega, n, false),
        RecursionName::T920d => omega_sum(table, MockName::Omega, n, true),
        RecursionName::CorB => m_range(n, |m| 2 * m * m + 2 * m + 1)
            .into_iter()
            .filter(|&m| m >= 0)
            .map(|m| {
                let w = int(if m % 2 == 0 { 2 * m + 1 } else { -(2 * m + 1) });
                w * table.c(MockName::B, &int(n - 2 * m * m - 2 * m - 1))
            })
            .sum(),
    }
}

/// Left-hand side of the named recursion at a single `n ≥ 1`.
pub fn lhs_recursion(name: RecursionName, n: i64) -> Rational {
    lhs_recursion_with(&MockTable::new(n + 1), name, n)
}

/// One row of a recursion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionRow {
    pub n: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl RecursionRow {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides for `1 ≤ n ≤ upto`.
pub fn recursion_rows(table: &MockTable, name: RecursionName, upto: i64) -> Vec<RecursionRow> {
    (1..=upto).map(|n| RecursionRow { n, lhs: lhs_recursion_with(table, name, n), rhs: rhs_theorem(name, n) }).collect()
}

/// Sum and difference of the even and odd ω recursions against the combined
/// ones, both sides of each.
pub fn closure_rows(table: &MockTable, n: i64) -> [(Rational, Rational); 4] {
    let le = lhs_recursion_with(table, RecursionName::T9201, n);
    let lo = lhs_recursion_with(table, RecursionName::T9202, n);
    let re = rhs_theorem(RecursionName::T9201, n);
    let ro = rhs_theorem(RecursionName::T9202, n);
    [
        (&le + &lo, lhs_recursion_with(table, RecursionName::T920c, n)),
        (&le - &lo, lhs_recursion_with(table, RecursionName::T920d, n)),
        (&re + &ro, rhs_theorem(RecursionName::T920c, n)),
        (&re - &ro, rhs_theorem(RecursionName::T920d, n)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_anchor() {
        assert_eq!(lhs_recursion(RecursionName::T1id, 1), rat(-2, 3));
    }

    #[test]
    fn recursions_hold_to_sixty() {
        let table = MockTable::new(61);
        for name in RecursionName::ALL {
            for row in recursion_rows(&table, name, 60) {
                assert!(row.holds(), "{name} at n = {}: {} vs {}", row.n, row.lhs, row.rhs);
            }
        }
        for n in 1..=60 {
            for (a, b) in closure_rows(&table, n) {
                assert_eq!(a, b);
            }
        }
    }
}
