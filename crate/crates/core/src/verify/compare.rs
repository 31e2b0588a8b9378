//! Clearing and coefficient comparison of two sides of an identity.

use crate::error::{Error, Result};
use crate::poles::{PoleSeries, PoleSet};
use crate::series::{Mismatch, QSeries};

/// Both sides multiplied by the common clearing multiplier.
#[derive(Debug, Clone)]
pub struct Cleared {
    pub lhs: QSeries,
    pub rhs: QSeries,
    pub clearing: PoleSet,
}

/// Multiplies both sides by the lcm of their pole sets.
pub fn clear_sides(lhs: &PoleSeries, rhs: &PoleSeries) -> Result<Cleared> {
    let clearing = lhs.poles.lcm(&rhs.poles);
    Ok(Cleared { lhs: lhs.clear(&clearing)?, rhs: rhs.clear(&clearing)?, clearing })
}

const MAX_ROUNDS: usize = 10;

/// Multiplies both sides by a given multiplier, which must contain the poles
/// of each side.
pub fn clear_with(lhs: &PoleSeries, rhs: &PoleSeries, clearing: &PoleSet) -> Result<Cleared> {
    Ok(Cleared { lhs: lhs.clear(clearing)?, rhs: rhs.clear(clearing)?, clearing: clearing.clone() })
}

/// Builds both sides at increasing working orders until the cleared series
/// are known on `[.., order)`. Without an explicit multiplier the lcm of the
/// two pole sets is used.
pub fn build_cleared<F>(build: F, order: i64, clearing: Option<&PoleSet>) -> Result<Cleared>
where
    F: Fn(i64) -> Result<(PoleSeries, PoleSeries)>,
{
    let mut work = order;
    for _ in 0..MAX_ROUNDS {
        let (l, r) = build(work)?;
        let c = match clearing {
            Some(m) => clear_with(&l, &r, m)?,
            None => clear_sides(&l, &r)?,
        };
        let reached = c.lhs.order().min(c.rhs.order());
        if reached >= order {
            return Ok(c);
        }
        work += order - reached + 2;
    }
    Err(Error::Degenerate(format!("could not reach truncation order {order}")))
}

/// First mismatch of the cleared sides below `order`.
pub fn compare_to(build: impl Fn(i64) -> Result<(PoleSeries, PoleSeries)>, order: i64) -> Result<Option<Mismatch>> {
    let c = build_cleared(build, order, None)?;
    Ok(c.lhs.first_mismatch(&c.rhs, order))
}
