//! Exact truncated q-series arithmetic, mock theta functions, and a verifier
//! for Lambert-series identities and the divisor-sum recursions they imply.

pub mod divisor;
pub mod error;
pub mod gls;
pub mod lambert;
pub mod laurent;
pub mod mock;
pub mod poles;
pub mod products;
pub mod rational;
mod scaled;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, Monomial};
pub use poles::{PoleFactor, PoleSeries, PoleSet};
pub use rational::{rat, Rational};
pub use series::{Mismatch, Parity, QSeries, XTarget};
