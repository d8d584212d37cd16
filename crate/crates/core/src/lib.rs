//! Rainbow connection toolkit: graphs, verification, exact search, the
//! minimum-degree construction, generators and bound audits.

pub mod audit;
pub mod construct;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod verify;

/// Exact rational used for half-integer bounds.
pub type Rational = num_rational::Ratio<i64>;
