//! Exact scalars, partition-keyed polynomials and truncated series.

pub mod partition;
pub mod poly;
pub mod rational;
pub mod series;

pub use partition::{partitions_of, partitions_up_to, Partition, ResidueProfile, ZeroProfile};
pub use poly::{Grading, HPoly, HVar, PolyEntry, SparsePoly, TPoly, TVar, UNCAPPED};
pub use rational::{format_rational, parse_rational, Rational};
pub use series::{Coeff, ZSeries};
