//! Exact computation of Masur–Veech type volumes of moduli spaces of
//! meromorphic differentials with residue conditions, via the minimal-strata
//! genus induction, the residue flows and the n-point hierarchy.

pub mod algebra;
pub mod audit;
pub mod error;
pub mod flows;
pub mod minimal;
pub mod npoint;
pub mod table;
pub mod volumes;

pub use algebra::{
    format_rational, parse_rational, HPoly, Partition, Rational, ResidueProfile, TPoly, ZSeries, ZeroProfile,
};
pub use error::{Error, Result};
pub use flows::{verify_flows, FlowContext, FlowReport};
pub use minimal::{b_numbers, solve_minimal, MinimalTable};
pub use npoint::{calibrate, two_point_kernel, Kernel2, NPointEngine, OnePoint};
pub use table::{ATable, ATableFile, Caps};
pub use volumes::{PiMultiple, StratumKey, Volume, VolumeValue};
