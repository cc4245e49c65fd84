//! Volumes, Siegel–Veech ratios, genus-zero counts and asymptotics.
//!
//! Volumes are exact: a rational coefficient times an even power of π.
//! For a complete key (μ, ρ) of genus g,
//!
//! ```text
//!   Vol(μ, ρ) = (−1)^g · 2·4^g · a(μ, ρ) / ((|μ|−1)! · ∏ k_i) · π^{2g},
//! ```
//!
//! where a(μ, ρ) = |Aut ρ| · [∏ t_{ρ_i}] a̲(μ). The factor (−1)^g makes every
//! non-empty stratum positive; a non-positive value is an invariant failure.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::partition::{Partition, ResidueProfile, ZeroProfile};
use crate::algebra::rational::{factorial, format_rational, int, to_f64, Rational};
use crate::error::{Error, Result};
use crate::minimal::MinimalTable;
use crate::npoint::NPointEngine;

/// `coeff · π^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiMultiple {
    #[serde(with = "crate::algebra::rational::serde_str")]
    pub coeff: Rational,
    pub pi_power: i32,
}

/// A volume: `pi_power` is 2g.
pub type VolumeValue = PiMultiple;

impl PiMultiple {
    pub fn new(coeff: Rational, pi_power: i32) -> Self {
        PiMultiple { coeff, pi_power }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coeff) * std::f64::consts::PI.powi(self.pi_power)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn decimal(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self.to_f64())
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_power == 0 {
            write!(f, "{}", format_rational(&self.coeff))
        } else {
            write!(f, "{} · π^{}", format_rational(&self.coeff), self.pi_power)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Volume {
    /// Half-integer or negative genus, or a residue part equal to 1.
    Empty,
    Value(VolumeValue),
}

impl fmt::Display for Volume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Volume::Empty => write!(f, "0 (empty stratum)"),
            Volume::Value(v) => write!(f, "{v}"),
        }
    }
}

/// Stratum (μ, ρ) in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StratumKey {
    pub mu: ZeroProfile,
    pub rho: ResidueProfile,
}

impl StratumKey {
    pub fn new(mu: &[u32], rho: &[u32]) -> Result<Self> {
        let mu = Partition::new(mu.to_vec())?;
        if mu.is_empty() {
            return Err(Error::domain("zero profile must have at least one part"));
        }
        Ok(StratumKey { mu, rho: Partition::new(rho.to_vec())? })
    }

    /// 2g = |μ| − n − |ρ| + 2, when non-negative.
    pub fn two_genus(&self) -> Option<u32> {
        (self.mu.weight() + 2).checked_sub(self.mu.len() as u32 + self.rho.weight())
    }

    pub fn genus(&self) -> Option<u32> {
        self.two_genus().filter(|t| t % 2 == 0).map(|t| t / 2)
    }

    pub fn is_empty_stratum(&self) -> bool {
        self.rho.parts().contains(&1) || self.genus().is_none()
    }
}

/// a(μ, ρ): the ρ-coefficient of a̲(μ) times |Aut ρ|.
pub fn a_value(key: &StratumKey, engine: &NPointEngine, table: &MinimalTable) -> Result<Rational> {
    if key.rho.parts().contains(&1) {
        return Ok(Rational::zero());
    }
    if key.rho.weight() > table.max_weight() {
        return Err(Error::config(format!(
            "residue profile {} needs max_weight >= {} (have {})",
            key.rho,
            key.rho.weight(),
            table.max_weight()
        )));
    }
    let poly = engine.a_poly(key.mu.parts(), table)?;
    Ok(poly.coeff(&key.rho) * Rational::from_integer(key.rho.automorphisms()))
}

/// (−1)^g·a·2·4^g / ((|μ|−1)!·∏k_i), the coefficient of π^{2g}, for keys of
/// integral genus. No positivity check.
pub fn volume_coefficient(key: &StratumKey, a: &Rational) -> Option<Rational> {
    let g = key.genus()?;
    let prod: BigInt = key.mu.parts().iter().map(|&k| BigInt::from(k)).product();
    let denom = factorial(key.mu.weight() - 1) * prod;
    let sign = if g % 2 == 0 { 1 } else { -1 };
    let numer = BigInt::from(2 * sign) * BigInt::from(4u32).pow(g);
    Some(a * Rational::new(numer, denom))
}

pub fn volume(key: &StratumKey, a: &Rational) -> Result<Volume> {
    let coeff = match volume_coefficient(key, a) {
        Some(c) if !key.rho.parts().contains(&1) => c,
        _ if a.is_zero() => return Ok(Volume::Empty),
        _ => {
            return Err(Error::invariant(format!(
                "empty stratum μ={} ρ={} carries non-zero a = {}",
                key.mu,
                key.rho,
                format_rational(a)
            )))
        }
    };
    let g = key.genus().expect("integral genus");
    if !coeff.is_positive() {
        return Err(Error::invariant(format!(
            "volume of μ={} ρ={} (genus {g}) is {} from a = {}, expected positive",
            key.mu,
            key.rho,
            format_rational(&coeff),
            format_rational(a)
        )));
    }
    Ok(Volume::Value(PiMultiple::new(coeff, 2 * g as i32)))
}

/// Sign law: a non-zero a(μ, ρ) has sign (−1)^g.
pub fn sign_law_holds(key: &StratumKey, a: &Rational) -> bool {
    match key.genus() {
        _ if a.is_zero() => true,
        None => false,
        Some(g) => a.is_positive() == (g % 2 == 0),
    }
}

/// c₀(μ) = Vol(μ,(2)) / (4π² · Vol(μ,())).
pub fn sv_constant(mu: &[u32], engine: &NPointEngine, table: &MinimalTable) -> Result<PiMultiple> {
    let vol = |rho: &[u32]| -> Result<VolumeValue> {
        let key = StratumKey::new(mu, rho)?;
        match volume(&key, &a_value(&key, engine, table)?)? {
            Volume::Value(v) => Ok(v),
            Volume::Empty => {
                Err(Error::domain(format!("Siegel-Veech ratio undefined: stratum μ={} ρ={} is empty", key.mu, key.rho)))
            }
        }
    };
    let with_cylinder = vol(&[2])?;
    let base = vol(&[])?;
    Ok(PiMultiple::new(with_cylinder.coeff / (base.coeff * int(4)), with_cylinder.pi_power - base.pi_power - 2))
}

/// Genus-zero count (m−2)!·∏_{i ≤ m−2} p_i for one zero of order k − 1 and
/// poles of orders p_i + 1, subject to k = Σp_i + m − 1.
pub fn genus0_count(k: u32, poles: &[u32]) -> Result<Rational> {
    let m = poles.len() as u32;
    if m < 2 {
        return Err(Error::domain(format!("need at least two poles, got {m}")));
    }
    let expected = poles.iter().sum::<u32>() + m - 1;
    if k != expected {
        return Err(Error::domain(format!("degree condition fails: k = {k} but Σp + m − 1 = {expected}")));
    }
    let prod: BigInt = poles[..(m - 2) as usize].iter().map(|&p| BigInt::from(p)).product();
    Ok(Rational::from_integer(factorial(m - 2) * prod))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub k: u32,
    pub genus: u32,
    pub volume: VolumeValue,
    /// (2g)^{−|ρ|}·Vol·k/4, expected to stay bounded near 1.
    pub normalized: f64,
}

/// Rows for μ = (k), k ≤ `k_max`, with non-empty stratum and g ≥ 1.
pub fn asymptotics_report(rho: &ResidueProfile, k_max: u32, table: &MinimalTable) -> Result<Vec<AsymptoticRow>> {
    if k_max > table.max_k() {
        return Err(Error::config(format!(
            "asymptotics up to k = {k_max} needs max_k >= {k_max} (have {})",
            table.max_k()
        )));
    }
    let engine = NPointEngine::default();
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let key = StratumKey { mu: Partition::single(k), rho: rho.clone() };
        let Some(g) = key.genus().filter(|&g| g >= 1) else { continue };
        let Volume::Value(v) = volume(&key, &a_value(&key, &engine, table)?)? else { continue };
        let scale = Rational::new(BigInt::from(k), BigInt::from(4u32) * BigInt::from(2 * g).pow(rho.weight()));
        let normalized = PiMultiple::new(&v.coeff * scale, v.pi_power).to_f64();
        rows.push(AsymptoticRow { k, genus: g, volume: v, normalized });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub mu: Vec<u32>,
    pub rho: Vec<u32>,
    #[serde(with = "crate::algebra::rational::serde_str")]
    pub vol_coeff: Rational,
    pub pi_power: i32,
}

impl Fixture {
    pub fn expected(&self) -> VolumeValue {
        PiMultiple::new(self.vol_coeff.clone(), self.pi_power)
    }
}

pub fn load_fixtures(json: &str) -> Result<Vec<Fixture>> {
    Ok(serde_json::from_str(json)?)
}

/// The bundled holomorphic volume fixtures.
pub fn default_fixtures() -> Vec<Fixture> {
    load_fixtures(include_str!("../data/fixtures.json")).expect("bundled fixtures parse")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureResult {
    pub name: String,
    pub expected: VolumeValue,
    pub got: Option<VolumeValue>,
    pub passed: bool,
}

pub fn check_fixture(f: &Fixture, engine: &NPointEngine, table: &MinimalTable) -> Result<FixtureResult> {
    let key = StratumKey::new(&f.mu, &f.rho)?;
    let got = match volume(&key, &a_value(&key, engine, table)?)? {
        Volume::Value(v) => Some(v),
        Volume::Empty => None,
    };
    let expected = f.expected();
    let passed = got.as_ref() == Some(&expected);
    let name = if f.name.is_empty() { format!("μ={} ρ={}", key.mu, key.rho) } else { f.name.clone() };
    Ok(FixtureResult { name, expected, got, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::minimal::solve_minimal;

    fn key(mu: &[u32], rho: &[u32]) -> StratumKey {
        StratumKey::new(mu, rho).unwrap()
    }

    fn value(v: Volume) -> VolumeValue {
        match v {
            Volume::Value(v) => v,
            Volume::Empty => panic!("empty"),
        }
    }

    #[test]
    fn volume_examples() {
        assert_eq!(value(volume(&key(&[3], &[]), &rat(1, 640)).unwrap()), PiMultiple::new(rat(1, 120), 4));
        assert_eq!(value(volume(&key(&[2, 2], &[]), &rat(1, 180)).unwrap()), PiMultiple::new(rat(1, 135), 4));
        assert_eq!(value(volume(&key(&[5], &[]), &rat(-305, 580608)).unwrap()), PiMultiple::new(rat(61, 108864), 6));
        assert_eq!(value(volume(&key(&[3], &[2]), &rat(-1, 24)).unwrap()), PiMultiple::new(rat(1, 18), 2));
    }

    #[test]
    fn empty_strata() {
        assert_eq!(volume(&key(&[2], &[]), &int(0)).unwrap(), Volume::Empty);
        assert_eq!(volume(&key(&[3], &[1, 2]), &int(0)).unwrap(), Volume::Empty);
        assert!(matches!(volume(&key(&[2], &[]), &int(1)), Err(Error::Invariant(_))));
    }

    #[test]
    fn wrong_sign_is_invariant_failure() {
        assert!(matches!(volume(&key(&[3], &[]), &rat(-1, 640)), Err(Error::Invariant(_))));
        assert!(matches!(volume(&key(&[3], &[]), &int(0)), Err(Error::Invariant(_))));
    }

    #[test]
    fn genus_bookkeeping() {
        assert_eq!(key(&[3], &[]).genus(), Some(2));
        assert_eq!(key(&[2, 2], &[]).genus(), Some(2));
        assert_eq!(key(&[3], &[2]).genus(), Some(1));
        assert_eq!(key(&[2], &[]).genus(), None);
        assert_eq!(key(&[1], &[4]).genus(), None);
    }

    #[test]
    fn siegel_veech_examples() {
        let t = solve_minimal(6, 6).unwrap();
        let e = NPointEngine::default();
        assert_eq!(sv_constant(&[3], &e, &t).unwrap(), PiMultiple::new(rat(5, 3), -4));
        assert_eq!(sv_constant(&[1], &e, &t).unwrap(), PiMultiple::new(rat(3, 2), -4));
        let c = sv_constant(&[2, 2], &e, &t).unwrap();
        assert!(c.coeff.is_positive());
        assert!(matches!(sv_constant(&[2], &e, &t), Err(Error::Domain(_))));
    }

    #[test]
    fn genus_zero_counts() {
        assert_eq!(genus0_count(3, &[1, 1]).unwrap(), int(1));
        assert_eq!(genus0_count(6, &[2, 1, 1]).unwrap(), int(2));
        assert_eq!(genus0_count(8, &[2, 1, 1, 1]).unwrap(), int(4));
        assert_eq!(genus0_count(9, &[3, 2, 1, 0]).unwrap(), int(12));
        assert!(matches!(genus0_count(5, &[2, 1, 1]), Err(Error::Domain(_))));
        assert!(matches!(genus0_count(2, &[1]), Err(Error::Domain(_))));
    }

    #[test]
    fn genus_zero_symmetry() {
        let poles = [3, 1, 2, 4, 0];
        let k = poles.iter().sum::<u32>() + poles.len() as u32 - 1;
        let base = genus0_count(k, &poles).unwrap();
        assert_eq!(genus0_count(k, &[2, 3, 1, 0, 4]).unwrap(), base);
        assert_eq!(genus0_count(k, &[1, 2, 3, 4, 0]).unwrap(), base);
    }

    #[test]
    fn bundled_fixtures_parse() {
        let f = default_fixtures();
        assert_eq!(f.len(), 4);
        assert_eq!(f[2].vol_coeff, rat(61, 108864));
    }

    #[test]
    fn display_forms() {
        assert_eq!(PiMultiple::new(rat(1, 120), 4).to_string(), "1/120 · π^4");
        assert_eq!(Volume::Empty.to_string(), "0 (empty stratum)");
        assert_eq!(PiMultiple::new(int(2), 0).to_string(), "2");
    }
}
