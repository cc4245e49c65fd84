//! Persistent tables of a-values.
//!
//! The file form is
//!
//! ```json
//! {"version": 1, "caps": {"max_k": 12, "max_weight": 10}, "config_hash": "…",
//!  "entries": [{"mu": [3], "rho": [2], "value": "-1/24"}, …]}
//! ```
//!
//! with entries sorted by (|μ|, μ, |ρ|, ρ) and only non-zero values stored.
//! `value` is a(μ, ρ), i.e. the polynomial coefficient times |Aut ρ|.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::partition::Partition;
use crate::algebra::rational::Rational;
use crate::algebra::TPoly;
use crate::error::{Error, Result};
use crate::minimal::MinimalTable;
use crate::npoint::NPointEngine;
use crate::volumes::StratumKey;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_k: u32,
    pub max_weight: u32,
}

impl Caps {
    /// Stable digest of everything a truncated table depends on.
    pub fn config_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("vvol-atable/v{FORMAT_VERSION};max_k={};max_weight={}", self.max_k, self.max_weight));
        hex::encode(&h.finalize()[..8])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ATableEntry {
    pub mu: Partition,
    pub rho: Partition,
    #[serde(with = "crate::algebra::rational::serde_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ATableFile {
    pub version: u32,
    pub caps: Caps,
    pub config_hash: String,
    pub entries: Vec<ATableEntry>,
}

/// Map from canonical (μ, ρ) to a(μ, ρ) under fixed caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ATable {
    caps: Caps,
    values: BTreeMap<StratumKey, Rational>,
}

impl ATable {
    pub fn new(caps: Caps) -> Self {
        ATable { caps, values: BTreeMap::new() }
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, key: &StratumKey) -> Rational {
        self.values.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StratumKey, &Rational)> {
        self.values.iter()
    }

    pub fn insert(&mut self, key: StratumKey, value: Rational) {
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
    }

    /// Records every ρ-coefficient of a̲(μ).
    pub fn insert_poly(&mut self, mu: &Partition, poly: &TPoly) {
        for (rho, c) in poly.terms() {
            let value = c * Rational::from_integer(rho.automorphisms());
            self.insert(StratumKey { mu: mu.clone(), rho: rho.clone() }, value);
        }
    }

    pub fn from_minimal(table: &MinimalTable) -> Self {
        let mut out = ATable::new(Caps { max_k: table.max_k(), max_weight: table.max_weight() });
        for (i, poly) in table.polys().iter().enumerate() {
            out.insert_poly(&Partition::single(i as u32 + 1), poly);
        }
        out
    }

    /// Adds a̲(μ) for a multi-zero profile.
    pub fn extend_with(&mut self, mu: &[u32], engine: &NPointEngine, table: &MinimalTable) -> Result<()> {
        let poly = engine.a_poly(mu, table)?;
        self.insert_poly(&Partition::new(mu.to_vec())?, &poly);
        Ok(())
    }

    /// Rebuilds the minimal table from the single-zero entries.
    pub fn to_minimal(&self) -> Result<MinimalTable> {
        let Caps { max_k, max_weight } = self.caps;
        let mut polys = vec![TPoly::zero(max_weight); max_k as usize];
        for (key, value) in &self.values {
            if key.mu.len() != 1 {
                continue;
            }
            let k = key.mu.parts()[0];
            if k == 0 || k > max_k || key.rho.weight() > max_weight {
                return Err(Error::config(format!(
                    "entry μ={} ρ={} outside caps (K={max_k}, W={max_weight})",
                    key.mu, key.rho
                )));
            }
            let coeff = value / Rational::from_integer(key.rho.automorphisms());
            polys[k as usize - 1].add_term(key.rho.clone(), coeff);
        }
        MinimalTable::from_polys(max_k, max_weight, polys)
    }

    pub fn to_file(&self) -> ATableFile {
        ATableFile {
            version: FORMAT_VERSION,
            caps: self.caps,
            config_hash: self.caps.config_hash(),
            entries: self
                .values
                .iter()
                .map(|(k, v)| ATableEntry { mu: k.mu.clone(), rho: k.rho.clone(), value: v.clone() })
                .collect(),
        }
    }

    pub fn from_file(file: &ATableFile) -> Result<Self> {
        if file.version != FORMAT_VERSION {
            return Err(Error::config(format!("unsupported table version {}", file.version)));
        }
        if file.config_hash != file.caps.config_hash() {
            return Err(Error::config("table header hash does not match its caps"));
        }
        let mut out = ATable::new(file.caps);
        let mut prev: Option<StratumKey> = None;
        for e in &file.entries {
            let key = StratumKey { mu: e.mu.clone(), rho: e.rho.clone() };
            if prev.as_ref().is_some_and(|p| p >= &key) {
                return Err(Error::Parse(format!("entries not strictly sorted at μ={} ρ={}", key.mu, key.rho)));
            }
            if e.value.is_zero() {
                return Err(Error::Parse(format!("zero value stored for μ={} ρ={}", key.mu, key.rho)));
            }
            prev = Some(key.clone());
            out.values.insert(key, e.value.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(json)?)
    }
}
