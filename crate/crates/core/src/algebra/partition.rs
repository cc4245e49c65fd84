//! Partitions (multisets of positive integers) in canonical form.
//!
//! One type serves three roles: residue profiles ρ, zero profiles μ and
//! monomial keys of the sparse polynomials (∏ t_{ρ_i} or ∏ h_j).
//!
//! The total order is graded: first by weight (sum of parts), then by the
//! descending part list compared lexicographically with larger parts first.
//! For weight 4 and parts ≥ 2 this gives `(4) < (2,2)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::factorial;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Residue profile ρ. A part equal to 1 denotes an empty stratum.
pub type ResidueProfile = Partition;
/// Zero profile μ in canonical (sorted) form.
pub type ZeroProfile = Partition;

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds the canonical form. Parts must be positive.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain(format!("partition parts must be positive: {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    pub fn single(part: u32) -> Self {
        Partition { parts: vec![part] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of `part`.
    pub fn count(&self, part: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == part).count() as u32
    }

    /// ∏ (multiplicity of each distinct part)!
    pub fn automorphisms(&self) -> BigInt {
        self.multiplicities().values().fold(BigInt::one(), |acc, &m| acc * factorial(m))
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let (a, b) = (&self.parts, &other.parts);
        let mut parts = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] >= b[j] {
                parts.push(a[i]);
                i += 1;
            } else {
                parts.push(b[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&a[i..]);
        parts.extend_from_slice(&b[j..]);
        Partition { parts }
    }

    /// Removes one copy of `part`, if present.
    pub fn remove_one(&self, part: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    pub fn with_part(&self, part: u32) -> Partition {
        self.union(&Partition::single(part))
    }

    /// Parses `"3,2,2"`; the empty string (or `"()"`) is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition entry {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions with parts ≥ `min_part` and weight ≤ `weight_cap`, each
/// exactly once, in ascending [`Partition`] order.
pub fn partitions_up_to(weight_cap: u32, min_part: u32) -> Vec<Partition> {
    let min_part = min_part.max(1);
    let mut out = Vec::new();
    for w in 0..=weight_cap {
        partitions_of(w, min_part, &mut out);
    }
    out
}

/// Partitions of exactly `weight` with parts ≥ `min_part`, appended in
/// ascending order (largest first part first).
pub fn partitions_of(weight: u32, min_part: u32, out: &mut Vec<Partition>) {
    fn rec(rest: u32, max: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        let mut p = max.min(rest);
        while p >= min {
            cur.push(p);
            rec(rest - p, p, min, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    let min_part = min_part.max(1);
    rec(weight, weight, min_part, &mut Vec::new(), out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_small_caps() {
        assert_eq!(partitions_up_to(4, 2), vec![p(&[]), p(&[2]), p(&[3]), p(&[4]), p(&[2, 2])]);
        assert_eq!(partitions_up_to(1, 2), vec![p(&[])]);
        let five = partitions_up_to(5, 2);
        assert!(five.contains(&p(&[3, 2])));
        assert!(five.contains(&p(&[5])));
        assert!(!five.iter().any(|q| q.parts().contains(&1)));
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all = partitions_up_to(12, 1);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn automorphism_count() {
        assert_eq!(p(&[2, 2, 3]).automorphisms(), BigInt::from(2));
        assert_eq!(p(&[2, 2, 2, 3, 3]).automorphisms(), BigInt::from(12));
        assert_eq!(p(&[]).automorphisms(), BigInt::from(1));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Partition::parse("").unwrap(), p(&[]));
        assert_eq!(Partition::parse("2,3").unwrap(), p(&[3, 2]));
        assert_eq!(Partition::parse("(2, 2)").unwrap(), p(&[2, 2]));
        assert!(Partition::parse("0").is_err());
        assert!(Partition::parse("a").is_err());
    }

    #[test]
    fn union_and_remove() {
        assert_eq!(p(&[4, 2]).union(&p(&[3, 2])), p(&[4, 3, 2, 2]));
        assert_eq!(p(&[4, 2, 2]).remove_one(2), Some(p(&[4, 2])));
        assert_eq!(p(&[4]).remove_one(2), None);
    }
}
